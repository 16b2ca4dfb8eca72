//! The WSER text format for index series, and count tables as CSV or JSON.
//!
//! ```text
//! WSER 1 nmax=4 mmax=inf kind=graph
//! a=1:2 b=1:1 c=- coef=1/2
//! ```
//!
//! Unbounded truncations are written `inf`. Lines follow the canonical
//! monomial order and coefficients are in lowest terms.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{BiSeries, CycleMonomial, Family, IndexSeries, Truncation, UNBOUNDED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Graph,
    NetPlus,
    NetMinus,
}

impl SeriesKind {
    fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Graph => "graph",
            SeriesKind::NetPlus => "netplus",
            SeriesKind::NetMinus => "netminus",
        }
    }
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(SeriesKind::Graph),
            "netplus" => Ok(SeriesKind::NetPlus),
            "netminus" => Ok(SeriesKind::NetMinus),
            _ => Err(Error::Parse { line: 1, msg: format!("unknown series kind '{s}'") }),
        }
    }
}

fn bound(b: u32) -> String {
    if b == UNBOUNDED {
        "inf".into()
    } else {
        b.to_string()
    }
}

fn parse_bound(s: &str, line: usize) -> Result<u32> {
    if s == "inf" {
        return Ok(UNBOUNDED);
    }
    s.parse().map_err(|_| Error::Parse { line, msg: format!("bad truncation bound '{s}'") })
}

pub fn write_wser(w: &IndexSeries, kind: SeriesKind) -> String {
    let t = w.trunc();
    let mut out = format!("WSER 1 nmax={} mmax={} kind={}\n", bound(t.n_max), bound(t.m_max), kind.as_str());
    for (m, c) in w.terms() {
        for (i, fam) in Family::ALL.into_iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push(fam.letter());
            out.push('=');
            let parts: Vec<String> = m.family(fam).map(|(k, e)| format!("{k}:{e}")).collect();
            if parts.is_empty() {
                out.push('-');
            } else {
                out.push_str(&parts.join(","));
            }
        }
        let _ = writeln!(out, " coef={}/{}", c.numer(), c.denom());
    }
    out
}

fn parse_family(field: &str, fam: Family, line: usize) -> Result<Vec<(Family, u32, u32)>> {
    let err = |msg: String| Error::Parse { line, msg };
    let prefix = format!("{}=", fam.letter());
    let body = field.strip_prefix(&prefix).ok_or_else(|| err(format!("expected '{prefix}...', found '{field}'")))?;
    if body == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut last = 0;
    for part in body.split(',') {
        let (k, e) = part.split_once(':').ok_or_else(|| err(format!("bad pair '{part}'")))?;
        let k: u32 = k.parse().map_err(|_| err(format!("bad index '{k}'")))?;
        let e: u32 = e.parse().map_err(|_| err(format!("bad exponent '{e}'")))?;
        if k == 0 || e == 0 || k <= last {
            return Err(err(format!("indices must be positive and increasing, exponents positive: '{body}'")));
        }
        last = k;
        out.push((fam, k, e));
    }
    Ok(out)
}

pub fn read_wser(text: &str) -> Result<(IndexSeries, SeriesKind)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let herr = |msg: &str| Error::Parse { line: 1, msg: msg.into() };
    if fields.len() != 5 || fields[0] != "WSER" || fields[1] != "1" {
        return Err(herr("expected 'WSER 1 nmax=<N> mmax=<M> kind=<kind>'"));
    }
    let n = parse_bound(fields[2].strip_prefix("nmax=").ok_or_else(|| herr("missing nmax"))?, 1)?;
    let m = parse_bound(fields[3].strip_prefix("mmax=").ok_or_else(|| herr("missing mmax"))?, 1)?;
    let kind: SeriesKind = fields[4].strip_prefix("kind=").ok_or_else(|| herr("missing kind"))?.parse()?;
    let trunc = Truncation::new(n, m);
    let mut terms = Vec::new();
    let mut prev: Option<CycleMonomial> = None;
    for (i, line) in lines {
        let ln = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(' ').collect();
        if f.len() != 4 {
            return Err(Error::Parse { line: ln, msg: "expected 'a=… b=… c=… coef=p/q'".into() });
        }
        let mut triples = parse_family(f[0], Family::A, ln)?;
        triples.extend(parse_family(f[1], Family::B, ln)?);
        triples.extend(parse_family(f[2], Family::C, ln)?);
        let coef = f[3].strip_prefix("coef=").ok_or(Error::Parse { line: ln, msg: "missing coef".into() })?;
        let c: Rational = coef.parse().map_err(|e| Error::Parse { line: ln, msg: format!("bad coefficient: {e}") })?;
        let mono = CycleMonomial::from_triples(triples);
        if prev.as_ref().is_some_and(|p| *p >= mono) {
            return Err(Error::Parse { line: ln, msg: "terms not in canonical order".into() });
        }
        if !trunc.admits(mono.vertex_degree(), mono.edge_degree()) {
            return Err(Error::Parse { line: ln, msg: format!("term {mono} lies outside the declared truncation") });
        }
        prev = Some(mono.clone());
        terms.push((mono, c));
    }
    Ok((IndexSeries::from_terms(terms, trunc), kind))
}

pub fn save_wser(path: &Path, w: &IndexSeries, kind: SeriesKind) -> Result<()> {
    fs::write(path, write_wser(w, kind))?;
    Ok(())
}

pub fn load_wser(path: &Path) -> Result<(IndexSeries, SeriesKind)> {
    read_wser(&fs::read_to_string(path)?)
}

/// Integer counts indexed by vertices and edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    pub rows: Vec<(u32, u32, BigInt)>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    n: u32,
    m: u32,
    count: &'a str,
}

impl CountTable {
    /// Nonzero coefficients of a series, multiplied by `n!` in row `n` when
    /// `factorial` is set. Every resulting entry must be an integer.
    pub fn from_series(s: &BiSeries, factorial: bool) -> Result<Self> {
        let mut rows = Vec::new();
        let mut fact = BigInt::from(1);
        let mut fact_n = 0;
        for (n, m, c) in s.iter() {
            if c.is_zero() {
                continue;
            }
            while fact_n < n {
                fact_n += 1;
                fact *= fact_n;
            }
            let v = if factorial { c * &Rational::from_bigint(fact.clone()) } else { c.clone() };
            if !v.is_integer() {
                return Err(Error::Integrality { n, m, coef: v.to_string() });
            }
            rows.push((n, m, v.numer()));
        }
        Ok(CountTable { rows })
    }

    /// Sum over edges for each vertex count.
    pub fn totals(&self) -> Vec<(u32, BigInt)> {
        let mut out: Vec<(u32, BigInt)> = Vec::new();
        for (n, _, c) in &self.rows {
            match out.last_mut() {
                Some((k, s)) if k == n => *s += c,
                _ => out.push((*n, c.clone())),
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,count\n");
        for (n, m, c) in &self.rows {
            let _ = writeln!(out, "{n},{m},{c}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let counts: Vec<String> = self.rows.iter().map(|r| r.2.to_string()).collect();
        let rows: Vec<JsonRow> =
            self.rows.iter().zip(&counts).map(|((n, m, _), c)| JsonRow { n: *n, m: *m, count: c }).collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("serializing plain rows");
        s.push('\n');
        s
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::graph::SimpleGraph;
    use crate::species::index_series::graph_index_series;

    #[test]
    fn k2_line() {
        let w = graph_index_series(&SimpleGraph::complete(2));
        let text = write_wser(&w, SeriesKind::Graph);
        assert_eq!(text, "WSER 1 nmax=inf mmax=inf kind=graph\na=1:2 b=1:1 c=- coef=1/2\na=2:1 b=- c=1:1 coef=1/2\n");
        assert_eq!(read_wser(&text).unwrap(), (w, SeriesKind::Graph));
    }

    #[test]
    fn rejects_disorder() {
        let text = "WSER 1 nmax=4 mmax=inf kind=graph\na=2:1 b=- c=1:1 coef=1/2\na=1:2 b=1:1 c=- coef=1/2\n";
        assert!(matches!(read_wser(text), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn csv_and_json() {
        let t = CountTable { rows: vec![(2, 1, BigInt::from(1)), (3, 3, BigInt::from(1))] };
        assert_eq!(t.to_csv(), "n,m,count\n2,1,1\n3,3,1\n");
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[1]["count"], "1");
    }
}
