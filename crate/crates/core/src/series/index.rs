use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::monomial::{CycleMonomial, Family};
use super::truncation::{product_precision, Truncation, Valuation, UNBOUNDED};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Term = (CycleMonomial, Rational);
type Acc = FxHashMap<CycleMonomial, Rational>;

/// Below this many monomial products the work stays on one thread.
const PAR_THRESHOLD: usize = 1 << 15;

/// A truncated edge index series: a finite sum of cycle monomials with exact
/// rational coefficients.
///
/// Terms are kept sorted in the canonical monomial order, without zeros and
/// without anything outside the truncation.
#[derive(Clone, PartialEq, Eq)]
pub struct IndexSeries {
    terms: Vec<Term>,
    trunc: Truncation,
}

fn acc_add(acc: &mut Acc, m: CycleMonomial, c: Rational) {
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn merge_acc(mut a: Acc, mut b: Acc) -> Acc {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (m, c) in b {
        acc_add(&mut a, m, c);
    }
    a
}

/// Work item: every product of a term of `left` with a term of `right`,
/// scaled by `factor`.
struct Block<'a> {
    left: &'a [Term],
    right: &'a [Term],
    factor: Rational,
}

fn run_block(b: &Block<'_>, t: Truncation, acc: &mut Acc) {
    for (m1, c1) in b.left {
        let c1 = if b.factor.is_one() { c1.clone() } else { c1 * &b.factor };
        for (m2, c2) in b.right {
            if !t.admits(m1.vertex_degree() + m2.vertex_degree(), m1.edge_degree() + m2.edge_degree()) {
                continue;
            }
            acc_add(acc, m1.mul(m2), &c1 * c2);
        }
    }
}

fn accumulate(blocks: &[Block<'_>], t: Truncation) -> Acc {
    let work: usize = blocks.iter().map(|b| b.left.len() * b.right.len()).sum();
    if work < PAR_THRESHOLD {
        let mut acc = Acc::default();
        for b in blocks {
            run_block(b, t, &mut acc);
        }
        return acc;
    }
    // split every block's left side into chunks of roughly equal work
    let target = (work / (4 * rayon::current_num_threads())).max(PAR_THRESHOLD / 4);
    let mut pieces: Vec<Block<'_>> = Vec::new();
    for b in blocks {
        if b.right.is_empty() {
            continue;
        }
        let rows = (target / b.right.len()).max(1);
        for chunk in b.left.chunks(rows) {
            pieces.push(Block { left: chunk, right: b.right, factor: b.factor.clone() });
        }
    }
    pieces
        .par_iter()
        .map(|b| {
            let mut acc = Acc::default();
            run_block(b, t, &mut acc);
            acc
        })
        .reduce(Acc::default, merge_acc)
}

/// How a graded recurrence walks the terms.
#[derive(Clone, Copy)]
enum Grading {
    Vertex,
    Total,
}

impl Grading {
    fn grade(self, m: &CycleMonomial) -> u32 {
        match self {
            Grading::Vertex => m.vertex_degree(),
            Grading::Total => m.vertex_degree() + m.edge_degree(),
        }
    }
}

impl IndexSeries {
    pub fn zero(trunc: Truncation) -> Self {
        IndexSeries { terms: Vec::new(), trunc }
    }

    /// The exact constant `c`.
    pub fn constant(c: Rational) -> Self {
        Self::monomial(CycleMonomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The exact series `c · m`.
    pub fn monomial(m: CycleMonomial, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        IndexSeries { terms, trunc: Truncation::EXACT }
    }

    pub fn var(fam: Family, index: u32) -> Self {
        Self::monomial(CycleMonomial::var(fam, index), Rational::one())
    }

    /// Collects terms (summing repeats), dropping zeros and anything outside `trunc`.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I, trunc: Truncation) -> Self {
        let mut acc = Acc::default();
        for (m, c) in terms {
            if trunc.admits(m.vertex_degree(), m.edge_degree()) {
                acc_add(&mut acc, m, c);
            }
        }
        Self::from_acc(acc, trunc)
    }

    fn from_acc(acc: Acc, trunc: Truncation) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(m, c)| !c.is_zero() && trunc.admits(m.vertex_degree(), m.edge_degree()))
            .collect();
        terms.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        IndexSeries { terms, trunc }
    }

    /// Terms assumed already sorted, nonzero and inside `trunc`.
    fn from_sorted(terms: Vec<Term>, trunc: Truncation) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        IndexSeries { terms, trunc }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &CycleMonomial) -> Rational {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&CycleMonomial::one())
    }

    /// Lowest vertex degree and lowest edge degree among stored terms.
    pub fn valuation(&self) -> Valuation {
        let mut v = Valuation::INFINITE;
        for (m, _) in &self.terms {
            v.v = v.v.min(m.vertex_degree());
            v.e = v.e.min(m.edge_degree());
        }
        v
    }

    /// Drops terms outside `t`; the result's truncation is the meet.
    pub fn truncate(&self, t: Truncation) -> Self {
        let t = self.trunc.meet(t);
        let terms = self.terms.iter().filter(|(m, _)| t.admits(m.vertex_degree(), m.edge_degree())).cloned().collect();
        Self::from_sorted(terms, t)
    }

    /// Overrides the precision claim. Callers must know the claim is true.
    pub(crate) fn with_trunc(mut self, t: Truncation) -> Self {
        self.terms.retain(|(m, _)| t.admits(m.vertex_degree(), m.edge_degree()));
        self.trunc = t;
        self
    }

    /// Terms of vertex degree exactly `d`.
    pub fn grade(&self, d: u32) -> &[Term] {
        let lo = self.terms.partition_point(|t| t.0.vertex_degree() < d);
        let hi = self.terms.partition_point(|t| t.0.vertex_degree() <= d);
        &self.terms[lo..hi]
    }

    fn merge_with(&self, other: &Self, sign: &Rational) -> Self {
        let t = self.trunc.meet(other.trunc);
        let (x, y) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let ok = |m: &CycleMonomial| t.admits(m.vertex_degree(), m.edge_degree());
        while i < x.len() || j < y.len() {
            let ord = if i == x.len() {
                Ordering::Greater
            } else if j == y.len() {
                Ordering::Less
            } else {
                x[i].0.cmp(&y[j].0)
            };
            match ord {
                Ordering::Less => {
                    if ok(&x[i].0) {
                        out.push(x[i].clone());
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    if ok(&y[j].0) {
                        out.push((y[j].0.clone(), &y[j].1 * sign));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &x[i].1 + &(&y[j].1 * sign);
                    if !c.is_zero() && ok(&x[i].0) {
                        out.push((x[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted(out, t)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge_with(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge_with(other, &Rational::from_int(-1))
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        Self::from_sorted(terms, self.trunc)
    }

    /// Multiplies every term by the monomial `m` (coefficient one).
    pub fn shift(&self, m: &CycleMonomial) -> Self {
        let t = self.trunc.raised(m.vertex_degree(), m.edge_degree());
        let terms = self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect::<Vec<_>>();
        let mut s = Self::from_sorted_unchecked(terms, t);
        s.terms.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        s
    }

    fn from_sorted_unchecked(terms: Vec<Term>, trunc: Truncation) -> Self {
        IndexSeries { terms, trunc }
    }

    /// Exact product; the truncation is the tightest bound that is still
    /// fully determined by the two factors.
    pub fn mul(&self, other: &Self) -> Self {
        let t = product_precision(self.trunc, self.valuation(), other.trunc, other.valuation());
        self.mul_to(other, t)
    }

    /// Product computed only inside `target` (and never beyond what the
    /// factors determine).
    pub fn mul_to(&self, other: &Self, target: Truncation) -> Self {
        let t = product_precision(self.trunc, self.valuation(), other.trunc, other.valuation()).meet(target);
        if self.is_zero() || other.is_zero() {
            return Self::zero(t);
        }
        if t.n_max == UNBOUNDED && t.m_max == UNBOUNDED {
            // exact polynomials: no grade pruning possible
            let blocks = [Block { left: &self.terms, right: &other.terms, factor: Rational::one() }];
            return Self::from_acc(accumulate(&blocks, t), t);
        }
        let fg = self.vertex_grades();
        let gg = other.vertex_grades();
        let mut blocks = Vec::new();
        for (df, sf) in &fg {
            for (dg, sg) in &gg {
                if df.saturating_add(*dg) <= t.n_max {
                    blocks.push(Block { left: sf, right: sg, factor: Rational::one() });
                }
            }
        }
        Self::from_acc(accumulate(&blocks, t), t)
    }

    fn vertex_grades(&self) -> Vec<(u32, &[Term])> {
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.terms.len() {
            let d = self.terms[start].0.vertex_degree();
            let end = start + self.terms[start..].partition_point(|t| t.0.vertex_degree() == d);
            out.push((d, &self.terms[start..end]));
            start = end;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// `f_k`: every variable index multiplied by `k`.
    pub fn pleth(&self, k: u32) -> Self {
        assert!(k >= 1, "plethystic index must be positive");
        if k == 1 {
            return self.clone();
        }
        let t = self.trunc.pleth(k);
        // scaling indices preserves the canonical order
        let terms = self.terms.iter().map(|(m, c)| (m.pleth(k), c.clone())).collect();
        Self::from_sorted(terms, t)
    }

    /// Formal partial derivative with respect to one variable.
    pub fn derivative(&self, fam: Family, index: u32) -> Self {
        let t = match fam {
            Family::A => self.trunc.lowered(index, 0),
            _ => self.trunc.lowered(0, index),
        }
        .unwrap_or(Truncation::new(0, 0));
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(fam, index);
            (e > 0).then(|| (m.divide_var(fam, index, 1).unwrap(), c * &Rational::from_int(e as i64)))
        });
        Self::from_terms(terms, t)
    }

    /// Divides every term by `var^by`; fails on the first term lacking it.
    pub fn divide_var(&self, fam: Family, index: u32, by: u32) -> Option<Self> {
        let t = match fam {
            Family::A => self.trunc.lowered(index * by, 0),
            _ => self.trunc.lowered(0, index * by),
        }
        .unwrap_or(Truncation::new(0, 0));
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.divide_var(fam, index, by)?, c.clone()));
        }
        Some(Self::from_terms(terms, t))
    }

    fn grading(&self, what: &str) -> Result<(Grading, u32)> {
        let t = self.trunc;
        let vertex_ok = self.terms.iter().all(|(m, _)| m.is_one() || m.vertex_degree() >= 1);
        if vertex_ok && t.n_max != UNBOUNDED {
            return Ok((Grading::Vertex, t.n_max));
        }
        if t.n_max != UNBOUNDED && t.m_max != UNBOUNDED {
            return Ok((Grading::Total, t.n_max + t.m_max));
        }
        Err(Error::NonTerminating(format!(
            "{what} of a series with truncation {t} has infinitely many terms per grade"
        )))
    }

    fn graded(&self, g: Grading, top: u32) -> Vec<Vec<Term>> {
        let mut out = vec![Vec::new(); top as usize + 1];
        for (m, c) in &self.terms {
            let d = g.grade(m);
            if d <= top {
                out[d as usize].push((m.clone(), c.clone()));
            }
        }
        out
    }

    fn from_graded(grades: Vec<Vec<Term>>, t: Truncation) -> Self {
        Self::from_terms(grades.into_iter().flatten(), t)
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm(format!("exp needs zero constant term, got {}", self.constant_term())));
        }
        let (g, top) = self.grading("exp")?;
        let t = self.trunc;
        let f = self.graded(g, top);
        let mut e: Vec<Vec<Term>> = vec![Vec::new(); top as usize + 1];
        e[0].push((CycleMonomial::one(), Rational::one()));
        // n E_n = Σ_{k=1..n} k F_k E_{n-k}
        for n in 1..=top as usize {
            let blocks: Vec<Block<'_>> = (1..=n)
                .filter(|&k| !f[k].is_empty() && !e[n - k].is_empty())
                .map(|k| Block { left: &f[k], right: &e[n - k], factor: Rational::new(k as i64, n as i64) })
                .collect();
            let acc = accumulate(&blocks, t);
            e[n] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        Ok(Self::from_graded(e, t))
    }

    /// `log(f)` for `f` with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm(format!("log needs constant term 1, got {}", self.constant_term())));
        }
        let (g, top) = self.grading("log")?;
        let t = self.trunc;
        let mut u = self.graded(g, top);
        u[0].clear();
        let mut l: Vec<Vec<Term>> = vec![Vec::new(); top as usize + 1];
        // L_n = U_n - (1/n) Σ_{k=1..n-1} k L_k U_{n-k}
        for n in 1..=top as usize {
            let blocks: Vec<Block<'_>> = (1..n)
                .filter(|&k| !l[k].is_empty() && !u[n - k].is_empty())
                .map(|k| Block { left: &l[k], right: &u[n - k], factor: Rational::new(-(k as i64), n as i64) })
                .collect();
            let mut acc = accumulate(&blocks, t);
            for (m, c) in &u[n] {
                acc_add(&mut acc, m.clone(), c.clone());
            }
            l[n] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        Ok(Self::from_graded(l, t))
    }

    /// `1/f` for `f` with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ConstantTerm("inverse needs a nonzero constant term".into()));
        }
        let (g, top) = self.grading("inverse")?;
        let t = self.trunc;
        let mut u = self.graded(g, top);
        u[0].clear();
        let inv0 = c0.recip();
        let minus = -&inv0;
        let mut e: Vec<Vec<Term>> = vec![Vec::new(); top as usize + 1];
        e[0].push((CycleMonomial::one(), inv0));
        for n in 1..=top as usize {
            let blocks: Vec<Block<'_>> = (1..=n)
                .filter(|&k| !u[k].is_empty() && !e[n - k].is_empty())
                .map(|k| Block { left: &u[k], right: &e[n - k], factor: minus.clone() })
                .collect();
            let acc = accumulate(&blocks, t);
            e[n] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        Ok(Self::from_graded(e, t))
    }

    /// Largest vertex degree among stored terms.
    pub fn max_vertex_degree(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0.vertex_degree())
    }
}

impl fmt::Display for IndexSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IndexSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self, self.trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: u32) -> IndexSeries {
        IndexSeries::var(Family::A, k)
    }
    fn b(k: u32) -> IndexSeries {
        IndexSeries::var(Family::B, k)
    }
    fn c(k: u32) -> IndexSeries {
        IndexSeries::var(Family::C, k)
    }
    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn wk2() -> IndexSeries {
        a(1).mul(&a(1)).mul(&b(1)).add(&a(2).mul(&c(1))).scale(&q(1, 2))
    }

    #[test]
    fn product_of_monomials() {
        let p = a(1).mul(&b(1)).mul(&a(1).mul(&c(1)));
        let m = CycleMonomial::from_triples([(Family::A, 1, 2), (Family::B, 1, 1), (Family::C, 1, 1)]);
        assert_eq!(p, IndexSeries::monomial(m, Rational::one()));
    }

    #[test]
    fn k2_squared() {
        let sq = wk2().mul(&wk2());
        let expect = IndexSeries::from_terms(
            [
                (CycleMonomial::from_triples([(Family::A, 1, 4), (Family::B, 1, 2)]), q(1, 4)),
                (
                    CycleMonomial::from_triples([(Family::A, 1, 2), (Family::A, 2, 1), (Family::B, 1, 1), (Family::C, 1, 1)]),
                    q(1, 2),
                ),
                (CycleMonomial::from_triples([(Family::A, 2, 2), (Family::C, 1, 2)]), q(1, 4)),
            ],
            Truncation::EXACT,
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn exp_of_a1() {
        let e = a(1).truncate(Truncation::vertices(2)).exp().unwrap();
        let expect = IndexSeries::one().add(&a(1)).add(&a(1).mul(&a(1)).scale(&q(1, 2))).truncate(Truncation::vertices(2));
        assert_eq!(e, expect);
    }

    #[test]
    fn log_of_one_plus_a1() {
        let f = IndexSeries::one().add(&a(1)).truncate(Truncation::vertices(2));
        let l = f.log().unwrap();
        let expect = a(1).sub(&a(1).mul(&a(1)).scale(&q(1, 2))).truncate(Truncation::vertices(2));
        assert_eq!(l, expect);
    }

    #[test]
    fn exp_rejects_constant() {
        let f = IndexSeries::one().add(&a(1)).truncate(Truncation::vertices(3));
        assert!(matches!(f.exp(), Err(Error::ConstantTerm(_))));
        assert!(matches!(a(1).log(), Err(Error::ConstantTerm(_))));
    }

    #[test]
    fn exp_of_untruncated_is_rejected() {
        assert!(matches!(b(1).exp(), Err(Error::NonTerminating(_))));
    }

    #[test]
    fn exp_total_grading_with_edge_terms() {
        // exp(b1) at (0, 3): 1 + b1 + b1^2/2 + b1^3/6
        let e = b(1).truncate(Truncation::new(0, 3)).exp().unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(e.coeff(&CycleMonomial::power(Family::B, 1, 3)), q(1, 6));
    }

    #[test]
    fn inverse_geometric() {
        let f = IndexSeries::one().add(&a(1).mul(&b(1))).truncate(Truncation::vertices(3));
        let g = f.inverse().unwrap();
        assert_eq!(g.mul(&f).truncate(Truncation::vertices(3)), IndexSeries::one().truncate(Truncation::vertices(3)));
        assert_eq!(g.coeff(&CycleMonomial::from_triples([(Family::A, 1, 3), (Family::B, 1, 3)])), q(-1, 1));
    }

    #[test]
    fn precision_tracking() {
        let r = b(1).add(&a(1).mul(&b(1)).mul(&b(1))).truncate(Truncation::vertices(1));
        let p = a(1).mul(&r);
        assert_eq!(p.trunc().n_max, 2);
        let s = r.mul(&r);
        assert_eq!(s.trunc().n_max, 1);
    }

    #[test]
    fn derivative_b1() {
        let d = wk2().derivative(Family::B, 1);
        assert_eq!(d, IndexSeries::monomial(CycleMonomial::power(Family::A, 1, 2), q(1, 2)));
    }

    #[test]
    fn pleth_of_k2() {
        let p = wk2().pleth(2);
        let expect = a(2).mul(&a(2)).mul(&b(2)).add(&a(4).mul(&c(2))).scale(&q(1, 2));
        assert_eq!(p, expect);
    }
}
