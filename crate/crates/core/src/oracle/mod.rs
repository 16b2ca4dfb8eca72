//! Brute-force reference data from explicit graphs: canonical forms,
//! exhaustive generation, tc-tree decomposition, minor-based family tests,
//! and edge index series summed over isomorphism classes.

pub mod canon;
pub mod classify;
pub mod connectivity;
pub mod generate;
pub mod minors;
pub mod tctree;

use num_bigint::BigInt;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

pub use classify::{classify, Classification, GraphFamily};
pub use connectivity::is_k_connected;
pub use tctree::{tc_decompose, tc_decompose_seeded, TcTree};

use crate::error::{Error, Result};
use crate::series::{IndexSeries, Truncation};
use crate::species::automorphism::{automorphisms, Perm};
use crate::species::graph::SimpleGraph;
use crate::species::index_series::graph_index_series_with;

/// Which graphs to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFilter {
    All,
    Connected,
    KConnected(usize),
    /// 2-connected graphs of a family.
    Blocks(GraphFamily),
    /// 3-connected graphs admitted as components by a family.
    Cores(GraphFamily),
}

#[derive(Clone, Debug)]
pub struct GraphRecord {
    pub graph: SimpleGraph,
    pub automorphisms: Vec<Perm>,
}

impl GraphRecord {
    pub fn index_series(&self) -> IndexSeries {
        graph_index_series_with(&self.graph, &self.automorphisms)
    }
}

fn accepts(filter: GraphFilter, g: &SimpleGraph) -> Result<bool> {
    Ok(match filter {
        GraphFilter::All | GraphFilter::Connected => true,
        GraphFilter::KConnected(k) => is_k_connected(g, k),
        GraphFilter::Blocks(f) => g.is_biconnected() && classify(g)?.in_family(f),
        GraphFilter::Cores(f) => is_k_connected(g, 3) && f.admits_core(g),
    })
}

/// Canonical representatives on exactly `n` vertices passing `filter`, each
/// with its full automorphism group.
pub fn enumerate_graphs(n: usize, filter: GraphFilter) -> Result<Vec<GraphRecord>> {
    let pool: Vec<SimpleGraph> = match filter {
        GraphFilter::All => generate::all_graphs(n)?,
        GraphFilter::KConnected(0) => generate::all_graphs(n)?,
        _ => generate::connected_graphs(n)?.as_ref().clone(),
    };
    let kept: Vec<Result<Option<GraphRecord>>> = pool
        .into_par_iter()
        .map(|g| {
            if !accepts(filter, &g)? {
                return Ok(None);
            }
            let automorphisms = automorphisms(&g);
            Ok(Some(GraphRecord { graph: g, automorphisms }))
        })
        .collect();
    kept.into_iter().filter_map(|r| r.transpose()).collect()
}

/// `Σ W_G` over the classes passing `filter` with `min_n..=n_max` vertices.
/// All terms of vertex degree up to `n_max` are exact.
pub fn oracle_index_series(filter: GraphFilter, n_max: usize) -> Result<IndexSeries> {
    let t = Truncation::vertices(n_max as u32);
    let mut acc = IndexSeries::zero(t);
    for n in 1..=n_max {
        let records = enumerate_graphs(n, filter)?;
        let part = records
            .par_iter()
            .map(|r| r.index_series())
            .reduce(|| IndexSeries::zero(Truncation::EXACT), |a, b| a.add(&b));
        acc = acc.add(&part);
    }
    Ok(acc.truncate(t))
}

/// Core series `W_F` of a family from explicit 3-connected graphs.
pub fn oracle_core_series(family: GraphFamily, n_max: usize) -> Result<IndexSeries> {
    if n_max < 4 || family == GraphFamily::Sp {
        return Ok(IndexSeries::zero(Truncation::vertices(n_max as u32)));
    }
    oracle_index_series(GraphFilter::Cores(family), n_max)
}

/// Unlabelled counts `[n][m]` of the 2-connected graphs of a family.
pub fn unlabelled_counts(family: GraphFamily, n: usize) -> Result<Vec<u64>> {
    let mut row = vec![0; n * (n - 1) / 2 + 1];
    for r in enumerate_graphs(n, GraphFilter::Blocks(family))? {
        row[r.graph.edge_count()] += 1;
    }
    Ok(row)
}

pub const MAX_LABELLED_VERTICES: usize = 7;

/// Labelled counts by edge number of the 2-connected graphs of a family on
/// `n` vertices, by running through every labelled graph.
pub fn labelled_counts(family: GraphFamily, n: usize) -> Result<Vec<BigInt>> {
    if !(2..=MAX_LABELLED_VERTICES).contains(&n) {
        return Err(Error::OutOfRange(format!("labelled enumeration supports 2..={MAX_LABELLED_VERTICES} vertices, got {n}")));
    }
    let members: FxHashMap<canon::Code, bool> = enumerate_graphs(n, GraphFilter::KConnected(2))?
        .into_par_iter()
        .map(|r| Ok((canon::canonical_code(&r.graph), classify(&r.graph)?.in_family(family))))
        .collect::<Result<_>>()?;
    let pairs = n * (n - 1) / 2;
    let counts = (0u64..1 << pairs)
        .into_par_iter()
        .fold(
            || vec![0u64; pairs + 1],
            |mut acc, mask| {
                let g = SimpleGraph::from_mask(n, mask);
                if g.is_biconnected() && members[&canon::canonical_code(&g)] {
                    acc[mask.count_ones() as usize] += 1;
                }
                acc
            },
        )
        .reduce(|| vec![0u64; pairs + 1], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(counts.into_iter().map(BigInt::from).collect())
}

#[derive(Clone, Debug, Default)]
pub struct DissymmetryReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl DissymmetryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Fixed white nodes, black nodes and incidences of `p` acting on `t`.
fn fixed_counts(t: &TcTree, p: &Perm) -> (i64, i64, i64) {
    let img = |v: usize| p[v] as usize;
    let pair = |(u, v): (usize, usize)| (img(u).min(img(v)), img(u).max(img(v)));
    let white_fixed: Vec<bool> = t
        .whites
        .iter()
        .map(|w| {
            let mut im: Vec<usize> = w.vertices.iter().map(|&v| img(v)).collect();
            im.sort_unstable();
            im == w.vertices
        })
        .collect();
    let black_fixed: Vec<bool> = t.blacks.iter().map(|b| pair(b.pair) == b.pair).collect();
    let fw = white_fixed.iter().filter(|&&f| f).count() as i64;
    let fb = black_fixed.iter().filter(|&&f| f).count() as i64;
    let fe = t.incidences.iter().filter(|&&(w, b)| white_fixed[w] && black_fixed[b]).count() as i64;
    (fw, fb, fe)
}

/// Checks on every 2-connected class with `3..=n_max` vertices that the
/// tc-tree is a tree (`#white + #black = 1 + #incidences`), that the same
/// holds for orbits under the automorphism group (the unlabelled form,
/// counted with Burnside's lemma) and that random split orders give the
/// same tree.
pub fn dissymmetry_check(n_max: usize) -> Result<DissymmetryReport> {
    let mut report = DissymmetryReport::default();
    for n in 3..=n_max {
        let records = enumerate_graphs(n, GraphFilter::KConnected(2))?;
        let fails: Vec<String> = records
            .par_iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let t = match tc_decompose(&r.graph) {
                    Ok(t) => t,
                    Err(e) => return Some(format!("{:?}: {e}", r.graph)),
                };
                if !t.is_tree() {
                    return Some(format!("{:?}: tc-tree is not a tree", r.graph));
                }
                let burnside: i64 = r
                    .automorphisms
                    .iter()
                    .map(|p| {
                        let (w, b, e) = fixed_counts(&t, p);
                        w + b - e
                    })
                    .sum();
                if burnside != r.automorphisms.len() as i64 {
                    return Some(format!("{:?}: orbit counts violate the dissymmetry identity", r.graph));
                }
                let seed = (n * 100_000 + i) as u64;
                match tc_decompose_seeded(&r.graph, seed) {
                    Ok(t2) if t2 == t => None,
                    _ => Some(format!("{:?}: split order changes the tc-tree", r.graph)),
                }
            })
            .collect();
        report.checked += records.len();
        report.failures.extend(fails);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn biconnected_class_counts() {
        // unlabelled 2-connected graphs on 3..=7 vertices
        let counts: Vec<usize> = (3..=7).map(|n| enumerate_graphs(n, GraphFilter::KConnected(2)).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 10, 56, 468]);
    }

    #[test]
    fn k4_core_series() {
        let w = oracle_core_series(GraphFamily::Planar, 4).unwrap();
        let k4 = crate::species::index_series::graph_index_series(&SimpleGraph::complete(4));
        assert_eq!(w, k4.truncate(Truncation::vertices(4)));
    }
}
