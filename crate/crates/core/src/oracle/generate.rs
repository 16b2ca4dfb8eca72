//! Isomorphism classes of small graphs by vertex augmentation.
//!
//! Every connected graph on `n` vertices arises from a connected graph on
//! `n - 1` vertices by adding a vertex with a non-empty neighbourhood (delete
//! a leaf of a spanning tree). Candidates are deduplicated by canonical code.

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::canon::{canonical_code, graph_from_code, Code};
use crate::error::{Error, Result};
use crate::species::graph::SimpleGraph;

pub const MAX_GENERATED_VERTICES: usize = 9;

type Level = Arc<Vec<SimpleGraph>>;

fn connected_cache() -> &'static Mutex<Vec<Level>> {
    static CACHE: OnceLock<Mutex<Vec<Level>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

fn augment(base: &[SimpleGraph], n: usize) -> Vec<SimpleGraph> {
    let codes: BTreeSet<(usize, Code)> = base
        .par_iter()
        .flat_map_iter(|g| {
            (1u32..1 << (n - 1)).map(move |nbrs| {
                let mut h = SimpleGraph::empty(n);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                let mut m = nbrs;
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    h.add_edge(u, n - 1);
                }
                (h.edge_count(), canonical_code(&h))
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    codes.into_iter().map(|(_, c)| graph_from_code(n, c)).collect()
}

/// Canonical representatives of the connected graphs on `n` vertices,
/// ordered by edge count and then canonical code.
pub fn connected_graphs(n: usize) -> Result<Level> {
    if n == 0 || n > MAX_GENERATED_VERTICES {
        return Err(Error::OutOfRange(format!("graph generation supports 1..={MAX_GENERATED_VERTICES} vertices, got {n}")));
    }
    let mut cache = connected_cache().lock().expect("generation cache poisoned");
    if cache.is_empty() {
        cache.push(Arc::new(vec![SimpleGraph::empty(1)]));
    }
    while cache.len() < n {
        let k = cache.len() + 1;
        let next = augment(&cache[k - 2], k);
        cache.push(Arc::new(next));
    }
    Ok(cache[n - 1].clone())
}

/// Canonical representatives of all graphs on `n` vertices.
pub fn all_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    if n == 0 || n > MAX_GENERATED_VERTICES {
        return Err(Error::OutOfRange(format!("graph generation supports 1..={MAX_GENERATED_VERTICES} vertices, got {n}")));
    }
    let mut level = vec![SimpleGraph::empty(1)];
    for k in 2..=n {
        let next: BTreeSet<(usize, Code)> = level
            .par_iter()
            .flat_map_iter(|g| {
                (0u32..1 << (k - 1)).map(move |nbrs| {
                    let mut h = SimpleGraph::empty(k);
                    for (u, v) in g.edges() {
                        h.add_edge(u, v);
                    }
                    for u in 0..k - 1 {
                        if nbrs >> u & 1 == 1 {
                            h.add_edge(u, k - 1);
                        }
                    }
                    (h.edge_count(), canonical_code(&h))
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        level = next.into_iter().map(|(_, c)| graph_from_code(k, c)).collect();
    }
    Ok(level)
}
