//! Canonical forms by equitable refinement and exhaustive individualization.
//!
//! No automorphism pruning: every leaf of the search tree is visited, which
//! is fine for the graph sizes the oracle handles.

use crate::species::graph::SimpleGraph;

/// Upper-triangle adjacency bits of a relabelled graph; fits `n ≤ 16`.
pub type Code = u128;

pub const MAX_CANON_VERTICES: usize = 16;

/// Splits cells by neighbour counts into each splitter cell until stable.
/// Cells are vertex bitmasks; the order of cells is part of the result.
fn refine(g: &SimpleGraph, cells: &mut Vec<u32>) {
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len());
            let mut split_any = false;
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut buckets: Vec<(u32, u32)> = Vec::new();
                let mut m = cell;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    let k = (g.neighbors(v) & splitter).count_ones();
                    match buckets.iter_mut().find(|b| b.0 == k) {
                        Some(b) => b.1 |= 1 << v,
                        None => buckets.push((k, 1 << v)),
                    }
                }
                if buckets.len() > 1 {
                    split_any = true;
                }
                buckets.sort_unstable_by_key(|b| b.0);
                next.extend(buckets.into_iter().map(|b| b.1));
            }
            *cells = next;
            if split_any {
                changed = true;
                break;
            }
            s += 1;
        }
    }
}

fn leaf_code(g: &SimpleGraph, cells: &[u32]) -> Code {
    // label i is the vertex in the i-th singleton cell
    let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
    let mut code: Code = 0;
    let mut bit = 0;
    for j in 1..order.len() {
        for i in 0..j {
            if g.has_edge(order[i], order[j]) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn search(g: &SimpleGraph, cells: Vec<u32>, best: &mut Option<(Code, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
        let code = leaf_code(g, &cells);
        if best.as_ref().is_none_or(|b| code < b.0) {
            let order = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            *best = Some((code, order));
        }
        return;
    };
    let cell = cells[target];
    let mut m = cell;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(1 << v);
        next.push(cell & !(1 << v));
        next.extend_from_slice(&cells[target + 1..]);
        refine(g, &mut next);
        search(g, next, best);
    }
}

fn initial_cells(g: &SimpleGraph) -> Vec<u32> {
    if g.vertex_count() == 0 {
        return Vec::new();
    }
    let mut cells = vec![g.vertex_mask()];
    refine(g, &mut cells);
    cells
}

/// Canonical code and the canonical vertex order (`order[i]` gets label `i`).
pub fn canonical(g: &SimpleGraph) -> (Code, Vec<usize>) {
    assert!(g.vertex_count() <= MAX_CANON_VERTICES, "canonical forms limited to {MAX_CANON_VERTICES} vertices");
    let mut best = None;
    search(g, initial_cells(g), &mut best);
    best.unwrap_or((0, Vec::new()))
}

pub fn canonical_code(g: &SimpleGraph) -> Code {
    canonical(g).0
}

/// The canonically relabelled graph.
pub fn canonical_form(g: &SimpleGraph) -> SimpleGraph {
    let (_, order) = canonical(g);
    let mut perm = vec![0; order.len()];
    for (label, &v) in order.iter().enumerate() {
        perm[v] = label;
    }
    g.relabel(&perm)
}

pub fn graph_from_code(n: usize, code: Code) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    g
}

pub fn is_isomorphic(g: &SimpleGraph, h: &SimpleGraph) -> bool {
    g.vertex_count() == h.vertex_count() && g.edge_count() == h.edge_count() && canonical_code(g) == canonical_code(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelling_invariance() {
        let g = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 2)]);
        let perms = [[5, 3, 1, 0, 2, 4], [1, 0, 2, 3, 5, 4], [2, 4, 0, 5, 1, 3]];
        for p in perms {
            assert_eq!(canonical_code(&g), canonical_code(&g.relabel(&p)));
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let c6 = SimpleGraph::cycle(6);
        let two_triangles = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!is_isomorphic(&c6, &two_triangles));
    }

    #[test]
    fn form_roundtrip() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let f = canonical_form(&g);
        assert_eq!(graph_from_code(5, canonical_code(&g)), f);
    }
}
