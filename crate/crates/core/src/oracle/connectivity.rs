use crate::species::graph::SimpleGraph;

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == k)
}

/// Vertex `k`-connectivity by deleting every set of fewer than `k` vertices.
///
/// A `k`-connected graph needs more than `k` vertices, except that `K2`
/// counts as 2-connected.
pub fn is_k_connected(g: &SimpleGraph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 {
        return true;
    }
    if k == 2 && n == 2 {
        return g.edge_count() == 1;
    }
    if n <= k {
        return false;
    }
    let all = g.vertex_mask();
    (0..k).all(|s| subsets_of_size(n, s).all(|del| g.is_connected_within(all & !del)))
}

/// Separation pairs `{x, y}` of a 2-connected graph.
pub fn separation_pairs(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let all = g.vertex_mask();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if n > 3 && !g.is_connected_within(all & !(1 << x) & !(1 << y)) {
                out.push((x, y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_k_connected(&SimpleGraph::complete(2), 2));
        assert!(!is_k_connected(&SimpleGraph::complete(3), 3));
        assert!(is_k_connected(&SimpleGraph::complete(4), 3));
        assert!(is_k_connected(&SimpleGraph::cycle(6), 2));
        assert!(!is_k_connected(&SimpleGraph::cycle(6), 3));
        assert!(!is_k_connected(&SimpleGraph::path(4), 2));
        assert_eq!(separation_pairs(&SimpleGraph::cycle(4)), vec![(0, 2), (1, 3)]);
    }
}
