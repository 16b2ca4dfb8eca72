//! Automorphism enumeration by backtracking with degree and neighbourhood
//! pruning.

use super::graph::SimpleGraph;

pub type Perm = Vec<u8>;

/// Degree plus sorted neighbour degrees; automorphisms preserve it.
fn invariants(g: &SimpleGraph) -> Vec<(usize, Vec<usize>)> {
    (0..g.vertex_count())
        .map(|v| {
            let mut nd: Vec<usize> = (0..g.vertex_count()).filter(|&u| g.has_edge(u, v)).map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

/// Visiting order: pinned vertices first, then greedily the vertex with the
/// most already-placed neighbours, so adjacency checks prune early.
fn search_order(g: &SimpleGraph, pinned: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = 0u32;
    for &p in pinned {
        if placed >> p & 1 == 0 {
            order.push(p);
            placed |= 1 << p;
        }
    }
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((g.neighbors(v) & placed).count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        order.push(v);
        placed |= 1 << v;
    }
    order
}

struct Search<'a> {
    g: &'a SimpleGraph,
    inv: Vec<(usize, Vec<usize>)>,
    order: Vec<usize>,
    pins: Vec<Option<usize>>,
    image: Vec<usize>,
    used: u32,
    out: Vec<Perm>,
}

impl Search<'_> {
    fn go(&mut self, depth: usize) {
        let n = self.g.vertex_count();
        if depth == n {
            self.out.push(self.image.iter().map(|&x| x as u8).collect());
            return;
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.pins[v] {
            Some(w) => vec![w],
            None => (0..n).collect(),
        };
        for w in candidates {
            if self.used >> w & 1 == 1 || self.inv[v] != self.inv[w] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| self.g.has_edge(u, v) == self.g.has_edge(self.image[u], w));
            if !consistent {
                continue;
            }
            self.image[v] = w;
            self.used |= 1 << w;
            self.go(depth + 1);
            self.used &= !(1 << w);
        }
    }
}

/// All automorphisms `σ` with `σ(u) = v` for every pin `(u, v)`, as image
/// vectors, in lexicographic order of the search.
pub fn automorphisms_pinned(g: &SimpleGraph, pins: &[(usize, usize)]) -> Vec<Perm> {
    let n = g.vertex_count();
    let mut pin_of = vec![None; n];
    for &(u, v) in pins {
        pin_of[u] = Some(v);
    }
    let pinned: Vec<usize> = pins.iter().map(|p| p.0).collect();
    let mut s = Search {
        g,
        inv: invariants(g),
        order: search_order(g, &pinned),
        pins: pin_of,
        image: vec![0; n],
        used: 0,
        out: Vec::new(),
    };
    s.go(0);
    s.out
}

pub fn automorphisms(g: &SimpleGraph) -> Vec<Perm> {
    automorphisms_pinned(g, &[])
}

/// Cycle lengths of a permutation, one entry per cycle.
pub fn cycle_type(p: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Induced edge cycles of `σ`: `(length, mobius)` per cycle, where a cycle
/// of length `l` is Möbius when `σ^l` swaps the endpoints of its edges.
pub fn edge_cycles(g: &SimpleGraph, p: &[u8]) -> Vec<(u32, bool)> {
    let edges = g.edges();
    let n = g.vertex_count();
    let mut id = vec![usize::MAX; n * n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        id[u * n + v] = i;
        id[v * n + u] = i;
    }
    let mut seen = vec![false; edges.len()];
    let mut out = Vec::new();
    for s in 0..edges.len() {
        if seen[s] {
            continue;
        }
        let (u0, v0) = edges[s];
        let (mut u, mut v) = (u0, v0);
        let mut len = 0;
        loop {
            let e = id[u * n + v];
            seen[e] = true;
            u = p[u] as usize;
            v = p[v] as usize;
            len += 1;
            if id[u * n + v] == s {
                break;
            }
        }
        out.push((len, u != u0));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(automorphisms(&SimpleGraph::complete(4)).len(), 24);
        assert_eq!(automorphisms(&SimpleGraph::cycle(5)).len(), 10);
        assert_eq!(automorphisms(&SimpleGraph::path(4)).len(), 2);
        let petersen_like = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        assert_eq!(automorphisms(&petersen_like).len(), 4);
    }

    #[test]
    fn pinned_search() {
        let k4 = SimpleGraph::complete(4);
        assert_eq!(automorphisms_pinned(&k4, &[(0, 0), (1, 1)]).len(), 2);
        assert_eq!(automorphisms_pinned(&k4, &[(0, 1), (1, 0)]).len(), 2);
    }

    #[test]
    fn reflection_of_k2_is_mobius() {
        let k2 = SimpleGraph::complete(2);
        assert_eq!(edge_cycles(&k2, &[1, 0]), vec![(1, true)]);
        assert_eq!(edge_cycles(&k2, &[0, 1]), vec![(1, false)]);
    }
}
