use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph on at most 32 vertices, adjacency as bitset rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u32>,
}

pub const MAX_VERTICES: usize = 32;

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            g.adj[u] = full_mask(n) & !(1 << u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// Builds a graph from upper-triangle bits in the order
    /// (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n);
        let mut bit = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "invalid edge {u}-{v}");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertex_mask(&self) -> u32 {
        full_mask(self.n)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut m = self.adj[u] >> (u + 1) << (u + 1);
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                out.push((u, v));
                m &= m - 1;
            }
        }
        out
    }

    /// Graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by the vertices in `keep`, renumbered in increasing order.
    pub fn induced(&self, keep: u32) -> (Self, Vec<usize>) {
        let verts: Vec<usize> = (0..self.n).filter(|&v| keep >> v & 1 == 1).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Self::empty(verts.len());
        for (u, v) in self.edges() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v]);
            }
        }
        (g, verts)
    }

    /// Whether the vertices in `within` induce a connected subgraph
    /// (the empty set counts as connected).
    pub fn is_connected_within(&self, within: u32) -> bool {
        if within == 0 {
            return true;
        }
        let start = within.trailing_zeros();
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & within & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == within
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_mask())
    }

    /// 2-connectivity with the convention that `K2` counts as 2-connected.
    pub fn is_biconnected(&self) -> bool {
        let all = self.vertex_mask();
        if self.n < 2 || !self.is_connected() {
            return false;
        }
        if self.n == 2 {
            return self.has_edge(0, 1);
        }
        (0..self.n).all(|v| self.is_connected_within(all & !(1 << v)))
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}{:?}", self.n, self.edges())
    }
}

/// A two-pole network: a graph with distinguished poles 0 and 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Network {
    graph: SimpleGraph,
    pole0: usize,
    pole1: usize,
}

impl Network {
    /// Validates that adding the pole edge makes the graph 2-connected.
    pub fn new(graph: SimpleGraph, pole0: usize, pole1: usize) -> Result<Self> {
        if pole0 == pole1 || pole0 >= graph.vertex_count() || pole1 >= graph.vertex_count() {
            return Err(Error::InvalidInput("poles must be two distinct vertices".into()));
        }
        let mut closed = graph.clone();
        closed.add_edge(pole0, pole1);
        if !closed.is_biconnected() {
            return Err(Error::InvalidInput("graph plus the pole edge is not 2-connected".into()));
        }
        Ok(Network { graph, pole0, pole1 })
    }

    /// Network with the single edge between the poles.
    pub fn edge() -> Self {
        Network { graph: SimpleGraph::complete(2), pole0: 0, pole1: 1 }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn poles(&self) -> (usize, usize) {
        (self.pole0, self.pole1)
    }

    pub fn internal_count(&self) -> usize {
        self.graph.vertex_count() - 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_shapes() {
        assert_eq!(SimpleGraph::complete(5).edge_count(), 10);
        assert_eq!(SimpleGraph::cycle(6).edges().len(), 6);
        assert!(SimpleGraph::cycle(5).is_biconnected());
        assert!(!SimpleGraph::path(4).is_biconnected());
        assert!(SimpleGraph::complete(2).is_biconnected());
    }

    #[test]
    fn mask_order() {
        let g = SimpleGraph::from_mask(3, 0b101);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn network_validation() {
        let path = SimpleGraph::path(3); // 0-1-2, poles 0 and 2
        assert!(Network::new(path.clone(), 0, 2).is_ok());
        assert!(Network::new(path, 0, 1).is_err());
    }
}
