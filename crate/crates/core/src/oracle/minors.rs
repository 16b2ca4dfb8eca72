//! Minor tests by brute force over partitions into connected branch sets.
//!
//! A connected graph has an `H` minor (for connected `H`) exactly when its
//! vertex set splits into `|H|` connected blocks whose quotient graph
//! contains `H` as a spanning subgraph up to relabelling.

use crate::species::graph::SimpleGraph;

fn quotient_contains(q: &[u32], h: &SimpleGraph) -> bool {
    let k = h.vertex_count();
    let mut perm: Vec<usize> = (0..k).collect();
    let h_edges = h.edges();
    // Heap's algorithm over all relabellings of h
    let mut c = vec![0; k];
    let hit = |p: &[usize]| h_edges.iter().all(|&(u, v)| q[p[u]] >> p[v] & 1 == 1);
    if hit(&perm) {
        return true;
    }
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if hit(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

fn search(g: &SimpleGraph, h: &SimpleGraph, verts: &[usize], block: &mut Vec<usize>, used: usize) -> bool {
    let k = h.vertex_count();
    let pos = block.len();
    if pos == verts.len() {
        if used < k {
            return false;
        }
        let mut masks = vec![0u32; k];
        for (i, &b) in block.iter().enumerate() {
            masks[b] |= 1 << verts[i];
        }
        if !masks.iter().all(|&m| g.is_connected_within(m)) {
            return false;
        }
        let mut q = vec![0u32; k];
        for (i, &bi) in block.iter().enumerate() {
            for (j, &bj) in block.iter().enumerate() {
                if bi != bj && g.has_edge(verts[i], verts[j]) {
                    q[bi] |= 1 << bj;
                }
            }
        }
        return quotient_contains(&q, h);
    }
    // not enough vertices left to open the remaining blocks
    if verts.len() - pos < k - used {
        return false;
    }
    for b in 0..=used.min(k - 1) {
        block.push(b);
        let found = search(g, h, verts, block, used.max(b + 1));
        block.pop();
        if found {
            return true;
        }
    }
    false
}

/// Whether `g` has `h` as a minor; `h` must be connected.
pub fn has_minor(g: &SimpleGraph, h: &SimpleGraph) -> bool {
    let k = h.vertex_count();
    if g.vertex_count() < k || g.edge_count() < h.edge_count() {
        return false;
    }
    // check each connected component separately
    let mut rest = g.vertex_mask();
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut comp = 1u32 << start;
        loop {
            let mut grown = comp;
            let mut m = comp;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                grown |= g.neighbors(v);
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        rest &= !comp;
        if comp.count_ones() as usize >= k {
            let verts: Vec<usize> = (0..g.vertex_count()).filter(|&v| comp >> v & 1 == 1).collect();
            if search(g, h, &verts, &mut Vec::new(), 0) {
                return true;
            }
        }
    }
    false
}

pub fn k33() -> SimpleGraph {
    let mut g = SimpleGraph::empty(6);
    for u in 0..3 {
        for v in 3..6 {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn has_k4_minor(g: &SimpleGraph) -> bool {
    has_minor(g, &SimpleGraph::complete(4))
}

pub fn has_k5_minor(g: &SimpleGraph) -> bool {
    has_minor(g, &SimpleGraph::complete(5))
}

pub fn has_k33_minor(g: &SimpleGraph) -> bool {
    has_minor(g, &k33())
}

/// Planarity through the minor characterization.
pub fn is_planar(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    !has_k5_minor(g) && !has_k33_minor(g)
}
