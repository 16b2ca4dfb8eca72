//! Decomposition of a 2-connected graph into 3-connected components.
//!
//! The graph is split at separation pairs into a multigraph of pieces joined
//! by virtual edges until every piece is a bond, a triangle or 3-connected;
//! bonds sharing a virtual edge are then merged, and so are polygons. The
//! result does not depend on the order of the splits.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::species::graph::SimpleGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeKind {
    Real,
    Virtual(usize),
}

#[derive(Clone, Copy, Debug)]
struct MEdge {
    u: usize,
    v: usize,
    kind: EdgeKind,
}

impl MEdge {
    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

type Piece = Vec<MEdge>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    Polygon,
    ThreeConnected,
}

/// A white node: a maximal polygon or a 3-connected component, with the
/// virtual edges included among its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct White {
    pub kind: ComponentKind,
    /// Host vertices, sorted.
    pub vertices: Vec<usize>,
    /// Host vertex pairs, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl White {
    /// The component as a graph on `0..vertices.len()`.
    pub fn graph(&self) -> SimpleGraph {
        let idx = |v: usize| self.vertices.binary_search(&v).expect("edge endpoint outside component");
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (idx(u), idx(v))).collect();
        SimpleGraph::from_edges(self.vertices.len(), &edges)
    }
}

/// A black node: a separating pair shared by several components, carrying
/// the original edge between the pair if the graph has it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Black {
    pub pair: (usize, usize),
    pub has_edge: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcTree {
    pub whites: Vec<White>,
    pub blacks: Vec<Black>,
    /// `(white, black)` index pairs, sorted.
    pub incidences: Vec<(usize, usize)>,
}

impl TcTree {
    /// Connected, acyclic and bipartite with white leaves.
    pub fn is_tree(&self) -> bool {
        let nw = self.whites.len();
        let total = nw + self.blacks.len();
        if total == 0 || total != self.incidences.len() + 1 {
            return false;
        }
        let mut adj = vec![Vec::new(); total];
        for &(w, b) in &self.incidences {
            adj[w].push(nw + b);
            adj[nw + b].push(w);
        }
        if !self.blacks.is_empty() && nw > 0 && (0..self.blacks.len()).any(|b| adj[nw + b].len() < 2) {
            return false;
        }
        let mut seen = vec![false; total];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn polygon_count(&self) -> usize {
        self.whites.iter().filter(|w| w.kind == ComponentKind::Polygon).count()
    }

    pub fn three_connected(&self) -> impl Iterator<Item = &White> + '_ {
        self.whites.iter().filter(|w| w.kind == ComponentKind::ThreeConnected)
    }
}

struct Splitter {
    rng: Option<StdRng>,
    next_virtual: usize,
}

impl Splitter {
    fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        match &mut self.rng {
            Some(r) => items.choose(r).expect("non-empty choice").clone(),
            None => items[0].clone(),
        }
    }

    fn fresh(&mut self) -> usize {
        self.next_virtual += 1;
        self.next_virtual - 1
    }

    fn cut(&mut self, piece: &Piece, part: &[bool], x: usize, y: usize) -> (Piece, Piece) {
        let id = self.fresh();
        let ve = MEdge { u: x, v: y, kind: EdgeKind::Virtual(id) };
        let mut a: Piece = piece.iter().zip(part).filter(|(_, &p)| p).map(|(e, _)| *e).collect();
        let mut b: Piece = piece.iter().zip(part).filter(|(_, &p)| !p).map(|(e, _)| *e).collect();
        a.push(ve);
        b.push(ve);
        (a, b)
    }

    /// Splits a piece once, or returns `None` if it is final.
    fn split(&mut self, piece: &Piece) -> Option<(Piece, Piece)> {
        let mut keys: Vec<(usize, usize)> = piece.iter().map(MEdge::key).collect();
        keys.sort_unstable();
        keys.dedup();
        if keys.len() == 1 {
            return None;
        }
        let bundles: Vec<(usize, usize)> =
            keys.iter().copied().filter(|k| piece.iter().filter(|e| e.key() == *k).count() >= 2).collect();
        if !bundles.is_empty() {
            let k = self.pick(&bundles);
            let part: Vec<bool> = piece.iter().map(|e| e.key() == k).collect();
            return Some(self.cut(piece, &part, k.0, k.1));
        }
        if piece.len() == 3 {
            return None;
        }
        let mut verts: Vec<usize> = piece.iter().flat_map(|e| [e.u, e.v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let mut options = Vec::new();
        for (i, &x) in verts.iter().enumerate() {
            for &y in &verts[i + 1..] {
                let classes = separation_classes(piece, x, y);
                let sizes: Vec<usize> = (0..classes.1).map(|c| classes.0.iter().filter(|&&k| k == c).count()).collect();
                if sizes.len() < 2 {
                    continue;
                }
                for (c, &s) in sizes.iter().enumerate() {
                    if s >= 2 && piece.len() - s >= 2 {
                        options.push((x, y, c, classes.0.clone()));
                    }
                }
            }
        }
        if options.is_empty() {
            return None;
        }
        let (x, y, c, labels) = self.pick(&options);
        let part: Vec<bool> = labels.iter().map(|&k| k == c).collect();
        Some(self.cut(piece, &part, x, y))
    }
}

/// Class label per edge and the number of classes: two edges are in the same
/// class if a path joins them without passing through `x` or `y`.
fn separation_classes(piece: &Piece, x: usize, y: usize) -> (Vec<usize>, usize) {
    let n = piece.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let nx = p[j];
            p[j] = r;
            j = nx;
        }
        r
    }
    let mut first_at = std::collections::HashMap::new();
    for (i, e) in piece.iter().enumerate() {
        for w in [e.u, e.v] {
            if w == x || w == y {
                continue;
            }
            match first_at.get(&w) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    first_at.insert(w, i);
                }
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut root_label = std::collections::HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        let next = root_label.len();
        label[i] = *root_label.entry(r).or_insert(next);
    }
    let count = root_label.len();
    (label, count)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PieceKind {
    Bond,
    Polygon,
    Rigid,
}

fn piece_kind(p: &Piece) -> PieceKind {
    let k = p[0].key();
    if p.iter().all(|e| e.key() == k) {
        return PieceKind::Bond;
    }
    let mut verts: Vec<usize> = p.iter().flat_map(|e| [e.u, e.v]).collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() == p.len() && verts.iter().all(|&v| p.iter().filter(|e| e.u == v || e.v == v).count() == 2) {
        PieceKind::Polygon
    } else {
        PieceKind::Rigid
    }
}

fn decompose(g: &SimpleGraph, rng: Option<StdRng>) -> Result<TcTree> {
    let n = g.vertex_count();
    if !g.is_biconnected() {
        return Err(Error::InvalidInput("tc-tree decomposition needs a 2-connected graph".into()));
    }
    if n == 2 {
        return Ok(TcTree { whites: Vec::new(), blacks: vec![Black { pair: (0, 1), has_edge: true }], incidences: Vec::new() });
    }
    let mut sp = Splitter { rng, next_virtual: 0 };
    let mut todo: Vec<Piece> = vec![g.edges().into_iter().map(|(u, v)| MEdge { u, v, kind: EdgeKind::Real }).collect()];
    let mut pieces: Vec<Piece> = Vec::new();
    while let Some(p) = todo.pop() {
        match sp.split(&p) {
            Some((a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            None => pieces.push(p),
        }
    }

    // virtual edge id -> the two pieces holding it
    let nv = sp.next_virtual;
    let mut holders = vec![Vec::with_capacity(2); nv];
    for (i, p) in pieces.iter().enumerate() {
        for e in p {
            if let EdgeKind::Virtual(id) = e.kind {
                holders[id].push(i);
            }
        }
    }
    let kinds: Vec<PieceKind> = pieces.iter().map(piece_kind).collect();
    let mut parent: Vec<usize> = (0..pieces.len()).collect();
    fn root(p: &[usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    let mut consumed = vec![false; nv];
    for id in 0..nv {
        let (a, b) = (root(&parent, holders[id][0]), root(&parent, holders[id][1]));
        if kinds[a] == kinds[b] && kinds[a] != PieceKind::Rigid {
            parent[a] = b;
            consumed[id] = true;
        }
    }

    let mut groups: std::collections::BTreeMap<usize, Vec<MEdge>> = std::collections::BTreeMap::new();
    for (i, p) in pieces.iter().enumerate() {
        let r = root(&parent, i);
        let entry = groups.entry(r).or_default();
        entry.extend(p.iter().filter(|e| !matches!(e.kind, EdgeKind::Virtual(id) if consumed[id])).copied());
    }

    let mut whites = Vec::new();
    let mut blacks = Vec::new();
    // group root -> white or black index
    let mut node_of = std::collections::HashMap::new();
    for (&r, edges) in &groups {
        match kinds[r] {
            PieceKind::Bond => {
                node_of.insert(r, (false, blacks.len()));
                blacks.push(Black { pair: edges[0].key(), has_edge: edges.iter().any(|e| e.kind == EdgeKind::Real) });
            }
            k => {
                let mut vertices: Vec<usize> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
                vertices.sort_unstable();
                vertices.dedup();
                let mut es: Vec<(usize, usize)> = edges.iter().map(MEdge::key).collect();
                es.sort_unstable();
                let kind = if k == PieceKind::Polygon { ComponentKind::Polygon } else { ComponentKind::ThreeConnected };
                node_of.insert(r, (true, whites.len()));
                whites.push(White { kind, vertices, edges: es });
            }
        }
    }
    let mut incidences = Vec::new();
    for id in (0..nv).filter(|&id| !consumed[id]) {
        let (a, b) = (root(&parent, holders[id][0]), root(&parent, holders[id][1]));
        match (node_of[&a], node_of[&b]) {
            ((true, w), (false, bl)) | ((false, bl), (true, w)) => incidences.push((w, bl)),
            ((true, w1), (true, w2)) => {
                let key = pieces[holders[id][0]].iter().find(|e| e.kind == EdgeKind::Virtual(id)).expect("virtual edge").key();
                blacks.push(Black { pair: key, has_edge: false });
                incidences.push((w1, blacks.len() - 1));
                incidences.push((w2, blacks.len() - 1));
            }
            _ => unreachable!("adjacent bonds are merged"),
        }
    }
    Ok(canonicalize(TcTree { whites, blacks, incidences }))
}

fn canonicalize(t: TcTree) -> TcTree {
    let mut wi: Vec<usize> = (0..t.whites.len()).collect();
    wi.sort_by(|&a, &b| {
        let (x, y) = (&t.whites[a], &t.whites[b]);
        (x.kind, &x.vertices, &x.edges).cmp(&(y.kind, &y.vertices, &y.edges))
    });
    let mut bi: Vec<usize> = (0..t.blacks.len()).collect();
    bi.sort_by_key(|&b| (t.blacks[b].pair, t.blacks[b].has_edge));
    let mut wpos = vec![0; wi.len()];
    for (new, &old) in wi.iter().enumerate() {
        wpos[old] = new;
    }
    let mut bpos = vec![0; bi.len()];
    for (new, &old) in bi.iter().enumerate() {
        bpos[old] = new;
    }
    let mut incidences: Vec<(usize, usize)> = t.incidences.iter().map(|&(w, b)| (wpos[w], bpos[b])).collect();
    incidences.sort_unstable();
    TcTree {
        whites: wi.into_iter().map(|i| t.whites[i].clone()).collect(),
        blacks: bi.into_iter().map(|i| t.blacks[i].clone()).collect(),
        incidences,
    }
}

/// The tc-tree of a 2-connected graph.
pub fn tc_decompose(g: &SimpleGraph) -> Result<TcTree> {
    decompose(g, None)
}

/// Same as [`tc_decompose`] with the separation pairs split in a random
/// order drawn from `seed`.
pub fn tc_decompose_seeded(g: &SimpleGraph, seed: u64) -> Result<TcTree> {
    decompose(g, Some(StdRng::seed_from_u64(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_one_polygon() {
        let t = tc_decompose(&SimpleGraph::cycle(6)).unwrap();
        assert_eq!(t.whites.len(), 1);
        assert_eq!(t.whites[0].kind, ComponentKind::Polygon);
        assert!(t.blacks.is_empty());
    }

    #[test]
    fn k4_minus_edge() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
        let t = tc_decompose(&g).unwrap();
        assert_eq!(t.polygon_count(), 2);
        assert_eq!(t.blacks, vec![Black { pair: (0, 1), has_edge: true }]);
        assert!(t.is_tree());
    }

    #[test]
    fn theta_graph_has_edgeless_bond() {
        // three internally disjoint paths between 0 and 1
        let g = SimpleGraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let t = tc_decompose(&g).unwrap();
        assert_eq!(t.polygon_count(), 3);
        assert_eq!(t.blacks, vec![Black { pair: (0, 1), has_edge: false }]);
        assert_eq!(t.incidences.len(), 3);
    }

    #[test]
    fn two_k4_glued_on_an_edge_without_it() {
        // K4 on {0,1,2,3} and on {0,1,4,5}, edge 01 removed: two rigid
        // components joined through a bond without an edge
        let mut g = SimpleGraph::complete(6);
        for (u, v) in [(2, 4), (2, 5), (3, 4), (3, 5), (0, 1)] {
            g.remove_edge(u, v);
        }
        let t = tc_decompose(&g).unwrap();
        assert_eq!(t.three_connected().count(), 2);
        assert_eq!(t.blacks, vec![Black { pair: (0, 1), has_edge: false }]);
        assert!(t.is_tree());
    }

    #[test]
    fn split_order_invariance() {
        let g = SimpleGraph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (2, 4), (4, 5), (5, 3), (3, 6), (6, 7), (7, 0), (0, 6)],
        );
        let base = tc_decompose(&g).unwrap();
        assert!(base.is_tree());
        for seed in 0..20 {
            assert_eq!(tc_decompose_seeded(&g, seed).unwrap(), base);
        }
    }
}
