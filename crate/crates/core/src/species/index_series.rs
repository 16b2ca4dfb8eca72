use rustc_hash::FxHashMap;

use super::automorphism::{automorphisms, automorphisms_pinned, cycle_type, edge_cycles, Perm};
use super::graph::{Network, SimpleGraph};
use crate::rational::Rational;
use crate::series::{CycleMonomial, Family, IndexSeries, Truncation};

/// The cycle monomial `w(G, σ)`.
pub fn weight(g: &SimpleGraph, p: &[u8]) -> CycleMonomial {
    let vertex = cycle_type(p).into_iter().map(|l| (Family::A, l, 1));
    let edge = edge_cycles(g, p).into_iter().map(|(l, mobius)| (if mobius { Family::C } else { Family::B }, l, 1));
    CycleMonomial::from_triples(vertex.chain(edge))
}

/// `(1/|group|) Σ_{σ ∈ perms} w(G, σ)`, optionally divided by a monomial.
fn averaged(g: &SimpleGraph, perms: &[Perm], order: usize, divide: Option<(u32, u32)>) -> IndexSeries {
    let mut counts: FxHashMap<CycleMonomial, i64> = FxHashMap::default();
    for p in perms {
        let mut w = weight(g, p);
        if let Some((k, e)) = divide {
            w = w.divide_var(Family::A, k, e).expect("pole cycle present in every weight");
        }
        *counts.entry(w).or_default() += 1;
    }
    let inv = Rational::new(1, order as i64);
    IndexSeries::from_terms(counts.into_iter().map(|(m, c)| (m, &Rational::from_int(c) * &inv)), Truncation::EXACT)
}

/// Edge index series of a single graph, `(1/|Aut G|) Σ_σ w(G, σ)`.
pub fn graph_index_series(g: &SimpleGraph) -> IndexSeries {
    let auts = automorphisms(g);
    averaged(g, &auts, auts.len(), None)
}

/// Same, when the automorphism group is already known.
pub fn graph_index_series_with(g: &SimpleGraph, auts: &[Perm]) -> IndexSeries {
    averaged(g, auts, auts.len(), None)
}

/// `(W⁺, W⁻)` of a single network: pole-preserving automorphisms weighted by
/// `w / a₁²`, pole-reversing ones by `w / a₂`, both normalized by the order
/// of the pole-preserving group.
pub fn network_index_series(n: &Network) -> (IndexSeries, IndexSeries) {
    let g = n.graph();
    let (p0, p1) = n.poles();
    let plus = automorphisms_pinned(g, &[(p0, p0), (p1, p1)]);
    let minus = automorphisms_pinned(g, &[(p0, p1), (p1, p0)]);
    let order = plus.len();
    let wp = averaged(g, &plus, order, Some((1, 2)));
    let wm = if minus.is_empty() { IndexSeries::zero(Truncation::EXACT) } else { averaged(g, &minus, order, Some((2, 1))) };
    (wp, wm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(t: &[(Family, u32, u32)]) -> CycleMonomial {
        CycleMonomial::from_triples(t.iter().copied())
    }

    #[test]
    fn k2_series() {
        let w = graph_index_series(&SimpleGraph::complete(2));
        assert_eq!(w.len(), 2);
        assert_eq!(w.coeff(&mono(&[(Family::A, 1, 2), (Family::B, 1, 1)])), Rational::new(1, 2));
        assert_eq!(w.coeff(&mono(&[(Family::A, 2, 1), (Family::C, 1, 1)])), Rational::new(1, 2));
    }

    #[test]
    fn path_network() {
        let n = Network::new(SimpleGraph::path(3), 0, 2).unwrap();
        let (p, m) = network_index_series(&n);
        assert_eq!(p, IndexSeries::monomial(mono(&[(Family::A, 1, 1), (Family::B, 1, 2)]), Rational::one()));
        assert_eq!(m, IndexSeries::monomial(mono(&[(Family::A, 1, 1), (Family::B, 2, 1)]), Rational::one()));
    }

    #[test]
    fn single_edge_network() {
        let (p, m) = network_index_series(&Network::edge());
        assert_eq!(p, IndexSeries::var(Family::B, 1));
        assert_eq!(m, IndexSeries::var(Family::C, 1));
    }

    #[test]
    fn asymmetric_network_has_no_minus_part() {
        // 0-u-v-1 plus 0v; poles 0 and 3
        let g = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]);
        let n = Network::new(g, 0, 3).unwrap();
        assert!(network_index_series(&n).1.is_zero());
    }
}
