//! Canonical compositions `G↑N`: every edge of a core graph replaced by a
//! network of a symmetric class.

use crate::algebra::{bracket, bracket_bi, Slot};
use crate::error::{Error, Result};
use crate::series::{BiSeries, Family, IndexSeries, Truncation};
use crate::species::graph::SimpleGraph;
use crate::species::index_series::graph_index_series;

/// Two copies of `K5` sharing one edge (8 vertices, 19 edges).
pub fn m_graph() -> SimpleGraph {
    let mut g = SimpleGraph::empty(8);
    for side in [[0, 1, 2, 3, 4], [0, 1, 5, 6, 7]] {
        for (i, &u) in side.iter().enumerate() {
            for &v in &side[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// [`m_graph`] without the shared edge.
pub fn m_star_graph() -> SimpleGraph {
    let mut g = m_graph();
    g.remove_edge(0, 1);
    g
}

/// Edge index series of the toroidal crowns; not available.
pub fn crown_index_series() -> Result<IndexSeries> {
    Err(Error::Unsupported("crown index series".into()))
}

/// Cores of the toroidal composition: `K5`, `M`, `M*`, and the crowns if
/// requested (which fails).
pub fn toroidal_cores(with_crowns: bool) -> Result<Vec<SimpleGraph>> {
    if with_crowns {
        crown_index_series()?;
    }
    Ok(vec![SimpleGraph::complete(5), m_graph(), m_star_graph()])
}

fn cores_series(cores: &[SimpleGraph]) -> IndexSeries {
    cores.iter().fold(IndexSeries::zero(Truncation::EXACT), |acc, g| acc.add(&graph_index_series(g)))
}

/// `Σ_G W_G[x; Ñ; Ñ_τ]` over the core graphs.
pub fn compose_family(cores: &[SimpleGraph], n_plus: &BiSeries, n_minus: &BiSeries, t: Truncation) -> Result<BiSeries> {
    bracket_bi(&cores_series(cores), &BiSeries::x(), n_plus, n_minus, t)
}

/// `Σ_G W_G[a₁; ρ⁺; ρ⁻]` at the index level.
pub fn compose_index(cores: &[SimpleGraph], rho_plus: &IndexSeries, rho_minus: &IndexSeries, t: Truncation) -> Result<IndexSeries> {
    let slots = [Slot::Pleth(IndexSeries::var(Family::A, 1)), Slot::Pleth(rho_plus.clone()), Slot::Pleth(rho_minus.clone())];
    bracket(&cores_series(cores), &slots, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn trivial_slots_give_the_cores() {
        let y = BiSeries::y();
        let t = Truncation::new(8, 20);
        let k5 = compose_family(&[SimpleGraph::complete(5)], &y, &y, t).unwrap();
        assert_eq!(k5, BiSeries::monomial(5, 10, Rational::one()).truncate(t));
        let m = compose_family(&[m_graph()], &y, &y, t).unwrap();
        assert_eq!(m, BiSeries::monomial(8, 19, Rational::one()).truncate(t));
        assert_eq!(m_star_graph().edge_count(), 18);
    }

    #[test]
    fn crowns_are_rejected() {
        let err = toroidal_cores(true).unwrap_err();
        assert_eq!(err.to_string(), "unsupported: crown index series");
        assert_eq!(toroidal_cores(false).unwrap().len(), 3);
    }
}
