use super::system::{core_slots, NetworkSystem};
use crate::algebra::{bracket, Slot};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{CycleMonomial, Family, IndexSeries, Truncation, UNBOUNDED};
use crate::species::cycles::cycle_species_series;

/// The two correction blocks of the assembly,
/// `(a₁²/2)(ρ⁺ − (η⁺+σ⁺)(ρ⁺+1) − ½(σ⁺₂ − σ⁺²))` and
/// `(a₂/2)(ρ⁻ − (η⁻+σ⁻)(ρ⁻+1) − ½(σ⁺₂ − σ⁻²))`.
pub(crate) fn edge_blocks(sys: &NetworkSystem) -> (IndexSeries, IndexSeries) {
    let half = Rational::new(1, 2);
    let one = IndexSeries::one();
    let s2 = sys.sigma_plus.pleth(2);
    let block = |rho: &IndexSeries, eta: &IndexSeries, sigma: &IndexSeries| {
        let hs = eta.add(sigma);
        let e2 = s2.sub(&sigma.mul(sigma)).scale(&half);
        rho.sub(&hs.mul(&rho.add(&one))).sub(&e2)
    };
    let bp = block(&sys.rho_plus, &sys.eta_plus, &sys.sigma_plus).shift(&CycleMonomial::a(1).pow(2)).scale(&half);
    let bm = block(&sys.rho_minus, &sys.eta_minus, &sys.sigma_minus).shift(&CycleMonomial::a(2)).scale(&half);
    (bp, bm)
}

/// Dissymmetry assembly of `W_B` from the core series `W_F` and the solved
/// network system:
/// `W_F[a₁;ρ⁺;ρ⁻] + W_C[a₁;ρ⁺−σ⁺;ρ⁻−σ⁻] + (edge blocks)`.
///
/// The result is truncated at two vertices more than the network system.
pub fn assemble_wb(wf: &IndexSeries, sys: &NetworkSystem) -> Result<IndexSeries> {
    let nt = sys.trunc;
    if nt.n_max == UNBOUNDED {
        return Err(Error::NonTerminating("assembly needs a vertex bound".into()));
    }
    let t = Truncation::new(nt.n_max + 2, nt.m_max);
    let cores = bracket(wf, &core_slots(&sys.rho_plus, &sys.rho_minus), t)?;
    let wc = cycle_species_series(Truncation::new(t.n_max, UNBOUNDED));
    let slots = [
        Slot::Pleth(IndexSeries::var(Family::A, 1)),
        Slot::Pleth(sys.rho_plus.sub(&sys.sigma_plus)),
        Slot::Pleth(sys.rho_minus.sub(&sys.sigma_minus)),
    ];
    let polygons = bracket(&wc, &slots, t)?;
    let (bp, bm) = edge_blocks(sys);
    let w = cores.add(&polygons).add(&bp).add(&bm);
    if w.trunc().n_max < t.n_max || w.trunc().m_max < t.m_max {
        return Err(Error::TruncationMismatch(format!("assembly determined only {}, requested {t}", w.trunc())));
    }
    Ok(w.truncate(t))
}
