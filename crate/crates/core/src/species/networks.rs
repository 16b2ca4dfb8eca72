//! Network constructions on edge index series: the `B₀,₁` derivative forms,
//! edge addition, series (s-network) and parallel compositions.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{binom2, CycleMonomial, Family, IndexSeries, Truncation, UNBOUNDED};

fn var(f: Family, k: u32) -> IndexSeries {
    IndexSeries::var(f, k)
}

fn one_plus(s: &IndexSeries) -> IndexSeries {
    IndexSeries::one().add(s)
}

/// The four network series derived from a graph series `W_B`.
#[derive(Clone, Debug)]
pub struct NetworkForms {
    /// `W⁺` of `B₀,₁` (pole edge removed).
    pub plus01: IndexSeries,
    pub minus01: IndexSeries,
    /// `W⁺` of the network class `N_B = (1 + y) B₀,₁ - 1`.
    pub plus: IndexSeries,
    pub minus: IndexSeries,
}

/// `W⁺ = (2/a₁²) ∂W/∂b₁` and `W⁻ = (2/a₂) ∂W/∂c₁`.
///
/// A graph series known through every edge count at vertex degree `≤ N`
/// (that is `m_max ≥ C(N, 2)`) yields network series that are complete in
/// the edge direction.
pub fn network_derivatives(w: &IndexSeries) -> Result<(IndexSeries, IndexSeries)> {
    let two = Rational::from_int(2);
    let t = w.trunc();
    let complete_edges = t.n_max != UNBOUNDED && t.m_max >= binom2(t.n_max);
    let plus = w
        .derivative(Family::B, 1)
        .scale(&two)
        .divide_var(Family::A, 1, 2)
        .ok_or_else(|| Error::NotGraphSeries("a term of ∂W/∂b1 lacks the factor a1^2".into()))?;
    let minus = w
        .derivative(Family::C, 1)
        .scale(&two)
        .divide_var(Family::A, 2, 1)
        .ok_or_else(|| Error::NotGraphSeries("a term of ∂W/∂c1 lacks the factor a2".into()))?;
    if complete_edges {
        let nt = Truncation::vertices(t.n_max.saturating_sub(2));
        return Ok((plus.with_trunc(nt), minus.with_trunc(nt)));
    }
    Ok((plus, minus))
}

/// All four network forms of a class of 2-connected graphs containing `K2`.
pub fn b01_from_b(w: &IndexSeries) -> Result<NetworkForms> {
    let (plus01, minus01) = network_derivatives(w)?;
    let one = IndexSeries::one();
    let plus = one_plus(&var(Family::B, 1)).mul(&plus01).sub(&one);
    let minus = one_plus(&var(Family::C, 1)).mul(&minus01).sub(&one);
    Ok(NetworkForms { plus01, minus01, plus, minus })
}

/// Adds the pole edge to every network: `(b₁ W⁺, c₁ W⁻)`.
pub fn y_multiply(plus: &IndexSeries, minus: &IndexSeries) -> (IndexSeries, IndexSeries) {
    (plus.shift(&CycleMonomial::b(1)), minus.shift(&CycleMonomial::c(1)))
}

/// s-networks of a network class `R` from `(ρ⁺, ρ⁻)`:
/// `σ⁺ = a₁ρ⁺² / (1 + a₁ρ⁺)`, `σ⁻ = (a₁ + a₂ρ⁻) ρ⁺₂ / (1 + a₂ρ⁺₂)`.
pub fn s_network_series(rho_plus: &IndexSeries, rho_minus: &IndexSeries) -> Result<(IndexSeries, IndexSeries)> {
    let a1 = CycleMonomial::a(1);
    let a2 = CycleMonomial::a(2);
    let a1r = rho_plus.shift(&a1);
    let sigma_plus = a1r.mul(rho_plus).mul(&one_plus(&a1r).inverse()?);
    let r2 = rho_plus.pleth(2);
    let a2r2 = r2.shift(&a2);
    let lead = var(Family::A, 1).add(&rho_minus.shift(&a2));
    let sigma_minus = lead.mul(&r2).mul(&one_plus(&a2r2).inverse()?);
    Ok((sigma_plus, sigma_minus))
}

fn vertex_positive(s: &IndexSeries) -> bool {
    s.terms().iter().all(|(m, _)| m.vertex_degree() >= 1)
}

/// Parallel compositions `E(N)` of a network class given by `(W⁺, W⁻)`:
/// `exp(Σ_m W⁺_m/m)` and `exp(Σ_{m even} W⁺_m/m + Σ_{m odd} W⁻_m/m)`.
pub fn parallel_series(plus: &IndexSeries, minus: &IndexSeries) -> Result<(IndexSeries, IndexSeries)> {
    if !vertex_positive(plus) || !vertex_positive(minus) {
        return Err(Error::InvalidInput("parallel composition inputs need vertex degree ≥ 1".into()));
    }
    let t = plus.trunc().meet(minus.trunc());
    if t.n_max == UNBOUNDED {
        return Err(Error::NonTerminating("parallel composition needs a vertex bound".into()));
    }
    let (sp, sm) = pleth_sums(plus, minus, t.n_max);
    Ok((sp.exp()?, sm.exp()?))
}

/// `(Σ_{m ≤ top} W⁺_m/m, Σ_{m even} W⁺_m/m + Σ_{m odd} W⁻_m/m)`.
pub(crate) fn pleth_sums(plus: &IndexSeries, minus: &IndexSeries, top: u32) -> (IndexSeries, IndexSeries) {
    let t = plus.trunc().meet(minus.trunc());
    let mut sp = IndexSeries::zero(t);
    let mut sm = IndexSeries::zero(t);
    for m in 1..=top.max(1) {
        let inv = Rational::new(1, m as i64);
        let pm = plus.pleth(m).truncate(t).scale(&inv);
        sp = sp.add(&pm);
        if m % 2 == 0 {
            sm = sm.add(&pm);
        } else {
            sm = sm.add(&minus.pleth(m).truncate(t).scale(&inv));
        }
    }
    (sp, sm)
}

/// Parallel compositions of exactly two networks:
/// `½((W⁺)² + W⁺₂)` and `½((W⁻)² + W⁺₂)`.
pub fn e2_series(plus: &IndexSeries, minus: &IndexSeries) -> (IndexSeries, IndexSeries) {
    let half = Rational::new(1, 2);
    let p2 = plus.pleth(2);
    (plus.mul(plus).add(&p2).scale(&half), minus.mul(minus).add(&p2).scale(&half))
}
