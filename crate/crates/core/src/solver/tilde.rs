//! The network system and assembly carried out directly on ordinary
//! generating functions of isomorphism classes, with bivariate slots.

use super::input::SpeciesInput;
use crate::algebra::bracket_bi;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{BiSeries, IndexSeries, Truncation, UNBOUNDED};
use crate::species::cycles::cycle_species_series;
use crate::species::networks::network_derivatives;

#[derive(Clone, Debug)]
pub struct TildeSolution {
    /// Unlabelled 2-connected graphs of the class.
    pub b: BiSeries,
    /// Networks `R̃` and their pole-swap-symmetric count `R̃_τ`.
    pub r: BiSeries,
    pub r_tau: BiSeries,
    pub s: BiSeries,
    pub s_tau: BiSeries,
    pub h: BiSeries,
    pub h_tau: BiSeries,
}

struct Round {
    s: BiSeries,
    s_tau: BiSeries,
    h: BiSeries,
    h_tau: BiSeries,
    r: BiSeries,
    r_tau: BiSeries,
}

fn one_plus(s: &BiSeries) -> BiSeries {
    BiSeries::one().add(s)
}

/// `S̃ = xR̃²/(1+xR̃)`, `S̃_τ = (x + x²R̃_τ) R̃(x²,y²) / (1 + x²R̃(x²,y²))`.
fn s_networks(r: &BiSeries, r_tau: &BiSeries) -> Result<(BiSeries, BiSeries)> {
    let xr = r.shift(1, 0);
    let s = xr.mul(r).mul(&one_plus(&xr).inverse()?);
    let r2 = r.pleth(2);
    let lead = BiSeries::x().add(&r_tau.shift(2, 0));
    let s_tau = lead.mul(&r2).mul(&one_plus(&r2.shift(2, 0)).inverse()?);
    Ok((s, s_tau))
}

fn round(p01: &IndexSeries, m01: &IndexSeries, r: &BiSeries, r_tau: &BiSeries, t: Truncation) -> Result<Round> {
    let (s, s_tau) = s_networks(r, r_tau)?;
    let x = BiSeries::x();
    let h = bracket_bi(p01, &x, r, r_tau, t)?;
    let h_tau = bracket_bi(m01, &x, r, r_tau, t)?;
    let tp = h.add(&s).truncate(t);
    let tm = h_tau.add(&s_tau).truncate(t);
    let mut lp = BiSeries::zero(t);
    let mut lm = BiSeries::zero(t);
    for i in 1..=t.n_max.max(1) {
        let inv = Rational::new(1, i as i64);
        let pi = tp.pleth(i).truncate(t).scale(&inv);
        lp = lp.add(&pi);
        lm = lm.add(&if i % 2 == 0 { pi } else { tm.pleth(i).truncate(t).scale(&inv) });
    }
    let one_y = one_plus(&BiSeries::y());
    let r_new = one_y.mul(&lp.exp()?).sub(&BiSeries::one());
    let r_tau_new = one_y.mul(&lm.exp()?).sub(&BiSeries::one());
    Ok(Round { s: s.truncate(t), s_tau: s_tau.truncate(t), h, h_tau, r: r_new, r_tau: r_tau_new })
}

/// Solves for `R̃`, `R̃_τ` on up to `n_max - 2` internal vertices and
/// assembles `B̃` through `n_max` vertices.
pub fn solve_tilde(input: &SpeciesInput, n_max: u32) -> Result<TildeSolution> {
    if n_max < 2 {
        return Err(Error::OutOfRange("the pipeline needs at least two vertices".into()));
    }
    let wf = input.core_series(n_max)?;
    let (p01, m01) = network_derivatives(&wf)?;
    let nt = Truncation::vertices(n_max - 2);
    let mut r = BiSeries::y().truncate(Truncation::new(0, UNBOUNDED));
    let mut r_tau = r.clone();
    for n in 1..=nt.n_max {
        let t = Truncation::vertices(n);
        let next = round(&p01, &m01, &r, &r_tau, t)?;
        if next.r.trunc().n_max < n || next.r_tau.trunc().n_max < n {
            return Err(Error::NonConvergence(format!("round {n} did not determine grade {n}")));
        }
        r = next.r.truncate(t);
        r_tau = next.r_tau.truncate(t);
    }
    let fin = round(&p01, &m01, &r, &r_tau, nt)?;
    if fin.r.truncate(nt) != r || fin.r_tau.truncate(nt) != r_tau {
        return Err(Error::NonConvergence("network series not stationary after the final round".into()));
    }
    let Round { s, s_tau, h, h_tau, .. } = fin;

    let t = Truncation::vertices(n_max);
    let x = BiSeries::x();
    let cores = bracket_bi(&wf, &x, &r, &r_tau, t)?;
    let wc = cycle_species_series(Truncation::new(n_max, UNBOUNDED));
    let polygons = bracket_bi(&wc, &x, &r.sub(&s), &r_tau.sub(&s_tau), t)?;
    let half = Rational::new(1, 2);
    let one = BiSeries::one();
    let first = r
        .sub(&h.add(&s).mul(&r.add(&one)))
        .sub(&s.pleth(2))
        .add(&s.mul(&s).scale(&half));
    let second = r_tau.sub(&h_tau.add(&s_tau).mul(&r_tau.add(&one))).add(&s_tau.mul(&s_tau).scale(&half));
    let blocks = first.add(&second).shift(2, 0).scale(&half);
    let b = cores.add(&polygons).add(&blocks);
    if b.trunc().n_max < n_max {
        return Err(Error::TruncationMismatch(format!("assembly determined only {}, requested {t}", b.trunc())));
    }
    let b = b.truncate(t);
    b.check_counts()?;
    r.check_counts()?;
    r_tau.check_counts()?;
    Ok(TildeSolution { b, r, r_tau, s, s_tau, h, h_tau })
}
