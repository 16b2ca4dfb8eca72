//! Labelled enumeration on exponential generating functions.
//!
//! With `g(x, u) = F₀,₁(x, u) + xu²/(1 + xu)` the networks satisfy
//! `R = (1 + y) exp(g(x, R)) - 1`, and the graphs follow from
//! `B = (x²/2) ∫ (1 + R)/(1 + y) dy`.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{binom2, BiSeries, Truncation, UNBOUNDED};

#[derive(Clone, Debug)]
pub struct LabelledSolution {
    /// Networks, `x` marking internal vertices.
    pub r: BiSeries,
    /// Graphs.
    pub b: BiSeries,
}

fn check_grading(f01: &BiSeries) -> Result<()> {
    if let Some((n, m, _)) = f01.iter().find(|(n, _, c)| *n < 2 && !c.is_zero()) {
        return Err(Error::NonConvergence(format!("F01 has a term x^{n} y^{m} of x-degree below 2")));
    }
    Ok(())
}

/// `exp(g(x, R))` at truncation `t`.
fn exp_g(f01: &BiSeries, r: &BiSeries, t: Truncation) -> Result<BiSeries> {
    let xr = r.shift(1, 0);
    let s = xr.mul(r).mul(&BiSeries::one().add(&xr).inverse()?);
    let g = f01.truncate(t).compose_y(r)?.add(&s).truncate(t);
    g.exp()
}

/// Fixed-point solution on up to `n_max - 2` internal vertices and the
/// graph series through `n_max` vertices.
pub fn solve_labelled(f01: &BiSeries, n_max: u32) -> Result<LabelledSolution> {
    if n_max < 2 {
        return Err(Error::OutOfRange("the pipeline needs at least two vertices".into()));
    }
    check_grading(f01)?;
    let nt = Truncation::vertices(n_max - 2);
    let one_y = BiSeries::one().add(&BiSeries::y());
    let mut r = BiSeries::y().truncate(Truncation::new(0, UNBOUNDED));
    for n in 1..=nt.n_max {
        let t = Truncation::vertices(n);
        let next = one_y.mul(&exp_g(f01, &r, t)?).sub(&BiSeries::one());
        if next.trunc().n_max < n {
            return Err(Error::NonConvergence(format!("round {n} did not determine grade {n}")));
        }
        r = next.truncate(t);
    }
    let e = exp_g(f01, &r, nt)?;
    if one_y.mul(&e).sub(&BiSeries::one()).truncate(nt) != r {
        return Err(Error::NonConvergence("network series not stationary after the final round".into()));
    }
    // (1 + R)/(1 + y) is the exponential itself
    let b = e.integrate_y().shift(2, 0).scale(&Rational::new(1, 2)).truncate(Truncation::vertices(n_max));
    Ok(LabelledSolution { r, b })
}

/// `R` by Lagrange inversion: `R(x, ·)` is the compositional inverse of
/// `ζ(x, u) = (1 + u) exp(-g(x, u)) - 1`, so `[y^m] R = (1/m) [u^{m-1}] φ^m`
/// with `φ = u/ζ`.
pub fn solve_labelled_lagrange(f01: &BiSeries, n_max: u32) -> Result<BiSeries> {
    if n_max < 2 {
        return Err(Error::OutOfRange("the pipeline needs at least two vertices".into()));
    }
    check_grading(f01)?;
    let n = n_max - 2;
    // networks on n internal vertices have at most C(n + 2, 2) edges
    let big_m = binom2(n_max);
    let t = Truncation::new(n, big_m);
    let u = BiSeries::y().truncate(t);
    let xu = u.shift(1, 0);
    let g = f01.truncate(t).add(&xu.mul(&u).mul(&BiSeries::one().add(&xu).inverse()?)).truncate(t);
    let zeta = BiSeries::one().add(&u).mul(&g.neg().exp()?).sub(&BiSeries::one());
    if let Some((k, _, _)) = zeta.iter().find(|(_, m, c)| *m == 0 && !c.is_zero()) {
        return Err(Error::InvalidInput(format!("F01 has an edgeless term at x^{k}")));
    }
    let q = BiSeries::from_triples(zeta.iter().map(|(a, b, c)| (a, b - 1, c.clone())), Truncation::new(n, big_m - 1));
    let phi = q.inverse()?;
    let mut terms = Vec::new();
    let mut power = BiSeries::one();
    for m in 1..=big_m {
        power = power.mul_to(&phi, Truncation::new(n, big_m - 1));
        let inv = Rational::new(1, m as i64);
        for k in 0..=n {
            let c = power.coeff(k, m - 1);
            if !c.is_zero() {
                terms.push((k, m, &c * &inv));
            }
        }
    }
    Ok(BiSeries::from_triples(terms, Truncation::vertices(n)))
}
