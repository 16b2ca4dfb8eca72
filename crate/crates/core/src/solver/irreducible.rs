//! Homeomorphically irreducible cores through the series `β`, `γ` that
//! undo the series-parallel network substitution.

use crate::algebra::bracket_bi;
use crate::error::Result;
use crate::rational::Rational;
use super::input::SpeciesInput;
use super::pipeline::run_index_pipeline;
use crate::series::{BiSeries, IndexSeries, Truncation};

fn factor(n: u32, m: u32, sign: i64, t: Truncation) -> BiSeries {
    BiSeries::one().add(&BiSeries::monomial(n, m, Rational::from_int(sign))).truncate(t)
}

/// `β = -1 + (1+y) Π_j (1 - x^{2j-1} y^{2j}) / (1 - x^{2j} y^{2j+1})` and
/// `γ = -1 + (1+y) Π_j (1 - x^{4j-3} y^{4j-2})(1 + x^{4j-1} y^{4j}) /
/// ((1 + x^{4j-2} y^{4j-1})(1 - x^{4j} y^{4j+1}))`, expanded inside `t`.
pub fn beta_gamma(t: Truncation) -> Result<(BiSeries, BiSeries)> {
    let one_y = factor(0, 1, 1, t);
    let mut beta = one_y.clone();
    let mut gamma = one_y;
    let mut j = 1;
    while 2 * j - 1 <= t.n_max {
        beta = beta.mul_to(&factor(2 * j - 1, 2 * j, -1, t), t);
        if 2 * j <= t.n_max {
            beta = beta.mul_to(&factor(2 * j, 2 * j + 1, -1, t).inverse()?, t);
        }
        j += 1;
    }
    let mut j = 1;
    while 4 * j - 3 <= t.n_max {
        gamma = gamma.mul_to(&factor(4 * j - 3, 4 * j - 2, -1, t), t);
        for (n, m, sign, invert) in [(4 * j - 1, 4 * j, 1, false), (4 * j - 2, 4 * j - 1, 1, true), (4 * j, 4 * j + 1, -1, true)] {
            if n <= t.n_max {
                let f = factor(n, m, sign, t);
                gamma = gamma.mul_to(&if invert { f.inverse()? } else { f }, t);
            }
        }
        j += 1;
    }
    let minus_one = BiSeries::one().neg();
    Ok((beta.add(&minus_one).truncate(t), gamma.add(&minus_one).truncate(t)))
}

/// `Ĩ_B = (W_B - W_{B,sp})[x; β; γ]`: unlabelled homeomorphically
/// irreducible graphs of a class closed under series-parallel edge
/// substitution, minus the series-parallel ones.
pub fn irreducible_series(wb: &IndexSeries, wb_sp: &IndexSeries, t: Truncation) -> Result<BiSeries> {
    let (beta, gamma) = beta_gamma(t)?;
    let diff = wb.sub(wb_sp);
    let out = bracket_bi(&diff, &BiSeries::x(), &beta, &gamma, t)?;
    out.check_counts()?;
    Ok(out)
}

fn xy_poly(terms: &[(u32, u32, i64)], t: Truncation) -> BiSeries {
    BiSeries::from_triples(terms.iter().map(|&(n, m, c)| (n, m, Rational::from_int(c))), t)
}

/// Checks the defining identities of `β`, `γ` against the series-parallel
/// networks inside `t`, and the closed form of the series-parallel graphs
/// inside `t_closed`. Returns one named verdict per identity.
pub fn identity_report(t: Truncation, t_closed: Truncation) -> Result<Vec<(&'static str, bool)>> {
    let top = t.n_max.max(t_closed.n_max);
    let sp = run_index_pipeline(&SpeciesInput::Empty, top + 2)?;
    let sys = &sp.system;
    let (beta, gamma) = beta_gamma(t)?;
    let x = BiSeries::x();
    let y = BiSeries::y().truncate(t);
    let at = |w: &IndexSeries| bracket_bi(w, &x, &beta, &gamma, t);
    let one = BiSeries::one();
    let sigma_plus = xy_poly(&[(1, 2, 1)], t).mul_to(&one.add(&xy_poly(&[(1, 1, 1)], t)).inverse()?, t);
    let sigma_minus = xy_poly(&[(1, 2, 1), (2, 3, 1)], t).mul_to(&one.add(&xy_poly(&[(2, 2, 1)], t)).inverse()?, t);
    let mut out = vec![
        ("rho+[x;beta;gamma] = y", at(&sys.rho_plus)? == y),
        ("rho-[x;beta;gamma] = y", at(&sys.rho_minus)? == y),
        ("sigma+[x;beta;gamma] = xy^2/(1+xy)", at(&sys.sigma_plus)? == sigma_plus),
        ("sigma-[x;beta;gamma] = (x+x^2y)y^2/(1+x^2y^2)", at(&sys.sigma_minus)? == sigma_minus),
    ];
    let (b2, g2) = beta_gamma(t_closed)?;
    let lhs = bracket_bi(&sp.wb, &x, &b2, &g2, t_closed)?;
    // -x²y² + xy(x + xy - x²y)/(1 - x⁴y⁴)
    let den = xy_poly(&[(0, 0, 1), (4, 4, -1)], t_closed).inverse()?;
    let rhs = xy_poly(&[(2, 2, -1)], t_closed).add(&xy_poly(&[(2, 1, 1), (2, 2, 1), (3, 2, -1)], t_closed).mul_to(&den, t_closed));
    out.push(("W_sp[x;beta;gamma] closed form", lhs == rhs.truncate(t_closed)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_matches_exponential_form() {
        // 1 + β = (1 + y) exp(-Σ_i (1/i) x^i y^{2i} / (1 + x^i y^i))
        let t = Truncation::new(6, 9);
        let (beta, _) = beta_gamma(t).unwrap();
        let mut sum = BiSeries::zero(t);
        for i in 1..=6 {
            let den = factor(i, i, 1, t).inverse().unwrap();
            let term = BiSeries::monomial(i, 2 * i, Rational::new(1, i as i64)).mul_to(&den, t);
            sum = sum.add(&term);
        }
        let rhs = factor(0, 1, 1, t).mul_to(&sum.neg().exp().unwrap(), t).sub(&BiSeries::one());
        assert_eq!(beta, rhs.truncate(t));
    }

    #[test]
    fn identities_low_order() {
        for (name, ok) in identity_report(Truncation::new(4, 5), Truncation::new(5, 6)).unwrap() {
            assert!(ok, "{name}");
        }
    }
}
