//! Recovering `W_F` from `W_B` by running the assembly backwards.

use super::assemble::edge_blocks;
use super::system::{core_slots, NetworkSystem};
use crate::algebra::{bracket, bracket_unchecked, Slot};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{Family, IndexSeries, Truncation, UNBOUNDED};
use crate::species::cycles::cycle_species_series;
use crate::species::networks::{b01_from_b, s_network_series};

pub fn mobius(n: u32) -> i64 {
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// `Σ_{k ∈ ks} μ(k)/k · f_k`, inverting `L = Σ_i T_i / i` over `ks`.
fn mobius_invert(l: &IndexSeries, ks: impl Iterator<Item = u32>) -> IndexSeries {
    let t = l.trunc();
    let mut acc = IndexSeries::zero(t);
    for k in ks {
        let mu = mobius(k);
        if mu != 0 {
            acc = acc.add(&l.pleth(k).truncate(t).scale(&Rational::new(mu, k as i64)));
        }
    }
    acc
}

/// The network system of the class `B`, read off `W_B` instead of solved.
pub fn networks_from_wb(wb: &IndexSeries) -> Result<NetworkSystem> {
    let forms = b01_from_b(wb)?;
    let nt = forms.plus.trunc().meet(forms.minus.trunc());
    if nt.n_max == UNBOUNDED {
        return Err(Error::NonTerminating("extraction needs a vertex bound".into()));
    }
    let top = nt.n_max.max(1);
    let lp = forms.plus01.truncate(nt).log()?;
    let lm = forms.minus01.truncate(nt).log()?;
    // T⁺ = η⁺ + σ⁺ from log W⁺ = Σ_i T⁺_i / i
    let tp = mobius_invert(&lp, 1..=top);
    let mut q = lm;
    for i in (2..=top).step_by(2) {
        q = q.sub(&tp.pleth(i).truncate(nt).scale(&Rational::new(1, i as i64)));
    }
    let tm = mobius_invert(&q, (1..=top).step_by(2));
    let rho_plus = forms.plus.truncate(nt);
    let rho_minus = forms.minus.truncate(nt);
    let (sp, sm) = s_network_series(&rho_plus, &rho_minus)?;
    let (sp, sm) = (sp.truncate(nt), sm.truncate(nt));
    Ok(NetworkSystem {
        eta_plus: tp.sub(&sp),
        eta_minus: tm.sub(&sm),
        sigma_plus: sp,
        sigma_minus: sm,
        rho_plus,
        rho_minus,
        trunc: nt,
    })
}

/// `W_F` of the 3-connected components of a class `B_F`, from `W_B`.
///
/// Subtracting the polygon and edge-block terms of the assembly leaves
/// `W_F[a₁; ρ⁺; ρ⁻]`; since `ρ± = b₁, c₁ + (terms with vertices)` the
/// substitution is triangular in vertex degree and is undone grade by grade.
pub fn extract_three_connected(wb: &IndexSeries) -> Result<IndexSeries> {
    let sys = networks_from_wb(wb)?;
    let t = Truncation::new(sys.trunc.n_max + 2, UNBOUNDED);
    let wc = cycle_species_series(t);
    let slots = [
        Slot::Pleth(IndexSeries::var(Family::A, 1)),
        Slot::Pleth(sys.rho_plus.sub(&sys.sigma_plus)),
        Slot::Pleth(sys.rho_minus.sub(&sys.sigma_minus)),
    ];
    let polygons = bracket(&wc, &slots, t)?;
    let (bp, bm) = edge_blocks(&sys);
    let x = wb.truncate(t).sub(&polygons).sub(&bp).sub(&bm).truncate(t);
    let slots = core_slots(&sys.rho_plus, &sys.rho_minus);
    let mut wf = IndexSeries::zero(Truncation::EXACT);
    for g in 0..=t.n_max {
        let tg = Truncation::new(g, UNBOUNDED);
        let image = bracket_unchecked(&wf, &slots, tg)?;
        let residue: Vec<_> = x
            .grade(g)
            .iter()
            .map(|(m, c)| (m.clone(), c - &image.coeff(m)))
            .chain(image.grade(g).iter().filter(|(m, _)| x.coeff(m).is_zero()).map(|(m, c)| (m.clone(), -c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if residue.is_empty() {
            continue;
        }
        if g < 2 {
            return Err(Error::InvalidInput(format!(
                "W_B is not the series of a class built from 3-connected cores: residue at vertex degree {g}"
            )));
        }
        wf = wf.add(&IndexSeries::from_terms(residue, Truncation::EXACT));
    }
    Ok(wf.truncate(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::input::SpeciesInput;
    use crate::solver::pipeline::run_index_pipeline;
    use crate::species::graph::SimpleGraph;
    use crate::species::index_series::graph_index_series;

    #[test]
    fn mobius_values() {
        assert_eq!((1..=10).map(mobius).collect::<Vec<_>>(), vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn series_parallel_has_no_cores() {
        let p = run_index_pipeline(&SpeciesInput::Empty, 7).unwrap();
        assert!(extract_three_connected(&p.wb).unwrap().is_zero());
    }

    #[test]
    fn k4_round_trip() {
        let input = SpeciesInput::graph_list(vec![SimpleGraph::complete(4)]).unwrap();
        let p = run_index_pipeline(&input, 7).unwrap();
        let wf = extract_three_connected(&p.wb).unwrap();
        assert_eq!(wf, graph_index_series(&SimpleGraph::complete(4)).truncate(Truncation::vertices(7)));
    }
}
