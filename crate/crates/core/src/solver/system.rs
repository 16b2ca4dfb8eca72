use crate::algebra::{bracket, Slot};
use crate::error::{Error, Result};
use crate::series::{Family, IndexSeries, Truncation};
use crate::species::networks::{pleth_sums, s_network_series};

/// Solved network series of a class `B_F`, indexed by internal vertices.
#[derive(Clone, Debug)]
pub struct NetworkSystem {
    /// `W⁺` of all networks `R` of the class (including the single edge).
    pub rho_plus: IndexSeries,
    pub rho_minus: IndexSeries,
    /// s-networks.
    pub sigma_plus: IndexSeries,
    pub sigma_minus: IndexSeries,
    /// h-networks (3-connected core containing the poles).
    pub eta_plus: IndexSeries,
    pub eta_minus: IndexSeries,
    pub trunc: Truncation,
}

fn a1() -> IndexSeries {
    IndexSeries::var(Family::A, 1)
}

pub(crate) fn core_slots(rho_plus: &IndexSeries, rho_minus: &IndexSeries) -> [Slot<IndexSeries>; 3] {
    [Slot::Pleth(a1()), Slot::Pleth(rho_plus.clone()), Slot::Pleth(rho_minus.clone())]
}

struct Step {
    sigma: (IndexSeries, IndexSeries),
    eta: (IndexSeries, IndexSeries),
    rho: (IndexSeries, IndexSeries),
}

/// One evaluation of the right-hand sides at truncation `t`, from `ρ±`
/// known one grade lower.
fn step(wf01_plus: &IndexSeries, wf01_minus: &IndexSeries, rp: &IndexSeries, rm: &IndexSeries, t: Truncation) -> Result<Step> {
    let (sp, sm) = s_network_series(rp, rm)?;
    let slots = core_slots(rp, rm);
    let ep = bracket(wf01_plus, &slots, t)?;
    let em = bracket(wf01_minus, &slots, t)?;
    let tp = ep.add(&sp).truncate(t);
    let tm = em.add(&sm).truncate(t);
    let (lp, lm) = pleth_sums(&tp, &tm, t.n_max);
    let one = IndexSeries::one();
    let new_p = one.add(&IndexSeries::var(Family::B, 1)).mul(&lp.exp()?).sub(&one);
    let new_m = one.add(&IndexSeries::var(Family::C, 1)).mul(&lm.exp()?).sub(&one);
    Ok(Step { sigma: (sp.truncate(t), sm.truncate(t)), eta: (ep, em), rho: (new_p, new_m) })
}

/// Solves `ρ⁺ = (1+b₁) exp(Σ_i (η⁺+σ⁺)_i / i) - 1` and its pole-reversing
/// twin, with `η± = W±_{F₀,₁}[a₁; ρ⁺; ρ⁻]` and `σ±` the s-networks of `ρ±`.
///
/// Starts from the bare edge `(b₁, c₁)` and raises the vertex truncation one
/// grade per round. Each round must gain a grade; if it does not, the inputs
/// violate the grading (a core term of vertex degree below 2).
pub fn solve_network_system(wf01_plus: &IndexSeries, wf01_minus: &IndexSeries, trunc: Truncation) -> Result<NetworkSystem> {
    for (name, w) in [("W+", wf01_plus), ("W-", wf01_minus)] {
        if let Some((m, _)) = w.terms().iter().find(|(m, _)| m.vertex_degree() < 2) {
            return Err(Error::NonConvergence(format!("{name} of the core networks has a term {m} of vertex degree < 2")));
        }
    }
    let mut rp = IndexSeries::var(Family::B, 1).truncate(Truncation::new(0, trunc.m_max));
    let mut rm = IndexSeries::var(Family::C, 1).truncate(Truncation::new(0, trunc.m_max));
    for n in 1..=trunc.n_max {
        let t = Truncation::new(n, trunc.m_max);
        let s = step(wf01_plus, wf01_minus, &rp, &rm, t)?;
        let (np, nm) = s.rho;
        if np.trunc().n_max < n || nm.trunc().n_max < n {
            return Err(Error::NonConvergence(format!("round {n} did not determine grade {n}")));
        }
        rp = np.truncate(t);
        rm = nm.truncate(t);
    }
    let s = step(wf01_plus, wf01_minus, &rp, &rm, trunc)?;
    if s.rho.0.truncate(trunc) != rp || s.rho.1.truncate(trunc) != rm {
        return Err(Error::NonConvergence("network series not stationary after the final round".into()));
    }
    Ok(NetworkSystem {
        rho_plus: rp,
        rho_minus: rm,
        sigma_plus: s.sigma.0,
        sigma_minus: s.sigma.1,
        eta_plus: s.eta.0,
        eta_minus: s.eta.1,
        trunc,
    })
}
