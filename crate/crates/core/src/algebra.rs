//! Plethystic scaling, bracket substitution `ℓ[f; g; h]`, and the
//! specializations of edge index series to generating functions.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{BiSeries, CycleMonomial, Family, IndexSeries, Truncation, Valuation, UNBOUNDED};

/// Operations bracket substitution needs from a target ring.
pub trait SeriesRing: Clone + Send + Sync + Sized {
    fn one() -> Self;
    fn zero(t: Truncation) -> Self;
    fn trunc(&self) -> Truncation;
    fn valuation(&self) -> Valuation;
    fn constant_term(&self) -> Rational;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn mul_to(&self, other: &Self, target: Truncation) -> Self;
    fn pleth(&self, k: u32) -> Self;
    fn truncate(&self, t: Truncation) -> Self;
    fn retrunc(self, t: Truncation) -> Self;
}

impl SeriesRing for IndexSeries {
    fn one() -> Self {
        IndexSeries::one()
    }
    fn zero(t: Truncation) -> Self {
        IndexSeries::zero(t)
    }
    fn trunc(&self) -> Truncation {
        IndexSeries::trunc(self)
    }
    fn valuation(&self) -> Valuation {
        IndexSeries::valuation(self)
    }
    fn constant_term(&self) -> Rational {
        IndexSeries::constant_term(self)
    }
    fn is_zero(&self) -> bool {
        IndexSeries::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        IndexSeries::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        IndexSeries::scale(self, c)
    }
    fn mul_to(&self, other: &Self, target: Truncation) -> Self {
        IndexSeries::mul_to(self, other, target)
    }
    fn pleth(&self, k: u32) -> Self {
        IndexSeries::pleth(self, k)
    }
    fn truncate(&self, t: Truncation) -> Self {
        IndexSeries::truncate(self, t)
    }
    fn retrunc(self, t: Truncation) -> Self {
        self.with_trunc(t)
    }
}

impl SeriesRing for BiSeries {
    fn one() -> Self {
        BiSeries::one()
    }
    fn zero(t: Truncation) -> Self {
        BiSeries::zero(t)
    }
    fn trunc(&self) -> Truncation {
        BiSeries::trunc(self)
    }
    fn valuation(&self) -> Valuation {
        BiSeries::valuation(self)
    }
    fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }
    fn is_zero(&self) -> bool {
        BiSeries::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        BiSeries::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        BiSeries::scale(self, c)
    }
    fn mul_to(&self, other: &Self, target: Truncation) -> Self {
        BiSeries::mul_to(self, other, target)
    }
    fn pleth(&self, k: u32) -> Self {
        BiSeries::pleth(self, k)
    }
    fn truncate(&self, t: Truncation) -> Self {
        BiSeries::truncate(self, t)
    }
    fn retrunc(self, t: Truncation) -> Self {
        self.with_trunc(t)
    }
}

/// What a variable family is replaced by.
#[derive(Clone, Debug)]
pub enum Slot<S> {
    /// `v_k ← s_k` (the plethystic rule).
    Pleth(S),
    /// `v_1 ← s`, `v_k ← 0` for `k ≥ 2`.
    FirstOnly(S),
}

impl<S: SeriesRing> Slot<S> {
    fn base(&self) -> &S {
        match self {
            Slot::Pleth(s) | Slot::FirstOnly(s) => s,
        }
    }

    fn at(&self, k: u32) -> S {
        match self {
            Slot::Pleth(s) => s.pleth(k),
            Slot::FirstOnly(s) if k == 1 => s.clone(),
            Slot::FirstOnly(_) => S::zero(Truncation::EXACT),
        }
    }
}

/// `f_k`: multiply every variable index by `k`.
pub fn pleth_scale(f: &IndexSeries, k: u32) -> IndexSeries {
    f.pleth(k)
}

fn sat_sub(a: u32, b: u32) -> u32 {
    if a == UNBOUNDED {
        UNBOUNDED
    } else {
        a.saturating_sub(b)
    }
}

fn budget(target: Truncation, used: Valuation) -> Truncation {
    Truncation::new(sat_sub(target.n_max, used.v), sat_sub(target.m_max, used.e))
}

fn vadd(a: Valuation, b: Valuation) -> Valuation {
    Valuation { v: a.v.saturating_add(b.v), e: a.e.saturating_add(b.e) }
}

fn vscale(a: Valuation, e: u32) -> Valuation {
    Valuation { v: a.v.saturating_mul(e), e: a.e.saturating_mul(e) }
}

fn tmax(a: Truncation, b: Truncation) -> Truncation {
    Truncation::new(a.n_max.max(b.n_max), a.m_max.max(b.m_max))
}

/// Key of a substituted variable: family and (scaled) index.
type VarKey = (Family, u32);

struct SlotTable<S> {
    series: FxHashMap<VarKey, S>,
    vals: FxHashMap<VarKey, Valuation>,
}

struct Group<'a> {
    bc: CycleMonomial,
    a_parts: Vec<(CycleMonomial, &'a Rational)>,
}

/// Precision ceiling implied by the truncation of `ell` itself.
fn ell_ceiling<S: SeriesRing>(ell: &IndexSeries, slots: &[Slot<S>; 3]) -> Result<Truncation> {
    let t = ell.trunc();
    let va = slots[0].base().valuation().effective(slots[0].base().trunc());
    let vb = slots[1].base().valuation().effective(slots[1].base().trunc());
    let vc = slots[2].base().valuation().effective(slots[2].base().trunc());
    let n = if t.n_max == UNBOUNDED {
        UNBOUNDED
    } else if va.v >= 1 {
        t.n_max
    } else {
        return Err(Error::NonTerminating(
            "vertex slot has terms of vertex degree 0 while the outer series is truncated".into(),
        ));
    };
    let m = if t.m_max == UNBOUNDED {
        UNBOUNDED
    } else if vb.e >= 1 && vc.e >= 1 {
        t.m_max
    } else {
        return Err(Error::NonTerminating(
            "edge slot has terms of edge degree 0 while the outer series is truncated".into(),
        ));
    };
    Ok(Truncation::new(n, m))
}

/// `ℓ[f; g; h]` computed inside `target`.
///
/// Each `a_k` becomes the `k`-scaled vertex slot, each `b_k`, `c_k` the
/// `k`-scaled edge slots. Fails with `TruncationMismatch` when the inputs do
/// not determine every coefficient inside `target`.
pub fn bracket<S: SeriesRing>(ell: &IndexSeries, slots: &[Slot<S>; 3], target: Truncation) -> Result<S> {
    let out = bracket_inner(ell, slots, target)?;
    let got = out.trunc();
    if got.n_max < target.n_max || got.m_max < target.m_max {
        return Err(Error::TruncationMismatch(format!(
            "substitution determined only {got}, requested {target}"
        )));
    }
    Ok(out.retrunc(target))
}

/// As [`bracket`], but returns whatever precision was reached (at most `target`).
pub fn bracket_best<S: SeriesRing>(ell: &IndexSeries, slots: &[Slot<S>; 3], target: Truncation) -> Result<S> {
    bracket_inner(ell, slots, target)
}

/// Substitution ignoring the precision bookkeeping; the caller vouches that
/// everything inside `target` is determined.
pub(crate) fn bracket_unchecked<S: SeriesRing>(
    ell: &IndexSeries,
    slots: &[Slot<S>; 3],
    target: Truncation,
) -> Result<S> {
    let relaxed: [Slot<S>; 3] = slots.clone().map(|s| match s {
        Slot::Pleth(x) => Slot::Pleth(x.retrunc(Truncation::EXACT)),
        Slot::FirstOnly(x) => Slot::FirstOnly(x.retrunc(Truncation::EXACT)),
    });
    let ell = ell.clone().with_trunc(Truncation::EXACT);
    Ok(bracket_inner(&ell, &relaxed, target)?.retrunc(target))
}

fn bracket_inner<S: SeriesRing>(ell: &IndexSeries, slots: &[Slot<S>; 3], target: Truncation) -> Result<S> {
    for (i, s) in slots.iter().enumerate() {
        if !s.base().constant_term().is_zero() {
            return Err(Error::NonTerminating(format!(
                "slot {} has a nonzero constant term",
                Family::ALL[i].letter()
            )));
        }
    }
    let ceiling = ell_ceiling(ell, slots)?;
    let target = target.meet(ceiling);

    // distinct variables and their substituted series
    let mut table = SlotTable { series: FxHashMap::default(), vals: FxHashMap::default() };
    for (m, _) in ell.terms() {
        for (fam, k, _) in m.iter() {
            table.series.entry((fam, k)).or_insert_with(|| slots[fam as usize].at(k));
        }
    }
    for (key, s) in &table.series {
        table.vals.insert(*key, s.valuation().effective(s.trunc()));
    }
    let val_of = |m: &CycleMonomial| -> Option<Valuation> {
        let mut v = Valuation { v: 0, e: 0 };
        for (fam, k, e) in m.iter() {
            let s = &table.series[&(fam, k)];
            if s.is_zero() && s.trunc() == Truncation::EXACT {
                return None; // the variable is killed
            }
            v = vadd(v, vscale(table.vals[&(fam, k)], e));
        }
        Some(v)
    };

    // group terms by edge part; drop terms killed by zero slots or landing
    // outside the target by valuation alone
    let mut groups: FxHashMap<CycleMonomial, Vec<(CycleMonomial, &Rational)>> = FxHashMap::default();
    for (m, c) in ell.terms() {
        let Some(v) = val_of(m) else { continue };
        if !target.admits(v.v, v.e) {
            continue;
        }
        groups.entry(m.restrict(&[Family::B, Family::C])).or_default().push((m.restrict(&[Family::A]), c));
    }
    let mut groups: Vec<Group<'_>> = groups.into_iter().map(|(bc, a_parts)| Group { bc, a_parts }).collect();
    groups.sort_unstable_by(|x, y| x.bc.cmp(&y.bc));

    // required precision for every power s^e
    let mut need: FxHashMap<(VarKey, u32), Truncation> = FxHashMap::default();
    let mut note = |key: VarKey, e: u32, t: Truncation| {
        let slot = need.entry((key, e)).or_insert(Truncation::new(0, 0));
        *slot = tmax(*slot, t);
    };
    for g in &groups {
        let vbc = val_of(&g.bc).unwrap();
        let va_min = g
            .a_parts
            .iter()
            .map(|(m, _)| val_of(m).unwrap())
            .fold(Valuation::INFINITE, |x, y| Valuation { v: x.v.min(y.v), e: x.e.min(y.e) });
        for (fam, k, e) in g.bc.iter() {
            let own = vscale(table.vals[&(fam, k)], e);
            let others = vadd(va_min, Valuation { v: vbc.v - own.v.min(vbc.v), e: vbc.e - own.e.min(vbc.e) });
            note((fam, k), e, budget(target, others));
        }
        for (m, _) in &g.a_parts {
            let am = m;
            let va = val_of(am).unwrap();
            for (fam, k, e) in am.iter() {
                let own = vscale(table.vals[&(fam, k)], e);
                let others = vadd(vbc, Valuation { v: va.v - own.v.min(va.v), e: va.e - own.e.min(va.e) });
                note((fam, k), e, budget(target, others));
            }
        }
    }

    // power chains, computed top-down in required precision
    let mut by_var: FxHashMap<VarKey, Vec<(u32, Truncation)>> = FxHashMap::default();
    for ((key, e), t) in &need {
        by_var.entry(*key).or_default().push((*e, *t));
    }
    let powers: FxHashMap<(VarKey, u32), S> = by_var
        .into_par_iter()
        .flat_map_iter(|(key, mut reqs)| {
            let s = &table.series[&key];
            let v = table.vals[&key];
            reqs.sort_unstable_by_key(|r| r.0);
            let top = reqs.last().unwrap().0;
            let mut req = vec![Truncation::new(0, 0); top as usize + 1];
            for (e, t) in &reqs {
                req[*e as usize] = *t;
            }
            // s^(j) must support s^(j+1) = s^(j) * s
            for j in (1..top as usize).rev() {
                let up = budget(req[j + 1], v);
                req[j] = tmax(req[j], up);
            }
            let mut out = Vec::with_capacity(reqs.len());
            let mut p = s.truncate(req[1]);
            for j in 1..=top {
                if j > 1 {
                    p = p.mul_to(s, req[j as usize]);
                }
                if reqs.binary_search_by_key(&j, |r| r.0).is_ok() {
                    out.push(((key, j), p.clone()));
                }
            }
            out.into_iter()
        })
        .collect();

    let product = |m: &CycleMonomial, t: Truncation| -> S {
        let mut acc = S::one();
        for (fam, k, e) in m.iter() {
            acc = acc.mul_to(&powers[&((fam, k), e)], t);
        }
        acc
    };

    let result = groups
        .par_iter()
        .map(|g| {
            let vbc = val_of(&g.bc).unwrap();
            let va_min = g
                .a_parts
                .iter()
                .map(|(m, _)| val_of(m).unwrap())
                .fold(Valuation::INFINITE, |x, y| Valuation { v: x.v.min(y.v), e: x.e.min(y.e) });
            let bc_prod = product(&g.bc, budget(target, va_min));
            let a_target = budget(target, vbc);
            let mut a_sum: Option<S> = None;
            for (m, c) in &g.a_parts {
                let p = product(m, a_target).scale(c);
                a_sum = Some(match a_sum {
                    None => p,
                    Some(s) => s.add(&p),
                });
            }
            a_sum.unwrap().mul_to(&bc_prod, target)
        })
        .reduce(|| S::zero(target), |x, y| x.add(&y));
    Ok(result.truncate(target))
}

/// `ℓ[f; g; h]` with index-series slots, each substituted plethystically.
pub fn bracket_subst(
    ell: &IndexSeries,
    f: &IndexSeries,
    g: &IndexSeries,
    h: &IndexSeries,
    target: Truncation,
) -> Result<IndexSeries> {
    bracket(ell, &[Slot::Pleth(f.clone()), Slot::Pleth(g.clone()), Slot::Pleth(h.clone())], target)
}

fn spec_target(w: &IndexSeries) -> Truncation {
    w.trunc()
}

/// Exponential generating function: `a_1 ← x`, `a_k ← 0` (k ≥ 2), `b_k, c_k ← y^k`.
pub fn to_egf(w: &IndexSeries) -> BiSeries {
    let slots = [Slot::FirstOnly(BiSeries::x()), Slot::Pleth(BiSeries::y()), Slot::Pleth(BiSeries::y())];
    bracket(w, &slots, spec_target(w)).expect("monomial slots always terminate")
}

/// Ordinary generating function of isomorphism classes without the
/// integrality check (for intermediate, non-species series).
pub fn tilde_unchecked(w: &IndexSeries) -> BiSeries {
    let slots = [Slot::Pleth(BiSeries::x()), Slot::Pleth(BiSeries::y()), Slot::Pleth(BiSeries::y())];
    bracket(w, &slots, spec_target(w)).expect("monomial slots always terminate")
}

/// Ordinary generating function of isomorphism classes: `a_k ← x^k`,
/// `b_k, c_k ← y^k`. Every coefficient must be a non-negative integer.
pub fn to_tilde(w: &IndexSeries) -> Result<BiSeries> {
    let t = tilde_unchecked(w);
    t.check_counts()?;
    Ok(t)
}

/// `ℓ[x; β; γ]`-style substitution with bivariate slots.
pub fn bracket_bi(
    ell: &IndexSeries,
    alpha: &BiSeries,
    beta: &BiSeries,
    gamma: &BiSeries,
    target: Truncation,
) -> Result<BiSeries> {
    bracket(ell, &[Slot::Pleth(alpha.clone()), Slot::Pleth(beta.clone()), Slot::Pleth(gamma.clone())], target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Family, k: u32) -> IndexSeries {
        IndexSeries::var(f, k)
    }
    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }
    fn wk2() -> IndexSeries {
        let a1 = v(Family::A, 1);
        a1.mul(&a1).mul(&v(Family::B, 1)).add(&v(Family::A, 2).mul(&v(Family::C, 1))).scale(&q(1, 2))
    }

    #[test]
    fn identity_substitution() {
        let w = wk2().truncate(Truncation::vertices(4));
        let r = bracket_subst(&w, &v(Family::A, 1), &v(Family::B, 1), &v(Family::C, 1), Truncation::vertices(4)).unwrap();
        assert_eq!(r, w);
    }

    #[test]
    fn k2_specializations() {
        assert_eq!(to_egf(&wk2()), BiSeries::monomial(2, 1, q(1, 2)));
        assert_eq!(to_tilde(&wk2()).unwrap(), BiSeries::monomial(2, 1, q(1, 1)));
    }

    #[test]
    fn slot_with_constant_is_rejected() {
        let bad = IndexSeries::one().add(&v(Family::B, 1));
        let r = bracket_subst(&wk2(), &v(Family::A, 1), &bad, &v(Family::C, 1), Truncation::vertices(3));
        assert!(matches!(r, Err(Error::NonTerminating(_))));
    }

    #[test]
    fn imprecise_slot_is_reported() {
        let rho = v(Family::B, 1).truncate(Truncation::vertices(0));
        let r = bracket_subst(&wk2(), &v(Family::A, 1), &rho, &v(Family::C, 1), Truncation::vertices(5));
        assert!(matches!(r, Err(Error::TruncationMismatch(_))));
        // a1^2 raises the precision of the b-slot by two
        let ok = bracket_subst(&wk2(), &v(Family::A, 1), &rho, &rho.clone(), Truncation::vertices(2));
        assert!(ok.is_ok());
    }
}
