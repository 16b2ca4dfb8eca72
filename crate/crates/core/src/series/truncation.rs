use std::fmt;

/// Sentinel for "no bound" in either direction.
pub const UNBOUNDED: u32 = u32::MAX;

fn sat_add(a: u32, b: u32) -> u32 {
    a.saturating_add(b)
}

/// Graded truncation bounds: terms with vertex degree above `n_max` or edge
/// degree above `m_max` are not retained.
///
/// On a computed series the truncation doubles as a precision claim: every
/// term inside the bounds is known exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub n_max: u32,
    pub m_max: u32,
}

pub fn binom2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

impl Truncation {
    /// Exact objects (polynomials, monomials) carry this.
    pub const EXACT: Truncation = Truncation { n_max: UNBOUNDED, m_max: UNBOUNDED };

    pub fn new(n_max: u32, m_max: u32) -> Self {
        Truncation { n_max, m_max }
    }

    /// Graph-like default: `m_max = C(n, 2)`.
    pub fn graphs(n_max: u32) -> Self {
        Truncation::new(n_max, binom2(n_max))
    }

    /// Network default: `m_max = C(n + 2, 2)`.
    pub fn networks(n_max: u32) -> Self {
        Truncation::new(n_max, binom2(n_max + 2))
    }

    /// Bounded in vertex degree only.
    pub fn vertices(n_max: u32) -> Self {
        Truncation::new(n_max, UNBOUNDED)
    }

    pub fn is_exact(&self) -> bool {
        *self == Self::EXACT
    }

    pub fn admits(&self, vdeg: u32, edeg: u32) -> bool {
        vdeg <= self.n_max && edeg <= self.m_max
    }

    pub fn meet(self, other: Truncation) -> Truncation {
        Truncation::new(self.n_max.min(other.n_max), self.m_max.min(other.m_max))
    }

    /// Bounds raised by `(dv, de)`, saturating at [`UNBOUNDED`].
    pub fn raised(self, dv: u32, de: u32) -> Truncation {
        Truncation::new(sat_add(self.n_max, dv), sat_add(self.m_max, de))
    }

    /// Bounds lowered by `(dv, de)`; `None` when a bound would go negative.
    pub fn lowered(self, dv: u32, de: u32) -> Option<Truncation> {
        let n = if self.n_max == UNBOUNDED { UNBOUNDED } else { self.n_max.checked_sub(dv)? };
        let m = if self.m_max == UNBOUNDED { UNBOUNDED } else { self.m_max.checked_sub(de)? };
        Some(Truncation::new(n, m))
    }

    /// Precision after scaling every variable index by `k`: a term missing at
    /// degree `d > n` reappears at degree `k d ≥ k (n + 1)`.
    pub fn pleth(self, k: u32) -> Truncation {
        let scale = |b: u32| {
            if b == UNBOUNDED {
                UNBOUNDED
            } else {
                let v = k as u64 * (b as u64 + 1) - 1;
                v.min(UNBOUNDED as u64 - 1) as u32
            }
        };
        Truncation::new(scale(self.n_max), scale(self.m_max))
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |b: u32| if b == UNBOUNDED { "inf".to_string() } else { b.to_string() };
        write!(f, "(n<={}, m<={})", show(self.n_max), show(self.m_max))
    }
}

/// Lowest (vertex, edge) degrees present in a series, with `UNBOUNDED`
/// standing for "no terms".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub v: u32,
    pub e: u32,
}

impl Valuation {
    pub const INFINITE: Valuation = Valuation { v: UNBOUNDED, e: UNBOUNDED };

    /// Valuation of a truncated series: absent terms may hide just above the bound.
    pub fn effective(self, t: Truncation) -> Valuation {
        Valuation {
            v: self.v.min(sat_add(t.n_max, 1)),
            e: self.e.min(sat_add(t.m_max, 1)),
        }
    }
}

/// Precision of a product `f g` from the factors' truncations and effective
/// valuations: terms missing from `f` only surface at degrees above
/// `N_f + val(g)`.
pub fn product_precision(tf: Truncation, vf: Valuation, tg: Truncation, vg: Valuation) -> Truncation {
    let vf = vf.effective(tf);
    let vg = vg.effective(tg);
    Truncation::new(
        sat_add(tf.n_max, vg.v).min(sat_add(tg.n_max, vf.v)),
        sat_add(tf.m_max, vg.e).min(sat_add(tg.m_max, vf.e)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        assert_eq!(Truncation::graphs(5), Truncation::new(5, 10));
        assert_eq!(Truncation::networks(3), Truncation::new(3, 10));
    }

    #[test]
    fn pleth_bounds() {
        assert_eq!(Truncation::new(3, 4).pleth(2), Truncation::new(7, 9));
        assert_eq!(Truncation::EXACT.pleth(3), Truncation::EXACT);
    }

    #[test]
    fn product_rule() {
        // a1 (exact, valuation 1) times something known to degree 4
        let t = product_precision(
            Truncation::EXACT,
            Valuation { v: 1, e: 0 },
            Truncation::vertices(4),
            Valuation { v: 0, e: 1 },
        );
        assert_eq!(t, Truncation::vertices(5));
    }
}
