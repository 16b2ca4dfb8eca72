//! Edge index series of the polygons `C_n`, from the closed form.

use crate::rational::Rational;
use crate::series::{CycleMonomial, Family, IndexSeries, Truncation, UNBOUNDED};

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `W_{C_n}` for `n ≥ 3`: rotations contribute `φ(d) a_d^{n/d} b_d^{n/d} / 2n`,
/// reflections depend on the parity of `n`.
pub fn polygon_series(n: u32) -> IndexSeries {
    assert!(n >= 3, "polygons have at least 3 vertices");
    let mono = |t: &[(Family, u32, u32)]| CycleMonomial::from_triples(t.iter().copied());
    let mut terms = Vec::new();
    for d in divisors(n) {
        let c = Rational::new(euler_phi(d) as i64, 2 * n as i64);
        terms.push((mono(&[(Family::A, d, n / d), (Family::B, d, n / d)]), c));
    }
    if n % 2 == 1 {
        let h = (n - 1) / 2;
        terms.push((mono(&[(Family::A, 1, 1), (Family::A, 2, h), (Family::B, 2, h), (Family::C, 1, 1)]), Rational::new(1, 2)));
    } else {
        let h = n / 2;
        // axis through two opposite edges
        terms.push((mono(&[(Family::A, 2, h), (Family::B, 2, h - 1), (Family::C, 1, 2)]), Rational::new(1, 4)));
        // axis through two opposite vertices
        terms.push((mono(&[(Family::A, 1, 2), (Family::A, 2, h - 1), (Family::B, 2, h)]), Rational::new(1, 4)));
    }
    IndexSeries::from_terms(terms, Truncation::EXACT)
}

/// `W_C = Σ_{3 ≤ n ≤ nMax} W_{C_n}`, with the requested truncation.
pub fn cycle_species_series(trunc: Truncation) -> IndexSeries {
    assert!(trunc.n_max != UNBOUNDED, "the cycle species needs a vertex bound");
    let mut acc = IndexSeries::zero(trunc);
    for n in 3..=trunc.n_max {
        if n > trunc.m_max {
            break;
        }
        acc = acc.add(&polygon_series(n).truncate(trunc));
    }
    acc.truncate(trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::graph::SimpleGraph;
    use crate::species::index_series::graph_index_series;

    #[test]
    fn phi_values() {
        assert_eq!((1..=10).map(euler_phi).collect::<Vec<_>>(), vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
    }

    #[test]
    fn closed_form_matches_brute_force() {
        for n in 3..=8 {
            assert_eq!(polygon_series(n), graph_index_series(&SimpleGraph::cycle(n as usize)), "n = {n}");
        }
    }
}
