use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// The three variable families of an edge index series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Vertex cycles `a_k`.
    A = 0,
    /// Cylindrical edge cycles `b_k`.
    B = 1,
    /// Möbius edge cycles `c_k`.
    C = 2,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::C];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
        }
    }

    fn from_bits(bits: u32) -> Family {
        match bits {
            0 => Family::A,
            1 => Family::B,
            _ => Family::C,
        }
    }
}

const INDEX_BITS: u32 = 28;
const INDEX_MASK: u32 = (1 << INDEX_BITS) - 1;

fn key(fam: Family, index: u32) -> u32 {
    debug_assert!((1..=INDEX_MASK).contains(&index));
    (fam as u32) << INDEX_BITS | index
}

/// A monomial `Π a_k^{i_k} b_k^{j_k} c_k^{l_k}` stored sparsely.
///
/// Entries are `(family/index key, exponent)` sorted by key, so all `a`
/// variables precede all `b` variables which precede all `c` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleMonomial {
    vars: SmallVec<[(u32, u32); 4]>,
    vdeg: u32,
    edeg: u32,
}

impl CycleMonomial {
    pub fn one() -> Self {
        CycleMonomial { vars: SmallVec::new(), vdeg: 0, edeg: 0 }
    }

    pub fn var(fam: Family, index: u32) -> Self {
        Self::power(fam, index, 1)
    }

    pub fn power(fam: Family, index: u32, exp: u32) -> Self {
        let mut m = Self::one();
        if exp > 0 {
            m.vars.push((key(fam, index), exp));
            m.recount();
        }
        m
    }

    pub fn a(k: u32) -> Self {
        Self::var(Family::A, k)
    }

    pub fn b(k: u32) -> Self {
        Self::var(Family::B, k)
    }

    pub fn c(k: u32) -> Self {
        Self::var(Family::C, k)
    }

    /// Builds a monomial from `(family, index, exponent)` triples in any
    /// order; repeated variables have their exponents added, zero exponents
    /// are dropped.
    pub fn from_triples<I: IntoIterator<Item = (Family, u32, u32)>>(triples: I) -> Self {
        let mut vars: SmallVec<[(u32, u32); 4]> =
            triples.into_iter().filter(|t| t.2 > 0).map(|(f, i, e)| (key(f, i), e)).collect();
        vars.sort_unstable_by_key(|v| v.0);
        let mut out: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for (k, e) in vars {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += e,
                _ => out.push((k, e)),
            }
        }
        let mut m = CycleMonomial { vars: out, vdeg: 0, edeg: 0 };
        m.recount();
        m
    }

    fn recount(&mut self) {
        let mut v = 0;
        let mut e = 0;
        for &(k, x) in &self.vars {
            let w = (k & INDEX_MASK) * x;
            if k >> INDEX_BITS == 0 {
                v += w;
            } else {
                e += w;
            }
        }
        self.vdeg = v;
        self.edeg = e;
    }

    /// `Σ k · aExp[k]`.
    pub fn vertex_degree(&self) -> u32 {
        self.vdeg
    }

    /// `Σ k · (bExp[k] + cExp[k])`.
    pub fn edge_degree(&self) -> u32 {
        self.edeg
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    /// `(family, index, exponent)` for every variable present, in key order.
    pub fn iter(&self) -> impl Iterator<Item = (Family, u32, u32)> + '_ {
        self.vars.iter().map(|&(k, e)| (Family::from_bits(k >> INDEX_BITS), k & INDEX_MASK, e))
    }

    fn family_slice(&self, fam: Family) -> &[(u32, u32)] {
        let lo = self.vars.partition_point(|v| v.0 >> INDEX_BITS < fam as u32);
        let hi = self.vars.partition_point(|v| v.0 >> INDEX_BITS <= fam as u32);
        &self.vars[lo..hi]
    }

    /// `(index, exponent)` pairs of one family, increasing index.
    pub fn family(&self, fam: Family) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.family_slice(fam).iter().map(|&(k, e)| (k & INDEX_MASK, e))
    }

    pub fn exponent(&self, fam: Family, index: u32) -> u32 {
        let k = key(fam, index);
        match self.vars.binary_search_by_key(&k, |v| v.0) {
            Ok(i) => self.vars[i].1,
            Err(_) => 0,
        }
    }

    /// The sub-monomial made of one family's variables.
    pub fn restrict(&self, fams: &[Family]) -> CycleMonomial {
        let vars = self
            .vars
            .iter()
            .copied()
            .filter(|v| fams.contains(&Family::from_bits(v.0 >> INDEX_BITS)))
            .collect();
        let mut m = CycleMonomial { vars, vdeg: 0, edeg: 0 };
        m.recount();
        m
    }

    pub fn mul(&self, other: &CycleMonomial) -> CycleMonomial {
        let (x, y) = (&self.vars, &other.vars);
        let mut vars: SmallVec<[(u32, u32); 4]> = SmallVec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                Ordering::Less => {
                    vars.push(x[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(y[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    vars.push((x[i].0, x[i].1 + y[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&x[i..]);
        vars.extend_from_slice(&y[j..]);
        CycleMonomial { vars, vdeg: self.vdeg + other.vdeg, edeg: self.edeg + other.edeg }
    }

    pub fn pow(&self, e: u32) -> CycleMonomial {
        if e == 0 {
            return Self::one();
        }
        CycleMonomial {
            vars: self.vars.iter().map(|&(k, x)| (k, x * e)).collect(),
            vdeg: self.vdeg * e,
            edeg: self.edeg * e,
        }
    }

    /// Every variable index multiplied by `k` (plethystic scaling).
    pub fn pleth(&self, k: u32) -> CycleMonomial {
        if k == 1 {
            return self.clone();
        }
        CycleMonomial {
            vars: self
                .vars
                .iter()
                .map(|&(key, e)| {
                    let idx = (key & INDEX_MASK) * k;
                    assert!(idx <= INDEX_MASK, "variable index overflow");
                    ((key & !INDEX_MASK) | idx, e)
                })
                .collect(),
            vdeg: self.vdeg * k,
            edeg: self.edeg * k,
        }
    }

    /// Divides by `fam_index^by`, or `None` if the exponent is too small.
    pub fn divide_var(&self, fam: Family, index: u32, by: u32) -> Option<CycleMonomial> {
        let k = key(fam, index);
        let pos = self.vars.binary_search_by_key(&k, |v| v.0).ok();
        let have = pos.map_or(0, |i| self.vars[i].1);
        if have < by {
            return None;
        }
        if by == 0 {
            return Some(self.clone());
        }
        let mut vars = self.vars.clone();
        let i = pos.unwrap();
        if have == by {
            vars.remove(i);
        } else {
            vars[i].1 -= by;
        }
        let w = index * by;
        let (vdeg, edeg) =
            if fam == Family::A { (self.vdeg - w, self.edeg) } else { (self.vdeg, self.edeg - w) };
        Some(CycleMonomial { vars, vdeg, edeg })
    }
}

impl Default for CycleMonomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Ord for CycleMonomial {
    /// `(vertexDegree, edgeDegree, aExp, bExp, cExp)`, each exponent map
    /// compared lexicographically as its sorted `(index, exponent)` list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.vdeg
            .cmp(&other.vdeg)
            .then(self.edeg.cmp(&other.edeg))
            .then_with(|| {
                for fam in Family::ALL {
                    let o = self.family_slice(fam).cmp(other.family_slice(fam));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for CycleMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CycleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (fam, idx, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}{}", fam.letter(), idx)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let m = CycleMonomial::from_triples([(Family::A, 2, 3), (Family::B, 1, 2), (Family::C, 3, 1)]);
        assert_eq!(m.vertex_degree(), 6);
        assert_eq!(m.edge_degree(), 5);
        assert_eq!(m.to_string(), "a2^3*b1^2*c3");
    }

    #[test]
    fn product_merges_exponents() {
        let p = CycleMonomial::from_triples([(Family::A, 1, 1), (Family::B, 1, 1)]);
        let q = CycleMonomial::from_triples([(Family::A, 1, 1), (Family::C, 1, 1)]);
        let r = p.mul(&q);
        assert_eq!(r, CycleMonomial::from_triples([(Family::A, 1, 2), (Family::B, 1, 1), (Family::C, 1, 1)]));
        assert_eq!((r.vertex_degree(), r.edge_degree()), (2, 2));
    }

    #[test]
    fn pleth_scales_indices() {
        let m = CycleMonomial::from_triples([(Family::A, 1, 2), (Family::B, 1, 1)]).pleth(2);
        assert_eq!(m, CycleMonomial::from_triples([(Family::A, 2, 2), (Family::B, 2, 1)]));
    }

    #[test]
    fn ordering_grades_first() {
        let low = CycleMonomial::a(1).mul(&CycleMonomial::b(3));
        let high = CycleMonomial::a(2);
        assert!(low < high);
        let x = CycleMonomial::a(1).pow(2);
        assert!(x < high);
    }

    #[test]
    fn divide() {
        let m = CycleMonomial::from_triples([(Family::A, 1, 2), (Family::B, 1, 1)]);
        assert_eq!(m.divide_var(Family::A, 1, 2), Some(CycleMonomial::b(1)));
        assert_eq!(m.divide_var(Family::A, 2, 1), None);
    }
}
