use std::fmt;

use num_bigint::BigInt;

use super::truncation::{product_precision, Truncation, Valuation, UNBOUNDED};
use crate::error::{Error, Result};
use crate::rational::Rational;

type Row = Vec<Rational>;

/// A truncated bivariate series `Σ c_{n,m} xⁿ yᵐ` (x marks vertices, y edges).
///
/// Stored as dense rows indexed by the x-exponent, each row a polynomial in y.
/// Trailing zeros are trimmed so that derived equality is value equality.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    rows: Vec<Row>,
    trunc: Truncation,
}

fn trim(row: &mut Row) {
    while row.last().is_some_and(|c| c.is_zero()) {
        row.pop();
    }
}

fn row_add_scaled(dst: &mut Row, src: &[Rational], c: &Rational, mmax: u32) {
    let len = src.len().min(mmax.saturating_add(1) as usize);
    if dst.len() < len {
        dst.resize(len, Rational::zero());
    }
    for (d, s) in dst.iter_mut().zip(&src[..len]) {
        if !s.is_zero() {
            *d += &(s * c);
        }
    }
}

/// `dst += c · a · b`, truncated at y-degree `mmax`.
fn row_mul_add(dst: &mut Row, a: &[Rational], b: &[Rational], c: &Rational, mmax: u32) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let len = (a.len() + b.len() - 1).min(mmax.saturating_add(1) as usize);
    if dst.len() < len {
        dst.resize(len, Rational::zero());
    }
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() || i >= len {
            continue;
        }
        let xc = x * c;
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if !y.is_zero() {
                dst[i + j] += &(&xc * y);
            }
        }
    }
}

fn row_is_zero(r: &[Rational]) -> bool {
    r.iter().all(|c| c.is_zero())
}

/// Univariate `exp` of a polynomial in y without constant term, to degree `m`.
fn row_exp(f: &[Rational], m: u32) -> Row {
    let m = m as usize;
    let mut e = vec![Rational::zero(); m + 1];
    e[0] = Rational::one();
    for n in 1..=m {
        let mut s = Rational::zero();
        for k in 1..=n.min(f.len().saturating_sub(1)) {
            if !f[k].is_zero() {
                s += &(&(&f[k] * &Rational::from_int(k as i64)) * &e[n - k]);
            }
        }
        e[n] = &s / &Rational::from_int(n as i64);
    }
    trim(&mut e);
    e
}

/// Univariate inverse of a polynomial in y with nonzero constant term.
fn row_inverse(f: &[Rational], m: u32) -> Row {
    let m = m as usize;
    let inv0 = f[0].recip();
    let mut e = vec![Rational::zero(); m + 1];
    e[0] = inv0.clone();
    for n in 1..=m {
        let mut s = Rational::zero();
        for k in 1..=n.min(f.len().saturating_sub(1)) {
            if !f[k].is_zero() {
                s += &(&f[k] * &e[n - k]);
            }
        }
        e[n] = -&(&s * &inv0);
    }
    trim(&mut e);
    e
}

/// Univariate `log` of a polynomial in y with constant term one.
fn row_log(f: &[Rational], m: u32) -> Row {
    let m = m as usize;
    let mut l = vec![Rational::zero(); m + 1];
    let get = |i: usize| f.get(i).cloned().unwrap_or_default();
    for n in 1..=m {
        let mut s = &get(n) * &Rational::from_int(n as i64);
        for k in 1..n {
            let u = get(n - k);
            if !u.is_zero() && !l[k].is_zero() {
                s -= &(&(&l[k] * &Rational::from_int(k as i64)) * &u);
            }
        }
        l[n] = &s / &Rational::from_int(n as i64);
    }
    trim(&mut l);
    l
}

impl BiSeries {
    pub fn zero(trunc: Truncation) -> Self {
        BiSeries { rows: Vec::new(), trunc }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The exact series `c xⁿ yᵐ`.
    pub fn monomial(n: u32, m: u32, c: Rational) -> Self {
        Self::from_triples([(n, m, c)], Truncation::EXACT)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn from_triples<I: IntoIterator<Item = (u32, u32, Rational)>>(items: I, trunc: Truncation) -> Self {
        let mut s = BiSeries::zero(trunc);
        for (n, m, c) in items {
            if trunc.admits(n, m) {
                s.add_coeff(n, m, &c);
            }
        }
        s.normalize();
        s
    }

    fn add_coeff(&mut self, n: u32, m: u32, c: &Rational) {
        let (n, m) = (n as usize, m as usize);
        if self.rows.len() <= n {
            self.rows.resize(n + 1, Vec::new());
        }
        let row = &mut self.rows[n];
        if row.len() <= m {
            row.resize(m + 1, Rational::zero());
        }
        row[m] += c;
    }

    fn normalize(&mut self) {
        let t = self.trunc;
        if t.n_max != UNBOUNDED && self.rows.len() > t.n_max as usize + 1 {
            self.rows.truncate(t.n_max as usize + 1);
        }
        for r in &mut self.rows {
            if t.m_max != UNBOUNDED && r.len() > t.m_max as usize + 1 {
                r.truncate(t.m_max as usize + 1);
            }
            trim(r);
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    fn from_rows(rows: Vec<Row>, trunc: Truncation) -> Self {
        let mut s = BiSeries { rows, trunc };
        s.normalize();
        s
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn coeff(&self, n: u32, m: u32) -> Rational {
        self.rows.get(n as usize).and_then(|r| r.get(m as usize)).cloned().unwrap_or_default()
    }

    /// Coefficients of xⁿ as a polynomial in y.
    pub fn row(&self, n: u32) -> &[Rational] {
        self.rows.get(n as usize).map_or(&[], |r| r.as_slice())
    }

    /// Number of stored x-rows (one more than the top x-degree present).
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Nonzero coefficients as `(n, m, c)` in increasing `(n, m)`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &Rational)> + '_ {
        self.rows.iter().enumerate().flat_map(|(n, r)| {
            r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(m, c)| (n as u32, m as u32, c))
        })
    }

    /// Coefficients of the univariate series at `y = 1`, indexed by n.
    pub fn eval_y1(&self) -> Vec<Rational> {
        self.rows.iter().map(|r| r.iter().cloned().sum()).collect()
    }

    pub fn valuation(&self) -> Valuation {
        let mut v = Valuation::INFINITE;
        for (n, m, _) in self.iter() {
            v.v = v.v.min(n);
            v.e = v.e.min(m);
        }
        v
    }

    pub fn truncate(&self, t: Truncation) -> Self {
        Self::from_rows(self.rows.clone(), self.trunc.meet(t))
    }

    pub(crate) fn with_trunc(self, t: Truncation) -> Self {
        Self::from_rows(self.rows, t)
    }

    fn combine(&self, other: &Self, c: &Rational) -> Self {
        let t = self.trunc.meet(other.trunc);
        let mut rows = self.rows.clone();
        if rows.len() < other.rows.len() {
            rows.resize(other.rows.len(), Vec::new());
        }
        for (d, s) in rows.iter_mut().zip(&other.rows) {
            row_add_scaled(d, s, c, t.m_max);
        }
        Self::from_rows(rows, t)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &Rational::from_int(-1))
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        Self::from_rows(rows, self.trunc)
    }

    /// Multiplication by `xⁿ yᵐ`.
    pub fn shift(&self, n: u32, m: u32) -> Self {
        let t = self.trunc.raised(n, m);
        let mut rows = vec![Vec::new(); n as usize];
        for r in &self.rows {
            let mut nr = vec![Rational::zero(); m as usize];
            nr.extend(r.iter().cloned());
            rows.push(nr);
        }
        Self::from_rows(rows, t)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = product_precision(self.trunc, self.valuation(), other.trunc, other.valuation());
        self.mul_to(other, t)
    }

    pub fn mul_to(&self, other: &Self, target: Truncation) -> Self {
        let t = product_precision(self.trunc, self.valuation(), other.trunc, other.valuation()).meet(target);
        let mut rows: Vec<Row> = Vec::new();
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                if (i + j) as u64 > t.n_max as u64 {
                    break;
                }
                if b.is_empty() {
                    continue;
                }
                if rows.len() <= i + j {
                    rows.resize(i + j + 1, Vec::new());
                }
                row_mul_add(&mut rows[i + j], a, b, &Rational::one(), t.m_max);
            }
        }
        Self::from_rows(rows, t)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `f(x^k, y^k)`.
    pub fn pleth(&self, k: u32) -> Self {
        assert!(k >= 1);
        if k == 1 {
            return self.clone();
        }
        let t = self.trunc.pleth(k);
        let items: Vec<_> = self.iter().map(|(n, m, c)| (n * k, m * k, c.clone())).collect();
        Self::from_triples(items, t)
    }

    pub fn derivative_y(&self) -> Self {
        let t = self.trunc.lowered(0, 1).unwrap_or(Truncation::new(self.trunc.n_max, 0));
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().skip(1).map(|(m, c)| c * &Rational::from_int(m as i64)).collect())
            .collect();
        Self::from_rows(rows, t)
    }

    /// Antiderivative in y with zero constant of integration.
    pub fn integrate_y(&self) -> Self {
        let t = self.trunc.raised(0, 1);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut nr = vec![Rational::zero()];
                nr.extend(r.iter().enumerate().map(|(m, c)| c / &Rational::from_int(m as i64 + 1)));
                nr
            })
            .collect();
        Self::from_rows(rows, t)
    }

    /// Splits into the x⁰ row and the remainder.
    fn split_row0(&self) -> (Row, BiSeries) {
        let r0 = self.rows.first().cloned().unwrap_or_default();
        let mut rest = self.clone();
        if let Some(r) = rest.rows.first_mut() {
            r.clear();
        }
        rest.normalize();
        (r0, rest)
    }

    fn need_finite_n(&self, what: &str) -> Result<u32> {
        if self.trunc.n_max == UNBOUNDED {
            return Err(Error::NonTerminating(format!("{what} of a series unbounded in x")));
        }
        Ok(self.trunc.n_max)
    }

    fn need_finite_m(&self, what: &str) -> Result<u32> {
        if self.trunc.m_max == UNBOUNDED {
            return Err(Error::NonTerminating(format!("{what} of a series with pure-y terms needs a y-bound")));
        }
        Ok(self.trunc.m_max)
    }

    /// x-graded recurrences; requires the x⁰ row of `u` to vanish.
    fn graded_exp(u: &BiSeries, t: Truncation) -> Result<BiSeries> {
        if u.is_zero() {
            return Ok(Self::one().with_trunc(t));
        }
        let top = u.need_finite_n("exp")? as usize;
        let f = &u.rows;
        let mut e: Vec<Row> = vec![Vec::new(); top + 1];
        e[0] = vec![Rational::one()];
        for n in 1..=top {
            let mut acc = Vec::new();
            for k in 1..=n.min(f.len().saturating_sub(1)) {
                let c = Rational::new(k as i64, n as i64);
                row_mul_add(&mut acc, &f[k], &e[n - k], &c, t.m_max);
            }
            trim(&mut acc);
            e[n] = acc;
        }
        Ok(Self::from_rows(e, t))
    }

    fn graded_inverse(u: &BiSeries, t: Truncation) -> Result<BiSeries> {
        // 1 / (1 + u)
        if u.is_zero() {
            return Ok(Self::one().with_trunc(t));
        }
        let top = u.need_finite_n("inverse")? as usize;
        let f = &u.rows;
        let mut e: Vec<Row> = vec![Vec::new(); top + 1];
        e[0] = vec![Rational::one()];
        let minus = Rational::from_int(-1);
        for n in 1..=top {
            let mut acc = Vec::new();
            for k in 1..=n.min(f.len().saturating_sub(1)) {
                row_mul_add(&mut acc, &f[k], &e[n - k], &minus, t.m_max);
            }
            trim(&mut acc);
            e[n] = acc;
        }
        Ok(Self::from_rows(e, t))
    }

    fn graded_log(u: &BiSeries, t: Truncation) -> Result<BiSeries> {
        // log(1 + u)
        if u.is_zero() {
            return Ok(Self::zero(t));
        }
        let top = u.need_finite_n("log")? as usize;
        let f = &u.rows;
        let mut l: Vec<Row> = vec![Vec::new(); top + 1];
        for n in 1..=top {
            let mut acc = Vec::new();
            if let Some(r) = f.get(n) {
                row_add_scaled(&mut acc, r, &Rational::one(), t.m_max);
            }
            for k in 1..n {
                if let Some(r) = f.get(n - k) {
                    row_mul_add(&mut acc, &l[k], r, &Rational::new(-(k as i64), n as i64), t.m_max);
                }
            }
            trim(&mut acc);
            l[n] = acc;
        }
        Ok(Self::from_rows(l, t))
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0, 0).is_zero() {
            return Err(Error::ConstantTerm("exp needs zero constant term".into()));
        }
        let t = self.trunc;
        let (r0, rest) = self.split_row0();
        let e = Self::graded_exp(&rest, t)?;
        if row_is_zero(&r0) {
            return Ok(e);
        }
        let m = self.need_finite_m("exp")?;
        let e0 = Self::from_rows(vec![row_exp(&r0, m)], t);
        Ok(e0.mul_to(&e, t))
    }

    /// `1/f` for `f` with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(Error::ConstantTerm("inverse needs a nonzero constant term".into()));
        }
        let t = self.trunc;
        let (r0, _) = self.split_row0();
        let inv0 = if r0.len() > 1 {
            let m = self.need_finite_m("inverse")?;
            Self::from_rows(vec![row_inverse(&r0, m)], t)
        } else {
            Self::constant(c0.recip()).with_trunc(t)
        };
        let normalized = self.mul_to(&inv0, t);
        let u = normalized.sub(&Self::one());
        Ok(Self::graded_inverse(&u, t)?.mul_to(&inv0, t))
    }

    /// `log(f)` for `f` with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0, 0).is_one() {
            return Err(Error::ConstantTerm("log needs constant term 1".into()));
        }
        let t = self.trunc;
        let (r0, _) = self.split_row0();
        if r0.len() > 1 {
            let m = self.need_finite_m("log")?;
            let l0 = Self::from_rows(vec![row_log(&r0, m)], t);
            let inv0 = Self::from_rows(vec![row_inverse(&r0, m)], t);
            let u = self.mul_to(&inv0, t).sub(&Self::one());
            return Ok(l0.add(&Self::graded_log(&u, t)?));
        }
        Self::graded_log(&self.sub(&Self::one()), t)
    }

    /// `f(x, r(x, y))` for `r` without constant term.
    pub fn compose_y(&self, r: &BiSeries) -> Result<Self> {
        if !r.coeff(0, 0).is_zero() {
            return Err(Error::NonTerminating("inner series of a y-composition has a constant term".into()));
        }
        let vr = r.valuation().effective(r.trunc);
        // products below carry their own precision; t only bounds the work
        let mut t = self.trunc;
        let mf = self.trunc.m_max;
        if mf != UNBOUNDED {
            // columns beyond mf would contribute from x^{(mf+1) vx} y^{(mf+1) vy} on
            let bound = |v: u32| (mf as u64 + 1) * v as u64;
            if vr.e >= 1 {
                t.m_max = t.m_max.min((bound(vr.e) - 1).min(UNBOUNDED as u64 - 1) as u32);
            } else if vr.v >= 1 {
                t.n_max = t.n_max.min((bound(vr.v) - 1).min(UNBOUNDED as u64 - 1) as u32);
            } else {
                return Err(Error::NonTerminating("y-composition with a zero-valuation inner series".into()));
            }
        }
        let top_m = self.rows.iter().map(|row| row.len()).max().unwrap_or(0);
        let mut result = BiSeries::zero(t);
        let mut power = BiSeries::one();
        for m in 0..top_m {
            let col: Vec<_> = self
                .rows
                .iter()
                .enumerate()
                .filter_map(|(n, row)| row.get(m).filter(|c| !c.is_zero()).map(|c| (n as u32, 0u32, c.clone())))
                .collect();
            if !col.is_empty() {
                let col = BiSeries::from_triples(col, Truncation::new(self.trunc.n_max, UNBOUNDED));
                result = result.add(&col.mul_to(&power, t));
            }
            power = power.mul_to(r, t);
            if power.is_zero() {
                break;
            }
        }
        Ok(result)
    }

    /// Integer coefficients, or the first offending entry.
    pub fn integer_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        let mut out = Vec::with_capacity(self.rows.len());
        for (n, r) in self.rows.iter().enumerate() {
            let mut ir = Vec::with_capacity(r.len());
            for (m, c) in r.iter().enumerate() {
                match c.to_integer() {
                    Some(i) => ir.push(i),
                    None => return Err(Error::Integrality { n: n as u32, m: m as u32, coef: c.to_string() }),
                }
            }
            out.push(ir);
        }
        Ok(out)
    }

    /// Checks that every coefficient is a non-negative integer.
    pub fn check_counts(&self) -> Result<()> {
        for (n, m, c) in self.iter() {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Integrality { n, m, coef: c.to_string() });
            }
        }
        Ok(())
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, m, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*x^{n}*y^{m}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self, self.trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn exp_of_x() {
        let e = BiSeries::x().truncate(Truncation::vertices(3)).exp().unwrap();
        assert_eq!(e.eval_y1(), vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6)]);
    }

    #[test]
    fn exp_with_pure_y_terms() {
        let f = BiSeries::y().add(&BiSeries::x()).truncate(Truncation::new(2, 2));
        let e = f.exp().unwrap();
        // exp(x + y) = Σ x^n y^m / (n! m!)
        assert_eq!(e.coeff(1, 2), q(1, 2));
        assert_eq!(e.coeff(2, 2), q(1, 4));
        assert_eq!(e.log().unwrap(), f);
    }

    #[test]
    fn inverse_roundtrip() {
        let t = Truncation::new(4, 4);
        let f = BiSeries::one().add(&BiSeries::y()).add(&BiSeries::monomial(1, 2, q(3, 1))).truncate(t);
        let g = f.inverse().unwrap();
        assert_eq!(f.mul(&g), BiSeries::one().truncate(t));
    }

    #[test]
    fn compose_geometric() {
        // f(x, y) = y / (1 - x y) composed with y -> 2y
        let t = Truncation::new(3, 6);
        let f = BiSeries::from_triples((0..4).map(|n| (n, n + 1, q(1, 1))), t);
        let r = BiSeries::y().scale(&q(2, 1));
        let g = f.compose_y(&r).unwrap();
        assert_eq!(g.coeff(2, 3), q(8, 1));
    }

    #[test]
    fn integrate_then_differentiate() {
        let f = BiSeries::from_triples([(0, 0, q(1, 1)), (1, 3, q(2, 3))], Truncation::vertices(3));
        assert_eq!(f.integrate_y().derivative_y(), f);
        assert_eq!(f.integrate_y().coeff(1, 4), q(1, 6));
    }

    #[test]
    fn integrality_tripwire() {
        let f = BiSeries::monomial(2, 1, q(1, 2));
        assert!(matches!(f.check_counts(), Err(Error::Integrality { n: 2, m: 1, .. })));
    }
}
