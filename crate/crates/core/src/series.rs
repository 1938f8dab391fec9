//! Truncated power series and polynomials in one variable `z` over any
//! commutative carrier.
//!
//! The truncation order is always explicit. Binary operations require equal
//! orders and never extend or shrink them.

use crate::error::{Error, Result};
use crate::rational::{from_usize, Q};
use crate::ring::Ring;

/// `c_0 + c_1 z + … + c_N z^N mod z^{N+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TruncSeries<E> {
    /// Series of order `coeffs.len() - 1`. An empty list is rejected.
    pub fn new(coeffs: Vec<E>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a truncated series needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// Pads (or cuts) `coeffs` to exactly `order + 1` entries.
    pub fn from_prefix<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>, order: usize) -> Self {
        coeffs.resize(order + 1, ring.zero());
        Self { coeffs }
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, order: usize) -> Self {
        Self { coeffs: vec![ring.zero(); order + 1] }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R, order: usize) -> Self {
        Self::constant(ring, ring.one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &E {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Applies `f` to every coefficient (e.g. a linear map between carriers).
    pub fn map<F, T>(&self, f: F) -> TruncSeries<T>
    where
        F: FnMut(&E) -> T,
    {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

fn check_orders<E>(s: &TruncSeries<E>, t: &TruncSeries<E>) -> Result<()> {
    if s.coeffs.len() != t.coeffs.len() {
        return Err(Error::OrderMismatch { left: s.coeffs.len() - 1, right: t.coeffs.len() - 1 });
    }
    Ok(())
}

pub fn series_add<R: Ring>(
    ring: &R,
    s: &TruncSeries<R::Elem>,
    t: &TruncSeries<R::Elem>,
) -> Result<TruncSeries<R::Elem>> {
    check_orders(s, t)?;
    Ok(TruncSeries { coeffs: s.coeffs.iter().zip(&t.coeffs).map(|(a, b)| ring.add(a, b)).collect() })
}

pub fn series_sub<R: Ring>(
    ring: &R,
    s: &TruncSeries<R::Elem>,
    t: &TruncSeries<R::Elem>,
) -> Result<TruncSeries<R::Elem>> {
    check_orders(s, t)?;
    Ok(TruncSeries { coeffs: s.coeffs.iter().zip(&t.coeffs).map(|(a, b)| ring.sub(a, b)).collect() })
}

/// Cauchy product truncated at the common order.
pub fn series_mul<R: Ring>(
    ring: &R,
    s: &TruncSeries<R::Elem>,
    t: &TruncSeries<R::Elem>,
) -> Result<TruncSeries<R::Elem>> {
    check_orders(s, t)?;
    Ok(TruncSeries { coeffs: truncated_product(ring, &s.coeffs, &t.coeffs, s.order()) })
}

/// Coefficients `0..=order` of the product of two coefficient lists.
pub(crate) fn truncated_product<R: Ring>(
    ring: &R,
    a: &[R::Elem],
    b: &[R::Elem],
    order: usize,
) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ring.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if ring.is_zero(bj) {
                continue;
            }
            out[i + j] = ring.add(&out[i + j], &ring.mul(ai, bj));
        }
    }
    out
}

/// `exp(s)` for `s(0) = 0`, via `k e_k = Σ_{j=1}^{k} j s_j e_{k-j}`.
pub fn series_exp<R: Ring>(ring: &R, s: &TruncSeries<R::Elem>) -> Result<TruncSeries<R::Elem>> {
    if !ring.is_zero(&s.coeffs[0]) {
        return Err(Error::NonZeroConstantTerm);
    }
    let n = s.order();
    let mut e = Vec::with_capacity(n + 1);
    e.push(ring.one());
    for k in 1..=n {
        let mut acc = ring.zero();
        for j in 1..=k {
            if ring.is_zero(&s.coeffs[j]) {
                continue;
            }
            let term = ring.mul(&s.coeffs[j], &e[k - j]);
            acc = ring.add(&acc, &ring.scale(&from_usize(j), &term));
        }
        e.push(ring.scale(&Q::new(1.into(), k.into()), &acc));
    }
    Ok(TruncSeries { coeffs: e })
}

/// `ln(1 + a z) = Σ_{k≥1} (-1)^{k+1} a^k z^k / k`, truncated at `order`.
pub fn series_log1p<R: Ring>(ring: &R, a: &R::Elem, order: usize) -> TruncSeries<R::Elem> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(ring.zero());
    let mut power = ring.one();
    for k in 1..=order {
        power = ring.mul(&power, a);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        coeffs.push(ring.scale(&Q::new(sign.into(), k.into()), &power));
    }
    TruncSeries { coeffs }
}

/// A polynomial in `z` with its trailing zero coefficients removed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, k: usize) -> E {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ring.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, z: &E) -> E {
        self.coeffs.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, z), c))
    }

    pub fn to_series<R: Ring<Elem = E>>(&self, ring: &R, order: usize) -> TruncSeries<E> {
        TruncSeries::from_prefix(ring, self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }
}

/// Whether `s` is the expansion of `p / q` to its order, checked as
/// `q · s ≡ p (mod z^{N+1})`.
pub fn poly_series_match<R: Ring>(
    ring: &R,
    p: &Poly<R::Elem>,
    q: &Poly<R::Elem>,
    s: &TruncSeries<R::Elem>,
) -> bool {
    let n = s.order();
    if p.degree().is_some_and(|d| d > n) {
        return false;
    }
    let lhs = truncated_product(ring, &q.coeffs, &s.coeffs, n);
    let rhs = p.to_series(ring, n);
    lhs == rhs.coeffs
}

/// Truncated series over `base` as a ring in its own right, so that
/// determinants of matrices with entries in `base[z]/(z^{N+1})` can be taken.
#[derive(Clone, Debug)]
pub struct SeriesRing<'a, R> {
    pub base: &'a R,
    pub order: usize,
}

impl<R: Ring> Ring for SeriesRing<'_, R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.order + 1]
    }
    fn one(&self) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.base.one();
        v
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        truncated_product(self.base, a, b, self.order)
    }
    fn scale(&self, c: &Q, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.scale(c, x)).collect()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};
    use crate::ring::Rationals;

    fn ser(v: &[Q]) -> TruncSeries<Q> {
        TruncSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn mul_truncates() {
        let s = ser(&[q(1), q(1), q(1)]);
        let t = ser(&[q(1), q(-1), q(0)]);
        assert_eq!(series_mul(&Rationals, &s, &t).unwrap(), ser(&[q(1), q(0), q(0)]));
        let one = TruncSeries::one(&Rationals, 2);
        assert_eq!(series_mul(&Rationals, &s, &one).unwrap(), s);
    }

    #[test]
    fn mul_rejects_order_mismatch() {
        let s = ser(&[q(1), q(1)]);
        let t = ser(&[q(1), q(1), q(1)]);
        assert_eq!(series_mul(&Rationals, &s, &t), Err(Error::OrderMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn exp_of_scalar_and_of_log() {
        let c = frac(2, 3);
        let s = ser(&[q(0), c.clone(), q(0), q(0)]);
        let e = series_exp(&Rationals, &s).unwrap();
        assert_eq!(
            e,
            ser(&[q(1), c.clone(), &c * &c / q(2), &c * &c * &c / q(6)])
        );
        let log = ser(&[q(0), q(1), frac(-1, 2), frac(1, 3)]);
        assert_eq!(series_exp(&Rationals, &log).unwrap(), ser(&[q(1), q(1), q(0), q(0)]));
        assert_eq!(
            series_exp(&Rationals, &TruncSeries::zero(&Rationals, 3)).unwrap(),
            TruncSeries::one(&Rationals, 3)
        );
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert_eq!(series_exp(&Rationals, &ser(&[q(1), q(0)])), Err(Error::NonZeroConstantTerm));
    }

    #[test]
    fn log1p_mercator() {
        assert_eq!(series_log1p(&Rationals, &q(1), 3), ser(&[q(0), q(1), frac(-1, 2), frac(1, 3)]));
        assert_eq!(series_log1p(&Rationals, &q(0), 3), TruncSeries::zero(&Rationals, 3));
    }

    #[test]
    fn rational_match() {
        let p = Poly::new(&Rationals, vec![q(1), q(2)]);
        let one = Poly::new(&Rationals, vec![q(1)]);
        let s = ser(&[q(1), q(2), q(0), q(0), q(0)]);
        assert!(poly_series_match(&Rationals, &p, &one, &s));
        assert!(!poly_series_match(&Rationals, &one, &one, &ser(&[q(1), q(1)])));
        // (1+z)/(1+2z) = 1 - z + 2z² - 4z³
        let p = Poly::new(&Rationals, vec![q(1), q(1)]);
        let d = Poly::new(&Rationals, vec![q(1), q(2)]);
        assert!(poly_series_match(&Rationals, &p, &d, &ser(&[q(1), q(-1), q(2), q(-4)])));
    }

    #[test]
    fn poly_normalizes_and_evaluates() {
        let p = Poly::new(&Rationals, vec![q(1), q(2), q(0), q(0)]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval(&Rationals, &q(3)), q(7));
        assert!(Poly::new(&Rationals, vec![q(0)]).is_zero());
    }
}
