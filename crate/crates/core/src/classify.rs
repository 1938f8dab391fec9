//! Deciding whether a linear map is an n-homomorphism or a p|q-homomorphism.
//!
//! The n-homomorphism test is complete: `Φ_{n+1}` is symmetric and
//! multilinear, so it suffices to check it on multisets of basis elements.
//! The p|q test evaluates Hankel determinants of the `ψ_k` on a finite set of
//! sample elements, so a pass is a sampled pass.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{multisets, AlgebraSpec, Element};
use crate::charfn::{char_series, newton_psi, phi_polar, LinMap, PsiTable};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{q, Q};
use crate::ring::{Rationals, Ring};
use crate::series::{poly_series_match, Poly, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Polynomial(usize),
    RationalPQ(usize, usize),
    /// Nothing found within the search bound carried here.
    Undetermined(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Polynomial(n) => write!(f, "polynomial of degree {n}"),
            Verdict::RationalPQ(p, q) => write!(f, "rational of type {p}|{q}"),
            Verdict::Undetermined(n) => write!(f, "undetermined up to {n}"),
        }
    }
}

/// Why a check failed.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `f(1)` differs from the required multiple of the unit.
    UnitImage { expected: Q, actual: Element },
    /// `f(1)` is not a natural-number multiple of the unit.
    UnitNotNatural { actual: Element },
    /// `f(1) = n·1` with `n` beyond the search bound.
    DegreeAboveBound { n: usize },
    /// `Φ_k` is nonzero on these basis indices.
    Phi { tuple: Vec<usize>, value: Element },
    /// The Hankel determinant starting at `ψ_k` is nonzero at `element`.
    Hankel { element: Element, k: isize, value: Element },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::UnitImage { expected, actual } => write!(f, "f(1) = {actual}, expected {expected}·1"),
            Witness::UnitNotNatural { actual } => write!(f, "f(1) = {actual} is not integral"),
            Witness::DegreeAboveBound { n } => write!(f, "f(1) = {n}·1 exceeds the degree bound"),
            Witness::Phi { tuple, value } => {
                write!(f, "Φ_{} at basis indices {tuple:?} is {value}", tuple.len())
            }
            Witness::Hankel { element, k, value } => {
                write!(f, "Hankel determinant at k = {k}, a = {element} is {value}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Pass => None,
            Outcome::Fail(w) => Some(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomClass {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

/// The sample elements used for "for all a" checks: every basis element,
/// every sum of two distinct basis elements, and `samples` pseudo-random
/// rational vectors. Each random vector comes from its own ChaCha stream, so
/// the set does not depend on evaluation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingPolicy {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        Self { samples: 16, seed: 0 }
    }
}

impl SamplingPolicy {
    pub fn elements(&self, alg: &AlgebraSpec) -> Vec<Element> {
        let d = alg.dim();
        let mut out = alg.basis_elements();
        for i in 0..d {
            for j in i + 1..d {
                out.push(alg.add(&alg.basis(i), &alg.basis(j)));
            }
        }
        out.extend((0..self.samples).map(|i| random_element(d, self.seed, i as u64)));
        out
    }
}

/// Coordinates `n/d` with `n ∈ [-9, 9]`, `d ∈ [1, 5]`.
pub fn random_element(dim: usize, seed: u64, stream: u64) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    Element::new(
        (0..dim)
            .map(|_| Q::new(rng.random_range(-9i64..=9).into(), rng.random_range(1i64..=5).into()))
            .collect(),
    )
}

/// `f(1) = n·1_B` and `Φ_{n+1} = 0` on every multiset of `n+1` basis elements.
/// The first failing multiset, in lexicographic order, is the witness.
pub fn check_n_hom(f: &LinMap, n: usize) -> Outcome {
    let b = f.codomain();
    let expected = q(n as i64);
    let actual = f.unit_image();
    if actual != b.from_rational(&expected) {
        return Outcome::Fail(Witness::UnitImage { expected, actual });
    }
    let a = f.domain();
    for tuple in multisets(a.dim(), n + 1) {
        let args: Vec<Element> = tuple.iter().map(|&i| a.basis(i)).collect();
        let value = phi_polar(f, &args).expect("basis elements of the domain");
        if !value.is_zero() {
            return Outcome::Fail(Witness::Phi { tuple, value });
        }
    }
    Outcome::Pass
}

/// `f(1)` as a natural number, when it is one.
fn natural_unit(f: &LinMap) -> std::result::Result<usize, Witness> {
    let actual = f.unit_image();
    f.codomain()
        .as_scalar(&actual)
        .filter(|c| c.is_integer() && !c.is_negative())
        .and_then(|c| c.to_integer().to_usize())
        .ok_or(Witness::UnitNotNatural { actual })
}

/// The degree `n ≤ max_n` for which `f` is an n-homomorphism. Only
/// `n = f(1)` can qualify, so at most one `Φ` check runs.
pub fn detect_poly_degree(f: &LinMap, max_n: usize) -> HomClass {
    let undetermined = |w| HomClass { verdict: Verdict::Undetermined(max_n), witness: Some(w) };
    let n = match natural_unit(f) {
        Ok(n) => n,
        Err(w) => return undetermined(w),
    };
    if n > max_n {
        return undetermined(Witness::DegreeAboveBound { n });
    }
    match check_n_hom(f, n) {
        Outcome::Pass => HomClass { verdict: Verdict::Polynomial(n), witness: None },
        Outcome::Fail(w) => undetermined(w),
    }
}

/// `det [ψ_{k+i+j}]_{0 ≤ i,j ≤ q}` with `ψ` of negative index taken as 0.
pub fn hankel_det(ring: &AlgebraSpec, psis: &PsiTable, k: isize, q: usize) -> Result<Element> {
    let top = k + 2 * q as isize;
    if top > psis.depth() as isize {
        return Err(Error::InsufficientDepth { needed: top as usize, available: psis.depth() });
    }
    let m: Vec<Vec<Element>> = (0..=q)
        .map(|i| (0..=q).map(|j| psis.get(ring, k + (i + j) as isize)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(linalg::determinant(ring, &m))
}

/// Vanishing Hankel determinants for `k ∈ [p−q+1, k_max]` at every sample of
/// the policy, after `f(1) = (p−q)·1_B`.
pub fn check_pq_hom(f: &LinMap, p: usize, q_: usize, k_max: isize, policy: &SamplingPolicy) -> Outcome {
    let b = f.codomain();
    let chi = p as i64 - q_ as i64;
    let expected = q(chi);
    let actual = f.unit_image();
    if actual != b.from_rational(&expected) {
        return Outcome::Fail(Witness::UnitImage { expected, actual });
    }
    let k_min = chi as isize + 1;
    if k_max < k_min {
        return Outcome::Pass;
    }
    let depth = (k_max + 2 * q_ as isize).max(0) as usize;
    for a in policy.elements(f.domain()) {
        let psis = newton_psi(f, &a, depth).expect("sample lies in the domain");
        for k in k_min..=k_max {
            let value = hankel_det(b, &psis, k, q_).expect("table is deep enough");
            if !value.is_zero() {
                return Outcome::Fail(Witness::Hankel { element: a, k, value });
            }
        }
    }
    Outcome::Pass
}

/// Searches polynomial degrees up to `max_n`, then rational types `p|q` with
/// `p − q = f(1)`, `q ≥ 1`, `p + q ≤ max_pq`, by increasing `q`. Without an
/// explicit `k_max` each type is checked up to `k = p + q + 4`.
pub fn classify(f: &LinMap, max_n: usize, max_pq: usize, k_max: Option<isize>, policy: &SamplingPolicy) -> HomClass {
    let poly = detect_poly_degree(f, max_n);
    if matches!(poly.verdict, Verdict::Polynomial(_)) {
        return poly;
    }
    let b = f.codomain();
    let actual = f.unit_image();
    let chi = match b.as_scalar(&actual).filter(|c| c.is_integer()).and_then(|c| c.to_integer().to_i64()) {
        Some(c) => c,
        None => {
            return HomClass { verdict: Verdict::Undetermined(max_pq), witness: Some(Witness::UnitNotNatural { actual }) }
        }
    };
    let mut last = poly.witness;
    for q_ in 1..=max_pq as i64 {
        let p = chi + q_;
        if p < 0 || p + q_ > max_pq as i64 {
            continue;
        }
        let k = k_max.unwrap_or((p + q_ + 4) as isize);
        match check_pq_hom(f, p as usize, q_ as usize, k, policy) {
            Outcome::Pass => {
                return HomClass { verdict: Verdict::RationalPQ(p as usize, q_ as usize), witness: None }
            }
            Outcome::Fail(w) => last = Some(w),
        }
    }
    HomClass { verdict: Verdict::Undetermined(max_pq), witness: last }
}

/// `P / Q` with `Q(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFrac {
    pub numerator: Poly<Q>,
    pub denominator: Poly<Q>,
}

impl PolyFrac {
    /// Value at `z`, or `None` where the denominator vanishes.
    pub fn eval(&self, z: &Q) -> Option<Q> {
        let d = self.denominator.eval(&Rationals, z);
        (!d.is_zero()).then(|| self.numerator.eval(&Rationals, z) / d)
    }

    /// The coefficient of `z^χ` in the expansion at infinity: the leading
    /// ratio when `deg P − deg Q = χ`, zero when it is smaller.
    pub fn coefficient_at_infinity(&self, chi: i64) -> Result<Q> {
        let Some(dp) = self.numerator.degree() else {
            return Ok(Q::zero());
        };
        let dq = self.denominator.degree().expect("denominator has constant term 1");
        let excess = dp as i64 - dq as i64;
        match excess.cmp(&chi) {
            std::cmp::Ordering::Less => Ok(Q::zero()),
            std::cmp::Ordering::Equal => Ok(self.numerator.leading().unwrap() / self.denominator.leading().unwrap()),
            std::cmp::Ordering::Greater => Err(Error::DivisionByZero(format!(
                "growth z^{excess} at infinity exceeds z^{chi}"
            ))),
        }
    }
}

/// Padé form of type `p|q` for `c_0 + c_1 z + … + c_N z^N`.
///
/// All equations `Σ_j Q_j c_{l−j} = 0` for `l = p+1..=N` are solved at once
/// with `Q_0 = 1`; the numerator is the truncated product `Q · c` up to `z^p`.
pub fn pade_reconstruct(coeffs: &[Q], p: usize, q_: usize) -> Result<PolyFrac> {
    let n = coeffs.len().checked_sub(1).ok_or_else(|| Error::Invalid("empty coefficient list".into()))?;
    if n < p + q_ {
        return Err(Error::InsufficientDepth { needed: p + q_, available: n });
    }
    let c = |i: isize| if i < 0 { Q::zero() } else { coeffs[i as usize].clone() };
    let rows: Vec<Vec<Q>> = (p + 1..=n)
        .map(|l| (1..=q_).map(|j| c(l as isize - j as isize)).collect())
        .collect();
    let rhs: Vec<Q> = (p + 1..=n).map(|l| -coeffs[l].clone()).collect();
    let tail = if q_ == 0 {
        rhs.iter().all(Zero::is_zero).then(Vec::new)
    } else {
        linalg::solve(&rows, &rhs)
    };
    let no_solution = Error::NoSolution { p, q: q_, order: n };
    let tail = tail.ok_or(no_solution.clone())?;
    let mut den = vec![q(1)];
    den.extend(tail);
    let num: Vec<Q> = (0..=p)
        .map(|l| (0..=q_.min(l)).fold(Q::zero(), |acc, j| acc + &den[j] * &coeffs[l - j]))
        .collect();
    let frac = PolyFrac { numerator: Poly::new(&Rationals, num), denominator: Poly::new(&Rationals, den) };
    let series = TruncSeries::new(coeffs.to_vec())?;
    if !poly_series_match(&Rationals, &frac.numerator, &frac.denominator, &series) {
        return Err(no_solution);
    }
    Ok(frac)
}

fn scalar_series(f: &LinMap, a: &Element, order: usize) -> Result<Vec<Q>> {
    if !f.codomain().is_ground_field() {
        return Err(Error::AlgebraMismatch("the rational Berezinian needs a scalar codomain".into()));
    }
    Ok(char_series(f, a, order)?.into_coeffs().into_iter().map(|e| e.coords()[0].clone()).collect())
}

/// `ber(f, a)`: the coefficient of `z^{p−q}` at infinity of the Padé form of
/// `R(f, a, z)` of type `p|q`.
pub fn berezinian_rational(f: &LinMap, a: &Element, p: usize, q_: usize, order: usize) -> Result<Q> {
    let frac = pade_reconstruct(&scalar_series(f, a, order)?, p, q_)?;
    frac.coefficient_at_infinity(p as i64 - q_ as i64)
}

/// `ber(f, a)` as the value at `z = 1` of the Padé form of `R(f, a − 1, z)`,
/// since formally `R(f, a − 1, 1) = exp f(ln a)`.
pub fn berezinian_rational_at_one(f: &LinMap, a: &Element, p: usize, q_: usize, order: usize) -> Result<Q> {
    let alg = f.domain();
    f.apply(a)?;
    let shifted = alg.sub(a, &alg.unit());
    let frac = pade_reconstruct(&scalar_series(f, &shifted, order)?, p, q_)?;
    frac.eval(&q(1)).ok_or_else(|| Error::DivisionByZero("denominator vanishes at z = 1".into()))
}
