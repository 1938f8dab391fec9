//! Linear maps between algebras and their characteristic functions.
//!
//! For `f: A → B` and `a ∈ A`,
//! `R(f, a, z) = exp f(ln(1 + a z)) = 1 + ψ_1(a) z + ψ_2(a) z² + …`,
//! where the `ψ_k` are the Newton polynomials in the moments `s_k = f(a^k)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{q, Q};
use crate::ring::Ring;
use crate::series::{series_exp, series_log1p, TruncSeries};

/// A linear map `A → B` as a `(dim B) × (dim A)` matrix. No multiplicativity
/// is assumed.
#[derive(Clone, Debug)]
pub struct LinMap {
    domain: Arc<AlgebraSpec>,
    codomain: Arc<AlgebraSpec>,
    matrix: Matrix,
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.domain, &other.domain)
            && same_algebra(&self.codomain, &other.codomain)
            && self.matrix == other.matrix
    }
}

pub(crate) fn same_algebra(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl LinMap {
    pub fn new(domain: Arc<AlgebraSpec>, codomain: Arc<AlgebraSpec>, matrix: Matrix) -> Result<Self> {
        if matrix.len() != codomain.dim() {
            return Err(Error::DimensionMismatch { expected: codomain.dim(), actual: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != domain.dim()) {
            return Err(Error::DimensionMismatch { expected: domain.dim(), actual: row.len() });
        }
        Ok(Self { domain, codomain, matrix })
    }

    pub fn zero(domain: Arc<AlgebraSpec>, codomain: Arc<AlgebraSpec>) -> Self {
        let matrix = linalg::zeros(codomain.dim(), domain.dim());
        Self { domain, codomain, matrix }
    }

    pub fn identity(a: Arc<AlgebraSpec>) -> Self {
        let matrix = linalg::identity(a.dim());
        Self { domain: a.clone(), codomain: a, matrix }
    }

    /// Linear functional `A → ℚ` given by its values on the basis.
    pub fn functional(domain: Arc<AlgebraSpec>, values: Vec<Q>) -> Result<Self> {
        Self::new(domain, Arc::new(AlgebraSpec::ground_field()), vec![values])
    }

    /// `ev_x: C(X) → ℚ` for the basis point `i` of a function algebra.
    pub fn point_evaluation(domain: Arc<AlgebraSpec>, i: usize) -> Self {
        let mut row = vec![Q::zero(); domain.dim()];
        row[i] = Q::one();
        Self { domain, codomain: Arc::new(AlgebraSpec::ground_field()), matrix: vec![row] }
    }

    /// The linear map that sends basis element `j` to `images[j]`.
    pub fn from_images(domain: Arc<AlgebraSpec>, codomain: Arc<AlgebraSpec>, images: &[Element]) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::DimensionMismatch { expected: domain.dim(), actual: images.len() });
        }
        let cols: Matrix = images.iter().map(|e| e.coords().to_vec()).collect();
        Self::new(domain, codomain, linalg::transpose(&cols))
    }

    pub fn domain(&self) -> &Arc<AlgebraSpec> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<AlgebraSpec> {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if a.dim() != self.domain.dim() {
            return Err(Error::DimensionMismatch { expected: self.domain.dim(), actual: a.dim() });
        }
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &Element) -> Element {
        Element::new(linalg::mat_vec(&self.matrix, a.coords()))
    }

    /// `f(1)`.
    pub fn unit_image(&self) -> Element {
        self.apply_unchecked(&self.domain.unit())
    }

    fn check_parallel(&self, g: &LinMap) -> Result<()> {
        if !same_algebra(&self.domain, &g.domain) || !same_algebra(&self.codomain, &g.codomain) {
            return Err(Error::AlgebraMismatch("maps must share domain and codomain".into()));
        }
        Ok(())
    }

    pub fn add(&self, g: &LinMap) -> Result<LinMap> {
        self.check_parallel(g)?;
        let matrix = self
            .matrix
            .iter()
            .zip(&g.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix })
    }

    pub fn scale(&self, c: &Q) -> LinMap {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| c * x).collect()).collect();
        Self { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix }
    }

    /// `self ∘ g` for `g: A → B` and `self: B → C`.
    pub fn compose(&self, g: &LinMap) -> Result<LinMap> {
        if !same_algebra(&g.codomain, &self.domain) {
            return Err(Error::AlgebraMismatch("codomain of the inner map must be the domain of the outer".into()));
        }
        Ok(Self {
            domain: g.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: linalg::mat_mul(&self.matrix, &g.matrix),
        })
    }
}

/// `ψ_0(a), …, ψ_N(a)` for a fixed map and element.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiTable {
    pub element: Element,
    pub values: Vec<Element>,
}

impl PsiTable {
    pub fn depth(&self) -> usize {
        self.values.len() - 1
    }

    /// `ψ_k`, with `ψ_k = 0` for negative `k`.
    pub fn get(&self, ring: &AlgebraSpec, k: isize) -> Result<Element> {
        if k < 0 {
            return Ok(ring.zero());
        }
        self.values
            .get(k as usize)
            .cloned()
            .ok_or(Error::InsufficientDepth { needed: k as usize, available: self.depth() })
    }
}

/// Moments `s_k = f(a^k)` for `k = 1..=n` (index 0 unused, holds `f(1)`).
fn moments(f: &LinMap, a: &Element, n: usize) -> Vec<Element> {
    let alg = f.domain();
    let mut out = Vec::with_capacity(n + 1);
    let mut power = alg.unit();
    out.push(f.apply_unchecked(&power));
    for _ in 1..=n {
        power = alg.mul(&power, a);
        out.push(f.apply_unchecked(&power));
    }
    out
}

/// Newton recurrence
/// `ψ_{k} = (1/k) Σ_{j=1}^{k} (-1)^{j-1} s_j ψ_{k-j}`, `ψ_0 = 1_B`.
pub fn newton_psi(f: &LinMap, a: &Element, upto: usize) -> Result<PsiTable> {
    f.apply(a)?;
    let b = f.codomain();
    let s = moments(f, a, upto);
    let mut psi = Vec::with_capacity(upto + 1);
    psi.push(b.unit());
    for k in 1..=upto {
        let mut acc = b.zero();
        for j in 1..=k {
            let term = b.mul(&s[j], &psi[k - j]);
            acc = if j % 2 == 1 { b.add(&acc, &term) } else { b.sub(&acc, &term) };
        }
        psi.push(b.scale(&Q::new(1.into(), k.into()), &acc));
    }
    Ok(PsiTable { element: a.clone(), values: psi })
}

/// `R(f, a, z)` to order `N` as `exp` of the termwise image of `ln(1 + a z)`.
pub fn char_series(f: &LinMap, a: &Element, order: usize) -> Result<TruncSeries<Element>> {
    f.apply(a)?;
    let log = series_log1p(f.domain().as_ref(), a, order);
    let image = log.map(|c| f.apply_unchecked(c));
    series_exp(f.codomain().as_ref(), &image)
}

fn psi_k(f: &LinMap, a: &Element, k: usize) -> Element {
    newton_psi(f, a, k).expect("dimensions checked").values.pop().expect("nonempty")
}

fn check_args(f: &LinMap, args: &[Element]) -> Result<()> {
    if args.is_empty() {
        return Err(Error::Invalid("Φ_k needs k ≥ 1 arguments".into()));
    }
    for a in args {
        f.apply(a)?;
    }
    Ok(())
}

/// `Φ_k(a_1, …, a_k) = Σ_{∅≠S⊆[k]} (-1)^{k+|S|} ψ_k(Σ_{i∈S} a_i)`.
pub fn phi_polar(f: &LinMap, args: &[Element]) -> Result<Element> {
    check_args(f, args)?;
    let k = args.len();
    let a = f.domain();
    let b = f.codomain();
    let mut acc = b.zero();
    for mask in 1u64..(1u64 << k) {
        let subset_sum = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .fold(a.zero(), |s, i| a.add(&s, &args[i]));
        let term = psi_k(f, &subset_sum, k);
        let size = mask.count_ones() as usize;
        acc = if (k + size) % 2 == 0 { b.add(&acc, &term) } else { b.sub(&acc, &term) };
    }
    Ok(acc)
}

/// Frobenius recursion
/// `Φ_{k+1}(a_1..a_{k+1}) = Φ_k(a_1..a_k) f(a_{k+1}) − Σ_i Φ_k(a_1, …, a_i a_{k+1}, …, a_k)`,
/// `Φ_1 = f`.
pub fn phi_frobenius(f: &LinMap, args: &[Element]) -> Result<Element> {
    check_args(f, args)?;
    Ok(frobenius(f, args))
}

fn frobenius(f: &LinMap, args: &[Element]) -> Element {
    let k = args.len();
    if k == 1 {
        return f.apply_unchecked(&args[0]);
    }
    let a = f.domain();
    let b = f.codomain();
    let (head, last) = args.split_at(k - 1);
    let last = &last[0];
    let mut acc = b.mul(&frobenius(f, head), &f.apply_unchecked(last));
    for i in 0..k - 1 {
        let mut shifted = head.to_vec();
        shifted[i] = a.mul(&head[i], last);
        acc = b.sub(&acc, &frobenius(f, &shifted));
    }
    acc
}

/// `Σ n_α f_α` with `χ = Σ n_α`, `p = Σ_{n_α>0} n_α`, `q = −Σ_{n_α<0} n_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct CombinedMap {
    pub map: LinMap,
    pub chi: i64,
    pub p: u64,
    pub q: u64,
}

pub fn combine_homs(parts: &[(i64, LinMap)]) -> Result<CombinedMap> {
    let (_, first) = parts.first().ok_or_else(|| Error::Invalid("no maps to combine".into()))?;
    let mut map = LinMap::zero(first.domain.clone(), first.codomain.clone());
    let (mut chi, mut p, mut q_) = (0i64, 0u64, 0u64);
    for (n, f) in parts {
        map = map.add(&f.scale(&q(*n)))?;
        chi += n;
        if *n > 0 {
            p += n.unsigned_abs();
        } else {
            q_ += n.unsigned_abs();
        }
    }
    Ok(CombinedMap { map, chi, p, q: q_ })
}

/// `Σ_{k=0}^{n} ψ_k(a − 1)`, which is `ber_f(a) = ψ_n(a)` when `f` is an
/// n-homomorphism.
pub fn berezinian_nhom(f: &LinMap, a: &Element, n: usize) -> Result<Element> {
    let alg = f.domain();
    f.apply(a)?;
    let shifted = alg.sub(a, &alg.unit());
    let table = newton_psi(f, &shifted, n)?;
    let b = f.codomain();
    Ok(b.sum(table.values.iter()))
}

/// `ψ*_k(a) = ber_f(a) · ψ_{n-k}(a^{-1})` for an n-homomorphism with `χ = n`.
pub fn psi_star(f: &LinMap, a: &Element, k: usize, n: usize) -> Result<Element> {
    if k > n {
        return Err(Error::Invalid(format!("ψ*_{k} needs k ≤ χ = {n}")));
    }
    let inv = f.domain().invert(a)?;
    let ber = berezinian_nhom(f, a, n)?;
    let tail = psi_k(f, &inv, n - k);
    Ok(f.codomain().mul(&ber, &tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{factorial, function_algebra, truncated_polynomial};
    use crate::rational::frac;

    fn c(n: usize) -> Arc<AlgebraSpec> {
        let names = ["x", "y", "w", "v"];
        Arc::new(function_algebra(&names[..n]).unwrap())
    }

    fn ev(a: &Arc<AlgebraSpec>, i: usize) -> LinMap {
        LinMap::point_evaluation(a.clone(), i)
    }

    fn scalar_of(e: &Element) -> Q {
        e.coords()[0].clone()
    }

    #[test]
    fn apply_point_evaluation_and_trace() {
        let a = c(3);
        let f = ev(&a, 0);
        assert_eq!(scalar_of(&f.apply(&a.basis(0)).unwrap()), q(1));
        assert_eq!(scalar_of(&f.apply(&a.basis(1)).unwrap()), q(0));
        let g = ev(&a, 1);
        let u = a.element(vec![q(2), q(3), q(5)]).unwrap();
        let sum = f.add(&g).unwrap();
        assert_eq!(scalar_of(&sum.apply(&u).unwrap()), q(5));

        // trace of a + bx ↦ [[a, b], [0, a]]
        let t = Arc::new(truncated_polynomial(2).unwrap());
        let tr = LinMap::functional(t.clone(), vec![q(2), q(0)]).unwrap();
        assert_eq!(scalar_of(&tr.apply(&t.element(vec![q(1), q(1)]).unwrap()).unwrap()), q(2));
    }

    #[test]
    fn psi_two_unrolled() {
        let a = c(3);
        let f = LinMap::functional(a.clone(), vec![frac(1, 2), q(3), q(-1)]).unwrap();
        let u = a.element(vec![q(1), q(2), frac(1, 3)]).unwrap();
        let t = newton_psi(&f, &u, 2).unwrap();
        let s1 = scalar_of(&f.apply(&u).unwrap());
        let s2 = scalar_of(&f.apply(&a.mul(&u, &u)).unwrap());
        assert_eq!(scalar_of(&t.values[2]), (&s1 * &s1 - s2) / q(2));
    }

    #[test]
    fn homomorphism_has_linear_char_function() {
        let a = c(3);
        let f = ev(&a, 2);
        let u = a.element(vec![q(4), q(-1), q(7)]).unwrap();
        let t = newton_psi(&f, &u, 5).unwrap();
        assert_eq!(scalar_of(&t.values[1]), q(7));
        assert!(t.values[2..].iter().all(Element::is_zero));
    }

    #[test]
    fn two_point_sum() {
        let a = c(3);
        let f = ev(&a, 0).add(&ev(&a, 1)).unwrap();
        let u = a.element(vec![q(3), q(5), q(2)]).unwrap();
        let t = newton_psi(&f, &u, 3).unwrap();
        assert_eq!(scalar_of(&t.values[2]), q(15));
        assert!(t.values[3].is_zero());
    }

    #[test]
    fn char_series_examples() {
        let a = c(2);
        let f = ev(&a, 0).add(&ev(&a, 1).scale(&q(-1))).unwrap();
        let zero = a.zero();
        let r0 = char_series(&f, &zero, 3).unwrap();
        assert_eq!(r0, TruncSeries::one(f.codomain().as_ref(), 3));
        let u = a.element(vec![q(1), q(2)]).unwrap();
        let r = char_series(&f, &u, 3).unwrap();
        let got: Vec<Q> = r.coeffs().iter().map(scalar_of).collect();
        assert_eq!(got, vec![q(1), q(-1), q(2), q(-4)]);

        // R(f, 1, z) = (1 + z)^{f(1)} for a sum of 3 point evaluations
        let b = c(4);
        let g = ev(&b, 0).add(&ev(&b, 1)).unwrap().add(&ev(&b, 3)).unwrap();
        let r1 = char_series(&g, &b.unit(), 5).unwrap();
        let got: Vec<Q> = r1.coeffs().iter().map(scalar_of).collect();
        assert_eq!(got, vec![q(1), q(3), q(3), q(1), q(0), q(0)]);
    }

    #[test]
    fn polarization_identities() {
        let a = c(3);
        let f = LinMap::functional(a.clone(), vec![q(2), q(-1), frac(1, 3)]).unwrap();
        let u = a.element(vec![q(1), frac(1, 2), q(3)]).unwrap();
        let v = a.element(vec![q(0), q(2), q(-1)]).unwrap();
        let b = f.codomain();
        let phi2 = phi_polar(&f, &[u.clone(), v.clone()]).unwrap();
        let expect = b.sub(&b.sub(&psi_k(&f, &a.add(&u, &v), 2), &psi_k(&f, &u, 2)), &psi_k(&f, &v, 2));
        assert_eq!(phi2, expect);
        assert_eq!(phi_frobenius(&f, &[u.clone(), v.clone()]).unwrap(), phi2);
        // Φ_2 = f(a)f(b) - f(ab)
        let direct = b.sub(&b.mul(&f.apply(&u).unwrap(), &f.apply(&v).unwrap()), &f.apply(&a.mul(&u, &v)).unwrap());
        assert_eq!(phi2, direct);
        // Φ_k(a,…,a) = k! ψ_k(a)
        for k in 1..=4 {
            let args = vec![u.clone(); k];
            assert_eq!(phi_polar(&f, &args).unwrap(), b.scale(&factorial(k), &psi_k(&f, &u, k)));
        }
        assert_eq!(phi_polar(&f, &[u.clone()]).unwrap(), f.apply(&u).unwrap());
    }

    #[test]
    fn homomorphism_has_vanishing_phi_two() {
        let a = c(3);
        let f = ev(&a, 1);
        let u = a.element(vec![q(1), q(2), q(3)]).unwrap();
        let v = a.element(vec![q(-2), frac(1, 5), q(0)]).unwrap();
        assert!(phi_frobenius(&f, &[u, v]).unwrap().is_zero());
    }

    #[test]
    fn combine_metadata() {
        let a = c(3);
        let c1 = combine_homs(&[(1, ev(&a, 0))]).unwrap();
        assert_eq!((c1.chi, c1.p, c1.q), (1, 1, 0));
        let c2 = combine_homs(&[(1, ev(&a, 0)), (1, ev(&a, 1)), (-1, ev(&a, 2))]).unwrap();
        assert_eq!((c2.chi, c2.p, c2.q), (1, 2, 1));
        let c3 = combine_homs(&[(2, ev(&a, 0)), (-2, ev(&a, 0))]).unwrap();
        assert_eq!((c3.chi, c3.p, c3.q), (0, 2, 2));
        assert!(c3.map.matrix().iter().flatten().all(Zero::is_zero));
        let other = c(2);
        assert!(combine_homs(&[(1, ev(&a, 0)), (1, ev(&other, 0))]).is_err());
    }

    #[test]
    fn berezinian_of_two_homomorphisms() {
        let a = c(3);
        let f = ev(&a, 0).add(&ev(&a, 1)).unwrap();
        let u = a.element(vec![q(3), frac(-2, 5), q(7)]).unwrap();
        assert_eq!(scalar_of(&berezinian_nhom(&f, &u, 2).unwrap()), frac(-6, 5));
        assert_eq!(scalar_of(&berezinian_nhom(&f, &a.unit(), 2).unwrap()), q(1));

        // trace of the nilpotent representation: ber(1 + x) = det [[1,1],[0,1]] = 1
        let t = Arc::new(truncated_polynomial(2).unwrap());
        let tr = LinMap::functional(t.clone(), vec![q(2), q(0)]).unwrap();
        let one_x = t.element(vec![q(1), q(1)]).unwrap();
        assert_eq!(scalar_of(&berezinian_nhom(&tr, &one_x, 2).unwrap()), q(1));
    }

    #[test]
    fn psi_star_examples() {
        let a = c(2);
        let f = ev(&a, 0).add(&ev(&a, 1)).unwrap();
        let u = a.element(vec![q(3), frac(1, 2)]).unwrap();
        let table = newton_psi(&f, &u, 2).unwrap();
        assert_eq!(psi_star(&f, &u, 2, 2).unwrap(), table.values[2]);
        assert_eq!(scalar_of(&psi_star(&f, &u, 0, 2).unwrap()), q(1));
        assert_eq!(psi_star(&f, &u, 1, 2).unwrap(), table.values[1]);
        assert_eq!(psi_star(&f, &a.basis(0), 1, 2), Err(Error::SingularElement));
    }

    #[test]
    fn composition_and_shape_errors() {
        let a = c(3);
        let b = c(2);
        assert!(LinMap::new(a.clone(), b.clone(), vec![vec![q(1); 3]]).is_err());
        let g = LinMap::new(a.clone(), b.clone(), vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(1)]]).unwrap();
        let f = ev(&b, 1);
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.matrix(), &vec![vec![q(0), q(1), q(1)]]);
        assert!(g.compose(&f).is_err());
        assert!(f.apply(&a.unit()).is_err());
    }
}
