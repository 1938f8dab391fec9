//! n-homomorphisms `A → B` and algebra homomorphisms `S^n A → B`.
//!
//! With `L(a) = diag(a⊗1⊗…⊗1, 1⊗a⊗…⊗1, …)`, an algebra homomorphism
//! `F: S^n A → B` gives the n-homomorphism `f_F(a) = F(Tr L(a))`, and an
//! n-homomorphism `f` gives `F_f = (1/n!) Φ_n` restricted to symmetric
//! tensors. The two constructions are mutually inverse.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::Zero;

use crate::algebra::{factorial, AlgebraSpec, Element, PowerKind, SparseTensor, SubalgebraSpec};
use crate::charfn::{phi_polar, LinMap};
use crate::classify::{check_n_hom, Outcome};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::ring::Ring;
use crate::series::Poly;

fn arity(s: &SubalgebraSpec) -> Result<usize> {
    match s.kind() {
        PowerKind::Symmetric { n } => Ok(n),
        PowerKind::Super { .. } => Err(Error::AlgebraMismatch("expected a symmetric power".into())),
    }
}

fn check_base(s: &SubalgebraSpec, a: &Element) -> Result<()> {
    if a.dim() != s.base().dim() {
        return Err(Error::DimensionMismatch { expected: s.base().dim(), actual: a.dim() });
    }
    Ok(())
}

/// `e_k(a) = Σ_{|S|=k} (a in the slots of S, 1 elsewhere)` in the
/// orbit-sum basis of `S^n A`.
pub fn elementary_tensor(s: &SubalgebraSpec, a: &Element, k: usize) -> Result<Element> {
    let n = arity(s)?;
    check_base(s, a)?;
    if k > n {
        return Ok(s.induced().zero());
    }
    let one = s.base().unit_coords();
    let mut t = SparseTensor::new();
    for slots in (0..n).combinations(k) {
        let factors: Vec<&[Q]> = (0..n).map(|i| if slots.contains(&i) { a.coords() } else { one }).collect();
        t.add_scaled(&SparseTensor::decomposable(&factors), &Q::from_integer(1.into()));
    }
    s.coordinates_of(&t)
}

/// `Tr L(a) = Σ_i 1⊗…⊗a⊗…⊗1`.
pub fn trace_l(s: &SubalgebraSpec, a: &Element) -> Result<Element> {
    elementary_tensor(s, a, 1)
}

/// `det(1 + L(a) z) = Σ_k e_k(a) z^k`, a polynomial of degree `n` over `S^n A`.
pub fn det_one_plus_lz(s: &SubalgebraSpec, a: &Element) -> Result<Poly<Element>> {
    let n = arity(s)?;
    let coeffs = (0..=n).map(|k| elementary_tensor(s, a, k)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(s.induced(), coeffs))
}

/// Where a claimed homomorphism `S^n A → B` fails.
#[derive(Clone, Debug, PartialEq)]
pub enum HomViolation {
    Unit { actual: Element },
    Product { i: usize, j: usize, image_of_product: Element, product_of_images: Element },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Unit { actual } => write!(f, "F(1) = {actual} is not the unit"),
            HomViolation::Product { i, j, image_of_product, product_of_images } => write!(
                f,
                "F(b{i}·b{j}) = {image_of_product} but F(b{i})·F(b{j}) = {product_of_images}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verification {
    Unchecked,
    Passed,
    Failed(HomViolation),
}

/// A linear map `S^n A → B` in the orbit-sum basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SymHom {
    source: Arc<SubalgebraSpec>,
    target: Arc<AlgebraSpec>,
    matrix: Matrix,
    verification: Verification,
}

impl SymHom {
    pub fn new(source: Arc<SubalgebraSpec>, target: Arc<AlgebraSpec>, matrix: Matrix) -> Result<Self> {
        arity(&source)?;
        if matrix.len() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), actual: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != source.dim()) {
            return Err(Error::DimensionMismatch { expected: source.dim(), actual: row.len() });
        }
        Ok(Self { source, target, matrix, verification: Verification::Unchecked })
    }

    pub fn source(&self) -> &Arc<SubalgebraSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraSpec> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.source.arity()
    }

    pub fn verification(&self) -> &Verification {
        &self.verification
    }

    /// Runs [`verify_hom`] and records the result.
    pub fn verified(mut self) -> Self {
        self.verification = match verify_hom(&self) {
            None => Verification::Passed,
            Some(v) => Verification::Failed(v),
        };
        self
    }

    pub fn apply(&self, u: &Element) -> Result<Element> {
        if u.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch { expected: self.source.dim(), actual: u.dim() });
        }
        Ok(Element::new(linalg::mat_vec(&self.matrix, u.coords())))
    }

    fn apply_unchecked(&self, u: &Element) -> Element {
        Element::new(linalg::mat_vec(&self.matrix, u.coords()))
    }
}

/// `F(1) = 1_B` and `F(b_i b_j) = F(b_i) F(b_j)` over all basis pairs
/// `i ≤ j`. `None` when all hold; otherwise the first failure.
pub fn verify_hom(f: &SymHom) -> Option<HomViolation> {
    let s = f.source.induced();
    let b = &f.target;
    let actual = f.apply_unchecked(&s.unit());
    if actual != b.unit() {
        return Some(HomViolation::Unit { actual });
    }
    let images: Vec<Element> = (0..s.dim()).map(|i| f.apply_unchecked(&s.basis(i))).collect();
    for i in 0..s.dim() {
        for j in i..s.dim() {
            let image_of_product = f.apply_unchecked(&s.mul(&s.basis(i), &s.basis(j)));
            let product_of_images = b.mul(&images[i], &images[j]);
            if image_of_product != product_of_images {
                return Some(HomViolation::Product { i, j, image_of_product, product_of_images });
            }
        }
    }
    None
}

/// `f_F(a) = F(Tr L(a))`.
pub fn nhom_from_sym(f: &SymHom) -> LinMap {
    let s = &f.source;
    let base = s.base();
    let images: Vec<Element> = (0..base.dim())
        .map(|j| f.apply_unchecked(&trace_l(s, &base.basis(j)).expect("basis element of the base")))
        .collect();
    LinMap::from_images(Arc::new(base.clone()), f.target.clone(), &images).expect("shapes agree")
}

/// `F_f(b_M) = |orbit of M| · Φ_n(e_M) / n!`, after confirming that `f` is an
/// n-homomorphism. The result is verified before it is returned.
pub fn sym_from_nhom(f: &LinMap, n: usize, bound: usize) -> Result<SymHom> {
    if n == 0 {
        return Err(Error::Invalid("the correspondence needs n ≥ 1".into()));
    }
    if let Outcome::Fail(w) = check_n_hom(f, n) {
        return Err(Error::NotNHom { n, reason: w.to_string() });
    }
    let a = f.domain();
    let s = Arc::new(crate::algebra::symmetric_power(a, n, bound)?);
    let columns: Vec<Element> = (0..s.dim())
        .map(|i| {
            let m = s.pivot(i);
            let args: Vec<Element> = m.iter().map(|&k| a.basis(k)).collect();
            let phi = phi_polar(f, &args).expect("basis elements of the domain");
            // |orbit| / n! = 1 / Π (multiplicity)!
            let denom = m
                .iter()
                .chunk_by(|&&k| k)
                .into_iter()
                .fold(Q::from_integer(1.into()), |acc, (_, g)| acc * factorial(g.count()));
            f.codomain().scale(&denom.recip(), &phi)
        })
        .collect();
    let cols: Matrix = columns.into_iter().map(Element::into_coords).collect();
    Ok(SymHom::new(s, f.codomain().clone(), linalg::transpose(&cols))?.verified())
}

/// `F(t) = Σ_τ t_τ Π_k χ_k(e_{τ_k})` for homomorphisms `χ_1, …, χ_n: A → B`.
/// With point evaluations this is evaluation at a point of `X^n / S_n`.
pub fn product_evaluation(s: Arc<SubalgebraSpec>, homs: &[LinMap]) -> Result<SymHom> {
    let n = arity(&s)?;
    if homs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: homs.len() });
    }
    let target = homs[0].codomain().clone();
    let images: Vec<Vec<Element>> = homs
        .iter()
        .map(|h| (0..s.base().dim()).map(|j| h.apply(&s.base().basis(j))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let columns: Vec<Vec<Q>> = s
        .basis_tensors()
        .iter()
        .map(|t| {
            let mut acc = target.zero();
            for (tuple, c) in t.terms() {
                let prod = tuple
                    .iter()
                    .enumerate()
                    .fold(target.unit(), |p, (k, &i)| target.mul(&p, &images[k][i]));
                acc = target.add(&acc, &target.scale(c, &prod));
            }
            acc.into_coords()
        })
        .collect();
    Ok(SymHom::new(s, target, linalg::transpose(&columns))?.verified())
}

/// Entries where two matrices of the same shape differ.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripReport {
    pub original: Matrix,
    pub recovered: Matrix,
    pub discrepancies: Vec<(usize, usize, Q, Q)>,
}

impl RoundtripReport {
    fn compare(original: Matrix, recovered: Matrix) -> Self {
        let mut discrepancies = Vec::new();
        for (i, (r, s)) in original.iter().zip(&recovered).enumerate() {
            for (j, (x, y)) in r.iter().zip(s).enumerate() {
                if x != y {
                    discrepancies.push((i, j, x.clone(), y.clone()));
                }
            }
        }
        if original.len() != recovered.len() {
            discrepancies.push((original.len().min(recovered.len()), 0, Q::zero(), Q::zero()));
        }
        Self { original, recovered, discrepancies }
    }

    pub fn is_exact(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// `f ↦ F_f ↦ f_{F_f}`.
pub fn roundtrip_nhom(f: &LinMap, n: usize, bound: usize) -> Result<RoundtripReport> {
    let big = sym_from_nhom(f, n, bound)?;
    let back = nhom_from_sym(&big);
    Ok(RoundtripReport::compare(f.matrix().clone(), back.matrix().clone()))
}

/// `F ↦ f_F ↦ F_{f_F}`.
pub fn roundtrip_sym(f: &SymHom, bound: usize) -> Result<RoundtripReport> {
    let small = nhom_from_sym(f);
    let back = sym_from_nhom(&small, f.n(), bound)?;
    Ok(RoundtripReport::compare(f.matrix().clone(), back.matrix().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{function_algebra, symmetric_power, truncated_polynomial, DEFAULT_SIZE_BOUND};
    use crate::charfn::{char_series, combine_homs, newton_psi};
    use crate::rational::{frac, q};
    use crate::series::TruncSeries;

    fn c(n: usize) -> Arc<AlgebraSpec> {
        let names = ["x", "y", "w", "v"];
        Arc::new(function_algebra(&names[..n]).unwrap())
    }

    fn sym(a: &AlgebraSpec, n: usize) -> Arc<SubalgebraSpec> {
        Arc::new(symmetric_power(a, n, DEFAULT_SIZE_BOUND).unwrap())
    }

    fn ev(a: &Arc<AlgebraSpec>, i: usize) -> LinMap {
        LinMap::point_evaluation(a.clone(), i)
    }

    #[test]
    fn trace_examples() {
        let a = c(2);
        let s1 = sym(&a, 1);
        let u = a.element(vec![q(3), frac(1, 2)]).unwrap();
        assert_eq!(trace_l(&s1, &u).unwrap(), u);

        let s2 = sym(&a, 2);
        // basis order [x,x], [x,y], [y,y]
        assert_eq!(trace_l(&s2, &a.basis(0)).unwrap().coords(), &[q(2), q(1), q(0)]);
        for n in 1..=3 {
            let s = sym(&a, n);
            let t = trace_l(&s, &a.unit()).unwrap();
            assert_eq!(t, s.induced().scale(&q(n as i64), &s.induced().unit()));
        }
    }

    #[test]
    fn det_examples() {
        let a = Arc::new(truncated_polynomial(3).unwrap());
        let u = a.element(vec![q(2), q(-1), frac(1, 3)]).unwrap();
        let s1 = sym(&a, 1);
        let d1 = det_one_plus_lz(&s1, &u).unwrap();
        assert_eq!(d1.coeffs(), &[a.unit(), u.clone()]);

        let s2 = sym(&a, 2);
        let d2 = det_one_plus_lz(&s2, &u).unwrap();
        let one = a.unit_coords();
        let a_one = SparseTensor::decomposable(&[u.coords(), one]);
        let mut lin = SparseTensor::decomposable(&[one, u.coords()]);
        lin.add_scaled(&a_one, &q(1));
        assert_eq!(d2.coeff(s2.induced(), 1), s2.coordinates_of(&lin).unwrap());
        let top = SparseTensor::decomposable(&[u.coords(), u.coords()]);
        assert_eq!(d2.coeff(s2.induced(), 2), s2.coordinates_of(&top).unwrap());
    }

    #[test]
    fn newton_relations_between_traces_and_elementary_tensors() {
        let a = c(3);
        let s = sym(&a, 3);
        let r = s.induced();
        let u = a.element(vec![q(2), frac(-1, 2), q(5)]).unwrap();
        let p: Vec<Element> = (0..=3).map(|j| trace_l(&s, &a.power(&u, j).unwrap()).unwrap()).collect();
        let e: Vec<Element> = (0..=3).map(|k| elementary_tensor(&s, &u, k).unwrap()).collect();
        for k in 1..=3 {
            let mut acc = r.zero();
            for j in 1..=k {
                let t = r.mul(&p[j], &e[k - j]);
                acc = if j % 2 == 1 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
            }
            assert_eq!(r.scale(&q(k as i64), &e[k]), acc, "k = {k}");
        }
    }

    #[test]
    fn f_from_big_f_examples() {
        let a = c(2);
        let s1 = sym(&a, 1);
        let id = SymHom::new(s1, a.clone(), linalg::identity(2)).unwrap().verified();
        assert_eq!(id.verification(), &Verification::Passed);
        assert_eq!(nhom_from_sym(&id), LinMap::identity(a.clone()));

        let s2 = sym(&a, 2);
        let big = product_evaluation(s2.clone(), &[ev(&a, 0), ev(&a, 1)]).unwrap();
        assert_eq!(big.verification(), &Verification::Passed);
        let f = nhom_from_sym(&big);
        assert_eq!(f, combine_homs(&[(1, ev(&a, 0)), (1, ev(&a, 1))]).unwrap().map);
        assert!(check_n_hom(&f, 2).is_pass());
    }

    #[test]
    fn big_f_from_f_examples() {
        let a = c(2);
        let f1 = ev(&a, 1);
        let big1 = sym_from_nhom(&f1, 1, DEFAULT_SIZE_BOUND).unwrap();
        assert_eq!(big1.matrix(), f1.matrix());

        let f = combine_homs(&[(1, ev(&a, 0)), (1, ev(&a, 1))]).unwrap().map;
        let big = sym_from_nhom(&f, 2, DEFAULT_SIZE_BOUND).unwrap();
        assert_eq!(big.verification(), &Verification::Passed);
        assert_eq!(big.matrix(), &vec![vec![q(0), q(1), q(0)]]);

        assert!(matches!(sym_from_nhom(&f, 1, DEFAULT_SIZE_BOUND), Err(Error::NotNHom { n: 1, .. })));
        let b = c(3);
        let g = combine_homs(&[(1, ev(&b, 0)), (-1, ev(&b, 1)), (2, ev(&b, 2))]).unwrap().map;
        assert!(matches!(sym_from_nhom(&g, 2, DEFAULT_SIZE_BOUND), Err(Error::NotNHom { n: 2, .. })));
    }

    #[test]
    fn perturbation_is_detected() {
        let a = c(3);
        let f = combine_homs(&[(1, ev(&a, 0)), (1, ev(&a, 2))]).unwrap().map;
        let big = sym_from_nhom(&f, 2, DEFAULT_SIZE_BOUND).unwrap();
        for j in 0..big.source().dim() {
            let mut m = big.matrix().clone();
            m[0][j] += q(1);
            let bad = SymHom::new(big.source().clone(), big.target().clone(), m).unwrap();
            assert!(verify_hom(&bad).is_some(), "entry {j}");
        }
    }

    #[test]
    fn algebra_homomorphisms_in_degree_one() {
        let a = c(2);
        let s1 = sym(&a, 1);
        let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert!(verify_hom(&SymHom::new(s1.clone(), a.clone(), swap).unwrap()).is_none());
        let collapse = vec![vec![q(1), q(0)], vec![q(1), q(0)]];
        assert!(verify_hom(&SymHom::new(s1, a.clone(), collapse).unwrap()).is_none());
        let bad = vec![vec![q(1), q(1)], vec![q(0), q(0)]];
        let s1 = sym(&a, 1);
        assert!(matches!(
            verify_hom(&SymHom::new(s1, a.clone(), bad).unwrap()),
            Some(HomViolation::Unit { .. })
        ));
    }

    #[test]
    fn characteristic_function_transfer() {
        let a = c(3);
        let s = sym(&a, 3);
        let big = product_evaluation(s.clone(), &[ev(&a, 0), ev(&a, 0), ev(&a, 2)]).unwrap();
        let f = nhom_from_sym(&big);
        let u = a.element(vec![q(2), q(7), frac(-1, 3)]).unwrap();
        let det = det_one_plus_lz(&s, &u).unwrap();
        let image: Vec<Element> = (0..=3).map(|k| big.apply(&det.coeff(s.induced(), k)).unwrap()).collect();
        assert_eq!(TruncSeries::new(image).unwrap(), char_series(&f, &u, 3).unwrap());
        // F(a^{⊗n}) = ψ_n(a)
        let top = det.coeff(s.induced(), 3);
        assert_eq!(big.apply(&top).unwrap(), newton_psi(&f, &u, 3).unwrap().values[3]);
    }

    #[test]
    fn roundtrips() {
        let a = c(2);
        let f = combine_homs(&[(1, ev(&a, 0)), (1, ev(&a, 1))]).unwrap().map;
        assert!(roundtrip_nhom(&f, 2, DEFAULT_SIZE_BOUND).unwrap().is_exact());
        let big = product_evaluation(sym(&a, 2), &[ev(&a, 0), ev(&a, 1)]).unwrap();
        assert!(roundtrip_sym(&big, DEFAULT_SIZE_BOUND).unwrap().is_exact());
        let id = LinMap::identity(a.clone());
        assert!(roundtrip_nhom(&id, 1, DEFAULT_SIZE_BOUND).unwrap().is_exact());
    }
}
