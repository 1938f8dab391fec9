//! Finite-dimensional commutative unital algebras over ℚ given by structure
//! constants, and the tensor, symmetric and generalized symmetric powers
//! built from them.

mod sym;
mod tensor;

use std::fmt;

use num_traits::{One, Zero};

pub use sym::{mu_map, super_power, symmetric_power, MuMap, PowerKind, SubalgebraSpec};
pub use tensor::{
    distinct_permutations, multisets, orbit_sum, tensor_mul, tensor_power, SparseTensor, Tuple,
};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{from_usize, Q};
use crate::ring::Ring;

/// Default cap on the dimension of any ambient tensor power.
pub const DEFAULT_SIZE_BOUND: usize = 4096;

/// Sparse coordinate vector: `(basis index, nonzero coefficient)` sorted by index.
pub type SparseVec = Vec<(usize, Q)>;

pub(crate) fn sparsify(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn densify(v: &SparseVec, dim: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// An element of an algebra: its coordinate vector in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Q>,
}

impl Element {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A commutative unital algebra given by its multiplication table.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    labels: Vec<String>,
    unit: Vec<Q>,
    /// `table[i][j]` is `e_i · e_j`.
    table: Vec<Vec<SparseVec>>,
}

/// A failed algebra law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Commutativity { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize },
    UnitLaw { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Commutativity { i, j } => write!(f, "e{i}·e{j} != e{j}·e{i}"),
            Violation::Associativity { i, j, k } => {
                write!(f, "(e{i}·e{j})·e{k} != e{i}·(e{j}·e{k})")
            }
            Violation::UnitLaw { i } => write!(f, "1·e{i} != e{i}"),
        }
    }
}

impl AlgebraSpec {
    /// Builds an algebra from a dense table `mul[i][j]` = coordinates of
    /// `e_i e_j`. Shapes are checked here; algebra laws by [`validate_algebra`].
    pub fn from_dense(labels: Vec<String>, unit: Vec<Q>, mul: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Invalid("an algebra needs at least one basis element".into()));
        }
        check_unique(&labels)?;
        if unit.len() != d {
            return Err(Error::DimensionMismatch { expected: d, actual: unit.len() });
        }
        if mul.len() != d {
            return Err(Error::DimensionMismatch { expected: d, actual: mul.len() });
        }
        let mut table = Vec::with_capacity(d);
        for row in &mul {
            if row.len() != d {
                return Err(Error::DimensionMismatch { expected: d, actual: row.len() });
            }
            let mut sparse_row = Vec::with_capacity(d);
            for v in row {
                if v.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, actual: v.len() });
                }
                sparse_row.push(sparsify(v));
            }
            table.push(sparse_row);
        }
        Ok(Self { labels, unit, table })
    }

    pub(crate) fn from_sparse(labels: Vec<String>, unit: Vec<Q>, table: Vec<Vec<SparseVec>>) -> Self {
        Self { labels, unit, table }
    }

    /// ℚ itself, one basis element labelled `1`.
    pub fn ground_field() -> Self {
        Self {
            labels: vec!["1".into()],
            unit: vec![Q::one()],
            table: vec![vec![vec![(0, Q::one())]]],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_ground_field(&self) -> bool {
        self.dim() == 1
    }

    pub fn unit(&self) -> Element {
        Element::new(self.unit.clone())
    }

    pub fn unit_coords(&self) -> &[Q] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        Element::new(v)
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }

    /// `e_i · e_j` as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn dense_table(&self) -> Vec<Vec<Vec<Q>>> {
        let d = self.dim();
        self.table.iter().map(|row| row.iter().map(|v| densify(v, d)).collect()).collect()
    }

    /// Wraps coordinates after checking their length.
    pub fn element(&self, coords: Vec<Q>) -> Result<Element> {
        self.check(&Element::new(coords))
    }

    fn check(&self, u: &Element) -> Result<Element> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: u.dim() });
        }
        Ok(u.clone())
    }

    pub fn checked_mul(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    /// `u^k`, with `u^0` the unit.
    pub fn power(&self, u: &Element, k: usize) -> Result<Element> {
        self.check(u)?;
        Ok(self.pow(u, k))
    }

    /// Matrix of `v ↦ u·v`; column `j` holds `u·e_j`.
    pub fn mult_matrix(&self, u: &Element) -> Matrix {
        let d = self.dim();
        let mut m = linalg::zeros(d, d);
        for j in 0..d {
            let col = self.mul(u, &self.basis(j));
            for (i, c) in col.coords.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m
    }

    /// The inverse of `u`, from the linear system `u·v = 1`.
    pub fn invert(&self, u: &Element) -> Result<Element> {
        self.check(u)?;
        let m = self.mult_matrix(u);
        linalg::solve(&m, &self.unit).map(Element::new).ok_or(Error::SingularElement)
    }

    /// `c · 1` when `u` is a scalar multiple of the unit.
    pub fn as_scalar(&self, u: &Element) -> Option<Q> {
        let (j, uj) = self.unit.iter().enumerate().find(|(_, c)| !c.is_zero())?;
        let c = &u.coords[j] / uj;
        (self.scale(&c, &self.unit()) == *u).then_some(c)
    }
}

fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl Ring for AlgebraSpec {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::new(vec![Q::zero(); self.dim()])
    }

    fn one(&self) -> Element {
        self.unit()
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        debug_assert_eq!(a.dim(), b.dim());
        Element::new(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    fn neg(&self, a: &Element) -> Element {
        Element::new(a.coords.iter().map(|x| -x).collect())
    }

    fn sub(&self, a: &Element, b: &Element) -> Element {
        Element::new(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        debug_assert_eq!(a.dim(), self.dim());
        debug_assert_eq!(b.dim(), self.dim());
        let mut out = vec![Q::zero(); self.dim()];
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let w = ai * bj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &w * c;
                }
            }
        }
        Element::new(out)
    }

    fn scale(&self, c: &Q, a: &Element) -> Element {
        Element::new(a.coords.iter().map(|x| c * x).collect())
    }

    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
}

/// Every failed commutativity, associativity or unit law, in index order.
pub fn validate_algebra(spec: &AlgebraSpec) -> Vec<Violation> {
    let d = spec.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if spec.table[i][j] != spec.table[j][i] {
                out.push(Violation::Commutativity { i, j });
            }
        }
    }
    let basis = spec.basis_elements();
    let products: Vec<Vec<Element>> = (0..d)
        .map(|i| (0..d).map(|j| Element::new(densify(&spec.table[i][j], d))).collect())
        .collect();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let left = spec.mul(&products[i][j], &basis[k]);
                let right = spec.mul(&basis[i], &products[j][k]);
                if left != right {
                    out.push(Violation::Associativity { i, j, k });
                }
            }
        }
    }
    let unit = spec.unit();
    for (i, e) in basis.iter().enumerate() {
        if spec.mul(&unit, e) != *e {
            out.push(Violation::UnitLaw { i });
        }
    }
    out
}

/// `C(X)` for a finite set `X`: delta basis, pointwise product.
pub fn function_algebra<S: AsRef<str>>(points: &[S]) -> Result<AlgebraSpec> {
    if points.is_empty() {
        return Err(Error::Invalid("a point set must be nonempty".into()));
    }
    let labels: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
    check_unique(&labels)?;
    let d = labels.len();
    let table = (0..d)
        .map(|i| (0..d).map(|j| if i == j { vec![(i, Q::one())] } else { Vec::new() }).collect())
        .collect();
    Ok(AlgebraSpec { labels, unit: vec![Q::one(); d], table })
}

/// `ℚ[x]/(x^m)` with basis `1, x, …, x^{m-1}`.
pub fn truncated_polynomial(m: usize) -> Result<AlgebraSpec> {
    if m == 0 {
        return Err(Error::Invalid("ℚ[x]/(x^0) is the zero ring".into()));
    }
    let labels = (0..m)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    let table = (0..m)
        .map(|i| (0..m).map(|j| if i + j < m { vec![(i + j, Q::one())] } else { Vec::new() }).collect())
        .collect();
    let mut unit = vec![Q::zero(); m];
    unit[0] = Q::one();
    Ok(AlgebraSpec { labels, unit, table })
}

pub(crate) fn check_size(required: usize, bound: usize) -> Result<()> {
    if required > bound {
        Err(Error::SizeBoundExceeded { required, bound })
    } else {
        Ok(())
    }
}

/// `d^n`, saturating so that huge requests still trip the size bound.
pub(crate) fn power_dim(d: usize, n: usize) -> usize {
    (0..n).fold(1usize, |acc, _| acc.saturating_mul(d))
}

/// `n!` as a rational.
pub(crate) fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * from_usize(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn c3() -> AlgebraSpec {
        function_algebra(&["x", "y", "w"]).unwrap()
    }

    #[test]
    fn shipped_algebras_validate() {
        assert!(validate_algebra(&c3()).is_empty());
        assert!(validate_algebra(&truncated_polynomial(3).unwrap()).is_empty());
        assert!(validate_algebra(&AlgebraSpec::ground_field()).is_empty());
        let one = function_algebra(&["p"]).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(validate_algebra(&one).is_empty());
    }

    #[test]
    fn noncommutative_table_reports_one_violation() {
        let z = || vec![q(0), q(0)];
        // e1·e0 = e1 but e0·e1 = 0; associativity also breaks, commutativity once.
        let mul = vec![vec![vec![q(1), q(0)], z()], vec![vec![q(0), q(1)], z()]];
        let spec = AlgebraSpec::from_dense(vec!["a".into(), "b".into()], vec![q(1), q(0)], mul).unwrap();
        let v = validate_algebra(&spec);
        let comm: Vec<_> = v.iter().filter(|x| matches!(x, Violation::Commutativity { .. })).collect();
        assert_eq!(comm, vec![&Violation::Commutativity { i: 0, j: 1 }]);
    }

    #[test]
    fn pointwise_and_quotient_products() {
        let a = c3();
        assert_eq!(a.mul(&a.basis(0), &a.basis(0)), a.basis(0));
        assert!(a.mul(&a.basis(0), &a.basis(1)).is_zero());
        let sum = a.basis_elements().iter().fold(a.zero(), |acc, e| a.add(&acc, e));
        assert_eq!(sum, a.unit());

        let t = truncated_polynomial(3).unwrap();
        assert!(t.mul(&t.basis(1), &t.basis(2)).is_zero());
        let one_plus_x = t.element(vec![q(1), q(1), q(0)]).unwrap();
        assert_eq!(t.power(&one_plus_x, 2).unwrap(), t.element(vec![q(1), q(2), q(1)]).unwrap());
        assert_eq!(t.power(&one_plus_x, 0).unwrap(), t.unit());
    }

    #[test]
    fn inversion() {
        let t = truncated_polynomial(3).unwrap();
        assert_eq!(t.invert(&t.unit()).unwrap(), t.unit());
        let one_plus_x = t.element(vec![q(1), q(1), q(0)]).unwrap();
        assert_eq!(t.invert(&one_plus_x).unwrap(), t.element(vec![q(1), q(-1), q(1)]).unwrap());
        let a = c3();
        assert_eq!(a.invert(&a.basis(0)), Err(Error::SingularElement));
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let a = c3();
        let bad = Element::new(vec![q(1)]);
        assert!(matches!(a.checked_mul(&a.unit(), &bad), Err(Error::DimensionMismatch { .. })));
        assert!(function_algebra(&["x", "x"]).is_err());
        assert!(function_algebra::<&str>(&[]).is_err());
    }

    #[test]
    fn scalar_detection() {
        let a = c3();
        assert_eq!(a.as_scalar(&a.scale(&q(3), &a.unit())), Some(q(3)));
        assert_eq!(a.as_scalar(&a.basis(0)), None);
    }
}
