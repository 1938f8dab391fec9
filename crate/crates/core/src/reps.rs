//! Matrix and block-diagonal supermatrix representations as sources of
//! n- and p|q-homomorphisms.
//!
//! For `ρ: A → Mat(n, ℚ)` the trace `f = tr ρ` satisfies
//! `R(f, a, z) = det(1 + ρ(a) z)`; for an even block supermatrix
//! `ρ = ρ₊ ⊕ ρ₋` the supertrace satisfies `R(f, a, z) = det(1 + ρ₊(a) z) / det(1 + ρ₋(a) z)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraSpec, Element};
use crate::charfn::{char_series, LinMap};
use crate::classify::berezinian_rational;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::ring::{Rationals, Ring};
use crate::series::{series_mul, SeriesRing, TruncSeries};

/// `ρ: A → Mat(size, ℚ)` given by the images of the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    source: Arc<AlgebraSpec>,
    size: usize,
    images: Vec<Matrix>,
}

fn mat_add_scaled(acc: &mut Matrix, m: &Matrix, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (r, s) in acc.iter_mut().zip(m) {
        for (x, y) in r.iter_mut().zip(s) {
            *x += c * y;
        }
    }
}

impl MatrixRep {
    /// Checks shapes, `ρ(1) = I`, pairwise commutation, and
    /// `ρ(e_i) ρ(e_j) = ρ(e_i e_j)` on the basis.
    pub fn new(source: Arc<AlgebraSpec>, size: usize, images: Vec<Matrix>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::InvalidRep(format!("{} images for a {}-dimensional algebra", images.len(), source.dim())));
        }
        if images.iter().any(|m| m.len() != size || m.iter().any(|r| r.len() != size)) {
            return Err(Error::InvalidRep(format!("images must be {size}×{size}")));
        }
        let rep = Self { source, size, images };
        if rep.image(&rep.source.unit()) != linalg::identity(size) {
            return Err(Error::InvalidRep("the unit is not sent to the identity".into()));
        }
        let d = rep.source.dim();
        for i in 0..d {
            for j in i..d {
                let lhs = linalg::mat_mul(&rep.images[i], &rep.images[j]);
                if lhs != linalg::mat_mul(&rep.images[j], &rep.images[i]) {
                    return Err(Error::InvalidRep(format!("images of basis elements {i} and {j} do not commute")));
                }
                if lhs != rep.image(&rep.source.mul(&rep.source.basis(i), &rep.source.basis(j))) {
                    return Err(Error::InvalidRep(format!("product of basis elements {i} and {j} is not respected")));
                }
            }
        }
        Ok(rep)
    }

    /// Diagonal representation of `C(X)`: slot `k` carries the point
    /// `points[k]`, so `ρ(a) = diag(a(points[0]), …)`.
    pub fn diagonal(source: Arc<AlgebraSpec>, points: &[usize]) -> Result<Self> {
        let n = points.len();
        let images = (0..source.dim())
            .map(|i| {
                let mut m = linalg::zeros(n, n);
                for (k, &pt) in points.iter().enumerate() {
                    if pt == i {
                        m[k][k] = Q::one();
                    }
                }
                m
            })
            .collect();
        Self::new(source, n, images)
    }

    /// `ρ(a) = ` multiplication by `a` on `A` itself.
    pub fn regular(source: Arc<AlgebraSpec>) -> Self {
        let images = (0..source.dim()).map(|i| source.mult_matrix(&source.basis(i))).collect();
        let size = source.dim();
        Self { source, size, images }
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if self.source != other.source {
            return Err(Error::AlgebraMismatch("representations of different algebras".into()));
        }
        let n = self.size + other.size;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                let mut m = linalg::zeros(n, n);
                for i in 0..self.size {
                    m[i][..self.size].clone_from_slice(&a[i]);
                }
                for i in 0..other.size {
                    m[self.size + i][self.size..].clone_from_slice(&b[i]);
                }
                m
            })
            .collect();
        Ok(Self { source: self.source.clone(), size: n, images })
    }

    pub fn source(&self) -> &Arc<AlgebraSpec> {
        &self.source
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    /// `ρ(a) = Σ a_i ρ(e_i)`.
    pub fn image(&self, a: &Element) -> Matrix {
        let mut m = linalg::zeros(self.size, self.size);
        for (c, img) in a.coords().iter().zip(&self.images) {
            mat_add_scaled(&mut m, img, c);
        }
        m
    }

    pub fn det(&self, a: &Element) -> Q {
        linalg::determinant(&Rationals, &self.image(a))
    }

    /// Coefficients of `det(1 + ρ(a) z)` up to `z^order`.
    pub fn det_one_plus(&self, a: &Element, order: usize) -> TruncSeries<Q> {
        let ring = SeriesRing { base: &Rationals, order };
        let m = self.image(a);
        let entries: Vec<Vec<Vec<Q>>> = (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| {
                        let mut s = ring.zero();
                        if i == j {
                            s[0] = Q::one();
                        }
                        if order >= 1 {
                            s[1] = m[i][j].clone();
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        TruncSeries::new(linalg::determinant(&ring, &entries)).expect("order + 1 coefficients")
    }
}

/// `a ↦ tr ρ(a)`.
pub fn trace_map(rep: &MatrixRep) -> LinMap {
    let row = rep.images.iter().map(|m| (0..rep.size).map(|i| m[i][i].clone()).sum()).collect();
    LinMap::functional(rep.source.clone(), row).expect("one value per basis element")
}

fn scalars(s: TruncSeries<Element>) -> TruncSeries<Q> {
    s.map(|e| e.coords()[0].clone())
}

/// Both sides of an identity between truncated series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesComparison {
    pub lhs: TruncSeries<Q>,
    pub rhs: TruncSeries<Q>,
}

impl SeriesComparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `R(tr ρ, a, z)` against `det(1 + ρ(a) z)` to order `N`.
pub fn verify_det_identity(rep: &MatrixRep, a: &Element, order: usize) -> Result<SeriesComparison> {
    let lhs = scalars(char_series(&trace_map(rep), a, order)?);
    Ok(SeriesComparison { lhs, rhs: rep.det_one_plus(a, order) })
}

/// `ρ₊ ⊕ ρ₋`, an even representation in `Mat(p|q, ℚ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperRep {
    plus: MatrixRep,
    minus: MatrixRep,
}

impl SuperRep {
    pub fn new(plus: MatrixRep, minus: MatrixRep) -> Result<Self> {
        if plus.source != minus.source {
            return Err(Error::AlgebraMismatch("blocks represent different algebras".into()));
        }
        Ok(Self { plus, minus })
    }

    pub fn plus(&self) -> &MatrixRep {
        &self.plus
    }

    pub fn minus(&self) -> &MatrixRep {
        &self.minus
    }

    pub fn source(&self) -> &Arc<AlgebraSpec> {
        &self.plus.source
    }

    /// `(p, q)`, the block sizes.
    pub fn dims(&self) -> (usize, usize) {
        (self.plus.size, self.minus.size)
    }

    /// `Ber ρ(a) = det ρ₊(a) / det ρ₋(a)`.
    pub fn ber(&self, a: &Element) -> Result<Q> {
        let d = self.minus.det(a);
        if d.is_zero() {
            return Err(Error::DivisionByZero("det ρ₋(a) = 0".into()));
        }
        Ok(self.plus.det(a) / d)
    }
}

/// `a ↦ tr ρ₊(a) − tr ρ₋(a)`.
pub fn supertrace_map(rep: &SuperRep) -> LinMap {
    trace_map(&rep.plus).add(&trace_map(&rep.minus).scale(&-Q::one())).expect("same algebra")
}

/// `R(str ρ, a, z) · det(1 + ρ₋(a) z)` against `det(1 + ρ₊(a) z)` to order `N`.
pub fn verify_ber_identity(rep: &SuperRep, a: &Element, order: usize) -> Result<SeriesComparison> {
    let r = scalars(char_series(&supertrace_map(rep), a, order)?);
    let lhs = series_mul(&Rationals, &r, &rep.minus.det_one_plus(a, order))?;
    Ok(SeriesComparison { lhs, rhs: rep.plus.det_one_plus(a, order) })
}

/// The Berezinian of `str ρ` from its rational characteristic function,
/// next to `det ρ₊(a) / det ρ₋(a)`.
pub fn ber_pair(rep: &SuperRep, a: &Element, order: usize) -> Result<(Q, Q)> {
    let (p, q) = rep.dims();
    let from_series = berezinian_rational(&supertrace_map(rep), a, p, q, order)?;
    Ok((from_series, rep.ber(a)?))
}
