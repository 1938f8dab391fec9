use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::tensor::{multisets, orbit_sum, tensor_mul, SparseTensor, Tuple};
use super::{check_size, power_dim, AlgebraSpec, Element, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{format as fmt_q, Q};

/// Which power a [`SubalgebraSpec`] realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    /// `S^n A`, the symmetric tensors in `A^{⊗n}`.
    Symmetric { n: usize },
    /// `S^{p|q} A` inside `S^p A ⊗ S^q A ⊂ A^{⊗(p+q)}`.
    Super { p: usize, q: usize },
}

/// A subalgebra of the tensor power `base^{⊗arity}`.
///
/// Each basis tensor owns a pivot tuple where it has coefficient 1 and every
/// other basis tensor has coefficient 0, so coordinates are read off at the
/// pivots and then checked by reconstruction.
#[derive(Clone, Debug, PartialEq)]
pub struct SubalgebraSpec {
    base: AlgebraSpec,
    kind: PowerKind,
    arity: usize,
    basis: Vec<SparseTensor>,
    pivots: Vec<Tuple>,
    induced: AlgebraSpec,
}

impl SubalgebraSpec {
    fn from_basis(
        base: AlgebraSpec,
        kind: PowerKind,
        arity: usize,
        basis: Vec<SparseTensor>,
        pivots: Vec<Tuple>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let k = basis.len();
        let mut sub = SubalgebraSpec {
            base,
            kind,
            arity,
            basis,
            pivots,
            induced: AlgebraSpec::from_sparse(Vec::new(), Vec::new(), Vec::new()),
        };
        let unit_factors: Vec<&[Q]> = (0..arity).map(|_| sub.base.unit_coords()).collect();
        let unit_tensor = SparseTensor::decomposable(&unit_factors);
        let unit = sub
            .coordinates_of(&unit_tensor)
            .map_err(|_| Error::NotClosed("the unit of the ambient algebra is not in the subspace".into()))?;
        let mut table: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in i..k {
                let prod = tensor_mul(&sub.base, &sub.basis[i], &sub.basis[j]);
                let coords = sub.coordinates_of(&prod).map_err(|_| {
                    Error::NotClosed(format!("product of basis vectors {} and {} leaves the subspace", labels[i], labels[j]))
                })?;
                let sparse = super::sparsify(coords.coords());
                table[i][j] = sparse.clone();
                table[j][i] = sparse;
            }
        }
        sub.induced = AlgebraSpec::from_sparse(labels, unit.into_coords(), table);
        Ok(sub)
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    pub fn kind(&self) -> PowerKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the ambient tensor power.
    pub fn ambient_dim(&self) -> usize {
        power_dim(self.base.dim(), self.arity)
    }

    pub fn basis_tensors(&self) -> &[SparseTensor] {
        &self.basis
    }

    /// The algebra structure in the sub-basis.
    pub fn induced(&self) -> &AlgebraSpec {
        &self.induced
    }

    /// Coordinates of an ambient tensor in the sub-basis; fails when the
    /// tensor is not in the subspace.
    pub fn coordinates_of(&self, t: &SparseTensor) -> Result<Element> {
        let coords: Vec<Q> = self.pivots.iter().map(|p| t.get(p)).collect();
        let back = self.embed_coords(&coords);
        if back != *t {
            return Err(Error::Invalid("tensor does not lie in the subalgebra".into()));
        }
        Ok(Element::new(coords))
    }

    fn embed_coords(&self, coords: &[Q]) -> SparseTensor {
        let mut out = SparseTensor::new();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out.add_scaled(b, c);
            }
        }
        out
    }

    /// The ambient tensor of a subalgebra element.
    pub fn embed(&self, u: &Element) -> SparseTensor {
        self.embed_coords(u.coords())
    }

    /// Basis tensors as dense vectors over `base^{⊗arity}` (tuples in
    /// lexicographic order).
    pub fn dense_basis(&self) -> Vec<Vec<Q>> {
        let d = self.base.dim();
        let n = self.ambient_dim();
        self.basis
            .iter()
            .map(|b| {
                let mut v = vec![Q::zero(); n];
                for (t, c) in b.terms() {
                    v[t.iter().fold(0, |acc, &i| acc * d + i)] = c.clone();
                }
                v
            })
            .collect()
    }

    /// Index of the orbit sum `b_M` for a multiset `M` (symmetric powers only).
    pub fn multiset_index(&self, m: &[usize]) -> Option<usize> {
        let mut sorted = m.to_vec();
        sorted.sort_unstable();
        match self.kind {
            PowerKind::Symmetric { .. } => self.pivots.iter().position(|p| *p == sorted),
            PowerKind::Super { .. } => None,
        }
    }

    /// Pivot tuple of the `i`-th basis tensor (the sorted multiset for `S^n A`).
    pub(crate) fn pivot(&self, i: usize) -> &Tuple {
        &self.pivots[i]
    }
}

fn multiset_label(base: &AlgebraSpec, m: &[usize]) -> String {
    m.iter().map(|&i| base.labels()[i].as_str()).join(",")
}

/// `S^n A`: orbit sums `b_M` over multisets `M` of size `n`, in
/// lexicographic order, with the componentwise product of `A^{⊗n}`.
pub fn symmetric_power(spec: &AlgebraSpec, n: usize, bound: usize) -> Result<SubalgebraSpec> {
    if n == 0 {
        return Err(Error::Invalid("symmetric power needs n ≥ 1".into()));
    }
    check_size(power_dim(spec.dim(), n), bound)?;
    let ms = multisets(spec.dim(), n);
    let basis = ms.iter().map(|m| orbit_sum(m)).collect();
    let labels = ms.iter().map(|m| format!("[{}]", multiset_label(spec, m))).collect();
    SubalgebraSpec::from_basis(spec.clone(), PowerKind::Symmetric { n }, n, basis, ms, labels)
}

/// Basis `b_M ⊗ b_N` of `S^p A ⊗ S^q A`, lexicographic in `(M, N)`.
fn pair_basis(d: usize, p: usize, q: usize) -> Vec<(Tuple, Tuple)> {
    multisets(d, p).into_iter().cartesian_product(multisets(d, q)).collect()
}

fn pair_tensor(m: &[usize], n: &[usize]) -> SparseTensor {
    orbit_sum(m).concat(&orbit_sum(n))
}

/// Multiplies slot `p` with slot `p+q` (1-based) and appends the product.
fn mu_apply(base: &AlgebraSpec, t: &SparseTensor, p: usize, q: usize) -> SparseTensor {
    let mut out = SparseTensor::new();
    for (tuple, c) in t.terms() {
        let mut prefix: Tuple = tuple[..p - 1].to_vec();
        prefix.extend_from_slice(&tuple[p..p + q - 1]);
        for (l, x) in base.basis_product(tuple[p - 1], tuple[p + q - 1]) {
            let mut key = prefix.clone();
            key.push(*l);
            out.add_term(key, c * x);
        }
    }
    out
}

/// Matrix of `μ: S^p A ⊗ S^q A → S^{p-1} A ⊗ S^{q-1} A ⊗ A`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuMap {
    pub domain_labels: Vec<String>,
    pub codomain_labels: Vec<String>,
    /// `codomain × domain`.
    pub matrix: Matrix,
}

pub fn mu_map(spec: &AlgebraSpec, p: usize, q: usize, bound: usize) -> Result<MuMap> {
    if p == 0 || q == 0 {
        return Err(Error::Invalid("μ needs p ≥ 1 and q ≥ 1".into()));
    }
    let d = spec.dim();
    check_size(power_dim(d, p + q), bound)?;
    let domain = pair_basis(d, p, q);
    let codomain: Vec<(Tuple, Tuple, usize)> = pair_basis(d, p - 1, q - 1)
        .into_iter()
        .cartesian_product(0..d)
        .map(|((m, n), l)| (m, n, l))
        .collect();
    let mut matrix = linalg::zeros(codomain.len(), domain.len());
    for (c, (m, n)) in domain.iter().enumerate() {
        let image = mu_apply(spec, &pair_tensor(m, n), p, q);
        for (r, (m2, n2, l)) in codomain.iter().enumerate() {
            let mut key = m2.clone();
            key.extend_from_slice(n2);
            key.push(*l);
            matrix[r][c] = image.get(&key);
        }
    }
    let domain_labels = domain
        .iter()
        .map(|(m, n)| format!("[{}|{}]", multiset_label(spec, m), multiset_label(spec, n)))
        .collect();
    let codomain_labels = codomain
        .iter()
        .map(|(m, n, l)| format!("[{}|{}]⊗{}", multiset_label(spec, m), multiset_label(spec, n), spec.labels()[*l]))
        .collect();
    Ok(MuMap { domain_labels, codomain_labels, matrix })
}

/// `S^{p|q} A = {w ∈ S^p A ⊗ S^q A : μ(w) ∈ S^{p-1} A ⊗ S^{q-1} A ⊗ ℚ·1}`.
///
/// `S^{p|0} A = S^p A` and `S^{0|q} A = S^q A`.
pub fn super_power(spec: &AlgebraSpec, p: usize, q: usize, bound: usize) -> Result<SubalgebraSpec> {
    if p + q == 0 {
        return Err(Error::Invalid("super power needs p + q ≥ 1".into()));
    }
    if p == 0 || q == 0 {
        let mut s = symmetric_power(spec, p + q, bound)?;
        s.kind = PowerKind::Super { p, q };
        return Ok(s);
    }
    let d = spec.dim();
    check_size(power_dim(d, p + q), bound)?;
    let domain = pair_basis(d, p, q);
    let tensors: Vec<SparseTensor> = domain.iter().map(|(m, n)| pair_tensor(m, n)).collect();

    let unit = spec.unit_coords();
    let j0 = unit.iter().position(|c| !c.is_zero()).expect("unit is nonzero");
    // Row (α, l), l ≠ j0: T[α, l] − (u_l / u_j0) T[α, j0] = 0, i.e. the last
    // slot of μ(w) is proportional to the unit.
    let ratios: Vec<Q> = unit.iter().map(|u| u / &unit[j0]).collect();
    let mut rows: BTreeMap<(Tuple, usize), Vec<Q>> = BTreeMap::new();
    let cols = domain.len();
    for (c, t) in tensors.iter().enumerate() {
        let image = mu_apply(spec, t, p, q);
        for (tuple, x) in image.terms() {
            let (alpha, last) = tuple.split_at(tuple.len() - 1);
            let l0 = last[0];
            if l0 != j0 {
                rows.entry((alpha.to_vec(), l0)).or_insert_with(|| vec![Q::zero(); cols])[c] += x;
            } else {
                for l in (0..d).filter(|&l| l != j0) {
                    let row = rows.entry((alpha.to_vec(), l)).or_insert_with(|| vec![Q::zero(); cols]);
                    row[c] -= &ratios[l] * x;
                }
            }
        }
    }
    let constraints: Matrix = rows.into_values().collect();
    let (free, kernel) = if constraints.is_empty() {
        ((0..cols).collect(), linalg::identity(cols))
    } else {
        linalg::kernel_with_free_columns(&constraints, cols)
    };

    let mut basis = Vec::with_capacity(kernel.len());
    let mut labels = Vec::with_capacity(kernel.len());
    for v in &kernel {
        let mut t = SparseTensor::new();
        let mut terms = Vec::new();
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            t.add_scaled(&tensors[c], x);
            let (m, n) = &domain[c];
            let name = format!("[{}|{}]", multiset_label(spec, m), multiset_label(spec, n));
            terms.push(if x.is_one() { name } else { format!("{}{}", fmt_q(x), name) });
        }
        basis.push(t);
        labels.push(terms.join("+"));
    }
    let pivots = free
        .iter()
        .map(|&c| {
            let (m, n) = &domain[c];
            let mut key = m.clone();
            key.extend_from_slice(n);
            key
        })
        .collect();
    SubalgebraSpec::from_basis(spec.clone(), PowerKind::Super { p, q }, p + q, basis, pivots, labels)
}
