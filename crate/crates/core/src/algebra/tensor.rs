use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{check_size, power_dim, AlgebraSpec, SparseVec};
use crate::error::Result;
use crate::rational::Q;

/// Index tuple `(i_1, …, i_n)` naming the basis tensor `e_{i_1} ⊗ … ⊗ e_{i_n}`.
pub type Tuple = Vec<usize>;

/// A tensor in `A^{⊗n}` keyed by basis tuples; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseTensor {
    terms: BTreeMap<Tuple, Q>,
}

impl SparseTensor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<Tuple, Q> {
        &self.terms
    }

    pub fn get(&self, t: &[usize]) -> Q {
        self.terms.get(t).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: Tuple, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseTensor, c: &Q) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), c * x);
        }
    }

    /// `v_1 ⊗ … ⊗ v_n` for coordinate vectors `v_k`.
    pub fn decomposable(factors: &[&[Q]]) -> Self {
        let sparse: Vec<SparseVec> = factors.iter().map(|v| super::sparsify(v)).collect();
        let mut out = Self::new();
        for (t, c) in outer(&sparse) {
            out.add_term(t, c);
        }
        out
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &SparseTensor) -> Self {
        let mut out = Self::new();
        for (t, x) in &self.terms {
            for (u, y) in &other.terms {
                let mut tu = t.clone();
                tu.extend_from_slice(u);
                out.add_term(tu, x * y);
            }
        }
        out
    }
}

/// All `(tuple, product of coefficients)` of the outer product of sparse vectors.
pub(crate) fn outer(factors: &[SparseVec]) -> Vec<(Tuple, Q)> {
    let mut acc: Vec<(Tuple, Q)> = vec![(Vec::with_capacity(factors.len()), Q::one())];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (t, c) in &acc {
            for (i, x) in f {
                let mut t2 = t.clone();
                t2.push(*i);
                next.push((t2, c * x));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Componentwise product in `A^{⊗n}`: `(⊗ e_{t_k})(⊗ e_{u_k}) = ⊗ (e_{t_k} e_{u_k})`.
pub fn tensor_mul(base: &AlgebraSpec, a: &SparseTensor, b: &SparseTensor) -> SparseTensor {
    let mut out = SparseTensor::new();
    for (t, x) in &a.terms {
        for (u, y) in &b.terms {
            debug_assert_eq!(t.len(), u.len());
            let factors: Vec<SparseVec> =
                t.iter().zip(u).map(|(&i, &j)| base.basis_product(i, j).clone()).collect();
            let w = x * y;
            for (tuple, c) in outer(&factors) {
                out.add_term(tuple, &w * c);
            }
        }
    }
    out
}

/// Multisets of size `n` drawn from `0..d`, as sorted tuples in lexicographic order.
pub fn multisets(d: usize, n: usize) -> Vec<Tuple> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..d).combinations_with_replacement(n).collect()
}

/// The distinct rearrangements of `m`, in lexicographic order.
pub fn distinct_permutations(m: &[usize]) -> Vec<Tuple> {
    let mut cur: Tuple = m.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Standard next-permutation walk; equal entries are never swapped past each other.
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]).map(|i| i - 1) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `Σ e_{σ(m)}` over the distinct rearrangements of the multiset `m`.
pub fn orbit_sum(m: &[usize]) -> SparseTensor {
    let mut t = SparseTensor::new();
    for p in distinct_permutations(m) {
        t.add_term(p, Q::one());
    }
    t
}

fn tuple_index(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * d + i)
}

/// `A^{⊗n}` with basis tuples in lexicographic order and componentwise product.
pub fn tensor_power(spec: &AlgebraSpec, n: usize, bound: usize) -> Result<AlgebraSpec> {
    if n == 0 {
        return Err(crate::error::Error::Invalid("tensor power needs n ≥ 1".into()));
    }
    let d = spec.dim();
    let dim = power_dim(d, n);
    check_size(dim, bound)?;
    let tuples: Vec<Tuple> = (0..n).map(|_| 0..d).multi_cartesian_product().collect();
    let labels = tuples
        .iter()
        .map(|t| t.iter().map(|&i| spec.labels()[i].as_str()).join("⊗"))
        .collect();
    let table = tuples
        .iter()
        .map(|t| {
            tuples
                .iter()
                .map(|u| {
                    let factors: Vec<SparseVec> =
                        t.iter().zip(u).map(|(&i, &j)| spec.basis_product(i, j).clone()).collect();
                    let mut v: SparseVec =
                        outer(&factors).into_iter().map(|(tu, c)| (tuple_index(&tu, d), c)).collect();
                    v.sort_by_key(|(i, _)| *i);
                    v
                })
                .collect()
        })
        .collect();
    let unit_factors: Vec<&[Q]> = (0..n).map(|_| spec.unit_coords()).collect();
    let unit_tensor = SparseTensor::decomposable(&unit_factors);
    let mut unit = vec![Q::zero(); dim];
    for (t, c) in unit_tensor.terms() {
        unit[tuple_index(t, d)] = c.clone();
    }
    Ok(AlgebraSpec::from_sparse(labels, unit, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{function_algebra, validate_algebra};
    use crate::ring::Ring;

    #[test]
    fn multisets_and_orbits() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(multisets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(distinct_permutations(&[1, 0, 1]), vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(distinct_permutations(&[0, 1, 2]).len(), 6);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }

    #[test]
    fn first_tensor_power_is_identity() {
        let a = function_algebra(&["x", "y", "w"]).unwrap();
        let t = tensor_power(&a, 1, 4096).unwrap();
        assert_eq!(t.dense_table(), a.dense_table());
        assert_eq!(t.unit(), a.unit());
    }

    #[test]
    fn square_of_two_points_is_four_points() {
        let a = function_algebra(&["x", "y"]).unwrap();
        let t = tensor_power(&a, 2, 4096).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(validate_algebra(&t).is_empty());
        let c4 = function_algebra(&["xx", "xy", "yx", "yy"]).unwrap();
        assert_eq!(t.dense_table(), c4.dense_table());
        assert_eq!(t.unit(), c4.unit());
    }

    #[test]
    fn componentwise_law_on_basis() {
        let a = crate::algebra::truncated_polynomial(2).unwrap();
        let t = tensor_power(&a, 2, 4096).unwrap();
        // (x⊗1)(1⊗x) = x⊗x ; (x⊗1)(x⊗1) = 0
        let x1 = t.basis(2);
        let one_x = t.basis(1);
        assert_eq!(t.mul(&x1, &one_x), t.basis(3));
        assert!(t.mul(&x1, &x1).is_zero());
    }

    #[test]
    fn size_bound() {
        let a = function_algebra(&["x", "y", "w"]).unwrap();
        assert!(tensor_power(&a, 3, 26).is_err());
        assert!(tensor_power(&a, 3, 27).is_ok());
    }
}
