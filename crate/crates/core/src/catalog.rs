//! Ready-made algebras, n-homomorphisms and representations.

use std::sync::Arc;

use crate::algebra::{function_algebra, truncated_polynomial, AlgebraSpec};
use crate::charfn::{combine_homs, LinMap};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::q;
use crate::reps::{trace_map, MatrixRep, SuperRep};

const POINT_NAMES: [&str; 4] = ["x", "y", "w", "v"];

/// Point labels `x, y, w, v, x5, x6, …`.
pub fn point_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| POINT_NAMES.get(i).map_or_else(|| format!("x{}", i + 1), |s| s.to_string()))
        .collect()
}

/// `C(X_n)` on the points of [`point_labels`].
pub fn functions_on(n: usize) -> Arc<AlgebraSpec> {
    Arc::new(function_algebra(&point_labels(n)).expect("labels are unique"))
}

pub fn truncated(m: usize) -> Arc<AlgebraSpec> {
    Arc::new(truncated_polynomial(m).expect("m ≥ 1"))
}

/// Resolves `Q`, `fun:x,y,…`, `fun:N` and `trunc:M`.
pub fn builtin_algebra(name: &str) -> Result<AlgebraSpec> {
    if name == "Q" {
        return Ok(AlgebraSpec::ground_field());
    }
    if let Some(rest) = name.strip_prefix("fun:") {
        if let Ok(n) = rest.parse::<usize>() {
            if n == 0 {
                return Err(Error::Invalid("C(X) needs at least one point".into()));
            }
            return function_algebra(&point_labels(n));
        }
        let pts: Vec<&str> = rest.split(',').map(str::trim).collect();
        return function_algebra(&pts);
    }
    if let Some(rest) = name.strip_prefix("trunc:") {
        let m = rest.parse::<usize>().map_err(|e| Error::Parse(format!("`{name}`: {e}")))?;
        return truncated_polynomial(m);
    }
    Err(Error::UnknownLabel(name.to_string()))
}

/// `(f a)(y) = Σ_k a(φ_k(y))` for maps `φ_k: Y → X` given as index lists.
/// A sum of `n` pullbacks is an n-homomorphism `C(X) → C(Y)`.
pub fn pullback_sum(src: Arc<AlgebraSpec>, dst: Arc<AlgebraSpec>, maps: &[Vec<usize>]) -> Result<LinMap> {
    let mut m = linalg::zeros(dst.dim(), src.dim());
    for phi in maps {
        if phi.len() != dst.dim() {
            return Err(Error::DimensionMismatch { expected: dst.dim(), actual: phi.len() });
        }
        for (y, &x) in phi.iter().enumerate() {
            if x >= src.dim() {
                return Err(Error::DimensionMismatch { expected: src.dim(), actual: x + 1 });
            }
            m[y][x] += q(1);
        }
    }
    LinMap::new(src, dst, m)
}

/// `Σ_i n_i ev_{x_i}` on `C(X)`.
pub fn point_sum(a: &Arc<AlgebraSpec>, parts: &[(i64, usize)]) -> LinMap {
    if parts.is_empty() {
        return LinMap::zero(a.clone(), Arc::new(AlgebraSpec::ground_field()));
    }
    let maps: Vec<(i64, LinMap)> = parts.iter().map(|&(n, i)| (n, LinMap::point_evaluation(a.clone(), i))).collect();
    combine_homs(&maps).expect("same algebra").map
}

#[derive(Clone, Debug)]
pub struct NamedHom {
    pub name: String,
    pub map: LinMap,
    pub n: usize,
}

fn named(name: &str, map: LinMap, n: usize) -> NamedHom {
    NamedHom { name: name.to_string(), map, n }
}

/// The shipped n-homomorphisms, `n ≤ 3`.
pub fn n_homs() -> Vec<NamedHom> {
    let c2 = functions_on(2);
    let c3 = functions_on(3);
    let c4 = functions_on(4);
    let t2 = truncated(2);
    let t3 = truncated(3);
    let mut out = vec![
        named("ev_x on C(X3)", point_sum(&c3, &[(1, 0)]), 1),
        named("ev_x + ev_y on C(X2)", point_sum(&c2, &[(1, 0), (1, 1)]), 2),
        named("ev_x + ev_y on C(X3)", point_sum(&c3, &[(1, 0), (1, 1)]), 2),
        named("2 ev_x on C(X3)", point_sum(&c3, &[(2, 0)]), 2),
        named("ev_x + ev_y + ev_w on C(X3)", point_sum(&c3, &[(1, 0), (1, 1), (1, 2)]), 3),
        named("2 ev_x + ev_v on C(X4)", point_sum(&c4, &[(2, 0), (1, 3)]), 3),
        named("constant term on Q[x]/(x^2)", LinMap::functional(t2.clone(), vec![q(1), q(0)]).unwrap(), 1),
        named("trace of the regular rep of Q[x]/(x^2)", trace_map(&MatrixRep::regular(t2)), 2),
        named("trace of the regular rep of Q[x]/(x^3)", trace_map(&MatrixRep::regular(t3.clone())), 3),
        named("identity on Q[x]/(x^3)", LinMap::identity(t3), 1),
    ];
    out.extend(two_hom_endomorphisms());
    out.push(named(
        "a(φ1 y) + a(φ2 y), C(X3) to C(X2)",
        pullback_sum(c3, c2, &[vec![0, 1], vec![2, 2]]).unwrap(),
        2,
    ));
    out
}

fn two_hom_endomorphisms() -> Vec<NamedHom> {
    let c3 = functions_on(3);
    vec![
        named(
            "a + a∘σ on C(X3), σ cyclic",
            pullback_sum(c3.clone(), c3.clone(), &[vec![0, 1, 2], vec![1, 2, 0]]).unwrap(),
            2,
        ),
        named(
            "a + a(x)·1 on C(X3)",
            pullback_sum(c3.clone(), c3.clone(), &[vec![0, 1, 2], vec![0, 0, 0]]).unwrap(),
            2,
        ),
        named(
            "a∘φ + a∘ψ on C(X3), φ, ψ non-injective",
            pullback_sum(c3.clone(), c3, &[vec![0, 0, 1], vec![2, 1, 1]]).unwrap(),
            2,
        ),
    ]
}

/// Pairs `(f, g)` of shipped 2-homomorphisms with `f ∘ g` defined.
pub fn composable_two_homs() -> Vec<(NamedHom, NamedHom)> {
    let twos: Vec<NamedHom> = n_homs().into_iter().filter(|h| h.n == 2).collect();
    let mut out = Vec::new();
    for f in &twos {
        for g in &twos {
            if g.map.codomain() == f.map.domain() {
                out.push((f.clone(), g.clone()));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct NamedRep {
    pub name: String,
    pub rep: MatrixRep,
}

/// Diagonal representations of `C(X_n)` for `n ≤ 4`, the nilpotent
/// representation of `ℚ[x]/(x²)`, and the regular representation of `ℚ[x]/(x³)`.
pub fn matrix_reps() -> Vec<NamedRep> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let a = functions_on(n);
        let all: Vec<usize> = (0..n).collect();
        out.push(NamedRep { name: format!("diag(X{n})"), rep: MatrixRep::diagonal(a.clone(), &all).unwrap() });
        let repeated = vec![0, 0, n - 1];
        out.push(NamedRep {
            name: format!("diag{repeated:?} on C(X{n})"),
            rep: MatrixRep::diagonal(a, &repeated).unwrap(),
        });
    }
    let t2 = truncated(2);
    let nil = MatrixRep::new(t2, 2, vec![linalg::identity(2), vec![vec![q(0), q(1)], vec![q(0), q(0)]]])
        .expect("x ↦ [[0,1],[0,0]] respects x² = 0");
    out.push(NamedRep { name: "nilpotent on Q[x]/(x^2)".into(), rep: nil });
    out.push(NamedRep { name: "regular on Q[x]/(x^3)".into(), rep: MatrixRep::regular(truncated(3)) });
    out
}

#[derive(Clone, Debug)]
pub struct NamedSuperRep {
    pub name: String,
    pub rep: SuperRep,
}

/// Block-diagonal representations of `C(X3)` of every size `p|q` with
/// `p ≤ 2`, `q ≤ 1`, `p + q ≥ 1`.
pub fn super_reps() -> Vec<NamedSuperRep> {
    let c3 = functions_on(3);
    let blocks: [(&[usize], &[usize]); 6] =
        [(&[0], &[]), (&[], &[2]), (&[0], &[2]), (&[0, 1], &[]), (&[0, 1], &[2]), (&[0, 2], &[2])];
    blocks
        .iter()
        .map(|(plus, minus)| NamedSuperRep {
            name: format!("diag{plus:?} | diag{minus:?} on C(X3)"),
            rep: SuperRep::new(
                MatrixRep::diagonal(c3.clone(), plus).unwrap(),
                MatrixRep::diagonal(c3.clone(), minus).unwrap(),
            )
            .unwrap(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::check_n_hom;

    #[test]
    fn shipped_n_homs_are_n_homs() {
        for h in n_homs() {
            assert!(check_n_hom(&h.map, h.n).is_pass(), "{}", h.name);
        }
    }

    #[test]
    fn builtins() {
        assert!(builtin_algebra("Q").unwrap().is_ground_field());
        assert_eq!(builtin_algebra("fun:a,b").unwrap().labels(), &["a", "b"]);
        assert_eq!(builtin_algebra("fun:3").unwrap().labels(), &["x", "y", "w"]);
        assert_eq!(builtin_algebra("trunc:3").unwrap().dim(), 3);
        assert!(builtin_algebra("fun:a,a").is_err());
        assert!(builtin_algebra("nope").is_err());
        assert_eq!(point_labels(6)[5], "x6");
    }

    #[test]
    fn composable_pairs_exist() {
        assert!(composable_two_homs().len() >= 4);
    }

    #[test]
    fn reps_are_valid() {
        assert_eq!(matrix_reps().len(), 10);
        assert_eq!(super_reps().len(), 6);
    }
}
