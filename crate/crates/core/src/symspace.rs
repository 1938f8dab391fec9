//! Points of `Sym^{p|q} X` for a finite set `X`.
//!
//! A point is a tuple of `p + q` points modulo `S_p × S_q` and the relation
//! that lets a value shared by a slot of the first block and a slot of the
//! second block be replaced by any other value. The invariant of a tuple
//! `(P, Q)` is the pair of multiset differences `(P − Q, Q − P)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::Zero;

use crate::algebra::{function_algebra, multisets, AlgebraSpec};
use crate::charfn::LinMap;
use crate::classify::{check_pq_hom, Outcome, SamplingPolicy};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
}

impl FiniteSpace {
    pub fn new(points: Vec<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Invalid("a space needs at least one point".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.points.iter().position(|p| p == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `C(X)` with the delta functions as basis, in point order.
    pub fn algebra(&self) -> AlgebraSpec {
        function_algebra(&self.points).expect("labels are unique")
    }
}

/// Canonical form of a point of `Sym^{p|q} X`: sorted, disjoint multisets of
/// point indices with `p − |pos| = q − |neg|` cancelled pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PQClass {
    pos: Vec<usize>,
    neg: Vec<usize>,
    p: usize,
    q: usize,
}

impl PQClass {
    pub fn new(mut pos: Vec<usize>, mut neg: Vec<usize>, p: usize, q: usize) -> Result<Self> {
        pos.sort_unstable();
        neg.sort_unstable();
        if pos.len() > p || neg.len() > q || p - pos.len() != q - neg.len() {
            return Err(Error::Invalid(format!(
                "class sizes {}|{} do not fit type {p}|{q}",
                pos.len(),
                neg.len()
            )));
        }
        if pos.iter().any(|i| neg.contains(i)) {
            return Err(Error::Invalid("a point occurs on both sides".into()));
        }
        Ok(Self { pos, neg, p, q })
    }

    pub fn pos(&self) -> &[usize] {
        &self.pos
    }

    pub fn neg(&self) -> &[usize] {
        &self.neg
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of cancelled pairs.
    pub fn r(&self) -> usize {
        self.p - self.pos.len()
    }

    pub fn display<'a>(&'a self, space: &'a FiniteSpace) -> impl fmt::Display + 'a {
        ClassDisplay { cls: self, space }
    }
}

struct ClassDisplay<'a> {
    cls: &'a PQClass,
    space: &'a FiniteSpace,
}

impl fmt::Display for ClassDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |v: &[usize]| v.iter().map(|&i| self.space.points[i].as_str()).join(",");
        write!(f, "{{{}}} | {{{}}}  ({}|{}, r={})", names(&self.cls.pos), names(&self.cls.neg), self.cls.p, self.cls.q, self.cls.r())
    }
}

fn counts(v: &[usize]) -> HashMap<usize, usize> {
    v.iter().copied().counts()
}

/// `(P − Q, Q − P)` for the first `p` and last `q` entries of `tuple`.
pub fn canonicalize(space: &FiniteSpace, tuple: &[usize], p: usize, q_: usize) -> Result<PQClass> {
    if tuple.len() != p + q_ {
        return Err(Error::DimensionMismatch { expected: p + q_, actual: tuple.len() });
    }
    if let Some(&bad) = tuple.iter().find(|&&i| i >= space.len()) {
        return Err(Error::UnknownLabel(format!("point index {bad}")));
    }
    let (first, second) = tuple.split_at(p);
    let (cp, cq) = (counts(first), counts(second));
    let diff = |a: &HashMap<usize, usize>, b: &HashMap<usize, usize>| -> Vec<usize> {
        a.iter()
            .flat_map(|(&i, &m)| std::iter::repeat_n(i, m.saturating_sub(b.get(&i).copied().unwrap_or(0))))
            .collect()
    };
    PQClass::new(diff(&cp, &cq), diff(&cq, &cp), p, q_)
}

/// As [`canonicalize`], with point labels.
pub fn canonicalize_labels<S: AsRef<str>>(space: &FiniteSpace, tuple: &[S], p: usize, q_: usize) -> Result<PQClass> {
    let idx = tuple.iter().map(|s| space.index(s.as_ref())).collect::<Result<Vec<_>>>()?;
    canonicalize(space, &idx, p, q_)
}

fn multiset_count(d: usize, k: usize) -> usize {
    // C(d + k − 1, k), saturating
    if k == 0 {
        return 1;
    }
    if d == 0 {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (d as u128 - 1 + k as u128 - i) / (i + 1);
        if c > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    c as usize
}

/// All classes of `Sym^{p|q} X`, ordered by the number of cancelled pairs
/// and then lexicographically.
pub fn enumerate_classes(space: &FiniteSpace, p: usize, q_: usize, bound: usize) -> Result<Vec<PQClass>> {
    let d = space.len();
    let upper = (0..=p.min(q_))
        .map(|r| multiset_count(d, p - r).saturating_mul(multiset_count(d, q_ - r)))
        .fold(0usize, usize::saturating_add);
    crate::algebra::check_size(upper, bound)?;
    let mut out = Vec::new();
    for r in 0..=p.min(q_) {
        for pos in multisets(d, p - r) {
            for neg in multisets(d, q_ - r) {
                if pos.iter().all(|i| !neg.contains(i)) {
                    out.push(PQClass { pos: pos.clone(), neg, p, q: q_ });
                }
            }
        }
    }
    Ok(out)
}

/// `a ↦ Σ_{x ∈ pos} a(x) − Σ_{y ∈ neg} a(y)` on `C(X)`.
pub fn eval_functional(cls: &PQClass, function_algebra: Arc<AlgebraSpec>) -> Result<LinMap> {
    let d = function_algebra.dim();
    let mut values = vec![Q::zero(); d];
    for &i in &cls.pos {
        *values.get_mut(i).ok_or(Error::DimensionMismatch { expected: d, actual: i + 1 })? += q(1);
    }
    for &i in &cls.neg {
        *values.get_mut(i).ok_or(Error::DimensionMismatch { expected: d, actual: i + 1 })? -= q(1);
    }
    LinMap::functional(function_algebra, values)
}

/// The p|q criterion applied to a scalar functional.
pub fn check_image_equations(
    functional: &LinMap,
    p: usize,
    q_: usize,
    k_max: isize,
    policy: &SamplingPolicy,
) -> Result<Outcome> {
    if !functional.codomain().is_ground_field() {
        return Err(Error::AlgebraMismatch("image equations are stated for functionals".into()));
    }
    Ok(check_pq_hom(functional, p, q_, k_max, policy))
}

/// Whether a coefficient vector is the functional of some class of type `p|q`.
pub fn is_class_vector(values: &[Q], p: usize, q_: usize) -> bool {
    if !values.iter().all(|v| v.is_integer()) {
        return false;
    }
    let plus: Q = values.iter().filter(|v| v > &&Q::zero()).sum();
    let minus: Q = values.iter().filter(|v| v < &&Q::zero()).map(|v| -v).sum();
    plus <= q(p as i64) && minus <= q(q_ as i64) && &plus - &minus == q(p as i64 - q_ as i64)
}

/// Outcome of an exploratory search for functionals that satisfy the image
/// equations without being class functionals.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub tested: usize,
    pub passing: usize,
    pub passing_classes: usize,
    pub non_class_solutions: Vec<Vec<Q>>,
}

/// Tries every vector with entries from `grid` and `Σ = p − q`. Nothing is
/// asserted; the report lists what was found.
pub fn converse_probe(
    space: &FiniteSpace,
    p: usize,
    q_: usize,
    k_max: isize,
    grid: &[Q],
    policy: &SamplingPolicy,
    bound: usize,
) -> Result<ProbeReport> {
    let d = space.len();
    let total = crate::algebra::power_dim(grid.len(), d);
    crate::algebra::check_size(total, bound)?;
    let alg = Arc::new(space.algebra());
    let chi = q(p as i64 - q_ as i64);
    let mut report = ProbeReport { tested: 0, passing: 0, passing_classes: 0, non_class_solutions: Vec::new() };
    for values in (0..d).map(|_| grid.iter().cloned()).multi_cartesian_product() {
        if values.iter().sum::<Q>() != chi {
            continue;
        }
        report.tested += 1;
        let f = LinMap::functional(alg.clone(), values.clone())?;
        if check_pq_hom(&f, p, q_, k_max, policy).is_pass() {
            report.passing += 1;
            if is_class_vector(&values, p, q_) {
                report.passing_classes += 1;
            } else {
                report.non_class_solutions.push(values);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfn::combine_homs;
    use crate::rational::frac;

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::new(["x", "y", "w", "v"][..n].iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn space_validation() {
        assert!(FiniteSpace::new(vec![]).is_err());
        assert_eq!(FiniteSpace::new(vec!["a".into(), "a".into()]), Err(Error::DuplicateLabel("a".into())));
        assert_eq!(space(3).index("w").unwrap(), 2);
        assert!(space(3).index("z").is_err());
    }

    #[test]
    fn canonical_forms() {
        let x = space(3);
        let empty = PQClass::new(vec![], vec![], 1, 1).unwrap();
        assert_eq!(canonicalize_labels(&x, &["x", "x"], 1, 1).unwrap(), empty);
        assert_eq!(canonicalize_labels(&x, &["y", "y"], 1, 1).unwrap(), empty);
        assert_eq!(canonicalize_labels(&x, &["x", "y"], 1, 1).unwrap(), PQClass::new(vec![0], vec![1], 1, 1).unwrap());
        let c = canonicalize_labels(&x, &["x", "y", "y"], 2, 1).unwrap();
        assert_eq!((c.pos(), c.neg(), c.r()), (&[0][..], &[][..], 1));
        let c = canonicalize_labels(&x, &["x", "y", "w"], 2, 1).unwrap();
        assert_eq!((c.pos(), c.neg(), c.r()), (&[0, 1][..], &[2][..], 0));
        assert_eq!(
            canonicalize(&x, &[1, 0, 2, 2], 2, 2).unwrap(),
            canonicalize(&x, &[0, 1, 2, 2], 2, 2).unwrap()
        );
        assert!(canonicalize(&x, &[0, 1], 2, 1).is_err());
        assert!(canonicalize_labels(&x, &["x", "z"], 1, 1).is_err());
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_classes(&space(2), 1, 1, 4096).unwrap().len(), 3);
        assert_eq!(enumerate_classes(&space(1), 1, 1, 4096).unwrap().len(), 1);
        for d in 1..=4 {
            for p in 0..=4 {
                assert_eq!(enumerate_classes(&space(d), p, 0, 4096).unwrap().len(), multiset_count(d, p));
            }
        }
        assert!(enumerate_classes(&space(4), 4, 4, 10).is_err());
    }

    #[test]
    fn functionals() {
        let x = space(3);
        let alg = Arc::new(x.algebra());
        let c = PQClass::new(vec![0], vec![1], 1, 1).unwrap();
        let f = eval_functional(&c, alg.clone()).unwrap();
        let expected = combine_homs(&[
            (1, LinMap::point_evaluation(alg.clone(), 0)),
            (-1, LinMap::point_evaluation(alg.clone(), 1)),
        ])
        .unwrap()
        .map;
        assert_eq!(f, expected);
        let zero = eval_functional(&PQClass::new(vec![], vec![], 1, 1).unwrap(), alg.clone()).unwrap();
        assert_eq!(zero, LinMap::zero(alg, Arc::new(AlgebraSpec::ground_field())));
    }

    #[test]
    fn image_equations() {
        let x = space(3);
        let alg = Arc::new(x.algebra());
        let policy = SamplingPolicy::default();
        for cls in enumerate_classes(&x, 2, 1, 4096).unwrap() {
            let f = eval_functional(&cls, alg.clone()).unwrap();
            assert!(check_image_equations(&f, 2, 1, 7, &policy).unwrap().is_pass(), "{}", cls.display(&x));
            assert!(check_image_equations(&f.scale(&q(2)), 4, 2, 10, &policy).unwrap().is_pass());
        }
        let half = LinMap::functional(alg, vec![frac(1, 2), frac(1, 2), q(0)]).unwrap();
        assert!(!check_image_equations(&half, 1, 0, 5, &policy).unwrap().is_pass());
    }

    #[test]
    fn class_vectors() {
        assert!(is_class_vector(&[q(1), q(-1), q(0)], 1, 1));
        assert!(is_class_vector(&[q(0), q(0)], 1, 1));
        assert!(!is_class_vector(&[q(2), q(-2)], 1, 1));
        assert!(!is_class_vector(&[frac(1, 2), frac(1, 2)], 1, 0));
    }

    #[test]
    fn probe_finds_only_classes_on_a_small_grid() {
        let x = space(2);
        let grid: Vec<Q> = (-2..=2).map(q).collect();
        let r = converse_probe(&x, 1, 1, 6, &grid, &SamplingPolicy::default(), 4096).unwrap();
        assert_eq!(r.tested, 5);
        assert_eq!(r.passing_classes, 3);
        assert!(r.non_class_solutions.is_empty());
    }
}
