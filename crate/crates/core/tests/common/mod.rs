//! Helpers shared by the integration tests. The oracles here avoid the
//! library's own recurrences so that they can check them.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use nhom::algebra::{AlgebraSpec, Element};
use nhom::charfn::LinMap;
use nhom::classify::random_element;
use nhom::Q;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `n ∈ [-9, 9]`, `d ∈ [1, 5]`.
pub fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.random_range(-9i64..=9).into(), rng.random_range(1i64..=5).into())
}

pub fn random_map(domain: &Arc<AlgebraSpec>, codomain: &Arc<AlgebraSpec>, rng: &mut ChaCha8Rng) -> LinMap {
    let m = (0..codomain.dim()).map(|_| (0..domain.dim()).map(|_| random_q(rng)).collect()).collect();
    LinMap::new(domain.clone(), codomain.clone(), m).unwrap()
}

/// Basis elements followed by `extra` seeded random elements.
pub fn basis_and_random(alg: &AlgebraSpec, extra: usize, seed: u64) -> Vec<Element> {
    let mut out = alg.basis_elements();
    out.extend((0..extra as u64).map(|s| random_element(alg.dim(), seed, s)));
    out
}

/// Random elements with every coordinate nonzero (invertible in `C(X)`).
pub fn nowhere_zero(dim: usize, count: usize, seed: u64) -> Vec<Element> {
    (0..)
        .map(|s| random_element(dim, seed, s))
        .filter(|e| e.coords().iter().all(|c| !c.is_zero()))
        .take(count)
        .collect()
}

/// `binom(c, k)` for rational `c`.
pub fn gen_binomial(c: &Q, k: usize) -> Q {
    let mut out = Q::one();
    for i in 0..k {
        out = out * (c - Q::from_integer((i as i64).into())) / Q::from_integer(((i + 1) as i64).into());
    }
    out
}

/// `Π_i (1 + u_i z)^{c_i}` to order `n`, by the binomial series and a plain
/// Cauchy product.
pub fn binomial_product(u: &[Q], c: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n + 1];
    out[0] = Q::one();
    for (ui, ci) in u.iter().zip(c) {
        let mut factor = Vec::with_capacity(n + 1);
        let mut pow = Q::one();
        for k in 0..=n {
            factor.push(gen_binomial(ci, k) * &pow);
            pow *= ui;
        }
        let mut next = vec![Q::zero(); n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                next[i + j] += &out[i] * &factor[j];
            }
        }
        out = next;
    }
    out
}

/// `R(f, a, z)` for `f: C(X) → C(Y)` given by a matrix in the point bases:
/// row `y` of the result is `Π_x (1 + a(x) z)^{M[y][x]}`.
pub fn function_algebra_series(matrix: &[Vec<Q>], a: &[Q], n: usize) -> Vec<Vec<Q>> {
    matrix.iter().map(|row| binomial_product(a, row, n)).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All tuples in `X^{len}` for `|X| = points`, lexicographic.
pub fn all_tuples(points: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..points).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Orbits of `X^{p+q}` under swaps inside the first `p` and the last `q`
/// slots, together with replacing a pair `(x_i, y_j)` with `x_i = y_j` by
/// any other equal pair. Returns a component id per tuple.
pub fn closure_components(points: usize, p: usize, q: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let tuples = all_tuples(points, p + q);
    let index: BTreeMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut uf = UnionFind::new(tuples.len());
    for (i, t) in tuples.iter().enumerate() {
        let mut link = |u: Vec<usize>| uf.union(i, index[&u]);
        for (lo, hi) in [(0, p), (p, p + q)] {
            for s in lo..hi.saturating_sub(1) {
                let mut u = t.clone();
                u.swap(s, s + 1);
                link(u);
            }
        }
        for a in 0..p {
            for b in p..p + q {
                if t[a] == t[b] {
                    for w in 0..points {
                        let mut u = t.clone();
                        u[a] = w;
                        u[b] = w;
                        link(u);
                    }
                }
            }
        }
    }
    let ids = (0..tuples.len()).map(|i| uf.find(i)).collect();
    (tuples, ids)
}

/// `Σ_{first p} δ_x − Σ_{last q} δ_x` as a coefficient vector.
pub fn tuple_functional(points: usize, tuple: &[usize], p: usize) -> Vec<i64> {
    let mut v = vec![0; points];
    for (s, &x) in tuple.iter().enumerate() {
        v[x] += if s < p { 1 } else { -1 };
    }
    v
}

/// Prints one acceptance line and fails the test on FAIL.
pub fn report(id: u32, title: &str, failures: &[String], summary: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {status}: {title} ({summary})");
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    if failures.len() > 10 {
        println!("    ... {} more", failures.len() - 10);
    }
    assert!(failures.is_empty(), "criterion {id} failed with {} failures", failures.len());
}
