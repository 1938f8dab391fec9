//! Commutative ℚ-algebras as context objects.
//!
//! Elements are plain values; the ring that gives them meaning is passed
//! alongside. This lets series, polynomials and determinants work over ℚ,
//! over a structure-constant algebra, or over truncated series of either.

use std::fmt::Debug;

use num_traits::Zero;

use crate::rational::{qone, Q};

pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplication by a ground-field scalar.
    fn scale(&self, c: &Q, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn from_rational(&self, c: &Q) -> Self::Elem {
        self.scale(c, &self.one())
    }

    fn pow(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The ground field ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        qone()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn scale(&self, c: &Q, a: &Q) -> Q {
        c * a
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
}
