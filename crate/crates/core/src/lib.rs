//! Exact computer algebra for linear maps between finite-dimensional
//! commutative algebras over ℚ.
//!
//! The central object is the characteristic function
//! `R(f, a, z) = exp f(ln(1 + a z))` of a linear map `f: A → B`. Its shape in
//! `z` classifies `f`: a polynomial of degree `n` for an n-homomorphism, a
//! ratio of polynomials of degrees `p` and `q` for a p|q-homomorphism.

pub mod algebra;
pub mod catalog;
pub mod charfn;
pub mod classify;
pub mod correspondence;
pub mod error;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod reps;
pub mod ring;
pub mod series;
pub mod symspace;

pub use error::{Error, Result};
pub use rational::Q;
