//! Exact invariants of Seifert `G_m`-bundles.
//!
//! A Seifert bundle over a normal base `X` is described by a class `[L]` in
//! the class group `Cl(X)` together with rational coefficients `b_i / c_i`
//! along prime divisors `D_i`. This crate computes everything that can be
//! read off that data with exact integer arithmetic:
//!
//! * [`exactmath`]: gcd / CRT, integer matrices, Smith normal form and
//!   finitely presented abelian groups.
//! * [`localmodel`]: cyclic quotient charts `A^n / mu_M(a_1, .., a_n)`, their
//!   quasi-reflection reduction and the dictionary between quotient
//!   presentations and local Seifert data.
//! * [`seifert`]: global data over an abstract base: validation, Chern
//!   classes, `mu_M` quotients, fiber multiplicities, `Cl(Y)`, `K_Y` and the
//!   cone predicates.
//! * [`topology`]: `H_1` and orbifold `H_1` presentations, rational homology
//!   sphere test, reconstruction of the bundle from its Chern class.
//!
//! No floating point is used anywhere.

pub mod error;
pub mod exactmath;
pub mod localmodel;
pub mod seifert;
pub mod topology;

pub use error::{Error, Result};
pub use exactmath::{FpAbelianGroup, GroupElement, Int, IntMatrix, Rat, SmithDecomposition};
