//! Exact integer kernel: gcd and CRT, dense integer matrices, Smith normal
//! form and finitely presented abelian groups.
//!
//! Integers are arbitrary precision ([`Int`]); rationals are kept in lowest
//! terms with a positive denominator ([`Rat`]).

mod arith;
mod group;
mod matrix;
mod snf;

pub use arith::{crt_solve, ext_gcd, gcd_u64, lcm_all, lcm_u64, mod_inverse, Congruence};
pub use group::{cokernel, FpAbelianGroup, GroupElement, NormalForm};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Builds an [`Int`] from anything convertible, e.g. `int(5)`.
pub fn int<T: Into<Int>>(v: T) -> Int {
    v.into()
}

/// Builds the rational `num / den` in lowest terms. Panics when `den == 0`.
pub fn rat<N: Into<Int>, D: Into<Int>>(num: N, den: D) -> Rat {
    Rat::new(num.into(), den.into())
}
