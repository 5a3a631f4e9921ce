//! Exact symmetric-power representations of 2×2 matrix groups, recovery of
//! decomposition parameters from simulated trace families, endomorphism-type
//! admissibility for Abelian varieties, and desk-scale finite matrix group
//! experiments over `Z/l^m`.
//!
//! The polynomial and matrix layers are generic over a [`Scalar`]; the rest of
//! the crate works over [`Rational`] (exact) or machine residues.

pub mod albert;
pub mod decode;
pub mod exactmath;
pub mod finitegrp;
pub mod scalar;
pub mod symrep;

pub use scalar::Scalar;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;
/// Exact univariate polynomial over the rationals.
pub type RationalPoly = exactmath::Polynomial<Rational>;
/// Exact dense matrix over the rationals.
pub type RationalMatrix = symrep::Matrix<Rational>;

/// Small-integer rational; convenient for tests that never overflow.
pub type SmallRational = num_rational::Rational64;
pub type SmallRationalPoly = exactmath::Polynomial<SmallRational>;

/// Floating-point instantiations. Equality tests are exact comparisons, so
/// these are only meaningful for well-conditioned, small-integer data.
pub type F64Poly = exactmath::Polynomial<f64>;
pub type F64Matrix = symrep::Matrix<f64>;

/// Build a [`Rational`] from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Build a [`Rational`] `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
