use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

/// Coefficient type for [`Polynomial`](crate::exactmath::Polynomial) and
/// [`Matrix`](crate::symrep::Matrix).
///
/// Division is assumed to be field division wherever an operation divides
/// (interpolation, long division, inversion). Exact types (`BigRational`,
/// `Rational64`) give exact answers; `f32`/`f64` work but compare with `==`.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {
    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        let step = if n >= 0 { one.clone() } else { -one };
        let mut k = n.unsigned_abs();
        // double-and-add keeps this logarithmic for large n
        let mut pow = step;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + pow.clone();
            }
            pow = pow.clone() + pow;
            k >>= 1;
        }
        acc
    }

    fn pow_u32(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            exp >>= 1;
        }
        acc
    }
}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rational};

    #[test]
    fn from_i64_matches_native() {
        for n in [-17i64, -1, 0, 1, 2, 63, 1000] {
            assert_eq!(<Rational as Scalar>::from_i64(n), rat(n));
            assert_eq!(<f64 as Scalar>::from_i64(n), n as f64);
        }
    }

    #[test]
    fn pow_u32_small() {
        assert_eq!(rat(3).pow_u32(0), rat(1));
        assert_eq!(rat(-2).pow_u32(5), rat(-32));
        assert_eq!(2.0f64.pow_u32(10), 1024.0);
    }
}
