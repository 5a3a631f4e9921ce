//! Dense univariate polynomials, exact interpolation and division, and the
//! trace polynomials of symmetric powers.
//!
//! `T_n` is the polynomial with `trace(Sym^n s) = T_n(trace s)` whenever
//! `det s = 1`. For a general 2×2 matrix with trace `t` and determinant `d`
//! the trace of `Sym^n` is `S_n(t, d)`, computed by [`hom_trace`]; both obey a
//! three-term recurrence and are evaluated in the variable `t` only.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("duplicate abscissa at positions {0} and {1}")]
    DuplicateAbscissa(usize, usize),
    #[error("interpolation needs at least one point")]
    NoPoints,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
}

/// Coefficients lowest degree first, never with a trailing zero. The zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `c·t^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, den: &Self) -> Result<(Self, Self), PolyError> {
        poly_divrem(self, den)
    }
}

impl<T: Scalar> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                a + b
            })
            .collect();
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

/// Lagrange interpolation through `points`; the result has degree below
/// `points.len()`.
pub fn interpolate<T: Scalar>(points: &[(T, T)]) -> Result<Polynomial<T>, PolyError> {
    if points.is_empty() {
        return Err(PolyError::NoPoints);
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].0 == points[j].0 {
                return Err(PolyError::DuplicateAbscissa(i, j));
            }
        }
    }

    let mut acc = Polynomial::zero();
    for (i, (ti, vi)) in points.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let mut basis = Polynomial::one();
        let mut denom = T::one();
        for (j, (tj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = &basis * &Polynomial::new(vec![-tj.clone(), T::one()]);
            denom = denom * (ti.clone() - tj.clone());
        }
        acc = &acc + &basis.scale(&(vi.clone() / denom));
    }
    Ok(acc)
}

/// Euclidean division: `num = den·q + r` with `deg r < deg den`.
pub fn poly_divrem<T: Scalar>(
    num: &Polynomial<T>,
    den: &Polynomial<T>,
) -> Result<(Polynomial<T>, Polynomial<T>), PolyError> {
    let dd = den.degree().ok_or(PolyError::DivisionByZeroPolynomial)?;
    let lead = den.coeffs[dd].clone();
    let mut rem = num.coeffs.clone();
    if rem.len() <= dd {
        return Ok((Polynomial::zero(), num.clone()));
    }
    let mut quot = vec![T::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.coeffs.iter().enumerate() {
            let idx = k - dd + j;
            rem[idx] = rem[idx].clone() - c.clone() * dc.clone();
        }
        quot[k - dd] = c;
    }
    rem.truncate(dd);
    Ok((Polynomial::new(quot), Polynomial::new(rem)))
}

/// `T_0 = 1`, `T_1 = t`, `T_n = t·T_{n-1} − T_{n-2}`.
pub fn trace_poly<T: Scalar>(n: usize) -> Polynomial<T> {
    let t = Polynomial::var();
    let mut prev = Polynomial::one();
    if n == 0 {
        return prev;
    }
    let mut cur = t.clone();
    for _ in 1..n {
        let next = &(&t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `S_n(t, d)`: trace of `Sym^n` of any 2×2 matrix with trace `t` and
/// determinant `d`. `S_0 = 1`, `S_1 = t`, `S_n = t·S_{n-1} − d·S_{n-2}`.
pub fn hom_trace<T: Scalar>(n: usize, t: &T, d: &T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = t.clone();
    for _ in 1..n {
        let next = t.clone() * cur.clone() - d.clone() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, Rational, RationalPoly, SmallRationalPoly};
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_i64s(c)
    }

    fn pts(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(a, b)| (rat(a), rat(b))).collect()
    }

    #[test]
    fn canonical_form_trims_zeros() {
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(RationalPoly::zero().degree(), None);
    }

    #[test]
    fn interpolate_examples() {
        assert_eq!(interpolate(&pts(&[(0, 1), (1, 1)])).unwrap(), p(&[1]));
        assert_eq!(interpolate(&pts(&[(0, 0), (1, 1), (2, 2)])).unwrap(), p(&[0, 1]));
        // t²−1 evaluated at 0,1,2,3
        let target = p(&[-1, 0, 1]);
        let data: Vec<_> = (0..4).map(|t| (rat(t), target.eval(&rat(t)))).collect();
        assert_eq!(data, pts(&[(0, -1), (1, 0), (2, 3), (3, 8)]));
        assert_eq!(interpolate(&data).unwrap(), target);
    }

    #[test]
    fn interpolate_errors() {
        assert_eq!(
            interpolate(&pts(&[(0, 1), (2, 3), (0, 5)])),
            Err(PolyError::DuplicateAbscissa(0, 2))
        );
        assert_eq!(interpolate::<Rational>(&[]), Err(PolyError::NoPoints));
    }

    #[test]
    fn interpolate_rational_abscissae() {
        let target = p(&[3, -1, 0, 2]);
        let data: Vec<_> = [ratio(1, 2), ratio(-3, 7), rat(5), ratio(9, 4)]
            .into_iter()
            .map(|t| {
                let v = target.eval(&t);
                (t, v)
            })
            .collect();
        assert_eq!(interpolate(&data).unwrap(), target);
    }

    #[test]
    fn divrem_examples() {
        assert_eq!(
            poly_divrem(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(),
            (p(&[1, 1]), RationalPoly::zero())
        );
        // (t³−2t) = (t²−1)·t − t
        assert_eq!(
            poly_divrem(&p(&[0, -2, 0, 1]), &p(&[-1, 0, 1])).unwrap(),
            (p(&[0, 1]), p(&[0, -1]))
        );
        let q = p(&[4, 0, -3, 7]);
        assert_eq!(q.divrem(&q).unwrap(), (p(&[1]), RationalPoly::zero()));
        assert_eq!(
            poly_divrem(&q, &RationalPoly::zero()),
            Err(PolyError::DivisionByZeroPolynomial)
        );
        // lower degree numerator
        assert_eq!(
            poly_divrem(&p(&[1, 1]), &p(&[0, 0, 1])).unwrap(),
            (RationalPoly::zero(), p(&[1, 1]))
        );
    }

    #[test]
    fn trace_poly_examples() {
        assert_eq!(trace_poly::<Rational>(0), p(&[1]));
        assert_eq!(trace_poly::<Rational>(1), p(&[0, 1]));
        assert_eq!(trace_poly::<Rational>(2), p(&[-1, 0, 1]));
        assert_eq!(trace_poly::<Rational>(3), p(&[0, -2, 0, 1]));
    }

    // Independent oracle: for t = a + 1/a, T_n(t) = (a^{n+1} − a^{−(n+1)}) / (a − 1/a).
    #[test]
    fn trace_poly_matches_eigenvalue_closed_form() {
        for a in [rat(2), rat(3), ratio(1, 2), ratio(-5, 3), ratio(7, 2)] {
            let inv = a.recip();
            let t = a.clone() + inv.clone();
            for n in 0..=25u32 {
                let closed = (a.pow_u32(n + 1) - inv.pow_u32(n + 1)) / (a.clone() - inv.clone());
                assert_eq!(trace_poly::<Rational>(n as usize).eval(&t), closed, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn trace_poly_values_at_plus_minus_two() {
        for n in 0..=50usize {
            let tn = trace_poly::<Rational>(n);
            assert_eq!(tn.eval(&rat(2)), rat(n as i64 + 1));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(tn.eval(&rat(-2)), rat(sign * (n as i64 + 1)));
        }
    }

    #[test]
    fn trace_poly_monic_integral() {
        for n in 0..=40usize {
            let tn = trace_poly::<Rational>(n);
            assert_eq!(tn.degree(), Some(n));
            assert!(tn.is_monic());
            assert!(tn.coeffs().iter().all(|c| c.is_integer()));
        }
    }

    #[test]
    fn hom_trace_examples() {
        for n in 0..=10usize {
            for t in -3..=3 {
                assert_eq!(
                    hom_trace(n, &rat(t), &rat(1)),
                    trace_poly::<Rational>(n).eval(&rat(t))
                );
            }
        }
        // diag(1,2): Sym² eigenvalues 1, 2, 4
        assert_eq!(hom_trace(2, &rat(3), &rat(2)), rat(7));
        for (t, d) in [(0, 0), (5, -3), (-2, 9)] {
            assert_eq!(hom_trace(1, &rat(t), &rat(d)), rat(t));
        }
    }

    // hom_trace against the power-sum of eigenvalues for diagonal matrices.
    #[test]
    fn hom_trace_diagonal_oracle() {
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                for n in 0..=8u32 {
                    let direct: i64 = (0..=n).map(|k| a.pow(n - k) * b.pow(k)).sum();
                    assert_eq!(hom_trace(n as usize, &rat(a + b), &rat(a * b)), rat(direct));
                }
            }
        }
    }

    #[test]
    fn generic_over_small_rationals_and_floats() {
        let t3 = trace_poly::<num_rational::Rational64>(3);
        assert_eq!(t3, SmallRationalPoly::from_i64s(&[0, -2, 0, 1]));
        let f = trace_poly::<f64>(4);
        assert_eq!(f.coeffs(), &[1.0, 0.0, -3.0, 0.0, 1.0]);
        assert_eq!(hom_trace(2, &3.0f64, &2.0), 7.0);
        let pts = [(0.0, -1.0), (1.0, 0.0), (2.0, 3.0)];
        let fit = interpolate(&pts).unwrap();
        assert_eq!(fit.coeffs(), &[-1.0, 0.0, 1.0]);
    }

    fn small_poly() -> impl Strategy<Value = RationalPoly> {
        prop::collection::vec(-20i64..=20, 0..=9).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn interpolation_inverts_evaluation(poly in small_poly(), extra in 0usize..3, shift in -10i64..10) {
            let npts = poly.degree().map_or(1, |d| d + 1) + extra;
            let data: Vec<_> = (0..npts as i64)
                .map(|i| {
                    let t = ratio(3 * i + shift, 2);
                    (t.clone(), poly.eval(&t))
                })
                .collect();
            prop_assert_eq!(interpolate(&data).unwrap(), poly);
        }

        #[test]
        fn divrem_round_trip(num in small_poly(), den in small_poly()) {
            prop_assume!(!den.is_zero());
            let (q, r) = poly_divrem(&num, &den).unwrap();
            prop_assert_eq!(&(&den * &q) + &r, num);
            prop_assert!(r.degree().is_none_or(|dr| dr < den.degree().unwrap()));
        }

        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            let x = ratio(5, 3);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "(1)*t^2 + -1");
        assert_eq!(RationalPoly::zero().to_string(), "0");
        assert!(Rational::one().is_positive() && !Rational::zero().is_positive());
    }
}
