//! Simulated trace families and exact recovery of their decomposition.
//!
//! A family sample records, at one Frobenius-like element, the trace `t` and
//! determinant `d` of the two-dimensional factor together with the trace `v`
//! of the composed representation. Samples with `d = 1` pin down the product
//! `Π T_{n_i}` by interpolation; that product factors uniquely over the trace
//! polynomials; samples with integer `d ≥ 2` then pin down the twist weight.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactmath::{hom_trace, interpolate, poly_divrem, trace_poly};
use crate::symrep::{dim_product, dim_sum, rep_trace, twisted_trace, RepSpec};
use crate::{Rational, RationalPoly};

pub mod io;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("two det-1 samples share the trace {0}")]
    DuplicateTrace(String),
    #[error("recovered product polynomial is not monic")]
    NotMonic,
    #[error("recovered product polynomial takes a non-integer or non-positive value at 2")]
    NonIntegerDimension,
    #[error("polynomial is not a product of trace polynomials")]
    NotAProduct,
    #[error("sample {index}: trace product vanishes, weight cannot be read off")]
    ZeroDivisor { index: usize },
    #[error("twist samples disagree on the determinant weight")]
    InconsistentTwist,
    #[error("twist values are not powers of the determinant")]
    NonPowerTwist,
    #[error("sample {index} disagrees with the recovered parameters")]
    CrossValidationFailed { index: usize },
}

impl DecodeError {
    /// Stable variant name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Self::InsufficientSamples(_) => "InsufficientSamples",
            Self::DuplicateTrace(_) => "DuplicateTrace",
            Self::NotMonic => "NotMonic",
            Self::NonIntegerDimension => "NonIntegerDimension",
            Self::NotAProduct => "NotAProduct",
            Self::ZeroDivisor { .. } => "ZeroDivisor",
            Self::InconsistentTwist => "InconsistentTwist",
            Self::NonPowerTwist => "NonPowerTwist",
            Self::CrossValidationFailed { .. } => "CrossValidationFailed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySample {
    pub t: Rational,
    pub d: Rational,
    pub v: Rational,
}

impl FamilySample {
    pub fn new(t: Rational, d: Rational, v: Rational) -> Self {
        Self { t, d, v }
    }

    pub fn is_det_one(&self) -> bool {
        self.d.is_one()
    }

    /// Integer determinant `≥ 2`, the only kind that carries twist information.
    pub fn twist_det(&self) -> Option<BigInt> {
        (self.d.is_integer() && self.d > Rational::one()).then(|| self.d.to_integer())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub degree_sum: u64,
    pub dim_product: u128,
    /// Σ(n_i + 1); differs from `dim_product` whenever there are two or more factors.
    pub dim_sum: u128,
    pub samples_used: usize,
    /// The twist is modelled as `det^w`; only its values on integers are observed.
    pub twist_model: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub factors: Vec<u32>,
    pub det_weight: u32,
    pub product_poly: RationalPoly,
    pub diagnostics: Diagnostics,
}

impl DecodeResult {
    /// `None` when the recovered factor multiset is empty.
    pub fn to_spec(&self) -> Option<RepSpec> {
        RepSpec::new(self.factors.clone(), self.det_weight).ok()
    }
}

/// Draw `det1_count` samples with `d = 1` and pairwise-distinct integer traces,
/// followed by `twist_count` samples with distinct integer `d ≥ 2`.
///
/// Traces are uniform in `[-B, B]` with `B = 10·count`. Twist traces are
/// redrawn while the trace product `Π S_{n_i}(t, d)` vanishes, since such a
/// sample says nothing about the weight.
pub fn simulate_family(
    spec: &RepSpec,
    det1_count: usize,
    twist_count: usize,
    seed: u64,
) -> Vec<FamilySample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(det1_count + twist_count);

    let bound = 10 * det1_count.max(1) as i64;
    let mut seen = BTreeSet::new();
    let one = Rational::one();
    while out.len() < det1_count {
        let t: i64 = rng.random_range(-bound..=bound);
        if !seen.insert(t) {
            continue;
        }
        let t = Rational::from_integer(t.into());
        let v = rep_trace(spec, &t, &one);
        out.push(FamilySample::new(t, one.clone(), v));
    }

    let twist_bound = 10 * twist_count.max(1) as i64;
    let det_hi = 2 + 4 * twist_count.max(1) as i64;
    let mut dets = BTreeSet::new();
    let mut emitted = 0;
    while emitted < twist_count {
        let d: i64 = rng.random_range(2..=det_hi);
        if !dets.insert(d) {
            continue;
        }
        let d = Rational::from_integer(d.into());
        let mut width = twist_bound;
        let mut attempts = 0;
        let t = loop {
            let t = Rational::from_integer(rng.random_range(-width..=width).into());
            if !trace_product(spec.factors(), &t, &d).is_zero() {
                break t;
            }
            attempts += 1;
            if attempts % 16 == 0 {
                width *= 2;
            }
        };
        let v = rep_trace(spec, &t, &d);
        out.push(FamilySample::new(t, d, v));
        emitted += 1;
    }
    out
}

fn trace_product(factors: &[u32], t: &Rational, d: &Rational) -> Rational {
    factors
        .iter()
        .fold(Rational::one(), |acc, &n| acc * hom_trace(n as usize, t, d))
}

/// Recover the monic product `P = Π T_{n_i}` from the `d = 1` samples.
pub fn recover_product_poly(samples: &[FamilySample]) -> Result<RationalPoly, DecodeError> {
    recover_product_poly_counted(samples).map(|(p, _)| p)
}

/// Degree detection: window `k` interpolates the first `k` det-1 samples and
/// sample `k` is held out. The first window whose interpolant also agrees with
/// every later sample is returned; this is the true product as soon as there
/// are `deg P + 2` clean samples. If no window agrees with everything, the
/// first window that passes its single held-out check is returned so that the
/// caller's cross-validation can name the offending sample.
fn recover_product_poly_counted(
    samples: &[FamilySample],
) -> Result<(RationalPoly, usize), DecodeError> {
    let pts: Vec<(Rational, Rational)> = samples
        .iter()
        .filter(|s| s.is_det_one())
        .map(|s| (s.t.clone(), s.v.clone()))
        .collect();
    let mut seen = BTreeSet::new();
    for (t, _) in &pts {
        if !seen.insert(t.clone()) {
            return Err(DecodeError::DuplicateTrace(t.to_string()));
        }
    }
    if pts.len() < 2 {
        return Err(DecodeError::InsufficientSamples(format!(
            "{} det-1 sample(s); at least 2 are needed for a held-out check",
            pts.len()
        )));
    }

    let mut fallback = None;
    let mut chosen = None;
    for k in 1..pts.len() {
        let p = interpolate(&pts[..k]).expect("abscissae are distinct");
        let (t, v) = &pts[k];
        if p.eval(t) != *v {
            continue;
        }
        if pts[k + 1..].iter().all(|(t, v)| p.eval(t) == *v) {
            chosen = Some((p, pts.len()));
            break;
        }
        if fallback.is_none() {
            fallback = Some((p, k + 1));
        }
    }
    let (p, used) = chosen.or(fallback).ok_or_else(|| {
        DecodeError::InsufficientSamples(format!(
            "no interpolation window over {} det-1 samples passed its held-out check",
            pts.len()
        ))
    })?;

    if !p.is_monic() {
        return Err(DecodeError::NotMonic);
    }
    let at_two = p.eval(&Rational::from_integer(2.into()));
    if !at_two.is_integer() || !at_two.is_positive() {
        return Err(DecodeError::NonIntegerDimension);
    }
    Ok((p, used))
}

/// Write a monic `P` as `Π T_{n_i}`, returning the multiset sorted ascending.
///
/// Greedy, largest degree first. If `T_a | P` with `a` maximal, some factor
/// `T_{n_i}` must vanish at every root `2cos(πj/(a+1))` of `T_a`; that forces
/// `(a+1) | (n_i+1)`, so `n_i ≥ a` and maximality gives `n_i = a`.
pub fn factor_into_trace_basis(p: &RationalPoly) -> Result<Vec<u32>, DecodeError> {
    if !p.is_monic() {
        return Err(DecodeError::NotAProduct);
    }
    let mut residual = p.clone();
    let mut factors = Vec::new();
    let top = residual.degree().unwrap_or(0);
    for a in (1..=top).rev() {
        let ta = trace_poly::<Rational>(a);
        while residual.degree().is_some_and(|d| d >= a) {
            let (q, r) = poly_divrem(&residual, &ta).expect("T_a is nonzero");
            if !r.is_zero() {
                break;
            }
            factors.push(a as u32);
            residual = q;
        }
    }
    if residual != RationalPoly::one() {
        return Err(DecodeError::NotAProduct);
    }
    factors.reverse();
    Ok(factors)
}

/// `w` such that `f = d^w`, when `f` is a positive integer power of `d ≥ 2`.
fn power_exponent(f: &Rational, d: &BigInt) -> Option<u32> {
    if !f.is_integer() || !f.is_positive() {
        return None;
    }
    let mut f = f.to_integer();
    let mut w = 0u32;
    while !f.is_one() {
        if !(&f % d).is_zero() {
            return None;
        }
        f /= d;
        w += 1;
    }
    Some(w)
}

/// Recover the twist weight from samples with integer determinant `≥ 2`.
///
/// Every such sample yields `f(d) = v / Π S_{n_i}(t, d)`; a single `w` with
/// `f(d) = d^w` must fit all of them.
pub fn recover_det_weight(samples: &[FamilySample], factors: &[u32]) -> Result<u32, DecodeError> {
    let twist: Vec<(usize, &FamilySample, BigInt)> = samples
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.twist_det().map(|d| (i, s, d)))
        .collect();
    if twist.len() < 2 {
        return Err(DecodeError::InsufficientSamples(format!(
            "{} twist sample(s) with integer determinant >= 2; at least 2 are needed",
            twist.len()
        )));
    }

    let mut exponents = Vec::with_capacity(twist.len());
    for (index, s, d) in &twist {
        let prod = trace_product(factors, &s.t, &s.d);
        if prod.is_zero() {
            return Err(DecodeError::ZeroDivisor { index: *index });
        }
        exponents.push(power_exponent(&(s.v.clone() / prod), d));
    }

    match exponents.first() {
        Some(Some(w)) if exponents.iter().all(|e| *e == Some(*w)) => Ok(*w),
        _ if exponents.iter().all(Option::is_none) => Err(DecodeError::NonPowerTwist),
        _ => Err(DecodeError::InconsistentTwist),
    }
}

/// Full pipeline: product polynomial, factor multiset, twist weight, then an
/// exact cross-check of every sample against the recovered parameters.
pub fn decode(samples: &[FamilySample]) -> Result<DecodeResult, DecodeError> {
    let (product_poly, poly_used) = recover_product_poly_counted(samples)?;
    let factors = factor_into_trace_basis(&product_poly)?;

    // zero-product twist samples carry no weight information; they are still
    // cross-validated below
    let usable: Vec<FamilySample> = samples
        .iter()
        .filter(|s| {
            s.twist_det().is_some() && !trace_product(&factors, &s.t, &s.d).is_zero()
        })
        .cloned()
        .collect();
    let det_weight = recover_det_weight(&usable, &factors)?;

    for (index, s) in samples.iter().enumerate() {
        if twisted_trace(&factors, det_weight, &s.t, &s.d) != s.v {
            return Err(DecodeError::CrossValidationFailed { index });
        }
    }

    let diagnostics = Diagnostics {
        degree_sum: factors.iter().map(|&n| n as u64).sum(),
        dim_product: dim_product(&factors),
        dim_sum: dim_sum(&factors),
        samples_used: poly_used + usable.len(),
        twist_model: "det_power",
    };
    Ok(DecodeResult {
        factors,
        det_weight,
        product_poly,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};
    use proptest::prelude::*;

    fn spec(f: &[u32], w: u32) -> RepSpec {
        RepSpec::new(f.to_vec(), w).unwrap()
    }

    fn product(factors: &[u32]) -> RationalPoly {
        factors
            .iter()
            .fold(RationalPoly::one(), |acc, &n| &acc * &trace_poly(n as usize))
    }

    /// Brute-force factorization: enumerate every multiset with the right
    /// degree sum and compare products.
    fn brute_force_factor(p: &RationalPoly) -> Vec<Vec<u32>> {
        let deg = p.degree().unwrap() as u32;
        partitions(deg, deg)
            .into_iter()
            .filter(|m| product(m) == *p)
            .collect()
    }

    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.push(first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn simulate_examples() {
        let s = simulate_family(&spec(&[2], 1), 12, 3, 7);
        assert_eq!(s.len(), 15);
        for x in s.iter().filter(|x| x.is_det_one()) {
            assert_eq!(x.v, x.t.clone() * x.t.clone() - rat(1));
        }
        let s = simulate_family(&spec(&[1], 0), 30, 5, 99);
        assert!(s.iter().all(|x| x.v == x.t));
        let traces: BTreeSet<_> = s.iter().filter(|x| x.is_det_one()).map(|x| x.t.clone()).collect();
        assert_eq!(traces.len(), 30);
        let dets: BTreeSet<_> = s.iter().filter_map(FamilySample::twist_det).collect();
        assert_eq!(dets.len(), 5);
    }

    #[test]
    fn simulate_is_deterministic() {
        let a = simulate_family(&spec(&[1, 3], 2), 10, 4, 123);
        let b = simulate_family(&spec(&[1, 3], 2), 10, 4, 123);
        let c = simulate_family(&spec(&[1, 3], 2), 10, 4, 124);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn recover_product_examples() {
        let s = simulate_family(&spec(&[2], 0), 6, 0, 1);
        assert_eq!(recover_product_poly(&s).unwrap(), RationalPoly::from_i64s(&[-1, 0, 1]));
        let s = simulate_family(&spec(&[1, 1], 0), 6, 0, 2);
        assert_eq!(recover_product_poly(&s).unwrap(), RationalPoly::from_i64s(&[0, 0, 1]));
        let constant: Vec<_> = (0..4).map(|t| FamilySample::new(rat(t), rat(1), rat(1))).collect();
        assert_eq!(recover_product_poly(&constant).unwrap(), RationalPoly::one());
    }

    #[test]
    fn recover_product_errors() {
        let one = vec![FamilySample::new(rat(3), rat(1), rat(3))];
        assert!(matches!(
            recover_product_poly(&one),
            Err(DecodeError::InsufficientSamples(_))
        ));
        // v = 2t + 1 is not monic
        let lin: Vec<_> = (0..4).map(|t| FamilySample::new(rat(t), rat(1), rat(2 * t + 1))).collect();
        assert_eq!(recover_product_poly(&lin), Err(DecodeError::NotMonic));
        // v = t - 5/2 is monic, value at 2 is -1/2
        let frac: Vec<_> = (0..4)
            .map(|t| FamilySample::new(rat(t), rat(1), rat(t) - ratio(5, 2)))
            .collect();
        assert_eq!(recover_product_poly(&frac), Err(DecodeError::NonIntegerDimension));
        let dup = vec![
            FamilySample::new(rat(1), rat(1), rat(1)),
            FamilySample::new(rat(1), rat(1), rat(1)),
        ];
        assert!(matches!(recover_product_poly(&dup), Err(DecodeError::DuplicateTrace(_))));
        // all values distinct and wildly non-polynomial at small windows
        let wild: Vec<_> = [(0, 1), (1, 5), (2, -7)]
            .iter()
            .map(|&(t, v)| FamilySample::new(rat(t), rat(1), rat(v)))
            .collect();
        assert!(matches!(
            recover_product_poly(&wild),
            Err(DecodeError::InsufficientSamples(_))
        ));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_into_trace_basis(&RationalPoly::from_i64s(&[0, -1, 0, 1])).unwrap(), vec![1, 2]);
        assert_eq!(factor_into_trace_basis(&RationalPoly::one()).unwrap(), Vec::<u32>::new());
        // T_1 divides T_3 but the true factorization is {3}
        assert_eq!(factor_into_trace_basis(&RationalPoly::from_i64s(&[0, -2, 0, 1])).unwrap(), vec![3]);
        assert_eq!(
            factor_into_trace_basis(&RationalPoly::from_i64s(&[1, 0, 1])),
            Err(DecodeError::NotAProduct)
        );
        assert_eq!(
            factor_into_trace_basis(&RationalPoly::from_i64s(&[0, 2])),
            Err(DecodeError::NotAProduct)
        );
    }

    #[test]
    fn trace_product_uniqueness_exhaustive() {
        let mut all = Vec::new();
        for deg in 0..=8 {
            all.extend(partitions(deg, deg));
        }
        let polys: Vec<RationalPoly> = all.iter().map(|m| product(m)).collect();
        for i in 0..polys.len() {
            for j in (i + 1)..polys.len() {
                assert_ne!(polys[i], polys[j], "{:?} vs {:?}", all[i], all[j]);
            }
        }
    }

    #[test]
    fn greedy_matches_brute_force() {
        for deg in 1..=8 {
            for m in partitions(deg, deg) {
                let p = product(&m);
                let mut sorted = m.clone();
                sorted.sort_unstable();
                let brute: Vec<Vec<u32>> = brute_force_factor(&p)
                    .into_iter()
                    .map(|mut v| {
                        v.sort_unstable();
                        v
                    })
                    .collect();
                assert_eq!(brute, vec![sorted.clone()]);
                assert_eq!(factor_into_trace_basis(&p).unwrap(), sorted);
            }
        }
    }

    #[test]
    fn det_weight_examples() {
        let s = vec![
            FamilySample::new(rat(3), rat(2), rat(12)),
            FamilySample::new(rat(1), rat(5), rat(25)),
        ];
        assert_eq!(recover_det_weight(&s, &[1]).unwrap(), 2);

        let sp = spec(&[2, 3], 0);
        let s = simulate_family(&sp, 0, 4, 3);
        assert_eq!(recover_det_weight(&s, sp.factors()).unwrap(), 0);

        let sp = spec(&[1], 3);
        let mut s = simulate_family(&sp, 0, 4, 5);
        let d = s[2].d.clone();
        s[2].v = s[2].v.clone() * d;
        assert_eq!(recover_det_weight(&s, sp.factors()), Err(DecodeError::InconsistentTwist));
    }

    #[test]
    fn det_weight_errors() {
        let zero = vec![
            FamilySample::new(rat(0), rat(2), rat(0)),
            FamilySample::new(rat(1), rat(3), rat(1)),
        ];
        assert_eq!(recover_det_weight(&zero, &[1]), Err(DecodeError::ZeroDivisor { index: 0 }));
        let nonpow = vec![
            FamilySample::new(rat(1), rat(2), rat(3)),
            FamilySample::new(rat(1), rat(3), rat(5)),
        ];
        assert_eq!(recover_det_weight(&nonpow, &[1]), Err(DecodeError::NonPowerTwist));
        let single = vec![FamilySample::new(rat(1), rat(2), rat(2))];
        assert!(matches!(
            recover_det_weight(&single, &[1]),
            Err(DecodeError::InsufficientSamples(_))
        ));
    }

    #[test]
    fn decode_headline_case() {
        let sp = spec(&[2], 1);
        let r = decode(&simulate_family(&sp, 20, 4, 0x5EED)).unwrap();
        assert_eq!(r.to_spec().unwrap(), sp);
        assert_eq!(r.diagnostics.dim_product, 3);
        assert_eq!(r.diagnostics.dim_sum, 3);
        assert_eq!(r.diagnostics.degree_sum, 2);
        assert_eq!(r.product_poly, RationalPoly::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn decode_standard_rep() {
        let sp = spec(&[1], 0);
        let r = decode(&simulate_family(&sp, 5, 2, 11)).unwrap();
        assert_eq!(r.to_spec().unwrap(), sp);
    }

    #[test]
    fn decode_detects_corruption() {
        let sp = spec(&[1, 2], 1);
        let mut s = simulate_family(&sp, 12, 3, 8);
        s[9].v = s[9].v.clone() + rat(1);
        assert_eq!(decode(&s), Err(DecodeError::CrossValidationFailed { index: 9 }));
    }

    #[test]
    fn decode_skips_zero_product_twists() {
        let sp = spec(&[1], 2);
        let mut s = simulate_family(&sp, 5, 3, 4);
        // t = 0 kills S_1; v must then be 0 and the sample only gets cross-checked
        s.push(FamilySample::new(rat(0), rat(7), rat(0)));
        let r = decode(&s).unwrap();
        assert_eq!(r.det_weight, 2);
        assert_eq!(r.diagnostics.samples_used, 5 + 3);
    }

    #[test]
    fn place_independence() {
        for (f, w) in [(&[2][..], 1), (&[1, 3][..], 0), (&[2, 2, 4][..], 3)] {
            let sp = spec(f, w);
            let a = decode(&simulate_family(&sp, sp.degree_sum() as usize + 2, 2, 1)).unwrap();
            let b = decode(&simulate_family(&sp, sp.degree_sum() as usize + 5, 3, 2)).unwrap();
            assert_eq!((a.factors.clone(), a.det_weight), (b.factors, b.det_weight));
            assert_eq!(a.to_spec().unwrap(), sp);
        }
    }

    fn random_spec() -> impl Strategy<Value = RepSpec> {
        (prop::collection::vec(1u32..=6, 1..=3), 0u32..=5)
            .prop_map(|(f, w)| RepSpec::new(f, w).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip_at_minimum_sample_count(sp in random_spec(), seed in any::<u64>()) {
            let s = simulate_family(&sp, sp.degree_sum() as usize + 2, 2, seed);
            let r = decode(&s).unwrap();
            prop_assert_eq!(r.to_spec().unwrap(), sp.clone());
            prop_assert_eq!(
                r.product_poly.eval(&rat(2)),
                Rational::from_integer(crate::symrep::rep_dim(&sp).into())
            );
        }
    }
}
