use serde::Serialize;

use super::matrix::ModMatrix;
use super::modarith::{is_prime, poly_derivative, poly_gcd, rref};
use super::GroupError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderProfile {
    pub order: u64,
    pub semisimple: bool,
}

/// Monic minimal polynomial of `g` over the prime field, lowest degree first.
fn minimal_polynomial(g: &ModMatrix) -> Vec<u64> {
    let p = g.modulus();
    let n = g.n();
    let mut powers = vec![ModMatrix::identity(n, p)];
    for k in 1..=n {
        powers.push(powers[k - 1].mul(g));
        // solve Σ_{i<k} c_i g^i = g^k: columns are vec(g^i), augmented by vec(g^k)
        let mut rows: Vec<Vec<u64>> = (0..n * n)
            .map(|cell| {
                let mut row: Vec<u64> = powers[..k].iter().map(|m| m.entries()[cell]).collect();
                row.push(powers[k].entries()[cell]);
                row
            })
            .collect();
        let pivots = rref(&mut rows, p);
        if pivots.contains(&k) {
            continue; // inconsistent
        }
        let mut coeffs = vec![0u64; k + 1];
        for (row, &pc) in rows.iter().zip(&pivots) {
            coeffs[pc] = (p - row[k]) % p;
        }
        coeffs[k] = 1;
        return coeffs;
    }
    unreachable!("Cayley–Hamilton bounds the degree by n")
}

/// Order of `g ∈ GL_n(F_l)` and whether its minimal polynomial is squarefree.
pub fn order_profile(g: &ModMatrix) -> Result<OrderProfile, GroupError> {
    let p = g.modulus();
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if g.det() == 0 {
        return Err(GroupError::SingularInput(format!("{g:?}")));
    }
    let bound = (p as u128).pow((g.n() * g.n()) as u32).min(u64::MAX as u128) as u64;
    let order = g.order(bound).expect("invertible matrices have finite order");
    let minpoly = minimal_polynomial(g);
    let semisimple = poly_gcd(&minpoly, &poly_derivative(&minpoly, p), p).len() == 1;
    Ok(OrderProfile { order, semisimple })
}

/// Every invertible `n × n` matrix over `F_l`, in lexicographic order.
pub fn general_linear_elements(n: usize, l: u64, cap: usize) -> Result<Vec<ModMatrix>, GroupError> {
    if !is_prime(l) {
        return Err(GroupError::NotPrime(l));
    }
    let cells = (n * n) as u32;
    let total = (l as u128).checked_pow(cells).filter(|&t| t <= 16 * cap as u128);
    let Some(total) = total else {
        return Err(GroupError::CapExceeded { cap });
    };
    let mut out = Vec::new();
    let mut digits = vec![0u64; n * n];
    for _ in 0..total {
        let g = ModMatrix::new(n, l, digits.iter().rev().copied().collect())?;
        if g.det() != 0 {
            if out.len() >= cap {
                return Err(GroupError::CapExceeded { cap });
            }
            out.push(g);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < l {
                break;
            }
            *d = 0;
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub n: usize,
    pub l: u64,
    pub elements: usize,
    pub non_semisimple: usize,
    /// `l | order(g)` exactly when `g` is not semisimple.
    pub l_divides_iff_non_semisimple: bool,
    /// No element order is divisible by `l²`.
    pub l_squared_divides_none: bool,
    pub max_order: u64,
}

/// Exhaustive order/semisimplicity comparison over `GL_n(F_l)`.
pub fn order_dichotomy(n: usize, l: u64, cap: usize) -> Result<DichotomyReport, GroupError> {
    let els = general_linear_elements(n, l, cap)?;
    let mut non_ss = 0;
    let mut iff = true;
    let mut no_sq = true;
    let mut max_order = 0;
    for g in &els {
        let prof = order_profile(g)?;
        if !prof.semisimple {
            non_ss += 1;
        }
        iff &= (prof.order % l == 0) == !prof.semisimple;
        no_sq &= prof.order % (l * l) != 0;
        max_order = max_order.max(prof.order);
    }
    Ok(DichotomyReport {
        n,
        l,
        elements: els.len(),
        non_semisimple: non_ss,
        l_divides_iff_non_semisimple: iff,
        l_squared_divides_none: no_sq,
        max_order,
    })
}
