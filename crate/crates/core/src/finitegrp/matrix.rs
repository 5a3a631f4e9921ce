use std::fmt;

use serde::Serialize;

use super::modarith::{inv_mod, is_unit, mul_mod};
use super::GroupError;

/// `n × n` matrix over `Z/modulus`, entries reduced, row-major.
///
/// Ordering is lexicographic on the entry list, which fixes the element order
/// of every [`GroupSet`](super::GroupSet).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModMatrix {
    n: usize,
    modulus: u64,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(n: usize, modulus: u64, entries: Vec<u64>) -> Result<Self, GroupError> {
        if n == 0 || modulus < 2 {
            return Err(GroupError::InvalidModulus(modulus));
        }
        if entries.len() != n * n {
            return Err(GroupError::ShapeMismatch);
        }
        let entries = entries.into_iter().map(|x| x % modulus).collect();
        Ok(Self { n, modulus, entries })
    }

    pub fn from_i64(n: usize, modulus: u64, entries: &[i64]) -> Result<Self, GroupError> {
        let m = modulus as i64;
        Self::new(n, modulus, entries.iter().map(|x| x.rem_euclid(m) as u64).collect())
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % modulus;
        }
        Self { n, modulus, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.n + c]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|r| (0..self.n).all(|c| self.get(r, c) == u64::from(r == c)))
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus == other.modulus
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_shape(rhs));
        let n = self.n;
        let m = self.modulus;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + mul_mod(a, rhs.entries[k * n + j], m)) % m;
                }
            }
        }
        Self { n, modulus: m, entries: out }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n, self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Determinant via fraction-free (Bareiss) elimination over the integers,
    /// reduced at the end.
    pub fn det(&self) -> u64 {
        let n = self.n;
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k] == 0 {
                let Some(r) = ((k + 1)..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for c in 0..n {
                    a.swap(k * n + c, r * n + c);
                }
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        (sign * a[n * n - 1]).rem_euclid(self.modulus as i128) as u64
    }

    pub fn is_invertible(&self) -> bool {
        is_unit(self.det(), self.modulus)
    }

    /// Gauss–Jordan with unit pivots; valid over `Z/l^m`, where an invertible
    /// matrix always has a unit pivot available in each column.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let m = self.modulus;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n, m).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| is_unit(a[r * n + col], m))?;
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
                inv.swap(piv * n + c, col * n + c);
            }
            let s = inv_mod(a[col * n + col], m)?;
            for c in 0..n {
                a[col * n + c] = mul_mod(a[col * n + c], s, m);
                inv[col * n + c] = mul_mod(inv[col * n + c], s, m);
            }
            for r in 0..n {
                let f = a[r * n + col];
                if r == col || f == 0 {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] = (a[r * n + c] + m - mul_mod(f, a[col * n + c], m)) % m;
                    inv[r * n + c] = (inv[r * n + c] + m - mul_mod(f, inv[col * n + c], m)) % m;
                }
            }
        }
        Some(Self { n, modulus: m, entries: inv })
    }

    /// Commutator `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, other: &Self) -> Option<Self> {
        Some(self.inverse()?.mul(&other.inverse()?).mul(self).mul(other))
    }

    /// Smallest `k ≥ 1` with `self^k = I`, searching up to `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Reduce entries modulo a divisor of the modulus.
    pub fn reduce(&self, modulus: u64) -> Self {
        debug_assert_eq!(self.modulus % modulus, 0);
        Self {
            n: self.n,
            modulus,
            entries: self.entries.iter().map(|x| x % modulus).collect(),
        }
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] mod {}", self.modulus)
    }
}

fn check_index(n: usize, i: usize) -> Result<(), GroupError> {
    if (1..=n).contains(&i) {
        Ok(())
    } else {
        Err(GroupError::IndexOutOfRange { index: i, n })
    }
}

/// `A_i(α)`: identity with the `(i, i)` entry replaced by the unit `α`
/// (1-based index).
pub fn elem_diag(n: usize, i: usize, alpha: u64, modulus: u64) -> Result<ModMatrix, GroupError> {
    check_index(n, i)?;
    if !is_unit(alpha, modulus) {
        return Err(GroupError::NonUnit { value: alpha, modulus });
    }
    let mut m = ModMatrix::identity(n, modulus);
    m.entries[(i - 1) * n + (i - 1)] = alpha % modulus;
    Ok(m)
}

/// `B_ij(β)`: identity with `β` added at `(i, j)`, `i ≠ j` (1-based).
pub fn elem_transvection(
    n: usize,
    i: usize,
    j: usize,
    beta: u64,
    modulus: u64,
) -> Result<ModMatrix, GroupError> {
    check_index(n, i)?;
    check_index(n, j)?;
    if i == j {
        return Err(GroupError::IndexClash(i));
    }
    let mut m = ModMatrix::identity(n, modulus);
    m.entries[(i - 1) * n + (j - 1)] = beta % modulus;
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjTransvection {
    /// `A_i(α) B_ij(β) A_i(α)⁻¹`, computed by multiplication.
    pub result: ModMatrix,
    /// `s` with `result = B_ij(s·β)`, read off the `(i, j)` entry of the
    /// conjugate of `B_ij(1)`.
    pub scale: u64,
    /// `α^{sgn(j−i)}`, i.e. `α` for `j > i` and `α⁻¹` for `j < i`.
    pub signed_exponent_scale: u64,
}

impl ConjTransvection {
    pub fn sign_convention_agrees(&self) -> bool {
        self.scale == self.signed_exponent_scale
    }
}

pub fn conj_transvection(
    n: usize,
    i: usize,
    j: usize,
    alpha: u64,
    beta: u64,
    modulus: u64,
) -> Result<ConjTransvection, GroupError> {
    let a = elem_diag(n, i, alpha, modulus)?;
    let a_inv = a.inverse().expect("A_i(α) is invertible for a unit α");
    let conj = |b: &ModMatrix| a.mul(b).mul(&a_inv);

    let unit = conj(&elem_transvection(n, i, j, 1, modulus)?);
    let scale = unit.get(i - 1, j - 1);
    let result = conj(&elem_transvection(n, i, j, beta, modulus)?);
    debug_assert_eq!(
        result,
        elem_transvection(n, i, j, mul_mod(scale, beta % modulus, modulus), modulus)?
    );

    let alpha_inv = inv_mod(alpha, modulus).expect("checked unit");
    Ok(ConjTransvection {
        result,
        scale,
        signed_exponent_scale: if j > i { alpha % modulus } else { alpha_inv },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_basics() {
        assert_eq!(elem_diag(3, 1, 1, 5).unwrap(), ModMatrix::identity(3, 5));
        assert_eq!(elem_transvection(2, 1, 2, 0, 7).unwrap(), ModMatrix::identity(2, 7));
        let b = |x| elem_transvection(3, 1, 3, x, 7).unwrap();
        assert_eq!(b(3).mul(&b(5)), b(8));
        assert_eq!(elem_diag(2, 1, 5, 25), Err(GroupError::NonUnit { value: 5, modulus: 25 }));
        assert_eq!(elem_transvection(2, 2, 2, 1, 5), Err(GroupError::IndexClash(2)));
        assert!(elem_transvection(2, 1, 3, 1, 5).is_err());
    }

    #[test]
    fn conjugation_by_diagonal_mod5() {
        let a = elem_diag(2, 1, 2, 5).unwrap();
        let b = elem_transvection(2, 1, 2, 1, 5).unwrap();
        let lhs = a.mul(&b).mul(&a.inverse().unwrap());
        assert_eq!(lhs, elem_transvection(2, 1, 2, 2, 5).unwrap());
    }

    #[test]
    fn conj_transvection_scales() {
        let c = conj_transvection(2, 1, 2, 1, 4, 7).unwrap();
        assert_eq!(c.scale, 1);
        // [[2,0],[0,1]]·[[1,1],[0,1]]·[[4,0],[0,1]] = [[1,2],[0,1]] mod 7
        let c = conj_transvection(2, 1, 2, 2, 1, 7).unwrap();
        assert_eq!(c.result, ModMatrix::from_i64(2, 7, &[1, 2, 0, 1]).unwrap());
        assert_eq!(c.scale, 2);
        assert!(c.sign_convention_agrees());
        // row 3 scaled by α, column 3 by α⁻¹: entry (3,1) picks up α
        let c = conj_transvection(3, 3, 1, 3, 2, 7).unwrap();
        assert_eq!(c.scale, 3);
        assert_eq!(c.result, elem_transvection(3, 3, 1, 6, 7).unwrap());
        assert_eq!(c.signed_exponent_scale, 5);
        assert!(!c.sign_convention_agrees());
    }

    #[test]
    fn det_and_inverse_over_prime_powers() {
        let g = ModMatrix::from_i64(3, 25, &[1, 5, 2, 3, 1, 0, 0, 7, 1]).unwrap();
        // det over Z: 1(1) − 5(3) + 2(21) = 28
        assert_eq!(g.det(), 3);
        let gi = g.inverse().unwrap();
        assert!(g.mul(&gi).is_identity());
        let singular = ModMatrix::from_i64(2, 25, &[5, 0, 0, 1]).unwrap();
        assert!(!singular.is_invertible());
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn order_and_pow() {
        let b = elem_transvection(2, 1, 2, 1, 5).unwrap();
        assert_eq!(b.order(100), Some(5));
        assert_eq!(b.pow(5), ModMatrix::identity(2, 5));
        assert_eq!(ModMatrix::identity(2, 5).order(1), Some(1));
    }
}
