//! Symmetric powers of 2×2 matrices, Kronecker products, and the decomposed
//! representation `g ↦ (⊗_i Sym^{n_i} g) · det(g)^w`.
//!
//! Monomial basis of `Sym^n` is `x^n, x^{n-1}y, …, y^n`. Row `k` of
//! `sym_power(g, n)` holds the coordinates of `(ax+by)^{n-k}(cx+dy)^k` for
//! `g = [[a, b], [c, d]]`; with this convention `sym_power(·, n)` is a
//! homomorphism and `sym_power(g, 1) = g`. Kronecker products nest left to
//! right in the (sorted) factor order.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{hom_trace, Polynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymrepError {
    #[error("wrong shape: expected {expected}, got {rows}x{cols}")]
    WrongShape {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("matrix is singular")]
    SingularInput,
    #[error("invalid representation spec: {0}")]
    InvalidSpec(&'static str),
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, SymrepError> {
        if entries.len() != rows * cols {
            return Err(SymrepError::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, SymrepError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        Self::new(r, c, entries)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, SymrepError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    pub fn diag(values: Vec<T>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    fn require_square(&self) -> Result<(), SymrepError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(SymrepError::WrongShape {
                expected: "square",
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, SymrepError> {
        if self.cols != rhs.rows {
            return Err(SymrepError::WrongShape {
                expected: "inner dimensions to agree",
                rows: rhs.rows,
                cols: rhs.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = out.entries[idx].clone() + a.clone() * rhs.get(k, j).clone();
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.clone() * c.clone()).collect(),
        }
    }

    pub fn trace(&self) -> Result<T, SymrepError> {
        self.require_square()?;
        Ok((0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    /// Determinant by Gaussian elimination (field division).
    pub fn det(&self) -> Result<T, SymrepError> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(T::zero());
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = -det;
            }
            let p = m.get(col, col).clone();
            det = det * p.clone();
            for r in (col + 1)..n {
                let f = m.get(r, col).clone() / p.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self, SymrepError> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m.get(r, col).is_zero())
                .ok_or(SymrepError::SingularInput)?;
            m.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let p = m.get(col, col).clone();
            for c in 0..n {
                m.set(col, c, m.get(col, c).clone() / p.clone());
                inv.set(col, c, inv.get(col, c).clone() / p.clone());
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    m.set(r, c, m.get(r, c).clone() - f.clone() * m.get(col, c).clone());
                    inv.set(r, c, inv.get(r, c).clone() - f.clone() * inv.get(col, c).clone());
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &self.entries)
            .finish()
    }
}

fn require_2x2<T: Scalar>(g: &Matrix<T>) -> Result<(), SymrepError> {
    if g.rows == 2 && g.cols == 2 {
        Ok(())
    } else {
        Err(SymrepError::WrongShape {
            expected: "2x2",
            rows: g.rows,
            cols: g.cols,
        })
    }
}

/// Matrix of `g` acting on degree-`n` binary forms.
pub fn sym_power<T: Scalar>(g: &Matrix<T>, n: usize) -> Result<Matrix<T>, SymrepError> {
    require_2x2(g)?;
    let (a, b, c, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    // dehomogenize: u = y/x, so x ↦ a + b·u and y ↦ c + d·u
    let x_img = Polynomial::new(vec![a.clone(), b.clone()]);
    let y_img = Polynomial::new(vec![c.clone(), d.clone()]);

    let mut x_pows = vec![Polynomial::one()];
    let mut y_pows = vec![Polynomial::one()];
    for k in 1..=n {
        x_pows.push(&x_pows[k - 1] * &x_img);
        y_pows.push(&y_pows[k - 1] * &y_img);
    }

    let mut out = Matrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        let image = &x_pows[n - k] * &y_pows[k];
        for (j, coeff) in image.coeffs().iter().enumerate() {
            out.set(k, j, coeff.clone());
        }
    }
    Ok(out)
}

/// Kronecker product of two square matrices.
pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>, SymrepError> {
    a.require_square()?;
    b.require_square()?;
    let (na, nb) = (a.rows, b.rows);
    let n = na * nb;
    let mut out = Matrix::zeros(n, n);
    for i in 0..na {
        for j in 0..na {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out.set(i * nb + k, j * nb + l, aij.clone() * b.get(k, l).clone());
                }
            }
        }
    }
    Ok(out)
}

/// Decomposition parameters: factor multiset `{n_1, …, n_r}` (kept sorted)
/// and the weight `w` of the determinant twist `x ↦ x^w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepSpec {
    factors: Vec<u32>,
    det_weight: u32,
}

impl RepSpec {
    pub fn new(mut factors: Vec<u32>, det_weight: u32) -> Result<Self, SymrepError> {
        if factors.is_empty() {
            return Err(SymrepError::InvalidSpec("factor multiset must be nonempty"));
        }
        if factors.contains(&0) {
            return Err(SymrepError::InvalidSpec("factors must be positive"));
        }
        factors.sort_unstable();
        Ok(Self {
            factors,
            det_weight,
        })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn det_weight(&self) -> u32 {
        self.det_weight
    }

    /// Σ n_i, the degree of the product of trace polynomials.
    pub fn degree_sum(&self) -> u32 {
        self.factors.iter().sum()
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs: Vec<String> = self.factors.iter().map(u32::to_string).collect();
        write!(f, "{{factors: {{{}}}, w: {}}}", fs.join(","), self.det_weight)
    }
}

/// `(⊗_i Sym^{n_i} g) · det(g)^w`.
pub fn build_rep<T: Scalar>(spec: &RepSpec, g: &Matrix<T>) -> Result<Matrix<T>, SymrepError> {
    require_2x2(g)?;
    let det = g.det()?;
    if det.is_zero() {
        return Err(SymrepError::SingularInput);
    }
    let mut acc = Matrix::identity(1);
    for &n in &spec.factors {
        acc = kron(&acc, &sym_power(g, n as usize)?)?;
    }
    Ok(acc.scale(&det.pow_u32(spec.det_weight)))
}

/// Trace of [`build_rep`] at any matrix with trace `t` and determinant `d`.
pub fn rep_trace<T: Scalar>(spec: &RepSpec, t: &T, d: &T) -> T {
    twisted_trace(&spec.factors, spec.det_weight, t, d)
}

/// `d^w · Π_i S_{n_i}(t, d)` for an arbitrary (possibly empty) factor list.
pub fn twisted_trace<T: Scalar>(factors: &[u32], det_weight: u32, t: &T, d: &T) -> T {
    factors
        .iter()
        .fold(d.pow_u32(det_weight), |acc, &n| acc * hom_trace(n as usize, t, d))
}

/// Π (n_i + 1).
pub fn rep_dim(spec: &RepSpec) -> u128 {
    dim_product(&spec.factors)
}

pub fn dim_product(factors: &[u32]) -> u128 {
    factors
        .iter()
        .try_fold(1u128, |acc, &n| acc.checked_mul(n as u128 + 1))
        .expect("representation dimension overflows u128")
}

/// Σ (n_i + 1); equals [`rep_dim`] only when there is a single factor.
pub fn dim_sum(factors: &[u32]) -> u128 {
    factors.iter().map(|&n| n as u128 + 1).sum()
}
