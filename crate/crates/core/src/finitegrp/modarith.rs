//! Residue arithmetic and small dense linear algebra / polynomials over `F_p`.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128 % m as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

pub fn is_unit(a: u64, m: u64) -> bool {
    (a % m).gcd(&m) == 1
}

/// Row-reduce `rows` (each of equal length) in place over `F_p`; returns the
/// pivot column of each surviving row. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p).expect("p is prime");
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c];
            for k in 0..ncols {
                let sub = mul_mod(f, rows[r][k], p);
                rows[i][k] = (rows[i][k] + p - sub) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{u : M u = 0}` for a square matrix `m` (row-major rows) over `F_p`.
pub fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.first().map_or(0, Vec::len);
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI − M)` over `F_p`, lowest degree first,
/// via reduction to upper Hessenberg form.
pub fn charpoly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = ((j + 1)..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p).expect("p is prime");
        for k in (j + 2)..n {
            let u = mul_mod(h[k][j], inv, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let sub = mul_mod(u, h[j + 1][c], p);
                h[k][c] = (h[k][c] + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = mul_mod(u, row[k], p);
                row[j + 1] = (row[j + 1] + add) % p;
            }
        }
    }

    // 1-based recurrence over the Hessenberg entries
    let at = |a: usize, b: usize| h[a - 1][b - 1];
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 1..=n {
        // (x − h_mm)·p_{m−1}
        let prev = &polys[mm - 1];
        let mut next = vec![0u64; mm + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            let sub = mul_mod(at(mm, mm), c, p);
            next[k] = (next[k] + p - sub) % p;
        }
        let mut prod = 1u64;
        for i in 1..mm {
            prod = mul_mod(prod, at(mm - i + 1, mm - i), p);
            let coef = mul_mod(at(mm - i, mm), prod, p);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[mm - i - 1].iter().enumerate() {
                let sub = mul_mod(coef, c, p);
                next[k] = (next[k] + p - sub) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn poly_eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_derivative(a: &[u64], p: u64) -> Vec<u64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mul_mod(c, k as u64 % p, p))
            .collect(),
    )
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).expect("nonzero leading coefficient");
    while r.len() > db {
        let k = r.len() - 1;
        let c = mul_mod(r[k], inv, p);
        for (j, &bc) in b.iter().enumerate() {
            let idx = k - db + j;
            r[idx] = (r[idx] + p - mul_mod(c, bc, p)) % p;
        }
        r = trim(r);
    }
    r
}

/// Monic gcd over `F_p`.
pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p).unwrap();
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_mod(m: &[Vec<u64>], p: u64) -> u64 {
        let n = m.len();
        let mut a = m.to_vec();
        let mut det = 1u64;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r][c] != 0) else {
                return 0;
            };
            if r != c {
                a.swap(r, c);
                det = (p - det) % p;
            }
            det = mul_mod(det, a[c][c], p);
            let inv = inv_mod(a[c][c], p).unwrap();
            for r in (c + 1)..n {
                let f = mul_mod(a[r][c], inv, p);
                for k in c..n {
                    let sub = mul_mod(f, a[c][k], p);
                    a[r][k] = (a[r][k] + p - sub) % p;
                }
            }
        }
        det
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 5), Some(3));
        assert_eq!(inv_mod(5, 25), None);
        assert_eq!(inv_mod(7, 25).map(|x| x * 7 % 25), Some(1));
        assert_eq!(pow_mod(3, 4, 7), 4);
    }

    // charpoly(λ) must equal det(λI − M) for every λ in F_p
    #[test]
    fn charpoly_matches_determinant() {
        let p = 31;
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % p
        };
        for n in 1..=7 {
            for _ in 0..5 {
                let m: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let cp = charpoly(&m, p);
                assert_eq!(cp.len(), n + 1);
                assert_eq!(cp[n], 1);
                for lam in 0..p {
                    let shifted: Vec<Vec<u64>> = (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| {
                                    let d = if i == j { lam } else { 0 };
                                    (d + p - m[i][j]) % p
                                })
                                .collect()
                        })
                        .collect();
                    assert_eq!(poly_eval(&cp, lam, p), det_mod(&shifted, p));
                }
            }
        }
    }

    #[test]
    fn nullspace_basis() {
        let p = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = nullspace(&m, p);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &m {
                let s = row.iter().zip(&v).fold(0, |a, (x, y)| (a + x * y) % p);
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn gcd_and_derivative() {
        let p = 5;
        // (x−1)²(x−2) = x³ − 4x² + 5x − 2 ≡ x³ + x² + 3 mod 5
        let f = vec![3, 0, 1, 1];
        let g = poly_gcd(&f, &poly_derivative(&f, p), p);
        assert_eq!(g, vec![4, 1]); // x − 1
        // x^5 − 1 has zero derivative mod 5
        assert!(poly_derivative(&[4, 0, 0, 0, 0, 1], p).is_empty());
    }
}
