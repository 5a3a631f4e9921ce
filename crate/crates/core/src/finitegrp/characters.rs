use num_integer::Integer;
use serde::Serialize;

use super::group::GroupSet;
use super::modarith::{charpoly, inv_mod, is_prime, mul_mod, nullspace, poly_eval, rref};
use super::{GroupError, CLASS_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterDegrees {
    /// Irreducible complex character degrees, ascending.
    pub degrees: Vec<u64>,
    /// Prime used for the modular class-algebra computation.
    pub aux_prime: u64,
    pub exponent: u64,
    pub class_sizes: Vec<usize>,
    pub linear_count: usize,
    pub derived_order: usize,
}

impl CharacterDegrees {
    /// Smallest degree greater than one, if the group is non-abelian.
    pub fn min_nonlinear(&self) -> Option<u64> {
        self.degrees.iter().copied().find(|&d| d > 1)
    }
}

/// Degrees of `big` left over after removing one copy of each degree of
/// `small` (multiset difference), ascending.
pub fn degree_difference(big: &[u64], small: &[u64]) -> Vec<u64> {
    let mut rest = big.to_vec();
    for d in small {
        if let Some(pos) = rest.iter().position(|x| x == d) {
            rest.remove(pos);
        }
    }
    rest
}

const PRIME_ATTEMPTS: usize = 6;

/// Irreducible character degrees via simultaneous eigenvectors of the class
/// multiplication matrices over a prime field `F_p`, where `p` is the smallest
/// prime with `p ≡ 1 (mod exp G)` and `p > 2·sqrt|G|`. Failed splittings are
/// retried with the next such prime.
pub fn character_degrees(g: &GroupSet) -> Result<CharacterDegrees, GroupError> {
    if g.order() > CLASS_CAP {
        return Err(GroupError::CapExceeded { cap: CLASS_CAP });
    }
    let classes = g.conjugacy_classes();
    let mut class_of = vec![0usize; g.order()];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }
    let bound = g.order() as u64;
    let exponent = classes
        .iter()
        .map(|c| g.elements()[c[0]].order(bound).expect("finite group element"))
        .fold(1u64, |acc, o| acc.lcm(&o));

    let consts = structure_constants(g, &classes, &class_of);
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let inverse_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv_idx(c[0])]).collect();
    let derived_order = g.derived_subgroup_order();

    let mut p = first_aux_prime(g.order() as u64, exponent, 0);
    let mut last_err = None;
    for _ in 0..PRIME_ATTEMPTS {
        match degrees_mod_p(g.order() as u64, &consts, &sizes, &inverse_class, p) {
            Ok(mut degrees) => {
                degrees.sort_unstable();
                let linear_count = degrees.iter().filter(|&&d| d == 1).count();
                let square_sum: u64 = degrees.iter().map(|d| d * d).sum();
                if square_sum != g.order() as u64 || linear_count * derived_order != g.order() {
                    return Err(GroupError::SplitFailure(format!(
                        "degrees {degrees:?} fail the order checks"
                    )));
                }
                return Ok(CharacterDegrees {
                    degrees,
                    aux_prime: p,
                    exponent,
                    class_sizes: sizes,
                    linear_count,
                    derived_order,
                });
            }
            Err(e) => last_err = Some(e),
        }
        p = first_aux_prime(g.order() as u64, exponent, p);
    }
    Err(last_err.expect("at least one attempt"))
}

/// Smallest prime `p > after` with `p ≡ 1 (mod step)` and `p² > 4·order`.
fn first_aux_prime(order: u64, step: u64, after: u64) -> u64 {
    let mut p = 1 + step;
    while !(p > after && p * p > 4 * order && is_prime(p)) {
        p += step;
    }
    p
}

/// `c[j][i][k]` counts pairs `(x, y) ∈ C_i × C_j` with `x·y` equal to the
/// representative of `C_k`.
fn structure_constants(g: &GroupSet, classes: &[Vec<usize>], class_of: &[usize]) -> Vec<Vec<Vec<u64>>> {
    let r = classes.len();
    let inv = g.inverse_table();
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    for (k, class) in classes.iter().enumerate() {
        let z = class[0];
        for x in 0..g.order() {
            let y = g.mul_idx(inv[x], z);
            c[class_of[y]][class_of[x]][k] += 1;
        }
    }
    c
}

fn degrees_mod_p(
    order: u64,
    consts: &[Vec<Vec<u64>>],
    sizes: &[usize],
    inverse_class: &[usize],
    p: u64,
) -> Result<Vec<u64>, GroupError> {
    let r = sizes.len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect()];

    for a in consts {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a: Vec<Vec<u64>> = a.iter().map(|row| row.iter().map(|x| x % p).collect()).collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split(&a, space, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(GroupError::SplitFailure(format!(
            "{} common eigenspaces for {r} classes mod {p}",
            spaces.len()
        )));
    }

    spaces
        .iter()
        .map(|space| {
            let v = &space[0];
            let inv0 = inv_mod(v[0], p)
                .ok_or_else(|| GroupError::SplitFailure("eigenvector vanishes at the identity".into()))?;
            let w: Vec<u64> = v.iter().map(|&x| mul_mod(x, inv0, p)).collect();
            let mut norm = 0u64;
            for i in 0..r {
                let size_inv = inv_mod(sizes[i] as u64 % p, p).expect("p is coprime to |G|");
                let term = mul_mod(mul_mod(w[i], w[inverse_class[i]], p), size_inv, p);
                norm = (norm + term) % p;
            }
            let norm_inv = inv_mod(norm, p)
                .ok_or_else(|| GroupError::SplitFailure("degenerate character norm".into()))?;
            let d_squared = mul_mod(order % p, norm_inv, p);
            // d ≤ sqrt|G| < p/2, so d is the unique small root of d² mod p
            (1..)
                .take_while(|d| d * d <= order)
                .find(|&d| mul_mod(d, d, p) == d_squared && order.is_multiple_of(d))
                .ok_or_else(|| GroupError::SplitFailure(format!("{d_squared} has no degree root mod {p}")))
        })
        .collect()
}

/// Split an invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `a` restricted to it.
fn split(a: &[Vec<u64>], space: Vec<Vec<u64>>, p: u64) -> Result<Vec<Vec<Vec<u64>>>, GroupError> {
    let dim = space.len();
    let pivots: Vec<usize> = space
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("basis rows are nonzero"))
        .collect();
    let images: Vec<Vec<u64>> = space.iter().map(|b| apply(a, b, p)).collect();
    // restricted[l][m] = coordinate l of a·b_m
    let restricted: Vec<Vec<u64>> = (0..dim)
        .map(|l| (0..dim).map(|m| images[m][pivots[l]]).collect())
        .collect();
    let cp = charpoly(&restricted, p);

    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        if found == dim {
            break;
        }
        if poly_eval(&cp, lambda, p) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x })
                    .collect()
            })
            .collect();
        let coords = nullspace(&shifted, p);
        let mut basis: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; space[0].len()];
                for (coef, b) in c.iter().zip(&space) {
                    for (vi, &bi) in v.iter_mut().zip(b) {
                        *vi = (*vi + mul_mod(*coef, bi, p)) % p;
                    }
                }
                v
            })
            .collect();
        rref(&mut basis, p);
        found += basis.len();
        parts.push(basis);
    }
    if found != dim {
        return Err(GroupError::SplitFailure(format!(
            "restriction of dimension {dim} is not diagonalisable mod {p}"
        )));
    }
    Ok(parts)
}

fn apply(a: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| (acc + mul_mod(x, y, p)) % p))
        .collect()
}
