use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::group::GroupSet;
use super::GroupError;

/// A finite abelian group presented as `⊕ Z/d_j` with `d_1 | d_2 | …`,
/// together with the coordinates of every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianStructure {
    pub invariant_factors: Vec<u64>,
    /// `coordinates[i]` belongs to the element at index `i` of the group.
    pub coordinates: Vec<Vec<u64>>,
}

impl AbelianStructure {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    fn element_with(&self, coords: &[u64]) -> Option<usize> {
        self.coordinates.iter().position(|c| c == coords)
    }
}

/// Invariant factors and coordinates of an abelian `GroupSet`.
pub fn abelian_invariants(s: &GroupSet) -> Result<AbelianStructure, GroupError> {
    if !s.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let gens = s.generator_indices();
    let k = gens.len();
    let bound = s.order() as u64;
    let orders: Vec<i128> = gens
        .iter()
        .map(|&g| i128::from(s.elements()[g].order(bound).expect("finite group element")))
        .collect();

    // spanning tree of the Cayley graph: tree words give coordinates in Z^k,
    // and the non-tree edges give the relations
    let e = s.identity_index();
    let mut word: Vec<Option<Vec<i128>>> = vec![None; s.order()];
    word[e] = Some(vec![0; k]);
    let mut queue = std::collections::VecDeque::from([e]);
    let mut lattice = Hermite::new(k);
    for (c, &o) in orders.iter().enumerate() {
        let mut row = vec![0; k];
        row[c] = o;
        lattice.insert(row);
    }
    while let Some(x) = queue.pop_front() {
        let wx = word[x].clone().expect("visited");
        for (c, &g) in gens.iter().enumerate() {
            let y = s.mul_idx(x, g);
            let mut wy = wx.clone();
            wy[c] += 1;
            match &word[y] {
                None => {
                    word[y] = Some(wy);
                    queue.push_back(y);
                }
                Some(existing) => {
                    let rel: Vec<i128> = wy
                        .iter()
                        .zip(existing)
                        .zip(&orders)
                        .map(|((a, b), o)| (a - b).rem_euclid(*o))
                        .collect();
                    lattice.insert(rel);
                    lattice.reduce();
                }
            }
        }
    }

    let (diag, v) = smith(lattice.into_square());
    let kept: Vec<usize> = (0..k).filter(|&j| diag[j] > 1).collect();
    let invariant_factors: Vec<u64> = kept.iter().map(|&j| diag[j] as u64).collect();
    let coordinates = word
        .iter()
        .map(|w| {
            let w = w.as_ref().expect("every element is reached");
            kept.iter()
                .map(|&j| {
                    let x: i128 = (0..k).map(|i| w[i] * v[i][j]).sum();
                    x.rem_euclid(diag[j]) as u64
                })
                .collect()
        })
        .collect();
    Ok(AbelianStructure { invariant_factors, coordinates })
}

/// Row-echelon basis of an integer lattice, built by unimodular insertion.
struct Hermite {
    rows: Vec<Option<Vec<i128>>>,
}

impl Hermite {
    fn new(k: usize) -> Self {
        Self { rows: vec![None; k] }
    }

    fn insert(&mut self, mut r: Vec<i128>) {
        for c in 0..r.len() {
            if r[c] == 0 {
                continue;
            }
            let Some(b) = self.rows[c].take() else {
                self.rows[c] = Some(r);
                return;
            };
            let eg = b[c].extended_gcd(&r[c]);
            let (bq, rq) = (b[c] / eg.gcd, r[c] / eg.gcd);
            let merged: Vec<i128> = b.iter().zip(&r).map(|(x, y)| eg.x * x + eg.y * y).collect();
            r = b.iter().zip(&r).map(|(x, y)| rq * x - bq * y).collect();
            self.rows[c] = Some(merged);
        }
    }

    /// Make pivots positive and reduce entries above each pivot, keeping
    /// entries bounded by the pivots.
    fn reduce(&mut self) {
        let k = self.rows.len();
        for c in 0..k {
            if let Some(row) = self.rows[c].as_mut() {
                if row[c] < 0 {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
            }
        }
        for c in 0..k {
            for j in c + 1..k {
                let (Some(pj), true) = (self.rows[j].clone(), self.rows[c].is_some()) else {
                    continue;
                };
                let row = self.rows[c].as_mut().expect("checked");
                let q = Integer::div_floor(&row[j], &pj[j]);
                if q != 0 {
                    row.iter_mut().zip(&pj).for_each(|(x, y)| *x -= q * y);
                }
            }
        }
    }

    fn into_square(self) -> Vec<Vec<i128>> {
        let k = self.rows.len();
        self.rows
            .into_iter()
            .map(|r| r.unwrap_or_else(|| vec![0; k]))
            .collect()
    }
}

/// Smith normal form `U·a·V = diag`; returns the non-negative diagonal and `V`.
fn smith(mut a: Vec<Vec<i128>>) -> (Vec<i128>, Vec<Vec<i128>>) {
    let k = a.len();
    let mut v: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect();
    let swap_cols = |m: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let add_col = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for row in m.iter_mut() {
            row[dst] -= q * row[src];
        }
    };

    for t in 0..k {
        loop {
            let Some((pi, pj)) = (t..k)
                .flat_map(|i| (t..k).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return (finish_diag(&a), v);
            };
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..k {
                let q = a[i][t] / a[t][t];
                for j in t..k {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..k {
                let q = a[t][j] / a[t][t];
                add_col(&mut a, j, t, q);
                add_col(&mut v, j, t, q);
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..k).find(|&i| (t + 1..k).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => {
                    for j in t..k {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
    }
    (finish_diag(&a), v)
}

fn finish_diag(a: &[Vec<i128>]) -> Vec<i128> {
    (0..a.len()).map(|i| a[i][i].abs()).collect()
}

/// A character `ψ` of an abelian group, stored as its values on the
/// invariant-factor basis, as rationals mod 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualCharacter {
    pub values: Vec<Rational64>,
}

impl DualCharacter {
    fn from_numerators(nums: &[u64], factors: &[u64]) -> Self {
        let values = nums
            .iter()
            .zip(factors)
            .map(|(&a, &d)| Rational64::new(a as i64, d as i64))
            .collect();
        Self { values }
    }

    /// The dual-group law: pointwise addition mod 1.
    pub fn add(&self, other: &Self) -> Self {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a + b).fract())
            .collect();
        Self { values }
    }

    pub fn order(&self) -> u64 {
        self.values.iter().fold(1u64, |acc, v| acc.lcm(&(*v.denom() as u64)))
    }

    /// `ψ(x)` mod 1 for an element with the given coordinates.
    pub fn eval(&self, coords: &[u64]) -> Rational64 {
        self.values
            .iter()
            .zip(coords)
            .fold(Rational64::zero(), |acc, (v, &c)| (acc + v * c as i64).fract())
    }
}

impl Serialize for DualCharacter {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.values.iter().map(ToString::to_string))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualActionReport {
    pub g_order: usize,
    pub s_order: usize,
    pub invariant_factors: Vec<u64>,
    pub coset_representatives: usize,
    pub orbits: Vec<Vec<DualCharacter>>,
    /// Conjugation by every element of `s` fixes every character of `s`.
    pub s_acts_trivially: bool,
}

impl DualActionReport {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// Orbits of `g` on the characters of an abelian normal subgroup `s` under
/// `ψ^x(h) = ψ(x⁻¹ h x)`.
pub fn dual_action(g: &GroupSet, s: &GroupSet) -> Result<DualActionReport, GroupError> {
    if !g.is_normal_subgroup(s) {
        return Err(GroupError::NotNormal);
    }
    let st = abelian_invariants(s)?;
    let factors = st.invariant_factors.clone();
    let r = factors.len();
    let basis: Vec<usize> = (0..r)
        .map(|j| {
            let mut e = vec![0u64; r];
            e[j] = 1;
            st.element_with(&e).expect("basis vectors are realised")
        })
        .collect();
    let all_chars = enumerate(&factors);
    let position: BTreeMap<&[u64], usize> = all_chars.iter().enumerate().map(|(i, c)| (&c[..], i)).collect();

    // x acts on numerators: a'_j = d_j · ψ(x⁻¹ b_j x)
    let act = |x: &super::ModMatrix, chi: &[u64]| -> Vec<u64> {
        let xi = x.inverse().expect("invertible");
        let psi = DualCharacter::from_numerators(chi, &factors);
        basis
            .iter()
            .zip(&factors)
            .map(|(&b, &d)| {
                let conj = xi.mul(&s.elements()[b]).mul(x);
                let idx = s.index_of(&conj).expect("s is normal");
                let val = psi.eval(&st.coordinates[idx]) * d as i64;
                debug_assert!(val.is_integer());
                val.to_integer() as u64
            })
            .collect()
    };

    let reps = transversal(g, s);
    let mut uf: Vec<usize> = (0..all_chars.len()).collect();
    for x in &reps {
        for (i, chi) in all_chars.iter().enumerate() {
            let j = position[&act(x, chi)[..]];
            union(&mut uf, i, j);
        }
    }
    let mut grouped: BTreeMap<usize, Vec<DualCharacter>> = BTreeMap::new();
    for (i, chi) in all_chars.iter().enumerate() {
        grouped
            .entry(find(&mut uf, i))
            .or_default()
            .push(DualCharacter::from_numerators(chi, &factors));
    }
    let mut orbits: Vec<Vec<DualCharacter>> = grouped.into_values().collect();
    for o in orbits.iter_mut() {
        o.sort();
    }
    orbits.sort();

    // exhaustive: every h in s, every character of s
    let s_acts_trivially = s
        .elements()
        .iter()
        .all(|h| all_chars.iter().all(|chi| act(h, chi) == *chi));

    Ok(DualActionReport {
        g_order: g.order(),
        s_order: s.order(),
        invariant_factors: factors,
        coset_representatives: reps.len(),
        orbits,
        s_acts_trivially,
    })
}

/// Every numerator tuple `(a_j mod d_j)`, lexicographically.
fn enumerate(factors: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &d in factors {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Left coset representatives of `s` in `g`, smallest element of each coset.
fn transversal(g: &GroupSet, s: &GroupSet) -> Vec<super::ModMatrix> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for (i, x) in g.elements().iter().enumerate() {
        if covered[i] {
            continue;
        }
        reps.push(x.clone());
        for h in s.elements() {
            covered[g.index_of(&x.mul(h)).expect("s is a subgroup of g")] = true;
        }
    }
    reps
}

fn find(uf: &mut [usize], mut i: usize) -> usize {
    while uf[i] != i {
        uf[i] = uf[uf[i]];
        i = uf[i];
    }
    i
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        uf[ra.max(rb)] = ra.min(rb);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegrp::group::{closure, special_linear};
    use crate::finitegrp::matrix::ModMatrix;
    use crate::finitegrp::{congruence_kernel, CLASS_CAP};

    #[test]
    fn invariants_of_small_groups() {
        let c4 = closure(&[ModMatrix::from_i64(2, 5, &[2, 0, 0, 3]).unwrap()], 10).unwrap();
        assert_eq!(abelian_invariants(&c4).unwrap().invariant_factors, vec![4]);

        // diagonal subgroup of GL_2(F_5) is Z/4 × Z/4
        let d = closure(
            &[
                ModMatrix::from_i64(2, 5, &[2, 0, 0, 1]).unwrap(),
                ModMatrix::from_i64(2, 5, &[1, 0, 0, 2]).unwrap(),
            ],
            100,
        )
        .unwrap();
        let st = abelian_invariants(&d).unwrap();
        assert_eq!(st.invariant_factors, vec![4, 4]);
        let mut seen = st.coordinates.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 16);

        // diag(-1, -1) and diag(2, 2) generate Z/4 only
        let c = closure(
            &[
                ModMatrix::from_i64(2, 5, &[4, 0, 0, 4]).unwrap(),
                ModMatrix::from_i64(2, 5, &[2, 0, 0, 2]).unwrap(),
            ],
            100,
        )
        .unwrap();
        assert_eq!(abelian_invariants(&c).unwrap().invariant_factors, vec![4]);

        let k = congruence_kernel(2, 5, 2, 1000).unwrap();
        assert_eq!(abelian_invariants(&k.kernel).unwrap().invariant_factors, vec![5, 5, 5]);
    }

    #[test]
    fn coordinates_are_a_homomorphism() {
        let d = closure(
            &[
                ModMatrix::from_i64(2, 7, &[3, 0, 0, 1]).unwrap(),
                ModMatrix::from_i64(2, 7, &[1, 0, 0, 6]).unwrap(),
            ],
            100,
        )
        .unwrap();
        let st = abelian_invariants(&d).unwrap();
        assert_eq!(st.invariant_factors, vec![2, 6]);
        for a in 0..d.order() {
            for b in 0..d.order() {
                let ab = d.mul_idx(a, b);
                for (j, &f) in st.invariant_factors.iter().enumerate() {
                    assert_eq!((st.coordinates[a][j] + st.coordinates[b][j]) % f, st.coordinates[ab][j]);
                }
            }
        }
    }

    #[test]
    fn smith_form_of_a_known_matrix() {
        let (diag, _) = smith(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(diag, vec![2, 6, 12]);
    }

    #[test]
    fn character_group_law() {
        let a = DualCharacter::from_numerators(&[3, 1], &[4, 2]);
        let b = DualCharacter::from_numerators(&[2, 1], &[4, 2]);
        let sum = a.add(&b);
        assert_eq!(sum, DualCharacter::from_numerators(&[1, 0], &[4, 2]));
        assert_eq!(a.order(), 4);
        assert_eq!(sum.order(), 4);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"["3/4","1/2"]"#);
    }

    #[test]
    fn central_subgroup_has_singleton_orbits() {
        let g = special_linear(2, 5, 1, 1000).unwrap();
        let z = closure(&[ModMatrix::from_i64(2, 5, &[4, 0, 0, 4]).unwrap()], 10).unwrap();
        let r = dual_action(&g, &z).unwrap();
        assert_eq!(r.orbit_sizes(), vec![1, 1]);
        assert_eq!(r.coset_representatives, 60);
        assert!(r.s_acts_trivially);
    }

    #[test]
    fn monomial_group_moves_diagonal_characters() {
        let gens = [
            ModMatrix::from_i64(2, 5, &[2, 0, 0, 1]).unwrap(),
            ModMatrix::from_i64(2, 5, &[1, 0, 0, 2]).unwrap(),
            ModMatrix::from_i64(2, 5, &[0, 1, 1, 0]).unwrap(),
        ];
        let g = closure(&gens, 100).unwrap();
        assert_eq!(g.order(), 32);
        let d = closure(&gens[..2], 100).unwrap();
        let r = dual_action(&g, &d).unwrap();
        // the swap exchanges ψ(a, b) with ψ(b, a): 4 fixed, 6 pairs
        let mut sizes = r.orbit_sizes();
        sizes.sort();
        assert_eq!(sizes, [vec![1; 4], vec![2; 6]].concat());
        assert!(r.s_acts_trivially);
    }

    #[test]
    fn congruence_kernel_acts_trivially_on_its_dual() {
        let g = special_linear(2, 3, 2, CLASS_CAP).unwrap();
        let k = congruence_kernel(2, 3, 2, 1000).unwrap();
        let r = dual_action(&g, &k.kernel).unwrap();
        assert!(r.s_acts_trivially);
        assert_eq!(r.invariant_factors, vec![3, 3, 3]);
        assert_eq!(r.orbits.iter().map(Vec::len).sum::<usize>(), 27);
        // SL_2(F_3) permutes the 26 non-trivial characters
        assert!(r.orbit_sizes().iter().any(|&n| n > 1));
    }

    #[test]
    fn preconditions() {
        let g = special_linear(2, 3, 1, 100).unwrap();
        let b = closure(&[ModMatrix::from_i64(2, 3, &[1, 1, 0, 1]).unwrap()], 10).unwrap();
        assert_eq!(dual_action(&g, &b).unwrap_err(), GroupError::NotNormal);
        assert_eq!(dual_action(&g, &g).unwrap_err(), GroupError::NotAbelian);
    }
}
