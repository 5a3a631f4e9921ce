use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;

use super::matrix::{elem_transvection, ModMatrix};
use super::GroupError;

/// A finite matrix group, stored as its full element list in lexicographic
/// order together with the generators it was built from.
#[derive(Clone)]
pub struct GroupSet {
    elements: Vec<ModMatrix>,
    generators: Vec<ModMatrix>,
    index: HashMap<ModMatrix, usize>,
}

impl PartialEq for GroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for GroupSet {}

impl std::fmt::Debug for GroupSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupSet")
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

impl GroupSet {
    /// Build from a list already known to be a group. Elements are sorted and
    /// deduplicated; an empty generator list is replaced by a small greedy
    /// generating set.
    pub(crate) fn from_parts(mut elements: Vec<ModMatrix>, generators: Vec<ModMatrix>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut g = Self { elements, generators, index };
        if g.generators.is_empty() {
            g.generators = g.greedy_generators();
        }
        g
    }

    pub fn elements(&self) -> &[ModMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[ModMatrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &ModMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn index_of(&self, m: &ModMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity(&self) -> ModMatrix {
        let e = &self.elements[0];
        ModMatrix::identity(e.n(), e.modulus())
    }

    pub fn identity_index(&self) -> usize {
        self.index[&self.identity()]
    }

    pub fn modulus(&self) -> u64 {
        self.elements[0].modulus()
    }

    pub fn n(&self) -> usize {
        self.elements[0].n()
    }

    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].mul(&self.elements[b]);
        self.index[&p]
    }

    pub(crate) fn inv_idx(&self, a: usize) -> usize {
        let inv = self.elements[a].inverse().expect("group elements are invertible");
        self.index[&inv]
    }

    pub(crate) fn inverse_table(&self) -> Vec<usize> {
        (0..self.order()).map(|i| self.inv_idx(i)).collect()
    }

    pub(crate) fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.index_of(g).expect("generators lie in the group"))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Membership bitmap of the subgroup generated by `gens` (indices).
    pub(crate) fn generate(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        let e = self.identity_index();
        member[e] = true;
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul_idx(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    /// Extend `gens` greedily so that it generates the subgroup spanned by
    /// `candidates`; returns the membership bitmap.
    pub(crate) fn extend_generators(
        &self,
        gens: &mut Vec<usize>,
        candidates: impl IntoIterator<Item = usize>,
    ) -> Vec<bool> {
        let mut member = self.generate(gens);
        for c in candidates {
            if !member[c] {
                gens.push(c);
                member = self.generate(gens);
            }
        }
        member
    }

    fn greedy_generators(&self) -> Vec<ModMatrix> {
        let mut gens = Vec::new();
        self.extend_generators(&mut gens, 0..self.order());
        gens.into_iter().map(|i| self.elements[i].clone()).collect()
    }

    /// Subgroup given by a membership bitmap and generator indices.
    pub(crate) fn subgroup(&self, member: &[bool], gens: &[usize]) -> GroupSet {
        let elements = member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.elements[i].clone())
            .collect();
        let generators = if gens.is_empty() {
            vec![self.identity()]
        } else {
            gens.iter().map(|&i| self.elements[i].clone()).collect()
        };
        GroupSet::from_parts(elements, generators)
    }

    /// Conjugacy classes as element indices. The identity class comes first;
    /// the rest are ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let gens = self.generator_indices();
        let gen_invs: Vec<usize> = gens.iter().map(|&g| self.inv_idx(g)).collect();
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut class = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (&g, &gi) in gens.iter().zip(&gen_invs) {
                    let y = self.mul_idx(self.mul_idx(g, x), gi);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        class.push(y);
                        queue.push_back(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        let e = self.identity_index();
        classes.sort_by_key(|c| (c[0] != e, c[0]));
        classes
    }

    /// Normal closure in `self` of the subgroup generated by `gens`.
    pub(crate) fn normal_closure(&self, gens: &mut Vec<usize>) -> Vec<bool> {
        let outer = self.generator_indices();
        let outer_inv: Vec<usize> = outer.iter().map(|&g| self.inv_idx(g)).collect();
        let mut member = self.generate(gens);
        loop {
            let mut grew = false;
            let current = gens.clone();
            for (&x, &xi) in outer.iter().zip(&outer_inv) {
                for &h in &current {
                    let c = self.mul_idx(self.mul_idx(x, h), xi);
                    if !member[c] {
                        gens.push(c);
                        member = self.generate(gens);
                        grew = true;
                    }
                }
            }
            if !grew {
                return member;
            }
        }
    }

    /// Order of the commutator subgroup `[G, G]`.
    pub fn derived_subgroup_order(&self) -> usize {
        let gens = self.generator_indices();
        let mut comms = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let ai = self.inv_idx(a);
                let bi = self.inv_idx(b);
                let c = self.mul_idx(self.mul_idx(ai, bi), self.mul_idx(a, b));
                if !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        let member = self.normal_closure(&mut comms);
        member.iter().filter(|&&m| m).count()
    }

    /// Whether `sub` (same shape) is a normal subgroup of `self`.
    pub fn is_normal_subgroup(&self, sub: &GroupSet) -> bool {
        if sub.elements.iter().any(|h| !self.contains(h)) {
            return false;
        }
        self.generators.iter().all(|x| {
            let xi = x.inverse().expect("invertible");
            sub.generators.iter().all(|h| sub.contains(&x.mul(h).mul(&xi)))
        })
    }
}

/// Breadth-first closure of `generators` under multiplication.
pub fn closure(generators: &[ModMatrix], cap: usize) -> Result<GroupSet, GroupError> {
    let first = generators.first().ok_or(GroupError::EmptyGenerators)?;
    if generators.iter().any(|g| !g.same_shape(first)) {
        return Err(GroupError::ShapeMismatch);
    }
    if let Some(bad) = generators.iter().find(|g| !g.is_invertible()) {
        return Err(GroupError::SingularInput(format!("{bad:?}")));
    }
    let id = ModMatrix::identity(first.n(), first.modulus());
    let mut seen: HashSet<ModMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.mul(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(GroupSet::from_parts(seen.into_iter().collect(), generators.to_vec()))
}

/// Every transvection `B_ij(β)`, `i ≠ j`, `β ≠ 0`.
pub fn all_transvections(n: usize, modulus: u64) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for beta in 1..modulus {
                out.push(elem_transvection(n, i, j, beta, modulus).expect("valid indices"));
            }
        }
    }
    out
}

/// `B_ij(1)` for all `i ≠ j`; these generate `SL_n(Z/N)`.
pub fn unit_transvections(n: usize, modulus: u64) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push(elem_transvection(n, i, j, 1, modulus).expect("valid indices"));
            }
        }
    }
    out
}

/// `SL_n(Z/l^m)` as the closure of the unit transvections.
pub fn special_linear(n: usize, l: u64, m: u32, cap: usize) -> Result<GroupSet, GroupError> {
    let modulus = prime_power(l, m)?;
    if n == 1 {
        return closure(&[ModMatrix::identity(1, modulus)], cap);
    }
    closure(&unit_transvections(n, modulus), cap)
}

pub(crate) fn prime_power(l: u64, m: u32) -> Result<u64, GroupError> {
    if !super::modarith::is_prime(l) {
        return Err(GroupError::NotPrime(l));
    }
    if m == 0 {
        return Err(GroupError::Precondition("exponent m must be at least 1".into()));
    }
    l.checked_pow(m)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| GroupError::Precondition(format!("{l}^{m} is too large")))
}

/// `|SL_n(Z/l^m)| = l^{(m−1)(n²−1)} · l^{n(n−1)/2} · Π_{k=2}^{n} (l^k − 1)`.
pub fn group_order(n: u32, l: u64, m: u32) -> BigUint {
    assert!(m >= 1, "m must be at least 1");
    let lb = BigUint::from(l);
    let exp = (m - 1) * (n * n - 1) + n * (n - 1) / 2;
    let mut acc = lb.pow(exp);
    for k in 2..=n {
        acc *= lb.pow(k) - BigUint::one();
    }
    acc
}
