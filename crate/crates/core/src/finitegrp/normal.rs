use std::collections::BTreeSet;

use serde::Serialize;

use super::group::{special_linear, GroupSet};
use super::{GroupError, CLASS_CAP};

/// All normal subgroups of `g`, ordered by size then elements.
///
/// Every normal subgroup is a union of conjugacy classes, hence the join of
/// the normal closures of the classes it contains. So the normal subgroups
/// are exactly the joins of class closures, found by closing the set of class
/// closures under pairwise joins.
pub fn normal_subgroups(g: &GroupSet) -> Result<Vec<GroupSet>, GroupError> {
    if g.order() > CLASS_CAP {
        return Err(GroupError::CapExceeded { cap: CLASS_CAP });
    }
    let mut found: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    let mut keys: BTreeSet<Vec<bool>> = BTreeSet::new();

    for class in g.conjugacy_classes() {
        let mut gens = Vec::new();
        let member = g.extend_generators(&mut gens, class);
        if keys.insert(member.clone()) {
            found.push((member, gens));
        }
    }

    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let (a, b) = (&found[i], &found[j]);
            if is_subset(&a.0, &b.0) || is_subset(&b.0, &a.0) {
                continue;
            }
            let mut gens = a.1.clone();
            let candidates = b.1.clone();
            let member = g.extend_generators(&mut gens, candidates);
            if keys.insert(member.clone()) {
                found.push((member, gens));
            }
        }
        i += 1;
    }

    let mut out: Vec<GroupSet> = found
        .iter()
        .map(|(member, gens)| g.subgroup(member, gens))
        .collect();
    for n in &out {
        debug_assert!(g.is_normal_subgroup(n));
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    Ok(out)
}

fn is_subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalNormalReport {
    pub l: u64,
    pub order: usize,
    pub center_order: usize,
    pub normal_orders: Vec<usize>,
    /// Normal subgroups are exactly trivial, centre, whole group.
    pub only_center_and_trivial: bool,
}

/// Normal-subgroup structure of `SL_2(F_l)` for a prime `l > 3`.
pub fn verify_local_normal_structure(l: u64) -> Result<LocalNormalReport, GroupError> {
    if l <= 3 {
        return Err(GroupError::Precondition(format!(
            "residue characteristic must exceed 3, got {l}"
        )));
    }
    let g = special_linear(2, l, 1, CLASS_CAP)?;
    let normals = normal_subgroups(&g)?;
    let center: Vec<_> = g
        .elements()
        .iter()
        .filter(|x| g.generators().iter().all(|y| x.mul(y) == y.mul(x)))
        .cloned()
        .collect();
    let normal_orders: Vec<usize> = normals.iter().map(GroupSet::order).collect();
    let only = normals.len() == 3
        && normals[0].order() == 1
        && normals[1].elements() == &center[..]
        && normals[2] == g;
    Ok(LocalNormalReport {
        l,
        order: g.order(),
        center_order: center.len(),
        normal_orders,
        only_center_and_trivial: only,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegrp::group::closure;
    use crate::finitegrp::matrix::ModMatrix;

    #[test]
    fn sl2_f5_normal_subgroups() {
        let g = special_linear(2, 5, 1, 1000).unwrap();
        let ns = normal_subgroups(&g).unwrap();
        let orders: Vec<usize> = ns.iter().map(GroupSet::order).collect();
        assert_eq!(orders, vec![1, 2, 120]);
        let minus = ModMatrix::from_i64(2, 5, &[-1, 0, 0, -1]).unwrap();
        assert!(ns[1].contains(&minus));
        assert!(ns.iter().all(|n| g.is_normal_subgroup(n)));
    }

    #[test]
    fn local_structure() {
        for l in [5, 7] {
            let r = verify_local_normal_structure(l).unwrap();
            assert!(r.only_center_and_trivial, "{r:?}");
            assert_eq!(r.center_order, 2);
        }
        assert!(verify_local_normal_structure(3).is_err());
    }

    #[test]
    fn cyclic_of_order_four() {
        let gen = ModMatrix::from_i64(2, 5, &[2, 0, 0, 3]).unwrap();
        let g = closure(&[gen], 10).unwrap();
        let orders: Vec<usize> = normal_subgroups(&g).unwrap().iter().map(GroupSet::order).collect();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    #[test]
    fn sl2_f3_has_quaternion_normal_subgroup() {
        let g = special_linear(2, 3, 1, 100).unwrap();
        let orders: Vec<usize> = normal_subgroups(&g).unwrap().iter().map(GroupSet::order).collect();
        assert_eq!(orders, vec![1, 2, 8, 24]);
    }

    #[test]
    fn abelian_group_every_subgroup_is_normal() {
        // (Z/5)^3 has 1 + 31 + 31 + 1 subgroups
        let k = crate::finitegrp::congruence_kernel(2, 5, 2, 1000).unwrap();
        assert_eq!(normal_subgroups(&k.kernel).unwrap().len(), 64);
    }
}
