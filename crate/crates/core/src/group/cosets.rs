use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// One representative per double coset `K x H`, each minimal in index order.
pub fn double_cosets(group: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<Vec<usize>> {
    for (name, s) in [("K", k), ("H", h)] {
        if s.members().iter().any(|&m| m >= group.order()) {
            return Err(Error::input(name, "subgroup not contained in the group"));
        }
    }
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    for x in group.elements() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for y in double_coset_members(group, k, h, x) {
            covered[y] = true;
        }
    }
    Ok(reps)
}

/// The elements of `K x H`, sorted.
pub fn double_coset_members(group: &FiniteGroup, k: &Subgroup, h: &Subgroup, x: usize) -> Vec<usize> {
    let mut out: Vec<usize> = k
        .members()
        .iter()
        .flat_map(|&a| h.members().iter().map(move |&b| (a, b)))
        .map(|(a, b)| group.mul(group.mul(a, x), b))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Minimal representatives of the left cosets `y·K` of `K` in `host`
/// (the identity represents `K` itself).
pub fn left_coset_reps(group: &FiniteGroup, host: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    for &y in host.members() {
        if covered[y] {
            continue;
        }
        reps.push(y);
        for &a in k.members() {
            covered[group.mul(y, a)] = true;
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_group_single_double_coset() {
        let g = FiniteGroup::symmetric(3);
        let w = Subgroup::whole(&g);
        assert_eq!(double_cosets(&g, &w, &w).unwrap(), vec![0]);
    }

    #[test]
    fn transposition_subgroup_double_cosets() {
        let g = FiniteGroup::symmetric(3);
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let k = Subgroup::generated(&g, &[t]);
        let reps = double_cosets(&g, &k, &k).unwrap();
        let mut sizes: Vec<usize> = reps
            .iter()
            .map(|&x| double_coset_members(&g, &k, &k, x).len())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);
    }

    #[test]
    fn trivial_subgroups_give_every_element() {
        let g = FiniteGroup::dihedral(4);
        let t = Subgroup::trivial(&g);
        assert_eq!(double_cosets(&g, &t, &t).unwrap().len(), 8);
    }

    #[test]
    fn coset_reps_partition() {
        let g = FiniteGroup::symmetric(4);
        let w = Subgroup::whole(&g);
        let c = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let k = Subgroup::generated(&g, &[c]);
        let reps = left_coset_reps(&g, &w, &k);
        assert_eq!(reps.len(), 8);
        assert_eq!(reps[0], 0);
    }
}
