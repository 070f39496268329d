use std::collections::HashMap;
use std::sync::Arc;

use super::{all_subgroups, induce_gset, restrict_gset, BurnsideRing};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::verdict::Verdict;

/// Integer matrix with `rows` = target rank, `cols` = source rank.
pub type IntMatrix = Vec<Vec<i64>>;

fn apply(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn add_into(acc: &mut [i64], v: &[i64]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn columns_to_matrix(rows: usize, cols: Vec<Vec<i64>>) -> IntMatrix {
    (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

/// The Burnside Green functor on all subgroups of a group G: rings B(H),
/// restrictions r^H_K and transfers t^H_K for K ≤ H, and conjugations
/// c_x : B(H) → B(ˣH), each stored as an explicit integer matrix.
#[derive(Clone, Debug)]
pub struct GreenFunctorMaps {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<usize>, usize>,
    rings: Vec<BurnsideRing>,
    res: HashMap<(usize, usize), IntMatrix>,
    tr: HashMap<(usize, usize), IntMatrix>,
    // (H, x)
    conj: HashMap<(usize, usize), IntMatrix>,
}

impl GreenFunctorMaps {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        let subgroups = all_subgroups(&group, &Subgroup::whole(&group))?;
        let index: HashMap<Vec<usize>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().to_vec(), i))
            .collect();
        let rings = subgroups
            .iter()
            .map(|s| BurnsideRing::new(group.clone(), s.clone()))
            .collect::<Result<Vec<_>>>()?;
        let mut res = HashMap::new();
        let mut tr = HashMap::new();
        for (h, sh) in subgroups.iter().enumerate() {
            for (k, sk) in subgroups.iter().enumerate() {
                if !sk.is_subgroup_of(sh) {
                    continue;
                }
                let (bh, bk) = (&rings[h], &rings[k]);
                let r = (0..bh.rank()).map(|a| restrict_gset(bh, bk, a)).collect::<Result<Vec<_>>>()?;
                res.insert((h, k), columns_to_matrix(bk.rank(), r));
                let t = (0..bk.rank()).map(|c| induce_gset(bk, bh, c)).collect::<Result<Vec<_>>>()?;
                tr.insert((h, k), columns_to_matrix(bh.rank(), t));
            }
        }
        let mut conj = HashMap::new();
        for (h, sh) in subgroups.iter().enumerate() {
            for x in group.elements() {
                let target = index[sh.conjugate(&group, x).members()];
                let (bh, bt) = (&rings[h], &rings[target]);
                let cols = bh
                    .classes()
                    .iter()
                    .map(|j| {
                        let idx = bt
                            .class_of(&j.conjugate(&group, x))
                            .ok_or_else(|| Error::Internal("conjugate subgroup missing".into()))?;
                        Ok(bt.basis(idx))
                    })
                    .collect::<Result<Vec<_>>>()?;
                conj.insert((h, x), columns_to_matrix(bt.rank(), cols));
            }
        }
        Ok(GreenFunctorMaps {
            group,
            subgroups,
            index,
            rings,
            res,
            tr,
            conj,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// Position of `sub` in [`subgroups`](Self::subgroups).
    pub fn index_of(&self, sub: &Subgroup) -> Result<usize> {
        self.index
            .get(sub.members())
            .copied()
            .ok_or_else(|| Error::input("subgroup", "not a subgroup of the group"))
    }

    pub fn ring(&self, h: usize) -> &BurnsideRing {
        &self.rings[h]
    }

    fn map<'a>(
        table: &'a HashMap<(usize, usize), IntMatrix>,
        key: (usize, usize),
        what: &str,
    ) -> Result<&'a IntMatrix> {
        table
            .get(&key)
            .ok_or_else(|| Error::input(what, format!("no map for subgroup pair {key:?}")))
    }

    /// r^H_K(a).
    pub fn res(&self, h: usize, k: usize, a: &[i64]) -> Result<Vec<i64>> {
        Ok(apply(Self::map(&self.res, (h, k), "res")?, a))
    }

    /// t^H_K(b).
    pub fn tr(&self, h: usize, k: usize, b: &[i64]) -> Result<Vec<i64>> {
        Ok(apply(Self::map(&self.tr, (h, k), "tr")?, b))
    }

    /// c_x : B(H) → B(ˣH); returns the index of ˣH and the image.
    pub fn conj(&self, h: usize, x: usize, a: &[i64]) -> Result<(usize, Vec<i64>)> {
        let target = self.index[self.subgroups[h].conjugate(&self.group, x).members()];
        Ok((target, apply(Self::map(&self.conj, (h, x), "conj")?, a)))
    }

    pub fn res_matrix(&self, h: usize, k: usize) -> Option<&IntMatrix> {
        self.res.get(&(h, k))
    }

    pub fn tr_matrix(&self, h: usize, k: usize) -> Option<&IntMatrix> {
        self.tr.get(&(h, k))
    }

    /// Copy with one transfer-matrix entry replaced.
    pub fn with_transfer_entry(&self, h: usize, k: usize, row: usize, col: usize, value: i64) -> Result<Self> {
        let mut out = self.clone();
        let cell = out
            .tr
            .get_mut(&(h, k))
            .and_then(|m| m.get_mut(row))
            .and_then(|r| r.get_mut(col))
            .ok_or_else(|| Error::input("tr", "entry out of range"))?;
        *cell = value;
        Ok(out)
    }
}

/// Frobenius reciprocity t(r(a)·b) = a·t(b) = t(b·r(a)) and the Mackey
/// formula r^H_J t^H_K = Σ_{x ∈ J\H/K} t^J_{J∩ˣK} r^{ˣK}_{J∩ˣK} c_x for
/// all subgroups J, K ≤ H, together with transitivity of r and t and the
/// composition law for c. All identities are tested on basis elements.
pub fn check_green_axioms(maps: &GreenFunctorMaps) -> Verdict {
    match green_axioms(maps) {
        Ok(v) => v,
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

fn green_axioms(maps: &GreenFunctorMaps) -> Result<Verdict> {
    let g = &*maps.group;
    let subs = &maps.subgroups;
    let n = subs.len();
    for h in 0..n {
        for x in g.elements() {
            for y in g.elements() {
                let bh = maps.ring(h);
                for a in 0..bh.rank() {
                    let (t1, step) = maps.conj(h, y, &bh.basis(a))?;
                    let (t2, lhs) = maps.conj(t1, x, &step)?;
                    let (t3, rhs) = maps.conj(h, g.mul(x, y), &bh.basis(a))?;
                    if t2 != t3 || lhs != rhs {
                        return Ok(Verdict::Fail(format!("c_x c_y != c_xy on B(H{h}), x={x}, y={y}, basis {a}")));
                    }
                }
            }
        }
    }
    for h in 0..n {
        let bh = maps.ring(h);
        for k in (0..n).filter(|&k| subs[k].is_subgroup_of(&subs[h])) {
            let bk = maps.ring(k);
            for j in (0..n).filter(|&j| subs[j].is_subgroup_of(&subs[k])) {
                for a in 0..bh.rank() {
                    let two = maps.res(k, j, &maps.res(h, k, &bh.basis(a))?)?;
                    if two != maps.res(h, j, &bh.basis(a))? {
                        return Ok(Verdict::Fail(format!("restriction not transitive: H{h} > H{k} > H{j}, basis {a}")));
                    }
                }
                let bj = maps.ring(j);
                for c in 0..bj.rank() {
                    let two = maps.tr(h, k, &maps.tr(k, j, &bj.basis(c))?)?;
                    if two != maps.tr(h, j, &bj.basis(c))? {
                        return Ok(Verdict::Fail(format!("transfer not transitive: H{h} > H{k} > H{j}, basis {c}")));
                    }
                }
            }
            // Frobenius
            for a in 0..bh.rank() {
                let ra = maps.res(h, k, &bh.basis(a))?;
                for b in 0..bk.rank() {
                    let tb = maps.tr(h, k, &bk.basis(b))?;
                    let left = maps.tr(h, k, &bk.product(&ra, &bk.basis(b)))?;
                    let mid = bh.product(&bh.basis(a), &tb);
                    let right = maps.tr(h, k, &bk.product(&bk.basis(b), &ra))?;
                    if left != mid || right != bh.product(&tb, &bh.basis(a)) {
                        return Ok(Verdict::Fail(format!(
                            "Frobenius fails for H{h} > H{k}, basis ({a}, {b})"
                        )));
                    }
                }
            }
        }
    }
    // Mackey
    for h in 0..n {
        let members = subs[h].members();
        for k in (0..n).filter(|&k| subs[k].is_subgroup_of(&subs[h])) {
            for j in (0..n).filter(|&j| subs[j].is_subgroup_of(&subs[h])) {
                let reps = double_coset_reps(g, members, &subs[j], &subs[k]);
                let bk = maps.ring(k);
                for b in 0..bk.rank() {
                    let lhs = maps.res(h, j, &maps.tr(h, k, &bk.basis(b))?)?;
                    let mut rhs = vec![0; maps.ring(j).rank()];
                    for &x in &reps {
                        let (xk, cb) = maps.conj(k, x, &bk.basis(b))?;
                        let meet = maps.index_of(&subs[j].intersection(&subs[xk]))?;
                        let term = maps.tr(j, meet, &maps.res(xk, meet, &cb)?)?;
                        add_into(&mut rhs, &term);
                    }
                    if lhs != rhs {
                        return Ok(Verdict::Fail(format!(
                            "Mackey fails for H{h} with J=H{j}, K=H{k}, basis {b}"
                        )));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Representatives x ∈ `host` of the double cosets J x K.
fn double_coset_reps(g: &FiniteGroup, host: &[usize], j: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for &x in host {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &u in j.members() {
            for &v in k.members() {
                covered[g.mul(g.mul(u, x), v)] = true;
            }
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn burnside_functor_satisfies_axioms() {
        for g in [FiniteGroup::symmetric(3), FiniteGroup::cyclic(4), FiniteGroup::cyclic(2)] {
            let maps = GreenFunctorMaps::new(Arc::new(g)).unwrap();
            assert_eq!(check_green_axioms(&maps), Verdict::Pass);
        }
    }

    #[test]
    fn corrupted_transfer_is_caught() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let maps = GreenFunctorMaps::new(g.clone()).unwrap();
        let whole = maps.index_of(&Subgroup::whole(&g)).unwrap();
        let trivial = maps.index_of(&Subgroup::trivial(&g)).unwrap();
        let old = maps.tr_matrix(whole, trivial).unwrap()[0][0];
        let bad = maps.with_transfer_entry(whole, trivial, 0, 0, old + 1).unwrap();
        assert!(matches!(check_green_axioms(&bad), Verdict::Fail(_)));
    }
}
