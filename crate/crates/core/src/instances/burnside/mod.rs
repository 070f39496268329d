//! Burnside rings of subgroups, the Burnside Green functor and the crossed
//! Burnside ring.
//!
//! Elements of B(H) are integer vectors over the transitive H-sets [H/J],
//! one per H-conjugacy class of subgroups J. Products, restrictions and
//! inductions are computed by building the relevant finite H-set
//! explicitly and counting orbits by stabilizer class.

mod crossed;
mod green;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

pub use crossed::{build_crossed_burnside, crossed_burnside_table, CrossedBurnsideTable};
pub use green::{check_green_axioms, GreenFunctorMaps};

/// Largest subgroup order for which subgroup lattices are enumerated.
pub const SUBGROUP_BOUND: usize = 48;

/// Every subgroup of `host`, sorted by order and then by member list.
pub fn all_subgroups(group: &FiniteGroup, host: &Subgroup) -> Result<Vec<Subgroup>> {
    if host.order() > SUBGROUP_BOUND {
        return Err(Error::input(
            "host",
            format!("subgroup enumeration is limited to order {SUBGROUP_BOUND}"),
        ));
    }
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let trivial = Subgroup::trivial(group);
    found.insert((1, trivial.members().to_vec()));
    let mut queue = vec![trivial];
    while let Some(s) = queue.pop() {
        for &h in host.members() {
            if s.contains(h) {
                continue;
            }
            let mut gens = s.generators(group);
            gens.push(h);
            let t = Subgroup::generated(group, &gens);
            if found.insert((t.order(), t.members().to_vec())) {
                queue.push(t);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(_, m)| Subgroup::new(group, m).expect("closure of elements is a subgroup"))
        .collect())
}

/// One representative per `host`-conjugacy class of subgroups of `host`,
/// each the least (by order, then member list) in its class.
pub fn subgroup_classes(group: &FiniteGroup, host: &Subgroup) -> Result<Vec<Subgroup>> {
    let all = all_subgroups(group, host)?;
    let mut taken = vec![false; all.len()];
    let index: HashMap<&[usize], usize> = all.iter().enumerate().map(|(i, s)| (s.members(), i)).collect();
    let mut reps = Vec::new();
    for (i, s) in all.iter().enumerate() {
        if taken[i] {
            continue;
        }
        for &x in host.members() {
            taken[index[s.conjugate(group, x).members()]] = true;
        }
        reps.push(s.clone());
    }
    Ok(reps)
}

/// Left cosets hJ of J in H, numbered by first appearance in H.
struct CosetSpace {
    reps: Vec<usize>,
    index_of: Vec<usize>,
}

impl CosetSpace {
    fn new(group: &FiniteGroup, host: &Subgroup, sub: &Subgroup) -> Self {
        let mut index_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for &h in host.members() {
            if index_of[h] != usize::MAX {
                continue;
            }
            for &j in sub.members() {
                index_of[group.mul(h, j)] = reps.len();
            }
            reps.push(h);
        }
        CosetSpace { reps, index_of }
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    /// h·(r_i J).
    fn act(&self, group: &FiniteGroup, h: usize, i: usize) -> usize {
        self.index_of[group.mul(h, self.reps[i])]
    }
}

/// The Burnside ring B(H) of a subgroup H of an ambient group.
#[derive(Clone, Debug)]
pub struct BurnsideRing {
    group: Arc<FiniteGroup>,
    host: Subgroup,
    classes: Vec<Subgroup>,
    class_of: HashMap<Vec<usize>, usize>,
    // [a][b] = [H/J_a]·[H/J_b]
    table: Vec<Vec<Vec<i64>>>,
}

impl BurnsideRing {
    pub fn new(group: Arc<FiniteGroup>, host: Subgroup) -> Result<Self> {
        let classes = subgroup_classes(&group, &host)?;
        let mut class_of = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            for &x in host.members() {
                class_of.insert(c.conjugate(&group, x).members().to_vec(), i);
            }
        }
        let mut ring = BurnsideRing {
            group,
            host,
            classes,
            class_of,
            table: Vec::new(),
        };
        let n = ring.rank();
        let mut table = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in a..n {
                let p = ring.product_set(a, b);
                table[b][a] = p.clone();
                table[a][b] = p;
            }
        }
        ring.table = table;
        Ok(ring)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn host(&self) -> &Subgroup {
        &self.host
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    /// Representatives J of the basis elements [H/J].
    pub fn classes(&self) -> &[Subgroup] {
        &self.classes
    }

    /// Basis index of [H/J] for any subgroup J of H.
    pub fn class_of(&self, sub: &Subgroup) -> Option<usize> {
        self.class_of.get(sub.members()).copied()
    }

    /// Short label for [H/J]: the generators of J, or `1`.
    pub fn label(&self, i: usize) -> String {
        let gens = self.classes[i].generators(&self.group);
        if gens.is_empty() {
            "1".into()
        } else {
            format!(
                "<{}>",
                gens.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            )
        }
    }

    /// [H/H].
    pub fn unit_index(&self) -> usize {
        self.rank() - 1
    }

    pub fn basis(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &[i64] {
        &self.table[a][b]
    }

    pub fn product(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                for (k, &c) in self.table[i][j].iter().enumerate() {
                    out[k] += x * y * c;
                }
            }
        }
        out
    }

    /// Decomposes the H-set on `0..points` with action `act(h, p)` into
    /// transitive pieces.
    pub fn decompose(&self, points: usize, act: impl Fn(usize, usize) -> usize) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        let mut seen = vec![false; points];
        for p in 0..points {
            if seen[p] {
                continue;
            }
            let mut stab = Vec::new();
            for &h in self.host.members() {
                let q = act(h, p);
                seen[q] = true;
                if q == p {
                    stab.push(h);
                }
            }
            let stab = Subgroup::new(&self.group, stab).expect("point stabilizers are subgroups");
            out[self.class_of(&stab).expect("stabilizer lies in the host")] += 1;
        }
        out
    }

    fn cosets(&self, i: usize) -> CosetSpace {
        CosetSpace::new(&self.group, &self.host, &self.classes[i])
    }

    /// [H/J_a] × [H/J_b] with the diagonal action.
    fn product_set(&self, a: usize, b: usize) -> Vec<i64> {
        let (ca, cb) = (self.cosets(a), self.cosets(b));
        let nb = cb.len();
        let g = &*self.group;
        self.decompose(ca.len() * nb, |h, p| ca.act(g, h, p / nb) * nb + cb.act(g, h, p % nb))
    }
}

/// Restriction r^H_K of the basis element [H/J_a] of `from` to `to` = B(K),
/// by the double-coset formula Σ_{x ∈ K\H/J} [K/(K ∩ ˣJ)].
pub fn restrict_gset(from: &BurnsideRing, to: &BurnsideRing, a: usize) -> Result<Vec<i64>> {
    let g = &*from.group;
    if !to.host.is_subgroup_of(&from.host) {
        return Err(Error::input("K", "restriction target is not a subgroup of the host"));
    }
    let j = &from.classes[a];
    let k = &to.host;
    let mut out = vec![0; to.rank()];
    let mut covered = vec![false; g.order()];
    for &x in from.host.members() {
        if covered[x] {
            continue;
        }
        for &u in k.members() {
            for &v in j.members() {
                covered[g.mul(g.mul(u, x), v)] = true;
            }
        }
        let piece = k.intersection(&j.conjugate(g, x));
        out[to.class_of(&piece).expect("intersection lies in K")] += 1;
    }
    Ok(out)
}

/// Restriction computed by letting K act on the cosets H/J and counting orbits.
pub fn restrict_gset_oracle(from: &BurnsideRing, to: &BurnsideRing, a: usize) -> Vec<i64> {
    let cosets = from.cosets(a);
    to.decompose(cosets.len(), |k, p| cosets.act(&from.group, k, p))
}

/// Induction t^H_K of [K/J_c] ∈ B(K) to B(H): the class of [H/J].
pub fn induce_gset(from: &BurnsideRing, to: &BurnsideRing, c: usize) -> Result<Vec<i64>> {
    if !from.host.is_subgroup_of(&to.host) {
        return Err(Error::input("K", "induction source is not a subgroup of the host"));
    }
    let idx = to
        .class_of(&from.classes[c])
        .ok_or_else(|| Error::Internal("subgroup of K missing from B(H)".into()))?;
    Ok(to.basis(idx))
}

/// Induction computed on the explicit set H ×_K (K/J): pairs (h, p)
/// modulo (h, k·p) ~ (h·k, p), with H acting on the first factor.
pub fn induce_gset_oracle(from: &BurnsideRing, to: &BurnsideRing, c: usize) -> Vec<i64> {
    let g = &*from.group;
    let cosets = from.cosets(c);
    let hs = to.host.members();
    let pos: HashMap<usize, usize> = hs.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let np = cosets.len();
    // union-find over pairs (h, p), indexed pos[h] * np + p
    let mut parent: Vec<usize> = (0..hs.len() * np).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (hi, &h) in hs.iter().enumerate() {
        for p in 0..np {
            for &k in from.host.members() {
                let a = hi * np + cosets.act(g, k, p);
                let b = pos[&g.mul(h, k)] * np + p;
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..parent.len()).map(|i| find(&mut parent, i)).collect();
    let mut ids: HashMap<usize, usize> = HashMap::new();
    for r in roots.iter_mut() {
        let n = ids.len();
        *r = *ids.entry(*r).or_insert(n);
    }
    to.decompose(ids.len(), |h, q| {
        let i = roots.iter().position(|&r| r == q).expect("class has a member");
        let (hi, p) = (i / np, i % np);
        roots[pos[&g.mul(h, hs[hi])] * np + p]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(g: &Arc<FiniteGroup>, members: Vec<usize>) -> BurnsideRing {
        BurnsideRing::new(g.clone(), Subgroup::new(g, members).unwrap()).unwrap()
    }

    #[test]
    fn class_counts() {
        let s3 = FiniteGroup::symmetric(3);
        let reps = subgroup_classes(&s3, &Subgroup::whole(&s3)).unwrap();
        assert_eq!(reps.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        let t = FiniteGroup::trivial();
        assert_eq!(subgroup_classes(&t, &Subgroup::whole(&t)).unwrap().len(), 1);
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(subgroup_classes(&c4, &Subgroup::whole(&c4)).unwrap().len(), 3);
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(all_subgroups(&s4, &Subgroup::whole(&s4)).unwrap().len(), 30);
        assert_eq!(subgroup_classes(&s4, &Subgroup::whole(&s4)).unwrap().len(), 11);
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(all_subgroups(&d4, &Subgroup::whole(&d4)).unwrap().len(), 10);
        assert_eq!(subgroup_classes(&d4, &Subgroup::whole(&d4)).unwrap().len(), 8);
    }

    #[test]
    fn bound_is_enforced() {
        let big = FiniteGroup::cyclic(50);
        assert!(subgroup_classes(&big, &Subgroup::whole(&big)).is_err());
    }

    #[test]
    fn s3_burnside_table() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let b = ring(&g, g.elements().collect());
        // basis order: 1, C2, C3, S3
        assert_eq!(b.basis_product(0, 0), &[6, 0, 0, 0]);
        assert_eq!(b.basis_product(1, 1), &[1, 1, 0, 0]);
        assert_eq!(b.basis_product(1, 2), &[1, 0, 0, 0]);
        assert_eq!(b.basis_product(2, 2), &[0, 0, 2, 0]);
        for a in 0..4 {
            assert_eq!(b.basis_product(3, a), b.basis(a).as_slice());
        }
    }

    #[test]
    fn restriction_agrees_with_oracle() {
        for g in [FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::cyclic(4)] {
            let g = Arc::new(g);
            let whole = Subgroup::whole(&g);
            let subs = all_subgroups(&g, &whole).unwrap();
            for h in &subs {
                let bh = BurnsideRing::new(g.clone(), h.clone()).unwrap();
                for k in subs.iter().filter(|k| k.is_subgroup_of(h)) {
                    let bk = BurnsideRing::new(g.clone(), k.clone()).unwrap();
                    for a in 0..bh.rank() {
                        assert_eq!(restrict_gset(&bh, &bk, a).unwrap(), restrict_gset_oracle(&bh, &bk, a));
                    }
                    for c in 0..bk.rank() {
                        assert_eq!(induce_gset(&bk, &bh, c).unwrap(), induce_gset_oracle(&bk, &bh, c));
                    }
                }
            }
        }
    }

    #[test]
    fn s3_to_c3_restriction() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let b = ring(&g, g.elements().collect());
        let c = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let c3 = ring(&g, Subgroup::generated(&g, &[c]).members().to_vec());
        // [S3/C2] restricted to C3 is the free orbit [C3/1]
        assert_eq!(restrict_gset(&b, &c3, 1).unwrap(), vec![1, 0]);
        assert_eq!(restrict_gset(&b, &c3, 3).unwrap(), vec![0, 1]);
        assert_eq!(restrict_gset(&b, &b, 2).unwrap(), b.basis(2));
        assert_eq!(induce_gset(&c3, &b, 1).unwrap(), b.basis(2));
    }
}
