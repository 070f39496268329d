//! Finite groups as validated Cayley tables, subgroups, actions and the
//! orbit/coset combinatorics used throughout the crate.
//!
//! Elements are indices `0..order`; index 0 is always the identity.
//! Wherever a representative has to be chosen, the minimal index wins.

mod action;
mod cosets;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use action::{ActionSpec, GroupAction, Orbit};
pub use cosets::{double_coset_members, double_cosets, left_coset_reps};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Validates a Cayley table (rows/columns indexed by elements, entry
    /// `table[a][b] = a·b`, index 0 the identity).
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::input("table", "empty Cayley table"));
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(format!("table[{a}]"), format!("expected {n} entries")));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::input(format!("table[{a}][{b}]"), format!("{v} out of range")));
                }
            }
            table.extend_from_slice(row);
        }
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(Error::input(
                    format!("table[0][{a}]"),
                    "index 0 is not a two-sided identity",
                ));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::input(
                            "table",
                            format!("not associative: ({a}*{b})*{c} != {a}*({b}*{c})"),
                        ));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0) {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(Error::input(format!("table[{a}]"), format!("element {a} has no inverse")))
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
            perms: None,
        })
    }

    /// Closure of permutation generators on `0..degree`. The product is
    /// composition `(a·b)(i) = a(b(i))`; elements are indexed in
    /// breadth-first discovery order starting from the identity.
    pub fn from_perm_generators(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::input(format!("perm_generators[{k}]"), "wrong length"));
            }
            for &i in g {
                if i >= degree || seen[i] {
                    return Err(Error::input(format!("perm_generators[{k}]"), "not a permutation"));
                }
                seen[i] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let p: Vec<usize> = (0..degree).map(|i| elements[e][g[i]]).collect();
                if !index.contains_key(&p) {
                    if elements.len() >= 100_000 {
                        return Err(Error::input("perm_generators", "group too large"));
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let p: Vec<usize> = (0..degree).map(|i| elements[a][elements[b][i]]).collect();
                table[a * n + b] = index[&p];
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap())
            .collect();
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
            perms: Some(elements),
        })
    }

    /// ℤ/n with element `i` standing for `i mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(rows).expect("cyclic table is valid")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Symmetric group on `n ≥ 1` points.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(cycle);
        }
        Self::from_perm_generators(n, &gens).expect("symmetric generators are valid")
    }

    /// Dihedral group of order `2n`: element `i + n·j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let idx = |i: usize, j: usize| i % n + n * (j % 2);
        let rows = (0..2 * n)
            .map(|x| {
                let (a, b) = (x % n, x / n);
                (0..2 * n)
                    .map(|y| {
                        let (c, d) = (y % n, y / n);
                        let rot = if b == 0 { a + c } else { a + n - c };
                        idx(rot, b + d)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(rows).expect("dihedral table is valid")
    }

    /// Quaternion group Q₈: index `u + 4·s` is `(-1)^s · u` with
    /// `u ∈ {1, i, j, k}`.
    pub fn quaternion() -> Self {
        // unit products: (unit, sign) for u*v
        let unit = |u: usize, v: usize| -> (usize, usize) {
            match (u, v) {
                (0, v) => (v, 0),
                (u, 0) => (u, 0),
                (a, b) if a == b => (0, 1),
                (1, 2) => (3, 0),
                (2, 3) => (1, 0),
                (3, 1) => (2, 0),
                (2, 1) => (3, 1),
                (3, 2) => (1, 1),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            }
        };
        let rows = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (w, s) = unit(x % 4, y % 4);
                        w + 4 * ((x / 4 + y / 4 + s) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(rows).expect("quaternion table is valid")
    }

    /// `A × B` with element `a + |A|·b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let rows = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x % na, y % na) + na * b.mul(x / na, y / na))
                    .collect()
            })
            .collect();
        Self::from_table(rows).expect("direct product table is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `x g x⁻¹`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inverse[x])
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check_index(&self, g: usize, field: &str) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::input(
                field,
                format!("element {g} out of range for a group of order {}", self.order),
            ))
        }
    }

    /// The permutation an element stands for, when built from generators.
    pub fn permutation(&self, g: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[g].as_slice())
    }

    /// Greedy generating set: minimal-index elements not yet in the span.
    pub fn generators(&self) -> Vec<usize> {
        let whole = Subgroup::whole(self);
        whole.generators(self)
    }

    /// Conjugacy classes (orbits under conjugation), minimal representative first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = self.elements().map(|x| self.conj(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &h in &class {
                seen[h] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

/// A subgroup given by its sorted member list and a membership mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Validates that `members` forms a subgroup of `group`.
    pub fn new(group: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            group.check_index(m, "subgroup")?;
        }
        let s = Self::from_sorted(group.order(), members);
        if !s.contains(0) {
            return Err(Error::input("subgroup", "does not contain the identity"));
        }
        for &a in &s.members {
            if !s.contains(group.inv(a)) {
                return Err(Error::input("subgroup", format!("not closed under inverse at {a}")));
            }
            for &b in &s.members {
                if !s.contains(group.mul(a, b)) {
                    return Err(Error::input("subgroup", format!("not closed: {a}*{b}")));
                }
            }
        }
        Ok(s)
    }

    fn from_sorted(order: usize, members: Vec<usize>) -> Self {
        let mut mask = vec![false; order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { members, mask }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_sorted(group.order(), group.elements().collect())
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_sorted(group.order(), vec![0])
    }

    /// Subgroup generated by `gens`.
    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &g in gens {
                let b = group.mul(a, g);
                if !mask[b] {
                    mask[b] = true;
                    members.push(b);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members, mask }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask.get(g).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        Self::from_sorted(self.mask.len(), members)
    }

    /// `x·self·x⁻¹`.
    pub fn conjugate(&self, group: &FiniteGroup, x: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| group.conj(x, h)).collect();
        members.sort_unstable();
        Self::from_sorted(self.mask.len(), members)
    }

    /// Greedy generating set in index order.
    pub fn generators(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::generated(group, &[]);
        for &m in &self.members {
            if !span.contains(m) {
                gens.push(m);
                span = Subgroup::generated(group, &gens);
            }
        }
        gens
    }

    pub fn is_normal_in(&self, group: &FiniteGroup, host: &Subgroup) -> bool {
        host.members()
            .iter()
            .all(|&x| self.members.iter().all(|&h| self.contains(group.conj(x, h))))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

/// JSON group schema: a Cayley table or permutation generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
    },
    Permutations {
        degree: usize,
        perm_generators: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Table { order, table } => {
                if table.len() != *order {
                    return Err(Error::input("order", "does not match the table size"));
                }
                FiniteGroup::from_table(table.clone())
            }
            GroupSpec::Permutations {
                degree,
                perm_generators,
            } => FiniteGroup::from_perm_generators(*degree, perm_generators),
        }
    }

    pub fn from_group(group: &FiniteGroup) -> Self {
        GroupSpec::Table {
            order: group.order(),
            table: group.cayley_rows(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_have_expected_orders() {
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert_eq!(FiniteGroup::trivial().order(), 1);
        let k4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(k4.exponent(), 2);
    }

    #[test]
    fn quaternion_and_dihedral_differ() {
        let count_involutions =
            |g: &FiniteGroup| g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(count_involutions(&FiniteGroup::quaternion()), 1);
        assert_eq!(count_involutions(&FiniteGroup::dihedral(4)), 5);
        assert!(!FiniteGroup::quaternion().is_abelian());
    }

    #[test]
    fn bad_tables_rejected() {
        // identity misplaced
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        // not associative (a loop without inverses/associativity)
        let t = vec![
            vec![0, 1, 2],
            vec![1, 0, 0],
            vec![2, 2, 0],
        ];
        assert!(FiniteGroup::from_table(t).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 5], vec![1, 0]]).is_err());
    }

    #[test]
    fn perm_group_json() {
        let spec: GroupSpec =
            serde_json::from_str(r#"{"degree": 3, "perm_generators": [[1,0,2],[1,2,0]]}"#).unwrap();
        let g = spec.build().unwrap();
        assert_eq!(g.order(), 6);
        let table_spec: GroupSpec =
            serde_json::from_str(&serde_json::to_string(&GroupSpec::from_group(&g)).unwrap()).unwrap();
        assert_eq!(table_spec.build().unwrap().cayley_rows(), g.cayley_rows());
    }

    #[test]
    fn subgroup_validation() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.elements().find(|&g| s3.element_order(g) == 2).unwrap();
        assert!(Subgroup::new(&s3, vec![0, t]).is_ok());
        let c = s3.elements().find(|&g| s3.element_order(g) == 3).unwrap();
        assert!(Subgroup::new(&s3, vec![0, c]).is_err());
        assert_eq!(Subgroup::generated(&s3, &[c]).order(), 3);
        assert_eq!(s3.generators().len(), 2);
    }

    #[test]
    fn s3_classes() {
        let s3 = FiniteGroup::symmetric(3);
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }
}
