use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A left action of `actor` (L) on `space` (G) by group automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    actor: Arc<FiniteGroup>,
    space: Arc<FiniteGroup>,
    act: Vec<usize>,
}

/// An orbit of L on G with its minimal element as representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub rep: usize,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionSpec {
    pub act: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Validates an action table `act[x][g] = ˣg`.
    pub fn new(actor: Arc<FiniteGroup>, space: Arc<FiniteGroup>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let (nl, ng) = (actor.order(), space.order());
        if rows.len() != nl {
            return Err(Error::input("act", format!("expected {nl} rows")));
        }
        let mut act = Vec::with_capacity(nl * ng);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != ng {
                return Err(Error::input(format!("act[{x}]"), format!("expected {ng} entries")));
            }
            for (g, &v) in row.iter().enumerate() {
                if v >= ng {
                    return Err(Error::input(format!("act[{x}][{g}]"), "out of range"));
                }
            }
            act.extend_from_slice(row);
        }
        let a = GroupAction { actor, space, act };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let (l, g) = (&*self.actor, &*self.space);
        for h in g.elements() {
            if self.act(0, h) != h {
                return Err(Error::input(format!("act[0][{h}]"), "identity does not act trivially"));
            }
        }
        for x in l.elements() {
            let mut image = vec![false; g.order()];
            for h in g.elements() {
                image[self.act(x, h)] = true;
                for k in g.elements() {
                    if self.act(x, g.mul(h, k)) != g.mul(self.act(x, h), self.act(x, k)) {
                        return Err(Error::input(
                            format!("act[{x}]"),
                            format!("not a homomorphism at ({h}, {k})"),
                        ));
                    }
                }
            }
            if image.iter().any(|b| !b) {
                return Err(Error::input(format!("act[{x}]"), "not a bijection"));
            }
            for y in l.elements() {
                for h in g.elements() {
                    if self.act(x, self.act(y, h)) != self.act(l.mul(x, y), h) {
                        return Err(Error::input(
                            "act",
                            format!("not an action: x={x}, y={y}, g={h}"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// G acting on itself by conjugation, ˣg = x g x⁻¹.
    pub fn conjugation(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let act = (0..n)
            .flat_map(|x| (0..n).map(move |g| (x, g)))
            .map(|(x, g)| group.conj(x, g))
            .collect();
        GroupAction {
            actor: group.clone(),
            space: group,
            act,
        }
    }

    pub fn trivial(actor: Arc<FiniteGroup>, space: Arc<FiniteGroup>) -> Self {
        let act = (0..actor.order())
            .flat_map(|_| 0..space.order())
            .collect();
        GroupAction { actor, space, act }
    }

    pub fn from_spec(actor: Arc<FiniteGroup>, space: Arc<FiniteGroup>, spec: &ActionSpec) -> Result<Self> {
        Self::new(actor, space, spec.act.clone())
    }

    pub fn to_spec(&self) -> ActionSpec {
        ActionSpec {
            act: self
                .actor
                .elements()
                .map(|x| self.space.elements().map(|g| self.act(x, g)).collect())
                .collect(),
        }
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn space(&self) -> &Arc<FiniteGroup> {
        &self.space
    }

    /// ˣg.
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.act[x * self.space.order() + g]
    }

    /// True when L = G acting by conjugation.
    pub fn is_conjugation(&self) -> bool {
        Arc::ptr_eq(&self.actor, &self.space) || *self.actor == *self.space && {
            let g = &self.space;
            g.elements().all(|x| g.elements().all(|h| self.act(x, h) == g.conj(x, h)))
        }
    }

    /// L_g = {x ∈ L : ˣg = g}.
    pub fn stabilizer(&self, g: usize) -> Result<Subgroup> {
        self.space.check_index(g, "g")?;
        Ok(self.stabilizer_unchecked(g))
    }

    pub(crate) fn stabilizer_unchecked(&self, g: usize) -> Subgroup {
        let members = self
            .actor
            .elements()
            .filter(|&x| self.act(x, g) == g)
            .collect();
        Subgroup::from_sorted(self.actor.order(), members)
    }

    /// Orbits of L on G, ordered by their minimal representative.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.space.order()];
        let mut out = Vec::new();
        for g in self.space.elements() {
            if seen[g] {
                continue;
            }
            let mut members: Vec<usize> = self.actor.elements().map(|x| self.act(x, g)).collect();
            members.sort_unstable();
            members.dedup();
            for &h in &members {
                seen[h] = true;
            }
            out.push(Orbit { rep: g, members });
        }
        out
    }

    /// Index of the orbit containing `g` in [`orbits`](Self::orbits).
    pub fn orbit_index(&self, orbits: &[Orbit], g: usize) -> usize {
        orbits
            .iter()
            .position(|o| o.members.binary_search(&g).is_ok())
            .expect("orbits partition the space")
    }

    /// Minimal `y ∈ L` with ʸfrom = to.
    pub fn transporter(&self, from: usize, to: usize) -> Option<usize> {
        self.actor.elements().find(|&y| self.act(y, from) == to)
    }

    /// Representatives of the L_g-orbits on {(h, k) : hk = g} under
    /// x·(h, k) = (ˣh, ˣk). Since k = h⁻¹g, an orbit is fixed by the
    /// L_g-orbit of h; the representative carries the minimal h.
    pub fn orbit_pair_reps(&self, g: usize) -> Result<Vec<(usize, usize)>> {
        self.space.check_index(g, "g")?;
        Ok(self.pair_reps_under(&self.stabilizer_unchecked(g), g))
    }

    fn pair_reps_under(&self, stab: &Subgroup, g: usize) -> Vec<(usize, usize)> {
        let space = &self.space;
        let mut seen = vec![false; space.order()];
        let mut reps = Vec::new();
        for h in space.elements() {
            if seen[h] {
                continue;
            }
            for &x in stab.members() {
                seen[self.act(x, h)] = true;
            }
            reps.push((h, space.mul(space.inv(h), g)));
        }
        reps
    }

    /// Orbit sizes matching [`orbit_pair_reps`](Self::orbit_pair_reps).
    pub fn orbit_pair_sizes(&self, g: usize) -> Result<Vec<usize>> {
        let stab = self.stabilizer(g)?;
        Ok(self
            .pair_reps_under(&stab, g)
            .into_iter()
            .map(|(h, _)| {
                let mut orbit: Vec<usize> = stab.members().iter().map(|&x| self.act(x, h)).collect();
                orbit.sort_unstable();
                orbit.dedup();
                orbit.len()
            })
            .collect())
    }

    /// The nested representative set T_g: for each L_g-orbit
    /// representative (h, k) with hk = g, and each L_h-orbit
    /// representative (d, e) with de = h, the triple (d, e, k).
    pub fn triple_reps(&self, g: usize) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        for (h, k) in self.orbit_pair_reps(g)? {
            for (d, e) in self.pair_reps_under(&self.stabilizer_unchecked(h), h) {
                out.push((d, e, k));
            }
        }
        Ok(out)
    }

    /// The mirrored representative set: for each L_g-orbit representative
    /// (d, k) with dk = g and each L_k-orbit representative (e, f) with
    /// ef = k, the triple (d, e, f).
    pub fn triple_reps_right(&self, g: usize) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        for (d, k) in self.orbit_pair_reps(g)? {
            for (e, f) in self.pair_reps_under(&self.stabilizer_unchecked(k), k) {
                out.push((d, e, f));
            }
        }
        Ok(out)
    }
}
