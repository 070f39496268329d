use std::sync::Arc;

use serde::Serialize;

use super::GreenFunctorMaps;
use crate::error::{Error, Result};
use crate::framework::{structure_constants, ComponentSystem, ProductKind};
use crate::group::{FiniteGroup, GroupAction};
use crate::scalar::linalg::Matrix;
use crate::scalar::ScalarKind;

/// Largest group order accepted by [`build_crossed_burnside`].
pub const CROSSED_BOUND: usize = 24;

/// The crossed Burnside system of G (L = G acting by conjugation):
/// A(g) = B(C(g)) ⊗ ℚ, c_{g,x} the conjugation c_x : B(C(g)) → B(C(ˣg)),
/// and m_{g,h}(a, b) = t^{C(gh)}_{D}(r^{C(g)}_{D} a · r^{C(h)}_{D} b)
/// with D = C(g) ∩ C(h).
pub fn build_crossed_burnside(group: &Arc<FiniteGroup>) -> Result<ComponentSystem> {
    let maps = GreenFunctorMaps::new(check_bound(group)?)?;
    build_from_maps(&maps)
}

fn check_bound(group: &Arc<FiniteGroup>) -> Result<Arc<FiniteGroup>> {
    if group.order() > CROSSED_BOUND {
        return Err(Error::input(
            "group",
            format!("crossed Burnside rings are limited to order {CROSSED_BOUND}"),
        ));
    }
    Ok(group.clone())
}

pub(crate) fn build_from_maps(maps: &GreenFunctorMaps) -> Result<ComponentSystem> {
    let group = maps.group().clone();
    let kind = ScalarKind::Rational;
    let action = GroupAction::conjugation(group.clone());
    let cent: Vec<usize> = group
        .elements()
        .map(|g| maps.index_of(&action.stabilizer_unchecked(g)))
        .collect::<Result<_>>()?;
    let labels = group
        .elements()
        .map(|g| {
            let ring = maps.ring(cent[g]);
            (0..ring.rank()).map(|i| format!("g{g}:{}", ring.label(i))).collect()
        })
        .collect();
    let to_scalars = |v: Vec<i64>| v.into_iter().map(|c| kind.from_i64(c)).collect::<Vec<_>>();
    let n = group.order();
    let mut conj = Vec::with_capacity(n * n);
    for g in group.elements() {
        let ring = maps.ring(cent[g]);
        for x in group.elements() {
            let cols = (0..ring.rank())
                .map(|i| Ok(to_scalars(maps.conj(cent[g], x, &ring.basis(i))?.1)))
                .collect::<Result<Vec<_>>>()?;
            let target = maps.ring(cent[group.conj(x, g)]).rank();
            conj.push(Matrix::from_columns(kind, target, &cols));
        }
    }
    let mut mul = Vec::with_capacity(n * n);
    for g in group.elements() {
        for h in group.elements() {
            let d = maps.index_of(&maps.subgroups()[cent[g]].intersection(&maps.subgroups()[cent[h]]))?;
            let (rg, rh) = (maps.ring(cent[g]), maps.ring(cent[h]));
            let restricted_h = (0..rh.rank())
                .map(|j| maps.res(cent[h], d, &rh.basis(j)))
                .collect::<Result<Vec<_>>>()?;
            let mut table = Vec::with_capacity(rg.rank() * rh.rank());
            for i in 0..rg.rank() {
                let a = maps.res(cent[g], d, &rg.basis(i))?;
                for b in &restricted_h {
                    let prod = maps.ring(d).product(&a, b);
                    table.push(to_scalars(maps.tr(cent[group.mul(g, h)], d, &prod)?));
                }
            }
            mul.push(table);
        }
    }
    let unit = {
        let ring = maps.ring(cent[0]);
        to_scalars(ring.basis(ring.unit_index()))
    };
    ComponentSystem::new(action, kind, labels, conj, mul, unit)
}

/// Invariant-basis labels and orbit-product structure constants of the
/// crossed Burnside ring, as integers.
#[derive(Debug, Clone, Serialize)]
pub struct CrossedBurnsideTable {
    /// For each basis element: the conjugacy-class representative g and the
    /// label of the transitive C(g)-set.
    pub basis: Vec<(usize, String)>,
    /// `constants[a][b][c]`: coefficient of basis element c in e_a·e_b.
    pub constants: Vec<Vec<Vec<i64>>>,
}

pub fn crossed_burnside_table(group: &Arc<FiniteGroup>) -> Result<CrossedBurnsideTable> {
    let sys = build_crossed_burnside(group)?;
    let table = structure_constants(&sys, ProductKind::Orbit)?;
    let constants = table
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    v.iter()
                        .map(|s| {
                            s.as_integer()
                                .and_then(|i| i64::try_from(i).ok())
                                .ok_or_else(|| Error::Internal(format!("non-integral constant {s}")))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = sys
        .orbits()
        .iter()
        .flat_map(|o| sys.labels(o.rep).iter().map(move |l| (o.rep, l.clone())))
        .collect::<Vec<_>>();
    if basis.len() != constants.len() {
        return Err(Error::Internal("invariant basis is not the full component basis".into()));
    }
    Ok(CrossedBurnsideTable { basis, constants })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::{check_h1, check_h2, check_h3, check_h4prime, invariant_basis};

    #[test]
    fn z2_has_rank_four() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let sys = build_crossed_burnside(&g).unwrap();
        assert_eq!(invariant_basis(&sys).unwrap().len(), 4);
        assert!(sys.unit()[1].is_one());
    }

    #[test]
    fn trivial_group_gives_integers() {
        let g = Arc::new(FiniteGroup::trivial());
        let t = crossed_burnside_table(&g).unwrap();
        assert_eq!(t.constants, vec![vec![vec![1]]]);
    }

    #[test]
    fn s3_axioms() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let sys = build_crossed_burnside(&g).unwrap();
        assert!(check_h1(&sys).is_pass());
        assert!(check_h2(&sys).is_pass());
        assert!(check_h3(&sys).is_pass());
        assert_eq!(check_h4prime(&sys), crate::Verdict::Pass);
    }
}
