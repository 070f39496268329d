//! The group algebra kG as a component system: A(g) = k·g, with L acting
//! by permuting basis elements and m_{g,h}(g, h) = gh.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::{invariant_basis, product_full, ComponentSystem, InvariantElement};
use crate::group::{FiniteGroup, GroupAction};
use crate::scalar::linalg::Matrix;
use crate::scalar::{Scalar, ScalarKind};

pub fn build_group_algebra(action: &GroupAction, kind: ScalarKind) -> Result<ComponentSystem> {
    let labels = action.space().elements().map(|g| vec![format!("g{g}")]).collect();
    ComponentSystem::from_fn(
        action.clone(),
        kind,
        labels,
        |_, _| Matrix::identity(kind, 1),
        |_, _, _, _| vec![kind.one()],
        vec![kind.one()],
    )
}

/// Class-sum structure constants of Z(kG): C_i·C_j = Σ_k constants[i][j][k]·C_k.
#[derive(Debug, Clone, Serialize)]
pub struct CenterTable {
    pub coeff: String,
    /// Conjugacy classes, ordered by their least element.
    pub classes: Vec<Vec<usize>>,
    #[serde(serialize_with = "serialize_cube")]
    pub constants: Vec<Vec<Vec<Scalar>>>,
}

fn serialize_cube<S: serde::Serializer>(cube: &[Vec<Vec<Scalar>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<Vec<serde_json::Value>>> = cube
        .iter()
        .map(|p| p.iter().map(|r| r.iter().map(Scalar::to_json).collect()).collect())
        .collect();
    v.serialize(s)
}

/// Computes the table through the framework product and checks it against
/// a direct count in the group ring; a disagreement is an internal error.
pub fn center_structure_constants(group: &Arc<FiniteGroup>, kind: ScalarKind) -> Result<CenterTable> {
    let action = GroupAction::conjugation(group.clone());
    let sys = build_group_algebra(&action, kind)?;
    let basis = invariant_basis(&sys)?;
    let t = sys.orbits().len();
    if basis.len() != t {
        return Err(Error::Internal(format!("expected {t} class sums, found {}", basis.len())));
    }
    let mut constants = vec![vec![vec![kind.zero(); t]; t]; t];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let prod = product_full(&sys, &a.to_graded(&sys), &b.to_graded(&sys))?;
            let inv = InvariantElement::from_graded(&sys, &prod)?;
            for k in 0..t {
                // basis vectors are [1] at the class representative
                constants[i][j][k] = inv.component(k)[0].clone();
            }
        }
    }
    let oracle = class_sum_oracle(&group.cayley_rows());
    let classes: Vec<Vec<usize>> = sys.orbits().iter().map(|o| o.members.clone()).collect();
    if oracle.0 != classes {
        return Err(Error::Internal("class partition disagrees with the oracle".into()));
    }
    for i in 0..t {
        for j in 0..t {
            for k in 0..t {
                if constants[i][j][k] != kind.from_i64(oracle.1[i][j][k] as i64) {
                    return Err(Error::Internal(format!(
                        "class-sum constant ({i}, {j}, {k}) disagrees with the oracle"
                    )));
                }
            }
        }
    }
    Ok(CenterTable {
        coeff: kind.tag(),
        classes,
        constants,
    })
}

/// Integer class-sum constants straight from a Cayley table: classes by
/// brute-force conjugation, and the coefficient of C_k in C_i·C_j as the
/// number of pairs (a, b) ∈ C_i × C_j with ab equal to the least element of C_k.
pub fn class_sum_oracle(table: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<Vec<Vec<u64>>>) {
    let n = table.len();
    let inverse: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("inverse exists"))
        .collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..n).map(|x| table[table[x][g]][inverse[x]]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    let t = classes.len();
    let mut constants = vec![vec![vec![0u64; t]; t]; t];
    for i in 0..t {
        for j in 0..t {
            for &a in &classes[i] {
                for &b in &classes[j] {
                    let ab = table[a][b];
                    let k = class_of[ab];
                    if ab == classes[k][0] {
                        constants[i][j][k] += 1;
                    }
                }
            }
        }
    }
    (classes, constants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::{check_h1, check_h2, check_h3, check_h4};

    #[test]
    fn s3_center_constants() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let table = center_structure_constants(&g, ScalarKind::Rational).unwrap();
        assert_eq!(table.classes.len(), 3);
        // classes: {e}, then the class of the least non-identity element
        let sizes: Vec<usize> = table.classes.iter().map(Vec::len).collect();
        let c2 = sizes.iter().position(|&s| s == 3).unwrap();
        let c3 = sizes.iter().position(|&s| s == 2).unwrap();
        let k = |v: i64| ScalarKind::Rational.from_i64(v);
        assert_eq!(table.constants[c2][c2], {
            let mut v = vec![k(0); 3];
            v[0] = k(3);
            v[c3] = k(3);
            v
        });
        assert_eq!(table.constants[c2][c3][c2], k(2));
        assert_eq!(table.constants[c3][c3][0], k(2));
        assert_eq!(table.constants[c3][c3][c3], k(1));
    }

    #[test]
    fn abelian_constants_are_the_multiplication_table() {
        let g = Arc::new(FiniteGroup::cyclic(5));
        let table = center_structure_constants(&g, ScalarKind::Rational).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    let want = if table.classes[k][0] == g.mul(table.classes[i][0], table.classes[j][0]) { 1 } else { 0 };
                    assert_eq!(table.constants[i][j][k], ScalarKind::Rational.from_i64(want));
                }
            }
        }
    }

    #[test]
    fn axioms_hold() {
        for g in [FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::trivial()] {
            let g = Arc::new(g);
            let sys = build_group_algebra(&GroupAction::conjugation(g), ScalarKind::Rational).unwrap();
            assert!(check_h1(&sys).is_pass());
            assert!(check_h2(&sys).is_pass());
            assert!(check_h3(&sys).is_pass());
            assert!(check_h4(&sys).is_pass());
        }
    }
}
