//! A component system built by hand: ℚ[ℤ/3] graded by itself, with ℤ/2
//! acting by inversion on the grading and trivially on coefficients.
//! Checks the axioms, multiplies invariants and writes the system as JSON.

use std::sync::Arc;

use classring::framework::{
    check_h1, check_h2, check_h3, check_h4, check_h4prime, structure_constants, ComponentSystem, ProductKind,
};
use classring::group::{FiniteGroup, GroupAction};
use classring::scalar::linalg::Matrix;
use classring::scalar::ScalarKind;

fn main() -> classring::Result<()> {
    let q = ScalarKind::Rational;
    let c3 = Arc::new(FiniteGroup::cyclic(3));
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let action = GroupAction::new(c2, c3.clone(), vec![vec![0, 1, 2], vec![0, 2, 1]])?;
    let sys = ComponentSystem::from_fn(
        action,
        q,
        (0..3).map(|g| vec![format!("t^{g}")]).collect(),
        |_, _| Matrix::identity(q, 1),
        |_, _, _, _| vec![q.one()],
        vec![q.one()],
    )?;
    for (name, v) in [
        ("H1", check_h1(&sys)),
        ("H2", check_h2(&sys)),
        ("H3", check_h3(&sys)),
        ("H4", check_h4(&sys)),
        ("H4'", check_h4prime(&sys)),
    ] {
        println!("{name}: {v:?}");
    }
    // invariants: 1 and t + t²; the orbit product drops the index 2
    for which in [ProductKind::Full, ProductKind::Orbit] {
        println!("{which:?}: {:?}", structure_constants(&sys, which)?);
    }
    println!("{}", serde_json::to_string(&sys.to_spec()).expect("serializes"));
    Ok(())
}
