//! Class-sum structure constants of Z(ℚS₃), and how the product inherited
//! from the group algebra differs from the orbit product over 𝔽₃.

use std::sync::Arc;

use classring::framework::{compare_products, invariant_basis};
use classring::group::{FiniteGroup, GroupAction};
use classring::instances::group_algebra::{build_group_algebra, center_structure_constants};
use classring::scalar::ScalarKind;

fn main() -> classring::Result<()> {
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let table = center_structure_constants(&s3, ScalarKind::Rational)?;
    println!("classes: {:?}", table.classes);
    for (i, row) in table.constants.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{c}·C{}", k + 1))
                .collect();
            println!("C{} C{} = {}", i + 1, j + 1, terms.join(" + "));
        }
    }

    // over 𝔽₃ the index 3 kills C₂·C₂ in the inherited product
    let sys = build_group_algebra(&GroupAction::conjugation(s3), ScalarKind::Prime(3))?;
    let basis = invariant_basis(&sys)?;
    let cmp = compare_products(&sys, &basis[1], &basis[1])?;
    println!("over F3: full {:?}", cmp.full);
    println!("         orbit {:?}", cmp.orbit);
    for t in cmp.terms.iter().filter(|t| t.index > 1) {
        println!("  index |L_{} : L_{} ∩ L_{}| = {}", t.g, t.h, t.k, t.index);
    }
    Ok(())
}
