//! The crossed Burnside ring of S₃: check the Green functor axioms and
//! (H4′), then print the integral structure constants.

use std::sync::Arc;

use classring::framework::check_h4prime;
use classring::group::FiniteGroup;
use classring::instances::burnside::{build_crossed_burnside, check_green_axioms, crossed_burnside_table, GreenFunctorMaps};

fn main() -> classring::Result<()> {
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    check_green_axioms(&GreenFunctorMaps::new(s3.clone())?).into_result("Green functor")?;
    check_h4prime(&build_crossed_burnside(&s3)?).into_result("H4'")?;

    let table = crossed_burnside_table(&s3)?;
    println!("rank {}", table.basis.len());
    for (i, (g, label)) in table.basis.iter().enumerate() {
        println!("  e{i}: g = {g}, {label}");
    }
    for (a, row) in table.constants.iter().enumerate() {
        for (b, v) in row.iter().enumerate().filter(|(b, _)| *b >= a) {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(c, &n)| if n == 1 { format!("e{c}") } else { format!("{n}e{c}") })
                .collect();
            println!("e{a} e{b} = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
        }
    }
    Ok(())
}
