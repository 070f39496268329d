//! Fusion rules of D(S₃) from Clifford theory, cross-checked against
//! honest tensor products of modules over the Hopf algebra.

use std::sync::Arc;

use classring::group::FiniteGroup;
use classring::hopf::{fusion_table, oracle_tensor, AbelianExtension, HCharacterTable};

fn main() -> classring::Result<()> {
    let ext = AbelianExtension::drinfeld_double(Arc::new(FiniteGroup::symmetric(3)))?;
    let fusion = fusion_table(&ext)?;
    let names: Vec<String> = fusion.labels.iter().map(|l| format!("{l}({})", l.dim)).collect();
    println!("simples: {}", names.join(" "));

    let table = HCharacterTable::new(&ext)?;
    let simples = table.simples();
    let mut agree = 0;
    for (a, row) in fusion.constants.iter().enumerate() {
        for (b, product) in row.iter().enumerate() {
            if *product == oracle_tensor(&ext, &table, &simples[a], &simples[b])? {
                agree += 1;
            }
            if b >= a {
                let terms: Vec<String> = product
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(c, &n)| if n == 1 { names[c].clone() } else { format!("{n}·{}", names[c]) })
                    .collect();
                println!("{} ⊗ {} = {}", names[a], names[b], terms.join(" + "));
            }
        }
    }
    println!("{agree} of {} products agree with the tensor-product oracle", fusion.labels.len().pow(2));
    Ok(())
}
