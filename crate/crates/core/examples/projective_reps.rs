//! Projective representations: the Klein four-group with its nontrivial
//! 2-cocycle has a single simple module, of dimension 2; inducing the
//! trivial module of C₃ to S₃ gives 1 + sign.

use std::sync::Arc;

use classring::group::{FiniteGroup, Subgroup};
use classring::scalar::ScalarKind;
use classring::twisted::{induce_module, restrict_module, simple_modules, TwistedGroupAlgebra, TwistedModule};

fn main() -> classring::Result<()> {
    let c2 = FiniteGroup::cyclic(2);
    let v4 = Arc::new(FiniteGroup::direct_product(&c2, &c2));
    // σ(x, y) = (-1)^{x₁y₀} with x = x₀ + 2x₁
    let alg = TwistedGroupAlgebra::new(
        v4.clone(),
        Subgroup::whole(&v4),
        2,
        |x, y| ((x / 2) * (y % 2)) as u32,
        ScalarKind::Cyclotomic(4),
    )?;
    println!("central extension of order {}", alg.central_extension()?.order());
    let table = simple_modules(&Arc::new(alg))?;
    println!("twisted V4: dims {:?}", table.dims());
    for (x, m) in table.simples()[0].matrices().iter().enumerate() {
        println!("  x{x} acts by {m:?}");
    }

    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let kind = ScalarKind::Cyclotomic(6);
    let full = Arc::new(TwistedGroupAlgebra::untwisted(s3.clone(), Subgroup::whole(&s3), kind)?);
    let c3 = Subgroup::generated(&s3, &[(1..6).find(|&x| s3.element_order(x) == 3).unwrap()]);
    let small = Arc::new(full.restrict(&c3)?);
    let trivial = TwistedModule::one_dimensional(small, vec![kind.one(); 3])?;
    let induced = induce_module(&trivial, &full)?;
    let s3_table = simple_modules(&full)?;
    println!("S3 simples: dims {:?}", s3_table.dims());
    println!("Ind(1) from C3 = {:?}", s3_table.decompose(&induced)?);
    let two = &s3_table.simples()[2];
    println!("2-dim simple restricted to C3 has character {:?}", restrict_module(two, &c3)?.character());
    Ok(())
}
