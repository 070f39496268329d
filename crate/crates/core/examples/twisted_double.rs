//! Twisted Drinfel'd doubles D^ω(ℤ/4): the derived σ, τ pass the cocycle
//! suite, and the fusion ring changes with the class of ω.

use classring::cocycle::{check_sigma_tau, check_three_cocycle, sigma_of_omega, tau_of_omega, ThreeCocycle};
use classring::hopf::{build_fusion_system, fusion_table, AbelianExtension};
use classring::framework::check_h4prime;

fn main() -> classring::Result<()> {
    for p in 0..4 {
        let omega = ThreeCocycle::cyclic(4, p);
        check_three_cocycle(&omega).into_result("3-cocycle")?;
        let (sigma, tau) = (sigma_of_omega(&omega)?, tau_of_omega(&omega)?);
        check_sigma_tau(&sigma, &tau)?.into_result("sigma/tau")?;

        let ext = AbelianExtension::twisted_double(&omega)?;
        let fusion = fusion_table(&ext)?;
        // a = flux 1 with trivial charge; its order in the fusion group
        let a = ext.label_index(1, 0)?;
        let mut power = fusion.basis(a);
        let mut order = 1;
        while power != fusion.basis(0) {
            power = fusion.multiply(&power, &fusion.basis(a));
            order += 1;
        }
        let h4p = check_h4prime(build_fusion_system(&ext)?.system());
        println!("p = {p}: field {}, {} simples, flux order {order}, H4' {:?}", ext.kind().tag(), fusion.labels.len(), h4p);
    }
    Ok(())
}
