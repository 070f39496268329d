use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use classring::cocycle::ThreeCocycle;
use classring::fixtures::named_group;
use classring::framework::{
    invariant_basis, product_full, product_orbit, ComponentSystem, GradedElement, InvariantElement,
};
use classring::group::GroupAction;
use classring::hopf::{fusion_table, AbelianExtension, FusionTable};
use classring::instances::burnside::build_crossed_burnside;
use classring::instances::group_algebra::build_group_algebra;
use classring::scalar::{Scalar, ScalarKind};

const CYC12: ScalarKind = ScalarKind::Cyclotomic(12);

/// Σ c_i ζ₁₂^i with small integer c_i.
fn cyc() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(-3i64..=3, 12).prop_map(|cs| {
        cs.iter().enumerate().fold(CYC12.zero(), |acc, (i, &c)| {
            &acc + &(&CYC12.from_i64(c) * &CYC12.root_of_unity(12, i as i64).unwrap())
        })
    })
}

fn d4_algebra() -> &'static ComponentSystem {
    static CELL: OnceLock<ComponentSystem> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = Arc::new(named_group("D4").unwrap());
        build_group_algebra(&GroupAction::conjugation(g), ScalarKind::Rational).unwrap()
    })
}

fn crossed_s3() -> &'static (ComponentSystem, Vec<InvariantElement>) {
    static CELL: OnceLock<(ComponentSystem, Vec<InvariantElement>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let sys = build_crossed_burnside(&Arc::new(named_group("S3").unwrap())).unwrap();
        let basis = invariant_basis(&sys).unwrap();
        (sys, basis)
    })
}

fn fusion_tables() -> &'static [FusionTable] {
    static CELL: OnceLock<Vec<FusionTable>> = OnceLock::new();
    CELL.get_or_init(|| {
        let exts = [
            AbelianExtension::drinfeld_double(Arc::new(named_group("S3").unwrap())).unwrap(),
            AbelianExtension::twisted_double(&ThreeCocycle::cyclic(4, 1)).unwrap(),
        ];
        exts.iter().map(|e| fusion_table(e).unwrap()).collect()
    })
}

fn graded(sys: &ComponentSystem, coeffs: &[i64]) -> GradedElement {
    let k = sys.kind();
    let comps = sys.group().elements().map(|g| vec![k.from_i64(coeffs[g])]).collect();
    GradedElement::from_components(sys, comps).unwrap()
}

fn combination(sys: &ComponentSystem, basis: &[InvariantElement], coeffs: &[i64]) -> InvariantElement {
    basis
        .iter()
        .zip(coeffs)
        .fold(InvariantElement::zero(sys), |acc, (b, &c)| acc.add(&b.scale(&sys.kind().from_i64(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_ring_laws(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn cyclotomic_inverse(a in cyc()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv()).is_one());
    }

    #[test]
    fn group_ring_product_is_associative(
        a in prop::collection::vec(-2i64..=2, 8),
        b in prop::collection::vec(-2i64..=2, 8),
        c in prop::collection::vec(-2i64..=2, 8),
    ) {
        let sys = d4_algebra();
        let (a, b, c) = (graded(sys, &a), graded(sys, &b), graded(sys, &c));
        let left = product_full(sys, &product_full(sys, &a, &b).unwrap(), &c).unwrap();
        let right = product_full(sys, &a, &product_full(sys, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left.components(), right.components());
    }

    #[test]
    fn crossed_burnside_orbit_product_is_associative(
        a in prop::collection::vec(-2i64..=2, 32),
        b in prop::collection::vec(-2i64..=2, 32),
        c in prop::collection::vec(-2i64..=2, 32),
    ) {
        let (sys, basis) = crossed_s3();
        let n = basis.len();
        let (a, b, c) = (combination(sys, basis, &a[..n]), combination(sys, basis, &b[..n]), combination(sys, basis, &c[..n]));
        let left = product_orbit(sys, &product_orbit(sys, &a, &b).unwrap(), &c).unwrap();
        let right = product_orbit(sys, &a, &product_orbit(sys, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left.components(), right.components());
    }

    #[test]
    fn fusion_rings_are_commutative_and_dimensional(which in 0usize..2, a in 0usize..64, b in 0usize..64) {
        let t = &fusion_tables()[which];
        let n = t.labels.len();
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(&t.constants[a][b], &t.constants[b][a]);
        let dim: usize = t.constants[a][b].iter().zip(&t.labels).map(|(&k, l)| k as usize * l.dim).sum();
        prop_assert_eq!(dim, t.labels[a].dim * t.labels[b].dim);
    }

    #[test]
    fn fusion_rings_are_associative(
        which in 0usize..2,
        x in prop::collection::vec(0u64..3, 16),
        y in prop::collection::vec(0u64..3, 16),
        z in prop::collection::vec(0u64..3, 16),
    ) {
        let t = &fusion_tables()[which];
        let n = t.labels.len();
        let (x, y, z) = (&x[..n], &y[..n], &z[..n]);
        prop_assert_eq!(t.multiply(&t.multiply(x, y), z), t.multiply(x, &t.multiply(y, z)));
    }
}
