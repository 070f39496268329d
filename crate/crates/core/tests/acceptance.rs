//! Acceptance run: ten criteria, each printed as one pass/fail line with
//! its runtime. Exact arithmetic throughout; nothing is compared with a
//! tolerance. Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use classring::cocycle::{
    check_psi_multiplicative, check_sigma_tau, check_three_cocycle, sigma_of_omega, tau_of_omega, ThreeCocycle,
};
use classring::fixtures::{named_group, omega_fixtures};
use classring::framework::{
    check_h1, check_h2, check_h3, check_h4, check_h4prime, compare_products, invariant_basis, product_doublecoset,
    product_full, product_orbit, structure_constants, ComponentSystem, GradedElement, InvariantElement, ProductKind,
};
use classring::group::{FiniteGroup, GroupAction, Subgroup};
use classring::hopf::{build_fusion_system, check_endo_lemma, fusion_table, oracle_tensor, AbelianExtension, FusionTable, HCharacterTable};
use classring::instances::burnside::{build_crossed_burnside, check_green_axioms, crossed_burnside_table, GreenFunctorMaps};
use classring::instances::group_algebra::{build_group_algebra, center_structure_constants};
use classring::scalar::{Scalar, ScalarKind};
use classring::twisted::{simple_modules, TwistedCharacterTable, TwistedGroupAlgebra, TwistedModule};

const Q: ScalarKind = ScalarKind::Rational;

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(named_group(name).unwrap())
}

/// Group-algebra fixtures: (name, system) for L = G by conjugation and L trivial.
fn group_algebras() -> Vec<(String, ComponentSystem)> {
    let mut out = Vec::new();
    for name in ["S3", "D4", "Q8", "Z6"] {
        let g = group(name);
        let conj = GroupAction::conjugation(g.clone());
        let triv = GroupAction::trivial(Arc::new(FiniteGroup::trivial()), g);
        out.push((format!("{name}/conj"), build_group_algebra(&conj, Q).unwrap()));
        out.push((format!("{name}/trivial"), build_group_algebra(&triv, Q).unwrap()));
    }
    out
}

struct Double {
    name: String,
    ext: AbelianExtension,
    fusion: FusionTable,
    table: HCharacterTable,
}

/// D(ℤ/2), D(S₃), the twisted doubles of ℤ/2 and ℤ/4, and the S₃ sign
/// pullback, built once.
fn doubles() -> &'static [Double] {
    static CELL: OnceLock<Vec<Double>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut exts = vec![
            ("D(Z2)".to_string(), AbelianExtension::drinfeld_double(group("Z2")).unwrap()),
            ("D(S3)".to_string(), AbelianExtension::drinfeld_double(group("S3")).unwrap()),
        ];
        for (name, omega) in omega_fixtures() {
            exts.push((format!("D^w({name})"), AbelianExtension::twisted_double(&omega).unwrap()));
        }
        exts.into_iter()
            .map(|(name, ext)| Double {
                fusion: fusion_table(&ext).unwrap(),
                table: HCharacterTable::new(&ext).unwrap(),
                name,
                ext,
            })
            .collect()
    })
}

fn criterion_doubles() -> impl Iterator<Item = &'static Double> {
    // D(Z2), D(S3) and the ω-fixtures on ℤ/2 and ℤ/4
    doubles().iter().filter(|d| !d.name.contains("S3/sign"))
}

/// A group-ring element with small, varied integer coefficients.
fn sample(sys: &ComponentSystem, seed: i64) -> GradedElement {
    let comps = sys
        .group()
        .elements()
        .map(|g| vec![Q.from_i64(((g as i64 + 1) * seed) % 7 - 3)])
        .collect();
    GradedElement::from_components(sys, comps).unwrap()
}

/// Convolution in the group ring, straight from the Cayley table.
fn convolve(table: &[Vec<usize>], a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len()];
    for (x, &ax) in a.iter().enumerate() {
        for (y, &by) in b.iter().enumerate() {
            out[table[x][y]] += ax * by;
        }
    }
    out
}

fn as_ints(e: &GradedElement) -> Vec<i64> {
    e.components().iter().map(|c| c[0].as_integer().unwrap().try_into().unwrap()).collect()
}

fn criterion_1() {
    for (name, sys) in group_algebras() {
        for (h, v) in [("H1", check_h1(&sys)), ("H2", check_h2(&sys)), ("H3", check_h3(&sys)), ("H4", check_h4(&sys))] {
            assert!(v.is_pass(), "{name}: {h} {v:?}");
        }
        let table = sys.group().cayley_rows();
        let n = table.len();
        for g in 0..n {
            for h in 0..n {
                let p = product_full(&sys, &GradedElement::basis(&sys, g, 0), &GradedElement::basis(&sys, h, 0)).unwrap();
                let mut want = vec![0; n];
                want[table[g][h]] = 1;
                assert_eq!(as_ints(&p), want, "{name}: e{g}·e{h}");
            }
        }
        let (a, b) = (sample(&sys, 3), sample(&sys, 5));
        let p = product_full(&sys, &a, &b).unwrap();
        assert_eq!(as_ints(&p), convolve(&table, &as_ints(&a), &as_ints(&b)), "{name}: generic product");
    }
}

fn criterion_2() {
    let s3 = group("S3");
    let table = center_structure_constants(&s3, Q).unwrap();
    // oracle: classes and class sums from explicit permutations
    let perms: Vec<Vec<usize>> = s3.elements().map(|g| s3.permutation(g).unwrap().to_vec()).collect();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..3).map(|i| p[q[i]]).collect() };
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let mul = |a: usize, b: usize| index(&compose(&perms[a], &perms[b]));
    let inv = |a: usize| (0..6).find(|&b| mul(a, b) == 0).unwrap();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for g in 0..6 {
        if classes.iter().any(|c| c.contains(&g)) {
            continue;
        }
        let mut c: Vec<usize> = (0..6).map(|x| mul(mul(x, g), inv(x))).collect();
        c.sort_unstable();
        c.dedup();
        classes.push(c);
    }
    assert_eq!(table.classes, classes);
    let t = classes.len();
    for i in 0..t {
        for j in 0..t {
            let mut sum = [0i64; 6];
            for &a in &classes[i] {
                for &b in &classes[j] {
                    sum[mul(a, b)] += 1;
                }
            }
            let want: Vec<Scalar> = classes.iter().map(|c| Q.from_i64(sum[c[0]])).collect();
            assert_eq!(table.constants[i][j], want, "C{}·C{}", i + 1, j + 1);
        }
    }
    // C₂·C₂ = 3C₁ + 3C₃ with C₂ the transpositions and C₃ the 3-cycles
    let c2 = classes.iter().position(|c| c.len() == 3).unwrap();
    let c3 = classes.iter().position(|c| c.len() == 2).unwrap();
    assert_eq!(table.constants[c2][c2][0], Q.from_i64(3));
    assert_eq!(table.constants[c2][c2][c3], Q.from_i64(3));
    assert!(table.constants[c2][c2][c2].is_zero());
}

fn criterion_3() {
    let action = GroupAction::conjugation(group("S3"));
    let sys = build_group_algebra(&action, Q).unwrap();
    let basis = invariant_basis(&sys).unwrap();
    for a in &basis {
        for b in &basis {
            let cmp = compare_products(&sys, a, b).unwrap();
            assert!(cmp.holds);
            for t in &cmp.terms {
                let lg = action.stabilizer(t.g).unwrap();
                let both = action.stabilizer(t.h).unwrap().intersection(&action.stabilizer(t.k).unwrap());
                assert_eq!(t.index, lg.order() / both.order());
            }
        }
    }
    let f3 = build_group_algebra(&action, ScalarKind::Prime(3)).unwrap();
    let basis = invariant_basis(&f3).unwrap();
    let mut found = false;
    for a in &basis {
        for b in &basis {
            let cmp = compare_products(&f3, a, b).unwrap();
            assert!(cmp.holds);
            for i in 0..f3.orbits().len() {
                let full_zero = cmp.full.component(i).iter().all(Scalar::is_zero);
                let orbit_zero = cmp.orbit.component(i).iter().all(Scalar::is_zero);
                found |= full_zero && !orbit_zero;
            }
        }
    }
    assert!(found, "no pair separates the two products over F3");
}

fn doublecoset_matches_orbit(name: &str, sys: &ComponentSystem) {
    let basis = invariant_basis(sys).unwrap();
    // each invariant basis vector lives on exactly one orbit
    let support = |e: &InvariantElement| {
        (0..sys.orbits().len())
            .find(|&i| !e.component(i).iter().all(Scalar::is_zero))
            .unwrap()
    };
    for a in &basis {
        for b in &basis {
            let (i, j) = (support(a), support(b));
            let dc = product_doublecoset(sys, i, a.component(i), j, b.component(j)).unwrap();
            let orbit = product_orbit(sys, a, b).unwrap();
            assert_eq!(dc.components(), orbit.components(), "{name}: orbits {i}, {j}");
        }
    }
}

fn criterion_4() {
    for (name, sys) in group_algebras() {
        doublecoset_matches_orbit(&name, &sys);
    }
    for name in ["Z2", "Z4", "S3", "D4"] {
        doublecoset_matches_orbit(name, &build_crossed_burnside(&group(name)).unwrap());
    }
    for d in criterion_doubles() {
        doublecoset_matches_orbit(&d.name, build_fusion_system(&d.ext).unwrap().system());
    }
}

fn criterion_5() {
    for name in ["Z2", "Z4", "S3", "D4"] {
        let g = group(name);
        let green = check_green_axioms(&GreenFunctorMaps::new(g.clone()).unwrap());
        assert!(green.is_pass(), "{name}: {green:?}");
        let sys = build_crossed_burnside(&g).unwrap();
        let h4p = check_h4prime(&sys);
        assert!(h4p.is_pass(), "{name}: {h4p:?}");
        let table = crossed_burnside_table(&g).unwrap();
        assert!(table.constants.iter().flatten().flatten().all(|&c| c >= 0), "{name}: negative constant");
        // the integer table is the orbit table of the system
        let exact = structure_constants(&sys, ProductKind::Orbit).unwrap();
        for (a, row) in exact.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let ints: Vec<Scalar> = table.constants[a][b].iter().map(|&c| Q.from_i64(c)).collect();
                assert_eq!(v, &ints);
            }
        }
        if name == "Z2" {
            assert_eq!(table.basis.len(), 4);
        }
    }
}

fn criterion_6() {
    for d in criterion_doubles() {
        let simples = d.table.simples();
        let n = simples.len();
        assert_eq!(n, d.fusion.labels.len(), "{}", d.name);
        for a in 0..n {
            for b in 0..n {
                let oracle = oracle_tensor(&d.ext, &d.table, &simples[a], &simples[b]).unwrap();
                assert_eq!(d.fusion.constants[a][b], oracle, "{}: {a} ⊗ {b}", d.name);
            }
        }
        let action = d.ext.action();
        let squares: usize = d.fusion.labels.iter().map(|l| l.dim * l.dim).sum();
        assert_eq!(squares, action.space().order() * action.actor().order(), "{}", d.name);
        for (l, s) in d.fusion.labels.iter().zip(simples) {
            assert_eq!(l.dim, s.dim());
        }
        if d.name == "D(S3)" {
            assert_eq!((n, squares), (8, 36));
        }
    }
}

fn criterion_7() {
    for d in doubles() {
        let n = d.fusion.labels.len();
        match d.name.as_str() {
            "D(Z2)" | "D^w(Z2/p=0)" | "D^w(Z2/p=1)" => {
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            assert!(d.fusion.associative_on(a, b, c), "{}: ({a},{b},{c})", d.name);
                        }
                    }
                }
            }
            "D(S3)" => {
                // 64 triples spread over all 512 by a fixed stride
                let mut seen = 0;
                for t in 0..64usize {
                    let k = (t * 37 + 11) % (n * n * n);
                    let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
                    assert!(d.fusion.associative_on(a, b, c), "D(S3): ({a},{b},{c})");
                    seen += 1;
                }
                assert!(seen >= 50);
            }
            _ => {}
        }
    }
}

fn criterion_8() {
    let fixtures = omega_fixtures();
    assert!(fixtures.iter().any(|(n, _)| n.starts_with("S3")));
    for (name, omega) in fixtures {
        assert!(omega.modulus() <= 4, "{name}");
        assert!(check_three_cocycle(&omega).is_pass(), "{name}");
        let sigma = sigma_of_omega(&omega).unwrap();
        let tau = tau_of_omega(&omega).unwrap();
        assert!(sigma.check().is_pass(), "{name}: sigma");
        assert!(check_sigma_tau(&sigma, &tau).unwrap().is_pass(), "{name}: sigma/tau");
        let kind = ScalarKind::Cyclotomic(omega.modulus());
        assert!(check_psi_multiplicative(&sigma, &tau, kind).unwrap().is_pass(), "{name}: psi");
    }
    // a perturbed ω is caught
    let bad = ThreeCocycle::cyclic(4, 1).with_entry(1, 2, 3, 3);
    assert!(!check_three_cocycle(&bad).is_pass());
}

fn criterion_9() {
    for d in doubles() {
        for g in d.ext.action().space().elements() {
            let v = check_endo_lemma(&d.ext, g);
            assert!(v.is_pass(), "{}: g={g} {v:?}", d.name);
        }
    }
}

fn check_twisted_table(name: &str, table: &TwistedCharacterTable) {
    let alg = table.algebra();
    let squares: usize = table.dims().iter().map(|d| d * d).sum();
    assert_eq!(squares, alg.order(), "{name}");
    for s in table.simples() {
        assert!(s.check().is_pass(), "{name}: {:?}", s.check());
    }
    let regular = TwistedModule::regular(alg.clone());
    let counts = table.decompose(&regular).unwrap();
    let dims: Vec<u64> = table.dims().iter().map(|&d| d as u64).collect();
    assert_eq!(counts, dims, "{name}: regular module");
}

fn criterion_10() {
    for d in doubles() {
        let action = d.ext.action();
        let space = action.space();
        for g in space.elements() {
            check_twisted_table(&d.name, d.ext.table(g));
            // the restrictions to L_g ∩ L_h used by the fusion formula
            let lg = action.stabilizer(g).unwrap();
            for h in space.elements() {
                let both: Subgroup = lg.intersection(&action.stabilizer(h).unwrap());
                let alg = TwistedGroupAlgebra::from_sigma(d.ext.sigma(), space.mul(g, h), &both, d.ext.kind()).unwrap();
                check_twisted_table(&d.name, &simple_modules(&Arc::new(alg)).unwrap());
            }
        }
    }
}

fn main() {
    let criteria: [(&str, Duration, fn()); 10] = [
        ("framework axioms and group-ring products", Duration::from_secs(5), criterion_1),
        ("center structure constants of S3", Duration::from_secs(1), criterion_2),
        ("full vs orbit product with indices, Q and F3", Duration::from_secs(1), criterion_3),
        ("double-coset product equals orbit product", Duration::from_secs(30), criterion_4),
        ("crossed Burnside rings", Duration::from_secs(60), criterion_5),
        ("fusion products vs tensor-product oracle", Duration::from_secs(300), criterion_6),
        ("associativity of fusion rings", Duration::from_secs(300), criterion_7),
        ("cocycle suite", Duration::from_secs(10), criterion_8),
        ("endomorphism lemma", Duration::from_secs(30), criterion_9),
        ("twisted representation invariants", Duration::from_secs(60), criterion_10),
    ];
    // build the shared doubles up front so no criterion is charged for them
    let t = Instant::now();
    doubles();
    println!("setup: built {} doubles in {:.2?}", doubles().len(), t.elapsed());
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let elapsed = t.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= *limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {limit:?} budget)"),
            Err(_) => "FAIL".to_string(),
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!("criterion {:>2}: {verdict} in {elapsed:.2?} ({name})", i + 1);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
