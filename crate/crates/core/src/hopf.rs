//! The cocentral abelian extension H = (kG)*#_σ^τ L, its simple modules
//! built from stabilizer algebras, and its fusion rules computed two ways:
//! by the double-coset product formula and by tensoring modules through
//! the coproduct.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::cocycle::{check_coproduct_multiplicative, check_sigma_tau, SigmaFamily, TauFamily};
use crate::error::{Error, Result};
use crate::framework::{check_h1, check_h2, check_h3, check_h4prime, ComponentSystem};
use crate::group::{double_cosets, left_coset_reps, FiniteGroup, GroupAction, Orbit, Subgroup};
use crate::scalar::linalg::{commutant, solve_linear, Matrix};
use crate::scalar::{Scalar, ScalarKind};
use crate::twisted::{
    induce_module, restrict_module, simple_modules, tensor_twisted, TwistedCharacterTable, TwistedGroupAlgebra,
    TwistedModule,
};
use crate::verdict::Verdict;

/// H = (kG)*#_σ^τ L with basis p_g x̄, product
/// (p_g x̄)(p_h ȳ) = δ_{g,ˣh}·σ_g(x,y)·p_g (xy)‾ and coproduct
/// Δ(p_g x̄) = Σ_{hk=g} τ_{h,k}(x)·p_h x̄ ⊗ p_k x̄.
pub struct AbelianExtension {
    sigma: SigmaFamily,
    tau: TauFamily,
    kind: ScalarKind,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    tables: Vec<TwistedCharacterTable>,
    labels: Vec<SimpleLabel>,
}

/// A simple H-module: orbit index and simple of the stabilizer algebra of
/// the orbit representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleLabel {
    pub orbit: usize,
    pub simple: usize,
    pub dim: usize,
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.orbit, self.simple)
    }
}

/// Checks σ, τ and their compatibility, asserts associativity and
/// unitality on all basis elements, and computes the simple modules of
/// every stabilizer algebra over the smallest cyclotomic field that
/// splits them all.
pub fn build_extension(sigma: SigmaFamily, tau: TauFamily) -> Result<AbelianExtension> {
    let action = sigma.action().clone();
    let (ta, sa) = (tau.action(), &action);
    if ta.actor() != sa.actor() || ta.space() != sa.space() || (0..sa.actor().order())
        .any(|x| sa.space().elements().any(|g| ta.act(x, g) != sa.act(x, g)))
    {
        return Err(Error::input("tau", "defined for a different action"));
    }
    sigma.check().into_result("sigma")?;
    tau.check_normalized().into_result("tau")?;
    check_sigma_tau(&sigma, &tau)?.into_result("sigma/tau compatibility")?;
    check_coproduct_multiplicative(&sigma, &tau)?.into_result("coproduct")?;
    check_associative(&sigma).into_result("extension product")?;

    let space = action.space();
    let mut n = (sigma.modulus() as u64).lcm(&(tau.modulus() as u64)) as u32;
    for g in space.elements() {
        let probe = TwistedGroupAlgebra::stabilizer_algebra(&sigma, g, ScalarKind::Cyclotomic(sigma.modulus()))?;
        n = n.lcm(&probe.working_order()?);
    }
    let kind = ScalarKind::Cyclotomic(n);
    let tables = space
        .elements()
        .map(|g| simple_modules(&Arc::new(TwistedGroupAlgebra::stabilizer_algebra(&sigma, g, kind)?)))
        .collect::<Result<Vec<_>>>()?;
    let orbits = action.orbits();
    let mut orbit_of = vec![0; space.order()];
    for (i, o) in orbits.iter().enumerate() {
        for &g in &o.members {
            orbit_of[g] = i;
        }
    }
    let nl = action.actor().order();
    let labels = orbits
        .iter()
        .enumerate()
        .flat_map(|(i, o)| {
            let index = nl / action.stabilizer_unchecked(o.rep).order();
            tables[o.rep]
                .dims()
                .into_iter()
                .enumerate()
                .map(move |(s, d)| SimpleLabel {
                    orbit: i,
                    simple: s,
                    dim: index * d,
                })
        })
        .collect();
    Ok(AbelianExtension {
        sigma,
        tau,
        kind,
        orbits,
        orbit_of,
        tables,
        labels,
    })
}

/// Associativity and unitality of the product on every triple of basis
/// elements p_g x̄.
fn check_associative(sigma: &SigmaFamily) -> Verdict {
    let action = sigma.action();
    let (gs, l) = (action.space(), action.actor());
    let m = sigma.modulus();
    // (p_g x̄)(p_h ȳ) as (exponent, g, xy) or zero
    let mul = |(e1, g, x): (u32, usize, usize), (e2, h, y): (u32, usize, usize)| {
        (g == action.act(x, h)).then(|| ((e1 + e2 + sigma.exp_at(g, x, y)) % m, g, l.mul(x, y)))
    };
    for g in gs.elements() {
        for x in l.elements() {
            let a = (0, g, x);
            let unit_left = gs.elements().filter_map(|h| mul((0, h, 0), a)).collect::<Vec<_>>();
            let unit_right = gs.elements().filter_map(|h| mul(a, (0, h, 0))).collect::<Vec<_>>();
            if unit_left != [a] || unit_right != [a] {
                return Verdict::Fail(format!("sum of the p_h is not a unit at p_{g} x{x}"));
            }
            for h in gs.elements() {
                for y in l.elements() {
                    for k in gs.elements() {
                        for z in l.elements() {
                            let (b, c) = ((0, h, y), (0, k, z));
                            let left = mul(a, b).and_then(|ab| mul(ab, c));
                            let right = mul(b, c).and_then(|bc| mul(a, bc));
                            if left != right {
                                return Verdict::Fail(format!(
                                    "not associative on (p_{g} x{x}, p_{h} x{y}, p_{k} x{z})"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Verdict::Pass
}

impl AbelianExtension {
    /// D(G) = (kG)*#G, L = G acting by conjugation, σ and τ trivial.
    pub fn drinfeld_double(group: Arc<FiniteGroup>) -> Result<Self> {
        let action = GroupAction::conjugation(group);
        build_extension(SigmaFamily::trivial(action.clone()), TauFamily::trivial(action))
    }

    /// D^ω(G), with σ and τ derived from the 3-cocycle ω.
    pub fn twisted_double(omega: &crate::cocycle::ThreeCocycle) -> Result<Self> {
        build_extension(crate::cocycle::sigma_of_omega(omega)?, crate::cocycle::tau_of_omega(omega)?)
    }

    pub fn action(&self) -> &GroupAction {
        self.sigma.action()
    }

    pub fn sigma(&self) -> &SigmaFamily {
        &self.sigma
    }

    pub fn tau(&self) -> &TauFamily {
        &self.tau
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.action().space().order() * self.action().actor().order()
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_of(&self, g: usize) -> usize {
        self.orbit_of[g]
    }

    /// Simple modules of k_{σ_g}L_g.
    pub fn table(&self, g: usize) -> &TwistedCharacterTable {
        &self.tables[g]
    }

    /// Simple H-modules in order: by orbit, then by stabilizer simple.
    pub fn simple_labels(&self) -> &[SimpleLabel] {
        &self.labels
    }

    pub fn label_index(&self, orbit: usize, simple: usize) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l.orbit == orbit && l.simple == simple)
            .ok_or_else(|| Error::input("label", format!("no simple {orbit}:{simple}")))
    }

    fn sigma_value(&self, g: usize, x: usize, y: usize) -> Scalar {
        self.sigma.value(self.kind, g, x, y).expect("field contains the roots of unity")
    }

    fn tau_value(&self, g: usize, h: usize, x: usize) -> Scalar {
        self.tau.value(self.kind, g, h, x).expect("field contains the roots of unity")
    }

    /// ˣW: for W over k_{σ_g}K (K ≤ L_g), the module over k_{σ_{ˣg}}(ˣK)
    /// on which z̄ acts as σ_{ˣg}(z,x)·σ_{ˣg}(x, x⁻¹zx)⁻¹·W(x⁻¹zx). This is
    /// the action on x̄ ⊗ W inside the induced module.
    pub fn conjugate_module(&self, module: &TwistedModule, g: usize, x: usize) -> Result<TwistedModule> {
        let action = self.action();
        let l = action.actor();
        l.check_index(x, "x")?;
        let src = module.algebra();
        let expected = TwistedGroupAlgebra::from_sigma(&self.sigma, g, src.host(), self.kind)?;
        if !expected.same_cocycle(src) {
            return Err(Error::input("module", format!("cocycle is not sigma_{g}")));
        }
        let h = action.act(x, g);
        let host = src.host().conjugate(l, x);
        let target = Arc::new(TwistedGroupAlgebra::from_sigma(&self.sigma, h, &host, self.kind)?);
        let xi = l.inv(x);
        let rep = target
            .elements()
            .iter()
            .map(|&z| {
                let k = l.mul(l.mul(xi, z), x);
                let c = &self.sigma_value(h, z, x) * &self.sigma_value(h, x, k).inv();
                module.matrix(k).scale(&c)
            })
            .collect();
        TwistedModule::new(target, rep)
    }

    /// Index in [`table`](Self::table)`(ˣg)` of the conjugate of simple `s` of L_g.
    fn conjugate_simple(&self, g: usize, s: usize, x: usize) -> Result<usize> {
        let h = self.action().act(x, g);
        let module = self.conjugate_module(&self.tables[g].simples()[s], g, x)?;
        self.tables[h].identify(&module)
    }
}

impl fmt::Debug for AbelianExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AbelianExtension(|G|={}, |L|={}, {})",
            self.action().space().order(),
            self.action().actor().order(),
            self.kind.tag()
        )
    }
}

/// An H-module, stored as the images P_g of the idempotents p_g and X_x
/// of the group-likes x̄ = Σ_g p_g x̄; p_g x̄ acts as P_g·X_x.
#[derive(Clone)]
pub struct HModule {
    dim: usize,
    proj: Vec<Matrix>,
    act: Vec<Matrix>,
}

impl HModule {
    /// Validates the algebra relations against `ext`.
    pub fn new(ext: &AbelianExtension, proj: Vec<Matrix>, act: Vec<Matrix>) -> Result<Self> {
        let action = ext.action();
        if proj.len() != action.space().order() || act.len() != action.actor().order() {
            return Err(Error::input("rep", "one matrix per p_g and per x is required"));
        }
        let dim = proj[0].rows();
        for (i, m) in proj.iter().chain(&act).enumerate() {
            if m.rows() != dim || m.cols() != dim || m.kind() != ext.kind {
                return Err(Error::input(format!("rep[{i}]"), format!("expected a {dim}x{dim} matrix over {}", ext.kind.tag())));
            }
        }
        let module = HModule { dim, proj, act };
        module.check(ext).into_result("H-module")?;
        Ok(module)
    }

    /// The counit module: p_g ↦ δ_{g,1}, x̄ ↦ 1. Requires σ_1 ≡ 1.
    pub fn trivial(ext: &AbelianExtension) -> Result<Self> {
        let k = ext.kind;
        let one = |v: i64| Matrix::from_rows(k, vec![vec![k.from_i64(v)]]).expect("1x1");
        let proj = ext.action().space().elements().map(|g| one((g == 0) as i64)).collect();
        let act = ext.action().actor().elements().map(|_| one(1)).collect();
        Self::new(ext, proj, act)
    }

    /// P_g idempotent, orthogonal and summing to I; X_1 = I;
    /// X_x P_h = P_{ˣh} X_x; X_x X_y = Σ_g σ_g(x,y) P_g X_{xy}.
    pub fn check(&self, ext: &AbelianExtension) -> Verdict {
        let action = ext.action();
        let (gs, l) = (action.space(), action.actor());
        let k = ext.kind;
        let id = Matrix::identity(k, self.dim);
        let mut sum = Matrix::zeros(k, self.dim, self.dim);
        for g in gs.elements() {
            sum = sum.add(&self.proj[g]);
            for h in gs.elements() {
                let prod = self.proj[g].mul(&self.proj[h]);
                let want = if g == h { self.proj[g].clone() } else { Matrix::zeros(k, self.dim, self.dim) };
                if prod != want {
                    return Verdict::Fail(format!("p_{g} p_{h} has the wrong image"));
                }
            }
        }
        if sum != id {
            return Verdict::Fail("the p_g do not sum to 1".into());
        }
        if self.act[0] != id {
            return Verdict::Fail("the identity of L does not act as 1".into());
        }
        for x in l.elements() {
            for h in gs.elements() {
                if self.act[x].mul(&self.proj[h]) != self.proj[action.act(x, h)].mul(&self.act[x]) {
                    return Verdict::Fail(format!("x{x} p_{h} != p_(x{x}.{h}) x{x}"));
                }
            }
            for y in l.elements() {
                let mut twist = Matrix::zeros(k, self.dim, self.dim);
                for g in gs.elements() {
                    twist = twist.add(&self.proj[g].scale(&ext.sigma_value(g, x, y)));
                }
                if self.act[x].mul(&self.act[y]) != twist.mul(&self.act[l.mul(x, y)]) {
                    return Verdict::Fail(format!("x{x} x{y} != sigma(x{x},x{y}) x{}", l.mul(x, y)));
                }
            }
        }
        Verdict::Pass
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projection(&self, g: usize) -> &Matrix {
        &self.proj[g]
    }

    pub fn group_like(&self, x: usize) -> &Matrix {
        &self.act[x]
    }

    /// χ(p_g x̄) = tr(P_g X_x), indexed by g·|L| + x.
    pub fn character(&self) -> Vec<Scalar> {
        self.proj
            .iter()
            .flat_map(|p| self.act.iter().map(move |a| p.mul(a).trace()))
            .collect()
    }
}

impl fmt::Debug for HModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HModule(dim {})", self.dim)
    }
}

/// The induced module V̂ = H ⊗_{H_i} (p_i ⊗ V) for V over k_{σ_{g_i}}L_{g_i}.
/// Basis ȳ ⊗ v for minimal left coset representatives y of L_{g_i}; p_h
/// projects onto the blocks with ʸg_i = h, and x̄ acts by
/// σ_{g'}(x,y)·σ_{g'}(y',k)⁻¹·ȳ' ⊗ k̄v where xy = y'k, g' = ʸ'g_i.
pub fn clifford_module(ext: &AbelianExtension, orbit: usize, v: &TwistedModule) -> Result<HModule> {
    let gi = ext
        .orbits
        .get(orbit)
        .ok_or_else(|| Error::input("orbit", format!("no orbit {orbit}")))?
        .rep;
    if !ext.tables[gi].algebra().same_cocycle(v.algebra()) {
        return Err(Error::input("V", format!("not a module over the stabilizer algebra of {gi}")));
    }
    v.check().into_result("V")?;
    let action = ext.action();
    let (gs, l) = (action.space(), action.actor());
    let stab = v.algebra().host();
    let reps = left_coset_reps(l, &Subgroup::whole(l), stab);
    let (d, k) = (v.dim(), ext.kind);
    let size = reps.len() * d;
    let proj = gs
        .elements()
        .map(|h| {
            let mut p = Matrix::zeros(k, size, size);
            for (a, &y) in reps.iter().enumerate() {
                if action.act(y, gi) == h {
                    for i in 0..d {
                        p.set(a * d + i, a * d + i, k.one());
                    }
                }
            }
            p
        })
        .collect();
    let act = l
        .elements()
        .map(|x| {
            let mut mat = Matrix::zeros(k, size, size);
            for (a, &y) in reps.iter().enumerate() {
                let xy = l.mul(x, y);
                let (b, kk) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(b, &r)| {
                        let kk = l.mul(l.inv(r), xy);
                        stab.contains(kk).then_some((b, kk))
                    })
                    .expect("coset representatives cover L");
                let g2 = action.act(reps[b], gi);
                let c = &ext.sigma_value(g2, x, y) * &ext.sigma_value(g2, reps[b], kk).inv();
                let block = v.matrix(kk).scale(&c);
                for i in 0..d {
                    for j in 0..d {
                        mat.set(b * d + i, a * d + j, block.get(i, j).clone());
                    }
                }
            }
            mat
        })
        .collect();
    HModule::new(ext, proj, act)
}

/// All simple H-modules, in [`AbelianExtension::simple_labels`] order.
pub fn simple_h_modules(ext: &AbelianExtension) -> Result<Vec<HModule>> {
    ext.labels
        .iter()
        .map(|lab| {
            let gi = ext.orbits[lab.orbit].rep;
            clifford_module(ext, lab.orbit, &ext.tables[gi].simples()[lab.simple])
        })
        .collect()
}

/// M ⊗ N with H acting through Δ.
pub fn tensor_h_modules(ext: &AbelianExtension, m: &HModule, n: &HModule) -> Result<HModule> {
    let action = ext.action();
    let (gs, l) = (action.space(), action.actor());
    let k = ext.kind;
    let size = m.dim * n.dim;
    let mut proj = vec![Matrix::zeros(k, size, size); gs.order()];
    for h in gs.elements() {
        for g in gs.elements() {
            let hg = gs.mul(h, g);
            proj[hg] = proj[hg].add(&m.proj[h].kron(&n.proj[g]));
        }
    }
    let act = l
        .elements()
        .map(|x| {
            let left: Vec<Matrix> = gs.elements().map(|h| m.proj[h].mul(&m.act[x])).collect();
            let right: Vec<Matrix> = gs.elements().map(|g| n.proj[g].mul(&n.act[x])).collect();
            let mut out = Matrix::zeros(k, size, size);
            for h in gs.elements() {
                if left[h].is_zero() {
                    continue;
                }
                for g in gs.elements() {
                    if right[g].is_zero() {
                        continue;
                    }
                    out = out.add(&left[h].kron(&right[g]).scale(&ext.tau_value(h, g, x)));
                }
            }
            out
        })
        .collect();
    HModule::new(ext, proj, act)
}

/// Decomposes H-modules by their characters on the basis p_g x̄.
pub struct HCharacterTable {
    simples: Vec<HModule>,
    system: Matrix,
}

impl HCharacterTable {
    pub fn new(ext: &AbelianExtension) -> Result<Self> {
        let simples = simple_h_modules(ext)?;
        let total: usize = simples.iter().map(|s| s.dim * s.dim).sum();
        if total != ext.dim() {
            return Err(Error::Internal(format!(
                "simple dimensions squared sum to {total}, expected {}",
                ext.dim()
            )));
        }
        let chars: Vec<Vec<Scalar>> = simples.iter().map(HModule::character).collect();
        let system = Matrix::from_columns(ext.kind, ext.dim(), &chars);
        if system.rank() != simples.len() {
            return Err(Error::Internal("simple H-characters are linearly dependent".into()));
        }
        Ok(HCharacterTable { simples, system })
    }

    pub fn simples(&self) -> &[HModule] {
        &self.simples
    }

    pub fn decompose(&self, module: &HModule) -> Result<Vec<u64>> {
        let sol = solve_linear(&self.system, &[module.character()])
            .map_err(|_| Error::check("decompose", "character is not a combination of simple characters"))?;
        let counts = sol.particular[0]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.as_count()
                    .ok_or_else(|| Error::check("decompose", format!("multiplicity of simple {i} is {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let total: u64 = counts.iter().zip(&self.simples).map(|(c, s)| c * s.dim as u64).sum();
        if total != module.dim as u64 {
            return Err(Error::check("decompose", format!("dimensions sum to {total}, expected {}", module.dim)));
        }
        Ok(counts)
    }
}

/// Multiplicities of the simple H-modules in M ⊗ N (tensor through Δ).
pub fn oracle_tensor(ext: &AbelianExtension, table: &HCharacterTable, m: &HModule, n: &HModule) -> Result<Vec<u64>> {
    table.decompose(&tensor_h_modules(ext, m, n)?)
}

/// Which element of the transporter coset moves g_i·ˣg_j onto its orbit
/// representative. Any choice gives isomorphic results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transport {
    Minimal,
    Maximal,
}

/// V̂ ⊗ Ŵ as a sum over double coset representatives x of L_i\L/L_j of
/// Û(x), U(x) = (V↓ ⊗ ˣW↓)↑ from L_i ∩ L_{ˣg_j} to L_{g_i·ˣg_j}, moved to
/// the orbit representative. Returns multiplicities in simple-label order.
pub fn fusion_product(ext: &AbelianExtension, i: usize, v: &TwistedModule, j: usize, w: &TwistedModule) -> Result<Vec<u64>> {
    fusion_product_with(ext, i, v, j, w, Transport::Minimal)
}

pub fn fusion_product_with(
    ext: &AbelianExtension,
    i: usize,
    v: &TwistedModule,
    j: usize,
    w: &TwistedModule,
    transport: Transport,
) -> Result<Vec<u64>> {
    let action = ext.action();
    let (gs, l) = (action.space(), action.actor());
    let orbit = |o: usize| {
        ext.orbits
            .get(o)
            .map(|o| o.rep)
            .ok_or_else(|| Error::input("orbit", format!("no orbit {o}")))
    };
    let (gi, gj) = (orbit(i)?, orbit(j)?);
    let (li, lj) = (v.algebra().host().clone(), w.algebra().host().clone());
    let mut out = vec![0u64; ext.labels.len()];
    for x in double_cosets(l, &li, &lj)? {
        let h = action.act(x, gj);
        let xw = ext.conjugate_module(w, gj, x)?;
        let meet = li.intersection(xw.algebra().host());
        let u = tensor_twisted(
            &restrict_module(v, &meet)?,
            &restrict_module(&xw, &meet)?,
            &ext.sigma,
            &ext.tau,
            gi,
            h,
        )?;
        let c = gs.mul(gi, h);
        let up = induce_module(&u, ext.tables[c].algebra())?;
        let k = ext.orbit_of[c];
        let gk = ext.orbits[k].rep;
        let mut movers = l.elements().filter(|&y| action.act(y, c) == gk);
        let y = match transport {
            Transport::Minimal => movers.next(),
            Transport::Maximal => movers.next_back(),
        }
        .expect("c lies in the orbit of its representative");
        let moved = ext.conjugate_module(&up, c, y)?;
        for (s, n) in ext.tables[gk].decompose(&moved)?.into_iter().enumerate() {
            out[ext.label_index(k, s)?] += n;
        }
    }
    Ok(out)
}

/// The full fusion table, `constants[a][b]` the multiplicities in a·b.
#[derive(Debug, Clone, Serialize)]
pub struct FusionTable {
    pub labels: Vec<SimpleLabel>,
    pub constants: Vec<Vec<Vec<u64>>>,
}

pub fn fusion_table(ext: &AbelianExtension) -> Result<FusionTable> {
    let simple = |lab: &SimpleLabel| &ext.tables[ext.orbits[lab.orbit].rep].simples()[lab.simple];
    let constants = ext
        .labels
        .iter()
        .map(|a| {
            ext.labels
                .iter()
                .map(|b| fusion_product(ext, a.orbit, simple(a), b.orbit, simple(b)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionTable {
        labels: ext.labels.clone(),
        constants,
    })
}

impl FusionTable {
    /// (Σ n_a a)·(Σ m_b b) on multiplicity vectors.
    pub fn multiply(&self, left: &[u64], right: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.labels.len()];
        for (a, &na) in left.iter().enumerate().filter(|(_, &n)| n > 0) {
            for (b, &nb) in right.iter().enumerate().filter(|(_, &n)| n > 0) {
                for (c, &k) in self.constants[a][b].iter().enumerate() {
                    out[c] += na * nb * k;
                }
            }
        }
        out
    }

    pub fn basis(&self, a: usize) -> Vec<u64> {
        let mut v = vec![0; self.labels.len()];
        v[a] = 1;
        v
    }

    /// (ab)c = a(bc) as multisets of simples.
    pub fn associative_on(&self, a: usize, b: usize, c: usize) -> bool {
        let ab = self.multiply(&self.basis(a), &self.basis(b));
        let bc = self.multiply(&self.basis(b), &self.basis(c));
        self.multiply(&ab, &self.basis(c)) == self.multiply(&self.basis(a), &bc)
    }
}

/// Lemma: End_{H_g}(H_g ⊗_{(kG)*} k p_g) has dimension |L_g|, and the
/// endomorphisms φ_x with φ_x(1̄ ⊗ 1) = x̄ ⊗ 1 compose as
/// φ_y ∘ φ_x = σ_g(x,y)·φ_{xy}.
pub fn check_endo_lemma(ext: &AbelianExtension, g: usize) -> Verdict {
    match endo_lemma(ext, g) {
        Ok(v) => v,
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

fn endo_lemma(ext: &AbelianExtension, g: usize) -> Result<Verdict> {
    let action = ext.action();
    let l = action.actor();
    let stab = action.stabilizer(g)?;
    let members = stab.members();
    let n = members.len();
    let k = ext.kind;
    let pos = |x: usize| members.binary_search(&x).expect("in the stabilizer");
    // the module has basis x̄ ⊗ 1 (x ∈ L_g); p_h acts as δ_{h,g}, z̄ as
    // z̄·(x̄ ⊗ 1) = σ_g(z,x)·(zx)‾ ⊗ 1
    let mats: Vec<Matrix> = members
        .iter()
        .map(|&z| {
            let mut m = Matrix::zeros(k, n, n);
            for &x in members {
                m.set(pos(l.mul(z, x)), pos(x), ext.sigma_value(g, z, x));
            }
            m
        })
        .collect();
    let refs: Vec<&Matrix> = mats.iter().collect();
    let end = commutant(k, n, &refs);
    if end.len() != n {
        return Ok(Verdict::Fail(format!("End has dimension {}, expected {n}", end.len())));
    }
    // φ_x is the endomorphism whose first column is e_x
    let firsts: Vec<Vec<Scalar>> = end.iter().map(|e| e.column(0)).collect();
    let system = Matrix::from_columns(k, n, &firsts);
    let targets: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|r| if r == i { k.one() } else { k.zero() }).collect())
        .collect();
    let coeffs = solve_linear(&system, &targets)?.particular;
    let phi: Vec<Matrix> = coeffs
        .iter()
        .map(|c| {
            end.iter()
                .zip(c)
                .fold(Matrix::zeros(k, n, n), |acc, (e, s)| acc.add(&e.scale(s)))
        })
        .collect();
    for &x in members {
        for &y in members {
            let lhs = phi[pos(y)].mul(&phi[pos(x)]);
            let rhs = phi[pos(l.mul(x, y))].scale(&ext.sigma_value(g, x, y));
            if lhs != rhs {
                return Ok(Verdict::Fail(format!("phi_{y} phi_{x} != sigma_{g}({x},{y}) phi_{}", l.mul(x, y))));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// The component system with A(g) = K₀(k_{σ_g}L_g) ⊗ ℚ on the simple
/// classes, c_{g,x} sending [W] to [ˣW], and
/// m_{g,h}([V], [W]) = [(V↓ ⊗ W↓)↑] through L_g ∩ L_h and L_{gh}.
pub struct FusionSystem {
    system: ComponentSystem,
}

pub fn build_fusion_system(ext: &AbelianExtension) -> Result<FusionSystem> {
    let action = ext.action();
    let (gs, l) = (action.space(), action.actor());
    let kind = ScalarKind::Rational;
    let dims: Vec<usize> = gs.elements().map(|g| ext.tables[g].len()).collect();
    let labels = gs
        .elements()
        .map(|g| (0..dims[g]).map(|s| format!("g{g}:S{s}")).collect())
        .collect();
    let count = |v: Vec<u64>| v.into_iter().map(|c| kind.from_i64(c as i64)).collect::<Vec<_>>();

    let mut conj = Vec::with_capacity(gs.order() * l.order());
    for g in gs.elements() {
        for x in l.elements() {
            let h = action.act(x, g);
            let mut m = Matrix::zeros(kind, dims[h], dims[g]);
            for s in 0..dims[g] {
                m.set(ext.conjugate_simple(g, s, x)?, s, kind.one());
            }
            conj.push(m);
        }
    }
    let mut mul = Vec::with_capacity(gs.order() * gs.order());
    for g in gs.elements() {
        for h in gs.elements() {
            let gh = gs.mul(g, h);
            let (tg, th) = (&ext.tables[g], &ext.tables[h]);
            let meet = tg.algebra().host().intersection(th.algebra().host());
            let down_h = th
                .simples()
                .iter()
                .map(|w| restrict_module(w, &meet))
                .collect::<Result<Vec<_>>>()?;
            let mut table = Vec::with_capacity(dims[g] * dims[h]);
            for v in tg.simples() {
                let dv = restrict_module(v, &meet)?;
                for dw in &down_h {
                    let u = tensor_twisted(&dv, dw, &ext.sigma, &ext.tau, g, h)?;
                    let up = induce_module(&u, ext.tables[gh].algebra())?;
                    table.push(count(ext.tables[gh].decompose(&up)?));
                }
            }
            mul.push(table);
        }
    }
    let t1 = &ext.tables[0];
    let trivial = t1
        .simples()
        .iter()
        .position(|s| s.dim() == 1 && s.character().iter().all(Scalar::is_one))
        .ok_or_else(|| Error::input("sigma", "sigma_1 is not trivial, so there is no unit"))?;
    let mut unit = vec![kind.zero(); dims[0]];
    unit[trivial] = kind.one();
    let system = ComponentSystem::new(action.clone(), kind, labels, conj, mul, unit)?;
    check_h1(&system).into_result("H1")?;
    check_h2(&system).into_result("H2")?;
    check_h3(&system).into_result("H3")?;
    check_h4prime(&system).into_result("H4'")?;
    Ok(FusionSystem { system })
}

impl FusionSystem {
    pub fn system(&self) -> &ComponentSystem {
        &self.system
    }
}

impl fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FusionSystem({:?})", self.system)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::ThreeCocycle;
    use crate::framework::{invariant_basis, invariant_coordinates, product_orbit};

    fn simple<'a>(ext: &'a AbelianExtension, lab: &SimpleLabel) -> &'a TwistedModule {
        &ext.table(ext.orbits()[lab.orbit].rep).simples()[lab.simple]
    }

    fn check_against_oracle(ext: &AbelianExtension) {
        let table = HCharacterTable::new(ext).unwrap();
        let labels = ext.simple_labels();
        for (a, la) in labels.iter().enumerate() {
            for (b, lb) in labels.iter().enumerate() {
                let formula = fusion_product(ext, la.orbit, simple(ext, la), lb.orbit, simple(ext, lb)).unwrap();
                let oracle = oracle_tensor(ext, &table, &table.simples()[a], &table.simples()[b]).unwrap();
                assert_eq!(formula, oracle, "pair {la} x {lb}");
            }
        }
    }

    #[test]
    fn double_of_z2() {
        let ext = AbelianExtension::drinfeld_double(Arc::new(FiniteGroup::cyclic(2))).unwrap();
        assert_eq!(ext.simple_labels().len(), 4);
        assert!(ext.simple_labels().iter().all(|l| l.dim == 1));
        check_against_oracle(&ext);
        let t = fusion_table(&ext).unwrap();
        // Klein four group ring: every product is one simple, every simple squares to the unit
        let unit = ext.label_index(0, 0).unwrap();
        for a in 0..4 {
            assert_eq!(t.constants[a][a], t.basis(unit));
            for b in 0..4 {
                assert_eq!(t.constants[a][b].iter().sum::<u64>(), 1);
            }
        }
    }

    #[test]
    fn double_of_s3_dimensions() {
        let ext = AbelianExtension::drinfeld_double(Arc::new(FiniteGroup::symmetric(3))).unwrap();
        let mut dims: Vec<usize> = ext.simple_labels().iter().map(|l| l.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
        assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), 36);
        let table = HCharacterTable::new(&ext).unwrap();
        let trivial = HModule::trivial(&ext).unwrap();
        assert_eq!(table.decompose(&trivial).unwrap()[ext.label_index(0, 0).unwrap()], 1);
    }

    #[test]
    fn twisted_doubles_of_z2() {
        for p in 0..2 {
            let ext = AbelianExtension::twisted_double(&ThreeCocycle::cyclic(2, p)).unwrap();
            assert_eq!(ext.simple_labels().len(), 4);
            check_against_oracle(&ext);
            let t = fusion_table(&ext).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        assert!(t.associative_on(a, b, c));
                    }
                }
            }
        }
    }

    #[test]
    fn tensoring_with_the_trivial_module() {
        let ext = AbelianExtension::twisted_double(&ThreeCocycle::cyclic(2, 1)).unwrap();
        let table = HCharacterTable::new(&ext).unwrap();
        let one = HModule::trivial(&ext).unwrap();
        for (a, s) in table.simples().iter().enumerate() {
            let out = oracle_tensor(&ext, &table, s, &one).unwrap();
            let mut want = vec![0; table.simples().len()];
            want[a] = 1;
            assert_eq!(out, want);
        }
    }

    #[test]
    fn tensor_character_identity() {
        let ext = AbelianExtension::twisted_double(&ThreeCocycle::cyclic(4, 1)).unwrap();
        let table = HCharacterTable::new(&ext).unwrap();
        let (gs, l) = (ext.action().space().clone(), ext.action().actor().clone());
        let (m, n) = (&table.simples()[5], &table.simples()[6]);
        let t = tensor_h_modules(&ext, m, n).unwrap();
        let (cm, cn, ct) = (m.character(), n.character(), t.character());
        let nl = l.order();
        for g in gs.elements() {
            for x in l.elements() {
                let mut want = ext.kind().zero();
                for h in gs.elements() {
                    let k = gs.mul(gs.inv(h), g);
                    want = &want + &(&(&ext.tau_value(h, k, x) * &cm[h * nl + x]) * &cn[k * nl + x]);
                }
                assert_eq!(ct[g * nl + x], want);
            }
        }
    }

    #[test]
    fn endo_lemma_holds() {
        let exts = [
            AbelianExtension::drinfeld_double(Arc::new(FiniteGroup::symmetric(3))).unwrap(),
            AbelianExtension::twisted_double(&ThreeCocycle::cyclic(2, 1)).unwrap(),
        ];
        for ext in &exts {
            for g in ext.action().space().elements() {
                assert_eq!(check_endo_lemma(ext, g), Verdict::Pass);
            }
        }
    }

    #[test]
    fn bad_sigma_is_refused() {
        let omega = ThreeCocycle::cyclic(2, 1);
        let sigma = crate::cocycle::sigma_of_omega(&omega).unwrap();
        // σ_1(1,1) can be flipped freely on ℤ/2; σ_0 must stay trivial
        let sigma = sigma.with_entry(0, 1, 1, 1);
        let tau = crate::cocycle::tau_of_omega(&omega).unwrap();
        let r = build_extension(sigma, tau);
        assert!(matches!(r, Err(Error::CheckFailed { .. })), "{:?}", r.err());
    }

    #[test]
    fn transport_choice_does_not_matter() {
        let ext = AbelianExtension::drinfeld_double(Arc::new(FiniteGroup::symmetric(3))).unwrap();
        let labels = ext.simple_labels();
        for la in labels.iter().step_by(3) {
            for lb in labels {
                let (v, w) = (simple(&ext, la), simple(&ext, lb));
                assert_eq!(
                    fusion_product_with(&ext, la.orbit, v, lb.orbit, w, Transport::Minimal).unwrap(),
                    fusion_product_with(&ext, la.orbit, v, lb.orbit, w, Transport::Maximal).unwrap()
                );
            }
        }
    }

    #[test]
    fn fusion_system_of_z2_double() {
        let ext = AbelianExtension::drinfeld_double(Arc::new(FiniteGroup::cyclic(2))).unwrap();
        let fs = build_fusion_system(&ext).unwrap();
        let sys = fs.system();
        let basis = invariant_basis(sys).unwrap();
        assert_eq!(basis.len(), 4);
        let table = fusion_table(&ext).unwrap();
        for (a, ea) in basis.iter().enumerate() {
            for (b, eb) in basis.iter().enumerate() {
                let prod = product_orbit(sys, ea, eb).unwrap();
                let coords = invariant_coordinates(sys, &prod).unwrap();
                let want: Vec<Scalar> = table.constants[a][b].iter().map(|&c| ScalarKind::Rational.from_i64(c as i64)).collect();
                assert_eq!(coords, want);
            }
        }
    }

    #[test]
    fn trivial_space_gives_the_representation_ring() {
        let l = Arc::new(FiniteGroup::symmetric(3));
        let action = GroupAction::trivial(l, Arc::new(FiniteGroup::trivial()));
        let ext = build_extension(SigmaFamily::trivial(action.clone()), TauFamily::trivial(action)).unwrap();
        let t = fusion_table(&ext).unwrap();
        let dims: Vec<usize> = t.labels.iter().map(|l| l.dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        // sign ⊗ sign = 1, 2 ⊗ 2 = 1 + sign + 2
        assert_eq!(t.constants[1][1], vec![1, 0, 0]);
        assert_eq!(t.constants[2][2], vec![1, 1, 1]);
        build_fusion_system(&ext).unwrap();
    }
}
