//! Twisted group algebras k_σH with σ valued in μ_m, their modules, and
//! simple modules over a splitting cyclotomic field.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde_json::json;

use crate::cocycle::SigmaFamily;
use crate::error::{Error, Result};
use crate::group::{left_coset_reps, FiniteGroup, Subgroup};
use crate::scalar::linalg::{commutant, solve_linear, Matrix};
use crate::scalar::{Scalar, ScalarKind};
use crate::verdict::Verdict;

const OUTSIDE: usize = usize::MAX;

/// k_σH for a subgroup H of an ambient group, with x̄·ȳ = σ(x,y)·(xy)‾
/// and σ(x,y) = ζ_m^{exp(x,y)}.
#[derive(Clone)]
pub struct TwistedGroupAlgebra {
    group: Arc<FiniteGroup>,
    host: Subgroup,
    m: u32,
    exp: Vec<u32>,
    values: Vec<Scalar>,
    pos: Vec<usize>,
    kind: ScalarKind,
}

impl TwistedGroupAlgebra {
    /// `exp(x, y)` is queried for x, y in `host` (ambient indices). The
    /// cocycle must be normalized and satisfy the 2-cocycle identity.
    pub fn new(
        group: Arc<FiniteGroup>,
        host: Subgroup,
        m: u32,
        exp: impl Fn(usize, usize) -> u32,
        kind: ScalarKind,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::input("m", "modulus must be positive"));
        }
        if host.members().iter().any(|&x| x >= group.order()) {
            return Err(Error::input("host", "not a subgroup of the ambient group"));
        }
        kind.root_of_unity(m, 1)?;
        let mut pos = vec![OUTSIDE; group.order()];
        for (i, &x) in host.members().iter().enumerate() {
            pos[x] = i;
        }
        let n = host.order();
        let mut table = Vec::with_capacity(n * n);
        for &x in host.members() {
            for &y in host.members() {
                table.push(exp(x, y) % m);
            }
        }
        let values = table
            .iter()
            .map(|&e| kind.root_of_unity(m, e as i64))
            .collect::<Result<Vec<_>>>()?;
        let alg = TwistedGroupAlgebra {
            group,
            host,
            m,
            exp: table,
            values,
            pos,
            kind,
        };
        alg.check_cocycle().into_result("twisted group algebra")?;
        Ok(alg)
    }

    pub fn untwisted(group: Arc<FiniteGroup>, host: Subgroup, kind: ScalarKind) -> Result<Self> {
        Self::new(group, host, 1, |_, _| 0, kind)
    }

    /// k_{σ_g}K for a subgroup K of the stabilizer L_g.
    pub fn from_sigma(sigma: &SigmaFamily, g: usize, host: &Subgroup, kind: ScalarKind) -> Result<Self> {
        let action = sigma.action();
        let stab = action.stabilizer(g)?;
        if !host.is_subgroup_of(&stab) {
            return Err(Error::input("host", format!("not contained in the stabilizer of {g}")));
        }
        Self::new(
            action.actor().clone(),
            host.clone(),
            sigma.modulus(),
            |x, y| sigma.exp_at(g, x, y),
            kind,
        )
    }

    /// k_{σ_g}L_g.
    pub fn stabilizer_algebra(sigma: &SigmaFamily, g: usize, kind: ScalarKind) -> Result<Self> {
        let stab = sigma.action().stabilizer(g)?;
        Self::from_sigma(sigma, g, &stab, kind)
    }

    fn check_cocycle(&self) -> Verdict {
        let h = self.host.members();
        for &x in h {
            if self.exp_at(0, x) != 0 || self.exp_at(x, 0) != 0 {
                return Verdict::Fail(format!("sigma not normalized at {x}"));
            }
        }
        let m = self.m;
        for &x in h {
            for &y in h {
                let xy = self.group.mul(x, y);
                for &z in h {
                    let yz = self.group.mul(y, z);
                    let lhs = self.exp_at(x, y) + self.exp_at(xy, z);
                    let rhs = self.exp_at(y, z) + self.exp_at(x, yz);
                    if lhs % m != rhs % m {
                        return Verdict::Fail(format!("product not associative on ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Verdict::Pass
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn host(&self) -> &Subgroup {
        &self.host
    }

    /// Host elements in increasing order; module matrices follow this order.
    pub fn elements(&self) -> &[usize] {
        self.host.members()
    }

    pub fn order(&self) -> usize {
        self.host.order()
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.pos.get(x).copied().filter(|&p| p != OUTSIDE)
    }

    fn at(&self, x: usize) -> usize {
        self.pos[x]
    }

    /// Exponent of σ(x, y); both must lie in the host.
    pub fn exp_at(&self, x: usize, y: usize) -> u32 {
        self.exp[self.at(x) * self.order() + self.at(y)]
    }

    pub fn sigma(&self, x: usize, y: usize) -> &Scalar {
        &self.values[self.at(x) * self.order() + self.at(y)]
    }

    pub fn restrict(&self, k: &Subgroup) -> Result<Self> {
        if !k.is_subgroup_of(&self.host) {
            return Err(Error::input("K", "not a subgroup of the host"));
        }
        Self::new(self.group.clone(), k.clone(), self.m, |x, y| self.exp_at(x, y), self.kind)
    }

    /// True when both algebras have the same host and the same σ values.
    pub fn same_cocycle(&self, other: &Self) -> bool {
        self.host == other.host && self.kind == other.kind && self.values == other.values
    }

    /// The group ℤ/m ×_σ H: (i, h)(j, h') = (i + j + exp(h, h'), hh'),
    /// with (i, h) stored at index i·|H| + (position of h).
    pub fn central_extension(&self) -> Result<FiniteGroup> {
        self.check_cocycle().into_result("central extension")?;
        let n = self.order();
        let m = self.m as usize;
        let h = self.host.members();
        let mut rows = vec![vec![0; n * m]; n * m];
        for i in 0..m {
            for (a, &x) in h.iter().enumerate() {
                for j in 0..m {
                    for (b, &y) in h.iter().enumerate() {
                        let k = (i + j + self.exp[a * n + b] as usize) % m;
                        rows[i * n + a][j * n + b] = k * n + self.at(self.group.mul(x, y));
                    }
                }
            }
        }
        FiniteGroup::from_table(rows)
    }

    /// lcm(m, exponent of the central extension): every simple module is
    /// realized over ℚ(ζ) of this order.
    pub fn working_order(&self) -> Result<u32> {
        let e = self.central_extension()?.exponent() as u32;
        Ok(self.m.lcm(&e))
    }

    /// Generators of the host; their images determine a module.
    fn generators(&self) -> Vec<usize> {
        self.host.generators(&self.group)
    }
}

impl PartialEq for TwistedGroupAlgebra {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.same_cocycle(other)
    }
}

impl fmt::Debug for TwistedGroupAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k_sigma{:?} (m={}, {})", self.host, self.m, self.kind.tag())
    }
}

/// A module over k_σH: one matrix per host element, in host order.
#[derive(Clone)]
pub struct TwistedModule {
    algebra: Arc<TwistedGroupAlgebra>,
    dim: usize,
    rep: Vec<Matrix>,
}

impl TwistedModule {
    /// Validates rep(1) = I and rep(x)rep(y) = σ(x,y)rep(xy) on all pairs.
    pub fn new(algebra: Arc<TwistedGroupAlgebra>, rep: Vec<Matrix>) -> Result<Self> {
        if rep.len() != algebra.order() {
            return Err(Error::input("rep", format!("expected {} matrices", algebra.order())));
        }
        let dim = rep.first().map_or(0, Matrix::rows);
        for (i, r) in rep.iter().enumerate() {
            if r.rows() != dim || r.cols() != dim {
                return Err(Error::input(format!("rep[{i}]"), format!("expected a {dim}x{dim} matrix")));
            }
            if r.kind() != algebra.kind() {
                return Err(Error::KindMismatch(format!("rep[{i}] is over {}", r.kind().tag())));
            }
        }
        let module = TwistedModule { algebra, dim, rep };
        module.check().into_result("twisted module")?;
        Ok(module)
    }

    pub(crate) fn new_unchecked(algebra: Arc<TwistedGroupAlgebra>, rep: Vec<Matrix>) -> Self {
        let dim = rep.first().map_or(0, Matrix::rows);
        TwistedModule { algebra, dim, rep }
    }

    /// The module invariant, checked on every pair of host elements.
    pub fn check(&self) -> Verdict {
        let alg = &*self.algebra;
        if !self.rep[0].is_identity() {
            return Verdict::Fail("the identity does not act as 1".into());
        }
        for &x in alg.elements() {
            for &y in alg.elements() {
                let xy = alg.group.mul(x, y);
                let lhs = self.matrix(x).mul(self.matrix(y));
                if lhs != self.matrix(xy).scale(alg.sigma(x, y)) {
                    return Verdict::Fail(format!("rep({x})rep({y}) != sigma({x},{y})rep({xy})"));
                }
            }
        }
        Verdict::Pass
    }

    /// The one-dimensional module x̄ ↦ values[x] (host order).
    pub fn one_dimensional(algebra: Arc<TwistedGroupAlgebra>, values: Vec<Scalar>) -> Result<Self> {
        let kind = algebra.kind();
        let rep = values
            .into_iter()
            .map(|v| Matrix::from_rows(kind, vec![vec![v]]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, rep)
    }

    /// k_σH acting on itself by left multiplication.
    pub fn regular(algebra: Arc<TwistedGroupAlgebra>) -> Self {
        let alg = &*algebra;
        let n = alg.order();
        let rep = alg
            .elements()
            .iter()
            .map(|&x| {
                let mut mat = Matrix::zeros(alg.kind, n, n);
                for (b, &y) in alg.elements().iter().enumerate() {
                    mat.set(alg.at(alg.group.mul(x, y)), b, alg.sigma(x, y).clone());
                }
                mat
            })
            .collect();
        TwistedModule::new_unchecked(algebra, rep)
    }

    pub fn algebra(&self) -> &Arc<TwistedGroupAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The matrix of x̄ (ambient index x, which must lie in the host).
    pub fn matrix(&self, x: usize) -> &Matrix {
        &self.rep[self.algebra.at(x)]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.rep
    }

    /// Traces of all x̄, in host order.
    pub fn character(&self) -> Vec<Scalar> {
        self.rep.iter().map(Matrix::trace).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !self.algebra.same_cocycle(&other.algebra) {
            return Err(Error::input("module", "direct sum of modules over different algebras"));
        }
        let rep = self.rep.iter().zip(&other.rep).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(TwistedModule::new_unchecked(self.algebra.clone(), rep))
    }

    /// Dimension of End(M), by solving X·Φ = Φ·X for the host generators.
    pub fn endomorphism_dim(&self) -> usize {
        let gens: Vec<&Matrix> = self.algebra.generators().into_iter().map(|x| self.matrix(x)).collect();
        commutant(self.algebra.kind, self.dim, &gens).len()
    }

    /// The submodule spanned by the columns of `basis` (assumed invariant).
    fn submodule(&self, basis: &[Vec<Scalar>]) -> Result<Self> {
        let kind = self.algebra.kind;
        let b = Matrix::from_columns(kind, self.dim, basis);
        let rep = self
            .rep
            .iter()
            .map(|x| {
                let images: Vec<Vec<Scalar>> = basis.iter().map(|v| x.mul_vec(v)).collect();
                let coords = solve_linear(&b, &images)
                    .map_err(|_| Error::Internal("subspace is not a submodule".into()))?
                    .particular;
                Ok(Matrix::from_columns(kind, basis.len(), &coords))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistedModule::new_unchecked(self.algebra.clone(), rep))
    }

    /// M / span(basis), on a complement of standard basis vectors.
    fn quotient(&self, basis: &[Vec<Scalar>]) -> Result<Self> {
        let kind = self.algebra.kind;
        let d = self.dim;
        let mut full: Vec<Vec<Scalar>> = basis.to_vec();
        let mut rank = Matrix::from_columns(kind, d, &full).rank();
        for i in 0..d {
            if rank == d {
                break;
            }
            let mut e = vec![kind.zero(); d];
            e[i] = kind.one();
            full.push(e);
            let r = Matrix::from_columns(kind, d, &full).rank();
            if r > rank {
                rank = r;
            } else {
                full.pop();
            }
        }
        let p = Matrix::from_columns(kind, d, &full);
        let pinv = p.inverse()?;
        let s = basis.len();
        let q = d - s;
        let rep = self
            .rep
            .iter()
            .map(|x| {
                let conj = pinv.mul(&x.mul(&p));
                let mut out = Matrix::zeros(kind, q, q);
                for i in 0..q {
                    for j in 0..q {
                        out.set(i, j, conj.get(s + i, s + j).clone());
                    }
                }
                out
            })
            .collect();
        Ok(TwistedModule::new_unchecked(self.algebra.clone(), rep))
    }

    /// Basis of the submodule generated by `v`.
    fn spin(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::default();
        let mut basis = Vec::new();
        if !ech.insert(v) {
            return basis;
        }
        basis.push(v.to_vec());
        let gens = self.algebra.generators();
        let mut next = 0;
        while next < basis.len() {
            let w = basis[next].clone();
            next += 1;
            for &x in &gens {
                let image = self.matrix(x).mul_vec(&w);
                if ech.insert(&image) {
                    basis.push(image);
                }
            }
        }
        basis
    }

    /// Eigenvalues of x̄ that lie among the roots of unity of the field.
    fn eigen_candidates(&self, x: usize) -> Result<Vec<Scalar>> {
        let alg = &*self.algebra;
        let ScalarKind::Cyclotomic(n) = alg.kind else {
            return Err(Error::KindMismatch("simple modules need a cyclotomic field".into()));
        };
        // x̄^o = c·1 with c a root of unity; eigenvalues are the o-th roots of c
        let o = alg.group.element_order(x);
        // x̄^{k+1} = x̄^k·x̄ = c_k·σ(x^k, x)·(x^{k+1})‾
        let mut c = alg.kind.one();
        for k in 1..o {
            c = &c * alg.sigma(alg.group.pow(x, k), x);
        }
        let mut out = Vec::new();
        for e in 0..n {
            let z = alg.kind.root_of_unity(n, e as i64)?;
            if z.pow(o as u64) == c {
                out.push(z);
            }
        }
        Ok(out)
    }

    /// A proper nonzero submodule, found by spinning eigenvectors of the
    /// host elements, first on single eigenspaces and then on iterated
    /// intersections of eigenspaces.
    fn proper_submodule(&self) -> Result<Option<Vec<Vec<Scalar>>>> {
        let d = self.dim;
        let kind = self.algebra.kind;
        let identity = Matrix::identity(kind, d);
        let mut eigenspaces: Vec<Vec<Vec<Scalar>>> = Vec::new();
        for &x in self.algebra.elements().iter().skip(1) {
            for lambda in self.eigen_candidates(x)? {
                let space = self.matrix(x).sub(&identity.scale(&lambda)).kernel();
                if space.is_empty() || space.len() == d {
                    continue;
                }
                for v in &space {
                    let sub = self.spin(v);
                    if sub.len() < d {
                        return Ok(Some(sub));
                    }
                }
                eigenspaces.push(space);
            }
        }
        let mut current: Vec<Vec<Scalar>> = (0..d)
            .map(|i| {
                let mut e = vec![kind.zero(); d];
                e[i] = kind.one();
                e
            })
            .collect();
        'refine: loop {
            for space in &eigenspaces {
                let meet = intersect(kind, d, &current, space);
                if !meet.is_empty() && meet.len() < current.len() {
                    current = meet;
                    for v in &current {
                        let sub = self.spin(v);
                        if sub.len() < d {
                            return Ok(Some(sub));
                        }
                    }
                    continue 'refine;
                }
            }
            return Ok(None);
        }
    }
}

impl fmt::Debug for TwistedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedModule(dim {}, over {:?})", self.dim, self.algebra)
    }
}

#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        for (pc, e) in &self.rows {
            let f = w[*pc].clone();
            if !f.is_zero() {
                for (wi, ei) in w.iter_mut().zip(e) {
                    if !ei.is_zero() {
                        *wi = &*wi - &(ei * &f);
                    }
                }
            }
        }
        let Some(pc) = w.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = w[pc].inv();
        let w: Vec<Scalar> = w.iter().map(|s| s * &inv).collect();
        for (_, e) in self.rows.iter_mut() {
            let f = e[pc].clone();
            if !f.is_zero() {
                for (ei, wi) in e.iter_mut().zip(&w) {
                    *ei = &*ei - &(wi * &f);
                }
            }
        }
        self.rows.push((pc, w));
        true
    }
}

fn intersect(kind: ScalarKind, d: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    // a·s = b·t  <=>  [A | -B] (s, t) = 0
    let mut cols: Vec<Vec<Scalar>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|s| -s).collect::<Vec<_>>()));
    let system = Matrix::from_columns(kind, d, &cols);
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    let mut ech = Echelon::default();
    for k in system.kernel() {
        let mut v = vec![kind.zero(); d];
        for (s, col) in k.iter().zip(a) {
            crate::scalar::linalg::add_scaled(&mut v, s, col);
        }
        if ech.insert(&v) {
            out.push(v);
        }
    }
    out
}

/// M restricted to k_σK.
pub fn restrict_module(module: &TwistedModule, k: &Subgroup) -> Result<TwistedModule> {
    let alg = Arc::new(module.algebra.restrict(k)?);
    let rep = k.members().iter().map(|&x| module.matrix(x).clone()).collect();
    Ok(TwistedModule::new_unchecked(alg, rep))
}

/// M ⊗ N over k_{σ_{gh}}K with x̄ acting as τ_{g,h}(x)·M(x) ⊗ N(x), for
/// M over k_{σ_g}K and N over k_{σ_h}K with K ≤ L_g ∩ L_h.
pub fn tensor_twisted(
    m: &TwistedModule,
    n: &TwistedModule,
    sigma: &SigmaFamily,
    tau: &crate::cocycle::TauFamily,
    g: usize,
    h: usize,
) -> Result<TwistedModule> {
    let (am, an) = (&*m.algebra, &*n.algebra);
    if am.host != an.host {
        return Err(Error::input("N", "modules live over different subgroups"));
    }
    let kind = am.kind;
    let expected_m = TwistedGroupAlgebra::from_sigma(sigma, g, &am.host, kind)?;
    if !expected_m.same_cocycle(am) {
        return Err(Error::input("M", format!("cocycle is not sigma_{g}")));
    }
    let expected_n = TwistedGroupAlgebra::from_sigma(sigma, h, &an.host, kind)?;
    if !expected_n.same_cocycle(an) {
        return Err(Error::input("N", format!("cocycle is not sigma_{h}")));
    }
    let gh = sigma.action().space().mul(g, h);
    let out = Arc::new(TwistedGroupAlgebra::from_sigma(sigma, gh, &am.host, kind)?);
    let rep = am
        .elements()
        .iter()
        .map(|&x| Ok(m.matrix(x).kron(n.matrix(x)).scale(&tau.value(kind, g, h, x)?)))
        .collect::<Result<Vec<_>>>()?;
    TwistedModule::new(out, rep)
}

/// Induction from k_σK to k_σH along the minimal left coset
/// representatives y of K in H: on ȳ ⊗ v, x̄ acts as
/// σ(x,y)·σ(y',k)⁻¹·ȳ' ⊗ k̄v where xy = y'k.
pub fn induce_module(module: &TwistedModule, target: &Arc<TwistedGroupAlgebra>) -> Result<TwistedModule> {
    let src = &*module.algebra;
    let tgt = &**target;
    if *src.group != *tgt.group || !src.host.is_subgroup_of(&tgt.host) {
        return Err(Error::input("H", "does not contain the module's subgroup"));
    }
    if !tgt.restrict(&src.host)?.same_cocycle(src) {
        return Err(Error::input("sigma", "does not restrict to the module's cocycle"));
    }
    let group = &*tgt.group;
    let kind = tgt.kind;
    let reps = left_coset_reps(group, &tgt.host, &src.host);
    let d = module.dim;
    let size = reps.len() * d;
    let rep = tgt
        .elements()
        .iter()
        .map(|&x| {
            let mut mat = Matrix::zeros(kind, size, size);
            for (a, &y) in reps.iter().enumerate() {
                let xy = group.mul(x, y);
                let (b, k) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(b, &r)| {
                        let k = group.mul(group.inv(r), xy);
                        src.host.contains(k).then_some((b, k))
                    })
                    .expect("coset representatives cover the host");
                let coeff = tgt.sigma(x, y) * &tgt.sigma(reps[b], k).inv();
                let block = module.matrix(k).scale(&coeff);
                for i in 0..d {
                    for j in 0..d {
                        mat.set(b * d + i, a * d + j, block.get(i, j).clone());
                    }
                }
            }
            mat
        })
        .collect();
    TwistedModule::new(target.clone(), rep)
}

/// The simple modules of a twisted group algebra with their characters.
#[derive(Clone, Debug)]
pub struct TwistedCharacterTable {
    algebra: Arc<TwistedGroupAlgebra>,
    simples: Vec<TwistedModule>,
    characters: Vec<Vec<Scalar>>,
    // columns are the simple characters
    system: Matrix,
}

impl TwistedCharacterTable {
    pub fn algebra(&self) -> &Arc<TwistedGroupAlgebra> {
        &self.algebra
    }

    pub fn simples(&self) -> &[TwistedModule] {
        &self.simples
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.simples.iter().map(TwistedModule::dim).collect()
    }

    pub fn characters(&self) -> &[Vec<Scalar>] {
        &self.characters
    }

    /// Multiplicities of the simples in `module`, from χ_M = Σ n_S χ_S.
    pub fn decompose(&self, module: &TwistedModule) -> Result<Vec<u64>> {
        if !module.algebra.same_cocycle(&self.algebra) {
            return Err(Error::input("module", "lives over a different algebra"));
        }
        self.decompose_character(&module.character(), module.dim)
    }

    pub fn decompose_character(&self, chi: &[Scalar], dim: usize) -> Result<Vec<u64>> {
        let sol = solve_linear(&self.system, &[chi.to_vec()]).map_err(|_| {
            Error::check("decompose", "character is not a combination of simple characters")
        })?;
        let coeffs = &sol.particular[0];
        let counts = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.as_count()
                    .ok_or_else(|| Error::check("decompose", format!("multiplicity of simple {i} is {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let total: u64 = counts.iter().zip(&self.simples).map(|(c, s)| c * s.dim as u64).sum();
        if total != dim as u64 {
            return Err(Error::check("decompose", format!("dimensions sum to {total}, expected {dim}")));
        }
        Ok(counts)
    }

    /// Index of the simple isomorphic to `module`, which must be simple.
    pub fn identify(&self, module: &TwistedModule) -> Result<usize> {
        let counts = self.decompose(module)?;
        match counts.iter().filter(|&&c| c > 0).count() {
            1 if counts.iter().sum::<u64>() == 1 => Ok(counts.iter().position(|&c| c == 1).unwrap()),
            _ => Err(Error::check("identify", format!("module is not simple: {counts:?}"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "host": self.algebra.elements(),
            "m": self.algebra.modulus(),
            "coeff": self.algebra.kind().tag(),
            "simples": self.simples.iter().zip(&self.characters).enumerate().map(|(i, (s, chi))| json!({
                "index": i,
                "dim": s.dim(),
                "character": chi.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Simple modules of k_σH, found by peeling the regular module.
/// Requires a cyclotomic field containing the working order's roots of unity.
pub fn simple_modules(algebra: &Arc<TwistedGroupAlgebra>) -> Result<TwistedCharacterTable> {
    let ScalarKind::Cyclotomic(n) = algebra.kind else {
        return Err(Error::KindMismatch("simple modules need a cyclotomic field".into()));
    };
    let need = algebra.working_order()?;
    if n % need != 0 {
        return Err(Error::KindMismatch(format!(
            "Q(zeta_{n}) does not contain the {need}-th roots of unity"
        )));
    }
    let mut found: Vec<TwistedModule> = Vec::new();
    let mut pending = vec![TwistedModule::regular(algebra.clone())];
    while let Some(module) = pending.pop() {
        if module.dim == 0 {
            continue;
        }
        let chi = module.character();
        if found.iter().any(|s| s.character() == chi) {
            continue;
        }
        if module.endomorphism_dim() == 1 {
            found.push(module);
            continue;
        }
        let sub = module.proper_submodule()?.ok_or_else(|| {
            Error::Internal(format!(
                "no proper submodule found in a non-simple module of dimension {} over {:?}",
                module.dim, algebra
            ))
        })?;
        pending.push(module.quotient(&sub)?);
        pending.push(module.submodule(&sub)?);
    }
    found.sort_by_key(TwistedModule::dim);
    let total: usize = found.iter().map(|s| s.dim * s.dim).sum();
    if total != algebra.order() {
        return Err(Error::Internal(format!(
            "simple dimensions squared sum to {total}, expected {} over {:?}",
            algebra.order(),
            algebra
        )));
    }
    for s in &found {
        s.check().into_result("simple module")?;
    }
    let characters: Vec<Vec<Scalar>> = found.iter().map(TwistedModule::character).collect();
    let system = Matrix::from_columns(algebra.kind, algebra.order(), &characters);
    if system.rank() != characters.len() {
        return Err(Error::Internal("simple characters are linearly dependent".into()));
    }
    Ok(TwistedCharacterTable {
        algebra: algebra.clone(),
        simples: found,
        characters,
        system,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{sigma_of_omega, tau_of_omega, ThreeCocycle};
    use crate::group::GroupAction;

    fn s3_algebra(kind: ScalarKind) -> Arc<TwistedGroupAlgebra> {
        let g = Arc::new(FiniteGroup::symmetric(3));
        Arc::new(TwistedGroupAlgebra::untwisted(g.clone(), Subgroup::whole(&g), kind).unwrap())
    }

    // Klein four with σ((a1,b1),(a2,b2)) = (-1)^{b1·a2}; element a + 2b.
    fn klein_twisted(kind: ScalarKind) -> Arc<TwistedGroupAlgebra> {
        let c2 = FiniteGroup::cyclic(2);
        let v = Arc::new(FiniteGroup::direct_product(&c2, &c2));
        let whole = Subgroup::whole(&v);
        Arc::new(TwistedGroupAlgebra::new(v, whole, 2, |x, y| ((x / 2) * (y % 2)) as u32, kind).unwrap())
    }

    fn order_profile(g: &FiniteGroup) -> Vec<usize> {
        let mut v: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn non_cocycle_is_refused() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let whole = Subgroup::whole(&g);
        let err = TwistedGroupAlgebra::new(g.clone(), whole.clone(), 2, |x, y| (x == 1 && y == 1) as u32, ScalarKind::Cyclotomic(2));
        assert!(matches!(err, Err(Error::CheckFailed { .. })));
        let err = TwistedGroupAlgebra::new(g, whole, 2, |x, _| (x == 0) as u32, ScalarKind::Cyclotomic(2));
        assert!(matches!(err, Err(Error::CheckFailed { .. })));
    }

    #[test]
    fn central_extensions() {
        let k = ScalarKind::Cyclotomic(4);
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let triv = TwistedGroupAlgebra::new(c3.clone(), Subgroup::whole(&c3), 2, |_, _| 0, k).unwrap();
        let e = triv.central_extension().unwrap();
        assert_eq!(e.order(), 6);
        assert!(e.is_abelian());
        assert_eq!(order_profile(&e), order_profile(&FiniteGroup::cyclic(6)));

        let point = TwistedGroupAlgebra::new(c3.clone(), Subgroup::trivial(&c3), 4, |_, _| 0, k).unwrap();
        assert_eq!(order_profile(&point.central_extension().unwrap()), order_profile(&FiniteGroup::cyclic(4)));

        let e = klein_twisted(k).central_extension().unwrap();
        assert_eq!(e.order(), 8);
        assert!(!e.is_abelian());
        // anticommuting involutions: dihedral, told apart from Q8 by element orders
        assert_eq!(order_profile(&e), order_profile(&FiniteGroup::dihedral(4)));
    }

    #[test]
    fn s3_simples() {
        let t = simple_modules(&s3_algebra(ScalarKind::Cyclotomic(6))).unwrap();
        assert_eq!(t.dims(), vec![1, 1, 2]);
        for s in t.simples() {
            assert_eq!(s.check(), Verdict::Pass);
        }
    }

    #[test]
    fn klein_twisted_has_one_simple() {
        let alg = klein_twisted(ScalarKind::Cyclotomic(4));
        assert_eq!(alg.working_order().unwrap(), 4);
        let t = simple_modules(&alg).unwrap();
        assert_eq!(t.dims(), vec![2]);
    }

    #[test]
    fn field_too_small_is_reported() {
        let alg = klein_twisted(ScalarKind::Cyclotomic(2));
        assert!(matches!(simple_modules(&alg), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn trivial_host_has_one_simple() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let alg = Arc::new(TwistedGroupAlgebra::untwisted(g.clone(), Subgroup::trivial(&g), ScalarKind::Cyclotomic(1)).unwrap());
        assert_eq!(simple_modules(&alg).unwrap().dims(), vec![1]);
    }

    #[test]
    fn regular_module_decomposes_by_dimension() {
        let alg = s3_algebra(ScalarKind::Cyclotomic(6));
        let t = simple_modules(&alg).unwrap();
        let reg = TwistedModule::regular(alg);
        let counts = t.decompose(&reg).unwrap();
        let dims: Vec<u64> = t.dims().iter().map(|&d| d as u64).collect();
        assert_eq!(counts, dims);
        let doubled = t.decompose(&reg.direct_sum(&reg).unwrap()).unwrap();
        assert_eq!(doubled, dims.iter().map(|d| 2 * d).collect::<Vec<_>>());
        for (i, s) in t.simples().iter().enumerate() {
            assert_eq!(t.identify(s).unwrap(), i);
        }
    }

    #[test]
    fn bogus_character_is_a_hard_failure() {
        let alg = s3_algebra(ScalarKind::Cyclotomic(6));
        let t = simple_modules(&alg).unwrap();
        let k = alg.kind();
        let mut chi = vec![k.zero(); 6];
        chi[0] = k.one();
        assert!(matches!(t.decompose_character(&chi, 1), Err(Error::CheckFailed { .. })));
    }

    #[test]
    fn restricting_the_two_dimensional_simple_to_c3() {
        let alg = s3_algebra(ScalarKind::Cyclotomic(6));
        let t = simple_modules(&alg).unwrap();
        let two = t.simples().iter().find(|s| s.dim() == 2).unwrap();
        let g = alg.group();
        let c3 = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let c3 = Subgroup::generated(g, &[c3]);
        let same = restrict_module(two, alg.host()).unwrap();
        assert_eq!(same.character(), two.character());
        let down = restrict_module(two, &c3).unwrap();
        assert_eq!(down.dim(), 2);
        let tc3 = simple_modules(down.algebra()).unwrap();
        let counts = tc3.decompose(&down).unwrap();
        assert_eq!(counts.iter().filter(|&&c| c == 1).count(), 2);
        assert_eq!(counts.iter().sum::<u64>(), 2);
    }

    // Frobenius: ind χ(x) = (1/|K|) Σ_{h ∈ H, h⁻¹xh ∈ K} χ(h⁻¹xh).
    fn frobenius_oracle(g: &FiniteGroup, host: &Subgroup, k: &Subgroup, chi: &dyn Fn(usize) -> Scalar, kind: ScalarKind) -> Vec<Scalar> {
        host.members()
            .iter()
            .map(|&x| {
                let mut acc = kind.zero();
                for &h in host.members() {
                    let y = g.mul(g.mul(g.inv(h), x), h);
                    if k.contains(y) {
                        acc = &acc + &chi(y);
                    }
                }
                &acc * &kind.from_i64(k.order() as i64).inv()
            })
            .collect()
    }

    #[test]
    fn induction_matches_frobenius() {
        let kind = ScalarKind::Cyclotomic(6);
        let alg = s3_algebra(kind);
        let g = alg.group().clone();
        for k in [Subgroup::trivial(&g), Subgroup::generated(&g, &[1]), Subgroup::generated(&g, &[g.elements().find(|&x| g.element_order(x) == 3).unwrap()])] {
            let sub = Arc::new(alg.restrict(&k).unwrap());
            for s in simple_modules(&sub).unwrap().simples() {
                let up = induce_module(s, &alg).unwrap();
                assert_eq!(up.dim(), s.dim() * 6 / k.order());
                let chi = |y: usize| s.matrix(y).trace();
                assert_eq!(up.character(), frobenius_oracle(&g, alg.host(), &k, &chi, kind));
            }
        }
        // K = H is the identity
        let t = simple_modules(&alg).unwrap();
        let same = induce_module(&t.simples()[2], &alg).unwrap();
        assert_eq!(same.character(), t.simples()[2].character());
    }

    #[test]
    fn inducing_from_the_trivial_subgroup_gives_the_regular_module() {
        let alg = klein_twisted(ScalarKind::Cyclotomic(4));
        let g = alg.group().clone();
        let point = Arc::new(alg.restrict(&Subgroup::trivial(&g)).unwrap());
        let one = TwistedModule::one_dimensional(point, vec![alg.kind().one()]).unwrap();
        let up = induce_module(&one, &alg).unwrap();
        let k = alg.kind();
        let mut want = vec![k.zero(); 4];
        want[0] = k.from_i64(4);
        assert_eq!(up.character(), want);
        assert_eq!(simple_modules(&alg).unwrap().decompose(&up).unwrap(), vec![2]);
    }

    #[test]
    fn induction_refuses_incompatible_cocycles() {
        let k = ScalarKind::Cyclotomic(4);
        let alg = klein_twisted(k);
        let g = alg.group().clone();
        let sub = Subgroup::generated(&g, &[1]);
        let other = Arc::new(TwistedGroupAlgebra::new(g.clone(), sub.clone(), 4, |x, y| if x == 1 && y == 1 { 2 } else { 0 }, k).unwrap());
        let m = simple_modules(&other).unwrap().simples()[0].clone();
        assert!(matches!(induce_module(&m, &alg), Err(Error::Input { .. })));
    }

    #[test]
    fn untwisted_tensor_is_the_ordinary_tensor() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let action = GroupAction::conjugation(g.clone());
        let sigma = SigmaFamily::trivial(action.clone());
        let tau = crate::cocycle::TauFamily::trivial(action);
        let kind = ScalarKind::Cyclotomic(6);
        let alg = Arc::new(TwistedGroupAlgebra::stabilizer_algebra(&sigma, 0, kind).unwrap());
        let t = simple_modules(&alg).unwrap();
        let two = &t.simples()[2];
        let sq = tensor_twisted(two, two, &sigma, &tau, 0, 0).unwrap();
        let want: Vec<Scalar> = two.character().iter().map(|c| c * c).collect();
        assert_eq!(sq.character(), want);
        assert_eq!(t.decompose(&sq).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn omega_twisted_tensor_on_z2() {
        let omega = ThreeCocycle::cyclic(2, 1);
        let sigma = sigma_of_omega(&omega).unwrap();
        let tau = tau_of_omega(&omega).unwrap();
        let kind = ScalarKind::Cyclotomic(4);
        let a = Arc::new(TwistedGroupAlgebra::stabilizer_algebra(&sigma, 1, kind).unwrap());
        let t = simple_modules(&a).unwrap();
        assert_eq!(t.dims(), vec![1, 1]);
        for v in t.simples() {
            for w in t.simples() {
                let out = tensor_twisted(v, w, &sigma, &tau, 1, 1).unwrap();
                assert_eq!(out.check(), Verdict::Pass);
                let want: Vec<Scalar> = a
                    .elements()
                    .iter()
                    .map(|&x| &(&tau.value(kind, 1, 1, x).unwrap() * v.matrix(x).get(0, 0)) * w.matrix(x).get(0, 0))
                    .collect();
                assert_eq!(out.character(), want);
            }
        }
        // wrong cocycle on one factor
        let b = Arc::new(TwistedGroupAlgebra::stabilizer_algebra(&sigma, 0, kind).unwrap());
        let triv = &simple_modules(&b).unwrap().simples()[0].clone();
        assert!(matches!(tensor_twisted(triv, &t.simples()[0], &sigma, &tau, 1, 1), Err(Error::Input { .. })));
    }
}
