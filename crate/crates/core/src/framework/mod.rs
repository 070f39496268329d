//! Component systems: a family of modules A(g) indexed by a finite group G,
//! with an L-action c_{g,x} : A(g) → A(ˣg) and products
//! m_{g,h} : A(g) × A(h) → A(gh).
//!
//! The axioms are checked lazily and each verdict is computed at most
//! once; the products refuse to run until the axioms they rely on pass.

mod axioms;
mod products;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ActionSpec, FiniteGroup, GroupAction, GroupSpec, Orbit, Subgroup};
use crate::scalar::linalg::{add_scaled, Matrix};
use crate::scalar::{Scalar, ScalarKind};
use crate::verdict::Verdict;

pub use products::{IndexTerm, ProductComparison};

/// Dense per-component data of an element of A = ⊕ A(g).
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    components: Vec<Vec<Scalar>>,
}

/// An element of A^L stored by its components at the orbit representatives
/// g_1, …, g_t (in the order of [`ComponentSystem::orbits`]).
#[derive(Clone, PartialEq, Eq)]
pub struct InvariantElement {
    components: Vec<Vec<Scalar>>,
}

#[derive(Default)]
struct Verdicts {
    h1: OnceLock<Verdict>,
    h2: OnceLock<Verdict>,
    h3: OnceLock<Verdict>,
    h4: OnceLock<Verdict>,
    h4prime: OnceLock<Verdict>,
    invariant_basis: OnceLock<Vec<Vec<Vec<Scalar>>>>,
}

/// A validated component system over a single scalar kind.
pub struct ComponentSystem {
    action: GroupAction,
    kind: ScalarKind,
    labels: Vec<Vec<String>>,
    // c_{g,x} at g * |L| + x
    conj: Vec<Matrix>,
    // m_{g,h} at g * |G| + h; entry i * dim A(h) + j is m(e_i, e_j) ∈ A(gh)
    mul: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    stabilizers: Vec<Subgroup>,
    cache: Verdicts,
}

impl Clone for ComponentSystem {
    /// Clones the data; cached verdicts are recomputed on demand.
    fn clone(&self) -> Self {
        Self::assemble(
            self.action.clone(),
            self.kind,
            self.labels.clone(),
            self.conj.clone(),
            self.mul.clone(),
            self.unit.clone(),
        )
    }
}

impl fmt::Debug for ComponentSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComponentSystem")
            .field("kind", &self.kind)
            .field("dims", &self.labels.iter().map(Vec::len).collect::<Vec<_>>())
            .finish()
    }
}

impl ComponentSystem {
    /// Validates shapes, scalar kinds and invertibility of every c_{g,x}.
    pub fn new(
        action: GroupAction,
        kind: ScalarKind,
        labels: Vec<Vec<String>>,
        conj: Vec<Matrix>,
        mul: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let (g, l) = (action.space().clone(), action.actor().clone());
        let (ng, nl) = (g.order(), l.order());
        if labels.len() != ng {
            return Err(Error::input("basis", format!("expected {ng} components")));
        }
        let dim = |h: usize| labels[h].len();
        if conj.len() != ng * nl {
            return Err(Error::input("conj", format!("expected {} matrices", ng * nl)));
        }
        for h in 0..ng {
            for x in 0..nl {
                let c = &conj[h * nl + x];
                let target = action.act(x, h);
                let field = || format!("conj[{h}][{x}]");
                if c.kind() != kind {
                    return Err(Error::KindMismatch(format!("{} is not over {}", field(), kind.tag())));
                }
                if c.rows() != dim(target) || c.cols() != dim(h) {
                    return Err(Error::input(
                        field(),
                        format!("expected a {}x{} matrix", dim(target), dim(h)),
                    ));
                }
                if c.rank() != dim(h) {
                    return Err(Error::input(field(), "not invertible"));
                }
            }
        }
        if mul.len() != ng * ng {
            return Err(Error::input("mul", format!("expected {} tables", ng * ng)));
        }
        for a in 0..ng {
            for b in 0..ng {
                let table = &mul[a * ng + b];
                let target = dim(g.mul(a, b));
                if table.len() != dim(a) * dim(b) {
                    return Err(Error::input(
                        format!("mul[{a}][{b}]"),
                        format!("expected {} basis pairs", dim(a) * dim(b)),
                    ));
                }
                for (idx, v) in table.iter().enumerate() {
                    let field = || format!("mul[{a}][{b}][{}][{}]", idx / dim(b).max(1), idx % dim(b).max(1));
                    if v.len() != target {
                        return Err(Error::input(field(), format!("expected {target} coordinates")));
                    }
                    if v.iter().any(|s| s.kind() != kind) {
                        return Err(Error::KindMismatch(format!("{} is not over {}", field(), kind.tag())));
                    }
                }
            }
        }
        if unit.len() != dim(0) || unit.iter().any(|s| s.kind() != kind) {
            return Err(Error::input("unit", format!("expected {} coordinates over {}", dim(0), kind.tag())));
        }
        Ok(Self::assemble(action, kind, labels, conj, mul, unit))
    }

    /// Builds a system from closures: `conj(g, x)` and `mul(g, h, i, j)`.
    pub fn from_fn(
        action: GroupAction,
        kind: ScalarKind,
        labels: Vec<Vec<String>>,
        mut conj: impl FnMut(usize, usize) -> Matrix,
        mut mul: impl FnMut(usize, usize, usize, usize) -> Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let (ng, nl) = (action.space().order(), action.actor().order());
        let mut conj_tables = Vec::with_capacity(ng * nl);
        for g in 0..ng {
            for x in 0..nl {
                conj_tables.push(conj(g, x));
            }
        }
        let mut mul_tables = Vec::with_capacity(ng * ng);
        for g in 0..ng {
            for h in 0..ng {
                let mut table = Vec::with_capacity(labels[g].len() * labels[h].len());
                for i in 0..labels[g].len() {
                    for j in 0..labels[h].len() {
                        table.push(mul(g, h, i, j));
                    }
                }
                mul_tables.push(table);
            }
        }
        Self::new(action, kind, labels, conj_tables, mul_tables, unit)
    }

    fn assemble(
        action: GroupAction,
        kind: ScalarKind,
        labels: Vec<Vec<String>>,
        conj: Vec<Matrix>,
        mul: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Self {
        let orbits = action.orbits();
        let mut orbit_of = vec![0; action.space().order()];
        for (i, o) in orbits.iter().enumerate() {
            for &h in &o.members {
                orbit_of[h] = i;
            }
        }
        let stabilizers = action
            .space()
            .elements()
            .map(|g| action.stabilizer_unchecked(g))
            .collect();
        ComponentSystem {
            action,
            kind,
            labels,
            conj,
            mul,
            unit,
            orbits,
            orbit_of,
            stabilizers,
            cache: Verdicts::default(),
        }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.action.space()
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        self.action.actor()
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn dim(&self, g: usize) -> usize {
        self.labels[g].len()
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, g: usize) -> &[String] {
        &self.labels[g]
    }

    /// The matrix of c_{g,x} : A(g) → A(ˣg).
    pub fn conj(&self, g: usize, x: usize) -> &Matrix {
        &self.conj[g * self.actor().order() + x]
    }

    /// m_{g,h}(e_i, e_j) as a vector in A(gh).
    pub fn mul_basis(&self, g: usize, h: usize, i: usize, j: usize) -> &[Scalar] {
        &self.mul[g * self.group().order() + h][i * self.dim(h) + j]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Position of the orbit containing `g` in [`orbits`](Self::orbits).
    pub fn orbit_of(&self, g: usize) -> usize {
        self.orbit_of[g]
    }

    pub fn stabilizer(&self, g: usize) -> &Subgroup {
        &self.stabilizers[g]
    }

    /// c_{g,x}(v).
    pub fn apply_conj(&self, g: usize, x: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.conj(g, x).mul_vec(v)
    }

    /// m_{g,h}(a, b), extended bilinearly from the basis table.
    pub fn multiply(&self, g: usize, h: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let gh = self.group().mul(g, h);
        let mut out = vec![self.kind.zero(); self.dim(gh)];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &(ai * bj), self.mul_basis(g, h, i, j));
            }
        }
        out
    }

    /// Copy with one basis product replaced (for building counterexamples).
    pub fn with_mul_entry(&self, g: usize, h: usize, i: usize, j: usize, value: Vec<Scalar>) -> Result<Self> {
        let mut mul = self.mul.clone();
        let ng = self.group().order();
        let slot = mul
            .get_mut(g * ng + h)
            .and_then(|t| t.get_mut(i * self.dim(h) + j))
            .ok_or_else(|| Error::input("mul", "index out of range"))?;
        *slot = value;
        Self::new(self.action.clone(), self.kind, self.labels.clone(), self.conj.clone(), mul, self.unit.clone())
    }

    /// Copy with one c_{g,x} replaced.
    pub fn with_conj(&self, g: usize, x: usize, matrix: Matrix) -> Result<Self> {
        let mut conj = self.conj.clone();
        let slot = conj
            .get_mut(g * self.actor().order() + x)
            .ok_or_else(|| Error::input("conj", "index out of range"))?;
        *slot = matrix;
        Self::new(self.action.clone(), self.kind, self.labels.clone(), conj, self.mul.clone(), self.unit.clone())
    }

    pub fn with_unit(&self, unit: Vec<Scalar>) -> Result<Self> {
        Self::new(self.action.clone(), self.kind, self.labels.clone(), self.conj.clone(), self.mul.clone(), unit)
    }

    pub fn from_spec(spec: &SystemSpec) -> Result<Self> {
        let kind = ScalarKind::parse(&spec.coeff)?;
        let group = Arc::new(spec.group.build()?);
        let action = match (&spec.actor, &spec.action) {
            (None, None) => GroupAction::conjugation(group.clone()),
            (actor, Some(act)) => {
                let actor = match actor {
                    Some(a) => Arc::new(a.build()?),
                    None => group.clone(),
                };
                GroupAction::from_spec(actor, group.clone(), act)?
            }
            (Some(_), None) => return Err(Error::input("action", "required when an actor group is given")),
        };
        let scalar = |v: &serde_json::Value| Scalar::from_json(v, kind);
        let mut conj = Vec::new();
        if spec.conj.len() != group.order() {
            return Err(Error::input("conj", format!("expected {} entries", group.order())));
        }
        for (g, per_x) in spec.conj.iter().enumerate() {
            if per_x.len() != action.actor().order() {
                return Err(Error::input(format!("conj[{g}]"), format!("expected {} matrices", action.actor().order())));
            }
            for rows in per_x {
                let rows: Vec<Vec<Scalar>> = rows
                    .iter()
                    .map(|r| r.iter().map(scalar).collect::<Result<_>>())
                    .collect::<Result<_>>()?;
                let target = action.act(conj.len() % action.actor().order(), g);
                let dims = (spec.basis.get(target).map_or(0, Vec::len), spec.basis.get(g).map_or(0, Vec::len));
                conj.push(if rows.is_empty() {
                    Matrix::zeros(kind, dims.0, dims.1)
                } else {
                    Matrix::from_rows(kind, rows)?
                });
            }
        }
        if spec.mul.len() != group.order() || spec.mul.iter().any(|r| r.len() != group.order()) {
            return Err(Error::input("mul", format!("expected a {0}x{0} array", group.order())));
        }
        let mut mul = Vec::new();
        for per_h in &spec.mul {
            for table in per_h {
                let mut flat = Vec::new();
                for row in table {
                    for v in row {
                        flat.push(v.iter().map(scalar).collect::<Result<Vec<_>>>()?);
                    }
                }
                mul.push(flat);
            }
        }
        let unit = spec.unit.iter().map(scalar).collect::<Result<Vec<_>>>()?;
        Self::new(action, kind, spec.basis.clone(), conj, mul, unit)
    }

    pub fn to_spec(&self) -> SystemSpec {
        let (ng, nl) = (self.group().order(), self.actor().order());
        let json_vec = |v: &[Scalar]| v.iter().map(Scalar::to_json).collect::<Vec<_>>();
        let conj_of = |g: usize| {
            (0..nl)
                .map(|x| self.conj(g, x).to_rows().iter().map(|r| json_vec(r)).collect())
                .collect()
        };
        let conjugation = self.action.is_conjugation();
        SystemSpec {
            coeff: self.kind.tag(),
            group: GroupSpec::from_group(self.group()),
            actor: (!conjugation).then(|| GroupSpec::from_group(self.actor())),
            action: (!conjugation).then(|| self.action.to_spec()),
            basis: self.labels.clone(),
            conj: (0..ng).map(conj_of).collect(),
            mul: (0..ng)
                .map(|g| {
                    (0..ng)
                        .map(|h| {
                            (0..self.dim(g))
                                .map(|i| (0..self.dim(h)).map(|j| json_vec(self.mul_basis(g, h, i, j))).collect())
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            unit: json_vec(&self.unit),
        }
    }
}

/// JSON form of a [`ComponentSystem`]. Omitting `actor` and `action`
/// means G acting on itself by conjugation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemSpec {
    pub coeff: String,
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actor: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    /// Basis labels of A(g), per g.
    pub basis: Vec<Vec<String>>,
    /// `conj[g][x]` is the matrix of c_{g,x} as a list of rows.
    pub conj: Vec<Vec<Vec<Vec<serde_json::Value>>>>,
    /// `mul[g][h][i][j]` is m_{g,h}(e_i, e_j) in A(gh).
    pub mul: Vec<Vec<Vec<Vec<Vec<serde_json::Value>>>>>,
    pub unit: Vec<serde_json::Value>,
}

impl GradedElement {
    pub fn zero(sys: &ComponentSystem) -> Self {
        GradedElement {
            components: (0..sys.group().order())
                .map(|g| vec![sys.kind().zero(); sys.dim(g)])
                .collect(),
        }
    }

    /// The basis vector e_i of A(g).
    pub fn basis(sys: &ComponentSystem, g: usize, i: usize) -> Self {
        let mut out = Self::zero(sys);
        out.components[g][i] = sys.kind().one();
        out
    }

    pub fn unit(sys: &ComponentSystem) -> Self {
        let mut out = Self::zero(sys);
        out.components[0] = sys.unit().to_vec();
        out
    }

    pub fn from_components(sys: &ComponentSystem, components: Vec<Vec<Scalar>>) -> Result<Self> {
        if components.len() != sys.group().order() {
            return Err(Error::input("components", "one vector per group element expected"));
        }
        for (g, v) in components.iter().enumerate() {
            if v.len() != sys.dim(g) || v.iter().any(|s| s.kind() != sys.kind()) {
                return Err(Error::input(format!("components[{g}]"), "wrong length or scalar kind"));
            }
        }
        Ok(GradedElement { components })
    }

    pub fn component(&self, g: usize) -> &[Scalar] {
        &self.components[g]
    }

    pub fn components(&self) -> &[Vec<Scalar>] {
        &self.components
    }

    pub fn add(&self, other: &Self) -> Self {
        GradedElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        GradedElement {
            components: self
                .components
                .iter()
                .map(|a| a.iter().map(|x| s * x).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(Scalar::is_zero)
    }

    /// c_x applied componentwise: (c_x α)_{ˣg} = c_{g,x}(α_g).
    pub fn act(&self, sys: &ComponentSystem, x: usize) -> Self {
        let mut out = Self::zero(sys);
        for g in sys.group().elements() {
            out.components[sys.action().act(x, g)] = sys.apply_conj(g, x, &self.components[g]);
        }
        out
    }

    pub fn is_invariant(&self, sys: &ComponentSystem) -> bool {
        sys.actor().elements().all(|x| self.act(sys, x) == *self)
    }
}

impl InvariantElement {
    /// Component at the `i`-th orbit representative.
    pub fn component(&self, i: usize) -> &[Scalar] {
        &self.components[i]
    }

    pub fn components(&self) -> &[Vec<Scalar>] {
        &self.components
    }

    pub fn zero(sys: &ComponentSystem) -> Self {
        InvariantElement {
            components: sys
                .orbits()
                .iter()
                .map(|o| vec![sys.kind().zero(); sys.dim(o.rep)])
                .collect(),
        }
    }

    /// Checks that every component is fixed by its stabilizer.
    pub fn new(sys: &ComponentSystem, components: Vec<Vec<Scalar>>) -> Result<Self> {
        if components.len() != sys.orbits().len() {
            return Err(Error::input("components", "one vector per orbit expected"));
        }
        for (i, (o, v)) in sys.orbits().iter().zip(&components).enumerate() {
            if v.len() != sys.dim(o.rep) || v.iter().any(|s| s.kind() != sys.kind()) {
                return Err(Error::input(format!("components[{i}]"), "wrong length or scalar kind"));
            }
            for &x in sys.stabilizer(o.rep).members() {
                if sys.apply_conj(o.rep, x, v) != *v {
                    return Err(Error::input(
                        format!("components[{i}]"),
                        format!("not fixed by stabilizer element {x}"),
                    ));
                }
            }
        }
        Ok(InvariantElement { components })
    }

    pub(crate) fn new_unchecked(components: Vec<Vec<Scalar>>) -> Self {
        InvariantElement { components }
    }

    /// Spreads each representative component over its orbit:
    /// α_{ʸg_i} = c_{g_i,y}(α_i).
    pub fn to_graded(&self, sys: &ComponentSystem) -> GradedElement {
        let mut out = GradedElement::zero(sys);
        let mut done = vec![false; sys.group().order()];
        for (o, v) in sys.orbits().iter().zip(&self.components) {
            for y in sys.actor().elements() {
                let h = sys.action().act(y, o.rep);
                if !done[h] {
                    done[h] = true;
                    out.components[h] = sys.apply_conj(o.rep, y, v);
                }
            }
        }
        out
    }

    /// Restricts an L-invariant graded element to the orbit representatives.
    pub fn from_graded(sys: &ComponentSystem, alpha: &GradedElement) -> Result<Self> {
        if !alpha.is_invariant(sys) {
            return Err(Error::input("alpha", "element is not L-invariant"));
        }
        Ok(InvariantElement {
            components: sys.orbits().iter().map(|o| alpha.components[o.rep].clone()).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        InvariantElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        InvariantElement {
            components: self
                .components
                .iter()
                .map(|a| a.iter().map(|x| s * x).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(Scalar::is_zero)
    }
}

fn fmt_components(f: &mut fmt::Formatter<'_>, comps: &[Vec<Scalar>]) -> fmt::Result {
    let mut first = true;
    for (i, v) in comps.iter().enumerate() {
        if v.iter().all(Scalar::is_zero) {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        write!(f, "[{i}](")?;
        for (k, s) in v.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_components(f, &self.components)
    }
}

impl fmt::Debug for InvariantElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inv ")?;
        fmt_components(f, &self.components)
    }
}

pub use axioms::{
    check_h1, check_h2, check_h3, check_h4, check_h4prime, invariant_basis,
};
pub use products::{
    compare_products, invariant_coordinates, product_doublecoset, product_full, product_orbit, structure_constants,
    ProductKind,
};
