//! Root-of-unity valued 2- and 3-cocycles.
//!
//! Every cocycle is stored as a table of exponents modulo `m`; the value
//! is ζ_m raised to the stored exponent. Scalars are produced only at the
//! point of use, via [`ScalarKind::root_of_unity`].

use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAction};
use crate::scalar::{Scalar, ScalarKind};
use crate::verdict::Verdict;

/// ω : G×G×G → μ_m, with ω(a,b,c) = ζ_m^{exp[a][b][c]}.
#[derive(Debug, Clone)]
pub struct ThreeCocycle {
    group: Arc<FiniteGroup>,
    m: u32,
    exp: Vec<u32>,
}

/// σ_g(x, y) = ζ_m^{exp[g][x][y]} for g ∈ G, x, y ∈ L.
#[derive(Debug, Clone)]
pub struct SigmaFamily {
    action: GroupAction,
    m: u32,
    exp: Vec<u32>,
}

/// τ_{g,h}(x) = ζ_m^{exp[g][h][x]} for g, h ∈ G, x ∈ L.
#[derive(Debug, Clone)]
pub struct TauFamily {
    action: GroupAction,
    m: u32,
    exp: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OmegaSpec {
    pub m: u32,
    pub omega_exp: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SigmaSpec {
    pub m: u32,
    pub sigma_exp: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauSpec {
    pub m: u32,
    pub tau_exp: Vec<Vec<Vec<i64>>>,
}

fn flatten_cube(
    field: &str,
    cube: &[Vec<Vec<i64>>],
    dims: (usize, usize, usize),
    m: u32,
) -> Result<Vec<u32>> {
    if m == 0 {
        return Err(Error::input("m", "modulus must be positive"));
    }
    if cube.len() != dims.0 {
        return Err(Error::input(field, format!("expected {} outer entries", dims.0)));
    }
    let mut out = Vec::with_capacity(dims.0 * dims.1 * dims.2);
    for (i, plane) in cube.iter().enumerate() {
        if plane.len() != dims.1 {
            return Err(Error::input(format!("{field}[{i}]"), format!("expected {} entries", dims.1)));
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != dims.2 {
                return Err(Error::input(
                    format!("{field}[{i}][{j}]"),
                    format!("expected {} entries", dims.2),
                ));
            }
            out.extend(row.iter().map(|&e| e.rem_euclid(m as i64) as u32));
        }
    }
    Ok(out)
}

fn cube(exp: &[u32], dims: (usize, usize, usize)) -> Vec<Vec<Vec<i64>>> {
    (0..dims.0)
        .map(|i| {
            (0..dims.1)
                .map(|j| {
                    (0..dims.2)
                        .map(|k| exp[(i * dims.1 + j) * dims.2 + k] as i64)
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl ThreeCocycle {
    pub fn new(group: Arc<FiniteGroup>, m: u32, exp: Vec<u32>) -> Result<Self> {
        let n = group.order();
        if m == 0 {
            return Err(Error::input("m", "modulus must be positive"));
        }
        if exp.len() != n * n * n {
            return Err(Error::input("omega_exp", format!("expected {} entries", n * n * n)));
        }
        let exp = exp.into_iter().map(|e| e % m).collect();
        Ok(ThreeCocycle { group, m, exp })
    }

    pub fn from_spec(group: Arc<FiniteGroup>, spec: &OmegaSpec) -> Result<Self> {
        let n = group.order();
        let exp = flatten_cube("omega_exp", &spec.omega_exp, (n, n, n), spec.m)?;
        Self::new(group, spec.m, exp)
    }

    pub fn to_spec(&self) -> OmegaSpec {
        let n = self.group.order();
        OmegaSpec {
            m: self.m,
            omega_exp: cube(&self.exp, (n, n, n)),
        }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        ThreeCocycle {
            group,
            m: 1,
            exp: vec![0; n * n * n],
        }
    }

    /// On ℤ/n (elements 0..n−1): ω(a,b,c) = ζ_n^{p·a·⌊(b+c)/n⌋}.
    pub fn cyclic(n: usize, p: u32) -> Self {
        let group = Arc::new(FiniteGroup::cyclic(n));
        let mut exp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let carry = (b + c) / n;
                    exp.push(((p as usize * a * carry) % n) as u32);
                }
            }
        }
        ThreeCocycle {
            group,
            m: n as u32,
            exp,
        }
    }

    /// Pullback along a homomorphism `hom : H → G` (given on elements).
    pub fn pullback(&self, source: Arc<FiniteGroup>, hom: &[usize]) -> Result<Self> {
        if hom.len() != source.order() {
            return Err(Error::input("hom", "length differs from the source order"));
        }
        for a in source.elements() {
            self.group.check_index(hom[a], "hom")?;
            for b in source.elements() {
                if hom[source.mul(a, b)] != self.group.mul(hom[a], hom[b]) {
                    return Err(Error::input("hom", format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        let n = source.order();
        let mut exp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    exp.push(self.exp_at(hom[a], hom[b], hom[c]));
                }
            }
        }
        Ok(ThreeCocycle {
            group: source,
            m: self.m,
            exp,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn exp_at(&self, a: usize, b: usize, c: usize) -> u32 {
        let n = self.group.order();
        self.exp[(a * n + b) * n + c]
    }

    /// Returns a copy with one exponent replaced.
    pub fn with_entry(&self, a: usize, b: usize, c: usize, e: u32) -> Self {
        let n = self.group.order();
        let mut out = self.clone();
        out.exp[(a * n + b) * n + c] = e % self.m;
        out
    }

    /// Normalization and ω(a,b,c)ω(a,bc,d)ω(b,c,d) = ω(ab,c,d)ω(a,b,cd).
    pub fn check(&self) -> Verdict {
        let g = &*self.group;
        let m = self.m as u64;
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if (a == 0 || b == 0 || c == 0) && self.exp_at(a, b, c) != 0 {
                        return Verdict::Fail(format!("not normalized at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let bc = g.mul(b, c);
                    for d in 0..n {
                        let lhs = self.exp_at(a, b, c) as u64
                            + self.exp_at(a, bc, d) as u64
                            + self.exp_at(b, c, d) as u64;
                        let rhs = self.exp_at(ab, c, d) as u64 + self.exp_at(a, b, g.mul(c, d)) as u64;
                        if lhs % m != rhs % m {
                            return Verdict::Fail(format!("cocycle identity fails at ({a}, {b}, {c}, {d})"));
                        }
                    }
                }
            }
        }
        Verdict::Pass
    }
}

pub fn check_three_cocycle(omega: &ThreeCocycle) -> Verdict {
    omega.check()
}

/// σ_g(x,y) = ω(g,x,y)·ω(x,y,(xy)⁻¹g(xy)) / ω(x, x⁻¹gx, y), G acting on
/// itself by conjugation.
pub fn sigma_of_omega(omega: &ThreeCocycle) -> Result<SigmaFamily> {
    omega.check().into_result("three-cocycle")?;
    let g = &omega.group;
    let n = g.order();
    let m = omega.m as i64;
    let mut exp = Vec::with_capacity(n * n * n);
    for h in 0..n {
        for x in 0..n {
            let h_x = g.conj(g.inv(x), h);
            for y in 0..n {
                let xy = g.mul(x, y);
                let h_xy = g.conj(g.inv(xy), h);
                let e = omega.exp_at(h, x, y) as i64 + omega.exp_at(x, y, h_xy) as i64
                    - omega.exp_at(x, h_x, y) as i64;
                exp.push(e.rem_euclid(m) as u32);
            }
        }
    }
    Ok(SigmaFamily {
        action: GroupAction::conjugation(g.clone()),
        m: omega.m,
        exp,
    })
}

/// τ_{g,h}(x) = ω(g,h,x)·ω(x, x⁻¹gx, x⁻¹hx) / ω(g, x, x⁻¹hx).
pub fn tau_of_omega(omega: &ThreeCocycle) -> Result<TauFamily> {
    omega.check().into_result("three-cocycle")?;
    let g = &omega.group;
    let n = g.order();
    let m = omega.m as i64;
    let mut exp = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                let xi = g.inv(x);
                let a_x = g.conj(xi, a);
                let b_x = g.conj(xi, b);
                let e = omega.exp_at(a, b, x) as i64 + omega.exp_at(x, a_x, b_x) as i64
                    - omega.exp_at(a, x, b_x) as i64;
                exp.push(e.rem_euclid(m) as u32);
            }
        }
    }
    Ok(TauFamily {
        action: GroupAction::conjugation(g.clone()),
        m: omega.m,
        exp,
    })
}

impl SigmaFamily {
    pub fn new(action: GroupAction, m: u32, exp: Vec<u32>) -> Result<Self> {
        let (ng, nl) = (action.space().order(), action.actor().order());
        if m == 0 {
            return Err(Error::input("m", "modulus must be positive"));
        }
        if exp.len() != ng * nl * nl {
            return Err(Error::input("sigma_exp", format!("expected {} entries", ng * nl * nl)));
        }
        let exp = exp.into_iter().map(|e| e % m).collect();
        Ok(SigmaFamily { action, m, exp })
    }

    pub fn trivial(action: GroupAction) -> Self {
        let n = action.space().order() * action.actor().order().pow(2);
        SigmaFamily {
            action,
            m: 1,
            exp: vec![0; n],
        }
    }

    pub fn from_spec(action: GroupAction, spec: &SigmaSpec) -> Result<Self> {
        let (ng, nl) = (action.space().order(), action.actor().order());
        let exp = flatten_cube("sigma_exp", &spec.sigma_exp, (ng, nl, nl), spec.m)?;
        Self::new(action, spec.m, exp)
    }

    pub fn to_spec(&self) -> SigmaSpec {
        let (ng, nl) = (self.action.space().order(), self.action.actor().order());
        SigmaSpec {
            m: self.m,
            sigma_exp: cube(&self.exp, (ng, nl, nl)),
        }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn exp_at(&self, g: usize, x: usize, y: usize) -> u32 {
        let nl = self.action.actor().order();
        self.exp[(g * nl + x) * nl + y]
    }

    pub fn with_entry(&self, g: usize, x: usize, y: usize, e: u32) -> Self {
        let nl = self.action.actor().order();
        let mut out = self.clone();
        out.exp[(g * nl + x) * nl + y] = e % self.m;
        out
    }

    pub fn value(&self, kind: ScalarKind, g: usize, x: usize, y: usize) -> Result<Scalar> {
        kind.root_of_unity(self.m, self.exp_at(g, x, y) as i64)
    }

    /// Normalization and the componentwise 2-cocycle identity
    /// σ_{x⁻¹·g}(y,z)·σ_g(x,yz) = σ_g(x,y)·σ_g(xy,z).
    pub fn check(&self) -> Verdict {
        let l = self.action.actor();
        let ng = self.action.space().order();
        let m = self.m as u64;
        for g in 0..ng {
            for x in l.elements() {
                if self.exp_at(g, x, 0) != 0 || self.exp_at(g, 0, x) != 0 {
                    return Verdict::Fail(format!("sigma not normalized at g={g}, x={x}"));
                }
            }
        }
        for g in 0..ng {
            for x in l.elements() {
                let gx = self.action.act(l.inv(x), g);
                for y in l.elements() {
                    let xy = l.mul(x, y);
                    for z in l.elements() {
                        let lhs = self.exp_at(gx, y, z) as u64 + self.exp_at(g, x, l.mul(y, z)) as u64;
                        let rhs = self.exp_at(g, x, y) as u64 + self.exp_at(g, xy, z) as u64;
                        if lhs % m != rhs % m {
                            return Verdict::Fail(format!(
                                "sigma cocycle identity fails at g={g}, x={x}, y={y}, z={z}"
                            ));
                        }
                    }
                }
            }
        }
        Verdict::Pass
    }

    /// The scalar 2-cocycle condition for σ_g restricted to L_g.
    pub fn check_restricted(&self, g: usize) -> Result<Verdict> {
        let l = self.action.actor();
        let stab = self.action.stabilizer(g)?;
        let m = self.m as u64;
        for &x in stab.members() {
            for &y in stab.members() {
                for &z in stab.members() {
                    let lhs = self.exp_at(g, x, y) as u64 + self.exp_at(g, l.mul(x, y), z) as u64;
                    let rhs = self.exp_at(g, y, z) as u64 + self.exp_at(g, x, l.mul(y, z)) as u64;
                    if lhs % m != rhs % m {
                        return Ok(Verdict::Fail(format!(
                            "restricted cocycle fails at g={g}, x={x}, y={y}, z={z}"
                        )));
                    }
                }
            }
        }
        Ok(Verdict::Pass)
    }
}

impl TauFamily {
    pub fn new(action: GroupAction, m: u32, exp: Vec<u32>) -> Result<Self> {
        let (ng, nl) = (action.space().order(), action.actor().order());
        if m == 0 {
            return Err(Error::input("m", "modulus must be positive"));
        }
        if exp.len() != ng * ng * nl {
            return Err(Error::input("tau_exp", format!("expected {} entries", ng * ng * nl)));
        }
        let exp = exp.into_iter().map(|e| e % m).collect();
        Ok(TauFamily { action, m, exp })
    }

    pub fn trivial(action: GroupAction) -> Self {
        let n = action.space().order().pow(2) * action.actor().order();
        TauFamily {
            action,
            m: 1,
            exp: vec![0; n],
        }
    }

    pub fn from_spec(action: GroupAction, spec: &TauSpec) -> Result<Self> {
        let (ng, nl) = (action.space().order(), action.actor().order());
        let exp = flatten_cube("tau_exp", &spec.tau_exp, (ng, ng, nl), spec.m)?;
        Self::new(action, spec.m, exp)
    }

    pub fn to_spec(&self) -> TauSpec {
        let (ng, nl) = (self.action.space().order(), self.action.actor().order());
        TauSpec {
            m: self.m,
            tau_exp: cube(&self.exp, (ng, ng, nl)),
        }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn exp_at(&self, g: usize, h: usize, x: usize) -> u32 {
        let (ng, nl) = (self.action.space().order(), self.action.actor().order());
        self.exp[(g * ng + h) * nl + x]
    }

    pub fn with_entry(&self, g: usize, h: usize, x: usize, e: u32) -> Self {
        let (ng, nl) = (self.action.space().order(), self.action.actor().order());
        let mut out = self.clone();
        out.exp[(g * ng + h) * nl + x] = e % self.m;
        out
    }

    pub fn trivialized(&self) -> Self {
        TauFamily {
            action: self.action.clone(),
            m: self.m,
            exp: vec![0; self.exp.len()],
        }
    }

    pub fn value(&self, kind: ScalarKind, g: usize, h: usize, x: usize) -> Result<Scalar> {
        kind.root_of_unity(self.m, self.exp_at(g, h, x) as i64)
    }

    /// τ_{g,h}(1) = 1 and τ_{1,h}(x) = τ_{g,1}(x) = 1.
    pub fn check_normalized(&self) -> Verdict {
        let ng = self.action.space().order();
        let l = self.action.actor();
        for g in 0..ng {
            for h in 0..ng {
                if self.exp_at(g, h, 0) != 0 {
                    return Verdict::Fail(format!("tau_{{{g},{h}}}(1) != 1"));
                }
            }
            for x in l.elements() {
                if self.exp_at(0, g, x) != 0 || self.exp_at(g, 0, x) != 0 {
                    return Verdict::Fail(format!("tau not counital at g={g}, x={x}"));
                }
            }
        }
        Verdict::Pass
    }
}

fn common_modulus(sigma: &SigmaFamily, tau: &TauFamily) -> (u64, u64, u64) {
    let m = (sigma.m as u64).lcm(&(tau.m as u64));
    (m, m / sigma.m as u64, m / tau.m as u64)
}

fn same_action(sigma: &SigmaFamily, tau: &TauFamily) -> Result<()> {
    let (a, b) = (sigma.action(), tau.action());
    if a.actor().order() != b.actor().order() || a.space().order() != b.space().order() {
        return Err(Error::input("tau", "shape differs from sigma"));
    }
    Ok(())
}

/// σ_g(x,y)σ_h(x,y) = σ_{gh}(x,y)·τ_{g,h}(x)⁻¹·τ_{g,h}(y)⁻¹·τ_{g,h}(xy)
/// for all g, h and all x, y ∈ L_g ∩ L_h.
pub fn check_sigma_tau(sigma: &SigmaFamily, tau: &TauFamily) -> Result<Verdict> {
    same_action(sigma, tau)?;
    let action = sigma.action();
    let (g_grp, l) = (action.space(), action.actor());
    let (m, fs, ft) = common_modulus(sigma, tau);
    let stabs: Vec<_> = g_grp.elements().map(|g| action.stabilizer_unchecked(g)).collect();
    for g in g_grp.elements() {
        for h in g_grp.elements() {
            let gh = g_grp.mul(g, h);
            let both = stabs[g].intersection(&stabs[h]);
            for &x in both.members() {
                for &y in both.members() {
                    let xy = l.mul(x, y);
                    let lhs = fs * (sigma.exp_at(g, x, y) as u64 + sigma.exp_at(h, x, y) as u64);
                    let rhs = fs * sigma.exp_at(gh, x, y) as u64 + ft * tau.exp_at(g, h, xy) as u64;
                    let sub = ft * (tau.exp_at(g, h, x) as u64 + tau.exp_at(g, h, y) as u64);
                    if (lhs + sub) % m != rhs % m {
                        return Ok(Verdict::Fail(format!(
                            "sigma/tau relation fails at g={g}, h={h}, x={x}, y={y}"
                        )));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// The coproduct p_g x̄ ↦ Σ_{hk=g} τ_{h,k}(x) p_h x̄ ⊗ p_k x̄ is multiplicative:
/// τ_{h,k}(x)·τ_{x⁻¹h,x⁻¹k}(y)·σ_h(x,y)·σ_k(x,y) = σ_{hk}(x,y)·τ_{h,k}(xy)
/// for all h, k ∈ G and x, y ∈ L.
pub fn check_coproduct_multiplicative(sigma: &SigmaFamily, tau: &TauFamily) -> Result<Verdict> {
    same_action(sigma, tau)?;
    let action = sigma.action();
    let (g_grp, l) = (action.space(), action.actor());
    let (m, fs, ft) = common_modulus(sigma, tau);
    for h in g_grp.elements() {
        for k in g_grp.elements() {
            let hk = g_grp.mul(h, k);
            for x in l.elements() {
                let xi = l.inv(x);
                let (hx, kx) = (action.act(xi, h), action.act(xi, k));
                for y in l.elements() {
                    let xy = l.mul(x, y);
                    let lhs = ft * (tau.exp_at(h, k, x) as u64 + tau.exp_at(hx, kx, y) as u64)
                        + fs * (sigma.exp_at(h, x, y) as u64 + sigma.exp_at(k, x, y) as u64);
                    let rhs = fs * sigma.exp_at(hk, x, y) as u64 + ft * tau.exp_at(h, k, xy) as u64;
                    if lhs % m != rhs % m {
                        return Ok(Verdict::Fail(format!(
                            "coproduct not multiplicative at h={h}, k={k}, x={x}, y={y}"
                        )));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// ψ(x̄) = τ_{g,h}(x)·x̄ : k_{σ_gh}(L_g∩L_h) → k_{σ_g·σ_h}(L_g∩L_h); returns
/// the scalar τ_{g,h}(x).
pub fn psi_twist(tau: &TauFamily, kind: ScalarKind, g: usize, h: usize, x: usize) -> Result<Scalar> {
    let action = tau.action();
    action.space().check_index(g, "g")?;
    action.space().check_index(h, "h")?;
    action.actor().check_index(x, "x")?;
    if action.act(x, g) != g || action.act(x, h) != h {
        return Err(Error::input("x", format!("{x} does not stabilize both {g} and {h}")));
    }
    tau.value(kind, g, h, x)
}

/// Checks that ψ is multiplicative, evaluating both sides as scalars:
/// ψ(x̄)ψ(ȳ) in k_{σ_g·σ_h} against ψ(σ_{gh}(x,y)·(xy)‾).
pub fn check_psi_multiplicative(
    sigma: &SigmaFamily,
    tau: &TauFamily,
    kind: ScalarKind,
) -> Result<Verdict> {
    same_action(sigma, tau)?;
    let action = sigma.action();
    let (g_grp, l) = (action.space(), action.actor());
    for g in g_grp.elements() {
        for h in g_grp.elements() {
            let gh = g_grp.mul(g, h);
            let both = action.stabilizer_unchecked(g).intersection(&action.stabilizer_unchecked(h));
            for &x in both.members() {
                for &y in both.members() {
                    let xy = l.mul(x, y);
                    let product = &(&psi_twist(tau, kind, g, h, x)? * &psi_twist(tau, kind, g, h, y)?)
                        * &(&sigma.value(kind, g, x, y)? * &sigma.value(kind, h, x, y)?);
                    let image = &sigma.value(kind, gh, x, y)? * &psi_twist(tau, kind, g, h, xy)?;
                    if product != image {
                        return Ok(Verdict::Fail(format!(
                            "psi not multiplicative at g={g}, h={h}, x={x}, y={y}"
                        )));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}
