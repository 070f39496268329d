use serde::Serialize;

use super::axioms::{check_h1, check_h2, check_h3, check_h4, check_h4prime, fixed_subspaces, invariant_basis};
use super::{ComponentSystem, GradedElement, InvariantElement};
use crate::error::{Error, Result};
use crate::group::double_cosets;
use crate::scalar::linalg::{add_scaled, Subspace};
use crate::scalar::Scalar;
use crate::verdict::Verdict;

fn require_h123(sys: &ComponentSystem) -> Result<()> {
    check_h1(sys).into_result("H1")?;
    check_h2(sys).into_result("H2")?;
    check_h3(sys).into_result("H3")
}

fn require_h4_or_h4prime(sys: &ComponentSystem) -> Result<()> {
    match check_h4prime(sys) {
        Verdict::Pass => Ok(()),
        Verdict::Fail(w) => check_h4(sys)
            .into_result("H4")
            .map_err(|_| Error::check("H4'", w)),
    }
}

/// The product of A: (αβ)_g = Σ_{hk=g} m_{h,k}(α_h, β_k).
pub fn product_full(sys: &ComponentSystem, alpha: &GradedElement, beta: &GradedElement) -> Result<GradedElement> {
    require_h123(sys)?;
    check_h4(sys).into_result("H4")?;
    let grp = sys.group();
    let mut out = GradedElement::zero(sys);
    for h in grp.elements() {
        if alpha.component(h).iter().all(Scalar::is_zero) {
            continue;
        }
        for k in grp.elements() {
            let term = sys.multiply(h, k, alpha.component(h), beta.component(k));
            add_scaled(&mut out.components[grp.mul(h, k)], &sys.kind().one(), &term);
        }
    }
    Ok(out)
}

/// The product of A^L: (αβ)_g = Σ m_{h,k}(α_h, β_k) over one pair (h, k)
/// per L_g-orbit on {hk = g}. Only the orbit representatives g_i are
/// computed; the other components follow by invariance.
///
/// Requires (H1)–(H3) and either (H4′) or (H4). Under (H4′) the product
/// is associative. Under (H4) alone it is still well defined (it is the
/// inherited product with the indices |L_g : L_h ∩ L_k| removed) but need
/// not be associative: the group algebra of S₃ with L = G is an example.
pub fn product_orbit(
    sys: &ComponentSystem,
    alpha: &InvariantElement,
    beta: &InvariantElement,
) -> Result<InvariantElement> {
    require_h123(sys)?;
    require_h4_or_h4prime(sys)?;
    Ok(orbit_product_unchecked(sys, alpha, beta))
}

pub(crate) fn orbit_product_unchecked(
    sys: &ComponentSystem,
    alpha: &InvariantElement,
    beta: &InvariantElement,
) -> InvariantElement {
    let (a, b) = (alpha.to_graded(sys), beta.to_graded(sys));
    let act = sys.action();
    let comps = sys
        .orbits()
        .iter()
        .map(|o| {
            let mut acc = vec![sys.kind().zero(); sys.dim(o.rep)];
            for (h, k) in act.orbit_pair_reps(o.rep).expect("orbit rep in range") {
                let term = sys.multiply(h, k, a.component(h), b.component(k));
                add_scaled(&mut acc, &sys.kind().one(), &term);
            }
            acc
        })
        .collect();
    InvariantElement::new_unchecked(comps)
}

/// Product of a ∈ A(g_i)^{L_i} and b ∈ A(g_j)^{L_j} as a sum over
/// double cosets L_i x L_j: each term m_{ʸg_i, ʸˣg_j}(ʸa, ʸˣb) lands in
/// the representative g_k = ʸg_i·ʸˣg_j, with y the least such element.
pub fn product_doublecoset(
    sys: &ComponentSystem,
    i: usize,
    a: &[Scalar],
    j: usize,
    b: &[Scalar],
) -> Result<InvariantElement> {
    require_h123(sys)?;
    require_h4_or_h4prime(sys)?;
    let orbits = sys.orbits();
    if i >= orbits.len() || j >= orbits.len() {
        return Err(Error::input("orbit", "orbit index out of range"));
    }
    let (gi, gj) = (orbits[i].rep, orbits[j].rep);
    for (name, idx, v) in [("a", i, a), ("b", j, b)] {
        let mut c = InvariantElement::zero(sys).components;
        c[idx] = v.to_vec();
        InvariantElement::new(sys, c).map_err(|e| Error::input(name, e.to_string()))?;
    }
    let (grp, l, act) = (sys.group(), sys.actor(), sys.action());
    let mut out = InvariantElement::zero(sys);
    for x in double_cosets(l, sys.stabilizer(gi), sys.stabilizer(gj))? {
        let product = grp.mul(gi, act.act(x, gj));
        let k = sys.orbit_of(product);
        let gk = orbits[k].rep;
        let y = act
            .transporter(product, gk)
            .ok_or_else(|| Error::Internal(format!("no transporter from {product} to {gk}")))?;
        let yx = l.mul(y, x);
        let left = sys.apply_conj(gi, y, a);
        let right = sys.apply_conj(gj, yx, b);
        let term = sys.multiply(act.act(y, gi), act.act(yx, gj), &left, &right);
        add_scaled(&mut out.components[k], &sys.kind().one(), &term);
    }
    Ok(out)
}

/// One orbit-representative term of the comparison at component g.
#[derive(Debug, Clone, Serialize)]
pub struct IndexTerm {
    pub g: usize,
    pub h: usize,
    pub k: usize,
    /// |L_g : L_h ∩ L_k|.
    pub index: usize,
}

/// Both products of two invariants, with the indices relating them.
#[derive(Debug, Clone)]
pub struct ProductComparison {
    pub terms: Vec<IndexTerm>,
    pub full: InvariantElement,
    pub orbit: InvariantElement,
    /// Whether product_full equals Σ index · (orbit terms) on every component.
    pub holds: bool,
}

/// Compares the product inherited from A with the product of A^L: the
/// former is the latter with each orbit term weighted by |L_g : L_h ∩ L_k|.
pub fn compare_products(
    sys: &ComponentSystem,
    alpha: &InvariantElement,
    beta: &InvariantElement,
) -> Result<ProductComparison> {
    let full_graded = product_full(sys, &alpha.to_graded(sys), &beta.to_graded(sys))?;
    let full = InvariantElement::from_graded(sys, &full_graded)
        .map_err(|_| Error::Internal("product of invariants is not invariant".into()))?;
    let orbit = orbit_product_unchecked(sys, alpha, beta);
    let (a, b) = (alpha.to_graded(sys), beta.to_graded(sys));
    let kind = sys.kind();
    let mut terms = Vec::new();
    let mut holds = true;
    for (idx, o) in sys.orbits().iter().enumerate() {
        let g = o.rep;
        let lg = sys.stabilizer(g).order();
        let mut weighted = vec![kind.zero(); sys.dim(g)];
        for (h, k) in sys.action().orbit_pair_reps(g)? {
            let index = lg / sys.stabilizer(h).intersection(sys.stabilizer(k)).order();
            let term = sys.multiply(h, k, a.component(h), b.component(k));
            add_scaled(&mut weighted, &kind.from_i64(index as i64), &term);
            terms.push(IndexTerm { g, h, k, index });
        }
        holds &= weighted == full.component(idx);
    }
    Ok(ProductComparison {
        terms,
        full,
        orbit,
        holds,
    })
}

/// Coordinates of an invariant element in the basis of
/// [`invariant_basis`](super::invariant_basis) (same order).
pub fn invariant_coordinates(sys: &ComponentSystem, alpha: &InvariantElement) -> Result<Vec<Scalar>> {
    check_h1(sys).into_result("H1")?;
    let mut out = Vec::new();
    for (i, vectors) in fixed_subspaces(sys).iter().enumerate() {
        if vectors.is_empty() {
            if alpha.component(i).iter().any(|s| !s.is_zero()) {
                return Err(Error::input("alpha", format!("component {i} is not invariant")));
            }
            continue;
        }
        let space = Subspace::span(sys.kind(), sys.dim(sys.orbits()[i].rep), vectors);
        let coords = space
            .coordinates(alpha.component(i))
            .ok_or_else(|| Error::input("alpha", format!("component {i} is not invariant")))?;
        out.extend(coords);
    }
    Ok(out)
}

/// Which product of A^L a structure-constant table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Full,
    Orbit,
}

/// `table[a][b][c]`: coefficient of basis element c in e_a·e_b, over the
/// basis of [`invariant_basis`](super::invariant_basis).
pub fn structure_constants(sys: &ComponentSystem, which: ProductKind) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let basis = invariant_basis(sys)?;
    let mut table = Vec::with_capacity(basis.len());
    for a in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in &basis {
            let p = match which {
                ProductKind::Full => {
                    let g = product_full(sys, &a.to_graded(sys), &b.to_graded(sys))?;
                    InvariantElement::from_graded(sys, &g)?
                }
                ProductKind::Orbit => product_orbit(sys, a, b)?,
            };
            row.push(invariant_coordinates(sys, &p)?);
        }
        table.push(row);
    }
    Ok(table)
}
