use super::{ComponentSystem, GradedElement, InvariantElement};
use crate::error::Result;
use crate::scalar::linalg::{add_scaled, Matrix};
use crate::scalar::Scalar;
use crate::verdict::Verdict;

/// (H1): c_{g,1} = id and c_{ʸg,x} ∘ c_{g,y} = c_{g,xy}.
pub fn check_h1(sys: &ComponentSystem) -> Verdict {
    sys.cache.h1.get_or_init(|| h1(sys)).clone()
}

/// (H2): c_{gh,x}(m_{g,h}(a, b)) = m_{ˣg,ˣh}(c_{g,x} a, c_{h,x} b) on basis pairs.
pub fn check_h2(sys: &ComponentSystem) -> Verdict {
    sys.cache.h2.get_or_init(|| h2(sys)).clone()
}

/// (H3): the unit is L-fixed and a two-sided identity.
pub fn check_h3(sys: &ComponentSystem) -> Verdict {
    sys.cache.h3.get_or_init(|| h3(sys)).clone()
}

/// (H4): m_{de,f}(m_{d,e}(a, b), c) = m_{d,ef}(a, m_{e,f}(b, c)) on basis triples.
pub fn check_h4(sys: &ComponentSystem) -> Verdict {
    sys.cache.h4.get_or_init(|| h4(sys)).clone()
}

/// (H4′) on every triple drawn from a basis of A^L: for each g,
/// Σ_{T_g} m_{de,f}(m_{d,e}(α_d, β_e), γ_f) = Σ_{T′_g} m_{d,ef}(α_d, m_{e,f}(β_e, γ_f)),
/// where T_g holds representatives of the L_g-orbits on pairs (de, f)
/// refined by L_{de}-orbits on (d, e), and T′_g is the mirrored
/// description: L_g-orbits on (d, ef) refined by L_{ef}-orbits on (e, f).
/// Each side is then independent of the chosen representatives, and the
/// identity is equivalent to associativity of
/// [`product_orbit`](super::product_orbit) on A^L.
///
/// Returns a failure when (H1) fails, since A^L is then undefined.
pub fn check_h4prime(sys: &ComponentSystem) -> Verdict {
    sys.cache.h4prime.get_or_init(|| h4prime(sys)).clone()
}

/// A basis of A^L ≅ ⊕ A(g_i)^{L_i}, computed as the joint kernel of
/// c_{g_i,x} − id over generators x of each stabilizer.
pub fn invariant_basis(sys: &ComponentSystem) -> Result<Vec<InvariantElement>> {
    check_h1(sys).into_result("H1")?;
    let per_orbit = fixed_subspaces(sys);
    let mut out = Vec::new();
    for (i, vectors) in per_orbit.iter().enumerate() {
        for v in vectors {
            let mut comps = InvariantElement::zero(sys).components;
            comps[i] = v.clone();
            out.push(InvariantElement::new_unchecked(comps));
        }
    }
    Ok(out)
}

pub(crate) fn fixed_subspaces(sys: &ComponentSystem) -> &Vec<Vec<Vec<Scalar>>> {
    sys.cache.invariant_basis.get_or_init(|| {
        let kind = sys.kind();
        sys.orbits()
            .iter()
            .map(|o| {
                let g = o.rep;
                let d = sys.dim(g);
                let gens = sys.stabilizer(g).generators(sys.actor());
                if gens.is_empty() {
                    return (0..d)
                        .map(|i| (0..d).map(|j| if i == j { kind.one() } else { kind.zero() }).collect())
                        .collect();
                }
                let mut stacked = Matrix::zeros(kind, d * gens.len(), d);
                for (b, &x) in gens.iter().enumerate() {
                    let delta = sys.conj(g, x).sub(&Matrix::identity(kind, d));
                    for r in 0..d {
                        for c in 0..d {
                            stacked.set(b * d + r, c, delta.get(r, c).clone());
                        }
                    }
                }
                stacked.kernel()
            })
            .collect()
    })
}

fn h1(sys: &ComponentSystem) -> Verdict {
    let (g_grp, l) = (sys.group(), sys.actor());
    let act = sys.action();
    for g in g_grp.elements() {
        if !sys.conj(g, 0).is_identity() {
            return Verdict::Fail(format!("c_{{{g},1}} is not the identity"));
        }
    }
    for g in g_grp.elements() {
        for y in l.elements() {
            let yg = act.act(y, g);
            let cy = sys.conj(g, y);
            for x in l.elements() {
                if sys.conj(yg, x).mul(cy) != *sys.conj(g, l.mul(x, y)) {
                    return Verdict::Fail(format!("c_x c_y != c_xy at g={g}, x={x}, y={y}"));
                }
            }
        }
    }
    Verdict::Pass
}

fn h2(sys: &ComponentSystem) -> Verdict {
    let (g_grp, l) = (sys.group(), sys.actor());
    let act = sys.action();
    for g in g_grp.elements() {
        for h in g_grp.elements() {
            let gh = g_grp.mul(g, h);
            for x in l.elements() {
                let (xg, xh) = (act.act(x, g), act.act(x, h));
                for i in 0..sys.dim(g) {
                    let a = sys.conj(g, x).column(i);
                    for j in 0..sys.dim(h) {
                        let b = sys.conj(h, x).column(j);
                        let lhs = sys.apply_conj(gh, x, sys.mul_basis(g, h, i, j));
                        let rhs = sys.multiply(xg, xh, &a, &b);
                        if lhs != rhs {
                            return Verdict::Fail(format!(
                                "c_x m != m (c_x, c_x) at g={g}, h={h}, x={x}, basis ({i}, {j})"
                            ));
                        }
                    }
                }
            }
        }
    }
    Verdict::Pass
}

fn h3(sys: &ComponentSystem) -> Verdict {
    let kind = sys.kind();
    let unit = sys.unit();
    for x in sys.actor().elements() {
        if sys.apply_conj(0, x, unit) != unit {
            return Verdict::Fail(format!("unit not fixed by x={x}"));
        }
    }
    for g in sys.group().elements() {
        for i in 0..sys.dim(g) {
            let mut e = vec![kind.zero(); sys.dim(g)];
            e[i] = kind.one();
            if sys.multiply(0, g, unit, &e) != e {
                return Verdict::Fail(format!("unit is not a left identity on basis {i} of A({g})"));
            }
            if sys.multiply(g, 0, &e, unit) != e {
                return Verdict::Fail(format!("unit is not a right identity on basis {i} of A({g})"));
            }
        }
    }
    Verdict::Pass
}

fn h4(sys: &ComponentSystem) -> Verdict {
    let g_grp = sys.group();
    for d in g_grp.elements() {
        for e in g_grp.elements() {
            let de = g_grp.mul(d, e);
            for f in g_grp.elements() {
                let ef = g_grp.mul(e, f);
                for i in 0..sys.dim(d) {
                    for j in 0..sys.dim(e) {
                        let left_inner = sys.mul_basis(d, e, i, j);
                        for k in 0..sys.dim(f) {
                            let mut lhs = vec![sys.kind().zero(); sys.dim(g_grp.mul(de, f))];
                            for (p, coeff) in left_inner.iter().enumerate() {
                                add_scaled(&mut lhs, coeff, sys.mul_basis(de, f, p, k));
                            }
                            let mut rhs = vec![sys.kind().zero(); lhs.len()];
                            for (q, coeff) in sys.mul_basis(e, f, j, k).iter().enumerate() {
                                add_scaled(&mut rhs, coeff, sys.mul_basis(d, ef, i, q));
                            }
                            if lhs != rhs {
                                return Verdict::Fail(format!(
                                    "associativity fails at (d, e, f) = ({d}, {e}, {f}), basis ({i}, {j}, {k})"
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

/// The two sides of (H4′) at `g` for graded (already spread) α, β, γ.
pub(crate) fn h4prime_sides(
    sys: &ComponentSystem,
    g: usize,
    alpha: &GradedElement,
    beta: &GradedElement,
    gamma: &GradedElement,
) -> (Vec<Scalar>, Vec<Scalar>) {
    let grp = sys.group();
    let act = sys.action();
    let left_reps = act.triple_reps(g).expect("g is in range");
    let right_reps = act.triple_reps_right(g).expect("g is in range");
    let mut lhs = vec![sys.kind().zero(); sys.dim(g)];
    for &(d, e, f) in &left_reps {
        let de = sys.multiply(d, e, alpha.component(d), beta.component(e));
        let term = sys.multiply(grp.mul(d, e), f, &de, gamma.component(f));
        add_scaled(&mut lhs, &sys.kind().one(), &term);
    }
    let mut rhs = vec![sys.kind().zero(); sys.dim(g)];
    for &(d, e, f) in &right_reps {
        let ef = sys.multiply(e, f, beta.component(e), gamma.component(f));
        let term = sys.multiply(d, grp.mul(e, f), alpha.component(d), &ef);
        add_scaled(&mut rhs, &sys.kind().one(), &term);
    }
    (lhs, rhs)
}

fn h4prime(sys: &ComponentSystem) -> Verdict {
    let basis = match invariant_basis(sys) {
        Ok(b) => b,
        Err(e) => return Verdict::Fail(format!("A^L undefined: {e}")),
    };
    let spread: Vec<GradedElement> = basis.iter().map(|b| b.to_graded(sys)).collect();
    for g in sys.group().elements() {
        for (a, alpha) in spread.iter().enumerate() {
            for (b, beta) in spread.iter().enumerate() {
                for (c, gamma) in spread.iter().enumerate() {
                    let (lhs, rhs) = h4prime_sides(sys, g, alpha, beta, gamma);
                    if lhs != rhs {
                        return Verdict::Fail(format!(
                            "(H4') fails at g={g} on invariant basis triple ({a}, {b}, {c})"
                        ));
                    }
                }
            }
        }
    }
    Verdict::Pass
}
