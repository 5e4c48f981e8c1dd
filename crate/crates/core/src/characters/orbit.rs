//! Affine weights and the shifted action of the affine Weyl group of g^♮.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, AlgebraId, CatalogEntry, Weight};
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::weights::p_plus_k_failure;

/// levelΛ_0 + finite + delta·δ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    #[serde(with = "crate::rational::serde_q")]
    pub level: Q,
    pub finite: Weight,
    #[serde(with = "crate::rational::serde_q")]
    pub delta: Q,
}

impl AffineWeight {
    pub fn new(level: Q, finite: Weight, delta: Q) -> Self {
        AffineWeight { level, finite, delta }
    }

    /// The pure finite weight at level 0.
    pub fn finite_only(w: Weight) -> Self {
        AffineWeight::new(Q::zero(), w, Q::zero())
    }

    /// η_i = δ − θ_i.
    pub fn eta(theta_i: &Weight) -> Self {
        AffineWeight::new(Q::zero(), -theta_i, Q::one())
    }

    /// ρ̂ = h^∨Λ_0 + ρ.
    pub fn rho_hat(e: &CatalogEntry) -> Self {
        AffineWeight::new(e.h_vee, e.rho.clone(), Q::zero())
    }

    /// ν̂_h = kΛ_0 + ν + hθ.
    pub fn nu_hat(e: &CatalogEntry, k: Q, nu: &Weight, h: Q) -> Self {
        AffineWeight::new(k, nu + &e.theta.scale(h), Q::zero())
    }

    pub fn add(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight::new(self.level + o.level, &self.finite + &o.finite, self.delta + o.delta)
    }

    pub fn sub(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight::new(self.level - o.level, &self.finite - &o.finite, self.delta - o.delta)
    }

    pub fn scale(&self, c: Q) -> AffineWeight {
        AffineWeight::new(self.level * c, self.finite.scale(c), self.delta * c)
    }

    /// The invariant form: (Λ_0|δ) = 1, (Λ_0|Λ_0) = (δ|δ) = 0.
    pub fn form(&self, e: &CatalogEntry, o: &AffineWeight) -> Q {
        e.form(&self.finite, &o.finite) + self.level * o.delta + self.delta * o.level
    }

    /// Evaluation at x + d, with x ↔ θ/2.
    pub fn at_x_plus_d(&self, e: &CatalogEntry) -> Q {
        e.form(&self.finite, &e.theta) / qi(2) + self.delta
    }

    /// s_β(λ) = λ − 2(λ|β)/(β|β)·β for a non-isotropic real root β.
    pub fn reflect(&self, e: &CatalogEntry, beta: &AffineWeight) -> AffineWeight {
        let c = qi(2) * self.form(e, beta) / beta.form(e, beta);
        self.sub(&beta.scale(c))
    }
}

/// One element w·ν̂_h of the shifted orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitElement {
    /// (w·ν̂_h) restricted to h^♮.
    pub weight: Weight,
    pub det: i32,
    #[serde(with = "crate::rational::serde_q")]
    pub q_shift: Q,
}

/// An orbit element together with the images w(β) of the isotropic simple
/// roots, which the massless formula needs.
#[derive(Debug, Clone)]
pub(crate) struct FullElement {
    pub element: OrbitElement,
    pub iso_images: Vec<AffineWeight>,
}

pub const DEFAULT_MARGIN: i128 = 2;
pub const DEFAULT_CAP: usize = 1_000_000;

/// Simple roots of the affinization of g^♮: the finite natural simple roots
/// and η_i for every simple component.
pub fn affine_generators(e: &CatalogEntry) -> Vec<AffineWeight> {
    let mut g: Vec<AffineWeight> = e
        .natural_simple_roots
        .iter()
        .cloned()
        .map(AffineWeight::finite_only)
        .collect();
    for c in e.simple_components() {
        g.push(AffineWeight::eta(c.theta.as_ref().expect("simple component")));
    }
    g
}

/// A regular weight in the fundamental chamber of the generators, used to
/// tell group elements apart.
fn regular_reference(e: &CatalogEntry) -> Result<AffineWeight> {
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for c in e.simple_components() {
        let t = c.theta.as_ref().expect("simple component");
        let rt = e.form(&e.rho_natural, t);
        if e.form(t, t).is_negative() {
            lo = Some(lo.map_or(rt, |x: Q| x.min(rt)));
        } else {
            hi = Some(hi.map_or(rt, |x: Q| x.max(rt)));
        }
    }
    let level = match (lo, hi) {
        (Some(l), None) => l - Q::one(),
        (None, Some(h)) => h + Q::one(),
        (None, None) => Q::one(),
        (Some(l), Some(h)) if h + Q::one() < l => (l + h) / qi(2),
        _ => {
            return Err(Error::PreconditionViolated(
                "g^natural components have incompatible form signs".into(),
            ))
        }
    };
    let r = AffineWeight::new(level, e.rho_natural.clone(), Q::zero());
    for g in affine_generators(e) {
        debug_assert!((qi(2) * r.form(e, &g) / g.form(e, &g)).is_positive());
    }
    Ok(r)
}

pub(crate) fn orbit_full(
    e: &CatalogEntry,
    k: Q,
    nu: &Weight,
    h: Q,
    budget: Q,
    cap: usize,
) -> Result<Vec<FullElement>> {
    if let Some(why) = p_plus_k_failure(e.id, k, nu)? {
        return Err(Error::NonDominant(why));
    }
    let lambda = AffineWeight::nu_hat(e, k, nu, h).add(&AffineWeight::rho_hat(e));
    let reference = regular_reference(e)?;
    let gens = affine_generators(e);
    let iso: Vec<AffineWeight> = e
        .simple_roots
        .iter()
        .filter(|s| s.isotropic)
        .map(|s| AffineWeight::finite_only(s.root.clone()))
        .collect();
    let base_xd = lambda.at_x_plus_d(e);
    let prune = budget + qi(DEFAULT_MARGIN);

    struct Node {
        lam: AffineWeight,
        reference: AffineWeight,
        iso: Vec<AffineWeight>,
        det: i32,
    }
    let mut seen: HashSet<AffineWeight> = HashSet::new();
    seen.insert(reference.clone());
    let mut queue = VecDeque::new();
    queue.push_back(Node { lam: lambda.clone(), reference, iso, det: 1 });
    let mut out = Vec::new();
    while let Some(node) = queue.pop_front() {
        let shift = base_xd - node.lam.at_x_plus_d(e);
        if shift <= budget {
            let fin = &e.restrict(&node.lam.finite) - &e.rho_natural;
            out.push(FullElement {
                element: OrbitElement { weight: fin, det: node.det, q_shift: shift },
                iso_images: node.iso.clone(),
            });
        }
        for g in &gens {
            let r = node.reference.reflect(e, g);
            if seen.contains(&r) {
                continue;
            }
            let lam = node.lam.reflect(e, g);
            let s = base_xd - lam.at_x_plus_d(e);
            seen.insert(r.clone());
            if s > prune {
                continue;
            }
            if seen.len() > cap {
                return Err(Error::TruncationIncomplete(cap));
            }
            let iso = node.iso.iter().map(|b| b.reflect(e, g)).collect();
            queue.push_back(Node { lam, reference: r, iso, det: -node.det });
        }
    }
    out.sort_by(|a, b| a.element.q_shift.cmp(&b.element.q_shift));
    Ok(out)
}

/// Elements w·ν̂_h of the shifted orbit with q_shift ≤ q_max, in order of
/// q_shift (identity first).
pub fn weyl_orbit(id: AlgebraId, k: Q, nu: &Weight, h: Q, q_max: Q) -> Result<Vec<OrbitElement>> {
    let e = lookup(id)?;
    Ok(orbit_full(&e, k, nu, h, q_max, DEFAULT_CAP)?
        .into_iter()
        .map(|f| f.element)
        .collect())
}
