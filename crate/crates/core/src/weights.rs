//! Dominance, the sets P⁺_k, extremal weights and the bounds A(k,ν),
//! B(k,ν) on the lowest L_0-eigenvalue.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, AlgebraId, CatalogEntry, Family, Weight};
use crate::error::{Error, Result};
use crate::levels::component_level;
use crate::rational::{qi, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeight {
    pub nu: Weight,
    #[serde(with = "crate::rational::serde_q")]
    pub l0: Q,
}

fn check_weight(e: &CatalogEntry, nu: &Weight) -> Result<()> {
    if nu.len() != e.dim() {
        return Err(Error::InvalidWeight(format!(
            "{} coordinates given, {} expects {}",
            nu.len(),
            e.id,
            e.dim()
        )));
    }
    if !e.in_natural_span(nu) {
        return Err(Error::InvalidWeight(format!("{nu} does not lie in (h^natural)*")));
    }
    Ok(())
}

fn kh(e: &CatalogEntry, k: Q) -> Result<Q> {
    let s = k + e.h_vee;
    if s.is_zero() {
        return Err(Error::CriticalLevel(k));
    }
    Ok(s)
}

/// ν = Σ r_i θ_i/2 over the simple components, in component order.
pub fn nu_from_half_thetas(e: &CatalogEntry, rs: &[Q]) -> Result<Weight> {
    let comps: Vec<_> = e.simple_components().collect();
    if rs.len() != comps.len() {
        return Err(Error::InvalidWeight(format!(
            "{} has {} simple components, got {} values",
            e.id,
            comps.len(),
            rs.len()
        )));
    }
    let mut nu = Weight::zero(e.dim());
    for (r, c) in rs.iter().zip(comps) {
        let t = c.theta.as_ref().expect("simple component");
        nu = &nu + &t.scale(*r / qi(2));
    }
    Ok(nu)
}

/// ν(θ_i^∨) for each simple component, in component order.
pub fn theta_pairings(e: &CatalogEntry, nu: &Weight) -> Vec<(usize, Q)> {
    e.simple_components()
        .map(|c| {
            let t = c.theta.as_ref().expect("simple component");
            (c.index, e.coroot_pairing(nu, t).expect("θ_i is not isotropic"))
        })
        .collect()
}

/// Dominant integral for g^♮: every label is a non-negative integer.
pub fn is_dominant_integral(e: &CatalogEntry, nu: &Weight) -> bool {
    e.labels(nu).iter().all(|x| x.is_integer() && !x.is_negative())
}

/// Why ν fails to be in P⁺_k, or `None` when it belongs.
pub fn p_plus_k_failure(id: AlgebraId, k: Q, nu: &Weight) -> Result<Option<String>> {
    let e = lookup(id)?;
    check_weight(&e, nu)?;
    kh(&e, k)?;
    if !crate::levels::unitarity_range_contains(id, k) {
        return Ok(Some(format!("k = {k} is outside the unitarity range")));
    }
    if !is_dominant_integral(&e, nu) {
        return Ok(Some(format!("labels {:?} are not dominant integral", labels_str(&e, nu))));
    }
    for (i, p) in theta_pairings(&e, nu) {
        let m = component_level(&e, i, k).expect("component");
        if p > m {
            return Ok(Some(format!("nu(theta_{i}^vee) = {p} exceeds M_{i} = {m}")));
        }
    }
    Ok(None)
}

fn labels_str(e: &CatalogEntry, nu: &Weight) -> Vec<String> {
    e.labels(nu).iter().map(ToString::to_string).collect()
}

/// ν ∈ P⁺_k: dominant integral with ν(θ_i^∨) ≤ M_i(k) for every i ≥ 1.
pub fn in_p_plus_k(id: AlgebraId, k: Q, nu: &Weight) -> Result<bool> {
    Ok(p_plus_k_failure(id, k, nu)?.is_none())
}

/// ν is extremal: ν + ξ ∉ P⁺_k, equivalently ν(θ_i^∨) > M_i(k) + χ_i for
/// some i. Both tests are evaluated and must agree.
pub fn is_extremal(id: AlgebraId, k: Q, nu: &Weight) -> Result<bool> {
    let e = lookup(id)?;
    if let Some(why) = p_plus_k_failure(id, k, nu)? {
        return Err(Error::PreconditionViolated(format!("nu is not in P+_k: {why}")));
    }
    let shifted = nu + &e.xi;
    let by_shift = p_plus_k_failure(id, k, &shifted)?.is_some();
    let by_levels = e.simple_components().any(|c| {
        let t = c.theta.as_ref().expect("simple component");
        let m = component_level(&e, c.index, k).expect("component");
        e.coroot_pairing(nu, t).expect("θ_i") > m + c.chi
    });
    if by_shift != by_levels {
        return Err(Error::CharacterizationMismatch(format!(
            "nu+xi test says {by_shift}, level test says {by_levels} for {} at k = {k}",
            e.id
        )));
    }
    Ok(by_levels)
}

/// (ν|ν+2ρ^♮).
pub fn casimir(e: &CatalogEntry, nu: &Weight) -> Q {
    let two_rho = e.rho_natural.scale(qi(2));
    e.form(nu, &(nu + &two_rho))
}

/// A(k,ν) = (ν|ν+2ρ^♮)/(2(k+h^∨)) + (ξ|ν)((ξ|ν)−k−1)/(k+h^∨).
pub fn a_bound(id: AlgebraId, k: Q, nu: &Weight) -> Result<Q> {
    let e = lookup(id)?;
    check_weight(&e, nu)?;
    let s = kh(&e, k)?;
    let xn = e.form(&e.xi, nu);
    Ok(casimir(&e, nu) / (qi(2) * s) + xn * (xn - k - Q::one()) / s)
}

/// B(k,ν) = (ν|ν+2ρ^♮)/(2(k+h^∨)) − (k+1)²/(4(k+h^∨)).
pub fn b_bound(id: AlgebraId, k: Q, nu: &Weight) -> Result<Q> {
    let e = lookup(id)?;
    check_weight(&e, nu)?;
    let s = kh(&e, k)?;
    let k1 = k + Q::one();
    Ok(casimir(&e, nu) / (qi(2) * s) - k1 * k1 / (qi(4) * s))
}

/// The per-family closed form of A(k,ν) in the parameters of each family.
///
/// For G(3) the linear coefficients are (3M_1+3, 3M_1+15); other values
/// disagree with the general formula.
pub fn a_explicit(id: AlgebraId, k: Q, nu: &Weight) -> Result<Q> {
    let e = lookup(id)?;
    check_weight(&e, nu)?;
    kh(&e, k)?;
    let m1 = component_level(&e, 1, k).expect("component 1");
    let r_theta = |i: usize| -> Q {
        let t = e.component(i).and_then(|c| c.theta.clone()).expect("component");
        e.coroot_pairing(nu, &t).expect("θ_i")
    };
    let one = Q::one();
    Ok(match id.family {
        Family::Psl22 => r_theta(1) / qi(2),
        Family::Spo2m if id.m == 3 => r_theta(1) / qi(4),
        Family::Spo2m => {
            let m = qi(id.m as i128);
            let nat = -qi(2) * casimir(&e, nu);
            let r = nu.0[1];
            -(nat - r * (qi(2) * k + r + qi(2))) / (qi(2) * (qi(2) * k - m + qi(4)))
        }
        Family::D21a => {
            let m2 = component_level(&e, 2, k).expect("component 2");
            let (r1, r2) = (r_theta(1), r_theta(2));
            let d = r1 - r2;
            (qi(2) * (m1 + one) * r2 + qi(2) * (m2 + one) * r1 + d * d)
                / (qi(4) * (m1 + m2 + qi(2)))
        }
        Family::F4 => {
            let (r1, r2, r3) = (nu.0[1], nu.0[2], nu.0[3]);
            (r1 * (m1 + qi(7))
                + r2 * (m1 + qi(4))
                + r3 * (m1 + one)
                + r1 * r1
                + r2 * r2
                + r3 * r3
                - r1 * r2
                - r1 * r3
                - r2 * r3)
                / (qi(3) * (m1 + qi(4)))
        }
        Family::G3 => {
            let (r1, r2) = (nu.0[1], nu.0[2]);
            let d = r1 - r2;
            (r1 * (qi(3) * m1 + qi(3)) + r2 * (qi(3) * m1 + qi(15)) + qi(3) * d * d)
                / (qi(12) * (m1 + qi(3)))
        }
        Family::Sl2m | Family::Osp4m => {
            return Err(Error::UnsupportedFamily(format!("no closed form of A for {}", e.id)))
        }
    })
}

/// A short description of the closed form `a_explicit` evaluates.
pub fn a_explicit_label(id: AlgebraId) -> &'static str {
    match id.family {
        Family::Psl22 => "l0 >= r/2, nu = r theta_1/2",
        Family::Spo2m if id.m == 3 => "l0 >= r/4, nu = r theta_1/2",
        Family::Spo2m => "l0 >= ((nu|nu+2rho)_nat - r(2k+r+2))/(-2(2k-m+4)), r = (omega_1|nu)_nat",
        Family::D21a => "l0 >= (2(M1+1)r2 + 2(M2+1)r1 + (r1-r2)^2)/(4(M1+M2+2))",
        Family::F4 => "l0 >= F(4) quadratic in the epsilon coordinates of nu",
        Family::G3 => "l0 >= (r1(3M1+3) + r2(3M1+15) + 3(r1-r2)^2)/(12(M1+3))",
        Family::Sl2m | Family::Osp4m => "none",
    }
}

/// Every ν ∈ P⁺_k, in lexicographic label order.
pub fn enumerate_p_plus_k(id: AlgebraId, k: Q) -> Result<Vec<Weight>> {
    let e = lookup(id)?;
    kh(&e, k)?;
    if !crate::levels::unitarity_range_contains(id, k) {
        return Ok(vec![]);
    }
    let rank = e.natural_simple_roots.len();
    let bound = e
        .simple_components()
        .map(|c| component_level(&e, c.index, k).expect("component"))
        .max()
        .unwrap_or_else(Q::zero);
    if bound.is_negative() {
        return Ok(vec![]);
    }
    let b = bound.to_integer();
    let mut out = Vec::new();
    let mut labels = vec![0i128; rank];
    loop {
        let lq: Vec<Q> = labels.iter().map(|&x| qi(x)).collect();
        let nu = e.from_labels(&lq)?;
        if p_plus_k_failure(id, k, &nu)?.is_none() {
            out.push(nu);
        }
        let mut i = 0;
        while i < rank {
            labels[i] += 1;
            if labels[i] <= b {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
        if i == rank {
            break;
        }
    }
    Ok(out)
}
