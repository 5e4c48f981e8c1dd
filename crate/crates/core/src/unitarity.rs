//! The unitarity decision for L^W(ν,ℓ_0) and the singular-weight
//! functions h_{n,εm}, h_{m,γ} used to witness the sign lemma.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, AlgebraId, CatalogEntry, Family, Weight};
use crate::error::{Error, Result};
use crate::levels::{level_data, unitarity_range_contains, CollapseTarget, LevelData};
use crate::rational::{q, qi, Q};
use crate::weights::{a_bound, a_explicit_label, casimir, is_extremal, p_plus_k_failure};

/// Result of the integrability gate applied at a collapsing level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CollapsedVerdict {
    /// ν is not an integrable highest weight of the collapsed algebra.
    NotIntegrable,
    /// ν is integrable for the collapsed algebra. `proved_unitary` marks
    /// the cases where unitarity of the module itself is established.
    Integrable { l0_equals_a: bool, proved_unitary: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Outcome {
    ExcludedFamily,
    NotInUnitaryRange,
    Collapsing { target: CollapseTarget, inner: CollapsedVerdict },
    NotInPplusK,
    ExtremalOffBoundary,
    ExtremalBoundary { proved: bool },
    BelowBound,
    UnitaryNonExtremal,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::ExcludedFamily => "ExcludedFamily",
            Outcome::NotInUnitaryRange => "NotInUnitaryRange",
            Outcome::Collapsing { .. } => "Collapsing",
            Outcome::NotInPplusK => "NotInPplusK",
            Outcome::ExtremalOffBoundary => "ExtremalOffBoundary",
            Outcome::ExtremalBoundary { .. } => "ExtremalBoundary",
            Outcome::BelowBound => "BelowBound",
            Outcome::UnitaryNonExtremal => "UnitaryNonExtremal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Quantities {
    /// M_i(k) keyed by component index.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub m: BTreeMap<String, String>,
    /// χ_i keyed by component index.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chi: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::rational::serde_q::opt")]
    pub a: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extremal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::rational::serde_q::opt")]
    pub l0_minus_a: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::rational::serde_q::opt")]
    pub l0: Option<Q>,
    /// The closed-form inequality of the family, when one exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitarityVerdict {
    pub outcome: Outcome,
    pub reasons: Vec<String>,
    pub quantities: Quantities,
}

impl UnitarityVerdict {
    /// Human-readable summary line.
    pub fn summary(&self) -> String {
        match &self.outcome {
            Outcome::ExtremalBoundary { proved: true } => "extremal, unitary (proved)".into(),
            Outcome::ExtremalBoundary { proved: false } => {
                "extremal, conjecturally unitary (Conjecture 2)".into()
            }
            Outcome::ExtremalOffBoundary => "extremal, not unitary (l0 != A)".into(),
            Outcome::UnitaryNonExtremal => "unitary".into(),
            Outcome::BelowBound => "not unitary (l0 < A)".into(),
            Outcome::NotInPplusK => "not unitary (nu not in P+_k)".into(),
            Outcome::NotInUnitaryRange => "not unitary (k outside unitarity range)".into(),
            Outcome::ExcludedFamily => "no unitary modules for this family at this level".into(),
            Outcome::Collapsing { target, inner } => match inner {
                CollapsedVerdict::NotIntegrable => {
                    format!("collapsing to {target}; nu not integrable")
                }
                CollapsedVerdict::Integrable { proved_unitary: true, .. } => {
                    format!("collapsing to {target}; integrable, unitary (proved)")
                }
                CollapsedVerdict::Integrable { .. } => {
                    format!("collapsing to {target}; integrable highest weight")
                }
            },
        }
    }
}

fn fill_levels(q: &mut Quantities, ld: &LevelData) {
    for l in &ld.levels {
        q.m.insert(l.index.to_string(), l.m.to_string());
        q.chi.insert(l.index.to_string(), l.chi.to_string());
    }
}

/// ν is integrable for the collapsed algebra: it vanishes on every
/// component other than the target and satisfies ν(θ_j^∨) ≤ M_j on it.
fn integrable_for(e: &CatalogEntry, target: &CollapseTarget, nu: &Weight) -> bool {
    let keep = match target {
        CollapseTarget::Trivial => return nu.is_zero(),
        CollapseTarget::Affine { component, .. } => *component,
        CollapseTarget::FreeBoson { .. } => 0,
    };
    for c in &e.components {
        if c.index == keep {
            continue;
        }
        let vanishes = match &c.center {
            Some(z) => e.form(nu, z).is_zero(),
            None => c.simple_roots.iter().all(|a| e.form(nu, a).is_zero()),
        };
        if !vanishes {
            return false;
        }
    }
    match target {
        CollapseTarget::Affine { component, level, .. } => {
            let c = e.component(*component).expect("component");
            let t = c.theta.as_ref().expect("simple component");
            let labels_ok = c.simple_roots.iter().all(|a| {
                let x = e.coroot_pairing(nu, a).expect("root");
                x.is_integer() && !x.is_negative()
            });
            labels_ok && e.coroot_pairing(nu, t).expect("θ_j") <= *level
        }
        _ => true,
    }
}

/// The collapsing cases whose extremal module is shown to be unitary: the
/// N=3 base case and the two D(2,1;a) single-weight cases.
fn collapsed_proved(e: &CatalogEntry, ld: &LevelData, nu: &Weight, on_boundary: bool) -> bool {
    if !on_boundary {
        return false;
    }
    let half_theta = |i: usize, m: Q| {
        let t = e.component(i).and_then(|c| c.theta.clone()).expect("component");
        t.scale(m / qi(2))
    };
    match e.id.family {
        Family::Spo2m if e.id.m == 3 => ld.m1() == Q::one(),
        Family::D21a => {
            let (num, den) = (e.id.a_num as i128, e.id.a_den as i128);
            let n1 = ld.k == -Q::new(num * den, num + den);
            let m1 = ld.m(1).expect("M1");
            let m2 = ld.m(2).expect("M2");
            (n1 && den == 1 && *nu == half_theta(1, m1))
                || (n1 && num == 1 && *nu == half_theta(2, m2))
        }
        _ => false,
    }
}

/// Decide unitarity of L^W(ν, ℓ_0) at level k.
///
/// Rules are applied in order: excluded families, the unitarity range of
/// k, collapsing levels, membership in P⁺_k, extremal weights (where only
/// ℓ_0 = A can be unitary) and finally the bound ℓ_0 ≥ A(k,ν).
pub fn decide(id: AlgebraId, k: Q, nu: &Weight, l0: Q) -> Result<UnitarityVerdict> {
    let e = lookup(id)?;
    let ld = level_data(id, k)?;
    let mut qs = Quantities { l0: Some(l0), ..Default::default() };
    fill_levels(&mut qs, &ld);
    let mut reasons = Vec::new();
    let done = |outcome, reasons, qs| Ok(UnitarityVerdict { outcome, reasons, quantities: qs });

    let excluded = match id.family {
        Family::Osp4m => true,
        Family::Sl2m => k != -Q::one(),
        _ => false,
    };
    if excluded {
        reasons.push(format!("{} has no unitary highest weight modules at k = {k}", e.id));
        return done(Outcome::ExcludedFamily, reasons, qs);
    }
    if !unitarity_range_contains(id, k) {
        reasons.push(format!("k = {k} is not in the unitarity range of {}", e.id));
        return done(Outcome::NotInUnitaryRange, reasons, qs);
    }
    if e.in_rho_table() {
        let a = a_bound(id, k, nu)?;
        qs.a = Some(a);
        qs.l0_minus_a = Some(l0 - a);
        qs.bound = Some(a_explicit_label(id).to_string());
    }
    if let Some(target) = ld.collapse_target.clone() {
        reasons.push(format!("k = {k} is collapsing: W_k^min = {target}"));
        let inner = if integrable_for(&e, &target, nu) {
            let on_boundary = qs.a == Some(l0);
            let proved = collapsed_proved(&e, &ld, nu, on_boundary);
            reasons.push("nu is an integrable highest weight of the collapsed algebra".into());
            reasons.push(format!("l0 = {l0} is reported, not checked"));
            CollapsedVerdict::Integrable { l0_equals_a: on_boundary, proved_unitary: proved }
        } else {
            reasons.push("nu is not integrable for the collapsed algebra".into());
            CollapsedVerdict::NotIntegrable
        };
        return done(Outcome::Collapsing { target, inner }, reasons, qs);
    }
    if let Some(why) = p_plus_k_failure(id, k, nu)? {
        reasons.push(why);
        return done(Outcome::NotInPplusK, reasons, qs);
    }
    let a = qs.a.expect("A is defined for every family in the unitarity range");
    let extremal = is_extremal(id, k, nu)?;
    qs.extremal = Some(extremal);
    if extremal {
        reasons.push("nu is extremal: nu + xi is not in P+_k".into());
        if l0 == a {
            let proved = matches!(id.family, Family::Psl22)
                || (id.family == Family::Spo2m && id.m == 3);
            reasons.push(if proved {
                "l0 = A(k,nu); unitarity of this extremal module is proved".into()
            } else {
                "l0 = A(k,nu); conjecturally unitary (Conjecture 2)".into()
            });
            return done(Outcome::ExtremalBoundary { proved }, reasons, qs);
        }
        reasons.push(format!("an extremal module can only be unitary at l0 = A = {a}"));
        return done(Outcome::ExtremalOffBoundary, reasons, qs);
    }
    if l0 >= a {
        reasons.push(format!("nu is not extremal and l0 >= A = {a}"));
        done(Outcome::UnitaryNonExtremal, reasons, qs)
    } else {
        reasons.push(format!("l0 < A = {a}"));
        done(Outcome::BelowBound, reasons, qs)
    }
}

fn kh(e: &CatalogEntry, k: Q) -> Result<Q> {
    let s = k + e.h_vee;
    if s.is_zero() {
        return Err(Error::CriticalLevel(k));
    }
    Ok(s)
}

fn in_eps_inverse_n(x: Q, eps: u8) -> bool {
    let y = x * qi(eps as i128);
    y.is_integer() && y.is_positive()
}

/// h_{n,εm}(k,ν) with m, n ∈ ε^{-1}N and m − n ∈ Z.
pub fn h_even(id: AlgebraId, k: Q, nu: &Weight, n: Q, m: Q) -> Result<Q> {
    let e = lookup(id)?;
    let s = kh(&e, k)?;
    let eps = e.epsilon;
    if !in_eps_inverse_n(n, eps) || !in_eps_inverse_n(m, eps) || !(m - n).is_integer() {
        return Err(Error::IndexOutOfSet(format!(
            "need m, n in (1/{eps})N with m - n integral, got n = {n}, m = {m}"
        )));
    }
    let x = qi(eps as i128) * m * s - n;
    let k1 = k + Q::one();
    Ok((x * x - k1 * k1 + qi(2) * casimir(&e, nu)) / (qi(4) * s))
}

/// h_{m,γ}(k,ν) with m ∈ ½ + Z₊ and γ ∈ Δ′.
pub fn h_odd(id: AlgebraId, k: Q, nu: &Weight, m: Q, gamma: &Weight) -> Result<Q> {
    let e = lookup(id)?;
    let s = kh(&e, k)?;
    let shifted = m - q(1, 2);
    if !shifted.is_integer() || shifted.is_negative() {
        return Err(Error::IndexOutOfSet(format!("need m in 1/2 + Z_+, got {m}")));
    }
    if !e.delta_prime.iter().any(|(g, _)| g == gamma) {
        return Err(Error::IndexOutOfSet(format!("{gamma} is not a weight of g_(-1/2)")));
    }
    let nr = nu + &e.rho_natural;
    let x = qi(2) * e.form(&nr, gamma) + qi(2) * m * s;
    let k1 = k + Q::one();
    Ok((x * x - k1 * k1 + qi(2) * casimir(&e, nu)) / (qi(4) * s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sign2Violation {
    pub function: String,
    pub indices: Vec<String>,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sign2Report {
    #[serde(with = "crate::rational::serde_q")]
    pub a: Q,
    pub hypothesis_met: bool,
    pub label: String,
    pub checked: usize,
    pub violations: Vec<Sign2Violation>,
}

/// Check h_{n,εm} ≤ A and h_{m,γ} ≤ A over the index window: n, m up to
/// `n_max`, `m_max` in their index sets, and every γ ∈ Δ′.
pub fn sign2_scan(id: AlgebraId, k: Q, nu: &Weight, n_max: u32, m_max: u32) -> Result<Sign2Report> {
    let e = lookup(id)?;
    let a = a_bound(id, k, nu)?;
    let in_range = unitarity_range_contains(id, k) && p_plus_k_failure(id, k, nu)?.is_none();
    let hypothesis_met = in_range && !is_extremal(id, k, nu)?;
    let label = if hypothesis_met {
        "lemma hypotheses met".to_string()
    } else {
        "lemma hypothesis not met".to_string()
    };
    let eps = e.epsilon as i128;
    let mut violations = Vec::new();
    let mut checked = 0;
    for ni in 1..=(n_max as i128 * eps) {
        for mi in 1..=(m_max as i128 * eps) {
            let (n, m) = (Q::new(ni, eps), Q::new(mi, eps));
            if !(m - n).is_integer() {
                continue;
            }
            let h = h_even(id, k, nu, n, m)?;
            checked += 1;
            if h > a {
                violations.push(Sign2Violation {
                    function: "h_even".into(),
                    indices: vec![n.to_string(), m.to_string()],
                    value: h,
                });
            }
        }
    }
    for mi in 0..(m_max as i128) {
        let m = q(2 * mi + 1, 2);
        for (g, _) in &e.delta_prime {
            let h = h_odd(id, k, nu, m, g)?;
            checked += 1;
            if h > a {
                violations.push(Sign2Violation {
                    function: "h_odd".into(),
                    indices: vec![m.to_string(), g.to_string()],
                    value: h,
                });
            }
        }
    }
    Ok(Sign2Report { a, hypothesis_met, label, checked, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::nu_from_half_thetas;

    fn nu(id: AlgebraId, r: i128) -> Weight {
        nu_from_half_thetas(&lookup(id).unwrap(), &[qi(r)]).unwrap()
    }

    #[test]
    fn psl22_fixtures() {
        let id = AlgebraId::psl22();
        let v = decide(id, -qi(3), &nu(id, 1), q(1, 2)).unwrap();
        assert_eq!(v.outcome, Outcome::UnitaryNonExtremal);
        let v = decide(id, -qi(2), &nu(id, 1), q(1, 2)).unwrap();
        assert_eq!(v.outcome, Outcome::ExtremalBoundary { proved: true });
        let v = decide(id, -qi(3), &nu(id, 1), q(1, 3)).unwrap();
        assert_eq!(v.outcome, Outcome::BelowBound);
    }

    #[test]
    fn excluded_families() {
        let sl = AlgebraId::sl2m(3).unwrap();
        let z = Weight::zero(5);
        assert_eq!(decide(sl, -qi(2), &z, qi(0)).unwrap().outcome, Outcome::ExcludedFamily);
        let v = decide(sl, -qi(1), &z, qi(0)).unwrap();
        assert!(matches!(v.outcome, Outcome::Collapsing { .. }));
        let osp = AlgebraId::osp4m(4).unwrap();
        let z = Weight::zero(4);
        assert_eq!(decide(osp, -qi(3), &z, qi(5)).unwrap().outcome, Outcome::ExcludedFamily);
    }

    #[test]
    fn h_even_sample() {
        let id = AlgebraId::psl22();
        assert_eq!(h_even(id, -qi(2), &Weight::zero(4), qi(1), qi(1)), Ok(-qi(1)));
        assert!(matches!(
            h_even(id, -qi(2), &Weight::zero(4), q(1, 2), q(1, 2)),
            Err(Error::IndexOutOfSet(_))
        ));
    }

    #[test]
    fn h_odd_sample() {
        let id = AlgebraId::psl22();
        let e = lookup(id).unwrap();
        let g = -&e.xi;
        let rg = e.form(&e.rho_natural, &g);
        let x = qi(2) * rg - qi(2);
        let expect = (x * x - qi(1)) / qi(-8);
        assert_eq!(h_odd(id, -qi(2), &Weight::zero(4), q(1, 2), &g), Ok(expect));
        assert!(h_odd(id, -qi(2), &Weight::zero(4), qi(1), &g).is_err());
    }

    #[test]
    fn sign2_clean() {
        let id = AlgebraId::psl22();
        let r = sign2_scan(id, -qi(3), &nu(id, 1), 6, 6).unwrap();
        assert!(r.hypothesis_met && r.violations.is_empty());
        let r = sign2_scan(AlgebraId::g3(), q(-3, 2), &Weight::zero(3), 4, 4).unwrap();
        assert!(r.hypothesis_met && r.violations.is_empty(), "{:?}", r.violations);
        let r = sign2_scan(id, -qi(2), &nu(id, 1), 3, 3).unwrap();
        assert_eq!(r.label, "lemma hypothesis not met");
    }
}
