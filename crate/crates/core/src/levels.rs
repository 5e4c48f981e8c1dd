//! Level arithmetic: the levels M_i(k) of the affine subalgebras, the
//! cocycle levels, the central charge, collapsing levels and the
//! unitarity range of k.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, AlgebraId, CatalogEntry, Family};
use crate::error::{Error, Result};
use crate::rational::{qi, rational_sqrt, Q};

/// What the simple minimal W-algebra reduces to at a collapsing level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CollapseTarget {
    /// The one-dimensional vertex algebra.
    Trivial,
    /// The simple affine vertex algebra of one component at a level.
    Affine {
        component: usize,
        name: String,
        #[serde(with = "crate::rational::serde_q")]
        level: Q,
    },
    /// A Heisenberg vertex algebra on the center of g^♮.
    FreeBoson {
        #[serde(with = "crate::rational::serde_q")]
        level: Q,
    },
}

impl fmt::Display for CollapseTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollapseTarget::Trivial => write!(f, "C"),
            CollapseTarget::Affine { name, level, .. } => write!(f, "V_{level}({name})"),
            CollapseTarget::FreeBoson { level } => write!(f, "free boson (M_0 = {level})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLevel {
    pub index: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub m: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub chi: Q,
    /// M_i(k) + χ_i, the level of the cocycle on this component.
    #[serde(with = "crate::rational::serde_q")]
    pub alpha_level: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelData {
    pub id: AlgebraId,
    #[serde(with = "crate::rational::serde_q")]
    pub k: Q,
    /// One entry per component, the center (index 0) first when present.
    pub levels: Vec<ComponentLevel>,
    #[serde(with = "crate::rational::serde_q")]
    pub c: Q,
    /// The monic quadratic whose zeros are the collapsing levels, at k.
    #[serde(with = "crate::rational::serde_q")]
    pub p_k: Q,
    pub collapsing: bool,
    pub collapse_target: Option<CollapseTarget>,
}

impl LevelData {
    pub fn m(&self, index: usize) -> Option<Q> {
        self.levels.iter().find(|l| l.index == index).map(|l| l.m)
    }

    /// M_1(k), present for every family.
    pub fn m1(&self) -> Q {
        self.m(1).expect("every family has a component 1")
    }
}

fn check_critical(e: &CatalogEntry, k: Q) -> Result<()> {
    if k + e.h_vee == Q::zero() {
        return Err(Error::CriticalLevel(k));
    }
    Ok(())
}

/// M_i(k) for one component; M_0(k) = k + h^∨/2 for the center.
pub fn component_level(e: &CatalogEntry, index: usize, k: Q) -> Option<Q> {
    let c = e.component(index)?;
    if c.is_center() {
        return Some(k + e.h_vee / qi(2));
    }
    Some(qi(2) / c.u * (k + (e.h_vee - c.hbar_vee) / qi(2)))
}

/// The level k at which M_i(k) takes the value `m`.
pub fn k_for_level(e: &CatalogEntry, index: usize, m: Q) -> Option<Q> {
    let c = e.component(index)?;
    if c.is_center() {
        return Some(m - e.h_vee / qi(2));
    }
    Some(m * c.u / qi(2) - (e.h_vee - c.hbar_vee) / qi(2))
}

fn p_of_k(e: &CatalogEntry, k: Q) -> Q {
    let factor = |index: usize| {
        let c = e.component(index).expect("component");
        let m = component_level(e, index, k).expect("component");
        if c.is_center() {
            m
        } else {
            m * c.u / qi(2)
        }
    };
    if e.components.len() == 2 {
        let a = e.components[0].index;
        let b = e.components[1].index;
        factor(a) * factor(b)
    } else {
        let c1 = e.component(1).expect("component 1");
        factor(1) * (k + c1.hbar_vee / qi(2) + Q::one())
    }
}

fn target_for(e: &CatalogEntry, keep: usize, level: Q) -> CollapseTarget {
    let c = e.component(keep).expect("component");
    if c.is_center() {
        CollapseTarget::FreeBoson { level }
    } else {
        CollapseTarget::Affine {
            component: keep,
            name: c.name.clone(),
            level,
        }
    }
}

fn collapse_target(e: &CatalogEntry, k: Q, levels: &[ComponentLevel]) -> Option<CollapseTarget> {
    if levels.iter().all(|l| l.m.is_zero()) {
        return Some(CollapseTarget::Trivial);
    }
    if levels.len() == 2 {
        let zero = levels.iter().find(|l| l.m.is_zero())?;
        let other = levels.iter().find(|l| l.index != zero.index)?;
        return Some(target_for(e, other.index, other.m));
    }
    let c1 = e.component(1).expect("component 1");
    let m1 = levels[0].m;
    if m1.is_zero() {
        return Some(CollapseTarget::Trivial);
    }
    if k == -c1.hbar_vee / qi(2) - Q::one() {
        return Some(target_for(e, 1, m1));
    }
    None
}

/// c(k) = k·d/(k+h^∨) − 6k + h^∨ − 4.
pub fn central_charge(id: AlgebraId, k: Q) -> Result<Q> {
    let e = lookup(id)?;
    check_critical(&e, k)?;
    Ok(k * e.sdim / (k + e.h_vee) - qi(6) * k + e.h_vee - qi(4))
}

/// `a + b·√D` with rational a, b and a fixed rational radicand D.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surd {
    pub a: Q,
    pub b: Q,
    pub d: Q,
}

impl Surd {
    pub fn rational(a: Q, d: Q) -> Self {
        Surd { a, b: Q::zero(), d }
    }
    pub fn root(d: Q) -> Self {
        Surd {
            a: Q::zero(),
            b: Q::one(),
            d,
        }
    }
    pub fn add(self, o: Surd) -> Surd {
        Surd {
            a: self.a + o.a,
            b: self.b + o.b,
            d: self.d,
        }
    }
    pub fn sub(self, o: Surd) -> Surd {
        Surd {
            a: self.a - o.a,
            b: self.b - o.b,
            d: self.d,
        }
    }
    pub fn mul(self, o: Surd) -> Surd {
        Surd {
            a: self.a * o.a + self.b * o.b * self.d,
            b: self.a * o.b + self.b * o.a,
            d: self.d,
        }
    }
    pub fn scale(self, c: Q) -> Surd {
        Surd {
            a: self.a * c,
            b: self.b * c,
            d: self.d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralChargeReport {
    #[serde(with = "crate::rational::serde_q")]
    pub direct: Q,
    /// The square-root form of c(k), evaluated exactly in Q(√(d·h^∨/6)).
    #[serde(with = "crate::rational::serde_q")]
    pub via_square_root: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub radicand: Q,
    /// Whether √(d·h^∨/6) itself is rational.
    pub root_is_rational: bool,
    pub agree: bool,
}

/// Both evaluations of the central charge.
///
/// The second route works in the quadratic extension generated by
/// √(d·h^∨/6), so it needs no floating point even when the root is
/// irrational; the irrational parts must cancel.
pub fn central_charge_report(id: AlgebraId, k: Q) -> Result<CentralChargeReport> {
    let e = lookup(id)?;
    check_critical(&e, k)?;
    let direct = central_charge(id, k)?;
    let d = e.sdim * e.h_vee / qi(6);
    let s = Surd::root(d);
    let kh = k + e.h_vee;
    let shifted = Surd::rational(kh, d).sub(s);
    let c = Surd::rational(qi(7) * e.h_vee + e.sdim - qi(4), d)
        .sub(s.scale(qi(12)))
        .sub(shifted.mul(shifted).scale(qi(6) / kh));
    if !c.b.is_zero() {
        return Err(Error::PreconditionViolated(format!(
            "irrational part {} survived in the square-root form",
            c.b
        )));
    }
    Ok(CentralChargeReport {
        direct,
        via_square_root: c.a,
        radicand: d,
        root_is_rational: rational_sqrt(&d).is_some() || d.is_zero(),
        agree: c.a == direct,
    })
}

pub fn level_data(id: AlgebraId, k: Q) -> Result<LevelData> {
    let e = lookup(id)?;
    check_critical(&e, k)?;
    let levels: Vec<ComponentLevel> = e
        .components
        .iter()
        .map(|c| {
            let m = component_level(&e, c.index, k).expect("component");
            ComponentLevel {
                index: c.index,
                m,
                chi: c.chi,
                alpha_level: m + c.chi,
            }
        })
        .collect();
    let p_k = p_of_k(&e, k);
    let target = collapse_target(&e, k, &levels);
    let collapsing = p_k.is_zero();
    debug_assert_eq!(collapsing, target.is_some());
    Ok(LevelData {
        id,
        k,
        c: central_charge(id, k)?,
        levels,
        p_k,
        collapsing,
        collapse_target: target,
    })
}

fn is_pos_int(x: Q) -> bool {
    x.is_integer() && x.is_positive()
}

/// Membership in the list of levels admitting non-trivial unitary modules.
pub fn unitarity_range_contains(id: AlgebraId, k: Q) -> bool {
    match id.family {
        Family::Sl2m => k == -Q::one(),
        Family::Osp4m => false,
        Family::Psl22 => is_pos_int(-k - Q::one()),
        Family::Spo2m if id.m == 3 => is_pos_int(-qi(4) * k - qi(2)),
        Family::Spo2m => is_pos_int(-qi(2) * k - Q::one()),
        Family::D21a => {
            let (a, b) = (qi(id.a_num as i128), qi(id.a_den as i128));
            k != Q::new(-1, 2) && is_pos_int(-k * (a + b) / (a * b))
        }
        Family::F4 => is_pos_int(-qi(3) * k / qi(2) - Q::one()),
        Family::G3 => is_pos_int(-qi(4) * k / qi(3) - Q::one()),
    }
}

/// The first `count` levels of the unitarity range, closest to zero first.
pub fn enumerate_unitary_k(id: AlgebraId, count: usize) -> Vec<Q> {
    let step = |n: i128| -> Q {
        match id.family {
            Family::Psl22 => -qi(n + 1),
            Family::Spo2m if id.m == 3 => -Q::new(n + 2, 4),
            Family::Spo2m => -Q::new(n + 1, 2),
            Family::D21a => {
                let (a, b) = (id.a_num as i128, id.a_den as i128);
                -Q::new(a * b * n, a + b)
            }
            Family::F4 => -Q::new(2 * (n + 1), 3),
            Family::G3 => -Q::new(3 * (n + 1), 4),
            Family::Sl2m | Family::Osp4m => unreachable!(),
        }
    };
    match id.family {
        Family::Sl2m => vec![-Q::one()].into_iter().take(count).collect(),
        Family::Osp4m => vec![],
        _ => (1..)
            .map(step)
            .filter(|&k| unitarity_range_contains(id, k))
            .take(count)
            .collect(),
    }
}

/// Solve M_1(k) = `m1` for k.
pub fn k_from_m1(id: AlgebraId, m1: Q) -> Result<Q> {
    let e = lookup(id)?;
    Ok(k_for_level(&e, 1, m1).expect("component 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn spo23_at_minus_three_quarters() {
        let d = level_data(AlgebraId::spo2m(3).unwrap(), q(-3, 4)).unwrap();
        assert_eq!(d.m1(), qi(1));
        assert!(d.collapsing);
        assert!(matches!(
            d.collapse_target,
            Some(CollapseTarget::Affine { .. })
        ));
    }

    #[test]
    fn psl22_collapses_to_c_at_minus_one() {
        let d = level_data(AlgebraId::psl22(), -qi(1)).unwrap();
        assert!(d.collapsing);
        assert_eq!(d.collapse_target, Some(CollapseTarget::Trivial));
    }

    #[test]
    fn d21a_one_at_minus_one() {
        // M_1 = −2k−1 = 1 and M_2 = 1: p(k) ≠ 0, so this level does not
        // collapse; the collapsing branch is at k = −1/2 (both zero) and
        // the levels where one M_i vanishes.
        let id = AlgebraId::d21a(1, 1).unwrap();
        let d = level_data(id, -qi(1)).unwrap();
        assert_eq!(d.m(1), Some(qi(1)));
        assert_eq!(d.m(2), Some(qi(1)));
        assert!(!d.collapsing);
        let id = AlgebraId::d21a(2, 1).unwrap();
        let d = level_data(id, q(-2, 3)).unwrap();
        assert_eq!(d.m(2), Some(qi(0)));
        assert_eq!(
            d.collapse_target,
            Some(CollapseTarget::Affine {
                component: 1,
                name: "sl2".into(),
                level: qi(1)
            })
        );
    }

    #[test]
    fn critical_level() {
        assert_eq!(
            level_data(AlgebraId::f4(), qi(2)),
            Err(Error::CriticalLevel(qi(2)))
        );
        assert!(central_charge(AlgebraId::psl22(), qi(0)).is_err());
    }

    #[test]
    fn central_charge_values() {
        assert_eq!(central_charge(AlgebraId::psl22(), -qi(2)), Ok(qi(6)));
        assert_eq!(
            central_charge(AlgebraId::spo2m(3).unwrap(), q(-3, 4)),
            Ok(qi(1))
        );
    }

    #[test]
    fn square_root_route_agrees() {
        for id in crate::catalog::sample_ids() {
            for k in [q(-7, 3), q(-1, 5), q(11, 2)] {
                let e = lookup(id).unwrap();
                if k + e.h_vee == Q::zero() {
                    continue;
                }
                let r = central_charge_report(id, k).unwrap();
                assert!(r.agree, "{id} at {k}");
            }
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(
            enumerate_unitary_k(AlgebraId::f4(), 3),
            vec![q(-4, 3), qi(-2), q(-8, 3)]
        );
        assert!(unitarity_range_contains(
            AlgebraId::spo2m(3).unwrap(),
            q(-3, 4)
        ));
        assert!(!unitarity_range_contains(
            AlgebraId::osp4m(4).unwrap(),
            -qi(1)
        ));
        let d11 = AlgebraId::d21a(1, 1).unwrap();
        assert!(!unitarity_range_contains(d11, q(-1, 2)));
        assert_eq!(enumerate_unitary_k(d11, 2), vec![-qi(1), q(-3, 2)]);
        assert_eq!(
            enumerate_unitary_k(AlgebraId::sl2m(4).unwrap(), 5),
            vec![-qi(1)]
        );
    }

    #[test]
    fn m1_inverse() {
        for id in crate::catalog::sample_ids() {
            let k = k_from_m1(id, qi(3)).unwrap();
            let e = lookup(id).unwrap();
            assert_eq!(component_level(&e, 1, k), Some(qi(3)));
        }
    }
}
