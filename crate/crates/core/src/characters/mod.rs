//! Truncated characters of unitary modules: F^NS, Verma characters, the
//! massive and massless orbit sums, and the bilateral N=4 formula.

mod orbit;
mod series;

pub use orbit::{affine_generators, weyl_orbit, AffineWeight, OrbitElement, DEFAULT_CAP, DEFAULT_MARGIN};
pub use series::{int_labels, Height, QWSeries, SeriesRecord};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::catalog::{lookup, AlgebraId, CatalogEntry, Family, Weight};
use crate::error::{Error, Result};
use crate::levels::unitarity_range_contains;
use crate::rational::{q, qi, rational_sqrt, Q};
use crate::unitarity::{decide, Outcome};
use crate::weights::{a_bound, casimir};

use series::{add_coeff, floor_i64, merge_prefactors, mul_coeff, Graded, Prefactor};

/// Per-algebra data shared by every series computation.
struct Frame {
    e: Arc<CatalogEntry>,
    height: Height,
    slope: i64,
    rank: usize,
    /// Labels of the positive roots of g^♮.
    pos_roots: Vec<Vec<i64>>,
    /// Labels of the weights of g_{-1/2}, with multiplicity.
    odd: Vec<(Vec<i64>, u32)>,
}

impl Frame {
    fn new(id: AlgebraId) -> Result<Frame> {
        let e = lookup(id)?;
        if e.has_center() {
            return Err(Error::UnsupportedFamily(format!(
                "characters of {} are not implemented: g^natural has a center",
                e.id
            )));
        }
        let height = Height::of(&e);
        let pos_roots = e
            .pos_roots_natural
            .iter()
            .map(|a| int_labels(&e, a))
            .collect::<Result<Vec<_>>>()?;
        let odd = e
            .delta_prime
            .iter()
            .map(|(g, m)| Ok((int_labels(&e, g)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        let top = pos_roots
            .iter()
            .map(|a| height.scaled(a))
            .chain(odd.iter().map(|(g, _)| height.scaled(g).abs()))
            .max()
            .unwrap_or(0);
        let rank = e.natural_simple_roots.len();
        Ok(Frame { e, height, slope: top + 1, rank, pos_roots, odd })
    }

    fn labels(&self, w: &Weight) -> Result<Vec<i64>> {
        int_labels(&self.e, w)
    }

    /// F^NS exact on the box qh ≤ qh_cap, g ≤ g_cap (qh in half-units).
    fn fns(&self, qh_cap: i64, g_cap: i64) -> Graded {
        let mut f = Graded::one(self.rank, self.height.clone(), self.slope, qh_cap, g_cap);
        let fits = |f: &Graded, qh: i64, w: &[i64]| qh <= qh_cap && f.grade(qh, w) <= g_cap;
        let zero = vec![0; self.rank];
        for n in 1..=(qh_cap / 2 + 1) {
            for (g, mult) in &self.odd {
                let w: Vec<i64> = g.iter().map(|x| -x).collect();
                if fits(&f, 2 * n - 1, &w) {
                    for _ in 0..*mult {
                        f.mul_one_plus(2 * n - 1, &w);
                    }
                }
            }
        }
        for n in 1..=(qh_cap / 2 + 1) {
            if fits(&f, 2 * n, &zero) {
                for _ in 0..=self.rank {
                    f.div_one_minus(2 * n, &zero);
                }
            }
            for a in &self.pos_roots {
                let neg: Vec<i64> = a.iter().map(|x| -x).collect();
                if fits(&f, 2 * n - 2, &neg) {
                    f.div_one_minus(2 * n - 2, &neg);
                }
                if fits(&f, 2 * n, a) {
                    f.div_one_minus(2 * n, a);
                }
            }
        }
        f
    }

    /// Σ_p p · F^NS restricted to the window around `reference`.
    fn assemble(&self, prefactors: Vec<Prefactor>, q_max: Q, depth: u32, reference: Vec<i64>) -> QWSeries {
        let prefactors = merge_prefactors(prefactors);
        let sd_ref = self.height.scaled(&reference);
        let depth_s = depth as i64 * self.height.scale;
        // (prefactor, qh budget, depth budget) for every prefactor that can
        // reach the window.
        let jobs: Vec<(Prefactor, i64, i64)> = prefactors
            .into_iter()
            .filter(|p| p.q <= q_max)
            .filter_map(|p| {
                let qh = floor_i64((q_max - p.q) * qi(2));
                let sd = depth_s - (sd_ref - self.height.scaled(&p.labels));
                (sd + self.slope * qh >= 0).then_some((p, qh, sd))
            })
            .collect();
        let mut out = QWSeries::empty(self.e.id, q_max, depth, reference, self.height.clone());
        if jobs.is_empty() {
            return out;
        }
        let qh_cap = jobs.iter().map(|j| j.1).max().unwrap_or(0);
        let g_cap = jobs.iter().map(|j| j.2 + self.slope * j.1).max().unwrap_or(0);
        let f = self.fns(qh_cap, g_cap).sorted();
        let parts: Vec<BTreeMap<(Q, Vec<i64>), i64>> = jobs
            .par_iter()
            .map(|(p, qh_budget, sd_budget)| {
                let mut acc = BTreeMap::new();
                for (qh, w, c) in &f {
                    if qh > qh_budget {
                        break;
                    }
                    if -self.height.scaled(w) > *sd_budget {
                        continue;
                    }
                    let labels: Vec<i64> = w.iter().zip(&p.labels).map(|(a, b)| a + b).collect();
                    let key = (p.q + Q::new(*qh as i128, 2), labels);
                    add_coeff(acc.entry(key).or_insert(0), mul_coeff(p.coeff, *c));
                }
                acc
            })
            .collect();
        let mut total: BTreeMap<(Q, Vec<i64>), i64> = BTreeMap::new();
        for part in parts {
            for (k, v) in part {
                add_coeff(total.entry(k).or_insert(0), v);
            }
        }
        for ((qq, w), c) in total {
            out.add_term(qq, w, c);
        }
        out
    }
}

fn check_q_max(q_max: Q) -> Result<()> {
    if q_max.is_negative() {
        return Err(Error::PreconditionViolated(format!("q_max = {q_max} is negative")));
    }
    Ok(())
}

/// The integer height helper used to interpret series of `id`.
pub fn series_height(id: AlgebraId) -> Result<Height> {
    Ok(Frame::new(id)?.height)
}

/// F^NS truncated to q ≤ q_max and depth ≤ `depth` below weight 0.
pub fn fns_series(id: AlgebraId, q_max: Q, depth: u32) -> Result<QWSeries> {
    verma_character(id, &Weight::zero(lookup(id)?.dim()), Q::zero(), q_max, depth)
}

/// e^ν q^ℓ F^NS.
pub fn verma_character(id: AlgebraId, nu: &Weight, ell: Q, q_max: Q, depth: u32) -> Result<QWSeries> {
    check_q_max(q_max)?;
    let fr = Frame::new(id)?;
    let labels = fr.labels(nu)?;
    let p = Prefactor { q: ell, labels: labels.clone(), coeff: 1 };
    Ok(fr.assemble(vec![p], q_max, depth, labels))
}

fn kh(e: &CatalogEntry, k: Q) -> Result<Q> {
    let s = k + e.h_vee;
    if s.is_zero() {
        return Err(Error::CriticalLevel(k));
    }
    Ok(s)
}

/// ℓ(h) = (ν|ν+2ρ^♮)/(2(k+h^∨)) + h(h−k−1)/(k+h^∨).
pub fn ell_of_h(id: AlgebraId, k: Q, nu: &Weight, h: Q) -> Result<Q> {
    let e = lookup(id)?;
    let s = kh(&e, k)?;
    Ok(casimir(&e, nu) / (qi(2) * s) + h * (h - k - Q::one()) / s)
}

/// The two solutions h, k+1−h of ℓ(h) = ℓ_0, when rational.
pub fn h_pair(id: AlgebraId, k: Q, nu: &Weight, l0: Q) -> Result<(Q, Q)> {
    let e = lookup(id)?;
    let s = kh(&e, k)?;
    let k1 = k + Q::one();
    let disc = k1 * k1 - qi(4) * (casimir(&e, nu) / qi(2) - l0 * s);
    let root = rational_sqrt(&disc).ok_or(Error::NoRationalRoot(l0))?;
    let h = (k1 + root) / qi(2);
    Ok((h, k1 - h))
}

/// ch L^W(ν, ℓ_0) for ℓ_0 > A(k,ν): Σ_w det(w) ch M^W(w.ν̂_h).
pub fn character_massive(id: AlgebraId, k: Q, nu: &Weight, l0: Q, q_max: Q, depth: u32) -> Result<QWSeries> {
    check_q_max(q_max)?;
    let fr = Frame::new(id)?;
    let v = decide(id, k, nu, l0)?;
    if v.outcome != Outcome::UnitaryNonExtremal {
        return Err(Error::PreconditionViolated(format!(
            "massive character needs a unitary non-extremal module, got {}",
            v.outcome.name()
        )));
    }
    let a = a_bound(id, k, nu)?;
    if l0 <= a {
        return Err(Error::PreconditionViolated(format!("l0 = {l0} is not above A = {a}")));
    }
    // The shifted orbit does not depend on h.
    let orbit = orbit::orbit_full(&fr.e, k, nu, Q::zero(), q_max - l0, DEFAULT_CAP)?;
    let mut ps = Vec::with_capacity(orbit.len());
    for el in orbit {
        ps.push(Prefactor {
            q: l0 + el.element.q_shift,
            labels: fr.labels(&el.element.weight)?,
            coeff: el.element.det as i64,
        });
    }
    Ok(fr.assemble(ps, q_max, depth, fr.labels(nu)?))
}

/// Expansion of 1/(1 + e^{w}q^{c}) up to q ≤ budget, in powers of the
/// monomial whose q-exponent is positive.
fn expand_inverse(w: &[i64], c: Q, budget: Q) -> Result<Vec<(Q, Vec<i64>, i64)>> {
    if c.is_zero() {
        return Err(Error::PreconditionViolated(
            "isotropic root image with zero (x+d) pairing".into(),
        ));
    }
    let mut out = Vec::new();
    let (start, sign_flip) = if c.is_positive() { (0i64, 1i64) } else { (1, -1) };
    let step = c.abs();
    let mut j = start;
    loop {
        let qq = step * qi(j as i128);
        if qq > budget {
            break;
        }
        let coeff = if c.is_positive() {
            if j % 2 == 0 { 1 } else { -1 }
        } else if j % 2 == 1 {
            1
        } else {
            -1
        };
        let labels = w.iter().map(|x| x * j * sign_flip).collect();
        out.push((qq, labels, coeff));
        j += 1;
    }
    Ok(out)
}

/// Product of truncated expansions, keeping q ≤ budget.
fn convolve(a: &[(Q, Vec<i64>, i64)], b: &[(Q, Vec<i64>, i64)], budget: Q) -> Vec<(Q, Vec<i64>, i64)> {
    let mut m: BTreeMap<(Q, Vec<i64>), i64> = BTreeMap::new();
    for (qa, wa, ca) in a {
        for (qb, wb, cb) in b {
            let qq = *qa + *qb;
            if qq > budget {
                continue;
            }
            let w = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            add_coeff(m.entry((qq, w)).or_insert(0), mul_coeff(*ca, *cb));
        }
    }
    m.into_iter().filter(|(_, c)| *c != 0).map(|((qq, w), c)| (qq, w, c)).collect()
}

/// ch L^W(ν, A(k,ν)): the alternating sum over w ∈ Ŵ^♮ and γ ∈ Z_+Π_1̄,
/// summed over γ in closed form as 1/∏(1 + e^{−w(β)}q^{w(β)(x+d)}).
pub fn character_massless(id: AlgebraId, k: Q, nu: &Weight, q_max: Q, depth: u32) -> Result<QWSeries> {
    check_q_max(q_max)?;
    let fr = Frame::new(id)?;
    let e = Arc::clone(&fr.e);
    if e.id.family == Family::D21a && !nu.is_zero() {
        return Err(Error::UnsupportedD21a);
    }
    if !unitarity_range_contains(id, k) {
        return Err(Error::PreconditionViolated(format!("k = {k} is not in the unitarity range")));
    }
    let a = a_bound(id, k, nu)?;
    let h = e.form(&e.xi, nu);
    let orbit = orbit::orbit_full(&e, k, nu, h, q_max - a, DEFAULT_CAP)?;
    let mut ps = Vec::new();
    for el in orbit {
        let base_q = a + el.element.q_shift;
        let budget = q_max - base_q;
        let mut den = vec![(Q::zero(), vec![0; fr.rank], 1i64)];
        for b in &el.iso_images {
            let y = fr.labels(&-&e.restrict(&b.finite))?;
            let exp = expand_inverse(&y, b.at_x_plus_d(&e), budget)?;
            den = convolve(&den, &exp, budget);
        }
        let mu = fr.labels(&el.element.weight)?;
        for (qq, w, c) in den {
            ps.push(Prefactor {
                q: base_q + qq,
                labels: mu.iter().zip(&w).map(|(x, y)| x + y).collect(),
                coeff: c * el.element.det as i64,
            });
        }
    }
    Ok(fr.assemble(ps, q_max, depth, fr.labels(nu)?))
}

/// Σ_j (−1)^j (j+1) X^j for X = e^{w}q^{c}, or its expansion in X^{-1}
/// when c < 0; this is 1/(1+X)^2.
fn expand_inverse_square(w: i64, c: Q, budget: Q) -> Vec<(Q, Vec<i64>, i64)> {
    let mut out = Vec::new();
    for j in 0i64.. {
        let (power, qq) = if c.is_positive() {
            (j, c * qi(j as i128))
        } else {
            (-j - 2, -c * qi((j + 2) as i128))
        };
        if qq > budget {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.push((qq, vec![w * power], sign * (j + 1)));
    }
    out
}

/// The bilateral massless character of the N=4 algebra at k = −(M_1+1)
/// with ν = rθ_1/2, used as an independent oracle.
pub fn n4_closed_form(m1: u32, r: u32, q_max: Q, depth: u32) -> Result<QWSeries> {
    check_q_max(q_max)?;
    if m1 == 0 || r > m1 {
        return Err(Error::IndexOutOfRange(format!("need 0 <= r <= M1 with M1 >= 1, got M1 = {m1}, r = {r}")));
    }
    let fr = Frame::new(AlgebraId::psl22())?;
    let (m1, r) = (m1 as i64, r as i64);
    let l0 = q(r as i128, 2);
    let mut ps = Vec::new();
    let reach = (q_max.to_integer() as i64 + 2 * m1 + 4).max(4);
    for m in -reach..=reach {
        let base = l0 + qi((m * m * (m1 + 1) + (r + 1) * m) as i128);
        let c = q(2 * m as i128 + 1, 2);
        let budget = q_max - base;
        if budget.is_negative() && c.is_positive() {
            continue;
        }
        let lab = r + 2 * m * (m1 + 1);
        for (w, sign, lead) in [(1i64, 1i64, lab), (-1, -1, -(lab + 2))] {
            for (qq, dw, cc) in expand_inverse_square(w, c, budget) {
                ps.push(Prefactor { q: base + qq, labels: vec![lead + dw[0]], coeff: sign * cc });
            }
        }
    }
    Ok(fr.assemble(ps, q_max, depth, vec![r]))
}

/// A pair of weights at one q-level related by a simple reflection, both
/// inside the window, whose coefficients differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Asymmetry {
    pub q: Q,
    pub weight: Vec<i64>,
    pub reflected: Vec<i64>,
}

/// First W^♮-asymmetry of `s` visible inside its window.
pub fn weyl_asymmetry(id: AlgebraId, s: &QWSeries) -> Result<Option<Asymmetry>> {
    let fr = Frame::new(id)?;
    let cols: Vec<Vec<i64>> = fr
        .e
        .natural_simple_roots
        .iter()
        .map(|a| fr.labels(a))
        .collect::<Result<_>>()?;
    for (qq, level) in &s.terms {
        for (w, c) in level {
            for (j, col) in cols.iter().enumerate() {
                let r: Vec<i64> = w.iter().zip(col).map(|(x, y)| x - w[j] * y).collect();
                if s.in_window(*qq, &r) && s.coeff(*qq, &r) != *c {
                    return Ok(Some(Asymmetry { q: *qq, weight: w.clone(), reflected: r }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::nu_from_half_thetas;

    fn psl() -> AlgebraId {
        AlgebraId::psl22()
    }

    #[test]
    fn fns_low_terms() {
        let f = fns_series(psl(), qi(1), 2).unwrap();
        assert_eq!(f.coeff(Q::zero(), &[0]), 1);
        assert_eq!(f.coeff(Q::zero(), &[-2]), 1);
        let e = lookup(psl()).unwrap();
        let xi = int_labels(&e, &e.xi).unwrap();
        let neg: Vec<i64> = xi.iter().map(|x| -x).collect();
        // Two fermionic factors give e^{-ξ} directly and two more pair e^{ξ}
        // with e^{-θ_1} from the n = 1 bosonic factor.
        assert_eq!(f.coeff(q(1, 2), &neg), 4);
        assert_eq!(f.coeff(q(1, 2), &xi), 2);
    }

    #[test]
    fn verma_shift() {
        let e = lookup(psl()).unwrap();
        let nu = nu_from_half_thetas(&e, &[qi(1)]).unwrap();
        let v0 = verma_character(psl(), &nu, Q::zero(), qi(3), 3).unwrap();
        let v1 = verma_character(psl(), &nu, Q::one(), qi(3), 3).unwrap();
        assert_eq!(v0.shift_q(Q::one()), v1);
        let lead = v0.leading().unwrap().unwrap();
        assert_eq!((lead.q, Weight(lead.weight), lead.coeff), (Q::zero(), nu, 1));
    }

    #[test]
    fn h_pair_sample() {
        let z = Weight::zero(4);
        assert_eq!(ell_of_h(psl(), -qi(2), &z, Q::zero()), Ok(Q::zero()));
        assert_eq!(h_pair(psl(), -qi(2), &z, Q::zero()), Ok((Q::zero(), -qi(1))));
    }

    #[test]
    fn n4_range() {
        assert!(matches!(n4_closed_form(1, 2, qi(2), 4), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(n4_closed_form(0, 0, qi(2), 4), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn center_families_unsupported() {
        let id = AlgebraId::sl2m(3).unwrap();
        assert!(matches!(fns_series(id, qi(1), 1), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn massless_matches_closed_form_small() {
        let e = lookup(psl()).unwrap();
        for r in 0..=1 {
            let nu = nu_from_half_thetas(&e, &[qi(r)]).unwrap();
            let qm = q(r as i128, 2) + qi(2);
            let a = character_massless(psl(), -qi(2), &nu, qm, 4).unwrap();
            let b = n4_closed_form(1, r as u32, qm, 4).unwrap();
            assert_eq!(a, b, "r = {r}");
        }
    }
}
