//! Truncated series in q with coefficients in the group ring of the g^♮
//! weight lattice. Weights are stored as Dynkin labels over the natural
//! simple roots.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, AlgebraId, CatalogEntry, Weight};
use crate::error::{Error, Result};
use crate::rational::{qi, Q};

/// Labels of `w` as integers.
pub fn int_labels(e: &CatalogEntry, w: &Weight) -> Result<Vec<i64>> {
    e.labels(w)
        .iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_i64().ok_or_else(|| Error::InvalidWeight(format!("{w}")))
            } else {
                Err(Error::InvalidWeight(format!("{w} has non-integral label {x}")))
            }
        })
        .collect()
}

/// Integer form of the height functional: ht(λ) = (Σ_i h_i·λ_i) / scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Height {
    pub coeffs: Vec<i64>,
    pub scale: i64,
}

impl Height {
    pub fn of(e: &CatalogEntry) -> Height {
        let f = e.height_functional();
        let scale = f.iter().fold(1i128, |l, x| l.lcm(x.denom()));
        let coeffs = f
            .iter()
            .map(|x| (*x * qi(scale)).to_integer() as i64)
            .collect();
        Height { coeffs, scale: scale as i64 }
    }

    /// scale·ht(λ).
    pub fn scaled(&self, labels: &[i64]) -> i64 {
        self.coeffs.iter().zip(labels).map(|(c, l)| c * l).sum()
    }

    /// scale·ht(reference − λ).
    pub fn depth_of(&self, reference: &[i64], labels: &[i64]) -> i64 {
        self.scaled(reference) - self.scaled(labels)
    }

    /// ht(reference − λ) as a rational.
    pub fn depth_q(&self, reference: &[i64], labels: &[i64]) -> Q {
        Q::new(self.depth_of(reference, labels) as i128, self.scale as i128)
    }
}

pub(crate) fn add_coeff(slot: &mut i64, c: i64) {
    *slot = slot.checked_add(c).expect("series coefficient overflow");
}

pub(crate) fn mul_coeff(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("series coefficient overflow")
}

/// A q-series truncated to exponents ≤ `q_max` and weights μ with
/// ht(reference − μ) ≤ `depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QWSeries {
    pub id: AlgebraId,
    pub terms: BTreeMap<Q, BTreeMap<Vec<i64>, i64>>,
    pub q_max: Q,
    pub depth: u32,
    /// Labels of the weight the depth is measured from.
    pub reference: Vec<i64>,
    pub height: Height,
}

/// One serialized term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    #[serde(with = "crate::rational::serde_q")]
    pub q: Q,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub weight: Vec<Q>,
    pub coeff: i64,
}

impl QWSeries {
    pub fn empty(id: AlgebraId, q_max: Q, depth: u32, reference: Vec<i64>, height: Height) -> Self {
        QWSeries { id, terms: BTreeMap::new(), q_max, depth, reference, height }
    }

    pub fn in_window(&self, q: Q, labels: &[i64]) -> bool {
        q <= self.q_max
            && self.height.depth_of(&self.reference, labels) <= self.depth as i64 * self.height.scale
    }

    pub fn add_term(&mut self, q: Q, labels: Vec<i64>, c: i64) {
        if c == 0 || !self.in_window(q, &labels) {
            return;
        }
        let level = self.terms.entry(q).or_default();
        let slot = level.entry(labels.clone()).or_insert(0);
        add_coeff(slot, c);
        if *slot == 0 {
            level.remove(&labels);
            if level.is_empty() {
                self.terms.remove(&q);
            }
        }
    }

    pub fn coeff(&self, q: Q, labels: &[i64]) -> i64 {
        self.terms
            .get(&q)
            .and_then(|m| m.get(labels))
            .copied()
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Restrict to a smaller window.
    pub fn truncate(&self, q_max: Q, depth: u32) -> QWSeries {
        let mut out = QWSeries::empty(self.id, q_max, depth, self.reference.clone(), self.height.clone());
        for (q, m) in &self.terms {
            for (w, c) in m {
                out.add_term(*q, w.clone(), *c);
            }
        }
        out
    }

    /// Multiply by q^s, keeping the window.
    pub fn shift_q(&self, s: Q) -> QWSeries {
        let mut out = QWSeries::empty(self.id, self.q_max, self.depth, self.reference.clone(), self.height.clone());
        for (q, m) in &self.terms {
            for (w, c) in m {
                out.add_term(*q + s, w.clone(), *c);
            }
        }
        out
    }

    /// Terms as records with weights in the coordinates of the family
    /// basis. Records are ordered by q, then by height below the reference
    /// weight, then by decreasing lexicographic weight, so each q-level
    /// starts from its highest weights.
    pub fn records(&self) -> Result<Vec<SeriesRecord>> {
        let e = lookup(self.id)?;
        let mut out = Vec::with_capacity(self.len());
        for (q, m) in &self.terms {
            let mut level = Vec::with_capacity(m.len());
            for (w, c) in m {
                let labels: Vec<Q> = w.iter().map(|x| qi(*x as i128)).collect();
                let weight = e.from_labels(&labels)?;
                let d = self.height.depth_of(&self.reference, w);
                level.push((d, SeriesRecord { q: *q, weight: weight.0, coeff: *c }));
            }
            level.sort_by(|(da, a), (db, b)| da.cmp(db).then_with(|| b.weight.cmp(&a.weight)));
            out.extend(level.into_iter().map(|(_, r)| r));
        }
        Ok(out)
    }

    /// The first record.
    pub fn leading(&self) -> Result<Option<SeriesRecord>> {
        Ok(self.records()?.into_iter().next())
    }

    /// Rebuild a series from records in the given window.
    pub fn from_records(
        id: AlgebraId,
        records: &[SeriesRecord],
        q_max: Q,
        depth: u32,
        reference: Vec<i64>,
    ) -> Result<QWSeries> {
        let e = lookup(id)?;
        let mut out = QWSeries::empty(id, q_max, depth, reference, Height::of(&e));
        for r in records {
            let w = Weight(r.weight.clone());
            if w.len() != e.dim() {
                return Err(Error::InvalidWeight(format!("{w} has the wrong length")));
            }
            out.add_term(r.q, int_labels(&e, &w)?, r.coeff);
        }
        Ok(out)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|m| m.values().all(|c| *c >= 0))
    }
}

/// Sparse series with integer q-exponents in a fixed unit and an internal
/// grading `g = depth + slope·qh`, truncated to `qh ≤ qh_cap` and
/// `g ≤ g_cap`. Every factor used has `g > 0` and `qh ≥ 0`, so both caps
/// are ideals and the truncation is exact inside the box.
#[derive(Debug, Clone)]
pub(crate) struct Graded {
    pub terms: HashMap<(i64, Vec<i64>), i64>,
    pub height: Height,
    pub slope: i64,
    pub qh_cap: i64,
    pub g_cap: i64,
}

impl Graded {
    pub fn one(rank: usize, height: Height, slope: i64, qh_cap: i64, g_cap: i64) -> Self {
        let mut terms = HashMap::new();
        terms.insert((0, vec![0; rank]), 1);
        Graded { terms, height, slope, qh_cap, g_cap }
    }

    pub fn grade(&self, qh: i64, labels: &[i64]) -> i64 {
        -self.height.scaled(labels) + self.slope * qh
    }

    fn keep(&self, qh: i64, labels: &[i64]) -> bool {
        qh <= self.qh_cap && self.grade(qh, labels) <= self.g_cap
    }

    /// `self · c·q^{qh}e^{labels}`, truncated.
    fn times_monomial(&self, qh: i64, labels: &[i64], c: i64) -> HashMap<(i64, Vec<i64>), i64> {
        let mut out = HashMap::new();
        for ((q0, w), v) in &self.terms {
            let q1 = q0 + qh;
            let w1: Vec<i64> = w.iter().zip(labels).map(|(a, b)| a + b).collect();
            if self.keep(q1, &w1) {
                add_coeff(out.entry((q1, w1)).or_insert(0), mul_coeff(*v, c));
            }
        }
        out
    }

    fn absorb(&mut self, other: HashMap<(i64, Vec<i64>), i64>) {
        for (k, v) in other {
            add_coeff(self.terms.entry(k).or_insert(0), v);
        }
        self.terms.retain(|_, v| *v != 0);
    }

    /// Multiply by (1 + X).
    pub fn mul_one_plus(&mut self, qh: i64, labels: &[i64]) {
        let add = self.times_monomial(qh, labels, 1);
        self.absorb(add);
    }

    /// Multiply by (1 − X)^{-1} = Σ_j X^j.
    pub fn div_one_minus(&mut self, qh: i64, labels: &[i64]) {
        debug_assert!(self.grade(qh, labels) > 0);
        let mut power = Graded { terms: self.terms.clone(), ..self.clone_meta() };
        loop {
            let next = power.times_monomial(qh, labels, 1);
            if next.is_empty() {
                break;
            }
            power.terms = next;
            let copy = power.terms.clone();
            self.absorb(copy);
        }
    }

    fn clone_meta(&self) -> Graded {
        Graded {
            terms: HashMap::new(),
            height: self.height.clone(),
            slope: self.slope,
            qh_cap: self.qh_cap,
            g_cap: self.g_cap,
        }
    }

    /// Terms sorted by (qh, labels), the order used when combining.
    pub fn sorted(&self) -> Vec<(i64, Vec<i64>, i64)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .filter(|(_, c)| **c != 0)
            .map(|((q, w), c)| (*q, w.clone(), *c))
            .collect();
        v.sort();
        v
    }
}

/// A term q^{q}e^{labels} with coefficient, before multiplication by F^NS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Prefactor {
    pub q: Q,
    pub labels: Vec<i64>,
    pub coeff: i64,
}

/// Merge equal (q, labels) prefactors and drop cancelled ones.
pub(crate) fn merge_prefactors(ps: Vec<Prefactor>) -> Vec<Prefactor> {
    let mut m: BTreeMap<(Q, Vec<i64>), i64> = BTreeMap::new();
    for p in ps {
        add_coeff(m.entry((p.q, p.labels)).or_insert(0), p.coeff);
    }
    m.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((q, labels), coeff)| Prefactor { q, labels, coeff })
        .collect()
}

pub(crate) fn floor_i64(x: Q) -> i64 {
    x.floor().to_integer() as i64
}
