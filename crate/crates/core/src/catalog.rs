//! Root data, invariant forms and numerical tables for the Lie
//! superalgebras whose minimal W-algebras can carry unitary modules.
//!
//! Every weight is a rational coordinate vector in the ε/δ basis of its
//! family. The Cartan subalgebra of g^♮ sits inside as the span of the
//! simple roots of g^♮ (plus the center for sl(2|m)); restricting a weight
//! to h^♮ is the orthogonal projection onto that span.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, solve, Matrix};
use crate::rational::{q, qi, Q};

/// The families of list (1.5) in their unitary-relevant forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "psl22")]
    Psl22,
    #[serde(rename = "sl2m")]
    Sl2m,
    #[serde(rename = "spo2m")]
    Spo2m,
    #[serde(rename = "osp4m")]
    Osp4m,
    D21a,
    F4,
    G3,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Psl22,
        Family::Sl2m,
        Family::Spo2m,
        Family::Osp4m,
        Family::D21a,
        Family::F4,
        Family::G3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Psl22 => "psl22",
            Family::Sl2m => "sl2m",
            Family::Spo2m => "spo2m",
            Family::Osp4m => "osp4m",
            Family::D21a => "D21a",
            Family::F4 => "F4",
            Family::G3 => "G3",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

/// A family together with its parameters.
///
/// `m` is used by `sl2m`, `spo2m` and `osp4m` (the superdimension index of
/// the second block, so `spo2m` with `m = 3` is spo(2|3)). `a_num/a_den`
/// is the D(2,1;a) parameter. Unused fields are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraId {
    pub family: Family,
    pub m: u32,
    pub a_num: u32,
    pub a_den: u32,
}

impl AlgebraId {
    pub fn psl22() -> Self {
        Self::bare(Family::Psl22)
    }
    pub fn f4() -> Self {
        Self::bare(Family::F4)
    }
    pub fn g3() -> Self {
        Self::bare(Family::G3)
    }
    pub fn sl2m(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::ParameterOutOfRange(format!(
                "sl(2|m) needs m >= 3, got {m}"
            )));
        }
        Ok(AlgebraId {
            m,
            ..Self::bare(Family::Sl2m)
        })
    }
    pub fn spo2m(m: u32) -> Result<Self> {
        if m < 3 || m == 4 {
            return Err(Error::ParameterOutOfRange(format!(
                "spo(2|m) needs m = 3 or m >= 5, got {m}"
            )));
        }
        Ok(AlgebraId {
            m,
            ..Self::bare(Family::Spo2m)
        })
    }
    pub fn osp4m(m: u32) -> Result<Self> {
        if m <= 2 || m % 2 == 1 {
            return Err(Error::ParameterOutOfRange(format!(
                "osp(4|m) needs even m > 2, got {m}"
            )));
        }
        Ok(AlgebraId {
            m,
            ..Self::bare(Family::Osp4m)
        })
    }
    /// D(2,1;a) with `a = num/den`; the fraction is reduced.
    pub fn d21a(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::ParameterOutOfRange(format!(
                "D(2,1;a) needs a positive rational, got {num}/{den}"
            )));
        }
        let g = num.gcd(&den);
        Ok(AlgebraId {
            a_num: num / g,
            a_den: den / g,
            ..Self::bare(Family::D21a)
        })
    }

    fn bare(family: Family) -> Self {
        AlgebraId {
            family,
            m: 0,
            a_num: 0,
            a_den: 0,
        }
    }

    /// Build from a family and the generic parameters used by the CLI.
    pub fn from_parts(family: Family, m: Option<u32>, a: Option<Q>) -> Result<Self> {
        let need_m =
            || m.ok_or_else(|| Error::ParameterOutOfRange(format!("{} needs --m", family.name())));
        match family {
            Family::Psl22 => Ok(Self::psl22()),
            Family::F4 => Ok(Self::f4()),
            Family::G3 => Ok(Self::g3()),
            Family::Sl2m => Self::sl2m(need_m()?),
            Family::Spo2m => Self::spo2m(need_m()?),
            Family::Osp4m => Self::osp4m(need_m()?),
            Family::D21a => {
                let a = a.ok_or_else(|| Error::ParameterOutOfRange("D21a needs --a".into()))?;
                if !a.is_positive() {
                    return Err(Error::ParameterOutOfRange(format!(
                        "a must be positive, got {a}"
                    )));
                }
                let (n, d) = (*a.numer(), *a.denom());
                let n = u32::try_from(n).map_err(|_| Error::ParameterOutOfRange(a.to_string()))?;
                let d = u32::try_from(d).map_err(|_| Error::ParameterOutOfRange(a.to_string()))?;
                Self::d21a(n, d)
            }
        }
    }

    /// The D(2,1;a) parameter as a rational (zero for other families).
    pub fn a(&self) -> Q {
        if self.family == Family::D21a {
            q(self.a_num as i128, self.a_den as i128)
        } else {
            Q::zero()
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Psl22 => write!(f, "psl(2|2)"),
            Family::Sl2m => write!(f, "sl(2|{})", self.m),
            Family::Spo2m => write!(f, "spo(2|{})", self.m),
            Family::Osp4m => write!(f, "osp(4|{})", self.m),
            Family::D21a => write!(f, "D(2,1;{})", self.a()),
            Family::F4 => write!(f, "F(4)"),
            Family::G3 => write!(f, "G(3)"),
        }
    }
}

/// A weight as a rational vector in the ε/δ basis of its family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(#[serde(with = "crate::rational::serde_q::vec")] pub Vec<Q>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![Q::zero(); n])
    }
    pub fn from_ints(xs: &[i128]) -> Self {
        Weight(xs.iter().map(|&x| qi(x)).collect())
    }
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[i] = Q::one();
        w
    }
    pub fn scale(&self, c: Q) -> Self {
        Weight(self.0.iter().map(|x| *x * c).collect())
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| *a + *b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| *a - *b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -*a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleRoot {
    pub root: Weight,
    pub odd: bool,
    pub isotropic: bool,
}

/// A simple ideal of g^♮, or its one-dimensional center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalComponent {
    /// Component index: 0 for a center, 1, 2 for simple ideals.
    pub index: usize,
    pub name: String,
    pub simple_roots: Vec<Weight>,
    /// Highest root; `None` for the center.
    pub theta: Option<Weight>,
    /// Spanning vector of the center; `None` for simple ideals.
    pub center: Option<Weight>,
    #[serde(with = "crate::rational::serde_q")]
    pub u: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub hbar_vee: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub chi: Q,
}

impl NaturalComponent {
    pub fn is_center(&self) -> bool {
        self.theta.is_none()
    }
}

/// All data for one algebra. Built once per id and shared.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: AlgebraId,
    pub basis: Vec<String>,
    #[serde(skip)]
    pub gram: Matrix,
    pub simple_roots: Vec<SimpleRoot>,
    pub theta: Weight,
    #[serde(with = "crate::rational::serde_q")]
    pub sdim: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub h_vee: Q,
    pub natural_name: String,
    pub components: Vec<NaturalComponent>,
    pub rho_natural: Weight,
    /// Weyl vector of g for the simple system above.
    pub rho: Weight,
    pub xi: Weight,
    /// The highest root of g_{1/2} whose restriction is `xi`.
    pub highest_odd_root: Weight,
    /// Roots of g in g_{-1/2}, before restriction.
    pub g_minus_half_roots: Vec<Weight>,
    pub delta_prime: Vec<(Weight, u32)>,
    pub epsilon: u8,
    pub pos_roots_natural: Vec<Weight>,
    pub iso_simple_count: usize,
    /// Simple roots of g^♮ across all simple ideals, in component order.
    pub natural_simple_roots: Vec<Weight>,
    /// Basis of h^♮*: natural simple roots followed by center vectors.
    pub natural_span: Vec<Weight>,
    #[serde(skip)]
    span_gram_inv: Matrix,
    #[serde(skip)]
    cartan_t_inv: Matrix,
}

struct RawComponent {
    index: usize,
    name: String,
    simple_roots: Vec<Weight>,
    theta: Option<Weight>,
    center: Option<Weight>,
    hbar_vee: Q,
    chi: Q,
}

struct Raw {
    basis: Vec<String>,
    gram: Matrix,
    simple_roots: Vec<(Weight, bool)>,
    theta: Weight,
    highest_odd_root: Weight,
    g_minus_half: Vec<Weight>,
    components: Vec<RawComponent>,
    sdim: Q,
    h_vee: Q,
    natural_name: String,
}

fn diag(entries: &[Q]) -> Matrix {
    let n = entries.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { entries[i] } else { Q::zero() })
                .collect()
        })
        .collect()
}

/// Shorthand for building weights from integer-or-half coordinates.
fn wv(n: usize, terms: &[(usize, Q)]) -> Weight {
    let mut w = Weight::zero(n);
    for &(i, c) in terms {
        w.0[i] += c;
    }
    w
}

fn one() -> Q {
    Q::one()
}

fn raw_psl22() -> Raw {
    let n = 4;
    let (e1, e2, d1, d2) = (0, 1, 2, 3);
    let m1 = -one();
    let p = |i: usize, j: usize| wv(n, &[(i, one()), (j, m1)]);
    Raw {
        basis: ["e1", "e2", "d1", "d2"].map(String::from).to_vec(),
        gram: diag(&[one(), one(), -one(), -one()]),
        simple_roots: vec![(p(e1, d1), true), (p(d1, d2), false), (p(d2, e2), true)],
        theta: p(e1, e2),
        highest_odd_root: p(e1, d2),
        g_minus_half: vec![p(d1, e1), p(d2, e1), p(e2, d1), p(e2, d2)],
        components: vec![RawComponent {
            index: 1,
            name: "sl2".into(),
            simple_roots: vec![p(d1, d2)],
            theta: Some(p(d1, d2)),
            center: None,
            hbar_vee: qi(-2),
            chi: qi(-1),
        }],
        sdim: qi(-2),
        h_vee: qi(0),
        natural_name: "sl2".into(),
    }
}

fn raw_sl2m(m: usize) -> Raw {
    let n = m + 2;
    let d = |j: usize| 2 + j;
    let m1 = -one();
    let p = |i: usize, j: usize| wv(n, &[(i, one()), (j, m1)]);
    let mut simple = vec![(p(0, d(0)), true)];
    for j in 0..m - 1 {
        simple.push((p(d(j), d(j + 1)), false));
    }
    simple.push((p(d(m - 1), 1), true));
    let mut gmh = Vec::new();
    for j in 0..m {
        gmh.push(p(d(j), 0));
        gmh.push(p(1, d(j)));
    }
    let mut center = wv(n, &[(0, q(m as i128, 2)), (1, q(m as i128, 2))]);
    for j in 0..m {
        center.0[d(j)] = -one();
    }
    let mi = m as i128;
    let mut gram_d = vec![one(), one()];
    gram_d.extend(std::iter::repeat(-one()).take(m));
    let mut basis = vec!["e1".to_string(), "e2".to_string()];
    basis.extend((1..=m).map(|j| format!("d{j}")));
    Raw {
        basis,
        gram: diag(&gram_d),
        simple_roots: simple,
        theta: p(0, 1),
        highest_odd_root: p(0, d(m - 1)),
        g_minus_half: gmh,
        components: vec![
            RawComponent {
                index: 0,
                name: "C".into(),
                simple_roots: vec![],
                theta: None,
                center: Some(center),
                hbar_vee: qi(0),
                chi: qi(1) - q(mi, 2),
            },
            RawComponent {
                index: 1,
                name: format!("sl{m}"),
                simple_roots: (0..m - 1).map(|j| p(d(j), d(j + 1))).collect(),
                theta: Some(p(d(0), d(m - 1))),
                center: None,
                hbar_vee: qi(-mi),
                chi: qi(-1),
            },
        ],
        sdim: qi((mi - 1) * (mi - 3)),
        h_vee: qi(2 - mi),
        natural_name: format!("C+sl{m}"),
    }
}

fn raw_osp4m(m: usize) -> Raw {
    let r = m / 2;
    let n = 2 + r;
    let d = |j: usize| 2 + j;
    let m1 = -one();
    let p = |i: usize, j: usize| wv(n, &[(i, one()), (j, m1)]);
    let mut simple = vec![(p(0, 1), false), (p(1, d(0)), true)];
    let mut sp = Vec::new();
    for j in 0..r - 1 {
        sp.push(p(d(j), d(j + 1)));
    }
    sp.push(wv(n, &[(d(r - 1), qi(2))]));
    simple.extend(sp.iter().map(|a| (a.clone(), false)));
    let mut gmh = Vec::new();
    for i in 0..2 {
        for j in 0..r {
            gmh.push(wv(n, &[(i, m1), (d(j), one())]));
            gmh.push(wv(n, &[(i, m1), (d(j), m1)]));
        }
    }
    let mi = m as i128;
    let mut gram_d = vec![one(), one()];
    gram_d.extend(std::iter::repeat(-one()).take(r));
    let mut basis = vec!["e1".to_string(), "e2".to_string()];
    basis.extend((1..=r).map(|j| format!("d{j}")));
    Raw {
        basis,
        gram: diag(&gram_d),
        simple_roots: simple,
        theta: wv(n, &[(0, one()), (1, one())]),
        highest_odd_root: wv(n, &[(0, one()), (d(0), one())]),
        g_minus_half: gmh,
        components: vec![
            RawComponent {
                index: 1,
                name: "sl2".into(),
                simple_roots: vec![p(0, 1)],
                theta: Some(p(0, 1)),
                center: None,
                hbar_vee: qi(2),
                chi: q(-mi, 2),
            },
            RawComponent {
                index: 2,
                name: format!("sp{m}"),
                simple_roots: sp,
                theta: Some(wv(n, &[(d(0), qi(2))])),
                center: None,
                hbar_vee: qi(-mi - 2),
                chi: qi(-1),
            },
        ],
        sdim: qi(6 + mi * (mi + 1) / 2 - 4 * mi),
        h_vee: qi(2 - mi),
        natural_name: format!("sl2+sp{m}"),
    }
}

fn raw_spo(big_n: usize) -> Raw {
    let r = big_n / 2;
    let odd = big_n % 2 == 1;
    let n = 1 + r;
    let e = |i: usize| 1 + i;
    let m1 = -one();
    let p = |i: usize, j: usize| wv(n, &[(i, one()), (j, m1)]);
    let mut so = Vec::new();
    for i in 0..r - 1 {
        so.push(p(e(i), e(i + 1)));
    }
    if odd {
        so.push(wv(n, &[(e(r - 1), one())]));
    } else {
        so.push(wv(n, &[(e(r - 2), one()), (e(r - 1), one())]));
    }
    let mut simple = vec![(p(0, e(0)), true)];
    simple.extend(so.iter().map(|a| (a.clone(), false)));
    let mut gmh = Vec::new();
    for i in 0..r {
        gmh.push(wv(n, &[(0, m1), (e(i), one())]));
        gmh.push(wv(n, &[(0, m1), (e(i), m1)]));
    }
    if odd {
        gmh.push(wv(n, &[(0, m1)]));
    }
    let ni = big_n as i128;
    let (theta1, hbar, chi, hv) = if big_n == 3 {
        (wv(n, &[(e(0), one())]), q(-1, 2), qi(-2), q(1, 2))
    } else {
        (
            wv(n, &[(e(0), one()), (e(1), one())]),
            qi(1) - q(ni, 2),
            qi(-1),
            qi(2) - q(ni, 2),
        )
    };
    let mut gram_d = vec![q(1, 2)];
    gram_d.extend(std::iter::repeat(q(-1, 2)).take(r));
    let mut basis = vec!["d1".to_string()];
    basis.extend((1..=r).map(|j| format!("e{j}")));
    let natural_name = if big_n == 3 {
        "sl2".to_string()
    } else {
        format!("so{big_n}")
    };
    Raw {
        basis,
        gram: diag(&gram_d),
        simple_roots: simple,
        theta: wv(n, &[(0, qi(2))]),
        highest_odd_root: wv(n, &[(0, one()), (e(0), one())]),
        g_minus_half: gmh,
        components: vec![RawComponent {
            index: 1,
            name: natural_name.clone(),
            simple_roots: so,
            theta: Some(theta1),
            center: None,
            hbar_vee: hbar,
            chi,
        }],
        sdim: qi(3) + q(ni * (ni - 1), 2) - qi(2 * ni),
        h_vee: hv,
        natural_name,
    }
}

fn raw_d21a(a: Q) -> Raw {
    let n = 3;
    let m1 = -one();
    let g2 = -one() / (qi(2) * (one() + a));
    let g3 = -a / (qi(2) * (one() + a));
    let mut gmh = Vec::new();
    for s2 in [one(), m1] {
        for s3 in [one(), m1] {
            gmh.push(wv(n, &[(0, m1), (1, s2), (2, s3)]));
        }
    }
    Raw {
        basis: ["e1", "e2", "e3"].map(String::from).to_vec(),
        gram: diag(&[q(1, 2), g2, g3]),
        simple_roots: vec![
            (wv(n, &[(0, one()), (1, m1), (2, m1)]), true),
            (wv(n, &[(1, qi(2))]), false),
            (wv(n, &[(2, qi(2))]), false),
        ],
        theta: wv(n, &[(0, qi(2))]),
        highest_odd_root: wv(n, &[(0, one()), (1, one()), (2, one())]),
        g_minus_half: gmh,
        components: vec![
            RawComponent {
                index: 1,
                name: "sl2".into(),
                simple_roots: vec![wv(n, &[(1, qi(2))])],
                theta: Some(wv(n, &[(1, qi(2))])),
                center: None,
                hbar_vee: qi(-2) / (one() + a),
                chi: qi(-1),
            },
            RawComponent {
                index: 2,
                name: "sl2".into(),
                simple_roots: vec![wv(n, &[(2, qi(2))])],
                theta: Some(wv(n, &[(2, qi(2))])),
                center: None,
                hbar_vee: qi(-2) * a / (one() + a),
                chi: qi(-1),
            },
        ],
        sdim: qi(1),
        h_vee: qi(0),
        natural_name: "sl2+sl2".into(),
    }
}

fn raw_f4() -> Raw {
    let n = 4;
    let h = q(1, 2);
    let m1 = -one();
    let so7 = vec![
        wv(n, &[(3, one())]),
        wv(n, &[(2, one()), (3, m1)]),
        wv(n, &[(1, one()), (2, m1)]),
    ];
    let mut simple = vec![(wv(n, &[(0, h), (1, -h), (2, -h), (3, -h)]), true)];
    simple.extend(so7.iter().map(|a| (a.clone(), false)));
    let mut gmh = Vec::new();
    for s1 in [h, -h] {
        for s2 in [h, -h] {
            for s3 in [h, -h] {
                gmh.push(wv(n, &[(0, -h), (1, s1), (2, s2), (3, s3)]));
            }
        }
    }
    let ge = q(-2, 3);
    Raw {
        basis: ["d1", "e1", "e2", "e3"].map(String::from).to_vec(),
        gram: diag(&[qi(2), ge, ge, ge]),
        simple_roots: simple,
        theta: wv(n, &[(0, one())]),
        highest_odd_root: wv(n, &[(0, h), (1, h), (2, h), (3, h)]),
        g_minus_half: gmh,
        components: vec![RawComponent {
            index: 1,
            name: "so7".into(),
            simple_roots: so7,
            theta: Some(wv(n, &[(1, one()), (2, one())])),
            center: None,
            hbar_vee: q(-10, 3),
            chi: qi(-1),
        }],
        sdim: qi(8),
        h_vee: qi(-2),
        natural_name: "so7".into(),
    }
}

fn raw_g3() -> Raw {
    // Coordinates (δ1, ε1, ε2); ε3 = −ε1 − ε2 is eliminated.
    let n = 3;
    let m1 = -one();
    let g2 = vec![wv(n, &[(1, one())]), wv(n, &[(1, m1), (2, one())])];
    let mut simple = vec![(wv(n, &[(0, one()), (1, m1), (2, m1)]), true)];
    simple.extend(g2.iter().map(|a| (a.clone(), false)));
    let shifts: [(Q, Q); 7] = [
        (qi(0), qi(0)),
        (one(), qi(0)),
        (m1, qi(0)),
        (qi(0), one()),
        (qi(0), m1),
        (one(), one()),
        (m1, m1),
    ];
    let gmh = shifts
        .iter()
        .map(|&(a, b)| wv(n, &[(0, m1), (1, a), (2, b)]))
        .collect();
    let gram = vec![
        vec![q(1, 2), qi(0), qi(0)],
        vec![qi(0), q(-1, 2), q(1, 4)],
        vec![qi(0), q(1, 4), q(-1, 2)],
    ];
    Raw {
        basis: ["d1", "e1", "e2"].map(String::from).to_vec(),
        gram,
        simple_roots: simple,
        theta: wv(n, &[(0, qi(2))]),
        highest_odd_root: wv(n, &[(0, one()), (1, one()), (2, one())]),
        g_minus_half: gmh,
        components: vec![RawComponent {
            index: 1,
            name: "G2".into(),
            simple_roots: g2,
            theta: Some(wv(n, &[(1, one()), (2, qi(2))])),
            center: None,
            hbar_vee: qi(-3),
            chi: qi(-1),
        }],
        sdim: qi(3),
        h_vee: q(-3, 2),
        natural_name: "G2".into(),
    }
}

fn bilinear(gram: &Matrix, a: &Weight, b: &Weight) -> Q {
    let gb = mat_vec(gram, &b.0);
    a.0.iter().zip(&gb).map(|(x, y)| *x * *y).sum()
}

/// Positive roots of the reduced root system with the given simple roots,
/// by the usual string construction.
fn positive_roots(gram: &Matrix, simple: &[Weight]) -> Vec<Weight> {
    let r = simple.len();
    let cartan: Vec<Vec<i128>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let v = qi(2) * bilinear(gram, &simple[i], &simple[j])
                        / bilinear(gram, &simple[j], &simple[j]);
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    // Roots in simple-root coordinates, built level by level.
    let mut all: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut known: std::collections::HashSet<Vec<i128>> = all.iter().cloned().collect();
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..r {
                if beta
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == i128::from(i == j))
                {
                    continue;
                }
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i128 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    let n = simple.first().map_or(0, Weight::len);
    all.iter()
        .map(|c| {
            let mut w = Weight::zero(n);
            for (k, &ck) in c.iter().enumerate() {
                if ck != 0 {
                    w = &w + &simple[k].scale(qi(ck));
                }
            }
            w
        })
        .collect()
}

fn build(id: AlgebraId) -> Result<CatalogEntry> {
    let raw = match id.family {
        Family::Psl22 => raw_psl22(),
        Family::Sl2m => raw_sl2m(AlgebraId::sl2m(id.m)?.m as usize),
        Family::Spo2m => raw_spo(AlgebraId::spo2m(id.m)?.m as usize),
        Family::Osp4m => raw_osp4m(AlgebraId::osp4m(id.m)?.m as usize),
        Family::D21a => raw_d21a(AlgebraId::d21a(id.a_num, id.a_den)?.a()),
        Family::F4 => raw_f4(),
        Family::G3 => raw_g3(),
    };
    let gram = raw.gram;
    let n = raw.basis.len();
    let natural_simple_roots: Vec<Weight> = raw
        .components
        .iter()
        .flat_map(|c| c.simple_roots.iter().cloned())
        .collect();
    let mut natural_span = natural_simple_roots.clone();
    natural_span.extend(raw.components.iter().filter_map(|c| c.center.clone()));
    let span_gram: Matrix = natural_span
        .iter()
        .map(|a| natural_span.iter().map(|b| bilinear(&gram, a, b)).collect())
        .collect();
    let span_gram_inv = inverse(&span_gram).expect("form on h^natural is nondegenerate");
    let r = natural_simple_roots.len();
    let cartan_t: Matrix = (0..r)
        .map(|j| {
            (0..r)
                .map(|i| {
                    qi(2) * bilinear(&gram, &natural_simple_roots[i], &natural_simple_roots[j])
                        / bilinear(&gram, &natural_simple_roots[j], &natural_simple_roots[j])
                })
                .collect()
        })
        .collect();
    let cartan_t_inv = if r == 0 {
        vec![]
    } else {
        inverse(&cartan_t).expect("Cartan matrix")
    };

    let simple_roots: Vec<SimpleRoot> = raw
        .simple_roots
        .iter()
        .map(|(w, odd)| SimpleRoot {
            root: w.clone(),
            odd: *odd,
            isotropic: bilinear(&gram, w, w).is_zero(),
        })
        .collect();
    let iso_simple_count = simple_roots.iter().filter(|s| s.isotropic).count();

    // Weyl vector of g: (ρ|α) = (α|α)/2 on every simple root.
    let rows: Matrix = simple_roots
        .iter()
        .map(|s| mat_vec(&gram, &s.root.0))
        .collect();
    let rhs: Vec<Q> = simple_roots
        .iter()
        .map(|s| bilinear(&gram, &s.root, &s.root) / qi(2))
        .collect();
    let rho = Weight(solve(&rows, &rhs).expect("Weyl vector system is consistent"));

    let pos_roots_natural: Vec<Weight> = raw
        .components
        .iter()
        .flat_map(|c| {
            if c.simple_roots.is_empty() {
                vec![]
            } else {
                positive_roots(&gram, &c.simple_roots)
            }
        })
        .collect();
    let mut rho_natural = Weight::zero(n);
    for a in &pos_roots_natural {
        rho_natural = &rho_natural + &a.scale(q(1, 2));
    }

    let components = raw
        .components
        .into_iter()
        .map(|c| {
            let u = match &c.theta {
                Some(t) => bilinear(&gram, t, t),
                None => qi(2),
            };
            NaturalComponent {
                index: c.index,
                name: c.name,
                simple_roots: c.simple_roots,
                theta: c.theta,
                center: c.center,
                u,
                hbar_vee: c.hbar_vee,
                chi: c.chi,
            }
        })
        .collect();

    let mut entry = CatalogEntry {
        id,
        basis: raw.basis,
        gram,
        simple_roots,
        theta: raw.theta,
        sdim: raw.sdim,
        h_vee: raw.h_vee,
        natural_name: raw.natural_name,
        components,
        rho_natural,
        rho,
        xi: Weight::zero(n),
        highest_odd_root: raw.highest_odd_root,
        g_minus_half_roots: raw.g_minus_half,
        delta_prime: vec![],
        epsilon: 1,
        pos_roots_natural,
        iso_simple_count,
        natural_simple_roots,
        natural_span,
        span_gram_inv,
        cartan_t_inv,
    };
    entry.xi = entry.restrict(&entry.highest_odd_root);
    let mut counts: BTreeMap<Weight, u32> = BTreeMap::new();
    for g in &entry.g_minus_half_roots {
        *counts.entry(entry.restrict(g)).or_insert(0) += 1;
    }
    entry.delta_prime = counts.into_iter().collect();
    entry.epsilon = if entry.delta_prime.iter().any(|(w, _)| w.is_zero()) {
        2
    } else {
        1
    };
    Ok(entry)
}

fn cache() -> &'static Mutex<HashMap<AlgebraId, Arc<CatalogEntry>>> {
    static CACHE: OnceLock<Mutex<HashMap<AlgebraId, Arc<CatalogEntry>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Fetch the validated entry for `id`.
///
/// Entries are built on first use and cached. A failing self-check is a
/// bug in the tables and panics.
pub fn lookup(id: AlgebraId) -> Result<Arc<CatalogEntry>> {
    if let Some(e) = cache().lock().expect("catalog cache").get(&id) {
        return Ok(Arc::clone(e));
    }
    let entry = build(id)?;
    let report = validate(&entry);
    if let Some(bad) = report.checks.iter().find(|c| c.status == CheckStatus::Fail) {
        panic!(
            "catalog self-check {} failed for {}: {}",
            bad.name, id, bad.detail
        );
    }
    let arc = Arc::new(entry);
    cache()
        .lock()
        .expect("catalog cache")
        .insert(id, Arc::clone(&arc));
    Ok(arc)
}

impl CatalogEntry {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// (λ|μ) through the Gram matrix.
    pub fn form(&self, a: &Weight, b: &Weight) -> Q {
        bilinear(&self.gram, a, b)
    }

    /// λ(α^∨) = 2(λ|α)/(α|α).
    pub fn coroot_pairing(&self, lambda: &Weight, alpha: &Weight) -> Result<Q> {
        let n = self.form(alpha, alpha);
        if n.is_zero() {
            return Err(Error::IsotropicCoroot);
        }
        Ok(qi(2) * self.form(lambda, alpha) / n)
    }

    /// Orthogonal projection onto h^♮*.
    pub fn restrict(&self, lambda: &Weight) -> Weight {
        let b: Vec<Q> = self
            .natural_span
            .iter()
            .map(|s| self.form(lambda, s))
            .collect();
        let c = mat_vec(&self.span_gram_inv, &b);
        let mut out = Weight::zero(self.dim());
        for (ci, s) in c.iter().zip(&self.natural_span) {
            if !ci.is_zero() {
                out = &out + &s.scale(*ci);
            }
        }
        out
    }

    pub fn in_natural_span(&self, lambda: &Weight) -> bool {
        self.restrict(lambda) == *lambda
    }

    /// Whether λ lies in the span of the natural simple roots (no center
    /// part and nothing outside h^♮).
    pub fn in_natural_root_span(&self, lambda: &Weight) -> bool {
        let c = self.simple_root_coords(lambda);
        let mut w = Weight::zero(self.dim());
        for (ci, a) in c.iter().zip(&self.natural_simple_roots) {
            w = &w + &a.scale(*ci);
        }
        w == *lambda
    }

    pub fn component(&self, index: usize) -> Option<&NaturalComponent> {
        self.components.iter().find(|c| c.index == index)
    }

    /// The simple ideals (components with a highest root).
    pub fn simple_components(&self) -> impl Iterator<Item = &NaturalComponent> {
        self.components.iter().filter(|c| !c.is_center())
    }

    pub fn has_center(&self) -> bool {
        self.components.iter().any(NaturalComponent::is_center)
    }

    pub fn natural_rank(&self) -> usize {
        self.natural_span.len()
    }

    /// Dynkin labels ⟨λ, α_j^∨⟩ over the natural simple roots.
    pub fn labels(&self, lambda: &Weight) -> Vec<Q> {
        self.natural_simple_roots
            .iter()
            .map(|a| qi(2) * self.form(lambda, a) / self.form(a, a))
            .collect()
    }

    /// The weight in the span of the natural simple roots with the given
    /// Dynkin labels.
    pub fn from_labels(&self, labels: &[Q]) -> Result<Weight> {
        if labels.len() != self.natural_simple_roots.len() {
            return Err(Error::InvalidWeight(format!(
                "expected {} labels, got {}",
                self.natural_simple_roots.len(),
                labels.len()
            )));
        }
        let c = mat_vec(&self.cartan_t_inv, labels);
        let mut w = Weight::zero(self.dim());
        for (ci, a) in c.iter().zip(&self.natural_simple_roots) {
            w = &w + &a.scale(*ci);
        }
        Ok(w)
    }

    /// Coefficients of λ (restricted) in the natural simple roots; the
    /// center part is dropped.
    pub fn simple_root_coords(&self, lambda: &Weight) -> Vec<Q> {
        mat_vec(&self.cartan_t_inv, &self.labels(lambda))
    }

    /// The height ht(λ) = Σ_j c_j of λ = Σ_j c_j α_j as a linear
    /// functional on Dynkin labels.
    pub fn height_functional(&self) -> Vec<Q> {
        let n = self.natural_simple_roots.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.cartan_t_inv[j][i]).sum())
            .collect()
    }

    /// Whether this family appears in the ε / ρ^♮ table.
    pub fn in_rho_table(&self) -> bool {
        !matches!(self.id.family, Family::Sl2m | Family::Osp4m)
    }

    /// max over γ ∈ Δ′ of (ρ^♮|γ).
    pub fn max_rho_gamma(&self) -> Q {
        self.delta_prime
            .iter()
            .map(|(g, _)| self.form(&self.rho_natural, g))
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// Reflection of λ in a non-isotropic root α.
    pub fn reflect(&self, lambda: &Weight, alpha: &Weight) -> Weight {
        let c = qi(2) * self.form(lambda, alpha) / self.form(alpha, alpha);
        lambda - &alpha.scale(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub id: AlgebraId,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

/// Internal consistency of an entry against its own root data.
pub fn validate(e: &CatalogEntry) -> ValidationReport {
    let mut checks = Vec::new();
    let push = |checks: &mut Vec<Check>, name: String, ok: bool, detail: String| {
        checks.push(Check {
            name,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail,
        })
    };

    let tt = e.form(&e.theta, &e.theta);
    push(
        &mut checks,
        "theta_norm".into(),
        tt == qi(2),
        format!("(theta|theta) = {tt}"),
    );

    let rt = e.form(&e.rho, &e.theta) + Q::one();
    push(
        &mut checks,
        "h_vee".into(),
        rt == e.h_vee,
        format!("(rho|theta)+1 = {rt}, stored {}", e.h_vee),
    );

    for c in &e.components {
        let chi_formula = (e.h_vee - c.hbar_vee) / c.u;
        push(
            &mut checks,
            format!("chi_{}_levels", c.index),
            chi_formula == c.chi,
            format!("(h_vee - hbar)/u = {chi_formula}, stored {}", c.chi),
        );
        let Some(theta_i) = &c.theta else { continue };
        let hb = e.form(&e.rho_natural, theta_i) + c.u / qi(2);
        push(
            &mut checks,
            format!("hbar_{}", c.index),
            hb == c.hbar_vee,
            format!("(rho_nat|theta_i)+u/2 = {hb}, stored {}", c.hbar_vee),
        );
        let orth = e.form(theta_i, &e.theta);
        push(
            &mut checks,
            format!("eta_{}", c.index),
            orth.is_zero() && !c.u.is_zero() && e.pos_roots_natural.contains(theta_i),
            format!("(theta_i|theta) = {orth}, u = {}", c.u),
        );
        let highest = c
            .simple_roots
            .iter()
            .all(|a| !e.pos_roots_natural.contains(&(theta_i + a)));
        push(
            &mut checks,
            format!("theta_{}_highest", c.index),
            highest,
            String::new(),
        );
        let pxi = e
            .coroot_pairing(&e.xi, theta_i)
            .unwrap_or_else(|_| Q::zero());
        if e.id.family == Family::Osp4m && c.index == 1 {
            checks.push(Check {
                name: format!("chi_{}_xi", c.index),
                status: CheckStatus::Skipped,
                detail: format!(
                    "exception: stored chi = {}, -xi(theta^vee) = {}",
                    c.chi, -pxi
                ),
            });
            continue;
        }
        push(
            &mut checks,
            format!("chi_{}_xi", c.index),
            c.chi == -pxi,
            format!("-xi(theta^vee) = {}, stored {}", -pxi, c.chi),
        );
    }

    if e.in_rho_table() {
        let mx = e.max_rho_gamma();
        let lhs = qi(2) * mx + e.h_vee;
        push(
            &mut checks,
            "rho_gamma_identity".into(),
            lhs == Q::one(),
            format!("max(rho|gamma) = {mx}, 2max+h_vee = {lhs}"),
        );
    }

    let dominant = e
        .labels(&e.xi)
        .iter()
        .all(|x| !x.is_negative() && x.is_integer());
    push(
        &mut checks,
        "xi_dominant".into(),
        dominant,
        format!("labels {:?}", e.labels(&e.xi)),
    );
    let xi_in = e.delta_prime.iter().any(|(w, _)| *w == e.xi);
    push(
        &mut checks,
        "xi_in_delta_prime".into(),
        xi_in,
        String::new(),
    );
    // With a center, g_{-1/2} splits into pieces of different central
    // charge, so only pieces sharing the center value of ξ are comparable.
    let xi_max = e
        .delta_prime
        .iter()
        .filter(|(g, _)| e.in_natural_root_span(&(&e.xi - g)))
        .all(|(g, _)| {
            e.simple_root_coords(&(&e.xi - g))
                .iter()
                .all(|c| !c.is_negative())
        });
    push(&mut checks, "xi_highest".into(), xi_max, String::new());

    let closed = e.natural_simple_roots.iter().all(|a| {
        e.delta_prime.iter().all(|(g, mult)| {
            let s = e.reflect(g, a);
            e.delta_prime.iter().any(|(h, m2)| *h == s && m2 == mult)
        })
    });
    push(
        &mut checks,
        "delta_prime_weyl_closed".into(),
        closed,
        String::new(),
    );

    let grading = e
        .g_minus_half_roots
        .iter()
        .all(|g| e.form(g, &e.theta) == -Q::one());
    push(
        &mut checks,
        "g_minus_half_grading".into(),
        grading,
        String::new(),
    );

    let half_sum: Weight = {
        let mut w = Weight::zero(e.dim());
        for a in &e.pos_roots_natural {
            w = &w + &a.scale(q(1, 2));
        }
        w
    };
    let rho_nat_simple = e
        .natural_simple_roots
        .iter()
        .all(|a| e.form(&half_sum, a) == e.form(a, a) / qi(2));
    push(
        &mut checks,
        "rho_natural".into(),
        rho_nat_simple && e.in_natural_span(&e.rho_natural),
        String::new(),
    );
    push(
        &mut checks,
        "rho_restricts".into(),
        e.restrict(&e.rho) == e.rho_natural,
        format!("rho = {}", e.rho),
    );

    let even_simple_natural = e
        .simple_roots
        .iter()
        .filter(|s| !s.odd)
        .all(|s| e.natural_simple_roots.contains(&s.root));
    push(
        &mut checks,
        "natural_simple_in_g".into(),
        even_simple_natural,
        String::new(),
    );

    let iso_restrict = e
        .simple_roots
        .iter()
        .filter(|s| s.isotropic)
        .all(|s| e.restrict(&s.root) == -&e.xi && e.form(&s.root, &e.theta) == Q::one());
    if e.has_center() {
        // The two isotropic simple roots differ on the center.
        checks.push(Check {
            name: "isotropic_simple_restrict".into(),
            status: CheckStatus::Skipped,
            detail: "g^natural has a center".into(),
        });
    } else {
        push(
            &mut checks,
            "isotropic_simple_restrict".into(),
            iso_restrict,
            String::new(),
        );
    }

    ValidationReport { id: e.id, checks }
}

/// Every id with small parameters, for sweeps in tests and tools.
pub fn sample_ids() -> Vec<AlgebraId> {
    let mut v = vec![AlgebraId::psl22(), AlgebraId::f4(), AlgebraId::g3()];
    for m in 3..=6 {
        v.push(AlgebraId::sl2m(m).unwrap());
    }
    for m in [3, 5, 6, 7, 8] {
        v.push(AlgebraId::spo2m(m).unwrap());
    }
    for m in [4, 6, 8] {
        v.push(AlgebraId::osp4m(m).unwrap());
    }
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 3), (3, 4), (4, 1)] {
        v.push(AlgebraId::d21a(a, b).unwrap());
    }
    v
}
