//! Free-boson Fock modules with exact mode matrices, the Fairlie deformed
//! Virasoro field, and the low-level Gram norms of W-algebra modules.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, AlgebraId, Weight};
use crate::error::{Error, Result};
use crate::levels::level_data;
use crate::rational::{qi, Gq, Q};
use crate::weights::casimir;

/// The monomial ∏ a_{−j}^{i_j} v_μ, stored as j ↦ i_j with i_j > 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct BosonState {
    pub parts: BTreeMap<u32, u32>,
}

impl BosonState {
    pub fn vacuum() -> Self {
        BosonState::default()
    }

    pub fn from_parts(parts: &[(u32, u32)]) -> Self {
        let mut s = BosonState::default();
        for &(j, i) in parts {
            if i > 0 {
                *s.parts.entry(j).or_insert(0) += i;
            }
        }
        s
    }

    pub fn energy(&self) -> u32 {
        self.parts.iter().map(|(j, i)| j * i).sum()
    }

    fn multiplicity(&self, j: u32) -> u32 {
        self.parts.get(&j).copied().unwrap_or(0)
    }

    fn with_delta(&self, j: u32, plus: bool) -> BosonState {
        let mut s = self.clone();
        let slot = s.parts.entry(j).or_insert(0);
        if plus {
            *slot += 1;
        } else {
            *slot -= 1;
            if *slot == 0 {
                s.parts.remove(&j);
            }
        }
        s
    }
}

/// Monomials of energy `e`, one per partition of `e`.
pub fn boson_basis(e: u32) -> Vec<BosonState> {
    fn rec(rest: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<BosonState>) {
        if rest == 0 {
            let mut s = BosonState::default();
            for &j in cur.iter() {
                *s.parts.entry(j).or_insert(0) += 1;
            }
            out.push(s);
            return;
        }
        for j in (1..=max_part.min(rest)).rev() {
            cur.push(j);
            rec(rest - j, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

/// ∏_j i_j!·j^{i_j}.
pub fn boson_norm(s: &BosonState) -> Q {
    let mut n = Q::one();
    for (&j, &i) in &s.parts {
        for t in 1..=i {
            n *= qi(t as i128) * qi(j as i128);
        }
    }
    n
}

/// H(u, v) from the invariance H(a_{−j}x, y) = H(x, a_j y) and
/// H(v_μ, v_μ) = 1, computed without using orthogonality.
pub fn gram_entry(u: &BosonState, v: &BosonState, mu: Q) -> Gq {
    if u.energy() != v.energy() {
        return Gq::zero();
    }
    let Some((&j, _)) = u.parts.iter().next() else {
        return if v.parts.is_empty() { Gq::one() } else { Gq::zero() };
    };
    let rest = u.with_delta(j, false);
    let mut x: Vector = BTreeMap::new();
    x.insert(v.clone(), Gq::one());
    let y = apply_heisenberg(j as i64, mu, &x);
    let mut acc = Gq::zero();
    for (w, c) in y {
        acc += c * gram_entry(&rest, &w, mu);
    }
    acc
}

pub type Vector = BTreeMap<BosonState, Gq>;
pub type Matrix = Vec<Vec<Gq>>;

fn add_to(v: &mut Vector, s: BosonState, c: Gq) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(s.clone()).or_insert_with(Gq::zero);
    *slot += c;
    if slot.is_zero() {
        v.remove(&s);
    }
}

/// a_p acting on a vector of M(μ).
pub fn apply_heisenberg(p: i64, mu: Q, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (s, c) in v {
        match p.cmp(&0) {
            std::cmp::Ordering::Less => add_to(&mut out, s.with_delta((-p) as u32, true), *c),
            std::cmp::Ordering::Equal => add_to(&mut out, s.clone(), c.scale(mu)),
            std::cmp::Ordering::Greater => {
                let i = s.multiplicity(p as u32);
                if i > 0 {
                    add_to(&mut out, s.with_delta(p as u32, false), c.scale(qi(p as i128 * i as i128)));
                }
            }
        }
    }
    out
}

fn add_vec(a: &mut Vector, b: Vector, c: Gq) {
    for (s, x) in b {
        add_to(a, s, x * c);
    }
}

/// The quadratic field L_n = Σ_{p<q, p+q=n} a_p a_q + ½a_{n/2}² + β_n a_n
/// + γ δ_{n,0}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    /// The Heisenberg mode a_n itself.
    Heisenberg,
    /// Fairlie: β_n = −s·n, γ = −s²/2.
    Fairlie { s: GqSer },
    /// L(t) = L(0) + t·Ta: β_n = −t(n+1), γ = 0.
    Deformed { t: GqSer },
}

/// Serializable Gaussian rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GqSer {
    #[serde(with = "crate::rational::serde_q")]
    pub re: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub im: Q,
}

impl From<Gq> for GqSer {
    fn from(g: Gq) -> Self {
        GqSer { re: g.re, im: g.im }
    }
}

impl From<GqSer> for Gq {
    fn from(g: GqSer) -> Self {
        Gq::new(g.re, g.im)
    }
}

impl Field {
    fn linear_and_constant(&self, n: i64) -> (Gq, Gq) {
        match *self {
            Field::Heisenberg => (Gq::one(), Gq::zero()),
            Field::Fairlie { s } => {
                let s: Gq = s.into();
                let gamma = if n == 0 { -(s * s).scale(Q::new(1, 2)) } else { Gq::zero() };
                (-s.scale(qi(n as i128)), gamma)
            }
            Field::Deformed { t } => (-Gq::from(t).scale(qi(n as i128 + 1)), Gq::zero()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Field::Heisenberg => "a",
            Field::Fairlie { .. } => "L(s)",
            Field::Deformed { .. } => "L(t)",
        }
    }
}

/// The mode `n` of `field` acting on `v` in M(μ).
pub fn apply_mode(field: Field, n: i64, mu: Q, v: &Vector) -> Vector {
    let (beta, gamma) = field.linear_and_constant(n);
    if field == Field::Heisenberg {
        return apply_heisenberg(n, mu, v);
    }
    let top = v.keys().map(BosonState::energy).max().unwrap_or(0) as i64;
    let mut out = Vector::new();
    // q runs over n/2 < q; a_q kills everything once q exceeds the energy.
    let lo = n.div_euclid(2) + 1;
    for qq in lo..=top.max(lo) {
        let p = n - qq;
        if p >= qq {
            continue;
        }
        let w = apply_heisenberg(p, mu, &apply_heisenberg(qq, mu, v));
        add_vec(&mut out, w, Gq::one());
    }
    if n % 2 == 0 {
        let h = n / 2;
        let w = apply_heisenberg(h, mu, &apply_heisenberg(h, mu, v));
        add_vec(&mut out, w, Gq::real(Q::new(1, 2)));
    }
    add_vec(&mut out, apply_heisenberg(n, mu, v), beta);
    if !gamma.is_zero() {
        add_vec(&mut out, v.clone(), gamma);
    }
    out
}

/// Matrix blocks of one mode between energy slices of M(μ), indexed by
/// source energy. Block E maps slice E to slice E − n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSliceOperator {
    pub field: Field,
    pub n: i64,
    pub mu: Q,
    pub e_max: u32,
    pub blocks: BTreeMap<u32, Matrix>,
}

impl GradedSliceOperator {
    pub fn build(field: Field, n: i64, mu: Q, e_max: u32) -> Self {
        let mut blocks = BTreeMap::new();
        for e in 0..=e_max {
            let target = e as i64 - n;
            if target < 0 || target > e_max as i64 {
                continue;
            }
            let src = boson_basis(e);
            let dst = boson_basis(target as u32);
            let index: HashMap<&BosonState, usize> = dst.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut m = vec![vec![Gq::zero(); src.len()]; dst.len()];
            for (c, s) in src.iter().enumerate() {
                let mut v = Vector::new();
                v.insert(s.clone(), Gq::one());
                for (w, x) in apply_mode(field, n, mu, &v) {
                    m[index[&w]][c] = x;
                }
            }
            blocks.insert(e, m);
        }
        GradedSliceOperator { field, n, mu, e_max, blocks }
    }

    pub fn block(&self, source: u32) -> Option<&Matrix> {
        self.blocks.get(&source)
    }
}

pub fn heisenberg_matrix(n: i64, mu: Q, e_max: u32) -> GradedSliceOperator {
    GradedSliceOperator::build(Field::Heisenberg, n, mu, e_max)
}

pub fn fairlie_matrix(s: Gq, mu: Q, n: i64, e_max: u32) -> GradedSliceOperator {
    GradedSliceOperator::build(Field::Fairlie { s: s.into() }, n, mu, e_max)
}

pub fn deformed_matrix(t: Gq, mu: Q, n: i64, e_max: u32) -> GradedSliceOperator {
    GradedSliceOperator::build(Field::Deformed { t: t.into() }, n, mu, e_max)
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.len();
    let cols = b.first().map_or(0, Vec::len);
    let inner = b.len();
    let mut out = vec![vec![Gq::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn mat_lin(a: &Matrix, ca: Gq, b: &Matrix, cb: Gq) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| *x * ca + *y * cb).collect())
        .collect()
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Gq::one() } else { Gq::zero() }).collect())
        .collect()
}

fn conj_transpose(a: &Matrix, rows_of_result: usize) -> Matrix {
    let cols = a.len();
    (0..rows_of_result)
        .map(|i| (0..cols).map(|j| a[j][i].conj()).collect())
        .collect()
}

fn gram_diag(e: u32) -> Vec<Q> {
    boson_basis(e).iter().map(boson_norm).collect()
}

/// [L_n, L_m] = (n−m)L_{n+m} + (n³−n)/12·(1−12s²)δ_{n,−m} on every slice
/// where all intermediate slices lie in [0, E_max].
pub fn virasoro_check(s: Gq, mu: Q, n: i64, m: i64, e_max: u32) -> Result<bool> {
    if n.abs() + m.abs() > e_max as i64 - 1 {
        return Err(Error::WindowTooSmall(format!(
            "|n| + |m| = {} exceeds E_max - 1 = {}",
            n.abs() + m.abs(),
            e_max as i64 - 1
        )));
    }
    let ln = fairlie_matrix(s, mu, n, e_max);
    let lm = fairlie_matrix(s, mu, m, e_max);
    let lnm = fairlie_matrix(s, mu, n + m, e_max);
    let c = Gq::one() - (s * s).scale(qi(12));
    let central = if n + m == 0 { c.scale(Q::new((n * n * n - n) as i128, 12)) } else { Gq::zero() };
    let inside = |x: i64| (0..=e_max as i64).contains(&x);
    for e in 0..=e_max {
        let e = e as i64;
        if !(inside(e - m) && inside(e - n) && inside(e - n - m)) {
            continue;
        }
        let (eu, mu_, nu_) = (e as u32, (e - m) as u32, (e - n) as u32);
        let lhs = mat_lin(
            &mat_mul(ln.block(mu_).expect("block"), lm.block(eu).expect("block")),
            Gq::one(),
            &mat_mul(lm.block(nu_).expect("block"), ln.block(eu).expect("block")),
            -Gq::one(),
        );
        let base = lnm.block(eu).expect("block");
        let mut rhs = mat_lin(base, Gq::real(qi((n - m) as i128)), base, Gq::zero());
        if n + m == 0 {
            rhs = mat_lin(&rhs, Gq::one(), &identity(rhs.len()), central);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// G·L_n = (L_{−n})^†·G on every slice pair, G the diagonal Gram matrix.
/// Holds for purely imaginary s; a real part breaks it.
pub fn adjointness_check(s: Gq, mu: Q, n: i64, e_max: u32) -> bool {
    let ln = fairlie_matrix(s, mu, n, e_max);
    let lmn = fairlie_matrix(s, mu, -n, e_max);
    adjoint_pair(&ln, &lmn, n)
}

/// H(m, a_n m′) = H(a_{−n}m, m′) for real μ.
pub fn heisenberg_adjointness_check(mu: Q, n: i64, e_max: u32) -> bool {
    adjoint_pair(&heisenberg_matrix(n, mu, e_max), &heisenberg_matrix(-n, mu, e_max), n)
}

fn adjoint_pair(ln: &GradedSliceOperator, lmn: &GradedSliceOperator, n: i64) -> bool {
    for (&e, a) in &ln.blocks {
        let t = (e as i64 - n) as u32;
        let Some(b) = lmn.block(t) else { continue };
        let g_src = gram_diag(e);
        let g_dst = gram_diag(t);
        // G_t·A against B^†·G_e, with A: e → t and B: t → e.
        let left: Matrix = a
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|x| x.scale(g_dst[i])).collect())
            .collect();
        let bd = conj_transpose(b, a.len());
        let right: Matrix = bd
            .iter()
            .map(|row| row.iter().enumerate().map(|(j, x)| x.scale(g_src[j])).collect())
            .collect();
        if left != right {
            return false;
        }
    }
    true
}

/// On the vacuum module M(0): L(t)_1^n(a_{−m}) = L(0)_1^n(a_{−m}) −
/// 2·n!·δ_{n,m}·t for 1 ≤ n ≤ n_max, 1 ≤ m ≤ m_max.
pub fn exp_factorization_check(t: Gq, n_max: u32, m_max: u32) -> bool {
    let lt = Field::Deformed { t: t.into() };
    let l0 = Field::Deformed { t: Gq::zero().into() };
    for m in 1..=m_max {
        let mut start = Vector::new();
        start.insert(BosonState::from_parts(&[(m, 1)]), Gq::one());
        let (mut a, mut b) = (start.clone(), start);
        let mut fact = Q::one();
        for n in 1..=n_max {
            fact *= qi(n as i128);
            a = apply_mode(lt, 1, Q::zero(), &a);
            b = apply_mode(l0, 1, Q::zero(), &b);
            let mut expect = b.clone();
            if n == m {
                add_to(&mut expect, BosonState::vacuum(), t.scale(-qi(2) * fact));
            }
            if a != expect {
                return false;
            }
        }
    }
    true
}

/// ‖G^{v}_{−1/2}v_{ν,ℓ_0}‖² with ⟨φ(v),v⟩ = 1.
pub fn g_half_norm(id: AlgebraId, k: Q, nu: &Weight, l0: Q) -> Result<Q> {
    let e = lookup(id)?;
    let s = k + e.h_vee;
    if s.is_zero() {
        return Err(Error::CriticalLevel(k));
    }
    let xn = e.form(&e.xi, nu);
    Ok(-qi(2) * s * l0 + casimir(&e, nu) - qi(2) * (k + Q::one()) * xn + qi(2) * xn * xn)
}

/// (ν+ξ)(θ_i^∨) − M_i(k): the sign-carrying factor of
/// ‖J^{u}_{−1}G^{v}_{−1/2}v‖² relative to ‖G^{v}_{−1/2}v‖², u a θ_i root
/// vector, with the positive constant (θ_i|θ_i)(φ(u)|u)/2 dropped.
pub fn j_g_ratio(id: AlgebraId, k: Q, nu: &Weight, i: usize) -> Result<Q> {
    let e = lookup(id)?;
    let ld = level_data(id, k)?;
    let c = e
        .component(i)
        .filter(|c| !c.is_center())
        .ok_or_else(|| Error::IndexOutOfRange(format!("{} has no simple component {i}", e.id)))?;
    let t = c.theta.as_ref().expect("simple component");
    let m = ld.m(i).expect("level of a simple component");
    Ok(e.coroot_pairing(&(nu + &e.xi), t)? - m)
}
