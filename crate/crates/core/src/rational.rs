//! Exact scalars: rationals over `i128` and Gaussian rationals.
//!
//! Rationals print as `p/q` (or `p` when integral) and parse from the same
//! shape. Decimal points and exponents are rejected on purpose.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The exact rational type used throughout the crate.
pub type Q = Ratio<i128>;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// The integer `n` as a rational.
pub fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational")]
    Empty,
    #[error("malformed rational {0:?}: expected p or p/q with integer p, q")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("integer overflow in {0:?}")]
    Overflow(String),
}

fn parse_int(part: &str, whole: &str, allow_sign: bool) -> Result<i128, ParseRationalError> {
    let digits = match part.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        _ => part,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed(whole.to_string()));
    }
    part.parse::<i128>()
        .map_err(|_| ParseRationalError::Overflow(whole.to_string()))
}

/// Parse `p` or `p/q`. Only a leading minus on `p` is accepted.
pub fn parse_rational(s: &str) -> Result<Q, ParseRationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let mut pieces = t.splitn(2, '/');
    let num = parse_int(pieces.next().unwrap_or(""), t, true)?;
    let den = match pieces.next() {
        None => 1,
        Some(d) => parse_int(d, t, false)?,
    };
    if den == 0 {
        return Err(ParseRationalError::ZeroDenominator(t.to_string()));
    }
    Ok(Q::new(num, den))
}

/// Canonical text form: `p/q`, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// `Some(n)` when `x` is an integer.
pub fn as_integer(x: &Q) -> Option<i128> {
    x.is_integer().then(|| x.to_integer())
}

/// Exact square root of a non-negative rational, when it is rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = isqrt(*x.numer())?;
    let d = isqrt(*x.denom())?;
    Some(Q::new(n, d))
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Serde adapters that store rationals as strings.
pub mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&fmt_q(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(de::Error::custom))
                .collect()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&fmt_q(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
            let v = Option::<String>::deserialize(d)?;
            v.map(|s| parse_rational(&s).map_err(de::Error::custom))
                .transpose()
        }
    }
}

/// A Gaussian rational `re + im·i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gq {
    pub re: Q,
    pub im: Q,
}

impl Gq {
    pub fn new(re: Q, im: Q) -> Self {
        Gq { re, im }
    }

    pub fn real(re: Q) -> Self {
        Gq { re, im: Q::zero() }
    }

    /// `im·i`.
    pub fn imag(im: Q) -> Self {
        Gq { re: Q::zero(), im }
    }

    pub fn conj(self) -> Self {
        Gq {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn scale(self, c: Q) -> Self {
        Gq {
            re: self.re * c,
            im: self.im * c,
        }
    }

    pub fn is_purely_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for Gq {
    fn zero() -> Self {
        Gq::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gq {
    fn one() -> Self {
        Gq::real(Q::one())
    }
}

impl From<Q> for Gq {
    fn from(x: Q) -> Self {
        Gq::real(x)
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, o: Gq) -> Gq {
        Gq {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl AddAssign for Gq {
    fn add_assign(&mut self, o: Gq) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, o: Gq) -> Gq {
        Gq {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, o: Gq) -> Gq {
        Gq {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -self.im),
            _ => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}
