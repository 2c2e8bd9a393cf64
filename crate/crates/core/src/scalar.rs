//! Exact scalars over ℚ and 𝔽_p.
//!
//! Rationals are kept in a machine-word representation while numerator and
//! denominator fit in `i64`, and promoted to arbitrary precision otherwise.
//! Every operation re-normalizes, so two equal rationals always have the same
//! representation and derived equality is sound.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields. Keeps products inside `u128` and
/// the primality check cheap.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Checked constructor for 𝔽_p.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals if v == i64::MIN => Scalar::Q(Rational::from_big(BigRational::from_integer(v.into()))),
            Field::Rationals => Scalar::Q(Rational::Small(Ratio::from_integer(v))),
            Field::Prime(p) => Scalar::Fp { value: v.rem_euclid(p as i64) as u64, p },
        }
    }

    /// Builds `num/den` in this field. Fails when `den` is zero or not
    /// invertible mod p.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        match self {
            Field::Rationals => Ok(Scalar::Q(Rational::from_big(BigRational::new(num.clone(), den.clone())))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = residue(num, &pb);
                let d = residue(den, &pb);
                if d == 0 {
                    return Err(Error::Parse(format!("denominator {den} vanishes mod {p}")));
                }
                let n = Scalar::Fp { value: n, p };
                let d = Scalar::Fp { value: d, p };
                Ok(&n / &d)
            }
        }
    }

    /// Parses `"a/b"` or `"a"`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        self.from_fraction(&num, &den)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `Fp:p`, `Fp(p)` or `F<p>`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("Fp(").and_then(|r| r.strip_suffix(')')))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| Error::InvalidField(s.to_string()))?;
        Field::prime(p)
    }
}

/// JSON form of a field: `"Q"` or `{"Fp": p}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Field::Rationals => FieldRepr::Named("Q".into()).serialize(s),
            Field::Prime(p) => FieldRepr::Prime { fp: p }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match FieldRepr::deserialize(d)? {
            FieldRepr::Named(n) => n.parse().map_err(serde::de::Error::custom),
            FieldRepr::Prime { fp } => Field::prime(fp).map_err(serde::de::Error::custom),
        }
    }
}

fn residue(v: &BigInt, p: &BigInt) -> u64 {
    let r = ((v % p) + p) % p;
    r.to_u64().expect("residue below modulus")
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact rational, canonical: `Small` whenever both parts fit in `i64` and
/// neither is `i64::MIN`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rational::Small(Ratio::new_raw(n, d)),
            _ => Rational::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rational::Big(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_zero(),
            Rational::Big(r) => r.is_zero(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.numer()),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.denom()),
            Rational::Big(r) => r.denom().clone(),
        }
    }
}

macro_rules! rational_op {
    ($name:ident, $checked:ident, $op:tt) => {
        fn $name(a: &Rational, b: &Rational) -> Rational {
            if let (Rational::Small(x), Rational::Small(y)) = (a, b) {
                if let Some(r) = x.$checked(y) {
                    if *r.numer() != i64::MIN && *r.denom() != i64::MIN {
                        return Rational::Small(r);
                    }
                }
            }
            Rational::from_big(a.to_big() $op b.to_big())
        }
    };
}

rational_op!(rat_add, checked_add, +);
rational_op!(rat_sub, checked_sub, -);
rational_op!(rat_mul, checked_mul, *);
rational_op!(rat_div, checked_div, /);

/// An element of ℚ or 𝔽_p. Mixing fields in one operation is a programming
/// error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(Rational::Small(r)) => r.is_one(),
            Scalar::Q(Rational::Big(_)) => false,
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(r) => Scalar::Q(rat_div(&Rational::Small(Ratio::one()), r)),
            Scalar::Fp { value, p } => Scalar::Fp { value: pow_mod(*value, p - 2, *p), p: *p },
        })
    }

    /// `"num/den"`; for 𝔽_p the canonical residue over 1.
    pub fn encode(&self) -> String {
        match self {
            Scalar::Q(r) => format!("{}/{}", r.numer(), r.denom()),
            Scalar::Fp { value, .. } => format!("{value}/1"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                let d = r.denom();
                if d.is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), d)
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

fn same_prime(p: u64, q: u64) -> u64 {
    assert_eq!(p, q, "scalar field mismatch: F{p} vs F{q}");
    p
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(rat_add(a, b)),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Fp { value: (a + b) % p, p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(rat_sub(a, b)),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Fp { value: (a + p - b) % p, p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(rat_mul(a, b)),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Fp { value: ((*a as u128 * *b as u128) % p as u128) as u64, p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(Rational::Small(r)) => Scalar::Q(Rational::Small(-*r)),
            Scalar::Q(r) => Scalar::Q(Rational::from_big(-r.to_big())),
            Scalar::Fp { value, p } => Scalar::Fp { value: (p - value) % p, p: *p },
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
