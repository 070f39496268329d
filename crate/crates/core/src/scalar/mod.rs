//! Exact scalars: rationals, prime fields and cyclotomic fields.

mod cyclotomic;
pub mod linalg;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};

use crate::error::{Error, Result};

/// The coefficient domain a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    Prime(u64),
    Cyclotomic(u32),
}

impl ScalarKind {
    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            ScalarKind::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            ScalarKind::Prime(p) => Scalar::Prime {
                p,
                r: v.rem_euclid(p as i64) as u64,
            },
            ScalarKind::Cyclotomic(m) => Scalar::Cyclotomic(Cyclotomic::from_integer(m, v)),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            ScalarKind::Rational => Ok(Scalar::Rational(q.clone())),
            ScalarKind::Cyclotomic(m) => Ok(Scalar::Cyclotomic(Cyclotomic::from_rational(m, q))),
            ScalarKind::Prime(p) => {
                let n = self.integer(q.numer());
                let d = self.integer(q.denom());
                if d.is_zero() {
                    return Err(Error::input("scalar", format!("denominator divisible by {p}")));
                }
                n.checked_mul(&d.checked_inv()?)
            }
        }
    }

    fn integer(&self, v: &BigInt) -> Scalar {
        match *self {
            ScalarKind::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let r: u64 = r.try_into().expect("residue fits");
                Scalar::Prime { p, r }
            }
            _ => self
                .from_rational(&BigRational::from_integer(v.clone()))
                .expect("integer embeds"),
        }
    }

    /// A primitive `m`-th root of unity raised to `e`, when the field has one.
    pub fn root_of_unity(&self, m: u32, e: i64) -> Result<Scalar> {
        if m == 0 {
            return Err(Error::input("m", "root of unity of order 0"));
        }
        let e = e.rem_euclid(m as i64);
        match *self {
            ScalarKind::Cyclotomic(n) => {
                if n % m != 0 {
                    return Err(Error::KindMismatch(format!(
                        "Q(zeta_{n}) has no primitive {m}-th root of unity"
                    )));
                }
                Ok(Scalar::Cyclotomic(Cyclotomic::root_of_unity(
                    n,
                    e * (n / m) as i64,
                )?))
            }
            ScalarKind::Rational => match (m, e) {
                (_, 0) => Ok(self.one()),
                (2, 1) => Ok(self.from_i64(-1)),
                _ => Err(Error::KindMismatch(format!(
                    "Q has no primitive {m}-th root of unity"
                ))),
            },
            ScalarKind::Prime(p) => {
                if (p - 1) % m as u64 != 0 {
                    return Err(Error::KindMismatch(format!(
                        "F_{p} has no primitive {m}-th root of unity"
                    )));
                }
                let g = primitive_root(p);
                let zeta = pow_mod(g, (p - 1) / m as u64, p);
                Ok(Scalar::Prime {
                    p,
                    r: pow_mod(zeta, e as u64, p),
                })
            }
        }
    }

    pub fn parse(tag: &str) -> Result<Self> {
        let bad = || Error::input("coeff", format!("expected Q, Fp:<p> or Cyc:<m>, got `{tag}`"));
        if tag == "Q" {
            return Ok(ScalarKind::Rational);
        }
        if let Some(p) = tag.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| bad())?;
            if !is_prime(p) || p >= 1 << 31 {
                return Err(Error::input("coeff", format!("{p} is not a supported prime")));
            }
            return Ok(ScalarKind::Prime(p));
        }
        if let Some(m) = tag.strip_prefix("Cyc:") {
            let m: u32 = m.parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            return Ok(ScalarKind::Cyclotomic(m));
        }
        Err(bad())
    }

    pub fn tag(&self) -> String {
        match self {
            ScalarKind::Rational => "Q".into(),
            ScalarKind::Prime(p) => format!("Fp:{p}"),
            ScalarKind::Cyclotomic(m) => format!("Cyc:{m}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have primitive roots")
}

/// An exact scalar. Arithmetic operators panic when kinds differ; the
/// `checked_*` methods report the mismatch instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u64, r: u64 },
    Cyclotomic(Cyclotomic),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Prime { p, .. } => ScalarKind::Prime(*p),
            Scalar::Cyclotomic(c) => ScalarKind::Cyclotomic(c.order()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { r, .. } => *r == 0,
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { r, .. } => *r == 1,
            Scalar::Cyclotomic(c) => c.is_one(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::KindMismatch(format!("{} vs {}", self.kind().tag(), other.kind().tag()))
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Prime { p, r }, Scalar::Prime { p: q, r: s }) if p == q => Ok(Scalar::Prime {
                p: *p,
                r: (r + s) % p,
            }),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Ok(Scalar::Cyclotomic(a.try_add(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Prime { p, r }, Scalar::Prime { p: q, r: s }) if p == q => Ok(Scalar::Prime {
                p: *p,
                r: ((*r as u128 * *s as u128) % *p as u128) as u64,
            }),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Ok(Scalar::Cyclotomic(a.try_mul(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { p, r } => Scalar::Prime {
                p: *p,
                r: pow_mod(*r, p - 2, *p),
            },
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.try_inv()?),
        })
    }

    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { p, r } => Scalar::Prime {
                p: *p,
                r: (p - r) % p,
            },
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.kind().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer value, when the scalar is a rational integer (or, in a prime
    /// field, its least nonnegative residue).
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) => q.is_integer().then(|| q.numer().clone()),
            Scalar::Prime { r, .. } => Some(BigInt::from(*r)),
            Scalar::Cyclotomic(c) => c
                .as_rational()
                .and_then(|q| q.is_integer().then(|| q.numer().clone())),
        }
    }

    /// Nonnegative machine-size integer value, if any.
    pub fn as_count(&self) -> Option<u64> {
        match self {
            Scalar::Prime { .. } => None,
            _ => self
                .as_integer()
                .filter(|v| !v.is_negative())
                .and_then(|v| v.try_into().ok()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(q) => serde_json::Value::String(q.to_string()),
            Scalar::Prime { p, r } => serde_json::json!({ "p": p, "r": r }),
            Scalar::Cyclotomic(c) => serde_json::json!({
                "m": c.order(),
                "coeffs": c.coefficients().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(value: &serde_json::Value, kind: ScalarKind) -> Result<Scalar> {
        let lit: ScalarLiteral = serde_json::from_value(value.clone())
            .map_err(|e| Error::input("scalar", e.to_string()))?;
        lit.into_scalar(kind)
    }
}

/// Serialized scalar forms.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLiteral {
    Int(i64),
    Text(String),
    Prime { p: u64, r: u64 },
    Cyclotomic { m: u32, coeffs: Vec<String> },
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::input("scalar", format!("cannot parse rational `{text}`"));
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

impl ScalarLiteral {
    pub fn into_scalar(self, kind: ScalarKind) -> Result<Scalar> {
        match self {
            ScalarLiteral::Int(v) => Ok(kind.from_i64(v)),
            ScalarLiteral::Text(t) => kind.from_rational(&parse_rational(&t)?),
            ScalarLiteral::Prime { p, r } => match kind {
                ScalarKind::Prime(q) if q == p && r < p => Ok(Scalar::Prime { p, r }),
                _ => Err(Error::KindMismatch(format!("F_{p} literal in {}", kind.tag()))),
            },
            ScalarLiteral::Cyclotomic { m, coeffs } => {
                let coeffs: Vec<BigRational> =
                    coeffs.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?;
                let c = Cyclotomic::from_coefficients(m, &coeffs)?;
                match kind {
                    ScalarKind::Cyclotomic(n) => Ok(Scalar::Cyclotomic(c.embed(n)?)),
                    _ => Err(Error::KindMismatch(format!("Q(zeta_{m}) literal in {}", kind.tag()))),
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { r, .. } => write!(f, "{r}"),
            Scalar::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar kinds must agree")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar kinds must agree")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 3) + &q(1, 6), q(1, 2));
    }

    #[test]
    fn prime_field_wraps() {
        let k = ScalarKind::Prime(3);
        assert_eq!(&k.from_i64(2) + &k.from_i64(2), k.from_i64(1));
        assert_eq!(k.from_i64(2).inv(), k.from_i64(2));
    }

    #[test]
    fn root_of_unity_zero_exponent_is_one() {
        for m in 1..10 {
            assert!(ScalarKind::Cyclotomic(m).root_of_unity(m, 0).unwrap().is_one());
        }
        assert!(ScalarKind::Cyclotomic(4).root_of_unity(0, 1).is_err());
    }

    #[test]
    fn inverse_root_is_power() {
        let k = ScalarKind::Cyclotomic(7);
        let z = k.root_of_unity(7, 1).unwrap();
        assert_eq!(z.inv(), k.root_of_unity(7, 6).unwrap());
    }

    #[test]
    fn mixed_kinds_rejected() {
        let a = ScalarKind::Rational.one();
        let b = ScalarKind::Prime(5).one();
        assert!(matches!(a.checked_add(&b), Err(Error::KindMismatch(_))));
        let c = ScalarKind::Cyclotomic(3).one();
        let d = ScalarKind::Cyclotomic(4).one();
        assert!(c.checked_mul(&d).is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        for k in [ScalarKind::Rational, ScalarKind::Prime(7), ScalarKind::Cyclotomic(5)] {
            assert_eq!(k.zero().checked_inv(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn prime_roots_of_unity() {
        let k = ScalarKind::Prime(13);
        let z = k.root_of_unity(4, 1).unwrap();
        assert_eq!(z.pow(2), k.from_i64(-1));
        assert!(k.root_of_unity(5, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = ScalarKind::Cyclotomic(6);
        let z = &k.root_of_unity(6, 1).unwrap() * &k.from_rational(&BigRational::new(2.into(), 3.into())).unwrap();
        let back = Scalar::from_json(&z.to_json(), k).unwrap();
        assert_eq!(back, z);
        let p = ScalarKind::Prime(11).from_i64(7);
        assert_eq!(Scalar::from_json(&p.to_json(), ScalarKind::Prime(11)).unwrap(), p);
    }

    #[test]
    fn kind_tags_parse() {
        assert_eq!(ScalarKind::parse("Q").unwrap(), ScalarKind::Rational);
        assert_eq!(ScalarKind::parse("Fp:3").unwrap(), ScalarKind::Prime(3));
        assert_eq!(ScalarKind::parse("Cyc:12").unwrap(), ScalarKind::Cyclotomic(12));
        assert!(ScalarKind::parse("Fp:4").is_err());
        assert!(ScalarKind::parse("R").is_err());
    }
}
