//! Exact coefficient arithmetic over the rationals and prime fields `F_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("{p} exceeds 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod { v: n.rem_euclid(*p as i64) as u32, p: *p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Mod { v: r.to_u32().unwrap_or(0), p: *p }
            }
        }
    }

    /// `num / den`; fails when `den` vanishes in this field.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        n.try_div(&d)
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rat(_)) => true,
            (Field::Prime(p), Scalar::Mod { p: q, .. }) => p == q,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t == "QQ" || t == "Q" {
            return Ok(Field::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .or_else(|| t.strip_prefix("ZZ/("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidField(format!("unrecognised field `{t}`")))?;
        let p: u32 = inner
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad characteristic `{inner}`")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u32, p: u32 },
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u32
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul(&other.try_inv()?))
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv())
    }

    // The unchecked operations below assume both operands come from the same
    // field; callers inside the engine guarantee this through the ring.

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { v: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    /// Panics on zero; use [`Scalar::try_inv`] for a checked inverse.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Mod { v: inv_mod(*v, *p), p: *p }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Numerator and denominator for rationals; `(v, 1)` for residues.
    pub fn parts(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rat(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Mod { v, .. } => (BigInt::from(*v), BigInt::one()),
        }
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}
