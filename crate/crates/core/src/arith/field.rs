//! Base fields and exact scalars.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::numtheory::{inv_mod, is_prime_u64};
use crate::error::{LieError, Result};

/// The base field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(LieError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    /// Fails with `PositiveCharacteristic` unless this is the rationals.
    pub fn require_char_zero(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) => Err(LieError::PositiveCharacteristic(*p)),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(n.into())),
            FieldSpec::PrimeField(p) => Scalar::Mod {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => Scalar::Mod {
                v: n.mod_floor(&BigInt::from(*p)).to_u64().expect("residue fits"),
                p: *p,
            },
        }
    }

    /// Maps a rational into this field; over `F_p` the denominator must be a unit.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(q.clone())),
            FieldSpec::PrimeField(p) => {
                let den = self.from_bigint(q.denom());
                let inv = den.inv().ok_or(LieError::BadDenominator { p: *p })?;
                Ok(&self.from_bigint(q.numer()) * &inv)
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }

    /// Parses a canonical scalar string: `-p/q` or `p/q` in lowest terms with `q > 1`,
    /// or an integer `-p`/`p` without leading zeros; residues `0 <= r < p` over `F_p`.
    pub fn parse_canonical(&self, s: &str) -> std::result::Result<Scalar, String> {
        fn canonical_int(s: &str, signed: bool) -> Option<BigInt> {
            let digits = if signed {
                s.strip_prefix('-').unwrap_or(s)
            } else {
                s
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            if digits.len() > 1 && digits.starts_with('0') {
                return None;
            }
            if digits == "0" && s.starts_with('-') {
                return None;
            }
            s.parse().ok()
        }
        match self {
            FieldSpec::Rationals => match s.split_once('/') {
                None => canonical_int(s, true)
                    .map(|n| Scalar::Rat(BigRational::from_integer(n)))
                    .ok_or_else(|| format!("{s:?} is not a canonical integer")),
                Some((num, den)) => {
                    let n = canonical_int(num, true)
                        .ok_or_else(|| format!("{s:?}: bad numerator"))?;
                    let d = canonical_int(den, false)
                        .ok_or_else(|| format!("{s:?}: bad denominator"))?;
                    if d <= BigInt::one() {
                        return Err(format!("{s:?}: denominator must exceed 1"));
                    }
                    if !n.gcd(&d).is_one() {
                        return Err(format!("{s:?} is not in lowest terms"));
                    }
                    Ok(Scalar::Rat(BigRational::new_raw(n, d)))
                }
            },
            FieldSpec::PrimeField(p) => {
                let n = canonical_int(s, false)
                    .ok_or_else(|| format!("{s:?} is not a canonical residue"))?;
                match n.to_u64() {
                    Some(v) if v < *p => Ok(Scalar::Mod { v, p: *p }),
                    _ => Err(format!("{s:?} is not a residue in [0, {p})")),
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator, residues in `[0, p)`; equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: inv_mod(*v, *p),
                p: *p,
            },
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// `max(|numerator|, denominator)` for rationals; the residue itself over `F_p`.
    pub fn height(&self) -> BigInt {
        match self {
            Scalar::Rat(q) => q.numer().abs().max(q.denom().clone()),
            Scalar::Mod { v, .. } => BigInt::from(*v),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.field().one();
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

    fn check(&self, other: &Scalar) {
        debug_assert_eq!(self.field(), other.field(), "mixed-field arithmetic");
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used for canonical keys: numeric for rationals, by residue over `F_p`.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { v: a, p: pa }, Scalar::Mod { v: b, p: pb }) => (pa, a).cmp(&(pb, b)),
            (Scalar::Rat(_), Scalar::Mod { .. }) => Ordering::Less,
            (Scalar::Mod { .. }, Scalar::Rat(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Shorthand for an integer-valued rational scalar.
pub fn q(n: i64) -> Scalar {
    FieldSpec::Rationals.from_i64(n)
}

/// Shorthand for the rational `n/d`.
pub fn qf(n: i64, d: i64) -> Scalar {
    Scalar::Rat(BigRational::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic_wraps() {
        let f = FieldSpec::prime(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(&a + &b, f.from_i64(2));
        assert_eq!(&a * &b, f.from_i64(2));
        assert_eq!(&a - &b, f.from_i64(4));
        assert_eq!(a.inv().unwrap(), f.from_i64(2));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert!(FieldSpec::prime(6).is_err());
    }

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(qf(2, 4), qf(1, 2));
        assert_eq!(qf(1, -2).to_string(), "-1/2");
        assert_eq!(q(7).to_string(), "7");
    }

    #[test]
    fn canonical_parsing_rejects_noncanonical_forms() {
        let f = FieldSpec::Rationals;
        assert_eq!(f.parse_canonical("-3/4").unwrap(), qf(-3, 4));
        assert_eq!(f.parse_canonical("12").unwrap(), q(12));
        for bad in ["2/4", "+1", "01", "-0", "3/1", "1/-2", "1.5", "", "1/0"] {
            assert!(f.parse_canonical(bad).is_err(), "{bad} accepted");
        }
        let f5 = FieldSpec::PrimeField(5);
        assert!(f5.parse_canonical("4").is_ok());
        assert!(f5.parse_canonical("5").is_err());
        assert!(f5.parse_canonical("-1").is_err());
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = FieldSpec::PrimeField(7);
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap(), f.from_i64(4));
        assert!(f
            .from_rational(&BigRational::new(1.into(), 7.into()))
            .is_err());
    }
}
