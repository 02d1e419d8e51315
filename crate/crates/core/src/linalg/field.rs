use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number. Values that fit in `i64` stay unboxed; anything
/// larger spills into a `BigRational`. Both forms are kept canonical
/// (lowest terms, positive denominator, `Small` whenever it fits) so that
/// structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    /// Builds `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        if num == 0 {
            return Rational::zero();
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic already reduces.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Rational::Small(n, d);
        }
        Rational::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Rational::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Self::from_big(-self.to_big()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c) {
                        return Rational::Small(p, 1);
                    }
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        })
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    /// Reduces the rational modulo `p` when the denominator is invertible.
    pub fn mod_p(&self, p: u32) -> Option<u32> {
        let pb = BigInt::from(p);
        let n = self.numer().mod_floor(&pb);
        let d = self.denom().mod_floor(&pb);
        if d.is_zero() {
            return None;
        }
        let n = n.to_u64()?;
        let d = d.to_u64()?;
        Some(((n * inv_mod(d, p as u64)) % p as u64) as u32)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The ground field: the rationals or a prime field GF(p), p < 2³¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Parse(format!("GF({p}): modulus must be a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(Rational::zero()),
            Field::Prime(p) => FieldElem::Mod { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(Rational::one()),
            Field::Prime(p) => FieldElem::Mod { v: 1 % *p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(Rational::from_int(n)),
            Field::Prime(p) => FieldElem::Mod { v: n.rem_euclid(*p as i64) as u32, p: *p },
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, r: &Rational) -> Result<FieldElem> {
        match self {
            Field::Rational => Ok(FieldElem::Rat(r.clone())),
            Field::Prime(p) => r
                .mod_p(*p)
                .map(|v| FieldElem::Mod { v, p: *p })
                .ok_or_else(|| Error::Parse(format!("{r} has no image in GF({p})"))),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        self.from_rational(&s.parse::<Rational>()?)
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p as u64),
        }
    }

    /// The i-th element in a fixed enumeration (only meaningful for finite fields
    /// or as "the integer i" over the rationals).
    pub fn nth(&self, i: u64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(Rational::from_int(i as i64)),
            Field::Prime(p) => FieldElem::Mod { v: (i % *p as u64) as u32, p: *p },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `GF(p)`, `GF:p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rational);
        }
        let inner = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).or_else(|| t.strip_prefix("GF:"));
        match inner.and_then(|p| p.trim().parse::<u32>().ok()) {
            Some(p) => Field::prime(p),
            None => Err(Error::Parse(format!("unknown field {t:?}; expected Q or GF(p)"))),
        }
    }
}

/// An element of a [`Field`]. Prime-field elements carry their modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(Rational),
    Mod { v: u32, p: u32 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rat(_) => Field::Rational,
            FieldElem::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        match self {
            FieldElem::Rat(r) => r.inv().map(FieldElem::Rat),
            FieldElem::Mod { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(FieldElem::Mod { v: inv_mod(*v as u64, *p as u64) as u32, p: *p })
                }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
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

    /// Rational view; `None` for prime-field elements.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Rat(r) => Some(r),
            FieldElem::Mod { .. } => None,
        }
    }

    /// Serialization form: decimal integer or `n/d`.
    pub fn to_json_string(&self) -> String {
        self.to_string()
    }

    fn add_ref(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a.add(b)),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                let s = *a as u64 + *b as u64;
                FieldElem::Mod { v: (s % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch in addition"),
        }
    }

    fn sub_ref(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a.sub(b)),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                let s = *a as u64 + *p as u64 - *b as u64;
                FieldElem::Mod { v: (s % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch in subtraction"),
        }
    }

    fn mul_ref(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a.mul(b)),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                FieldElem::Mod { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch in multiplication"),
        }
    }

    fn neg_ref(&self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(a.neg()),
            FieldElem::Mod { v, p } => FieldElem::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    /// Integer representative used for hashing/debug output of small values.
    pub fn small_int(&self) -> Option<i64> {
        match self {
            FieldElem::Rat(Rational::Small(n, 1)) => Some(*n),
            FieldElem::Mod { v, .. } => Some(*v as i64),
            _ => None,
        }
    }

    pub fn abs_rational(&self) -> Option<BigRational> {
        self.as_rational().map(|r| r.to_big().abs())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => write!(f, "{r}"),
            FieldElem::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                self.$imp(rhs)
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                self.$imp(&rhs)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                self.$imp(rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, rhs: &FieldElem) {
        *self = self.mul_ref(rhs);
    }
}

impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.small_int() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.to_string()),
        }
    }
}
