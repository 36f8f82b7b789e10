//! Exact scalars: rationals and elements of the cyclotomic fields Q(ζ₃), Q(ζ₄).
//!
//! A [`CycloNumber`] stores coordinates on the power basis `1, ζ` of Q(ζ_m)
//! for `m ∈ {3, 4}` (both have degree two), or a single rational for `m = 1`.
//! Values whose ζ-coordinate vanishes are always demoted to conductor 1, so
//! equality and hashing are structural.
//!
//! Mixing conductors 3 and 4 in one operation would require Q(ζ₁₂) and panics;
//! inputs are validated at the parsing layer (see [`CycloNumber::parse`]).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    conductor: u8,
    c0: BigRational,
    c1: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CycloNumber {
    pub fn from_rational(r: BigRational) -> Self {
        CycloNumber { conductor: 1, c0: r, c1: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// `c0 + c1·ζ_m`.
    pub fn new(conductor: u8, c0: BigRational, c1: BigRational) -> Result<Self> {
        match conductor {
            1 if c1.is_zero() => Ok(Self::from_rational(c0)),
            1 => Err(Error::Invalid("conductor 1 takes a single coordinate".into())),
            3 | 4 => Ok(CycloNumber { conductor, c0, c1 }.canon()),
            m => Err(Error::Invalid(format!("unsupported conductor {m}"))),
        }
    }

    /// Builds an element from its full coordinate vector (length φ(m)).
    pub fn from_coords(conductor: u8, coords: &[BigRational]) -> Result<Self> {
        match (conductor, coords) {
            (1, [c0]) => Ok(Self::from_rational(c0.clone())),
            (3 | 4, [c0, c1]) => Self::new(conductor, c0.clone(), c1.clone()),
            _ => Err(Error::Invalid(format!(
                "conductor {conductor} needs {} coordinates, got {}",
                if conductor == 1 { 1 } else { 2 },
                coords.len()
            ))),
        }
    }

    /// Primitive cube root of unity ζ₃ = (−1 + √−3)/2.
    pub fn zeta3() -> Self {
        CycloNumber { conductor: 3, c0: BigRational::zero(), c1: BigRational::one() }
    }

    /// ζ₄ = i.
    pub fn i() -> Self {
        CycloNumber { conductor: 4, c0: BigRational::zero(), c1: BigRational::one() }
    }

    pub fn conductor(&self) -> u8 {
        self.conductor
    }

    pub fn coords(&self) -> Vec<BigRational> {
        if self.conductor == 1 {
            vec![self.c0.clone()]
        } else {
            vec![self.c0.clone(), self.c1.clone()]
        }
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.c0)
    }

    fn canon(mut self) -> Self {
        if self.c1.is_zero() {
            self.conductor = 1;
        }
        self
    }

    fn field_of(&self, other: &Self) -> u8 {
        match (self.conductor, other.conductor) {
            (1, m) | (m, 1) => m,
            (a, b) if a == b => a,
            (a, b) => panic!("{}", Error::IncompatibleFields(a, b)),
        }
    }

    /// Field of a pair of values, or an error when they live in incompatible fields.
    pub fn common_conductor(a: u8, b: u8) -> Result<u8> {
        match (a, b) {
            (1, m) | (m, 1) => Ok(m),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::IncompatibleFields(a, b)),
        }
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> BigRational {
        match self.conductor {
            1 => self.c0.clone(),
            3 => &self.c0 * &self.c0 - &self.c0 * &self.c1 + &self.c1 * &self.c1,
            _ => &self.c0 * &self.c0 + &self.c1 * &self.c1,
        }
    }

    /// Galois conjugate (ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> Self {
        match self.conductor {
            1 => self.clone(),
            // ζ₃⁻¹ = ζ₃² = −1 − ζ₃
            3 => CycloNumber { conductor: 3, c0: &self.c0 - &self.c1, c1: -self.c1.clone() },
            _ => CycloNumber { conductor: 4, c0: self.c0.clone(), c1: -self.c1.clone() },
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.c0.recip()));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(CycloNumber { conductor: c.conductor, c0: c.c0 / &n, c1: c.c1 / &n })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloNumber { conductor: self.conductor, c0: &self.c0 * r, c1: &self.c1 * r }.canon()
    }

    /// Complex embedding with ζ₃ ↦ e^{2πi/3}, ζ₄ ↦ i.
    pub fn to_complex(&self) -> (f64, f64) {
        let a = rat_to_f64(&self.c0);
        let b = rat_to_f64(&self.c1);
        match self.conductor {
            1 => (a, 0.0),
            3 => (a - 0.5 * b, b * 3f64.sqrt() * 0.5),
            _ => (a, b),
        }
    }

    /// Least common multiple of coordinate denominators and gcd of numerators.
    pub(crate) fn accumulate_content(&self, den_lcm: &mut BigInt, num_gcd: &mut BigInt) {
        for c in [&self.c0, &self.c1] {
            if c.is_zero() {
                continue;
            }
            *den_lcm = den_lcm.lcm(c.denom());
            *num_gcd = num_gcd.gcd(c.numer());
        }
    }

    /// Sign of the rational coordinate used for normalization (0 when zero).
    pub(crate) fn lead_sign(&self) -> i32 {
        let c = if self.c0.is_zero() { &self.c1 } else { &self.c0 };
        if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Parses a weight literal: an integer or rational `p/q`, `i`, `-i`,
    /// `w` (= ζ₃), `w2` (= ζ₃²), optionally negated.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('-') {
            if !rest.starts_with(|c: char| c.is_ascii_digit()) {
                return Ok(-Self::parse(rest)?);
            }
        }
        match t {
            "i" => Ok(Self::i()),
            "w" => Ok(Self::zeta3()),
            "w2" => Ok(Self::zeta3().pow(2)),
            _ => parse_rational(t).map(Self::from_rational),
        }
    }
}

pub fn parse_rational(t: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {t:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Zero for CycloNumber {
    fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.conductor == 1 && self.c0.is_zero()
    }
}

impl One for CycloNumber {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}

impl From<i64> for CycloNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for CycloNumber {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<BigInt> for CycloNumber {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, o: &CycloNumber) -> CycloNumber {
        let m = self.field_of(o);
        CycloNumber { conductor: m, c0: &self.c0 + &o.c0, c1: &self.c1 + &o.c1 }.canon()
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, o: &CycloNumber) -> CycloNumber {
        let m = self.field_of(o);
        CycloNumber { conductor: m, c0: &self.c0 - &o.c0, c1: &self.c1 - &o.c1 }.canon()
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, o: &CycloNumber) -> CycloNumber {
        let m = self.field_of(o);
        if self.conductor == 1 {
            return o.scale(&self.c0);
        }
        if o.conductor == 1 {
            return self.scale(&o.c0);
        }
        let p00 = &self.c0 * &o.c0;
        let p11 = &self.c1 * &o.c1;
        let cross = &self.c0 * &o.c1 + &self.c1 * &o.c0;
        let (c0, c1) = if m == 3 {
            // ζ² = −1 − ζ
            (p00 - &p11, cross - p11)
        } else {
            // ζ² = −1
            (p00 - p11, cross)
        };
        CycloNumber { conductor: m, c0, c1 }.canon()
    }
}

impl Div<&CycloNumber> for &CycloNumber {
    type Output = CycloNumber;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &CycloNumber) -> CycloNumber {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { conductor: self.conductor, c0: -self.c0, c1: -self.c1 }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, o: CycloNumber) -> CycloNumber {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, o: &CycloNumber) -> CycloNumber {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, o: &CycloNumber) {
        let m = self.field_of(o);
        self.conductor = m;
        self.c0 += &o.c0;
        self.c1 += &o.c1;
        if self.c1.is_zero() {
            self.conductor = 1;
        }
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, o: &CycloNumber) {
        let m = self.field_of(o);
        self.conductor = m;
        self.c0 -= &o.c0;
        self.c1 -= &o.c1;
        if self.c1.is_zero() {
            self.conductor = 1;
        }
    }
}

impl MulAssign<&CycloNumber> for CycloNumber {
    fn mul_assign(&mut self, o: &CycloNumber) {
        *self = &*self * o;
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", fmt_rational(&self.c0));
        }
        let sym = if self.conductor == 3 { "w" } else { "i" };
        let mut s = String::new();
        if !self.c0.is_zero() {
            s.push_str(&fmt_rational(&self.c0));
        }
        let c1 = &self.c1;
        let mag = c1.abs();
        if s.is_empty() {
            if c1.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c1.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&fmt_rational(&mag));
            s.push('*');
        }
        s.push_str(sym);
        f.write_str(&s)
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for CycloNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycloNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::poly::parse_poly(&s)
            .ok()
            .and_then(|p| p.constant_value())
            .ok_or_else(|| serde::de::Error::custom(format!("not a scalar: {s:?}")))
    }
}
