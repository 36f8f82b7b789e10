//! Sparse multivariate polynomials with exact cyclotomic coefficients.
//!
//! The symbol universe is fixed: up to eight weight symbols `a..h`, then `N`,
//! `t`, `x` and finally `n`. Monomials are dense exponent arrays over that
//! universe, compared in graded-lex order with `n` least significant, and a
//! polynomial keeps its terms sorted with the leading term first.

mod gcd;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, parse_rational, CycloNumber};

pub use gcd::{gcd, gcd_many, lcm};
pub use parse::parse_poly;

pub const NVARS: usize = 12;
pub const MAX_WEIGHT_SYMBOLS: usize = 8;

const WEIGHT_NAMES: [&str; MAX_WEIGHT_SYMBOLS] = ["a", "b", "c", "d", "e", "f", "g", "h"];

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u8);

impl Var {
    pub const BIG_N: Var = Var(8);
    pub const T: Var = Var(9);
    pub const X: Var = Var(10);
    pub const N: Var = Var(11);

    /// The `i`-th weight symbol (`a`, `b`, `c`, ...).
    pub fn weight(i: usize) -> Var {
        assert!(i < MAX_WEIGHT_SYMBOLS, "at most {MAX_WEIGHT_SYMBOLS} weight symbols");
        Var(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn weight_index(self) -> Option<usize> {
        (self.index() < MAX_WEIGHT_SYMBOLS).then_some(self.index())
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            8 => "N",
            9 => "t",
            10 => "x",
            11 => "n",
            i => WEIGHT_NAMES[i as usize],
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "N" => Some(Var::BIG_N),
            "t" => Some(Var::T),
            "x" => Some(Var::X),
            "n" => Some(Var::N),
            _ => WEIGHT_NAMES.iter().position(|w| *w == s).map(|i| Var(i as u8)),
        }
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS as u8).map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn exps(&self) -> &[u16; NVARS] {
        &self.0
    }

    pub fn from_exps(e: [u16; NVARS]) -> Self {
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Monomial(r)
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(r))
    }

    pub fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut r = self.0;
        r[v.index()] = e;
        Monomial(r)
    }

    fn fmt_vars(&self) -> String {
        let mut parts = Vec::new();
        for v in Var::all() {
            match self.exp(v) {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{}", v.name(), e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.fmt_vars();
        f.write_str(if s.is_empty() { "1" } else { &s })
    }
}

/// Multivariate polynomial; terms sorted by descending monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, CycloNumber)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(CycloNumber::one())
    }

    pub fn constant(c: CycloNumber) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(CycloNumber::from_int(n))
    }

    pub fn rational(r: BigRational) -> Self {
        Self::constant(CycloNumber::from_rational(r))
    }

    pub fn term(m: Monomial, c: CycloNumber) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), CycloNumber::one())
    }

    /// `v + k`, the usual shape of a shifted index.
    pub fn var_plus(v: Var, k: i64) -> Self {
        &Self::var(v) + &Self::int(k)
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, CycloNumber)>) -> Self {
        let mut acc: HashMap<Monomial, CycloNumber> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(x) => *x += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, CycloNumber>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    /// Univariate polynomial in `v` from coefficients, lowest degree first.
    pub fn univariate(v: Var, coeffs: &[CycloNumber]) -> Self {
        Self::from_terms(
            coeffs.iter().enumerate().map(|(e, c)| (Monomial::var(v, e as u16), c.clone())),
        )
    }

    pub fn terms(&self) -> &[(Monomial, CycloNumber)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<CycloNumber> {
        match self.terms.as_slice() {
            [] => Some(CycloNumber::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, CycloNumber)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> CycloNumber {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(CycloNumber::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).min().unwrap_or(0)
    }

    /// Variables with a nonzero exponent somewhere, in canonical order.
    pub fn vars(&self) -> Vec<Var> {
        let mut mask = [false; NVARS];
        for (m, _) in &self.terms {
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    mask[i] = true;
                }
            }
        }
        Var::all().filter(|v| mask[v.index()]).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    pub fn conductor(&self) -> u8 {
        self.terms.iter().map(|t| t.1.conductor()).max().unwrap_or(1)
    }

    /// Rough size used for pivot selection: terms weighted by coefficient bits.
    pub fn size(&self) -> u64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let bits: u64 = c
                    .coords()
                    .iter()
                    .map(|r| r.numer().bits() + r.denom().bits())
                    .sum();
                1 + m.degree() as u64 + bits
            })
            .sum()
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &CycloNumber) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(x, y)| (x.mul(m), y * c)).collect() }
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

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((*mb, if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            o.terms[j..].iter().map(|(m, c)| (*m, if negate { -c } else { c.clone() })),
        );
        MultiPoly { terms: out }
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_monomial(m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, CycloNumber> =
            HashMap::with_capacity(self.terms.len() * o.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let p = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += &p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dm, dc) = d.terms[0].clone();
        let dinv = dc.inv().ok()?;
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(&dm)?, c * &dinv));
            }
            return Some(MultiPoly { terms: out });
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        for v in Var::all() {
            if self.degree_in(v) < d.degree_in(v) {
                return None;
            }
        }
        let mut rem: std::collections::BTreeMap<std::cmp::Reverse<Monomial>, CycloNumber> = self
            .terms
            .iter()
            .map(|(m, c)| (std::cmp::Reverse(*m), c.clone()))
            .collect();
        let mut quot = Vec::new();
        while let Some((std::cmp::Reverse(m), c)) = rem.pop_first() {
            let qm = m.div(&dm)?;
            let qc = &c * &dinv;
            for (tm, tc) in &d.terms[1..] {
                let key = std::cmp::Reverse(tm.mul(&qm));
                let delta = tc * &qc;
                match rem.get_mut(&key) {
                    Some(x) => {
                        *x -= &delta;
                        if x.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(MultiPoly { terms: quot })
    }

    /// Coefficients with respect to `v`: entry `e` is the coefficient of `v^e`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Vec::new(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].push((m.with_exp(v, 0), c.clone()));
        }
        // terms keep descending order after dropping one variable within a fixed exponent
        out.into_iter()
            .map(|mut ts| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MultiPoly { terms: ts }
            })
            .collect()
    }

    pub fn from_coefficients_in(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                debug_assert_eq!(m.exp(v), 0);
                terms.push((m.with_exp(v, e as u16), c.clone()));
            }
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    /// Univariate coefficient list in `n` for a polynomial involving only `n`.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<CycloNumber>> {
        self.coefficients_in(v).into_iter().map(|p| p.constant_value()).collect()
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, assignment: &HashMap<Var, MultiPoly>) -> MultiPoly {
        if assignment.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u16), MultiPoly> = HashMap::new();
        let mut acc = MultiPoly::zero();
        let mut plain: Vec<(Monomial, CycloNumber)> = Vec::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor: Option<MultiPoly> = None;
            for (v, val) in assignment {
                let e = m.exp(*v);
                if e == 0 {
                    continue;
                }
                rest = rest.with_exp(*v, 0);
                let p = powers.entry((*v, e)).or_insert_with(|| val.pow(e as u32)).clone();
                factor = Some(match factor {
                    None => p,
                    Some(f) => &f * &p,
                });
            }
            match factor {
                None => plain.push((*m, c.clone())),
                Some(f) => acc = &acc + &f.mul_monomial(&rest, c),
            }
        }
        &acc + &MultiPoly::from_terms(plain)
    }

    pub fn substitute_scalars(&self, assignment: &HashMap<Var, CycloNumber>) -> MultiPoly {
        let a: HashMap<Var, MultiPoly> =
            assignment.iter().map(|(v, c)| (*v, MultiPoly::constant(c.clone()))).collect();
        self.substitute(&a)
    }

    /// `v ↦ v + k`.
    pub fn shift(&self, v: Var, k: i64) -> MultiPoly {
        if k == 0 || !self.contains_var(v) {
            return self.clone();
        }
        let mut a = HashMap::new();
        a.insert(v, MultiPoly::var_plus(v, k));
        self.substitute(&a)
    }

    /// Evaluates a polynomial in `v` alone at a scalar.
    pub fn eval_univariate(&self, v: Var, x: &CycloNumber) -> Result<CycloNumber> {
        let mut acc = CycloNumber::zero();
        let coeffs = self.coefficients_in(v);
        for c in coeffs.iter().rev() {
            let cv = c.constant_value().ok_or_else(|| {
                Error::Invalid(format!("polynomial {self} involves more than {v}"))
            })?;
            acc = &(&acc * x) + &cv;
        }
        Ok(acc)
    }

    /// Splits `p = content · primitive`, where the primitive part has coprime
    /// integer coordinates and a positive rational leading coefficient.
    pub fn primitive_normalize(&self) -> Result<(CycloNumber, MultiPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPrimitive);
        }
        let lc = self.leading_coeff();
        let mut q = if lc.is_rational() { self.clone() } else { self.scale(&lc.inv()?) };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &q.terms {
            c.accumulate_content(&mut den, &mut num);
        }
        let mut factor = BigRational::new(den, num);
        if q.leading_coeff().lead_sign() < 0 {
            factor = -factor;
        }
        q = q.scale(&CycloNumber::from_rational(factor.clone()));
        let content = if lc.is_rational() {
            CycloNumber::from_rational(factor.recip())
        } else {
            &lc * &CycloNumber::from_rational(factor.recip())
        };
        Ok((content, q))
    }

    /// Primitive part, or zero for the zero polynomial.
    pub fn normalized(&self) -> MultiPoly {
        self.primitive_normalize().map(|(_, p)| p).unwrap_or_default()
    }

    /// Canonical text form: descending graded-lex terms, `^` exponents.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let vars = m.fmt_vars();
            let (neg, body) = if let Some(r) = c.as_rational() {
                let mag = r.abs();
                let body = if vars.is_empty() {
                    fmt_rational(&mag)
                } else if mag.is_one() {
                    vars.clone()
                } else {
                    format!("{}*{}", fmt_rational(&mag), vars)
                };
                (r.is_negative(), body)
            } else if vars.is_empty() {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*{vars}"))
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }

    pub fn parse(s: &str) -> Result<MultiPoly> {
        parse_poly(s)
    }

    pub fn to_json(&self) -> PolyJson {
        let vars = self.vars();
        let conductor = self.conductor();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coef: if conductor == 1 {
                    CoefJson::Rational(fmt_rational(c.as_rational().expect("rational")))
                } else {
                    let mut coords = c.coords();
                    coords.resize(2, BigRational::zero());
                    CoefJson::Coords(coords.iter().map(fmt_rational).collect())
                },
                exps: vars.iter().map(|v| m.exp(*v) as u32).collect(),
            })
            .collect();
        PolyJson {
            vars: vars.iter().map(|v| v.name().to_string()).collect(),
            conductor,
            terms,
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly> {
        let vars: Vec<Var> = j
            .vars
            .iter()
            .map(|s| Var::from_name(s).ok_or_else(|| Error::Parse(format!("unknown variable {s}"))))
            .collect::<Result<_>>()?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exps.len() != vars.len() {
                return Err(Error::Parse("exponent vector length mismatch".into()));
            }
            let mut m = Monomial::one();
            for (v, e) in vars.iter().zip(&t.exps) {
                let e = u16::try_from(*e).map_err(|_| Error::Parse("exponent too large".into()))?;
                m = m.with_exp(*v, e);
            }
            let c = match &t.coef {
                CoefJson::Rational(s) => CycloNumber::from_rational(parse_rational(s)?),
                CoefJson::Coords(cs) => {
                    let coords: Vec<BigRational> =
                        cs.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
                    CycloNumber::from_coords(j.conductor, &coords)?
                }
            };
            terms.push((m, c));
        }
        Ok(MultiPoly::from_terms(terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub conductor: u8,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: CoefJson,
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefJson {
    Rational(String),
    Coords(Vec<String>),
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.merge(o, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.merge(o, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.mul_impl(o)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<CycloNumber> for MultiPoly {
    fn from(c: CycloNumber) -> Self {
        MultiPoly::constant(c)
    }
}

/// Shorthand used throughout: parse a polynomial literal, panicking on bad input.
pub fn p(s: &str) -> MultiPoly {
    parse_poly(s).unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let x = p("n^2 - 1");
        let y = p("n - 1");
        assert_eq!(x.div_exact(&y).unwrap(), p("n + 1"));
        assert!(x.div_exact(&p("n - 2")).is_none());
        assert_eq!(&(&y * &p("n+1")) - &x, MultiPoly::zero());
    }

    #[test]
    fn primitive_normalize_examples() {
        let (c, q) = p("6*n^2 - 12*n").primitive_normalize().unwrap();
        assert_eq!(c, CycloNumber::from_int(6));
        assert_eq!(q, p("n^2 - 2*n"));
        let (c, q) = p("n").primitive_normalize().unwrap();
        assert_eq!((c, q), (CycloNumber::one(), p("n")));
        // positive leading coefficient is the fixed convention
        let (c, q) = p("-4*n + 8").primitive_normalize().unwrap();
        assert_eq!(c, CycloNumber::from_int(-4));
        assert_eq!(q, p("n - 2"));
        assert_eq!(MultiPoly::zero().primitive_normalize(), Err(Error::ZeroPrimitive));
    }

    #[test]
    fn primitive_normalize_cyclotomic() {
        let x = p("(1 + w)*n + 2");
        let (c, q) = x.primitive_normalize().unwrap();
        assert!(q.leading_coeff().is_rational());
        assert_eq!(q.scale(&c), x);
    }

    #[test]
    fn term_order_puts_n_last() {
        let q = p("n^2 + a*n + a^2");
        let order: Vec<String> =
            q.terms().iter().map(|(m, _)| format!("{m:?}")).collect();
        assert_eq!(order, vec!["a^2", "a*n", "n^2"]);
    }

    #[test]
    fn substitution() {
        let mut a = HashMap::new();
        a.insert(Var::weight(0), MultiPoly::int(1));
        a.insert(Var::weight(1), MultiPoly::int(1));
        assert_eq!(p("a + b").substitute(&a), MultiPoly::int(2));
        assert_eq!(
            p("(2*n - 1)*(a + b)").substitute(&a),
            p("4*n - 2")
        );
        assert_eq!(p("n^2").shift(Var::N, -1), p("n^2 - 2*n + 1"));
    }

    #[test]
    fn text_and_json_roundtrip() {
        for s in ["-3*a^2*n + 1/2*n - 7", "(1 + 2*w)*n^3 - w", "(-i)*t + 5", "0"] {
            let q = p(s);
            assert_eq!(parse_poly(&q.to_text()).unwrap(), q, "{s}");
            let j = serde_json::to_string(&q.to_json()).unwrap();
            let back: PolyJson = serde_json::from_str(&j).unwrap();
            assert_eq!(MultiPoly::from_json(&back).unwrap(), q);
        }
    }
}
