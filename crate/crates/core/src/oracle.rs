//! Brute-force evaluation of the weighted multinomial sums and their auxiliary terms.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Var, MAX_WEIGHT_SYMBOLS};
use crate::ring::Ring;
use crate::scalar::CycloNumber;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weights {
    Numeric(Vec<CycloNumber>),
    /// One formal symbol per part: `a, b, c, ...`.
    Symbolic,
}

/// A family `Σ_p Π α_i^{p_i} · multinomial(n; p)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    parts: usize,
    weights: Weights,
    power: u32,
}

impl SequenceSpec {
    pub fn numeric(weights: Vec<CycloNumber>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidSpec(format!("need at least 2 weights, got {}", weights.len())));
        }
        let m = weights.iter().map(|w| w.conductor()).max().unwrap_or(1);
        for w in &weights {
            CycloNumber::common_conductor(m, w.conductor())?;
        }
        Ok(SequenceSpec { parts: weights.len(), weights: Weights::Numeric(weights), power: 2 })
    }

    pub fn symbolic(parts: usize) -> Result<Self> {
        if !(2..=MAX_WEIGHT_SYMBOLS).contains(&parts) {
            return Err(Error::InvalidSpec(format!(
                "symbolic mode supports 2..={MAX_WEIGHT_SYMBOLS} parts, got {parts}"
            )));
        }
        Ok(SequenceSpec { parts, weights: Weights::Symbolic, power: 2 })
    }

    /// All weights equal to one.
    pub fn unit(parts: usize) -> Result<Self> {
        Self::numeric(vec![CycloNumber::one(); parts])
    }

    pub fn with_power(mut self, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidSpec(format!("power must be at least 2, got {k}")));
        }
        if k > 2 && self.parts != 2 {
            return Err(Error::InvalidSpec("powers above 2 need exactly two parts".into()));
        }
        self.power = k;
        Ok(self)
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.weights, Weights::Symbolic)
    }

    pub fn numeric_weights(&self) -> Option<&[CycloNumber]> {
        match &self.weights {
            Weights::Numeric(w) => Some(w),
            Weights::Symbolic => None,
        }
    }

    /// Weights as polynomials (symbols in symbolic mode).
    pub fn weight_polys(&self) -> Vec<MultiPoly> {
        match &self.weights {
            Weights::Numeric(w) => w.iter().cloned().map(MultiPoly::constant).collect(),
            Weights::Symbolic => (0..self.parts).map(|i| MultiPoly::var(Var::weight(i))).collect(),
        }
    }

    pub fn require_nonzero(&self) -> Result<()> {
        match &self.weights {
            Weights::Numeric(w) if w.iter().any(|x| x.is_zero()) => Err(Error::ZeroWeight),
            _ => Ok(()),
        }
    }
}

/// Exponent vector ε of an auxiliary term; entries lie in `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EpsVector(pub Vec<u32>);

impl EpsVector {
    pub fn zero(parts: usize) -> Self {
        EpsVector(vec![0; parts])
    }

    pub fn level(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn raised(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        EpsVector(v)
    }

    pub fn lowered(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] -= 1;
        EpsVector(v)
    }

    pub fn validate(&self, spec: &SequenceSpec) -> Result<()> {
        if self.0.len() != spec.parts {
            return Err(Error::InvalidEps(format!(
                "length {} for {} parts",
                self.0.len(),
                spec.parts
            )));
        }
        if let Some(e) = self.0.iter().find(|&&e| e >= spec.power) {
            return Err(Error::InvalidEps(format!("entry {e} not below power {}", spec.power)));
        }
        Ok(())
    }

    /// Compact label such as `101`.
    pub fn label(&self) -> String {
        self.0.iter().map(|e| e.to_string()).collect()
    }
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for i in 1..=n {
        let x = &f[i - 1] * BigInt::from(i);
        f.push(x);
    }
    f
}

pub fn multinomial(n: i64, parts: &[i64]) -> Result<BigInt> {
    if parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != n || n < 0 {
        return Err(Error::InvalidComposition(format!("{parts:?} does not sum to {n}")));
    }
    let f = factorials(n as usize);
    let mut r = f[n as usize].clone();
    for &p in parts {
        r /= &f[p as usize];
    }
    Ok(r)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Number of compositions of `n` into `parts` non-negative parts.
pub fn composition_count(n: u64, parts: u64) -> BigInt {
    binomial(n + parts - 1, parts - 1)
}

/// Direct enumeration of `Σ_p (Π p_i^{ε_i})(Π α_i^{p_i}) multinomial(n; p)^k`.
pub fn aux_term_in<T: Ring>(weights: &[T], k: u32, n: usize, eps: &[u32]) -> T {
    let fact = factorials(n);
    let pows: Vec<Vec<T>> = weights
        .iter()
        .map(|w| {
            let mut v = vec![T::r_one()];
            for p in 1..=n {
                let x = v[p - 1].r_mul(w);
                v.push(x);
            }
            v
        })
        .collect();
    let ctx = Enum { fact: &fact, pows: &pows, k, eps, parts: weights.len() };
    // split on the first part for parallelism
    (0..=n)
        .into_par_iter()
        .map(|p0| {
            let mut acc = T::r_zero();
            let mut parts = vec![0usize; ctx.parts];
            parts[0] = p0;
            ctx.rec(1, n - p0, &mut parts, &mut acc);
            acc
        })
        .reduce(T::r_zero, |a, b| a.r_add(&b))
}

struct Enum<'a, T> {
    fact: &'a [BigInt],
    pows: &'a [Vec<T>],
    k: u32,
    eps: &'a [u32],
    parts: usize,
}

impl<T: Ring> Enum<'_, T> {
    fn rec(&self, i: usize, left: usize, parts: &mut [usize], acc: &mut T) {
        if i + 1 == self.parts {
            parts[i] = left;
            self.leaf(parts, acc);
            return;
        }
        for p in 0..=left {
            parts[i] = p;
            self.rec(i + 1, left - p, parts, acc);
        }
    }

    fn leaf(&self, parts: &[usize], acc: &mut T) {
        let n: usize = parts.iter().sum();
        let mut c = self.fact[n].clone();
        for &p in parts {
            c /= &self.fact[p];
        }
        c = c.pow(self.k);
        for (p, e) in parts.iter().zip(self.eps) {
            if *e > 0 {
                if *p == 0 {
                    return;
                }
                c *= BigInt::from(*p).pow(*e);
            }
        }
        let mut term = T::r_from_bigint(c);
        for (i, p) in parts.iter().enumerate() {
            if *p > 0 {
                term = term.r_mul(&self.pows[i][*p]);
            }
        }
        *acc = acc.r_add(&term);
    }
}

/// Terms `0..=n_max` of an auxiliary sequence by iterated binomial convolution,
/// using `multinomial(m; p) = C(m, p_last) · multinomial(m − p_last; rest)`.
pub fn aux_series_in<T: Ring>(weights: &[T], k: u32, eps: &[u32], n_max: usize) -> Vec<T> {
    let binom: Vec<Vec<BigInt>> = (0..=n_max)
        .map(|m| {
            let mut row = vec![BigInt::one()];
            for p in 1..=m {
                let x = &row[p - 1] * BigInt::from(m - p + 1) / BigInt::from(p);
                row.push(x);
            }
            row.into_iter().map(|b| b.pow(k)).collect()
        })
        .collect();
    let single = |w: &T, e: u32| -> Vec<T> {
        let mut out = Vec::with_capacity(n_max + 1);
        let mut pw = T::r_one();
        for p in 0..=n_max {
            let f = if e == 0 { BigInt::one() } else { BigInt::from(p).pow(e) };
            out.push(pw.r_mul(&T::r_from_bigint(f)));
            pw = pw.r_mul(w);
        }
        out
    };
    let mut acc = single(&weights[0], eps[0]);
    for (w, e) in weights.iter().zip(eps).skip(1) {
        let s = single(w, *e);
        acc = (0..=n_max)
            .into_par_iter()
            .map(|m| {
                let mut t = T::r_zero();
                for p in 0..=m {
                    if s[p].r_is_zero() || acc[m - p].r_is_zero() {
                        continue;
                    }
                    let c = T::r_from_bigint(binom[m][p].clone());
                    t = t.r_add(&c.r_mul(&s[p]).r_mul(&acc[m - p]));
                }
                t
            })
            .collect();
    }
    acc
}

fn check_index(n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::NegativeIndex(n))
}

fn numeric(spec: &SequenceSpec) -> Result<&[CycloNumber]> {
    spec.numeric_weights()
        .ok_or_else(|| Error::InvalidSpec("numeric weights required".into()))
}

pub fn weighted_term(spec: &SequenceSpec, n: i64) -> Result<CycloNumber> {
    aux_term(spec, n, &EpsVector::zero(spec.parts))
}

pub fn aux_term(spec: &SequenceSpec, n: i64, eps: &EpsVector) -> Result<CycloNumber> {
    let n = check_index(n)?;
    eps.validate(spec)?;
    Ok(aux_term_in(numeric(spec)?, spec.power, n, &eps.0))
}

/// Symbolic-capable variant: the value as a polynomial in the weight symbols.
pub fn aux_term_poly(spec: &SequenceSpec, n: i64, eps: &EpsVector) -> Result<MultiPoly> {
    let n = check_index(n)?;
    eps.validate(spec)?;
    Ok(aux_term_in(&spec.weight_polys(), spec.power, n, &eps.0))
}

/// `a_0, ..., a_{n_max}` for a numeric spec.
pub fn weighted_sequence(spec: &SequenceSpec, n_max: usize) -> Result<Vec<CycloNumber>> {
    aux_sequence(spec, &EpsVector::zero(spec.parts), n_max)
}

pub fn aux_sequence(spec: &SequenceSpec, eps: &EpsVector, n_max: usize) -> Result<Vec<CycloNumber>> {
    eps.validate(spec)?;
    Ok(aux_series_in(numeric(spec)?, spec.power, &eps.0, n_max))
}

/// `Σ_{p=0..n} a^p b^{n−p} C(n,p)^k`.
pub fn power_term(a: &CycloNumber, b: &CycloNumber, k: u32, n: i64) -> Result<CycloNumber> {
    let n = check_index(n)?;
    if k < 2 {
        return Err(Error::InvalidSpec(format!("power must be at least 2, got {k}")));
    }
    let mut acc = CycloNumber::zero();
    for p in 0..=n {
        let c = CycloNumber::from_bigint(binomial(n as u64, p as u64).pow(k));
        acc += &(&(&c * &a.pow(p as u32)) * &b.pow((n - p) as u32));
    }
    Ok(acc)
}

/// Checks `n a_n^ε = Σ(1−ε_i) a_n^{ε+e_i} + n² Σ α_i ε_i a_{n−1}^{ε−e_i}` exactly.
pub fn check_aux_relation(spec: &SequenceSpec, n: i64, eps: &EpsVector) -> Result<bool> {
    if n < 1 {
        return Err(Error::NegativeIndex(n - 1));
    }
    if spec.power != 2 {
        return Err(Error::InvalidSpec("the auxiliary relation is for squares".into()));
    }
    eps.validate(spec)?;
    let w = spec.weight_polys();
    let term = |m: i64, e: &EpsVector| aux_term_in(&w, 2, m as usize, &e.0);
    let lhs = term(n, eps).scale(&CycloNumber::from_int(n));
    let mut rhs = MultiPoly::zero();
    for i in 0..spec.parts {
        if eps.0[i] == 0 {
            rhs = &rhs + &term(n, &eps.raised(i));
        } else {
            let t = &w[i] * &term(n - 1, &eps.lowered(i));
            rhs = &rhs + &t.scale(&CycloNumber::from_int(n * n));
        }
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    fn ints(xs: &[i64]) -> Vec<CycloNumber> {
        xs.iter().map(|&x| CycloNumber::from_int(x)).collect()
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), BigInt::from(12));
        assert!(multinomial(4, &[2, 1]).is_err());
        assert!(multinomial(1, &[2, -1]).is_err());
    }

    #[test]
    fn small_values() {
        let s = SequenceSpec::unit(2).unwrap();
        assert_eq!(weighted_term(&s, 2).unwrap(), CycloNumber::from_int(6));
        let s = SequenceSpec::numeric(ints(&[1, 1, 1, 9])).unwrap();
        assert_eq!(weighted_term(&s, 0).unwrap(), CycloNumber::one());
        assert_eq!(weighted_term(&s, 1).unwrap(), CycloNumber::from_int(12));
        assert_eq!(weighted_term(&s, 2).unwrap(), CycloNumber::from_int(204));
        assert!(weighted_term(&s, -1).is_err());
    }

    #[test]
    fn aux_examples() {
        let s = SequenceSpec::symbolic(2).unwrap();
        assert_eq!(aux_term_poly(&s, 2, &EpsVector(vec![1, 0])).unwrap(), p("2*a^2 + 4*a*b"));
        let u = SequenceSpec::unit(2).unwrap();
        assert_eq!(aux_term(&u, 2, &EpsVector(vec![1, 1])).unwrap(), CycloNumber::from_int(4));
        assert!(aux_term(&u, 2, &EpsVector(vec![2, 0])).is_err());
        assert!(aux_term(&u, 2, &EpsVector(vec![1])).is_err());
    }

    #[test]
    fn power_values() {
        let one = CycloNumber::one();
        let got: Vec<_> = (0..5).map(|n| power_term(&one, &one, 3, n).unwrap()).collect();
        assert_eq!(got, ints(&[1, 2, 10, 56, 346]));
    }

    #[test]
    fn convolution_matches_enumeration() {
        let s = SequenceSpec::numeric(vec![
            CycloNumber::from_rational(crate::scalar::rat(2, 3)),
            CycloNumber::from_int(-1),
            CycloNumber::zeta3(),
        ])
        .unwrap();
        for eps in [vec![0, 0, 0], vec![1, 0, 1], vec![1, 1, 1]] {
            let e = EpsVector(eps);
            let series = aux_sequence(&s, &e, 9).unwrap();
            for (n, v) in series.iter().enumerate() {
                assert_eq!(*v, aux_term(&s, n as i64, &e).unwrap());
            }
        }
    }

    #[test]
    fn relation_symbolic_two_parts() {
        let s = SequenceSpec::symbolic(2).unwrap();
        for eps in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            for n in 1..6 {
                assert!(check_aux_relation(&s, n, &EpsVector(eps.to_vec())).unwrap());
            }
        }
    }
}
