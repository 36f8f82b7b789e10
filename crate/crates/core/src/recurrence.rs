//! Linear recurrences `Σ_k c_k(n) a_{n−k} = 0` with polynomial coefficients.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::normalize_vector;
use crate::poly::{MultiPoly, PolyJson, Var};
use crate::scalar::CycloNumber;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Recurrence {
    coeffs: Vec<MultiPoly>,
}

impl Recurrence {
    /// Builds and normalizes. Leading zero coefficients are absorbed by
    /// shifting `n`; trailing zeros are dropped.
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Invalid("recurrence with all coefficients zero".into()));
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            // Σ c_k(n) a_{n−k} with c_0..c_{s−1} = 0 is a relation at index n − s
            coeffs = coeffs[lead_zeros..]
                .iter()
                .map(|c| c.shift(Var::N, lead_zeros as i64))
                .collect();
        }
        Ok(Recurrence { coeffs: normalize_vector(coeffs) })
    }

    /// Keeps the coefficients exactly as given (no normalization).
    pub fn raw(coeffs: Vec<MultiPoly>) -> Self {
        Recurrence { coeffs }
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.coeffs.iter().flat_map(|c| c.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn is_numeric(&self) -> bool {
        self.vars().iter().all(|v| *v == Var::N)
    }

    pub fn normalized(&self) -> Result<Self> {
        Self::new(self.coeffs.clone())
    }

    /// `n ↦ n + k` in every coefficient.
    pub fn shift(&self, k: i64) -> Self {
        Recurrence { coeffs: self.coeffs.iter().map(|c| c.shift(Var::N, k)).collect() }
    }

    pub fn substitute(&self, assignment: &HashMap<Var, MultiPoly>) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c.substitute(assignment)).collect())
    }

    /// Specializes weight symbols `a, b, ...` to numbers.
    pub fn specialize(&self, weights: &[CycloNumber]) -> Result<Self> {
        let a: HashMap<Var, MultiPoly> = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (Var::weight(i), MultiPoly::constant(w.clone())))
            .collect();
        self.substitute(&a)
    }

    /// `Σ_k c_k(n) seq[n−k]` for a numeric recurrence.
    pub fn residual(&self, seq: &[CycloNumber], n: usize) -> Result<CycloNumber> {
        if n < self.order() || n >= seq.len() {
            return Err(Error::Invalid(format!("index {n} outside the usable range")));
        }
        let x = CycloNumber::from_int(n as i64);
        let mut acc = CycloNumber::from_int(0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.eval_univariate(Var::N, &x)?;
            acc += &(&v * &seq[n - k]);
        }
        Ok(acc)
    }

    /// First index in `order..seq.len()` with a nonzero residual.
    pub fn first_failure(&self, seq: &[CycloNumber]) -> Result<Option<(usize, CycloNumber)>> {
        for n in self.order()..seq.len() {
            let r = self.residual(seq, n)?;
            if !num_traits::Zero::is_zero(&r) {
                return Ok(Some((n, r)));
            }
        }
        Ok(None)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let idx = if k == 0 { "a(n)".to_string() } else { format!("a(n-{k})") };
                format!("({c})*{idx}")
            })
            .collect();
        format!("{} = 0", parts.join(" + "))
    }

    pub fn to_json(&self) -> RecurrenceJson {
        RecurrenceJson {
            order: self.order(),
            vars: self.vars().iter().map(|v| v.name().to_string()).collect(),
            coeffs: self.coeffs.iter().map(|c| c.to_json()).collect(),
        }
    }

    pub fn from_json(j: &RecurrenceJson) -> Result<Self> {
        let coeffs: Vec<MultiPoly> = j.coeffs.iter().map(MultiPoly::from_json).collect::<Result<_>>()?;
        if coeffs.len() != j.order + 1 {
            return Err(Error::Parse("order does not match coefficient count".into()));
        }
        Ok(Recurrence::raw(coeffs))
    }

    /// Parses coefficient texts `c_0; c_1; ...`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs: Vec<MultiPoly> =
            s.split(';').map(|t| MultiPoly::parse(t.trim())).collect::<Result<_>>()?;
        Self::new(coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceJson {
    pub order: usize,
    pub vars: Vec<String>,
    pub coeffs: Vec<PolyJson>,
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Splits a polynomial as `scalar · Π (n − r)^e · rest` over small integer and
/// half-integer roots, for display.
pub fn linear_factors(p: &MultiPoly) -> (CycloNumber, Vec<(num_rational::BigRational, u32)>, MultiPoly) {
    use num_rational::BigRational;
    let mut rest = p.clone();
    let mut factors = Vec::new();
    if rest.is_zero() {
        return (CycloNumber::from_int(0), factors, rest);
    }
    for num in -40i64..=40 {
        for den in [1i64, 2] {
            if den == 2 && num % 2 == 0 {
                continue;
            }
            let r = BigRational::new(num.into(), den.into());
            let lin = &MultiPoly::scale(&MultiPoly::var(Var::N), &CycloNumber::from_int(den))
                - &MultiPoly::int(num);
            let mut e = 0;
            while rest.degree_in(Var::N) > 0 {
                match rest.div_exact(&lin) {
                    Some(q) => {
                        rest = q;
                        e += 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                // (den·n − num) = den·(n − r)
                rest = rest.scale(&CycloNumber::from_int(den).pow(e));
                factors.push((r, e));
            }
        }
    }
    let (c, prim) = rest.primitive_normalize().expect("nonzero");
    factors.sort_by(|a, b| b.0.cmp(&a.0));
    (c, factors, prim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    #[test]
    fn normalization_strips_common_factor() {
        let r = Recurrence::new(vec![p("2*n^3"), p("-4*n^2*(2*n - 1)")]).unwrap();
        assert_eq!(r.coeffs(), &[p("n"), p("-4*n + 2")]);
        let r = Recurrence::new(vec![p("-n"), p("4*n - 2"), MultiPoly::zero()]).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.coeffs()[0], p("n"));
    }

    #[test]
    fn leading_zero_shifts_index() {
        let r = Recurrence::new(vec![MultiPoly::zero(), p("n - 1"), p("-2")]).unwrap();
        assert_eq!(r.coeffs(), &[p("n"), p("-2")]);
    }

    #[test]
    fn residuals() {
        let r = Recurrence::new(vec![p("n"), p("-4*n + 2")]).unwrap();
        let seq: Vec<CycloNumber> =
            [1, 2, 6, 20, 70, 252].iter().map(|&x| CycloNumber::from_int(x)).collect();
        assert_eq!(r.first_failure(&seq).unwrap(), None);
        let mut bad = seq.clone();
        bad[4] = CycloNumber::from_int(71);
        assert_eq!(r.first_failure(&bad).unwrap().unwrap().0, 4);
    }

    #[test]
    fn json_roundtrip() {
        let r = Recurrence::new(vec![p("n"), p("-(2*n - 1)*(a + b)"), p("(n - 1)*(a - b)^2")]).unwrap();
        let s = serde_json::to_string(&r.to_json()).unwrap();
        let back: RecurrenceJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Recurrence::from_json(&back).unwrap(), r);
    }

    #[test]
    fn factor_display() {
        let (c, f, rest) = linear_factors(&p("9*(n - 1)^2"));
        assert_eq!(c, CycloNumber::from_int(9));
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].1, 2);
        assert!(rest.is_one());
    }
}
