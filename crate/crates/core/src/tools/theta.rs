use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{gcd_many, MultiPoly, PolyJson, Var};
use crate::recurrence::Recurrence;
use crate::scalar::CycloNumber;

/// `Σ_d q_d(t) Θ^d` with `Θ = t d/dt`; coefficients act after Θ (t on the left).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThetaOperator {
    coeffs: Vec<MultiPoly>,
}

impl ThetaOperator {
    /// Normalizes: trims, strips content free of `t`, and fixes the sign so the
    /// top power of `t` in the top Θ coefficient has a positive leading coefficient.
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Invalid("zero operator".into()));
        }
        let g = gcd_many(coeffs.iter().filter(|c| !c.is_zero()));
        let tfree = gcd_many(g.coefficients_in(Var::T).iter().filter(|c| !c.is_zero()));
        if !tfree.is_one() {
            coeffs = coeffs
                .into_iter()
                .map(|c| if c.is_zero() { c } else { c.div_exact(&tfree).expect("content divides") })
                .collect();
        }
        let top = coeffs.last().unwrap().coefficients_in(Var::T).pop().unwrap();
        let lc = top.leading_coeff();
        if !lc.is_rational() {
            let inv = lc.inv()?;
            coeffs = coeffs.into_iter().map(|c| c.scale(&inv)).collect();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in &coeffs {
            for (_, x) in c.terms() {
                x.accumulate_content(&mut den, &mut num);
            }
        }
        let mut f = num_rational::BigRational::new(den, num);
        let top = coeffs.last().unwrap().coefficients_in(Var::T).pop().unwrap();
        if top.leading_coeff().lead_sign() < 0 {
            f = -f;
        }
        let f = CycloNumber::from_rational(f);
        Ok(ThetaOperator { coeffs: coeffs.into_iter().map(|c| c.scale(&f)).collect() })
    }

    pub fn raw(coeffs: Vec<MultiPoly>) -> Self {
        ThetaOperator { coeffs }
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn theta_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn t_degree(&self) -> u16 {
        self.coeffs.iter().map(|c| c.degree_in(Var::T)).max().unwrap_or(0)
    }

    pub fn leading(&self) -> &MultiPoly {
        self.coeffs.last().unwrap()
    }

    /// `Σ_k c_k(n) a_{n−k} = 0  ↦  Σ_k t^k c_k(Θ + k)`.
    pub fn from_recurrence(r: &Recurrence) -> Result<Self> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for (k, c) in r.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // n stands in for Θ
            let shifted = c.shift(Var::N, k as i64);
            let tk = MultiPoly::term(crate::poly::Monomial::var(Var::T, k as u16), CycloNumber::one());
            for (d, q) in shifted.coefficients_in(Var::N).into_iter().enumerate() {
                if out.len() <= d {
                    out.resize(d + 1, MultiPoly::zero());
                }
                out[d] = &out[d] + &(&q * &tk);
            }
        }
        Self::new(out)
    }

    /// Inverse of [`ThetaOperator::from_recurrence`]: `c_k(n) = Σ_d q_{d,k} (n − k)^d`.
    pub fn to_recurrence(&self) -> Result<Recurrence> {
        let order = self.t_degree() as usize;
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        for (d, q) in self.coeffs.iter().enumerate() {
            for (k, qk) in q.coefficients_in(Var::T).into_iter().enumerate() {
                if qk.is_zero() {
                    continue;
                }
                let base = MultiPoly::var_plus(Var::N, -(k as i64)).pow(d as u32);
                coeffs[k] = &coeffs[k] + &(&qk * &base);
            }
        }
        Recurrence::new(coeffs)
    }

    /// Coefficients of `t^0..t^order` of the operator applied to `Σ s_m t^m`.
    pub fn apply_to_series(&self, series: &[CycloNumber], order: usize) -> Result<Vec<CycloNumber>> {
        if series.len() <= order {
            return Err(Error::SeriesTooShort { have: series.len(), need: order + 1 });
        }
        let mut table: Vec<Vec<CycloNumber>> = Vec::new();
        for q in &self.coeffs {
            let row = q.univariate_coeffs(Var::T).ok_or_else(|| {
                Error::Invalid("operator coefficients must be numeric polynomials in t".into())
            })?;
            table.push(row);
        }
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = CycloNumber::zero();
            for (d, row) in table.iter().enumerate() {
                for (k, q) in row.iter().enumerate() {
                    if k > n || q.is_zero() {
                        continue;
                    }
                    let m = (n - k) as i64;
                    let f = CycloNumber::from_int(m).pow(d as u32);
                    acc += &(&(q * &f) * &series[n - k]);
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn substitute_weights(&self, weights: &[CycloNumber]) -> Result<Self> {
        let a: std::collections::HashMap<Var, CycloNumber> =
            weights.iter().enumerate().map(|(i, w)| (Var::weight(i), w.clone())).collect();
        Self::new(self.coeffs.iter().map(|c| c.substitute_scalars(&a)).collect())
    }

    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (d, q) in self.coeffs.iter().enumerate().rev() {
            if q.is_zero() {
                continue;
            }
            let qs = if q.len() > 1 && d > 0 { format!("({q})") } else { q.to_text() };
            parts.push(match d {
                0 => qs,
                1 => format!("{qs}*T"),
                _ => format!("{qs}*T^{d}"),
            });
        }
        parts.join(" + ")
    }

    pub fn to_json(&self) -> ThetaJson {
        let mut vars: Vec<Var> = self.coeffs.iter().flat_map(|c| c.vars()).collect();
        vars.sort();
        vars.dedup();
        ThetaJson {
            theta_degree: self.theta_degree(),
            vars: vars.iter().map(|v| v.name().to_string()).collect(),
            coeffs_t: self.coeffs.iter().map(|c| c.to_json()).collect(),
        }
    }

    pub fn from_json(j: &ThetaJson) -> Result<Self> {
        let coeffs: Vec<MultiPoly> = j.coeffs_t.iter().map(MultiPoly::from_json).collect::<Result<_>>()?;
        if coeffs.len() != j.theta_degree + 1 {
            return Err(Error::Parse("theta_degree does not match coefficient count".into()));
        }
        Ok(ThetaOperator { coeffs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaJson {
    pub theta_degree: usize,
    pub vars: Vec<String>,
    pub coeffs_t: Vec<PolyJson>,
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn to_theta_operator(r: &Recurrence) -> Result<ThetaOperator> {
    ThetaOperator::from_recurrence(r)
}

pub fn from_theta_operator(op: &ThetaOperator) -> Result<Recurrence> {
    op.to_recurrence()
}

/// True when the operator kills `Σ s_n t^n` through `t^order`.
pub fn annihilation_check(op: &ThetaOperator, series: &[CycloNumber], order: usize) -> Result<bool> {
    Ok(op.apply_to_series(series, order)?.iter().all(|c| c.is_zero()))
}
