use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Var};
use crate::recurrence::Recurrence;

/// Forms `Σ_j m_j(n) R(n−j)` and divides every coefficient by `divisor` exactly.
pub fn shift_reduce(r: &Recurrence, multipliers: &[MultiPoly], divisor: &MultiPoly) -> Result<Recurrence> {
    Recurrence::new(combine(r, multipliers, divisor)?)
}

/// The combined, divided coefficients before normalization.
pub fn combine(r: &Recurrence, multipliers: &[MultiPoly], divisor: &MultiPoly) -> Result<Vec<MultiPoly>> {
    if divisor.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if multipliers.is_empty() {
        return Err(Error::Invalid("no multipliers".into()));
    }
    let order = r.order() + multipliers.len() - 1;
    let mut out = vec![MultiPoly::zero(); order + 1];
    for (j, m) in multipliers.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        for (k, c) in r.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[j + k] = &out[j + k] + &(m * &c.shift(Var::N, -(j as i64)));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, c)| c.div_exact(divisor).ok_or(Error::InexactDivision { index: i }))
        .collect()
}
