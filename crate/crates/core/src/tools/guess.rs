
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{MultiPoly, Var};
use crate::recurrence::Recurrence;
use crate::scalar::CycloNumber;

/// Terms needed for a given search box.
pub fn terms_needed(max_order: usize, max_degree: usize) -> usize {
    (max_order + 1) * (max_degree + 2) + max_order
}

/// Searches orders `1..=max_order` and degrees `0..=max_degree` in ascending
/// order for `Σ_k c_k(n) terms[n−k] = 0` with `deg c_k ≤ D`.
pub fn guess_recurrence(
    terms: &[CycloNumber],
    max_order: usize,
    max_degree: usize,
) -> Result<Option<Recurrence>> {
    let need = terms_needed(max_order, max_degree);
    if terms.len() < need {
        return Err(Error::NeedMoreTerms { have: terms.len(), need });
    }
    for order in 1..=max_order {
        for degree in 0..=max_degree {
            if let Some(r) = try_box(terms, order, degree)? {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

fn try_box(terms: &[CycloNumber], order: usize, degree: usize) -> Result<Option<Recurrence>> {
    let unknowns = (order + 1) * (degree + 1);
    let rows: Vec<Vec<CycloNumber>> = (order..terms.len())
        .map(|n| {
            let mut row = Vec::with_capacity(unknowns);
            for k in 0..=order {
                let mut pw = CycloNumber::from_int(1);
                let x = CycloNumber::from_int(n as i64);
                for _ in 0..=degree {
                    row.push(&pw * &terms[n - k]);
                    pw = &pw * &x;
                }
            }
            row
        })
        .collect();
    if rows.len() <= unknowns {
        return Ok(None);
    }
    let m = Matrix::from_rows(rows);
    for v in m.nullspace() {
        let coeffs: Vec<MultiPoly> = v
            .chunks(degree + 1)
            .map(|ch| MultiPoly::univariate(Var::N, ch))
            .collect();
        if coeffs[0].is_zero() || coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let r = Recurrence::new(coeffs)?;
        if r.first_failure(terms)?.is_none() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}
