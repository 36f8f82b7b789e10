use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{weighted_sequence, SequenceSpec};
use crate::recurrence::Recurrence;
use crate::scalar::CycloNumber;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checked_from: usize,
    pub checked_to: usize,
    /// First index with a nonzero residual, and that residual.
    pub failure: Option<(usize, CycloNumber)>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `Σ c_k(n) a_{n−k} = 0` against oracle terms for `order ≤ n ≤ n_max`.
/// Weight symbols in the recurrence are specialized to the spec's weights.
pub fn verify_recurrence(r: &Recurrence, spec: &SequenceSpec, n_max: usize) -> Result<VerifyReport> {
    let weights = spec.numeric_weights().ok_or(Error::SymbolicVerification)?;
    if n_max < r.order() {
        return Err(Error::Invalid(format!("n_max {n_max} below the order {}", r.order())));
    }
    let r = if r.is_numeric() { r.clone() } else { Recurrence::raw(r.specialize(weights)?.coeffs().to_vec()) };
    let seq = weighted_sequence(spec, n_max)?;
    Ok(verify_against(&r, &seq))
}

/// Same check against explicit terms.
pub fn verify_against(r: &Recurrence, seq: &[CycloNumber]) -> VerifyReport {
    let failure = r.first_failure(seq).expect("numeric recurrence");
    VerifyReport { checked_from: r.order(), checked_to: seq.len().saturating_sub(1), failure }
}
