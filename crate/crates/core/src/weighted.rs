//! Recurrences for `Σ Π α_i^{p_i} C(n; p)²` from the auxiliary-space maps Φ, Ψ.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::{weighted_sequence, EpsVector, SequenceSpec};
use crate::poly::{MultiPoly, Var};
use crate::ratfunc::RatFunc;
use crate::recurrence::Recurrence;
use crate::scalar::CycloNumber;

/// Largest part count accepted with symbolic weights.
pub const MAX_SYMBOLIC_PARTS: usize = 3;
/// Largest part count accepted with numeric weights.
pub const MAX_NUMERIC_PARTS: usize = 5;

/// Ordered basis `{a_{n+shift}^ε}` of `W_n^parity`, with `|ε| = 2·shift + parity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceBasis {
    pub parity: u8,
    pub entries: Vec<(usize, EpsVector)>,
}

impl SpaceBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, shift: usize, eps: &EpsVector) -> Option<usize> {
        self.entries.iter().position(|(s, e)| *s == shift && e == eps)
    }

    /// Labels such as `"011@1"` (ε, then shift).
    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|(s, e)| format!("{}@{s}", e.label())).collect()
    }
}

/// Basis of `W_n^parity`: shift ascending, then ε lexicographic.
pub fn enumerate_basis(parts: usize, parity: u8) -> SpaceBasis {
    let mut entries = Vec::new();
    let mut level = parity as usize;
    while level <= parts {
        let mut eps: Vec<EpsVector> = (0u32..1 << parts)
            .filter(|m| m.count_ones() as usize == level)
            .map(|m| EpsVector((0..parts).map(|i| (m >> (parts - 1 - i)) & 1).collect()))
            .collect();
        eps.sort();
        entries.extend(eps.into_iter().map(|e| ((level - parity as usize) / 2, e)));
        level += 2;
    }
    SpaceBasis { parity, entries }
}

fn check_spec(spec: &SequenceSpec) -> Result<()> {
    if spec.power() != 2 {
        return Err(Error::InvalidSpec("the weighted engine handles squares only".into()));
    }
    if spec.parts() < 2 {
        return Err(Error::InvalidSpec("need at least two parts".into()));
    }
    spec.require_nonzero()
}

fn n_plus(k: i64) -> MultiPoly {
    MultiPoly::var_plus(Var::N, k)
}

/// Coordinate matrix of `Φ_n^parity` (columns are images of source basis elements).
/// Parity 0 maps `W_n^0 → W_n^1`; parity 1 maps `W_n^1 → W_{n−1}^0`.
pub fn build_phi(spec: &SequenceSpec, parity: u8) -> Result<Matrix<RatFunc>> {
    check_spec(spec)?;
    if parity > 1 {
        return Err(Error::InvalidSpec(format!("parity {parity}")));
    }
    let parts = spec.parts();
    let weights = spec.weight_polys();
    let src = enumerate_basis(parts, parity);
    let dst = enumerate_basis(parts, 1 - parity);
    let mut m = Matrix::<RatFunc>::zeros(dst.len(), src.len());
    for (col, (k, eps)) in src.entries.iter().enumerate() {
        let idx = n_plus(*k as i64);
        let inv = RatFunc::new(MultiPoly::one(), idx.clone())?;
        // shifts of the images relative to the target base index
        let (up, down) = if parity == 0 { (*k, k.wrapping_sub(1)) } else { (k + 1, *k) };
        for i in 0..parts {
            if eps.0[i] == 0 {
                let row = dst.position(up, &eps.raised(i)).expect("raised entry in target basis");
                let v = m.get(row, col) + &inv;
                m.set(row, col, v);
            } else {
                let row = dst.position(down, &eps.lowered(i)).expect("lowered entry in target basis");
                let v = m.get(row, col) + &RatFunc::from_poly(&idx * &weights[i]);
                m.set(row, col, v);
            }
        }
    }
    Ok(m)
}

/// `Ψ_n = Φ_n^1 ∘ Φ_n^0 : W_n^0 → W_{n−1}^0`.
pub fn build_psi(spec: &SequenceSpec) -> Result<Matrix<RatFunc>> {
    Ok(build_phi(spec, 1)?.mul(&build_phi(spec, 0)?))
}

pub(crate) fn shifted(m: &Matrix<RatFunc>, k: i64) -> Matrix<RatFunc> {
    if k == 0 {
        return m.clone();
    }
    m.map(|x| x.shift(Var::N, k))
}

/// Columns `j = 0..=m`: the image of `a_{n−j}` under `Ψ_{n−m+1} ∘ ⋯ ∘ Ψ_{n−j}`,
/// in the basis of `W_{n−m}^0`.
pub fn stack_columns(spec: &SequenceSpec, m: usize) -> Result<Matrix<RatFunc>> {
    let psi = build_psi(spec)?;
    Ok(stack_from_psi(&psi, m))
}

pub(crate) fn stack_from_psi(psi: &Matrix<RatFunc>, m: usize) -> Matrix<RatFunc> {
    let d = psi.rows();
    let psis: Vec<Matrix<RatFunc>> = (0..m).map(|j| shifted(psi, -(j as i64))).collect();
    let cols: Vec<Vec<RatFunc>> = (0..=m)
        .into_par_iter()
        .map(|j| {
            let mut v = vec![RatFunc::zero(); d];
            v[0] = RatFunc::one();
            for p in &psis[j..m] {
                v = p.mul_vec(&v);
            }
            v
        })
        .collect();
    Matrix::from_cols(cols)
}

/// Outcome of the kernel search.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub recurrence: Recurrence,
    /// Number of Ψ steps stacked.
    pub steps: usize,
    /// Rank of the final stack at the sample points.
    pub rank: usize,
}

pub fn derive_recurrence(spec: &SequenceSpec) -> Result<Recurrence> {
    Ok(derive_with_details(spec)?.recurrence)
}

/// Smallest step count `M` whose stacked matrix has a kernel; within it, the
/// shortest column prefix with a kernel supplies the relation.
pub fn derive_with_details(spec: &SequenceSpec) -> Result<Derivation> {
    check_spec(spec)?;
    let parts = spec.parts();
    if spec.is_symbolic() && parts > MAX_SYMBOLIC_PARTS {
        return Err(Error::ResourceGuard(format!("symbolic derivation limited to N ≤ {MAX_SYMBOLIC_PARTS}")));
    }
    if !spec.is_symbolic() && parts > MAX_NUMERIC_PARTS {
        return Err(Error::ResourceGuard(format!("numeric derivation limited to N ≤ {MAX_NUMERIC_PARTS}")));
    }
    let bound = 1usize << (parts - 1);
    let psi = build_psi(spec)?;
    let d = psi.rows();
    let unit = |d: usize| {
        let mut v = vec![RatFunc::zero(); d];
        v[0] = RatFunc::one();
        v
    };
    // columns of the stack for the current step count, extended one Ψ at a time
    let mut cols: Vec<Vec<RatFunc>> = vec![unit(d)];
    for m in 1..=bound {
        let step = shifted(&psi, -(m as i64 - 1));
        cols = cols.into_par_iter().map(|c| step.mul_vec(&c)).collect();
        cols.push(unit(d));
        let stack = Matrix::from_cols(cols.clone());
        // full column rank at a sample point certifies full rank generically
        let samples: Vec<Matrix<CycloNumber>> =
            (0..2).filter_map(|t| eval_at(&stack, &sample_point(spec, t))).collect();
        if samples.iter().any(|s| s.rank() == m + 1) {
            continue;
        }
        for j in 1..=m {
            if samples.iter().any(|s| s.column_slice(0..j + 1).rank() == j + 1) {
                continue;
            }
            let ker = stack.column_slice(0..j + 1).nullspace_poly();
            if let Some(v) = ker.into_iter().next() {
                let recurrence = Recurrence::new(v)?;
                if !spec.is_symbolic() {
                    self_check(&recurrence, spec)?;
                }
                let rank = samples.iter().map(|s| s.rank()).max().unwrap_or(j);
                return Ok(Derivation { recurrence, steps: m, rank });
            }
        }
    }
    Err(Error::DimensionBound(bound))
}

fn sample_point(spec: &SequenceSpec, t: i64) -> HashMap<Var, CycloNumber> {
    let mut point = HashMap::new();
    point.insert(Var::N, CycloNumber::from_int(1009 + 7919 * t));
    if spec.is_symbolic() {
        for i in 0..spec.parts() {
            point.insert(Var::weight(i), CycloNumber::from_int(211 + 104_729 * t + 7 * i as i64 * (i as i64 + 3)));
        }
    }
    point
}

/// Exact values of all entries at a point, or none at a pole.
fn eval_at(m: &Matrix<RatFunc>, point: &HashMap<Var, CycloNumber>) -> Option<Matrix<CycloNumber>> {
    m.try_map(|x| {
        let num = x.num().substitute_scalars(point).constant_value().expect("all variables assigned");
        let den = x.den().substitute_scalars(point).constant_value().expect("all variables assigned");
        Ok(&num * &den.inv()?)
    })
    .ok()
}

fn self_check(r: &Recurrence, spec: &SequenceSpec) -> Result<()> {
    let seq = weighted_sequence(spec, r.order() + 10)?;
    match r.first_failure(&seq)? {
        None => Ok(()),
        Some((n, _)) => Err(Error::Invalid(format!("derived recurrence fails the oracle at n = {n}"))),
    }
}
