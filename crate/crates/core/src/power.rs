//! Recurrences for `c_n = Σ_p a^p b^{n−p} C(n,p)^k` from the auxiliary terms
//! `c_n^{i,j} = Σ_{p+q=n} a^p b^q p^i q^j C(n,p)^k`, `0 ≤ i, j < k`.
//!
//! The relation used throughout is `n c_n^{i,j} = R_1 + R_2` with
//! `R_1 = c_n^{i+1,j}` if `i + 1 < k`, else `n^k a c_{n−1}^{0,j}`, and `R_2`
//! the same in the second slot with `b`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::{weighted_sequence, SequenceSpec};
use crate::poly::{MultiPoly, Var};
use crate::ratfunc::RatFunc;
use crate::recurrence::Recurrence;
use crate::weighted::{shifted, stack_from_psi};

/// Largest power accepted by the derivation.
pub const MAX_POWER: usize = 5;
/// Largest power accepted with symbolic weights.
pub const MAX_SYMBOLIC_POWER: usize = 3;

/// Ordered basis `{c_{n+shift}^{i,j}}` of `W_{k,n}^level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerBasis {
    pub k: usize,
    pub level: usize,
    /// `(shift, (i, j))` with `i + j = level + shift·k`; shift ascending, then `i` ascending.
    pub entries: Vec<(usize, (usize, usize))>,
    /// Pairs `(i, j)` and `(j, i)` are identified; representatives have `i ≥ j`.
    pub symmetric: bool,
}

impl PowerBasis {
    /// `W_{k,n}^level = V_{k,n}^level ⊕ V_{k,n+1}^{k+level}` for `level < k`, and `V_{k,n}^k` for `level = k`.
    pub fn new(k: usize, level: usize, symmetric: bool) -> Result<Self> {
        if k < 2 || level > k {
            return Err(Error::InvalidStage { stage: level, k });
        }
        let shifts: &[usize] = if level < k { &[0, 1] } else { &[0] };
        let mut entries = Vec::new();
        for &s in shifts {
            let m = level + s * k;
            for i in 0..k {
                if m < i || m - i >= k {
                    continue;
                }
                let j = m - i;
                if symmetric && i < j {
                    continue;
                }
                entries.push((s, (i, j)));
            }
        }
        Ok(PowerBasis { k, level, entries, symmetric })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, shift: usize, pair: (usize, usize)) -> Option<usize> {
        let pair = if self.symmetric && pair.0 < pair.1 { (pair.1, pair.0) } else { pair };
        self.entries.iter().position(|e| *e == (shift, pair))
    }

    /// Labels such as `"12@1"` (exponents, then shift).
    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|(s, (i, j))| format!("{i}{j}@{s}")).collect()
    }
}

/// `dim V_{k,n}^m`: pairs `0 ≤ i, j < k` with `i + j = m`.
pub fn v_dimension(k: usize, m: usize) -> usize {
    (0..k).filter(|&i| m >= i && m - i < k).count()
}

fn check(spec: &SequenceSpec) -> Result<usize> {
    if spec.parts() != 2 {
        return Err(Error::InvalidSpec("the power engine needs exactly two weights".into()));
    }
    spec.require_nonzero()?;
    Ok(spec.power() as usize)
}

/// Symmetric mode is used exactly when both weights are equal numbers.
pub fn is_symmetric(spec: &SequenceSpec) -> bool {
    spec.numeric_weights().is_some_and(|w| w[0] == w[1])
}

fn basis(spec: &SequenceSpec, level: usize) -> Result<PowerBasis> {
    PowerBasis::new(spec.power() as usize, level, is_symmetric(spec))
}

/// Coordinate matrix (columns are images) of `Φ_n^stage`, mapping `W_{k,n}^stage`
/// to `W_{k,n}^{stage+1}`, or to `W_{k,n−1}^0` for the last stage.
pub fn build_power_phi(spec: &SequenceSpec, stage: usize) -> Result<Matrix<RatFunc>> {
    let k = check(spec)?;
    if stage >= k {
        return Err(Error::InvalidStage { stage, k });
    }
    let src = basis(spec, stage)?;
    let last = stage + 1 == k;
    let dst = basis(spec, if last { 0 } else { stage + 1 })?;
    // index of the target space relative to n
    let base: i64 = if last { -1 } else { 0 };
    let weights = spec.weight_polys();
    let mut m = Matrix::zeros(dst.len(), src.len());
    for (col, &(s, (i, j))) in src.entries.iter().enumerate() {
        let idx = MultiPoly::var_plus(Var::N, s as i64);
        let raise = RatFunc::new(MultiPoly::one(), idx.clone())?;
        let lower = |w: &MultiPoly| RatFunc::from_poly(&idx.pow(k as u32 - 1) * w);
        let mut put = |index: i64, pair: (usize, usize), c: RatFunc| {
            let shift = usize::try_from(index - base).expect("target shift is 0 or 1");
            let row = dst.position(shift, pair).expect("target in basis");
            let v = m.get(row, col) + &c;
            m.set(row, col, v);
        };
        let here = s as i64;
        if i + 1 < k {
            put(here, (i + 1, j), raise.clone());
        } else {
            put(here - 1, (0, j), lower(&weights[0]));
        }
        if j + 1 < k {
            put(here, (i, j + 1), raise);
        } else {
            put(here - 1, (i, 0), lower(&weights[1]));
        }
    }
    Ok(m)
}

/// `Ψ_n = Φ_n^{k−1} ∘ ⋯ ∘ Φ_n^0 : W_{k,n}^0 → W_{k,n−1}^0`.
pub fn build_power_psi(spec: &SequenceSpec) -> Result<Matrix<RatFunc>> {
    let k = check(spec)?;
    let mut psi = build_power_phi(spec, 0)?;
    for stage in 1..k {
        psi = build_power_phi(spec, stage)?.mul(&psi);
    }
    Ok(psi)
}

/// Columns `j = 0..=m`: the image of `c_{n−j}` in `W_{k,n−m}^0`.
pub fn power_stack_columns(spec: &SequenceSpec, m: usize) -> Result<Matrix<RatFunc>> {
    Ok(stack_from_psi(&build_power_psi(spec)?, m))
}

/// The level whose space is smallest (the first one on ties).
pub fn target_level(spec: &SequenceSpec) -> Result<usize> {
    let k = check(spec)?;
    let dims: Vec<usize> = (0..k).map(|l| basis(spec, l).map(|b| b.len())).collect::<Result<_>>()?;
    Ok((0..k).min_by_key(|&l| dims[l]).unwrap_or(0))
}

/// Outcome of the power-engine kernel search.
#[derive(Clone, Debug)]
pub struct PowerDerivation {
    pub recurrence: Recurrence,
    /// Number of Ψ steps stacked.
    pub steps: usize,
    /// Level of the space holding the relation.
    pub level: usize,
    pub symmetric: bool,
}

pub fn derive_power_recurrence(spec: &SequenceSpec) -> Result<Recurrence> {
    Ok(derive_power_with_details(spec)?.recurrence)
}

/// Stacks images of `c_n, c_{n−1}, …` in `W_{k,n−M}^L`, where `L` is the
/// smallest level, and returns the shortest column prefix with a kernel.
pub fn derive_power_with_details(spec: &SequenceSpec) -> Result<PowerDerivation> {
    let k = check(spec)?;
    if k > MAX_POWER {
        return Err(Error::ResourceGuard(format!("power derivation limited to k ≤ {MAX_POWER}")));
    }
    if spec.is_symbolic() && k > MAX_SYMBOLIC_POWER {
        return Err(Error::ResourceGuard(format!("symbolic power derivation limited to k ≤ {MAX_SYMBOLIC_POWER}")));
    }
    let level = target_level(spec)?;
    let bound = basis(spec, level)?.len();
    let psi = build_power_psi(spec)?;
    let phis: Vec<Matrix<RatFunc>> = (0..level).map(|s| build_power_phi(spec, s)).collect::<Result<_>>()?;
    for m in 1..=bound {
        let mut stack = stack_from_psi(&psi, m);
        for phi in &phis {
            stack = shifted(phi, -(m as i64)).mul(&stack);
        }
        for j in 1..=m {
            let ker = stack.column_slice(0..j + 1).nullspace_poly();
            if let Some(v) = ker.into_iter().next() {
                let recurrence = Recurrence::new(v)?;
                if !spec.is_symbolic() {
                    let seq = weighted_sequence(spec, recurrence.order() + 10)?;
                    if let Some((n, _)) = recurrence.first_failure(&seq)? {
                        return Err(Error::Invalid(format!("derived recurrence fails the oracle at n = {n}")));
                    }
                }
                return Ok(PowerDerivation { recurrence, steps: m, level, symmetric: is_symmetric(spec) });
            }
        }
    }
    Err(Error::DimensionBound(bound))
}
