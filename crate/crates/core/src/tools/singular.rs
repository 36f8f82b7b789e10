use nalgebra::{Complex, DMatrix};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Var};
use crate::tools::theta::ThetaOperator;

pub type C64 = Complex<f64>;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityReport {
    /// Roots of the leading Θ coefficient that are not apparent, as `[re, im]`.
    pub singular_points: Vec<[f64; 2]>,
    pub apparent_points: Vec<[f64; 2]>,
    pub tolerance: f64,
}

impl SingularityReport {
    pub fn singular(&self) -> Vec<C64> {
        self.singular_points.iter().map(|z| C64::new(z[0], z[1])).collect()
    }

    pub fn apparent(&self) -> Vec<C64> {
        self.apparent_points.iter().map(|z| C64::new(z[0], z[1])).collect()
    }
}

/// Coefficients (ascending in `t`) of a polynomial in `t` alone.
pub fn t_coeffs(p: &MultiPoly) -> Result<Vec<C64>> {
    let cs = p
        .univariate_coeffs(Var::T)
        .ok_or_else(|| Error::Invalid("expected a numeric polynomial in t".into()))?;
    Ok(cs.iter().map(|c| { let (re, im) = c.to_complex(); C64::new(re, im) }).collect())
}

pub fn horner(coeffs: &[C64], x: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
}

fn derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// All complex roots with multiplicity: companion-matrix Schur form, then Newton polishing.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut cs = coeffs.to_vec();
    while cs.last().is_some_and(|c| c.norm() == 0.0) {
        cs.pop();
    }
    let deg = cs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = cs[deg];
    let comp = DMatrix::<C64>::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -cs[i] / lead
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let schur = nalgebra::linalg::Schur::try_new(comp, 1e-15, 10_000).expect("Schur iteration converges");
    let t = schur.unpack().1;
    let d = derivative(&cs);
    (0..deg)
        .map(|i| {
            let mut x = t[(i, i)];
            for _ in 0..50 {
                let fx = horner(&cs, x);
                let dx = horner(&d, x);
                if dx.norm() == 0.0 {
                    break;
                }
                let next = x - fx / dx;
                if horner(&cs, next).norm() >= fx.norm() {
                    break;
                }
                x = next;
            }
            x
        })
        .collect()
}

fn close(x: C64, y: C64, tol: f64) -> bool {
    (x - y).norm() <= tol * x.norm().max(y.norm()).max(1e-300)
}

pub fn singularities(op: &ThetaOperator, apparent_test: Option<&MultiPoly>) -> Result<SingularityReport> {
    singularities_with_tol(op, apparent_test, DEFAULT_TOL)
}

/// Roots of the leading Θ coefficient, with roots of `apparent_test` split off.
pub fn singularities_with_tol(
    op: &ThetaOperator,
    apparent_test: Option<&MultiPoly>,
    tol: f64,
) -> Result<SingularityReport> {
    let mut roots = poly_roots(&t_coeffs(op.leading())?);
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let mut apparent = Vec::new();
    if let Some(q) = apparent_test {
        for r in poly_roots(&t_coeffs(q)?) {
            if let Some(pos) = roots.iter().position(|x| close(*x, r, tol)) {
                apparent.push(roots.remove(pos));
            }
        }
        apparent.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    }
    let pack = |v: Vec<C64>| v.into_iter().map(|z| [z.re, z.im]).collect();
    Ok(SingularityReport { singular_points: pack(roots), apparent_points: pack(apparent), tolerance: tol })
}

/// One pole of the normalized order-2 operator
/// `Θ² + t Σ ε_i/(t − u_i) Θ + t² Σ β_i/(t − u_i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleData {
    pub point: [f64; 2],
    pub epsilon: [f64; 2],
    pub beta: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialFractions {
    /// Coefficient of the pole at `t = 0` in the `Θ⁰` part.
    pub beta0: [f64; 2],
    pub poles: Vec<PoleData>,
}

/// Residue data of an order-2 operator `q2 Θ² + q1 Θ + q0` at simple roots of `q2`.
pub fn partial_fractions(op: &ThetaOperator, points: &[C64]) -> Result<PartialFractions> {
    if op.theta_degree() != 2 {
        return Err(Error::Invalid("partial fractions need an order-2 operator".into()));
    }
    let q0 = t_coeffs(&op.coeffs()[0])?;
    let q1 = t_coeffs(&op.coeffs()[1])?;
    let q2 = t_coeffs(&op.coeffs()[2])?;
    let dq2 = derivative(&q2);
    let at0 = horner(&q2, C64::new(0.0, 0.0));
    if at0.norm() == 0.0 {
        return Err(Error::Invalid("leading coefficient vanishes at t = 0".into()));
    }
    let beta0 = horner(&derivative(&q0), C64::new(0.0, 0.0)) / at0;
    let poles = points
        .iter()
        .map(|&u| {
            let d = horner(&dq2, u);
            let eps = horner(&q1, u) / (u * d);
            let beta = horner(&q0, u) / (u * u * d);
            PoleData { point: [u.re, u.im], epsilon: [eps.re, eps.im], beta: [beta.re, beta.im] }
        })
        .collect();
    Ok(PartialFractions { beta0: [beta0.re, beta0.im], poles })
}
