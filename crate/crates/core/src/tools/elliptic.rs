use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{p, MultiPoly, Var};
use crate::recurrence::Recurrence;
use crate::scalar::CycloNumber;
use crate::tools::reduce::shift_reduce;
use crate::tools::singular::{singularities_with_tol, SingularityReport, DEFAULT_TOL};
use crate::tools::theta::ThetaOperator;

const A: &str = "(a + b + c)";
const S: &str = "(a^2 + b^2 + c^2 - 2*a*b - 2*a*c - 2*b*c)";

fn f(k: i64) -> String {
    format!("(4*n - {k})")
}

fn expand(s: &str) -> MultiPoly {
    p(&s.replace('A', A).replace('s', S))
}

/// The five-term recurrence for `Σ a^p b^q c^r C(n; p,q,r)²`, in `a, b, c, n`.
pub fn three_weight_recurrence() -> Recurrence {
    three_weight_with(-3, 2)
}

/// The same recurrence as displayed in print. It differs from the valid one in
/// the `a_{n−1}` constant and in a factor 2 on the `s` part of `a_{n−2}`, and
/// does not annihilate the sequence.
pub fn three_weight_as_printed() -> Recurrence {
    three_weight_with(3, 1)
}

fn three_weight_with(c1_const: i64, s_factor: i64) -> Recurrence {
    let (f3, f7, f9, f11) = (f(3), f(7), f(9), f(11));
    Recurrence::raw(vec![
        p(&format!("{f11}*{f7}*n^2")),
        expand(&format!("-A*{f11}*(2*(n - 1)*(2*n - 3)*(4*n - 1) + ({c1_const}))")),
        expand(&format!("(2*n - 3)^2*{f11}*{f3}*A^2 + {s_factor}*({f3}*{f11}*(n - 2)*(n - 1) - 3)*s")),
        expand(&format!("-{f9}*{f3}*(s*A*(4*n^2 - 18*n + 19) + 4*a*b*c*{f11}*{f7})")),
        expand(&format!("{f7}*{f3}*s^2*(n - 3)^2")),
    ])
}

/// Multipliers of `R(n), R(n−1), R(n−2)` in the order-reducing combination.
pub fn reduction_multipliers() -> Vec<MultiPoly> {
    vec![
        expand(&format!("3*{}", f(15))),
        expand(&format!("-2*A*{}", f(11))),
        expand(&format!("-s*{}", f(7))),
    ]
}

pub fn reduction_divisor() -> MultiPoly {
    p(&format!("{}*{}*{}", f(7), f(11), f(15)))
}

/// The reduced recurrence exactly as displayed, coefficients of `a_n .. a_{n−5}`.
pub fn printed_reduced_coeffs() -> Vec<MultiPoly> {
    vec![
        p("3*n^2"),
        expand("-A*(14*n^2 - 18*n + 7)"),
        expand("A^2*(20*n^2 - 56*n + 41) + s*(5*n^2 - 6*n - 2)"),
        expand(&format!("-(2*A^3*(2*n - 5)^2 + 4*A*s*n*(3*n - 7) + 12*a*b*c*{}*{})", f(3), f(9))),
        expand(&format!(
            "A^2*s*(4*n^2 - 16*n + 9) + 8*a*b*c*A*{}*{} + s^2*(n^2 + 4*n - 23)",
            f(11),
            f(13)
        )),
        expand(&format!("A*s^2*(2*n^2 - 22*n + 57) + a*b*c*s*{}*{}", f(17), f(19))),
    ]
}

/// `s t² + 2 A t − 3`, whose roots are the apparent singular points.
pub fn apparent_polynomial() -> MultiPoly {
    expand("s*t^2 + 2*A*t - 3")
}

fn weights_map(a: &BigRational, b: &BigRational, c: &BigRational) -> HashMap<Var, CycloNumber> {
    [a, b, c]
        .iter()
        .enumerate()
        .map(|(i, w)| (Var::weight(i), CycloNumber::from_rational((*w).clone())))
        .collect()
}

/// Specializes the five-term recurrence, reduces it by the shift combination,
/// converts to a Θ-operator and locates its singular points.
pub fn elliptic_pf(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
) -> Result<(Recurrence, ThetaOperator, SingularityReport)> {
    elliptic_pf_with_tol(a, b, c, DEFAULT_TOL)
}

/// [`elliptic_pf`] with an explicit tolerance for matching apparent points.
pub fn elliptic_pf_with_tol(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    tol: f64,
) -> Result<(Recurrence, ThetaOperator, SingularityReport)> {
    if [a, b, c].iter().any(|w| num_traits::Zero::is_zero(*w)) {
        return Err(Error::ZeroWeight);
    }
    let m = weights_map(a, b, c);
    let r = Recurrence::raw(three_weight_recurrence().coeffs().iter().map(|x| x.substitute_scalars(&m)).collect());
    let mult: Vec<MultiPoly> = reduction_multipliers().iter().map(|x| x.substitute_scalars(&m)).collect();
    let reduced = shift_reduce(&r, &mult, &reduction_divisor())?;
    let op = ThetaOperator::from_recurrence(&reduced)?;
    let report = singularities_with_tol(&op, Some(&apparent_polynomial().substitute_scalars(&m)), tol)?;
    Ok((reduced, op, report))
}
