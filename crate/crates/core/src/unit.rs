//! Closed forms for the all-ones case `a_n = Σ C(n; p_1..p_N)²`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Var};
use crate::recurrence::Recurrence;
use crate::scalar::CycloNumber;
use crate::tools::theta::ThetaOperator;

/// `g(N, j) = (N−1)(N−2)⋯(N−j)`.
pub fn g_factor(big_n: i64, j: i64) -> BigInt {
    (1..=j).fold(BigInt::one(), |acc, i| acc * BigInt::from(big_n - i))
}

fn check(big_n: usize) -> Result<()> {
    if big_n < 2 {
        return Err(Error::InvalidSpec(format!("N = {big_n}; need N ≥ 2")));
    }
    Ok(())
}

/// Chains `N ≥ α_1 > α_2 > ... > α_k ≥ 1` with consecutive gaps at least 2.
pub fn admissible_chains(big_n: usize) -> Vec<Vec<usize>> {
    fn go(top: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for a in (1..=top).rev() {
            cur.push(a);
            out.push(cur.clone());
            if a >= 3 {
                go(a - 2, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(big_n, &mut Vec::new(), &mut out);
    out
}

fn n_minus(i: usize) -> MultiPoly {
    MultiPoly::var_plus(Var::N, -(i as i64))
}

/// Coefficients `c_k(n)` of the closed-form recurrence before any normalization.
pub fn unit_recurrence_raw(big_n: usize) -> Result<Vec<MultiPoly>> {
    check(big_n)?;
    let mut coeffs = vec![MultiPoly::zero(); big_n.div_ceil(2) + 1];
    coeffs[0] = MultiPoly::var(Var::N).pow(big_n as u32 + 1);
    for chain in admissible_chains(big_n) {
        let k = chain.len();
        let scalar: i64 = chain.iter().map(|&a| -((a * (big_n + 1 - a)) as i64)).product();
        // n^{N+1} Π ((n−i)/(n−i+1))^{α_i−1}, telescoped
        let mut term = MultiPoly::var(Var::N).pow((big_n + 2 - chain[0]) as u32);
        for i in 1..k {
            term = &term * &n_minus(i).pow((chain[i - 1] - chain[i]) as u32);
        }
        term = &term * &n_minus(k).pow((chain[k - 1] - 1) as u32);
        coeffs[k] = &coeffs[k] + &term.scale(&CycloNumber::from_int(scalar));
    }
    Ok(coeffs)
}

pub fn unit_recurrence(big_n: usize) -> Result<Recurrence> {
    Recurrence::new(unit_recurrence_raw(big_n)?)
}

/// `p_{−1}, p_0, ..., p_j` in `N, n, x` from the generating recursion.
pub fn gen_polys(j: usize) -> Vec<MultiPoly> {
    let x = MultiPoly::var(Var::X);
    let big_n = MultiPoly::var(Var::BIG_N);
    let n = MultiPoly::var(Var::N);
    let mut ps = vec![MultiPoly::one(), n.clone()];
    for i in 1..=j {
        let prev = &ps[i];
        let prev2 = ps[i - 1].shift(Var::N, -1);
        let f = &(&n.pow(2) * &(&big_n - &MultiPoly::int(i as i64 - 1))) * &x;
        let next = &(&n * prev) - &(&f * &prev2).scale(&CycloNumber::from_int(i as i64));
        ps.push(next);
    }
    ps
}

/// `p_N(N, n, x)` with `N` specialized, as coefficients of `x^0, x^1, ...`.
pub fn unit_recurrence_via_polys_raw(big_n: usize) -> Result<Vec<MultiPoly>> {
    check(big_n)?;
    let pn = gen_polys(big_n).pop().unwrap();
    let mut a = HashMap::new();
    a.insert(Var::BIG_N, MultiPoly::int(big_n as i64));
    Ok(pn.substitute(&a).coefficients_in(Var::X))
}

pub fn unit_recurrence_via_polys(big_n: usize) -> Result<Recurrence> {
    Recurrence::new(unit_recurrence_via_polys_raw(big_n)?)
}

/// The alternative expression for the `a_{n−1}` coefficient:
/// `N(n^{N+2} − (n−1)^{N+2}) − (N+2) n (n−1)(n^N − (n−1)^N)`.
pub fn alt_first_coefficient(big_n: usize) -> MultiPoly {
    let n = MultiPoly::var(Var::N);
    let m = n_minus(1);
    let e = big_n as u32;
    let a = (&n.pow(e + 2) - &m.pow(e + 2)).scale(&CycloNumber::from_int(big_n as i64));
    let b = (&(&n * &m) * &(&n.pow(e) - &m.pow(e))).scale(&CycloNumber::from_int(big_n as i64 + 2));
    &a - &b
}

/// The Θ-operator annihilating `Σ a_n t^n`, via the recurrence conversion.
pub fn unit_theta_operator(big_n: usize) -> Result<ThetaOperator> {
    ThetaOperator::from_recurrence(&unit_recurrence(big_n)?)
}

/// Direct evaluation of the chain formula for the Θ-operator.
pub fn unit_theta_closed_form(big_n: usize) -> Result<ThetaOperator> {
    check(big_n)?;
    // n stands in for Θ
    let th = |k: usize, i: usize| MultiPoly::var_plus(Var::N, k as i64 - i as i64);
    let mut total = MultiPoly::var(Var::N).pow(big_n as u32 - 1);
    for chain in admissible_chains(big_n) {
        let k = chain.len();
        let mut term = th(k, 0).pow((big_n - chain[0]) as u32);
        for i in 1..=k {
            let next = if i < k { chain[i] } else { 1 };
            let c = -((chain[i - 1] * (big_n + 1 - chain[i - 1])) as i64);
            term = (&term * &th(k, i).pow((chain[i - 1] - next) as u32)).scale(&CycloNumber::from_int(c));
        }
        let tk = MultiPoly::term(Monomial::var(Var::T, k as u16), CycloNumber::one());
        total = &total + &(&term * &tk);
    }
    ThetaOperator::new(total.coefficients_in(Var::N))
}
