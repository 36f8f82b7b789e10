use num_traits::{One, Zero};

use super::{Monomial, MultiPoly, Var, NVARS};
use crate::scalar::CycloNumber;

/// Normalized greatest common divisor (positive leading coefficient, primitive).
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    // monomial content first
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let mut mg = [0u16; NVARS];
    for (i, g) in mg.iter_mut().enumerate() {
        *g = ma.exps()[i].min(mb.exps()[i]);
    }
    let mg = Monomial::from_exps(mg);
    let a1 = strip_monomial(a, &ma);
    let b1 = strip_monomial(b, &mb);
    let core = gcd_nomono(&a1, &b1);
    core.mul_monomial(&mg, &CycloNumber::one()).normalized()
}

pub fn gcd_many<'a>(items: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for x in items {
        g = gcd(&g, x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Normalized least common multiple.
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).normalized()
}

fn monomial_content(p: &MultiPoly) -> Monomial {
    let mut e = [u16::MAX; NVARS];
    for (m, _) in p.terms() {
        for (i, x) in e.iter_mut().enumerate() {
            *x = (*x).min(m.exps()[i]);
        }
    }
    Monomial::from_exps(e)
}

fn strip_monomial(p: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_one() {
        return p.clone();
    }
    MultiPoly::from_terms(p.terms().iter().map(|(x, c)| (x.div(m).unwrap(), c.clone())))
}

fn gcd_nomono(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() || a.len() == 1 || b.len() == 1 {
        return MultiPoly::one();
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return small.normalized();
    }
    let va = a.vars();
    let vb = b.vars();
    if va == vb && va.len() > 1 {
        let live: Vec<Var> = va.iter().copied().filter(|v| degree_bound(a, b, *v) > 0).collect();
        if live.is_empty() {
            return MultiPoly::one();
        }
        if live.len() < va.len() {
            // the gcd lives in the live variables, so it is the gcd of the
            // coefficients with respect to all the others
            let mut parts = split_by(a, &live);
            parts.extend(split_by(b, &live));
            parts.sort_by_key(|p| p.len());
            return gcd_many(parts.iter());
        }
    }
    // a variable present in only one operand: reduce that operand to its content
    for v in &va {
        if !vb.contains(v) {
            let mut g = b.normalized();
            for c in a.coefficients_in(*v) {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = gcd(&g, &c);
                }
            }
            return g;
        }
    }
    for v in &vb {
        if !va.contains(v) {
            return gcd_nomono(b, a);
        }
    }
    if va.len() == 1 {
        return univariate_gcd(a, b, va[0]);
    }
    let v = *va
        .iter()
        .min_by_key(|v| (a.degree_in(**v).max(b.degree_in(**v)), v.index()))
        .unwrap();
    let (ca, pa) = content_in(a, v);
    let (cb, pb) = content_in(b, v);
    let gc = gcd(&ca, &cb);
    let gp = primitive_prs(pa, pb, v);
    (&gc * &gp).normalized()
}

/// Upper bound on `deg_v gcd(a, b)` from one specialization of the other
/// variables that keeps both leading coefficients in `v` nonzero.
fn degree_bound(a: &MultiPoly, b: &MultiPoly, v: Var) -> u16 {
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    let others: Vec<Var> = a.vars().into_iter().filter(|x| *x != v).collect();
    for attempt in 0..3u64 {
        let point: std::collections::HashMap<Var, CycloNumber> = others
            .iter()
            .map(|x| (*x, CycloNumber::from_int(sample(x.index() as u64, attempt))))
            .collect();
        let ae = a.substitute_scalars(&point);
        let be = b.substitute_scalars(&point);
        if ae.degree_in(v) != da || be.degree_in(v) != db {
            continue;
        }
        return univariate_gcd(&ae, &be, v).degree_in(v);
    }
    da.min(db)
}

fn sample(var: u64, attempt: u64) -> i64 {
    // fixed, well-spread evaluation points
    let h = (var + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (attempt + 1).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    1000 + (h % 9000) as i64
}

/// Groups the terms of `p` by their exponents outside `keep`.
fn split_by(p: &MultiPoly, keep: &[Var]) -> Vec<MultiPoly> {
    let mut groups: std::collections::BTreeMap<Vec<u16>, Vec<(Monomial, CycloNumber)>> = Default::default();
    for (m, c) in p.terms() {
        let mut inner = [0u16; NVARS];
        let mut outer = m.exps().to_vec();
        for v in keep {
            inner[v.index()] = m.exps()[v.index()];
            outer[v.index()] = 0;
        }
        groups.entry(outer).or_default().push((Monomial::from_exps(inner), c.clone()));
    }
    groups.into_values().map(MultiPoly::from_terms).collect()
}

/// Content with respect to `v` (gcd of coefficients) and the matching primitive part.
fn content_in(p: &MultiPoly, v: Var) -> (MultiPoly, MultiPoly) {
    let coeffs = p.coefficients_in(v);
    let mut nz: Vec<&MultiPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    let c = gcd_many(nz);
    let prim = p.div_exact(&c).expect("content divides");
    (c, prim)
}

fn primitive_prs(mut a: MultiPoly, mut b: MultiPoly, v: Var) -> MultiPoly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = if r.is_zero() { r } else { content_in(&r, v).1 };
    }
    a.normalized()
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let db = b.degree_in(v);
    let bc = b.coefficients_in(v);
    let lb = bc.last().unwrap().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).pop().unwrap();
        let shift = MultiPoly::term(Monomial::var(v, dr - db), CycloNumber::one());
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
    }
    r
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let mut x = a.univariate_coeffs(v).unwrap();
    let mut y = b.univariate_coeffs(v).unwrap();
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    make_monic(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
        make_monic(&mut y);
    }
    MultiPoly::univariate(v, &x).normalized()
}

fn trim(p: &mut Vec<CycloNumber>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn make_monic(p: &mut [CycloNumber]) {
    if let Some(l) = p.last() {
        if !l.is_one() {
            let inv = l.inv().expect("nonzero");
            for c in p.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
}

/// Remainder of `x` by monic `y`.
fn rem(x: &[CycloNumber], y: &[CycloNumber]) -> Vec<CycloNumber> {
    let mut r = x.to_vec();
    let dy = y.len() - 1;
    while r.len() > dy {
        let lc = r.pop().unwrap();
        if !lc.is_zero() {
            let off = r.len() - dy;
            for (i, c) in y[..dy].iter().enumerate() {
                r[off + i] -= &(c * &lc);
            }
        }
    }
    trim(&mut r);
    r
}
