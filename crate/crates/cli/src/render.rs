//! Text and LaTeX renderings of recurrences, operators and polynomials.

use multisum::poly::{MultiPoly, Var};
use multisum::recurrence::{linear_factors, Recurrence};
use multisum::scalar::{fmt_rational, CycloNumber};
use multisum::tools::ThetaOperator;

/// `2*n^3 - w*a` → `2 n^{3} - w a`, with `w` and `i` as `\omega` and `i`.
fn latex_expanded(p: &MultiPoly) -> String {
    let mut out = String::new();
    let text = p.to_text();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '*' => out.push(' '),
            '^' => {
                out.push_str("^{");
                while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
                    out.push(d);
                    chars.next();
                }
                out.push('}');
            }
            'w' => out.push_str("\\omega "),
            _ => out.push(c),
        }
    }
    out.replace("\\omega  ", "\\omega ").trim_end().to_string()
}

/// `"3/2"` → `\frac{3}{2}`.
fn latex_fraction(s: &str) -> String {
    match s.split_once('/') {
        Some((p, q)) => format!("\\frac{{{p}}}{{{q}}}"),
        None => s.to_string(),
    }
}

fn latex_scalar(c: &CycloNumber) -> String {
    match c.as_rational() {
        Some(r) => {
            let s = fmt_rational(r);
            match s.strip_prefix('-') {
                Some(mag) => format!("-{}", latex_fraction(mag)),
                None => latex_fraction(&s),
            }
        }
        None => format!("({})", latex_expanded(&MultiPoly::constant(c.clone()))),
    }
}

/// Factors out linear factors in `n` when the polynomial is in `n` alone.
pub fn latex_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    if p.vars().iter().any(|v| *v != Var::N) || p.degree_in(Var::N) == 0 {
        return latex_expanded(p);
    }
    let (c, factors, rest) = linear_factors(p);
    let mut parts = Vec::new();
    for (r, e) in &factors {
        let rs = fmt_rational(r);
        let lin = match rs.strip_prefix('-') {
            _ if rs == "0" => "n".to_string(),
            Some(mag) => format!("(n + {})", latex_fraction(mag)),
            None => format!("(n - {})", latex_fraction(&rs)),
        };
        parts.push(if *e == 1 { lin } else { format!("{lin}^{{{e}}}") });
    }
    if !rest.is_one() {
        parts.push(format!("({})", latex_expanded(&rest)));
    }
    let body = parts.join("");
    let cs = latex_scalar(&c);
    match cs.as_str() {
        "1" => body,
        "-1" => format!("-{body}"),
        _ => format!("{cs}{body}"),
    }
}

pub fn recurrence_latex(r: &Recurrence) -> String {
    let mut s = String::new();
    for (k, c) in r.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let idx = if k == 0 { "a_{n}".to_string() } else { format!("a_{{n-{k}}}") };
        let body = latex_poly(c);
        let (neg, mag) = match body.strip_prefix('-') {
            Some(m) if !has_top_level_sum(m) => (true, m.to_string()),
            _ => (false, body.clone()),
        };
        let mag = wrap(&mag);
        match (s.is_empty(), neg) {
            (true, false) => s.push_str(&format!("{mag} {idx}")),
            (true, true) => s.push_str(&format!("-{mag} {idx}")),
            (false, false) => s.push_str(&format!("\n  + {mag} {idx}")),
            (false, true) => s.push_str(&format!("\n  - {mag} {idx}")),
        }
    }
    format!("{s} = 0")
}

pub fn theta_latex(op: &ThetaOperator) -> String {
    let mut parts = Vec::new();
    for (d, q) in op.coeffs().iter().enumerate().rev() {
        if q.is_zero() {
            continue;
        }
        let body = latex_expanded(q);
        parts.push(match d {
            0 => body,
            1 => format!("{} \\Theta", wrap(&body)),
            _ => format!("{} \\Theta^{{{d}}}", wrap(&body)),
        });
    }
    parts.join(" + ")
}

/// True when `s` has a `+` or `-` outside every bracket.
fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    let b = s.as_bytes();
    for (i, c) in b.iter().enumerate() {
        match c {
            b'(' | b'{' => depth += 1,
            b')' | b'}' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && b[i - 1] == b' ' => return true,
            _ => {}
        }
    }
    false
}

fn wrap(s: &str) -> String {
    if has_top_level_sum(s) {
        format!("\\left({s}\\right)")
    } else {
        s.to_string()
    }
}
