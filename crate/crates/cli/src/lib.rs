//! Command runner behind the `multisum` binary.

pub mod config;
pub mod render;

use std::collections::HashMap;
use std::io::Write;

use serde_json::{json, Value};

use multisum::error::Error;
use multisum::oracle::{weighted_sequence, SequenceSpec};
use multisum::poly::{MultiPoly, Var};
use multisum::power::derive_power_with_details;
use multisum::recurrence::Recurrence;
use multisum::scalar::{parse_rational, CycloNumber};
use multisum::tools::elliptic::{
    elliptic_pf_with_tol, reduction_divisor, reduction_multipliers, three_weight_recurrence,
};
use multisum::tools::singular::partial_fractions;
use multisum::tools::{annihilation_check, guess_recurrence, shift_reduce, to_theta_operator, verify_recurrence, ThetaOperator};
use multisum::unit::{unit_recurrence, unit_recurrence_via_polys, unit_theta_operator};
use multisum::weighted::derive_with_details;

pub use config::{Command, Format, RunConfig, UnitMethod};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "MULTISUM_THREADS";

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values; exit status 2.
    Usage(String),
    /// The computation ran and the answer is negative; exit status 1.
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionBound(_) | Error::InexactDivision { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Result of one command in all three renderings.
pub struct Outcome {
    pub ok: bool,
    pub json: Value,
    pub text: String,
    pub latex: String,
}

impl Outcome {
    fn new(ok: bool, json: Value, text: String, latex: String) -> Self {
        Outcome { ok, json, text, latex }
    }
}

/// Runs one command and writes the rendered result. Returns the exit status.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cfg) {
        Ok(o) => {
            let body = match cfg.format {
                Format::Text => o.text,
                Format::Latex => o.latex,
                Format::Json if cfg.command == Command::Seq => match &o.json {
                    Value::Array(rows) => rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
                    other => other.to_string(),
                },
                Format::Json => {
                    let doc = json!({
                        "command": cfg.command.name(),
                        "status": if o.ok { "ok" } else { "failed" },
                        "result": o.json,
                    });
                    serde_json::to_string_pretty(&doc).expect("json values serialize")
                }
            };
            if writeln!(out, "{body}").is_err() {
                return EXIT_USAGE;
            }
            if o.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Failed(m)) => {
            let _ = writeln!(err, "failed: {m}");
            EXIT_FAILED
        }
    }
}

pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    match cfg.command {
        Command::Seq => seq(cfg),
        Command::UnitRec => unit_rec(cfg),
        Command::Derive => derive(cfg),
        Command::PowerDerive => power_derive(cfg),
        Command::Verify => verify(cfg),
        Command::Guess => guess(cfg),
        Command::Reduce => reduce(cfg),
        Command::Ode => ode(cfg),
        Command::Pf => pf(cfg),
    }
}

fn parse_weights(ws: &[String]) -> CliResult<Vec<CycloNumber>> {
    ws.iter()
        .map(|w| CycloNumber::parse(w).map_err(|_| CliError::Usage(format!("malformed weight {w:?}"))))
        .collect()
}

/// The family selected by `--N`, `--weights`, `--symbolic` and `--k`.
fn spec_of(cfg: &RunConfig) -> CliResult<SequenceSpec> {
    let spec = match (&cfg.weights, cfg.symbolic) {
        (Some(_), true) => return usage("--weights and --symbolic are exclusive"),
        (Some(ws), false) => {
            let w = parse_weights(ws)?;
            if let Some(n) = cfg.parts {
                if n != w.len() {
                    return usage(format!("--N {n} but {} weights given", w.len()));
                }
            }
            SequenceSpec::numeric(w)?
        }
        (None, true) => SequenceSpec::symbolic(need_parts(cfg)?)?,
        (None, false) => SequenceSpec::unit(need_parts(cfg)?)?,
    };
    Ok(spec.with_power(cfg.k)?)
}

fn need_parts(cfg: &RunConfig) -> CliResult<usize> {
    cfg.parts.ok_or_else(|| CliError::Usage("--N is required".into()))
}

/// Oracle cost in coefficient products: the sequence is built by one binomial
/// convolution per extra part, each costing `Σ_{m ≤ n_max} (m + 1)` products.
/// Enumerating compositions directly would cost `C(n + N − 1, N − 1)` per term.
pub fn oracle_cost(parts: usize, n_max: usize) -> u64 {
    let per_pass = (n_max as u64 + 1) * (n_max as u64 + 2) / 2;
    (parts.max(2) as u64 - 1).saturating_mul(per_pass)
}

fn check_budget(spec: &SequenceSpec, n_max: usize, budget: u64) -> CliResult<()> {
    let cost = oracle_cost(spec.parts(), n_max);
    if cost > budget {
        return usage(format!("oracle cost {cost} exceeds the budget of {budget}"));
    }
    Ok(())
}

fn oracle_terms(spec: &SequenceSpec, n_max: usize, budget: u64) -> CliResult<Vec<CycloNumber>> {
    if spec.is_symbolic() {
        return usage("oracle terms need numeric weights");
    }
    check_budget(spec, n_max, budget)?;
    Ok(weighted_sequence(spec, n_max)?)
}

fn strings(v: &[CycloNumber]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn recurrence_json(r: &Recurrence) -> Value {
    let mut j = serde_json::to_value(r.to_json()).expect("recurrence serializes");
    j["terms"] = json!(r.term_count());
    j["text"] = json!(r.to_text());
    j
}

fn theta_json(op: &ThetaOperator) -> Value {
    let mut j = serde_json::to_value(op.to_json()).expect("operator serializes");
    j["text"] = json!(op.to_text());
    j
}

/// Renders a recurrence, optionally with its Θ-operator.
fn recurrence_outcome(r: &Recurrence, ode: bool, extra: Value) -> CliResult<Outcome> {
    let mut j = json!({ "recurrence": recurrence_json(r) });
    let mut text = r.to_text();
    let mut latex = render::recurrence_latex(r);
    if ode {
        let op = to_theta_operator(r)?;
        j["theta"] = theta_json(&op);
        text.push_str(&format!("\ntheta: {}", op.to_text()));
        latex.push_str(&format!("\n\\[ {} \\]", render::theta_latex(&op)));
    }
    if let Value::Object(m) = extra {
        for (k, v) in m {
            j[k] = v;
        }
    }
    Ok(Outcome::new(true, j, text, latex))
}

fn seq(cfg: &RunConfig) -> CliResult<Outcome> {
    let spec = spec_of(cfg)?;
    let terms = oracle_terms(&spec, cfg.n_max, cfg.budget)?;
    let s = strings(&terms);
    let latex = terms
        .iter()
        .map(|t| render::latex_poly(&MultiPoly::constant(t.clone())))
        .collect::<Vec<_>>()
        .join(", ");
    let rows = s.iter().enumerate().map(|(n, v)| json!({ "n": n, "value": v })).collect();
    Ok(Outcome::new(true, Value::Array(rows), s.join(", "), latex))
}

fn unit_rec(cfg: &RunConfig) -> CliResult<Outcome> {
    let n = need_parts(cfg)?;
    let r = match cfg.method {
        UnitMethod::Closed => unit_recurrence(n)?,
        UnitMethod::Polys => unit_recurrence_via_polys(n)?,
    };
    let mut o = recurrence_outcome(&r, false, json!({}))?;
    if cfg.ode {
        // the closed-form operator, which equals the converted recurrence
        let op = unit_theta_operator(n)?;
        o.json["theta"] = theta_json(&op);
        o.text.push_str(&format!("\ntheta: {}", op.to_text()));
        o.latex.push_str(&format!("\n\\[ {} \\]", render::theta_latex(&op)));
    }
    Ok(o)
}

fn derived(spec: &SequenceSpec) -> CliResult<(Recurrence, usize)> {
    if spec.power() > 2 {
        let d = derive_power_with_details(spec)?;
        Ok((d.recurrence, d.steps))
    } else {
        let d = derive_with_details(spec)?;
        Ok((d.recurrence, d.steps))
    }
}

fn derive(cfg: &RunConfig) -> CliResult<Outcome> {
    let spec = spec_of(cfg)?;
    let (r, steps) = derived(&spec)?;
    recurrence_outcome(&r, cfg.ode, json!({ "steps": steps }))
}

fn power_spec(cfg: &RunConfig) -> CliResult<SequenceSpec> {
    let spec = match (&cfg.a, &cfg.b, cfg.symbolic) {
        (None, None, true) => SequenceSpec::symbolic(2)?,
        (Some(a), Some(b), false) => SequenceSpec::numeric(parse_weights(&[a.clone(), b.clone()])?)?,
        _ => return usage("give both --a and --b, or --symbolic"),
    };
    Ok(spec.with_power(cfg.k)?)
}

fn power_derive(cfg: &RunConfig) -> CliResult<Outcome> {
    let spec = power_spec(cfg)?;
    let d = derive_power_with_details(&spec)?;
    recurrence_outcome(
        &d.recurrence,
        cfg.ode,
        json!({ "steps": d.steps, "level": d.level, "symmetric": d.symmetric }),
    )
}

fn parse_recurrence(s: &str) -> CliResult<Recurrence> {
    Recurrence::parse(s).map_err(|e| CliError::Usage(format!("malformed recurrence: {e}")))
}

fn verify(cfg: &RunConfig) -> CliResult<Outcome> {
    let (r, spec, source) = if cfg.table1 {
        let n = need_parts(cfg)?;
        (unit_recurrence(n)?, SequenceSpec::unit(n)?, "unit recurrence")
    } else {
        let spec = spec_of(cfg)?;
        if spec.is_symbolic() {
            return usage("verification needs numeric weights");
        }
        match &cfg.recurrence {
            Some(s) => (parse_recurrence(s)?, spec, "given recurrence"),
            None => (derived(&spec)?.0, spec, "derived recurrence"),
        }
    };
    check_budget(&spec, cfg.n_max, cfg.budget)?;
    let rep = verify_recurrence(&r, &spec, cfg.n_max)?;
    let ok = rep.ok();
    let text = match &rep.failure {
        None => format!("ok: {source} holds for n = {}..{}", rep.checked_from, rep.checked_to),
        Some((n, res)) => format!("FAIL: {source} has residual {res} at n = {n}"),
    };
    let j = json!({
        "ok": ok,
        "source": source,
        "recurrence": recurrence_json(&r),
        "checked_from": rep.checked_from,
        "checked_to": rep.checked_to,
        "failure_at": rep.failure.as_ref().map(|f| f.0),
    });
    let latex = format!("% {text}\n{}", render::recurrence_latex(&r));
    Ok(Outcome::new(ok, j, text, latex))
}

fn guess(cfg: &RunConfig) -> CliResult<Outcome> {
    // with an oracle available, guessed recurrences are re-checked on twice the terms
    let (terms, spec) = match &cfg.terms {
        Some(ts) => (parse_weights(ts)?, None),
        None => {
            let spec = spec_of(cfg)?;
            (oracle_terms(&spec, cfg.n_max, cfg.budget)?, Some(spec))
        }
    };
    let found = guess_recurrence(&terms, cfg.max_order, cfg.max_degree)?;
    let Some(r) = found else {
        let j = json!({ "found": false, "terms_used": terms.len() });
        let text = format!("no recurrence with order ≤ {} and degree ≤ {}", cfg.max_order, cfg.max_degree);
        return Ok(Outcome::new(false, j, text.clone(), format!("% {text}")));
    };
    let mut validated_to = terms.len() - 1;
    let mut ok = true;
    if let Some(spec) = spec {
        let n2 = 2 * terms.len() - 1;
        let rep = verify_recurrence(&r, &spec, n2)?;
        ok = rep.ok();
        validated_to = n2;
    }
    let mut o = recurrence_outcome(
        &r,
        cfg.ode,
        json!({ "found": true, "terms_used": terms.len(), "validated_to": validated_to, "validated": ok }),
    )?;
    o.ok = ok;
    if !ok {
        o.text.push_str("\nFAIL: guessed recurrence does not hold on twice the terms");
    }
    Ok(o)
}

fn weight_map(ws: &[CycloNumber]) -> HashMap<Var, CycloNumber> {
    ws.iter().enumerate().map(|(i, w)| (Var::weight(i), w.clone())).collect()
}

fn parse_polys(s: &str) -> CliResult<Vec<MultiPoly>> {
    s.split(';')
        .map(|t| MultiPoly::parse(t.trim()).map_err(|e| CliError::Usage(format!("malformed polynomial {t:?}: {e}"))))
        .collect()
}

/// Order reduction by a shift combination; defaults to the three-weight
/// five-term recurrence and its standard multipliers.
fn reduce(cfg: &RunConfig) -> CliResult<Outcome> {
    let r = match &cfg.recurrence {
        Some(s) => parse_recurrence(s)?,
        None => three_weight_recurrence(),
    };
    let mut mult = match &cfg.multipliers {
        Some(s) => parse_polys(s)?,
        None => reduction_multipliers(),
    };
    let divisor = match &cfg.divisor {
        Some(s) => MultiPoly::parse(s).map_err(|e| CliError::Usage(format!("malformed divisor: {e}")))?,
        None => reduction_divisor(),
    };
    let r = match &cfg.weights {
        Some(ws) => {
            let m = weight_map(&parse_weights(ws)?);
            mult = mult.iter().map(|x| x.substitute_scalars(&m)).collect();
            Recurrence::raw(r.coeffs().iter().map(|c| c.substitute_scalars(&m)).collect())
        }
        None => Recurrence::raw(r.coeffs().to_vec()),
    };
    let reduced = shift_reduce(&r, &mult, &divisor)?;
    recurrence_outcome(&reduced, cfg.ode, json!({}))
}

fn ode(cfg: &RunConfig) -> CliResult<Outcome> {
    let (r, spec) = match &cfg.recurrence {
        Some(s) => {
            let spec = if cfg.weights.is_some() || cfg.parts.is_some() { Some(spec_of(cfg)?) } else { None };
            (parse_recurrence(s)?, spec)
        }
        None => {
            let spec = spec_of(cfg)?;
            (derived(&spec)?.0, Some(spec))
        }
    };
    let op = to_theta_operator(&r)?;
    let mut j = json!({ "theta": theta_json(&op), "recurrence": recurrence_json(&r) });
    let mut text = op.to_text();
    let mut ok = true;
    if let Some(spec) = spec.filter(|s| !s.is_symbolic()) {
        let series = oracle_terms(&spec, cfg.n_max, cfg.budget)?;
        let op = if op.coeffs().iter().any(|c| c.vars().iter().any(|v| v.weight_index().is_some())) {
            op.substitute_weights(spec.numeric_weights().expect("numeric"))?
        } else {
            op.clone()
        };
        ok = annihilation_check(&op, &series, cfg.n_max)?;
        j["annihilates_to"] = json!(cfg.n_max);
        j["annihilates"] = json!(ok);
        text.push_str(&format!(
            "\nseries check to t^{}: {}",
            cfg.n_max,
            if ok { "annihilated" } else { "FAIL" }
        ));
    }
    let latex = format!("\\[ {} \\]", render::theta_latex(&op));
    Ok(Outcome::new(ok, j, text, latex))
}

fn pf(cfg: &RunConfig) -> CliResult<Outcome> {
    let ws = match &cfg.weights {
        Some(ws) if ws.len() == 3 => ws,
        _ => return usage("pf needs --weights a,b,c (three rationals)"),
    };
    let w: Vec<_> = ws
        .iter()
        .map(|s| parse_rational(s).map_err(|_| CliError::Usage(format!("pf weights must be rational, got {s:?}"))))
        .collect::<CliResult<_>>()?;
    let (r, op, report) = elliptic_pf_with_tol(&w[0], &w[1], &w[2], cfg.tolerance)?;
    let mut j = json!({
        "recurrence": recurrence_json(&r),
        "theta": theta_json(&op),
        "singularities": report,
    });
    let mut text = format!("{}\ntheta: {}", r.to_text(), op.to_text());
    let fmt = |z: &[f64; 2]| {
        if z[1].abs() <= cfg.tolerance * z[0].abs().max(1.0) {
            format!("{}", z[0])
        } else {
            format!("{} + {}i", z[0], z[1])
        }
    };
    let show = |v: &[[f64; 2]]| v.iter().map(fmt).collect::<Vec<_>>().join(", ");
    text.push_str(&format!("\nsingular: {}\napparent: {}", show(&report.singular_points), show(&report.apparent_points)));
    if op.theta_degree() == 2 {
        let pfs = partial_fractions(&op, &report.singular())?;
        text.push_str(&format!("\nbeta0: {}", fmt(&pfs.beta0)));
        for p in &pfs.poles {
            text.push_str(&format!("\npole {}: epsilon {}, beta {}", fmt(&p.point), fmt(&p.epsilon), fmt(&p.beta)));
        }
        j["partial_fractions"] = serde_json::to_value(&pfs).expect("serializable");
    }
    let latex = format!("{}\n\\[ {} \\]", render::recurrence_latex(&r), render::theta_latex(&op));
    Ok(Outcome::new(true, j, text, latex))
}
