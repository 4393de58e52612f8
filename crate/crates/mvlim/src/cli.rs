//! Command-line front end: parse the query, route to the right resolver,
//! render the verdict and certificate as text or JSON.
//!
//! Exit codes: 0 for a conclusive verdict (exists or does not exist), 2
//! for inconclusive, 1 for input errors.

use crate::certificate::Certificate;
use crate::expr::{evaluate, evaluate_exact, Evaluated, Expr};
use crate::isolated::{self, IsolatedOptions};
use crate::oracle::{self, EstimateReport};
use crate::problem::{LimitProblem, Point, Verdict};
use crate::rat::{parse_rat, to_f64, Rat};
use crate::sampling::halton_point;
use crate::transversal;
use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Auto,
    Nonisolated,
    Isolated,
    Probe,
}

/// A fully parsed query, the unit of work for one invocation.
#[derive(Debug, Clone)]
pub struct Query {
    pub numerator: Expr,
    pub denominator: Expr,
    pub variables: Vec<String>,
    pub point: Point,
    pub mode: Mode,
    pub zero_set: Option<String>,
    pub decomp: Option<String>,
    pub paths: usize,
    pub seed: u64,
    pub json: bool,
    pub max_decomps: usize,
    pub order: Option<i64>,
}

#[derive(Debug)]
pub struct RunOutput {
    pub exit_code: i32,
    pub text: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "mvlim",
    about = "Resolve zero-over-zero limits of multivariable functions with certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Resolve a limit symbolically and cross-check it numerically
    Resolve(ResolveArgs),
    /// Estimate the limit along sampled paths only (no symbolic verdict)
    Probe(ProbeArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Numerator expression (used with --den)
    #[arg(long)]
    pub num: Option<String>,
    /// Denominator expression (used with --num)
    #[arg(long)]
    pub den: Option<String>,
    /// Quotient shorthand: a single expression of the form f/g
    #[arg(long)]
    pub expr: Option<String>,
    /// Comma-separated ordered variable list, e.g. "x,y"
    #[arg(long)]
    pub vars: String,
    /// Comma-separated exact rational coordinates of the point, e.g. "0,0"
    /// or "1/2,-3"
    #[arg(long)]
    pub point: String,
    /// Number of oracle paths (0 disables the oracle on resolve)
    #[arg(long)]
    pub paths: Option<usize>,
    /// RNG seed for the oracle (default: MVLIM_SEED or 0)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ResolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Resolution mode
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: Mode,
    /// Zero-set specification as JSON (see the transversal module docs)
    #[arg(long = "zero-set")]
    pub zero_set: Option<String>,
    /// Sum-of-squares decomposition hints as JSON
    #[arg(long)]
    pub decomp: Option<String>,
    /// Budget of decompositions to try in the isolated pipeline
    #[arg(long = "max-decomps", default_value_t = 16)]
    pub max_decomps: usize,
    /// Series truncation override for the Taylor replacement step
    #[arg(long)]
    pub order: Option<i64>,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

fn env_seed() -> u64 {
    std::env::var("MVLIM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

/// Splits a quotient expression into numerator and denominator by
/// separating the negative-exponent factors.
fn split_quotient(e: &Expr) -> (Expr, Expr) {
    let factors = match e {
        Expr::Mul(fs) => fs.clone(),
        other => vec![other.clone()],
    };
    let mut num = Vec::new();
    let mut den = Vec::new();
    for f in factors {
        let (base, exp) = f.as_power();
        if exp.is_negative() {
            den.push(Expr::pow(base.clone(), -exp));
        } else {
            num.push(f);
        }
    }
    (Expr::mul(num), Expr::mul(den))
}

fn build_query(common: &CommonArgs, mode: Mode) -> Result<Query, String> {
    let (num, den) = match (&common.num, &common.den, &common.expr) {
        (Some(n), Some(d), None) => (
            crate::expr::parse(n).map_err(|e| format!("--num: {e}"))?,
            crate::expr::parse(d).map_err(|e| format!("--den: {e}"))?,
        ),
        (None, None, Some(q)) => {
            let parsed = crate::expr::parse(q).map_err(|e| format!("--expr: {e}"))?;
            split_quotient(&parsed)
        }
        _ => return Err("provide either --num with --den, or --expr".to_string()),
    };
    let variables: Vec<String> = common
        .vars
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if variables.is_empty() {
        return Err("--vars must list at least one variable".to_string());
    }
    let coords: Vec<&str> = common.point.split(',').map(str::trim).collect();
    if coords.len() != variables.len() {
        return Err(format!(
            "--point has {} coordinates for {} variables",
            coords.len(),
            variables.len()
        ));
    }
    let mut point = BTreeMap::new();
    for (v, c) in variables.iter().zip(coords.iter()) {
        point.insert(v.clone(), parse_rat(c).map_err(|e| format!("--point: {e}"))?);
    }
    Ok(Query {
        numerator: num,
        denominator: den,
        variables,
        point: Point(point),
        mode,
        zero_set: None,
        decomp: None,
        paths: common.paths.unwrap_or(12),
        seed: common.seed.unwrap_or_else(env_seed),
        json: common.json,
        max_decomps: 16,
        order: None,
    })
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let out = dispatch(cli);
    print!("{}", out.text);
    out.exit_code
}

pub fn dispatch(cli: Cli) -> RunOutput {
    match cli.command {
        Command::Resolve(args) => {
            let mut query = match build_query(&args.common, args.mode) {
                Ok(q) => q,
                Err(msg) => {
                    return RunOutput {
                        exit_code: 1,
                        text: format!("error: {msg}\n"),
                    }
                }
            };
            query.zero_set = args.zero_set;
            query.decomp = args.decomp;
            query.max_decomps = args.max_decomps;
            query.order = args.order;
            run(&query)
        }
        Command::Probe(args) => {
            let mut query = match build_query(&args.common, Mode::Probe) {
                Ok(q) => q,
                Err(msg) => {
                    return RunOutput {
                        exit_code: 1,
                        text: format!("error: {msg}\n"),
                    }
                }
            };
            if args.common.paths.is_none() {
                query.paths = 20;
            }
            run(&query)
        }
    }
}

/// Does the denominator vanish in a punctured ball around the point?
/// Decided on 4096 quasi-random samples: an exact zero or a sign change
/// on the connected punctured ball betrays nearby zeros.
fn denominator_vanishes_nearby(g: &Expr, vars: &[String], point: &Point) -> bool {
    let radius = crate::rat::rat(1, 8);
    let inner = crate::rat::rat(1, 64);
    let center: Vec<Rat> = vars
        .iter()
        .map(|v| point.get(v).cloned().unwrap_or_else(Rat::zero))
        .collect();
    let mut pos = false;
    let mut neg = false;
    for i in 0..4096u64 {
        let p = halton_point(i, vars.len(), &radius, &center);
        let dist: Rat = p
            .iter()
            .zip(center.iter())
            .map(|(a, b)| (a.clone() - b.clone()) * (a.clone() - b.clone()))
            .sum();
        if dist < inner.clone() * inner.clone() {
            continue;
        }
        let env: BTreeMap<String, Rat> = vars.iter().cloned().zip(p.iter().cloned()).collect();
        if let Some(v) = evaluate_exact(g, &env) {
            if v.is_zero() {
                return true;
            }
            if v.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
        } else {
            let envf: BTreeMap<String, f64> =
                env.iter().map(|(k, v)| (k.clone(), to_f64(v))).collect();
            match evaluate(g, &envf) {
                Ok(Evaluated::Value(v)) => {
                    if v == 0.0 {
                        return true;
                    }
                    if v > 0.0 {
                        pos = true;
                    } else {
                        neg = true;
                    }
                }
                _ => continue,
            }
        }
        if pos && neg {
            return true;
        }
    }
    false
}

/// Runs a query end to end and renders the result.
pub fn run(query: &Query) -> RunOutput {
    let problem = match LimitProblem::new(
        query.numerator.clone(),
        query.denominator.clone(),
        query.variables.clone(),
        query.point.clone(),
    ) {
        Ok(p) => p,
        Err(e) => {
            return RunOutput {
                exit_code: 1,
                text: format!("error: {e}\n"),
            }
        }
    };

    // oracle report (always for probe; optional for resolve)
    let oracle_report = if query.paths >= 8 {
        oracle::random_path_suite(&problem, query.paths, query.seed).ok()
    } else {
        None
    };

    if query.mode == Mode::Probe {
        return render_probe(query, oracle_report);
    }

    let (verdict, certificate) = resolve(query, &problem);
    render_verdict(query, &verdict, &certificate, oracle_report)
}

fn resolve(query: &Query, problem: &LimitProblem) -> (Verdict, Certificate) {
    let origin = problem.translated_to_origin();
    // explicit zero-set specification routes to the directional rule
    if let Some(json) = &query.zero_set {
        return match transversal::zero_set_from_json(json, &query.variables) {
            Ok(spec) => {
                transversal::resolve_nonisolated(problem, &spec, &transversal::Options::default())
            }
            Err(e) => (
                Verdict::Inconclusive(format!("bad --zero-set: {e}")),
                Certificate::new(),
            ),
        };
    }
    let detected = transversal::detect_zero_set(&origin.denominator, &query.variables);
    match query.mode {
        Mode::Nonisolated => match detected {
            Some(spec) => {
                transversal::resolve_nonisolated(problem, &spec, &transversal::Options::default())
            }
            None => (
                Verdict::Inconclusive(
                    "nonisolated mode needs a zero set: none detected, supply --zero-set"
                        .to_string(),
                ),
                Certificate::new(),
            ),
        },
        Mode::Isolated => resolve_isolated_route(query, problem),
        Mode::Auto | Mode::Probe => {
            if let Some(spec) = detected {
                return transversal::resolve_nonisolated(
                    problem,
                    &spec,
                    &transversal::Options::default(),
                );
            }
            if denominator_vanishes_nearby(&origin.denominator, &query.variables, &origin.point) {
                return (
                    Verdict::Inconclusive(
                        "the denominator vanishes near the point (nonisolated singularity); supply --zero-set"
                            .to_string(),
                    ),
                    Certificate::new(),
                );
            }
            resolve_isolated_route(query, problem)
        }
    }
}

fn resolve_isolated_route(query: &Query, problem: &LimitProblem) -> (Verdict, Certificate) {
    let hints = match &query.decomp {
        Some(json) => match isolated::hints_from_json(json) {
            Ok(h) => h,
            Err(e) => {
                return (
                    Verdict::Inconclusive(format!("bad --decomp: {e}")),
                    Certificate::new(),
                )
            }
        },
        None => vec![],
    };
    let opts = IsolatedOptions {
        max_decomps: query.max_decomps,
        taylor_order: query.order.unwrap_or(16),
    };
    let (verdict, cert, _log) = isolated::resolve_isolated(problem, &hints, &opts);
    (verdict, cert)
}

fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Exists(_) => "exists",
        Verdict::DoesNotExist(_) => "does_not_exist",
        Verdict::Inconclusive(_) => "inconclusive",
    }
}

fn exit_code_for(v: &Verdict) -> i32 {
    if v.is_conclusive() {
        0
    } else {
        2
    }
}

/// Renders a certificate in the requested format.
pub fn render_certificate(cert: &Certificate, json: bool) -> String {
    if json {
        serde_json::to_string_pretty(cert).unwrap_or_else(|_| "[]".to_string())
    } else {
        cert.render_text()
    }
}

fn oracle_summary(report: &EstimateReport) -> String {
    let suggestion = match &report.verdict_suggestion {
        oracle::Suggestion::ConvergesTo(v) => format!("converges-to({v})"),
        oracle::Suggestion::PathDependent => "path-dependent".to_string(),
        oracle::Suggestion::Unbounded => "unbounded".to_string(),
        oracle::Suggestion::Noisy => "noisy".to_string(),
    };
    let mut out = format!("oracle suggestion: {suggestion}\n");
    for p in &report.paths {
        let diag = match &p.diagnostic {
            oracle::PathDiagnostic::Converged(v) => format!("converged({v:.6})"),
            oracle::PathDiagnostic::Unbounded => "unbounded".to_string(),
            oracle::PathDiagnostic::Noisy => "noisy".to_string(),
            oracle::PathDiagnostic::Rejected { undefined, total } => {
                format!("rejected ({undefined}/{total} undefined)")
            }
        };
        out.push_str(&format!("  {}: {diag}\n", p.label));
    }
    out
}

fn render_probe(query: &Query, report: Option<EstimateReport>) -> RunOutput {
    match report {
        Some(r) => {
            if query.json {
                let doc = serde_json::json!({
                    "oracle": r,
                    "paths": query.paths,
                    "seed": query.seed,
                });
                RunOutput {
                    exit_code: 0,
                    text: format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()),
                }
            } else {
                RunOutput {
                    exit_code: 0,
                    text: oracle_summary(&r),
                }
            }
        }
        None => RunOutput {
            exit_code: 2,
            text: "error: oracle produced no usable paths (need --paths >= 8)\n".to_string(),
        },
    }
}

fn render_verdict(
    query: &Query,
    verdict: &Verdict,
    cert: &Certificate,
    report: Option<EstimateReport>,
) -> RunOutput {
    let exit_code = exit_code_for(verdict);
    if query.json {
        let mut doc = serde_json::Map::new();
        doc.insert(
            "verdict".to_string(),
            serde_json::Value::String(verdict_word(verdict).to_string()),
        );
        match verdict {
            Verdict::Exists(v) => {
                doc.insert(
                    "value".to_string(),
                    serde_json::Value::String(v.to_string()),
                );
            }
            Verdict::DoesNotExist(ws) => {
                let paths: Vec<serde_json::Value> = ws
                    .iter()
                    .map(|w| serde_json::Value::String(w.render()))
                    .collect();
                doc.insert("witnesses".to_string(), serde_json::Value::Array(paths));
            }
            Verdict::Inconclusive(reason) => {
                doc.insert(
                    "reason".to_string(),
                    serde_json::Value::String(reason.clone()),
                );
            }
        }
        doc.insert(
            "certificate".to_string(),
            serde_json::to_value(&cert.steps).unwrap_or_default(),
        );
        if let Some(r) = report {
            doc.insert(
                "oracle".to_string(),
                serde_json::to_value(&r).unwrap_or_default(),
            );
        }
        RunOutput {
            exit_code,
            text: format!(
                "{}\n",
                serde_json::to_string_pretty(&serde_json::Value::Object(doc)).unwrap()
            ),
        }
    } else {
        let mut text = format!("verdict: {verdict}\n");
        if !cert.steps.is_empty() {
            text.push_str("certificate:\n");
            text.push_str(&render_certificate(cert, false));
        }
        if let Some(r) = report {
            text.push_str(&oracle_summary(&r));
        }
        RunOutput { exit_code, text }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn common(num: &str, den: &str, vars: &str, point: &str) -> CommonArgs {
        CommonArgs {
            num: Some(num.to_string()),
            den: Some(den.to_string()),
            expr: None,
            vars: vars.to_string(),
            point: point.to_string(),
            paths: Some(0),
            seed: Some(0),
            json: false,
        }
    }

    #[test]
    fn quotient_shorthand_splits() {
        let e = crate::expr::parse("(x - y)/(sin(x) - sin(y))").unwrap();
        let (num, den) = split_quotient(&e);
        assert_eq!(num, crate::expr::parse("x - y").unwrap());
        assert_eq!(den, crate::expr::parse("sin(x) - sin(y)").unwrap());
    }

    #[test]
    fn input_errors_exit_one() {
        let args = common("x^2*", "x", "x", "0");
        assert!(build_query(&args, Mode::Auto).is_err());
        let bad_point = common("x", "x", "x", "0.5");
        assert!(build_query(&bad_point, Mode::Auto).is_err());
        let dim = common("x", "x", "x,y", "0");
        assert!(build_query(&dim, Mode::Auto).is_err());
    }

    #[test]
    fn textbook_resolve_does_not_exist() {
        let q = build_query(&common("x*y", "x^2+y^2", "x,y", "0,0"), Mode::Auto).unwrap();
        let out = run(&q);
        assert_eq!(out.exit_code, 0);
        assert!(out.text.contains("does not exist"), "{}", out.text);
    }

    #[test]
    fn json_schema_fields() {
        let mut q = build_query(&common("x*y", "x^2+y^2", "x,y", "0,0"), Mode::Auto).unwrap();
        q.json = true;
        q.paths = 12;
        let out = run(&q);
        let doc: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(doc["verdict"], "does_not_exist");
        assert!(doc["witnesses"].as_array().unwrap().len() >= 2);
        assert!(!doc["certificate"].as_array().unwrap().is_empty());
        assert!(doc["oracle"].is_object());
    }

    #[test]
    fn auto_detects_nonisolated_pattern() {
        let q = build_query(
            &common("x - y", "sin(x) - sin(y)", "x,y", "0,0"),
            Mode::Auto,
        )
        .unwrap();
        let out = run(&q);
        assert_eq!(out.exit_code, 0, "{}", out.text);
        assert!(out.text.contains("exists, value 1"), "{}", out.text);
    }

    #[test]
    fn vanishing_denominator_without_spec_is_inconclusive() {
        // g = x^2 - y^2 vanishes along y = +-x and matches no phi(a)-phi(b)
        // pattern; the sampled sign change routes to "supply --zero-set"
        let q = build_query(&common("x - y", "x^2 - y^2", "x,y", "0,0"), Mode::Auto).unwrap();
        let out = run(&q);
        assert_eq!(out.exit_code, 2, "{}", out.text);
        assert!(out.text.contains("zero-set"), "{}", out.text);
    }

    #[test]
    fn squared_line_denominator_is_ruled_out_by_axis_probe() {
        // g = (x - y)^2 >= 0 evades the sign-change detector, but the
        // isolated pipeline soundly finds the blow-up along the x axis
        let q = build_query(&common("x - y", "(x - y)^2", "x,y", "0,0"), Mode::Auto).unwrap();
        let out = run(&q);
        assert_eq!(out.exit_code, 0, "{}", out.text);
        assert!(out.text.contains("does not exist"), "{}", out.text);
        assert!(out.text.contains("infinity"), "{}", out.text);
    }
}
