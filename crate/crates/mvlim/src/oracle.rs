//! Floating-point cross-validation of symbolic verdicts.
//!
//! Limits are estimated along explicit paths into the singular point with a
//! geometric parameter schedule; a suite of random lines, monomial curves,
//! and shifted curves aggregates into a suggestion that must never
//! contradict the symbolic verdict. No rigor is claimed here — this is the
//! empirical counterweight, not a proof.

use crate::expr::{evaluate, Evaluated, Expr};
use crate::problem::LimitProblem;
use crate::rat::{rat, Rat};
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Geometric schedule t_k = start * ratio^k, k = 0..count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Schedule {
    pub start: f64,
    pub ratio: f64,
    pub count: usize,
}

impl Default for Schedule {
    /// t_k = 2^-4 * 2^-k for k = 0..=26, tail of 5, balancing rounding
    /// against truncation across the examples' degree range.
    fn default() -> Schedule {
        Schedule {
            start: 2f64.powi(-4),
            ratio: 0.5,
            count: 27,
        }
    }
}

impl Schedule {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|k| self.start * self.ratio.powi(k as i32))
    }
}

/// A parameterized path approaching the point as t -> 0+.
#[derive(Debug, Clone)]
pub struct PathSpec {
    pub label: String,
    /// variable -> expression in t
    pub parameterization: BTreeMap<String, Expr>,
    pub schedule: Schedule,
}

impl PathSpec {
    pub fn new(label: impl Into<String>, parameterization: BTreeMap<String, Expr>) -> PathSpec {
        PathSpec {
            label: label.into(),
            parameterization,
            schedule: Schedule::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PathDiagnostic {
    /// Tail spread within tolerance; the value is the tail mean.
    Converged(f64),
    /// Magnitudes blow past 1e6 and keep growing.
    Unbounded,
    /// Defined but not settling.
    Noisy,
    /// More than half the samples were undefined.
    Rejected { undefined: usize, total: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct PathEstimate {
    pub label: String,
    /// h(path(t_k)); None marks undefined samples (skipped, counted).
    pub values: Vec<Option<f64>>,
    pub diagnostic: PathDiagnostic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Suggestion {
    #[serde(rename = "converges-to")]
    ConvergesTo(f64),
    #[serde(rename = "path-dependent")]
    PathDependent,
    #[serde(rename = "unbounded")]
    Unbounded,
    #[serde(rename = "noisy")]
    Noisy,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub paths: Vec<PathEstimate>,
    /// max pairwise spread across converged path values
    pub cross_path_spread: Option<f64>,
    pub verdict_suggestion: Suggestion,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("all paths were rejected (undefined along the approach)")]
    AllPathsRejected,
    #[error("need at least {min} paths, got {got}")]
    TooFewPaths { min: usize, got: usize },
}

const REL_TOL: f64 = 1e-3;
const ABS_FLOOR: f64 = 1e-6;
const TAIL: usize = 5;
const BLOWUP: f64 = 1e6;

fn tolerance_at(scale: f64) -> f64 {
    (REL_TOL * scale.abs()).max(ABS_FLOOR)
}

/// Evaluates the quotient along the path. Undefined samples (exact zero
/// denominator, domain violations) are skipped and counted; a path with
/// more than half undefined is rejected.
pub fn estimate_path_limit(num: &Expr, den: &Expr, path: &PathSpec) -> PathEstimate {
    let mut values = Vec::with_capacity(path.schedule.count);
    let mut undefined = 0usize;
    for t in path.schedule.values() {
        let mut env = BTreeMap::new();
        env.insert("t".to_string(), t);
        let mut point = BTreeMap::new();
        let mut ok = true;
        for (v, e) in &path.parameterization {
            match evaluate(e, &env) {
                Ok(Evaluated::Value(x)) => {
                    point.insert(v.clone(), x);
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            values.push(None);
            undefined += 1;
            continue;
        }
        let fv = evaluate(num, &point).ok().and_then(|e| e.value());
        let gv = evaluate(den, &point).ok().and_then(|e| e.value());
        match (fv, gv) {
            (Some(fv), Some(gv)) if gv != 0.0 => {
                let h = fv / gv;
                if h.is_nan() {
                    values.push(None);
                    undefined += 1;
                } else {
                    values.push(Some(h));
                }
            }
            _ => {
                values.push(None);
                undefined += 1;
            }
        }
    }
    let total = values.len();
    let diagnostic = if undefined * 2 > total {
        PathDiagnostic::Rejected { undefined, total }
    } else {
        diagnose(&values)
    };
    PathEstimate {
        label: path.label.clone(),
        values,
        diagnostic,
    }
}

fn diagnose(values: &[Option<f64>]) -> PathDiagnostic {
    let defined: Vec<f64> = values.iter().filter_map(|v| *v).collect();
    if defined.len() < TAIL {
        return PathDiagnostic::Noisy;
    }
    let tail = &defined[defined.len() - TAIL..];
    // unbounded: the last defined values are huge and still growing
    let growing = tail.windows(2).all(|w| w[1].abs() >= w[0].abs());
    if tail.iter().all(|v| v.abs() > BLOWUP) && growing {
        return PathDiagnostic::Unbounded;
    }
    let mean = tail.iter().sum::<f64>() / TAIL as f64;
    let spread = tail
        .iter()
        .map(|v| (v - mean).abs())
        .fold(0.0f64, f64::max)
        * 2.0;
    if spread <= tolerance_at(mean) {
        PathDiagnostic::Converged(mean)
    } else {
        PathDiagnostic::Noisy
    }
}

/// Aggregates path estimates. converges-to(v) requires every usable path to
/// converge with cross-path spread within tolerance; two converged paths
/// apart certify path dependence.
pub fn aggregate(paths: Vec<PathEstimate>) -> Result<EstimateReport, OracleError> {
    let usable: Vec<&PathEstimate> = paths
        .iter()
        .filter(|p| !matches!(p.diagnostic, PathDiagnostic::Rejected { .. }))
        .collect();
    if usable.is_empty() {
        return Err(OracleError::AllPathsRejected);
    }
    let converged: Vec<f64> = usable
        .iter()
        .filter_map(|p| match p.diagnostic {
            PathDiagnostic::Converged(v) => Some(v),
            _ => None,
        })
        .collect();
    let cross = if converged.len() >= 2 {
        let mut spread = 0.0f64;
        for a in &converged {
            for b in &converged {
                spread = spread.max((a - b).abs());
            }
        }
        Some(spread)
    } else {
        None
    };
    let any_unbounded = usable
        .iter()
        .any(|p| p.diagnostic == PathDiagnostic::Unbounded);
    let scale = converged
        .iter()
        .map(|v| v.abs())
        .fold(0.0f64, f64::max);
    let suggestion = if let Some(spread) = cross {
        if spread > tolerance_at(scale) {
            Suggestion::PathDependent
        } else if any_unbounded {
            Suggestion::Unbounded
        } else if converged.len() == usable.len() {
            let mid = converged.iter().sum::<f64>() / converged.len() as f64;
            Suggestion::ConvergesTo(mid)
        } else {
            Suggestion::Noisy
        }
    } else if any_unbounded {
        Suggestion::Unbounded
    } else if converged.len() == usable.len() && converged.len() == 1 {
        Suggestion::ConvergesTo(converged[0])
    } else {
        Suggestion::Noisy
    };
    Ok(EstimateReport {
        paths,
        cross_path_spread: cross,
        verdict_suggestion: suggestion,
    })
}

/// Small positive/negative rational from an RNG, avoiding tiny magnitudes.
fn random_coefficient(rng: &mut ChaCha8Rng) -> Rat {
    let num = loop {
        let n: i64 = rng.gen_range(-8..=8);
        if n != 0 {
            break n;
        }
    };
    let den: i64 = rng.gen_range(1..=4);
    rat(num, den)
}

/// Mixed suite of straight lines, monomial curves x_j = a_j t^(q_j), and
/// shifted curves. Deterministic given the seed. The monomial exponents
/// sweep a fixed low lattice so that low-degree path dependence (y = a x^2
/// and friends) is found systematically rather than by luck.
pub fn random_path_suite(
    problem: &LimitProblem,
    n_paths: usize,
    seed: u64,
) -> Result<EstimateReport, OracleError> {
    if n_paths < 8 {
        return Err(OracleError::TooFewPaths {
            min: 8,
            got: n_paths,
        });
    }
    let origin = problem.translated_to_origin();
    let vars = &origin.variables;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // exponent patterns cycled by monomial/shifted paths
    let lattice: Vec<Vec<Rat>> = exponent_lattice(vars.len());
    let mut paths = Vec::with_capacity(n_paths);
    for i in 0..n_paths {
        let kind = i % 3;
        let mut param = BTreeMap::new();
        let label;
        match kind {
            0 => {
                // straight line through the point
                let mut parts = Vec::new();
                for v in vars {
                    let a = random_coefficient(&mut rng);
                    parts.push(format!("{v}={a}t"));
                    param.insert(
                        v.clone(),
                        Expr::mul(vec![Expr::constant(a), Expr::var("t")]),
                    );
                }
                label = format!("line[{}]", parts.join(","));
            }
            1 => {
                // monomial curve with exponents from the lattice sweep
                let pattern = &lattice[(i / 3) % lattice.len()];
                let mut parts = Vec::new();
                for (v, q) in vars.iter().zip(pattern.iter()) {
                    let a = random_coefficient(&mut rng);
                    parts.push(format!("{v}={a}t^{q}"));
                    param.insert(
                        v.clone(),
                        Expr::mul(vec![
                            Expr::constant(a),
                            Expr::pow(Expr::var("t"), q.clone()),
                        ]),
                    );
                }
                label = format!("monomial[{}]", parts.join(","));
            }
            _ => {
                // shifted curve: monomial leading term plus a higher-order offset
                let pattern = &lattice[(i / 3) % lattice.len()];
                let mut parts = Vec::new();
                for (v, q) in vars.iter().zip(pattern.iter()) {
                    let a = random_coefficient(&mut rng);
                    let b = random_coefficient(&mut rng);
                    let shift = q.clone() + Rat::one();
                    parts.push(format!("{v}={a}t^{q}+{b}t^{shift}"));
                    param.insert(
                        v.clone(),
                        Expr::add(vec![
                            Expr::mul(vec![
                                Expr::constant(a),
                                Expr::pow(Expr::var("t"), q.clone()),
                            ]),
                            Expr::mul(vec![
                                Expr::constant(b),
                                Expr::pow(Expr::var("t"), shift),
                            ]),
                        ]),
                    );
                }
                label = format!("shifted[{}]", parts.join(","));
            }
        }
        let path = PathSpec::new(label, param);
        paths.push(estimate_path_limit(
            &origin.numerator,
            &origin.denominator,
            &path,
        ));
    }
    aggregate(paths)
}

fn exponent_lattice(dims: usize) -> Vec<Vec<Rat>> {
    let base: Vec<Rat> = [1, 2, 3]
        .iter()
        .map(|&k| Rat::from_integer(k.into()))
        .collect();
    let mut out = Vec::new();
    match dims {
        1 => {
            for q in &base {
                out.push(vec![q.clone()]);
            }
        }
        2 => {
            for qx in &base {
                for qy in &base {
                    out.push(vec![qx.clone(), qy.clone()]);
                }
            }
        }
        _ => {
            // keep the sweep small in higher dimensions
            for qx in &base {
                for qy in &base {
                    for qz in &base {
                        out.push(vec![
                            qx.clone(),
                            qy.clone(),
                            qz.clone(),
                        ]);
                    }
                }
            }
        }
    }
    // fractional refinements useful near fourth-degree denominators
    if dims == 2 {
        out.push(vec![Rat::one(), rat(1, 2)]);
        out.push(vec![rat(1, 2), Rat::one()]);
        out.push(vec![rat(3, 2), Rat::one()]);
        out.push(vec![Rat::one(), rat(3, 2)]);
    }
    out
}

/// Max relative deviation between the symbolic directional derivative and
/// a central finite difference with step 1e-5 over the sample points.
pub fn finite_difference_check(
    e: &Expr,
    vars: &[String],
    v: &[Rat],
    points: &[BTreeMap<String, f64>],
) -> f64 {
    let sym = match crate::calculus::directional_derivative(e, vars, v) {
        Ok(d) => d,
        Err(_) => return f64::INFINITY,
    };
    let h = 1e-5;
    let vf: Vec<f64> = v.iter().map(crate::rat::to_f64).collect();
    let mut worst = 0.0f64;
    for p in points {
        let sym_val = match evaluate(&sym, p) {
            Ok(Evaluated::Value(x)) => x,
            _ => continue,
        };
        let mut plus = p.clone();
        let mut minus = p.clone();
        for (var, dir) in vars.iter().zip(vf.iter()) {
            *plus.get_mut(var).unwrap() += h * dir;
            *minus.get_mut(var).unwrap() -= h * dir;
        }
        let (fp, fm) = match (evaluate(e, &plus), evaluate(e, &minus)) {
            (Ok(Evaluated::Value(a)), Ok(Evaluated::Value(b))) => (a, b),
            _ => continue,
        };
        let fd = (fp - fm) / (2.0 * h);
        let denom = sym_val.abs().max(fd.abs()).max(1e-8);
        worst = worst.max((sym_val - fd).abs() / denom);
    }
    worst
}

/// Witness check: |h(path(t0))| at a single parameter value, used to verify
/// that two witness paths separate by more than a stated gap.
pub fn evaluate_quotient_on_path(
    num: &Expr,
    den: &Expr,
    parameterization: &BTreeMap<String, Expr>,
    t0: f64,
) -> Option<f64> {
    let mut env = BTreeMap::new();
    env.insert("t".to_string(), t0);
    let mut point = BTreeMap::new();
    for (v, e) in parameterization {
        match evaluate(e, &env) {
            Ok(Evaluated::Value(x)) => {
                point.insert(v.clone(), x);
            }
            _ => return None,
        }
    }
    let f = evaluate(num, &point).ok()?.value()?;
    let g = evaluate(den, &point).ok()?.value()?;
    if g == 0.0 {
        return None;
    }
    let h = f / g;
    if h.is_nan() {
        None
    } else {
        Some(h)
    }
}
