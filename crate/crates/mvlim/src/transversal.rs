//! Resolver for nonisolated singularities: the directional L'Hopital rule.
//!
//! When the common zero set C of f and g is a union of smooth curves (or
//! hypersurfaces) through the point, the limit of f/g over each component
//! E_i of the punctured neighborhood equals the limit of D_v f / D_v g for
//! any fixed direction v not tangent to C, provided D_v g does not vanish
//! on E_i. Transversality is decided exactly; the nonvanishing hypothesis
//! is proved by interval arithmetic where possible and otherwise attacked
//! by falsification — a hypothesis that survives sampling is recorded as
//! an assumption, never as a proof.

use crate::calculus::{differentiate, directional_derivative, univariate_limit, UniVerdict};
use crate::certificate::{Certificate, StepStatus};
use crate::expr::{evaluate, evaluate_exact, Evaluated, Expr, Func};
use crate::problem::{ApproachValue, LimitProblem, Verdict, WitnessPath};
use crate::rat::{rat, to_f64, Rat};
use crate::sampling::halton_point;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// One curve (or hypersurface) of the zero set: parameterized through the
/// point at s = 0, or given implicitly as {expr = 0}.
#[derive(Debug, Clone)]
pub enum CurveSpec {
    Parametric {
        svar: String,
        param: BTreeMap<String, Expr>,
    },
    Implicit(Expr),
}

/// Strict sign condition `expr > 0` (positive) or `expr < 0`.
#[derive(Debug, Clone)]
pub struct SignCondition {
    pub expr: Expr,
    pub positive: bool,
}

/// A component E_i of the punctured neighborhood, with its transversal
/// direction (if the user chose one), membership predicate, and sample
/// seed points.
#[derive(Debug, Clone)]
pub struct ComponentSpec {
    pub id: String,
    pub direction: Option<Vec<Rat>>,
    pub predicate: Vec<SignCondition>,
    pub seeds: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone)]
pub struct ZeroSetSpec {
    pub curves: Vec<CurveSpec>,
    pub components: Vec<ComponentSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub samples: usize,
    pub max_depth: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            samples: 4096,
            max_depth: 2,
        }
    }
}

pub fn default_radius() -> Rat {
    rat(1, 4)
}

/// Exact transversality check: v must not be parallel to any parametric
/// tangent and must have nonzero dot product with every implicit gradient.
#[derive(Debug, Clone)]
pub struct TransversalityOutcome {
    pub transversal: bool,
    pub detail: String,
}

pub fn check_transversality(
    curves: &[CurveSpec],
    vars: &[String],
    v: &[Rat],
) -> Result<TransversalityOutcome, String> {
    let origin: BTreeMap<String, Rat> = vars.iter().map(|x| (x.clone(), Rat::zero())).collect();
    let mut details = Vec::new();
    for (ci, curve) in curves.iter().enumerate() {
        match curve {
            CurveSpec::Parametric { svar, param } => {
                let mut tangent = Vec::with_capacity(vars.len());
                let s_origin: BTreeMap<String, Rat> =
                    [(svar.clone(), Rat::zero())].into_iter().collect();
                for var in vars {
                    let coord = param
                        .get(var)
                        .cloned()
                        .unwrap_or_else(|| Expr::var(var.clone()));
                    let d = differentiate(&coord, svar);
                    match evaluate_exact(&d, &s_origin) {
                        Some(t) => tangent.push(t),
                        None => {
                            return Err(format!(
                                "curve {ci}: tangent of {var} not exactly evaluable at s=0"
                            ))
                        }
                    }
                }
                if tangent.iter().all(|t| t.is_zero()) {
                    return Err(format!(
                        "curve {ci}: vanishing tangent at p (not certified smooth)"
                    ));
                }
                // v parallel to tangent iff all 2x2 minors vanish
                let mut parallel = true;
                for i in 0..vars.len() {
                    for j in (i + 1)..vars.len() {
                        let minor =
                            v[i].clone() * tangent[j].clone() - v[j].clone() * tangent[i].clone();
                        if !minor.is_zero() {
                            parallel = false;
                        }
                    }
                }
                if parallel {
                    return Ok(TransversalityOutcome {
                        transversal: false,
                        detail: format!("v is parallel to the tangent of curve {ci}"),
                    });
                }
                details.push(format!(
                    "curve {ci}: tangent ({}) not parallel to v",
                    render_vector(&tangent)
                ));
            }
            CurveSpec::Implicit(phi) => {
                let mut dot = Rat::zero();
                let mut grad = Vec::with_capacity(vars.len());
                for (var, vj) in vars.iter().zip(v.iter()) {
                    let d = differentiate(phi, var);
                    match evaluate_exact(&d, &origin) {
                        Some(gj) => {
                            dot += gj.clone() * vj.clone();
                            grad.push(gj);
                        }
                        None => {
                            return Err(format!(
                                "curve {ci}: gradient of {phi} not exactly evaluable at p"
                            ))
                        }
                    }
                }
                if grad.iter().all(|g| g.is_zero()) {
                    return Err(format!(
                        "curve {ci}: vanishing gradient at p (not certified smooth)"
                    ));
                }
                if dot.is_zero() {
                    return Ok(TransversalityOutcome {
                        transversal: false,
                        detail: format!("v lies in the tangent plane of curve {ci}"),
                    });
                }
                details.push(format!(
                    "curve {ci}: grad ({}) . v = {dot} != 0",
                    render_vector(&grad)
                ));
            }
        }
    }
    Ok(TransversalityOutcome {
        transversal: true,
        detail: details.join("; "),
    })
}

fn render_vector(v: &[Rat]) -> String {
    v.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Result of hunting for a zero of `D_v g` inside a component.
#[derive(Debug, Clone)]
pub enum FalsifyOutcome {
    /// A point in the component within the radius where the directional
    /// derivative is exactly zero (symbolic/exact) or below 1e-12.
    Counterexample { point: Vec<Rat>, exact: bool },
    /// No counterexample found. `proved` is set when interval arithmetic
    /// certified nonvanishing on the enclosing box.
    NotFalsified { proved: bool, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FalsifyError {
    #[error("component {0:?} is empty: no seed points and no sampled member within budget")]
    EmptyComponent(String),
}

fn member_exact(comp: &ComponentSpec, vars: &[String], point: &[Rat]) -> Option<bool> {
    let env: BTreeMap<String, Rat> = vars
        .iter()
        .cloned()
        .zip(point.iter().cloned())
        .collect();
    for cond in &comp.predicate {
        let v = evaluate_exact(&cond.expr, &env)?;
        let ok = if cond.positive {
            v.is_positive()
        } else {
            v.is_negative()
        };
        if !ok {
            return Some(false);
        }
    }
    Some(true)
}

fn member_float(comp: &ComponentSpec, vars: &[String], point: &[f64], margin: f64) -> bool {
    let env: BTreeMap<String, f64> = vars
        .iter()
        .cloned()
        .zip(point.iter().cloned())
        .collect();
    for cond in &comp.predicate {
        match evaluate(&cond.expr, &env) {
            Ok(Evaluated::Value(v)) => {
                let ok = if cond.positive {
                    v > margin
                } else {
                    v < -margin
                };
                if !ok {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

fn is_member(comp: &ComponentSpec, vars: &[String], point: &[Rat]) -> bool {
    match member_exact(comp, vars, point) {
        Some(b) => b,
        None => {
            let pf: Vec<f64> = point.iter().map(to_f64).collect();
            member_float(comp, vars, &pf, 1e-12)
        }
    }
}

fn norm_sq(point: &[Rat]) -> Rat {
    point.iter().map(|c| c.clone() * c.clone()).sum()
}

/// Collects rational member points of the component within the radius.
fn member_points(
    comp: &ComponentSpec,
    vars: &[String],
    radius: &Rat,
    budget: usize,
    want: usize,
) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for seed in &comp.seeds {
        if seed.len() == vars.len() && norm_sq(seed) <= radius.clone() * radius.clone() {
            out.push(seed.clone());
        }
    }
    let center: Vec<Rat> = vec![Rat::zero(); vars.len()];
    for i in 0..budget {
        if out.len() >= want {
            break;
        }
        let p = halton_point(i as u64, vars.len(), radius, &center);
        if norm_sq(&p) <= radius.clone() * radius.clone() && is_member(comp, vars, &p) {
            out.push(p);
        }
    }
    out
}

/// Hypothesis check for `D_v g != 0` on a component: interval proof on the
/// enclosing box first, then falsification by quasi-random sampling with
/// Gauss-Newton refinement toward the zero set.
pub fn falsify_nonvanishing(
    dvg: &Expr,
    comp: &ComponentSpec,
    vars: &[String],
    radius: &Rat,
    samples: usize,
) -> Result<FalsifyOutcome, FalsifyError> {
    let members = member_points(comp, vars, radius, samples, 64);
    if members.is_empty() {
        return Err(FalsifyError::EmptyComponent(comp.id.clone()));
    }
    // symbolically zero derivative: any member point is a counterexample
    if dvg.is_zero() {
        return Ok(FalsifyOutcome::Counterexample {
            point: members[0].clone(),
            exact: true,
        });
    }
    // exact interval proof on the whole box dominates the component
    let origin: BTreeMap<String, Rat> = vars.iter().map(|v| (v.clone(), Rat::zero())).collect();
    if crate::interval::prove_nonvanishing_on_box(dvg, vars, &origin, radius).is_some() {
        return Ok(FalsifyOutcome::NotFalsified {
            proved: true,
            samples: 0,
        });
    }
    // exact zeros at rational samples
    for p in &members {
        let env: BTreeMap<String, Rat> =
            vars.iter().cloned().zip(p.iter().cloned()).collect();
        if let Some(v) = evaluate_exact(dvg, &env) {
            if v.is_zero() {
                return Ok(FalsifyOutcome::Counterexample {
                    point: p.clone(),
                    exact: true,
                });
            }
        }
    }
    // sample widely, then refine the most promising points toward a zero
    let center: Vec<Rat> = vec![Rat::zero(); vars.len()];
    let mut best: Vec<(f64, Vec<f64>)> = Vec::new();
    let grads: Vec<Expr> = vars.iter().map(|v| differentiate(dvg, v)).collect();
    let mut seen = 0usize;
    for i in 0..samples {
        let p = halton_point(i as u64, vars.len(), radius, &center);
        if norm_sq(&p) > radius.clone() * radius.clone() || !is_member(comp, vars, &p) {
            continue;
        }
        seen += 1;
        let pf: Vec<f64> = p.iter().map(to_f64).collect();
        if let Some(h) = eval_at(dvg, vars, &pf) {
            if h.abs() < 1e-12 && member_float(comp, vars, &pf, 1e-9) {
                return Ok(FalsifyOutcome::Counterexample {
                    point: p.clone(),
                    exact: false,
                });
            }
            best.push((h.abs(), pf));
        }
    }
    if seen == 0 && comp.seeds.is_empty() {
        return Err(FalsifyError::EmptyComponent(comp.id.clone()));
    }
    best.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let radius_f = to_f64(radius);
    for (_, start) in best.into_iter().take(12) {
        if let Some(zero) = gauss_newton_zero(dvg, &grads, vars, &start, radius_f) {
            // strict membership with a safety margin keeps boundary zeros
            // (which belong to C, not to the open component) out
            if member_float(comp, vars, &zero, 1e-9) {
                if let Some(exact_point) = rationalize_zero(dvg, comp, vars, &zero, radius) {
                    return Ok(FalsifyOutcome::Counterexample {
                        point: exact_point,
                        exact: true,
                    });
                }
                let approx: Vec<Rat> = zero.iter().map(|c| close_rational(*c, 1 << 24)).collect();
                return Ok(FalsifyOutcome::Counterexample {
                    point: approx,
                    exact: false,
                });
            }
        }
    }
    Ok(FalsifyOutcome::NotFalsified {
        proved: false,
        samples: seen,
    })
}

fn eval_at(e: &Expr, vars: &[String], point: &[f64]) -> Option<f64> {
    let env: BTreeMap<String, f64> = vars
        .iter()
        .cloned()
        .zip(point.iter().cloned())
        .collect();
    match evaluate(e, &env) {
        Ok(Evaluated::Value(v)) => Some(v),
        _ => None,
    }
}

/// Newton flow for a single scalar equation h(x) = 0:
/// x <- x - h * grad h / |grad h|^2.
fn gauss_newton_zero(
    h: &Expr,
    grads: &[Expr],
    vars: &[String],
    start: &[f64],
    radius: f64,
) -> Option<Vec<f64>> {
    let mut x = start.to_vec();
    for _ in 0..40 {
        let hv = eval_at(h, vars, &x)?;
        if hv.abs() < 1e-14 {
            return Some(x);
        }
        let g: Vec<f64> = grads
            .iter()
            .map(|ge| eval_at(ge, vars, &x))
            .collect::<Option<Vec<f64>>>()?;
        let gg: f64 = g.iter().map(|v| v * v).sum();
        if gg < 1e-18 {
            return None;
        }
        for (xi, gi) in x.iter_mut().zip(g.iter()) {
            *xi -= hv * gi / gg;
        }
        if x.iter().map(|v| v * v).sum::<f64>() > 4.0 * radius * radius {
            return None;
        }
    }
    let hv = eval_at(h, vars, &x)?;
    if hv.abs() < 1e-12 {
        Some(x)
    } else {
        None
    }
}

/// Snaps a numeric zero to nearby small rationals and verifies exactly.
fn rationalize_zero(
    dvg: &Expr,
    comp: &ComponentSpec,
    vars: &[String],
    zero: &[f64],
    radius: &Rat,
) -> Option<Vec<Rat>> {
    let candidates: Vec<Rat> = zero
        .iter()
        .map(|c| {
            if c.abs() < 1e-9 {
                Rat::zero()
            } else {
                close_rational(*c, 1 << 12)
            }
        })
        .collect();
    if norm_sq(&candidates) > radius.clone() * radius.clone() {
        return None;
    }
    if member_exact(comp, vars, &candidates)? != true {
        return None;
    }
    let env: BTreeMap<String, Rat> = vars
        .iter()
        .cloned()
        .zip(candidates.iter().cloned())
        .collect();
    if evaluate_exact(dvg, &env)? == Rat::zero() {
        Some(candidates)
    } else {
        None
    }
}

fn close_rational(x: f64, denom: i64) -> Rat {
    let scaled = (x * denom as f64).round() as i64;
    rat(scaled, denom)
}

/// Pattern detector for factorable denominators `phi(a) - phi(b)` with phi
/// injective near 0 (sin, tan, exp, sqrt) or even (cos, sec, abs). Emits
/// the implicit curves a - b = 0 (and a + b = 0 for even phi) plus
/// sign-vector components with sampled seed points.
pub fn detect_zero_set(g: &Expr, vars: &[String]) -> Option<ZeroSetSpec> {
    let terms = match g {
        Expr::Add(ts) if ts.len() == 2 => ts,
        _ => return None,
    };
    // a * phi(p) - a * phi(q) for a common coefficient a != 0
    let mut plus: Option<(Func, Expr, Rat)> = None;
    let mut minus: Option<(Func, Expr, Rat)> = None;
    for t in terms {
        let (coeff, core) = t.split_coefficient();
        if let Expr::Func(f, arg) = &core {
            if coeff.is_positive() {
                plus = Some((*f, (**arg).clone(), coeff));
            } else if coeff.is_negative() {
                minus = Some((*f, (**arg).clone(), coeff));
            }
        }
    }
    let ((fa, a, ca), (fb, b, cb)) = (plus?, minus?);
    if fa != fb || ca != -cb {
        return None;
    }
    let origin: BTreeMap<String, Rat> = vars.iter().map(|v| (v.clone(), Rat::zero())).collect();
    if evaluate_exact(&a, &origin)? != Rat::zero() || evaluate_exact(&b, &origin)? != Rat::zero() {
        return None;
    }
    let difference = Expr::sub(a.clone(), b.clone());
    if difference.is_zero() {
        return None; // g is identically zero
    }
    let mut implicit = vec![difference];
    let even = matches!(fa, Func::Cos | Func::Sec | Func::Abs);
    if even {
        implicit.push(Expr::add(vec![a, b]));
    }
    let components = sign_vector_components(&implicit, vars, &default_radius(), 4096);
    if components.is_empty() {
        return None;
    }
    Some(ZeroSetSpec {
        curves: implicit.into_iter().map(CurveSpec::Implicit).collect(),
        components,
    })
}

/// Builds components as sign cells of the defining expressions, observed
/// by quasi-random sampling. Cells the sampler never sees are omitted (the
/// caller's certificate records component coverage as sampled).
pub fn sign_vector_components(
    implicit: &[Expr],
    vars: &[String],
    radius: &Rat,
    budget: usize,
) -> Vec<ComponentSpec> {
    let center: Vec<Rat> = vec![Rat::zero(); vars.len()];
    let mut cells: BTreeMap<Vec<bool>, Vec<Vec<Rat>>> = BTreeMap::new();
    for i in 0..budget {
        let p = halton_point(i as u64, vars.len(), radius, &center);
        if norm_sq(&p) > radius.clone() * radius.clone() {
            continue;
        }
        let env: BTreeMap<String, Rat> = vars.iter().cloned().zip(p.iter().cloned()).collect();
        let mut signs = Vec::with_capacity(implicit.len());
        let mut on_boundary = false;
        for e in implicit {
            match evaluate_exact(e, &env) {
                Some(v) if v.is_positive() => signs.push(true),
                Some(v) if v.is_negative() => signs.push(false),
                _ => {
                    on_boundary = true;
                    break;
                }
            }
        }
        if on_boundary {
            continue;
        }
        let entry = cells.entry(signs).or_default();
        if entry.len() < 3 {
            entry.push(p);
        }
    }
    cells
        .into_iter()
        .map(|(signs, seeds)| {
            let id = signs
                .iter()
                .map(|s| if *s { '+' } else { '-' })
                .collect::<String>();
            let predicate = implicit
                .iter()
                .zip(signs.iter())
                .map(|(e, s)| SignCondition {
                    expr: e.clone(),
                    positive: *s,
                })
                .collect();
            ComponentSpec {
                id,
                direction: None,
                predicate,
                seeds,
            }
        })
        .collect()
}

/// Candidate transversal directions tried in auto mode: axis directions
/// first, then simple diagonals.
fn candidate_directions(n: usize) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for j in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[j] = Rat::from_integer(1.into());
        out.push(v);
    }
    for j in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[j] = Rat::from_integer((-1).into());
        out.push(v);
    }
    for j in 0..n {
        for k in (j + 1)..n {
            for (sj, sk) in [(1i64, 1i64), (1, -1)] {
                let mut v = vec![Rat::zero(); n];
                v[j] = Rat::from_integer(sj.into());
                v[k] = Rat::from_integer(sk.into());
                out.push(v);
            }
        }
    }
    out
}

/// Checks that the declared curves lie inside the zero sets of both f and
/// g. Exact where substitution or linear elimination applies; sampled
/// otherwise. A failure here falsifies the user's zero-set claim.
fn check_containment(
    f: &Expr,
    g: &Expr,
    curves: &[CurveSpec],
    vars: &[String],
    cert: &mut Certificate,
) -> Result<(), String> {
    for (ci, curve) in curves.iter().enumerate() {
        for (label, e) in [("f", f), ("g", g)] {
            match vanishes_on_curve(e, curve, vars) {
                Vanishes::Exact => cert.push(
                    "Thm1",
                    format!("curve {ci}, {label}"),
                    format!("{label} vanishes on curve {ci} (exact substitution)"),
                    StepStatus::ProvedExact,
                ),
                Vanishes::Sampled => cert.push(
                    "Thm1",
                    format!("curve {ci}, {label}"),
                    format!("{label} vanishes on curve {ci} (sampled)"),
                    StepStatus::CheckedNumerically,
                ),
                Vanishes::Unknown => cert.push(
                    "Thm1",
                    format!("curve {ci}, {label}"),
                    format!("{label} assumed to vanish on curve {ci}"),
                    StepStatus::Assumed,
                ),
                Vanishes::No => {
                    return Err(format!(
                        "zero-set containment falsified: {label} does not vanish on curve {ci}"
                    ))
                }
            }
        }
    }
    Ok(())
}

enum Vanishes {
    Exact,
    Sampled,
    Unknown,
    No,
}

fn vanishes_on_curve(e: &Expr, curve: &CurveSpec, vars: &[String]) -> Vanishes {
    match curve {
        CurveSpec::Parametric { svar, param } => {
            let mut bindings: BTreeMap<String, Expr> = BTreeMap::new();
            for v in vars {
                bindings.insert(
                    v.clone(),
                    param.get(v).cloned().unwrap_or_else(|| Expr::var(v.clone())),
                );
            }
            let restricted = e.substitute(&bindings);
            if restricted.is_zero() {
                return Vanishes::Exact;
            }
            sampled_zero_univariate(&restricted, svar)
        }
        CurveSpec::Implicit(phi) => {
            // solve a linearly occurring variable and substitute
            if let Some((var, solved)) = solve_linear_variable(phi, vars) {
                let mut bindings = BTreeMap::new();
                bindings.insert(var, solved);
                let restricted = e.substitute(&bindings);
                if restricted.is_zero() {
                    return Vanishes::Exact;
                }
                return sampled_zero_multivar(&restricted, vars);
            }
            Vanishes::Unknown
        }
    }
}

/// If phi is linear in some variable with a constant coefficient (z in
/// z - x^2 - y^2, x in x - y), returns that variable and its solved form.
pub fn solve_linear_variable(phi: &Expr, vars: &[String]) -> Option<(String, Expr)> {
    let monomials = crate::expr::as_polynomial(phi)?;
    for var in vars {
        let mut coeff: Option<Rat> = None;
        let mut rest = Vec::new();
        let mut usable = true;
        for m in &monomials {
            let e = m.exponent(var);
            if e.is_zero() {
                rest.push(m.clone());
            } else if e == Rat::from_integer(1.into()) && m.exps.len() == 1 {
                if coeff.is_some() {
                    usable = false;
                    break;
                }
                coeff = Some(m.coeff.clone());
            } else {
                usable = false;
                break;
            }
        }
        if let (true, Some(c)) = (usable, coeff) {
            let rest_expr = crate::expr::polynomial_to_expr(&rest);
            let solved = Expr::mul(vec![
                Expr::constant(-c.recip()),
                rest_expr,
            ]);
            return Some((var.clone(), solved));
        }
    }
    None
}

fn sampled_zero_univariate(e: &Expr, svar: &str) -> Vanishes {
    let mut ok = true;
    for k in 4..14 {
        for sign in [1.0f64, -1.0] {
            let s = sign * 2f64.powi(-k);
            let mut env = BTreeMap::new();
            env.insert(svar.to_string(), s);
            match evaluate(e, &env) {
                Ok(Evaluated::Value(v)) => {
                    if v.abs() > 1e-9 * (1.0 + v.abs()) {
                        ok = false;
                    }
                }
                _ => return Vanishes::Unknown,
            }
        }
    }
    if ok {
        Vanishes::Sampled
    } else {
        Vanishes::No
    }
}

fn sampled_zero_multivar(e: &Expr, vars: &[String]) -> Vanishes {
    let center: Vec<Rat> = vec![Rat::zero(); vars.len()];
    let radius = rat(1, 8);
    let mut checked = 0;
    for i in 0..256u64 {
        let p = halton_point(i, vars.len(), &radius, &center);
        let pf: Vec<f64> = p.iter().map(to_f64).collect();
        if let Some(v) = eval_at(e, vars, &pf) {
            checked += 1;
            if v.abs() > 1e-8 {
                return Vanishes::No;
            }
        }
    }
    if checked > 0 {
        Vanishes::Sampled
    } else {
        Vanishes::Unknown
    }
}

enum ComponentOutcome {
    Value(Rat),
    Inconclusive(String),
}

/// Resolves the limit of f/g over one component via D_v f / D_v g:
/// direct continuous evaluation when possible, a one-variable reduction
/// when the quotient is univariate, then one recursive attempt.
#[allow(clippy::too_many_arguments)]
fn component_limit(
    f: &Expr,
    g: &Expr,
    comp: &ComponentSpec,
    curves: &[CurveSpec],
    vars: &[String],
    v: &[Rat],
    depth: usize,
    opts: &Options,
    cert: &mut Certificate,
) -> ComponentOutcome {
    let radius = default_radius();
    let dvf = match directional_derivative(f, vars, v) {
        Ok(d) => d,
        Err(_) => return ComponentOutcome::Inconclusive("zero direction vector".to_string()),
    };
    let dvg = match directional_derivative(g, vars, v) {
        Ok(d) => d,
        Err(_) => return ComponentOutcome::Inconclusive("zero direction vector".to_string()),
    };
    if depth > 0 {
        // recursive applications must re-establish the hypotheses for the
        // derived pair: containment of the curves and D_v g != 0
        let mut sub = Certificate::new();
        if let Err(reason) = check_containment(f, g, curves, vars, &mut sub) {
            return ComponentOutcome::Inconclusive(format!("recursive step: {reason}"));
        }
        cert.extend(sub);
        match falsify_nonvanishing(&dvg, comp, vars, &radius, opts.samples) {
            Ok(FalsifyOutcome::NotFalsified { proved, samples }) => {
                push_nonvanishing_step(cert, comp, &dvg, proved, samples);
            }
            Ok(FalsifyOutcome::Counterexample { point, exact }) => {
                return ComponentOutcome::Inconclusive(format!(
                    "recursive step: D_v g = {dvg} vanishes at ({}) in component {} ({})",
                    render_vector(&point),
                    comp.id,
                    if exact { "exact" } else { "numeric" },
                ));
            }
            Err(err) => return ComponentOutcome::Inconclusive(err.to_string()),
        }
    }
    let quotient = Expr::div(dvf.clone(), dvg.clone());
    let origin: BTreeMap<String, Rat> = vars.iter().map(|x| (x.clone(), Rat::zero())).collect();
    // direct continuous evaluation
    if let Some(g0) = evaluate_exact(&dvg, &origin) {
        if !g0.is_zero() {
            if let Some(f0) = evaluate_exact(&dvf, &origin) {
                let value = f0 / g0;
                cert.push(
                    "Thm1",
                    format!("component {}: D_v f / D_v g = {quotient}", comp.id),
                    format!(
                        "quotient is defined and continuous at p; direct evaluation gives {value}"
                    ),
                    StepStatus::ProvedExact,
                );
                return ComponentOutcome::Value(value);
            }
            return ComponentOutcome::Inconclusive(
                "directional quotient is not rational at p".to_string(),
            );
        }
    }
    // one-variable reduction
    let mut qvars = dvf.free_variables();
    qvars.extend(dvg.free_variables());
    if qvars.len() == 1 {
        let w = qvars.into_iter().next().unwrap();
        let right = univariate_limit(&dvf, &dvg, &w);
        let left = univariate_limit(
            &crate::calculus::limits::mirror(&dvf, &w),
            &crate::calculus::limits::mirror(&dvg, &w),
            &w,
        );
        match (right, left) {
            (Ok(r), Ok(l)) => {
                if r.verdict == l.verdict {
                    match r.verdict {
                        UniVerdict::Value(val) => {
                            cert.push(
                                "Thm1",
                                format!(
                                    "component {}: D_v f / D_v g = {quotient}, univariate in {w}",
                                    comp.id
                                ),
                                format!(
                                    "one-variable reduction: lim {w}->0 (two-sided) = {val}"
                                ),
                                StepStatus::ProvedExact,
                            );
                            return ComponentOutcome::Value(val);
                        }
                        UniVerdict::Unbounded { .. } => {
                            return ComponentOutcome::Inconclusive(format!(
                                "component {}: directional quotient is unbounded (improper limits are not propagated)",
                                comp.id
                            ));
                        }
                    }
                }
                // sides disagree: use the side the component actually
                // approaches, decided by sampling
                if let Some(sign) = component_variable_sign(comp, vars, &w, &radius) {
                    let chosen = if sign { r } else { l };
                    if let UniVerdict::Value(val) = chosen.verdict {
                        cert.push(
                            "Thm1",
                            format!(
                                "component {}: D_v f / D_v g univariate in {w}, side {}",
                                comp.id,
                                if sign { "+" } else { "-" }
                            ),
                            format!(
                                "one-sided reduction (side observed by sampling): limit {val}"
                            ),
                            StepStatus::CheckedNumerically,
                        );
                        return ComponentOutcome::Value(val);
                    }
                }
                return ComponentOutcome::Inconclusive(format!(
                    "component {}: one-sided limits disagree and the approach side is ambiguous",
                    comp.id
                ));
            }
            _ => { /* fall through to recursion */ }
        }
    }
    if depth + 1 < opts.max_depth {
        cert.push(
            "Thm1",
            format!("component {}: quotient {quotient}", comp.id),
            "directional quotient is again 0/0; one recursive application".to_string(),
            StepStatus::ProvedExact,
        );
        return component_limit(&dvf, &dvg, comp, curves, vars, v, depth + 1, opts, cert);
    }
    ComponentOutcome::Inconclusive(format!(
        "component {}: quotient unresolved at recursion depth {}",
        comp.id, opts.max_depth
    ))
}

/// Sign of variable w among sampled member points (None when both signs or
/// no information).
fn component_variable_sign(
    comp: &ComponentSpec,
    vars: &[String],
    w: &str,
    radius: &Rat,
) -> Option<bool> {
    let idx = vars.iter().position(|v| v == w)?;
    let members = member_points(comp, vars, radius, 2048, 32);
    let mut pos = 0usize;
    let mut neg = 0usize;
    for p in &members {
        if p[idx].is_positive() {
            pos += 1;
        } else if p[idx].is_negative() {
            neg += 1;
        }
    }
    match (pos > 0, neg > 0) {
        (true, false) => Some(true),
        (false, true) => Some(false),
        _ => None,
    }
}

fn push_nonvanishing_step(
    cert: &mut Certificate,
    comp: &ComponentSpec,
    dvg: &Expr,
    proved: bool,
    samples: usize,
) {
    if proved {
        cert.push(
            "Thm1",
            format!("component {}: D_v g = {dvg}", comp.id),
            "D_v g != 0 on the neighborhood box (exact interval enclosure)".to_string(),
            StepStatus::ProvedExact,
        );
    } else {
        cert.push(
            "Thm1",
            format!("component {}: D_v g = {dvg}", comp.id),
            format!(
                "D_v g != 0 on the component: not falsified by {samples} samples with refinement; recorded as an assumption"
            ),
            StepStatus::CheckedNumerically,
        );
    }
}

/// The nonisolated resolver. The problem must already be (or is first
/// translated) to the origin; the spec is interpreted in the same
/// coordinates.
pub fn resolve_nonisolated(
    problem: &LimitProblem,
    spec: &ZeroSetSpec,
    opts: &Options,
) -> (Verdict, Certificate) {
    let mut cert = Certificate::new();
    let origin_problem = problem.translated_to_origin();
    let vars = origin_problem.variables.clone();
    let f = origin_problem.numerator.clone();
    let g = origin_problem.denominator.clone();
    let radius = default_radius();

    if let Err(reason) = check_containment(&f, &g, &spec.curves, &vars, &mut cert) {
        return (Verdict::Inconclusive(reason), cert);
    }

    let mut component_values: Vec<(String, Rat, Vec<Rat>)> = Vec::new();
    for comp in &spec.components {
        // choose or validate the transversal direction
        let candidates: Vec<Vec<Rat>> = match &comp.direction {
            Some(v) => vec![v.clone()],
            None => candidate_directions(vars.len()),
        };
        let user_supplied = comp.direction.is_some();
        let mut chosen: Option<Vec<Rat>> = None;
        let mut failure = String::new();
        for v in candidates {
            match check_transversality(&spec.curves, &vars, &v) {
                Ok(out) if out.transversal => {
                    let dvg = match directional_derivative(&g, &vars, &v) {
                        Ok(d) => d,
                        Err(_) => continue,
                    };
                    match falsify_nonvanishing(&dvg, comp, &vars, &radius, opts.samples) {
                        Ok(FalsifyOutcome::NotFalsified { proved, samples }) => {
                            cert.push(
                                "Thm1",
                                format!("component {}: v = ({})", comp.id, render_vector(&v)),
                                format!("v transversal to every curve: {}", out.detail),
                                StepStatus::ProvedExact,
                            );
                            push_nonvanishing_step(&mut cert, comp, &dvg, proved, samples);
                            chosen = Some(v);
                            break;
                        }
                        Ok(FalsifyOutcome::Counterexample { point, exact }) => {
                            failure = format!(
                                "hypothesis D_v g != 0 falsified on component {}: D_v g = {dvg} vanishes at ({}) ({})",
                                comp.id,
                                render_vector(&point),
                                if exact { "exact" } else { "numeric" }
                            );
                            if user_supplied {
                                break;
                            }
                        }
                        Err(err) => {
                            failure = err.to_string();
                            if user_supplied {
                                break;
                            }
                        }
                    }
                }
                Ok(out) => {
                    failure = format!(
                        "hypothesis failed: v not transversal ({})",
                        out.detail
                    );
                    if user_supplied {
                        break;
                    }
                }
                Err(reason) => {
                    failure = reason;
                    if user_supplied {
                        break;
                    }
                }
            }
        }
        let v = match chosen {
            Some(v) => v,
            None => {
                let msg = if failure.is_empty() {
                    format!("no transversal direction certified for component {}", comp.id)
                } else {
                    failure
                };
                return (Verdict::Inconclusive(msg), cert);
            }
        };
        match component_limit(&f, &g, comp, &spec.curves, &vars, &v, 0, opts, &mut cert) {
            ComponentOutcome::Value(val) => {
                let seed = comp
                    .seeds
                    .first()
                    .cloned()
                    .or_else(|| {
                        member_points(comp, &vars, &radius, 2048, 1)
                            .into_iter()
                            .next()
                    })
                    .unwrap_or_else(|| vec![Rat::zero(); vars.len()]);
                component_values.push((comp.id.clone(), val, seed));
            }
            ComponentOutcome::Inconclusive(reason) => {
                return (Verdict::Inconclusive(reason), cert);
            }
        }
    }

    if component_values.is_empty() {
        return (
            Verdict::Inconclusive("no components to resolve".to_string()),
            cert,
        );
    }
    let first = component_values[0].1.clone();
    if let Some((other_id, other_val, other_seed)) = component_values
        .iter()
        .find(|(_, v, _)| *v != first)
        .cloned()
        .map(|(id, v, s)| (id, v, s))
    {
        // two components with different certified limits
        let (first_id, first_val, first_seed) = component_values[0].clone();
        let w1 = ray_witness(&vars, &first_seed, &first_val, &first_id);
        let w2 = ray_witness(&vars, &other_seed, &other_val, &other_id);
        cert.push(
            "Thm1",
            format!("components {first_id} and {other_id}"),
            format!(
                "component limits differ ({first_val} vs {other_val}); overall limit does not exist"
            ),
            StepStatus::ProvedExact,
        );
        let witnesses = vec![
            problem.untranslate_path(&w1),
            problem.untranslate_path(&w2),
        ];
        return (Verdict::DoesNotExist(witnesses), cert);
    }
    cert.push(
        "Thm1",
        format!(
            "components: {}",
            component_values
                .iter()
                .map(|(id, _, _)| id.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        format!("all component limits equal {first}; limit exists"),
        StepStatus::ProvedExact,
    );
    (Verdict::Exists(first), cert)
}

fn ray_witness(vars: &[String], seed: &[Rat], value: &Rat, comp_id: &str) -> WitnessPath {
    let param: BTreeMap<String, Expr> = vars
        .iter()
        .zip(seed.iter())
        .map(|(v, s)| {
            (
                v.clone(),
                Expr::mul(vec![Expr::constant(s.clone()), Expr::var("t")]),
            )
        })
        .collect();
    WitnessPath {
        label: format!("ray into component {comp_id}"),
        parameterization: param,
        approach: ApproachValue::Value(value.clone()),
    }
}

/// Parses a ZeroSetSpec from its JSON form:
/// {"curves":[{"param":{"x":"s","y":"s"}} | {"implicit":"..."}],
///  "components":[{"id":"east","v":["1","0"],"sign":["x - y > 0"],
///                 "seeds":[["1/8","0"]]}]}
/// Components may be omitted; sign cells are then derived from the
/// implicit forms.
pub fn zero_set_from_json(json: &str, vars: &[String]) -> Result<ZeroSetSpec, String> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| format!("zero-set JSON: {e}"))?;
    let curves_json = value
        .get("curves")
        .and_then(|c| c.as_array())
        .ok_or("zero-set JSON: missing curves[]")?;
    let mut curves = Vec::new();
    for c in curves_json {
        if let Some(p) = c.get("param") {
            let obj = p
                .as_object()
                .ok_or("zero-set JSON: param must be an object")?;
            let mut param = BTreeMap::new();
            for (var, text) in obj {
                let src = text
                    .as_str()
                    .ok_or("zero-set JSON: param entries must be strings")?;
                let e = crate::expr::parse(src).map_err(|e| e.to_string())?;
                param.insert(var.clone(), e);
            }
            let svar = infer_parameter_name(&param, vars)?;
            curves.push(CurveSpec::Parametric { svar, param });
        } else if let Some(i) = c.get("implicit") {
            let src = i
                .as_str()
                .ok_or("zero-set JSON: implicit must be a string")?;
            curves.push(CurveSpec::Implicit(
                crate::expr::parse(src).map_err(|e| e.to_string())?,
            ));
        } else {
            return Err("zero-set JSON: curve needs param or implicit".to_string());
        }
    }
    let mut components = Vec::new();
    if let Some(comps) = value.get("components").and_then(|c| c.as_array()) {
        for (i, cj) in comps.iter().enumerate() {
            let id = cj
                .get("id")
                .and_then(|v| v.as_str())
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("component{i}"));
            let direction = match cj.get("v") {
                Some(arr) => Some(parse_rat_array(arr)?),
                None => None,
            };
            let mut predicate = Vec::new();
            if let Some(signs) = cj.get("sign").and_then(|s| s.as_array()) {
                for s in signs {
                    let text = s.as_str().ok_or("zero-set JSON: sign must be strings")?;
                    predicate.push(parse_sign_condition(text)?);
                }
            }
            let mut seeds = Vec::new();
            if let Some(arr) = cj.get("seeds").and_then(|s| s.as_array()) {
                for seed in arr {
                    seeds.push(parse_rat_array(seed)?);
                }
            }
            components.push(ComponentSpec {
                id,
                direction,
                predicate,
                seeds,
            });
        }
    }
    if components.is_empty() {
        let implicit: Vec<Expr> = curves
            .iter()
            .filter_map(|c| match c {
                CurveSpec::Implicit(e) => Some(e.clone()),
                CurveSpec::Parametric { svar, param } => {
                    implicit_from_parametric(svar, param, vars)
                }
            })
            .collect();
        if implicit.len() == curves.len() && !implicit.is_empty() {
            components = sign_vector_components(&implicit, vars, &default_radius(), 4096);
        }
        if components.is_empty() {
            return Err(
                "zero-set JSON: components[] required (sign-cell derivation found none)"
                    .to_string(),
            );
        }
    }
    Ok(ZeroSetSpec { curves, components })
}

fn infer_parameter_name(
    param: &BTreeMap<String, Expr>,
    vars: &[String],
) -> Result<String, String> {
    let mut names = std::collections::BTreeSet::new();
    for e in param.values() {
        for v in e.free_variables() {
            names.insert(v);
        }
    }
    names.retain(|n| !vars.contains(n));
    match names.len() {
        0 => Ok("s".to_string()),
        1 => Ok(names.into_iter().next().unwrap()),
        _ => Err("zero-set JSON: parametric curve uses several parameters".to_string()),
    }
}

/// Derives an implicit form from a parameterization where one coordinate
/// is the bare parameter (x = s gives y - param_y(x) for the others).
fn implicit_from_parametric(
    svar: &str,
    param: &BTreeMap<String, Expr>,
    vars: &[String],
) -> Option<Expr> {
    let pivot = vars
        .iter()
        .find(|v| matches!(param.get(*v), Some(Expr::Var(name)) if name == svar))?;
    let mut bindings = BTreeMap::new();
    bindings.insert(svar.to_string(), Expr::var(pivot.clone()));
    // combine the remaining defining equations into one product (= 0 where
    // any factor vanishes is wrong for a curve, so only single-equation
    // cases are derived: two variables)
    let others: Vec<&String> = vars.iter().filter(|v| v != &pivot).collect();
    if others.len() != 1 {
        return None;
    }
    let other = others[0];
    let rhs = param.get(other)?.substitute(&bindings);
    Some(Expr::sub(Expr::var(other.clone()), rhs))
}

fn parse_rat_array(v: &serde_json::Value) -> Result<Vec<Rat>, String> {
    let arr = v.as_array().ok_or("expected an array of rationals")?;
    arr.iter()
        .map(|x| match x {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Rat::from_integer(i.into()))
                } else {
                    Err(format!("non-integer number {n} (use \"p/q\" strings)"))
                }
            }
            serde_json::Value::String(s) => crate::rat::parse_rat(s),
            other => Err(format!("bad rational entry {other}")),
        })
        .collect()
}

fn parse_sign_condition(text: &str) -> Result<SignCondition, String> {
    let (lhs, positive) = if let Some((l, r)) = text.split_once('>') {
        if r.trim() != "0" {
            return Err(format!("sign condition must compare with 0: {text:?}"));
        }
        (l, true)
    } else if let Some((l, r)) = text.split_once('<') {
        if r.trim() != "0" {
            return Err(format!("sign condition must compare with 0: {text:?}"));
        }
        (l, false)
    } else {
        return Err(format!("sign condition needs > or <: {text:?}"));
    };
    let expr = crate::expr::parse(lhs).map_err(|e| e.to_string())?;
    Ok(SignCondition { expr, positive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::problem::Point;
    use crate::rat::rat_int;

    fn problem(num: &str, den: &str, vars: &[&str]) -> LimitProblem {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        LimitProblem::new(
            parse(num).unwrap(),
            parse(den).unwrap(),
            vars.clone(),
            Point::origin(&vars),
        )
        .unwrap()
    }

    fn vars2() -> Vec<String> {
        vec!["x".to_string(), "y".to_string()]
    }

    #[test]
    fn transversality_line_and_paraboloid() {
        // C: y = x parameterized (s, s); v = (1, 0) crosses it
        let mut param = BTreeMap::new();
        param.insert("x".to_string(), parse("s").unwrap());
        param.insert("y".to_string(), parse("s").unwrap());
        let curves = vec![CurveSpec::Parametric {
            svar: "s".to_string(),
            param,
        }];
        let ok = check_transversality(&curves, &vars2(), &[rat_int(1), rat_int(0)]).unwrap();
        assert!(ok.transversal);
        let tangent = check_transversality(&curves, &vars2(), &[rat_int(1), rat_int(1)]).unwrap();
        assert!(!tangent.transversal);

        let vars3: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
        let parab = vec![CurveSpec::Implicit(parse("z - x^2 - y^2").unwrap())];
        let up = check_transversality(&parab, &vars3, &[rat_int(0), rat_int(0), rat_int(1)])
            .unwrap();
        assert!(up.transversal);
    }

    #[test]
    fn sign_components_of_the_diagonal() {
        let comps = sign_vector_components(
            &[parse("x - y").unwrap()],
            &vars2(),
            &default_radius(),
            512,
        );
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| !c.seeds.is_empty()));
    }

    #[test]
    fn falsification_finds_axis_zero() {
        // D_v g = -sin(x) vanishes on the y axis, which crosses the north
        // component {y > |x|} but not the east component {x > |y|}
        let dvg = parse("0 - sin(x)").unwrap();
        let comps = sign_vector_components(
            &[parse("x - y").unwrap(), parse("x + y").unwrap()],
            &vars2(),
            &default_radius(),
            2048,
        );
        let east = comps.iter().find(|c| c.id == "++").unwrap();
        let north = comps.iter().find(|c| c.id == "-+").unwrap();
        match falsify_nonvanishing(&dvg, east, &vars2(), &default_radius(), 2048).unwrap() {
            FalsifyOutcome::NotFalsified { .. } => {}
            other => panic!("east should not falsify: {other:?}"),
        }
        match falsify_nonvanishing(&dvg, north, &vars2(), &default_radius(), 2048).unwrap() {
            FalsifyOutcome::Counterexample { point, exact } => {
                assert!(exact, "expected an exact counterexample on the y axis");
                assert!(point[0].is_zero());
            }
            other => panic!("north should falsify: {other:?}"),
        }
    }

    #[test]
    fn interval_proves_cosine_nonvanishing() {
        let dvg = parse("cos(x)").unwrap();
        let comps =
            sign_vector_components(&[parse("x - y").unwrap()], &vars2(), &default_radius(), 512);
        match falsify_nonvanishing(&dvg, &comps[0], &vars2(), &default_radius(), 512).unwrap() {
            FalsifyOutcome::NotFalsified { proved, .. } => assert!(proved),
            other => panic!("expected interval proof: {other:?}"),
        }
    }

    #[test]
    fn detect_sin_difference() {
        let spec = detect_zero_set(&parse("sin(x) - sin(y)").unwrap(), &vars2()).unwrap();
        assert_eq!(spec.curves.len(), 1);
        assert_eq!(spec.components.len(), 2);
        let spec2 = detect_zero_set(&parse("cos(x) - cos(y)").unwrap(), &vars2()).unwrap();
        assert_eq!(spec2.curves.len(), 2);
        assert_eq!(spec2.components.len(), 4);
        assert!(detect_zero_set(&parse("x^2 + y^2").unwrap(), &vars2()).is_none());
    }

    #[test]
    fn example_sine_quotient_resolves_to_one() {
        let pr = problem("x - y", "sin(x) - sin(y)", &["x", "y"]);
        let spec = detect_zero_set(&pr.denominator, &pr.variables).unwrap();
        let (verdict, cert) = resolve_nonisolated(&pr, &spec, &Options::default());
        assert_eq!(verdict, Verdict::Exists(rat_int(1)), "{}", cert.render_text());
        assert!(cert.has_proved_exact());
    }

    #[test]
    fn example_three_variable_tangent_quotient() {
        let pr = problem(
            "sin(z) - sin(x^2 + y^2)",
            "tan(z - x^2) - tan(y^2)",
            &["x", "y", "z"],
        );
        let spec = detect_zero_set(&pr.denominator, &pr.variables).unwrap();
        let (verdict, cert) = resolve_nonisolated(&pr, &spec, &Options::default());
        assert_eq!(verdict, Verdict::Exists(rat_int(1)), "{}", cert.render_text());
    }

    #[test]
    fn example_cosine_components_give_minus_two() {
        let pr = problem("x^2 - y^2", "cos(x) - cos(y)", &["x", "y"]);
        let spec = detect_zero_set(&pr.denominator, &pr.variables).unwrap();
        let (verdict, cert) = resolve_nonisolated(&pr, &spec, &Options::default());
        assert_eq!(
            verdict,
            Verdict::Exists(rat_int(-2)),
            "{}",
            cert.render_text()
        );
    }

    #[test]
    fn containment_falsification_blocks_bogus_zero_set() {
        // f = x does not vanish on y = x
        let pr = problem("x", "sin(x) - sin(y)", &["x", "y"]);
        let spec = detect_zero_set(&pr.denominator, &pr.variables).unwrap();
        let (verdict, _) = resolve_nonisolated(&pr, &spec, &Options::default());
        assert!(matches!(verdict, Verdict::Inconclusive(_)));
    }

    #[test]
    fn scale_invariance_of_the_certified_quotient() {
        let vars = vars2();
        let f = parse("x - y").unwrap();
        let g = parse("sin(x) - sin(y)").unwrap();
        let v1 = [rat_int(1), rat_int(0)];
        let v3 = [rat_int(3), rat_int(0)];
        let q1 = Expr::div(
            directional_derivative(&f, &vars, &v1).unwrap(),
            directional_derivative(&g, &vars, &v1).unwrap(),
        );
        let q3 = Expr::div(
            directional_derivative(&f, &vars, &v3).unwrap(),
            directional_derivative(&g, &vars, &v3).unwrap(),
        );
        assert_eq!(q1, q3);
    }
}
