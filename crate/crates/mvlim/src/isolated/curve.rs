//! Step 4: the curve probe. Setting u_i = m_i t defines a family of curves
//! through the point; restricted limits that depend on m (or disagree with
//! the axis baseline) disprove existence. The system is solved
//! triangularly: each equation introduces one new variable as a rational
//! power of t, with branch enumeration for even roots. Overdetermined
//! systems drop members that block solvability.

use super::decompose::SquareDecomposition;
use crate::calculus::series::{expand_adaptive, rescale_exponents, PuiseuxSeries, SeriesError};
use crate::calculus::{univariate_limit, UniVerdict};
use crate::expr::{as_polynomial, Expr, Monomial};
use crate::problem::{ApproachValue, WitnessPath};
use crate::rat::{is_integer, lcm_of_denominators, rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Default)]
pub struct CurveOverrides {
    /// 0-based indices into the decomposition's u list to leave out.
    pub drop: Vec<usize>,
    /// Fixed m values for the kept u (in original u order).
    pub m: Option<Vec<Rat>>,
}

#[derive(Debug, Clone)]
pub struct SolveStep {
    pub u_index: usize,
    pub variable: String,
    pub root_degree: u32,
}

#[derive(Debug, Clone)]
struct SolvedSystem {
    steps: Vec<SolveStep>,
    parameterization: BTreeMap<String, Expr>,
    /// variables introduced through even roots (sign branches)
    even_root_vars: Vec<String>,
    /// variables not pinned by any equation, set to 0
    zero_vars: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ProbeInstance {
    pub m_values: Vec<(usize, Rat)>,
    pub branch_signs: Vec<(String, i8)>,
    /// parameterization in t with the fractional exponents cleared
    /// (t -> t^L for L the lcm of exponent denominators)
    pub path: BTreeMap<String, Expr>,
    pub raw_path: BTreeMap<String, Expr>,
    pub value: UniVerdict,
    pub numerator_lead: String,
    pub denominator_lead: String,
}

#[derive(Debug, Clone)]
pub struct CurveProbeData {
    pub kept: Vec<usize>,
    pub dropped: Vec<usize>,
    pub m_names: Vec<String>,
    pub parameterization: BTreeMap<String, Expr>,
    pub branch_conditions: Vec<String>,
    pub instances: Vec<ProbeInstance>,
    /// Symbolic restricted limit as a function of m, when the substituted
    /// leading coefficients are generalized monomials in m.
    pub ratio_of_m: Option<Expr>,
}

#[derive(Debug, Clone)]
pub enum CurveProbeOutcome {
    DoesNotExist {
        witnesses: Vec<WitnessPath>,
        detail: String,
    },
    /// Every probed curve gives restricted limit 0; move to Step 5.
    AllZero,
    Skipped(String),
}

fn positive_context(m_names: &[String]) -> BTreeSet<String> {
    let mut set: BTreeSet<String> = m_names.iter().cloned().collect();
    set.insert("t".to_string());
    set
}

/// Splits `e` as coeff(x-free) * x^k + rest(x-free); the x-monomials must
/// share one integer exponent k >= 1.
fn linear_in_power(e: &Expr, x: &str) -> Option<(u32, Expr, Expr)> {
    let terms = match e {
        Expr::Add(ts) => ts.clone(),
        other => vec![other.clone()],
    };
    let mut k: Option<Rat> = None;
    let mut coeff_terms = Vec::new();
    let mut free_terms = Vec::new();
    for term in terms {
        let (exp, cofactor) = extract_power(&term, x)?;
        if exp.is_zero() {
            free_terms.push(term);
        } else {
            match &k {
                None => k = Some(exp),
                Some(prev) if *prev == exp => {}
                _ => return None,
            }
            coeff_terms.push(cofactor);
        }
    }
    let k = k?;
    if !is_integer(&k) || !k.is_positive() {
        return None;
    }
    let k = k.numer().to_u32().filter(|&v| v >= 1 && v <= 16)?;
    Some((k, Expr::add(coeff_terms), Expr::add(free_terms)))
}

/// (exponent of x, cofactor) for a multiplicative term; None when x occurs
/// in a non-monomial position.
fn extract_power(term: &Expr, x: &str) -> Option<(Rat, Expr)> {
    let factors = match term {
        Expr::Mul(fs) => fs.clone(),
        other => vec![other.clone()],
    };
    let mut exp = Rat::zero();
    let mut cofactor = Vec::new();
    for f in factors {
        let (base, e) = f.as_power();
        match base {
            Expr::Var(v) if v == x => exp += e,
            _ => {
                if f.free_variables().contains(x) {
                    return None;
                }
                cofactor.push(f);
            }
        }
    }
    Some((exp, Expr::mul(cofactor)))
}

/// Triangular solve of u_i = m_i t over the kept members. `m_exprs` pairs
/// each kept index with the expression standing for m_i (a symbol or a
/// numeric value); `signs` assigns branch signs to even-root variables in
/// solve order.
fn solve_triangular(
    kept: &[(usize, Expr)],
    vars: &[String],
    m_exprs: &BTreeMap<usize, Expr>,
    signs: &[i8],
    positive: &BTreeSet<String>,
) -> Option<SolvedSystem> {
    let mut solved: BTreeMap<String, Expr> = BTreeMap::new();
    let mut remaining: Vec<(usize, Expr)> = kept.to_vec();
    let mut steps = Vec::new();
    let mut even_root_vars = Vec::new();
    let mut sign_iter = signs.iter();
    let all_vars: BTreeSet<String> = vars.iter().cloned().collect();
    while !remaining.is_empty() {
        let mut progressed = false;
        for pos in 0..remaining.len() {
            let (u_index, u_expr) = remaining[pos].clone();
            let u_sub = u_expr.substitute(&solved).canonicalize_assuming(positive);
            let unsolved: Vec<String> = u_sub
                .free_variables()
                .into_iter()
                .filter(|v| all_vars.contains(v) && !solved.contains_key(v))
                .collect();
            if unsolved.len() != 1 {
                continue;
            }
            let x = unsolved[0].clone();
            let (k, coeff, free) = match linear_in_power(&u_sub, &x) {
                Some(found) => found,
                None => continue,
            };
            if coeff.is_zero() {
                continue;
            }
            let m_t = Expr::mul(vec![
                m_exprs.get(&u_index)?.clone(),
                Expr::var("t"),
            ]);
            let rhs = Expr::div(Expr::sub(m_t, free), coeff);
            let mut root = Expr::pow(rhs, Rat::new(BigInt::one(), BigInt::from(k)))
                .canonicalize_assuming(positive);
            if k % 2 == 0 {
                let sign = sign_iter.next().copied().unwrap_or(1);
                if sign < 0 {
                    root = Expr::neg(root);
                }
                even_root_vars.push(x.clone());
            }
            solved.insert(x.clone(), root);
            steps.push(SolveStep {
                u_index,
                variable: x,
                root_degree: k,
            });
            remaining.remove(pos);
            progressed = true;
            break;
        }
        if !progressed {
            return None;
        }
    }
    let zero_vars: Vec<String> = vars
        .iter()
        .filter(|v| !solved.contains_key(*v))
        .cloned()
        .collect();
    for v in &zero_vars {
        solved.insert(v.clone(), Expr::zero());
    }
    // resolve chained references (x appearing inside y's expression)
    let mut parameterization = BTreeMap::new();
    for v in vars {
        let mut e = solved.get(v).cloned().unwrap_or_else(Expr::zero);
        for _ in 0..vars.len() {
            let next = e.substitute(&solved).canonicalize_assuming(positive);
            if next == e {
                break;
            }
            e = next;
        }
        parameterization.insert(v.clone(), e);
    }
    Some(SolvedSystem {
        steps,
        parameterization,
        even_root_vars,
        zero_vars,
    })
}

fn collect_exponent_denominators(e: &Expr, acc: &mut Vec<Rat>) {
    match e {
        Expr::Pow(b, r) => {
            if matches!(**b, Expr::Var(ref v) if v == "t") {
                acc.push(r.clone());
            }
            collect_exponent_denominators(b, acc);
        }
        Expr::Add(es) | Expr::Mul(es) => {
            for x in es {
                collect_exponent_denominators(x, acc);
            }
        }
        Expr::Neg(x) | Expr::Func(_, x) => collect_exponent_denominators(x, acc),
        _ => {}
    }
}

/// Substitutes t -> t^L to clear fractional exponents for presentation.
fn rescale_path(
    raw: &BTreeMap<String, Expr>,
    num_series: &PuiseuxSeries,
    den_series: &PuiseuxSeries,
    positive: &BTreeSet<String>,
) -> (BTreeMap<String, Expr>, BigInt, String, String) {
    let mut exps: Vec<Rat> = Vec::new();
    for e in raw.values() {
        collect_exponent_denominators(e, &mut exps);
    }
    for (e, _) in num_series.terms().iter().chain(den_series.terms()) {
        exps.push(e.clone());
    }
    let l = lcm_of_denominators(exps.iter());
    let mut bindings = BTreeMap::new();
    bindings.insert(
        "t".to_string(),
        Expr::pow(Expr::var("t"), Rat::from_integer(l.clone())),
    );
    let path: BTreeMap<String, Expr> = raw
        .iter()
        .map(|(v, e)| {
            (
                v.clone(),
                e.substitute(&bindings).canonicalize_assuming(positive),
            )
        })
        .collect();
    let nl = lead_string(&rescale_exponents(num_series, &l));
    let dl = lead_string(&rescale_exponents(den_series, &l));
    (path, l, nl, dl)
}

fn lead_string(s: &PuiseuxSeries) -> String {
    match s.leading() {
        Some((e, c)) => {
            if is_integer(e) {
                format!("{}*t^{}", c, e.numer())
            } else {
                format!("{}*t^({}/{})", c, e.numer(), e.denom())
            }
        }
        None => "0".to_string(),
    }
}

/// Exact soundness check: substituting the parameterization into each kept
/// u_i must reproduce exactly the series m_i t.
pub fn verify_instance(
    dec: &SquareDecomposition,
    kept: &[usize],
    m_values: &[(usize, Rat)],
    raw_path: &BTreeMap<String, Expr>,
) -> bool {
    let positive: BTreeSet<String> = ["t".to_string()].into_iter().collect();
    for &i in kept {
        let u = &dec.u[i].expr;
        let m = match m_values.iter().find(|(j, _)| *j == i) {
            Some((_, m)) => m.clone(),
            None => return false,
        };
        let substituted = u.substitute(raw_path).canonicalize_assuming(&positive);
        match expand_adaptive(&substituted, "t", &rat_int(4)) {
            Ok(series) => {
                if series.terms() != [(Rat::one(), m)] {
                    return false;
                }
            }
            Err(_) => return false,
        }
    }
    true
}

/// Tries to read an expression as coeff * prod m_i^(a_i) * t^e.
fn monomial_in_t_and_m(e: &Expr) -> Option<(Rat, BTreeMap<String, Rat>, Rat)> {
    let factors = match e {
        Expr::Mul(fs) => fs.clone(),
        other => vec![other.clone()],
    };
    let mut coeff = Rat::one();
    let mut m_exps: BTreeMap<String, Rat> = BTreeMap::new();
    let mut t_exp = Rat::zero();
    for f in factors {
        match &f {
            Expr::Const(c) => coeff *= c.clone(),
            _ => {
                let (base, exp) = f.as_power();
                match base {
                    Expr::Var(v) if v == "t" => t_exp += exp,
                    Expr::Var(v) => {
                        let entry = m_exps.entry(v.clone()).or_insert_with(Rat::zero);
                        *entry += exp;
                    }
                    _ => return None,
                }
            }
        }
    }
    Some((coeff, m_exps, t_exp))
}

/// Symbolic leading-coefficient ratio as a function of m, for pure
/// monomial parameterizations of polynomial data.
fn symbolic_ratio(
    num_ms: &[Monomial],
    den_ms: &[Monomial],
    param: &BTreeMap<String, Expr>,
) -> Option<Expr> {
    let mut var_data: BTreeMap<String, (Rat, BTreeMap<String, Rat>, Rat)> = BTreeMap::new();
    for (v, e) in param {
        var_data.insert(v.clone(), monomial_in_t_and_m(e)?);
    }
    let project = |ms: &[Monomial]| -> Option<Vec<Monomial>> {
        // substitute, group by t-exponent, return the minimal-exponent group
        let mut groups: BTreeMap<Rat, Vec<Monomial>> = BTreeMap::new();
        for m in ms {
            let mut coeff = m.coeff.clone();
            let mut t_exp = Rat::zero();
            let mut m_exps: BTreeMap<String, Rat> = BTreeMap::new();
            for (v, e) in &m.exps {
                let (c, mm, te) = var_data.get(v)?;
                coeff *= crate::rat::rat_pow_exact(c, e)?;
                t_exp += te.clone() * e.clone();
                for (mv, me) in mm {
                    let entry = m_exps.entry(mv.clone()).or_insert_with(Rat::zero);
                    *entry += me.clone() * e.clone();
                }
            }
            m_exps.retain(|_, e| !e.is_zero());
            groups
                .entry(t_exp)
                .or_default()
                .push(Monomial { coeff, exps: m_exps });
        }
        // drop exponent groups whose coefficients cancel identically
        for (_, group) in groups.iter_mut() {
            *group = collect_monomials(group);
        }
        groups
            .into_iter()
            .find(|(_, g)| !g.is_empty())
            .map(|(_, g)| g)
    };
    let num_lead = project(num_ms)?;
    let den_lead = project(den_ms)?;
    Some(Expr::div(
        crate::expr::polynomial_to_expr(&num_lead),
        crate::expr::polynomial_to_expr(&den_lead),
    ))
}

fn collect_monomials(ms: &[Monomial]) -> Vec<Monomial> {
    let mut map: BTreeMap<BTreeMap<String, Rat>, Rat> = BTreeMap::new();
    for m in ms {
        let entry = map.entry(m.exps.clone()).or_insert_with(Rat::zero);
        *entry += m.coeff.clone();
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(exps, coeff)| Monomial { coeff, exps })
        .collect()
}

/// The probe itself. `baseline` is an axis path with restricted limit 0
/// (after the Step-1 shift), used as the contrast witness.
pub fn curve_probe(
    num: &Expr,
    den: &Expr,
    vars: &[String],
    dec: &SquareDecomposition,
    baseline: Option<&WitnessPath>,
    overrides: &CurveOverrides,
) -> (CurveProbeOutcome, Option<CurveProbeData>) {
    let total = dec.u.len();
    for &d in &overrides.drop {
        if d >= total {
            return (
                CurveProbeOutcome::Skipped(format!("drop index u{} out of range", d + 1)),
                None,
            );
        }
    }
    // choose the drop set: overrides first, otherwise none, then minimal
    // auto-drops when the full system is not triangular
    let drop_sets: Vec<Vec<usize>> = if !overrides.drop.is_empty() {
        vec![overrides.drop.clone()]
    } else {
        let mut sets = vec![vec![]];
        for i in 0..total {
            sets.push(vec![i]);
        }
        for i in 0..total {
            for j in (i + 1)..total {
                sets.push(vec![i, j]);
            }
        }
        sets
    };
    let mut chosen: Option<(Vec<usize>, Vec<(usize, Expr)>, SolvedSystem, Vec<String>)> = None;
    for drops in drop_sets {
        let kept: Vec<(usize, Expr)> = (0..total)
            .filter(|i| !drops.contains(i))
            .map(|i| (i, dec.u[i].expr.clone()))
            .collect();
        if kept.len() < 1 {
            continue;
        }
        let m_names: Vec<String> = kept.iter().map(|(i, _)| format!("m{}", i + 1)).collect();
        let m_exprs: BTreeMap<usize, Expr> = kept
            .iter()
            .map(|(i, _)| (*i, Expr::var(format!("m{}", i + 1))))
            .collect();
        let positive = positive_context(&m_names);
        if let Some(sys) = solve_triangular(&kept, vars, &m_exprs, &[], &positive) {
            chosen = Some((drops, kept, sys, m_names));
            break;
        }
    }
    let (dropped, kept, symbolic, m_names) = match chosen {
        Some(c) => c,
        None => {
            return (
                CurveProbeOutcome::Skipped(
                    "system u_i = m_i t is not triangularly solvable".to_string(),
                ),
                None,
            )
        }
    };
    let kept_indices: Vec<usize> = kept.iter().map(|(i, _)| *i).collect();
    let root_degrees: Vec<(usize, u32)> = symbolic
        .steps
        .iter()
        .map(|s| (s.u_index, s.root_degree))
        .collect();
    let mut branch_conditions = vec!["t > 0".to_string()];
    for name in &m_names {
        branch_conditions.push(format!("{name} > 0"));
    }
    for v in &symbolic.even_root_vars {
        branch_conditions.push(format!("{v}: both sign branches enumerated (even root)"));
    }
    for v in &symbolic.zero_vars {
        branch_conditions.push(format!("{v} = 0 (not constrained by the kept u)"));
    }

    // m probe vectors over the kept indices
    let m_vectors: Vec<Vec<(usize, Rat)>> = match &overrides.m {
        Some(values) => {
            if values.len() != kept_indices.len() {
                return (
                    CurveProbeOutcome::Skipped(format!(
                        "m override has {} entries for {} kept squares",
                        values.len(),
                        kept_indices.len()
                    )),
                    None,
                );
            }
            vec![kept_indices
                .iter()
                .cloned()
                .zip(values.iter().cloned())
                .collect()]
        }
        None => {
            let ones: Vec<(usize, Rat)> = kept_indices
                .iter()
                .map(|&i| (i, Rat::one()))
                .collect();
            let ramp: Vec<(usize, Rat)> = kept_indices
                .iter()
                .enumerate()
                .map(|(pos, &i)| (i, Rat::from_integer(((pos + 1) as i64).into())))
                .collect();
            vec![ones, ramp]
        }
    };

    let n_even = symbolic.even_root_vars.len().min(3);
    let sign_vectors: Vec<Vec<i8>> = (0..(1usize << n_even))
        .map(|mask| {
            (0..n_even)
                .map(|b| if mask & (1 << b) == 0 { 1i8 } else { -1i8 })
                .collect()
        })
        .collect();

    let mut instances: Vec<ProbeInstance> = Vec::new();
    let mut skip_notes: Vec<String> = Vec::new();
    let escalation: BigInt = root_degrees
        .iter()
        .fold(BigInt::one(), |acc, (_, k)| acc * BigInt::from(*k));
    for m_vec in &m_vectors {
        let mut attempts = vec![m_vec.clone()];
        if escalation > BigInt::one() && escalation <= BigInt::from(64) {
            // fallback with every m a perfect power, so all roots stay rational
            let p = escalation.to_u32().unwrap_or(1);
            let powered: Vec<(usize, Rat)> = m_vec
                .iter()
                .map(|(i, m)| {
                    (
                        *i,
                        crate::rat::rat_pow_int(m, &BigInt::from(p)).unwrap_or_else(Rat::one),
                    )
                })
                .collect();
            if powered != *m_vec {
                attempts.push(powered);
            }
        }
        let mut succeeded = false;
        for attempt in attempts {
            if succeeded {
                break;
            }
            let mut attempt_worked = true;
            let mut attempt_instances = Vec::new();
            for signs in &sign_vectors {
                let m_exprs: BTreeMap<usize, Expr> = attempt
                    .iter()
                    .map(|(i, m)| (*i, Expr::constant(m.clone())))
                    .collect();
                let positive = positive_context(&[]);
                let sys = match solve_triangular(&kept, vars, &m_exprs, signs, &positive) {
                    Some(s) => s,
                    None => {
                        attempt_worked = false;
                        skip_notes.push("instance solve failed".to_string());
                        break;
                    }
                };
                let raw_path = sys.parameterization.clone();
                let num_sub = num.substitute(&raw_path).canonicalize_assuming(&positive);
                let den_sub = den.substitute(&raw_path).canonicalize_assuming(&positive);
                match univariate_limit(&num_sub, &den_sub, "t") {
                    Ok(lim) => {
                        if !verify_instance(dec, &kept_indices, &attempt, &raw_path) {
                            skip_notes.push(format!(
                                "substitution check u_i = m_i t failed for m = {:?}",
                                attempt.iter().map(|(_, m)| m.to_string()).collect::<Vec<_>>()
                            ));
                            continue;
                        }
                        let (path, _l, nl, dl) = rescale_path(
                            &raw_path,
                            &lim.numerator_series,
                            &lim.denominator_series,
                            &positive,
                        );
                        attempt_instances.push(ProbeInstance {
                            m_values: attempt.clone(),
                            branch_signs: symbolic
                                .even_root_vars
                                .iter()
                                .cloned()
                                .zip(signs.iter().cloned())
                                .collect(),
                            path,
                            raw_path,
                            value: lim.verdict,
                            numerator_lead: nl,
                            denominator_lead: dl,
                        });
                    }
                    Err(SeriesError::IrrationalCoefficient(_)) => {
                        attempt_worked = false;
                        break;
                    }
                    Err(err) => {
                        skip_notes.push(format!("series expansion failed: {err}"));
                    }
                }
            }
            if attempt_worked && !attempt_instances.is_empty() {
                instances.extend(attempt_instances);
                succeeded = true;
            }
        }
    }

    // symbolic ratio for the certificate (monomial parameterizations only)
    let ratio_of_m = match (as_polynomial(num), as_polynomial(den)) {
        (Some(nm), Some(dm)) => symbolic_ratio(&nm, &dm, &symbolic.parameterization),
        _ => None,
    };
    let data = CurveProbeData {
        kept: kept_indices,
        dropped,
        m_names,
        parameterization: symbolic.parameterization.clone(),
        branch_conditions,
        instances: instances.clone(),
        ratio_of_m,
    };
    if instances.is_empty() {
        let note = if skip_notes.is_empty() {
            "no probe instance could be evaluated".to_string()
        } else {
            skip_notes.join("; ")
        };
        return (CurveProbeOutcome::Skipped(note), Some(data));
    }

    // aggregate: unbounded or a nonzero/mismatched value disproves the limit
    let witness_of = |inst: &ProbeInstance| -> WitnessPath {
        let approach = match &inst.value {
            UniVerdict::Value(v) => ApproachValue::Value(v.clone()),
            UniVerdict::Unbounded { positive } => ApproachValue::Unbounded {
                positive: *positive,
            },
        };
        let m_str = inst
            .m_values
            .iter()
            .map(|(i, m)| format!("m{}={}", i + 1, m))
            .collect::<Vec<_>>()
            .join(",");
        WitnessPath {
            label: format!("curve probe ({m_str})"),
            parameterization: inst.path.clone(),
            approach,
        }
    };
    if let Some(unb) = instances
        .iter()
        .find(|i| matches!(i.value, UniVerdict::Unbounded { .. }))
    {
        let mut witnesses = vec![witness_of(unb)];
        if let Some(b) = baseline {
            witnesses.push(b.clone());
        } else if let Some(fin) = instances
            .iter()
            .find(|i| matches!(i.value, UniVerdict::Value(_)))
        {
            witnesses.push(witness_of(fin));
        }
        return (
            CurveProbeOutcome::DoesNotExist {
                witnesses,
                detail: "restricted limit along a probed curve is unbounded".to_string(),
            },
            Some(data),
        );
    }
    // all instances finite; look for the best-separated pair among the
    // instances plus the axis baseline
    let mut candidates: Vec<(Rat, WitnessPath, String)> = instances
        .iter()
        .map(|i| {
            let v = i.value.value().cloned().unwrap_or_else(Rat::zero);
            (
                v.clone(),
                witness_of(i),
                format!("leading terms {} / {}", i.numerator_lead, i.denominator_lead),
            )
        })
        .collect();
    if let Some(b) = baseline {
        candidates.push((Rat::zero(), b.clone(), "axis restriction".to_string()));
    }
    let mut best: Option<(Rat, usize, usize)> = None;
    for i in 0..candidates.len() {
        for j in (i + 1)..candidates.len() {
            let gap = (candidates[i].0.clone() - candidates[j].0.clone()).abs();
            if best.as_ref().map(|(g, _, _)| gap > *g).unwrap_or(true) {
                best = Some((gap, i, j));
            }
        }
    }
    if let Some((gap, i, j)) = best {
        if !gap.is_zero() {
            let detail = format!(
                "restricted limits differ: {} vs {} ({}; {})",
                candidates[i].0, candidates[j].0, candidates[i].2, candidates[j].2
            );
            return (
                CurveProbeOutcome::DoesNotExist {
                    witnesses: vec![candidates[i].1.clone(), candidates[j].1.clone()],
                    detail,
                },
                Some(data),
            );
        }
    }
    let all_zero = instances
        .iter()
        .all(|i| i.value == UniVerdict::Value(Rat::zero()));
    if all_zero {
        (CurveProbeOutcome::AllZero, Some(data))
    } else {
        (
            CurveProbeOutcome::Skipped(
                "restricted limit is a nonzero constant across probes with no baseline to contrast"
                    .to_string(),
            ),
            Some(data),
        )
    }
}
