//! Symbolic differentiation, substitution, series expansion, and the
//! single-variable limit machinery shared by both resolvers.
//!
//! Everything here is a pure function over immutable values.

pub mod limits;
pub mod series;

pub use limits::{univariate_limit, univariate_limit_two_sided, UniLimit, UniVerdict};
pub use series::{
    default_order, expand_adaptive, puiseux_expand, rescale_exponents, PuiseuxSeries, SeriesError,
};

use crate::expr::{as_polynomial, Expr, Func, Monomial};
use crate::rat::{rat_int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Exact symbolic partial derivative, in canonical form.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    match e {
        Expr::Const(_) => Expr::zero(),
        Expr::Var(v) => {
            if v == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Expr::Add(ts) => Expr::add(ts.iter().map(|t| differentiate(t, var)).collect()),
        Expr::Mul(fs) => {
            let mut terms = Vec::with_capacity(fs.len());
            for (i, fi) in fs.iter().enumerate() {
                let d = differentiate(fi, var);
                if d.is_zero() {
                    continue;
                }
                let mut factors = vec![d];
                for (j, fj) in fs.iter().enumerate() {
                    if i != j {
                        factors.push(fj.clone());
                    }
                }
                terms.push(Expr::mul(factors));
            }
            Expr::add(terms)
        }
        Expr::Pow(b, r) => {
            let db = differentiate(b, var);
            if db.is_zero() {
                return Expr::zero();
            }
            // d/dx u^r = r u^(r-1) u'; for even root denominators this is
            // the derivative on the u > 0 branch
            Expr::mul(vec![
                Expr::constant(r.clone()),
                Expr::pow((**b).clone(), r.clone() - Rat::one()),
                db,
            ])
        }
        Expr::Neg(inner) => Expr::neg(differentiate(inner, var)),
        Expr::Func(f, a) => {
            let da = differentiate(a, var);
            if da.is_zero() {
                return Expr::zero();
            }
            let outer = match f {
                Func::Sin => Expr::func(Func::Cos, (**a).clone()),
                Func::Cos => Expr::neg(Expr::func(Func::Sin, (**a).clone())),
                Func::Tan => Expr::pow(Expr::func(Func::Sec, (**a).clone()), rat_int(2)),
                Func::Sec => Expr::mul(vec![
                    Expr::func(Func::Sec, (**a).clone()),
                    Expr::func(Func::Tan, (**a).clone()),
                ]),
                Func::Exp => Expr::func(Func::Exp, (**a).clone()),
                Func::Sqrt => Expr::mul(vec![
                    Expr::constant(crate::rat::rat(1, 2)),
                    Expr::pow(Expr::func(Func::Sqrt, (**a).clone()), rat_int(-1)),
                ]),
                // d|u| = u/|u| * u' away from u = 0
                Func::Abs => Expr::mul(vec![
                    (**a).clone(),
                    Expr::pow(Expr::func(Func::Abs, (**a).clone()), rat_int(-1)),
                ]),
            };
            Expr::mul(vec![outer, da])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("directional derivative requires a nonzero direction vector")]
pub struct ZeroVector;

/// D_v e = sum_j v_j * de/dx_j, canonical. Normalization of v is not
/// required; the quotient D_v f / D_v g is scale invariant.
pub fn directional_derivative(e: &Expr, vars: &[String], v: &[Rat]) -> Result<Expr, ZeroVector> {
    if v.iter().all(|c| c.is_zero()) || v.len() != vars.len() {
        return Err(ZeroVector);
    }
    let mut terms = Vec::new();
    for (var, coeff) in vars.iter().zip(v.iter()) {
        if coeff.is_zero() {
            continue;
        }
        let d = differentiate(e, var);
        if d.is_zero() {
            continue;
        }
        terms.push(Expr::mul(vec![Expr::constant(coeff.clone()), d]));
    }
    Ok(Expr::add(terms))
}

/// Simultaneous substitution (canonicalized); re-exported here as the
/// engine that realizes curve-probe parameterizations.
pub fn substitute(e: &Expr, bindings: &BTreeMap<String, Expr>) -> Expr {
    e.substitute(bindings)
}

/// A leading-term replacement certified by a one-variable reduction:
/// lim original/leading = 1 along u = m(x).
#[derive(Debug, Clone)]
pub struct SeriesApprox {
    pub original: Expr,
    pub leading: Expr,
    /// Always 1 when a SeriesApprox is produced.
    pub equivalence_ratio_limit: Rat,
    /// Human-readable certificate fragment describing the reduction.
    pub justification: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaylorRefusal {
    #[error("expression is not of reducible shape: {0}")]
    NotReducible(String),
    #[error("series expansion failed: {0}")]
    Expansion(String),
}

/// Replaces a composition phi(m(x)) (times an optional monomial) by the
/// lowest-order nonvanishing term of its expansion, certifying
/// lim original/leading = 1 via the univariate reduction u = m(x).
pub fn taylor_leading(e: &Expr, max_order: i64) -> Result<SeriesApprox, TaylorRefusal> {
    if as_polynomial(e).is_some() {
        return Err(TaylorRefusal::NotReducible(
            "already polynomial".to_string(),
        ));
    }
    let mut args = Vec::new();
    collect_func_args(e, &mut args);
    if args.is_empty() {
        return Err(TaylorRefusal::NotReducible("no function nodes".to_string()));
    }
    if args.len() > 1 {
        return Err(TaylorRefusal::NotReducible(
            "multiple distinct inner arguments".to_string(),
        ));
    }
    let inner = args.into_iter().next().unwrap();
    let inner_monomials = as_polynomial(&inner).ok_or_else(|| {
        TaylorRefusal::NotReducible("inner argument is not polynomial".to_string())
    })?;
    if inner_monomials.iter().any(|m| m.exps.is_empty()) {
        return Err(TaylorRefusal::NotReducible(
            "inner argument does not vanish at the origin".to_string(),
        ));
    }
    // a fresh reduction variable
    let taken = e.free_variables();
    let mut u_name = "u".to_string();
    while taken.contains(&u_name) {
        u_name.push('_');
    }
    let reduced = replace_arg(e, &inner, &u_name);
    // split reduced = monomial(x) * F(u)
    let (mono, f_of_u) = split_monomial_and_univariate(&reduced, &u_name)
        .ok_or_else(|| TaylorRefusal::NotReducible("not monomial * F(m(x))".to_string()))?;
    let order = rat_int(max_order.max(4));
    let f_series = expand_adaptive(&f_of_u, &u_name, &order)
        .map_err(|err| TaylorRefusal::Expansion(err.to_string()))?;
    let (k, c) = match f_series.leading() {
        Some((k, c)) => (k.clone(), c.clone()),
        None => {
            return Err(TaylorRefusal::Expansion(
                "no nonvanishing term within the order budget".to_string(),
            ))
        }
    };
    if k.is_zero() || k.is_negative() {
        return Err(TaylorRefusal::NotReducible(
            "composition does not vanish at the origin".to_string(),
        ));
    }
    let lead_of_f = Expr::mul(vec![
        Expr::constant(c.clone()),
        Expr::pow(Expr::var(u_name.clone()), k.clone()),
    ]);
    // certify lim F(u) / (c u^k) = 1 on the sides m(x) actually takes
    let both_sides = !inner_is_nonnegative(&inner_monomials);
    verify_ratio_one(&f_of_u, &lead_of_f, &u_name, both_sides)?;
    // substitute u = m(x) back into the leading form
    let mut back = BTreeMap::new();
    back.insert(u_name.clone(), inner.clone());
    let leading = Expr::mul(vec![mono.clone(), lead_of_f.substitute(&back)]);
    let sides = if both_sides { "both sides" } else { "u -> 0+" };
    let justification = format!(
        "substitution u = {inner}: lim F(u)/({c}*u^{k}) = 1 ({sides}); leading form {leading}"
    );
    Ok(SeriesApprox {
        original: e.clone(),
        leading,
        equivalence_ratio_limit: Rat::one(),
        justification,
    })
}

fn verify_ratio_one(
    f_of_u: &Expr,
    lead: &Expr,
    u: &str,
    both_sides: bool,
) -> Result<(), TaylorRefusal> {
    let check = |num: &Expr, den: &Expr| -> Result<(), TaylorRefusal> {
        let lim = univariate_limit(num, den, u)
            .map_err(|err| TaylorRefusal::Expansion(err.to_string()))?;
        if lim.verdict == UniVerdict::Value(Rat::one()) {
            Ok(())
        } else {
            Err(TaylorRefusal::NotReducible(format!(
                "equivalence ratio is {:?}, not 1",
                lim.verdict
            )))
        }
    };
    check(f_of_u, lead)?;
    if both_sides {
        check(&limits::mirror(f_of_u, u), &limits::mirror(lead, u))?;
    }
    Ok(())
}

fn inner_is_nonnegative(ms: &[Monomial]) -> bool {
    use num_integer::Integer;
    ms.iter().all(|m| {
        !m.coeff.is_negative()
            && m.exps
                .values()
                .all(|e| crate::rat::is_integer(e) && e.numer().is_even())
    })
}

fn collect_func_args(e: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Func(_, a) => {
            if !out.contains(a) {
                out.push((**a).clone());
            }
        }
        Expr::Add(es) | Expr::Mul(es) => {
            for x in es {
                collect_func_args(x, out);
            }
        }
        Expr::Pow(b, _) => collect_func_args(b, out),
        Expr::Neg(x) => collect_func_args(x, out),
        _ => {}
    }
}

fn replace_arg(e: &Expr, target: &Expr, u: &str) -> Expr {
    match e {
        Expr::Func(f, a) => {
            if a.as_ref() == target {
                Expr::func(*f, Expr::var(u))
            } else {
                Expr::func(*f, replace_arg(a, target, u))
            }
        }
        Expr::Add(ts) => Expr::add(ts.iter().map(|t| replace_arg(t, target, u)).collect()),
        Expr::Mul(fs) => Expr::mul(fs.iter().map(|f| replace_arg(f, target, u)).collect()),
        Expr::Pow(b, r) => Expr::pow(replace_arg(b, target, u), r.clone()),
        Expr::Neg(x) => Expr::neg(replace_arg(x, target, u)),
        other => other.clone(),
    }
}

/// Splits `reduced` as monomial-in-x times a univariate expression in u.
fn split_monomial_and_univariate(reduced: &Expr, u: &str) -> Option<(Expr, Expr)> {
    let vars = reduced.free_variables();
    if vars.iter().all(|v| v == u) {
        return Some((Expr::one(), reduced.clone()));
    }
    if let Expr::Mul(fs) = reduced {
        let mut mono_factors = Vec::new();
        let mut u_factors = Vec::new();
        for f in fs {
            let fv = f.free_variables();
            if fv.iter().all(|v| v == u) {
                u_factors.push(f.clone());
            } else if !fv.contains(u) {
                mono_factors.push(f.clone());
            } else {
                return None;
            }
        }
        let mono = Expr::mul(mono_factors);
        let ms = as_polynomial(&mono)?;
        if ms.len() != 1 {
            return None;
        }
        return Some((mono, Expr::mul(u_factors)));
    }
    None
}
