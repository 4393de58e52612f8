//! Step 5: the polar degree bound. With rho^2 = sum u_i^2 for monomial
//! u_i, each numerator monomial x^e factors as prod |u_i|^(c_i) times a
//! factor bounded near the origin whenever sum_i c_i w_i <= e
//! componentwise (w_i the exponent vector of u_i). The largest sum of the
//! c_i is an exact-rational LP; every alpha_j > 2 proves that the
//! numerator is o(rho^2), so the quotient tends to zero.

use super::decompose::{ResidualClass, SquareDecomposition};
use crate::expr::{as_polynomial, Expr, Monomial};
use crate::lp;
use crate::rat::{rat_int, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct TermBound {
    pub term: Monomial,
    /// LP solution: the weight c_i on each square's exponent vector.
    pub c: Vec<Rat>,
    /// alpha_j = sum of the c_i.
    pub alpha: Rat,
    /// e - sum c_i w_i >= 0: exponents of the factor bounded near 0.
    pub leftover: Vec<(String, Rat)>,
}

#[derive(Debug, Clone)]
pub enum ResidualHandling {
    NoResidual,
    /// Residual has nonnegative terms: g >= rho^2 and it is dropped.
    DroppedNonnegative,
    /// |v| = O(rho^alpha) with alpha > 2, so g >= rho^2/2 near the point.
    DegreeBounded { alpha: Rat, bounds: Vec<TermBound> },
}

#[derive(Debug, Clone)]
pub struct PolarBoundCertificate {
    /// Exponent vectors (as monomials) of the squares u_i.
    pub squares: Vec<Monomial>,
    pub term_bounds: Vec<TermBound>,
    pub alpha_min: Rat,
    pub residual: ResidualHandling,
    pub bounded_factors: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum PolarOutcome {
    Zero(PolarBoundCertificate),
    NotApplicable {
        reason: String,
        /// The failing LP optimum, when the rejection is a degree bound.
        alpha: Option<Rat>,
    },
}

fn variables_of(ms: &[Monomial]) -> Vec<String> {
    let mut vars: BTreeSet<String> = BTreeSet::new();
    for m in ms {
        vars.extend(m.exps.keys().cloned());
    }
    vars.into_iter().collect()
}

/// Maximizes sum c_i subject to sum c_i w_i <= e componentwise, c >= 0.
fn term_lp(term: &Monomial, squares: &[Monomial], vars: &[String]) -> Option<(Rat, Vec<Rat>)> {
    let k = squares.len();
    let objective = vec![Rat::from_integer(1.into()); k];
    let mut rows = Vec::with_capacity(vars.len());
    let mut bounds = Vec::with_capacity(vars.len());
    for v in vars {
        let row: Vec<Rat> = squares.iter().map(|w| w.exponent(v)).collect();
        rows.push(row);
        bounds.push(term.exponent(v));
    }
    match lp::maximize(&objective, &rows, &bounds) {
        Ok(sol) => Some((sol.objective, sol.x)),
        Err(_) => None,
    }
}

fn bound_terms(
    terms: &[Monomial],
    squares: &[Monomial],
    vars: &[String],
) -> Result<Vec<TermBound>, (String, Option<Rat>)> {
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let (alpha, c) = term_lp(term, squares, vars).ok_or_else(|| {
            (
                format!("degree LP failed for term {}", crate::expr::monomial_to_expr(term)),
                None,
            )
        })?;
        if alpha <= rat_int(2) {
            return Err((
                format!(
                    "term {}: alpha = {} <= 2",
                    crate::expr::monomial_to_expr(term),
                    alpha
                ),
                Some(alpha),
            ));
        }
        let mut leftover = Vec::new();
        for v in vars {
            let mut used = Rat::zero();
            for (ci, w) in c.iter().zip(squares.iter()) {
                used += ci.clone() * w.exponent(v);
            }
            let left = term.exponent(v) - used;
            if !left.is_zero() {
                leftover.push((v.clone(), left));
            }
        }
        out.push(TermBound {
            term: term.clone(),
            c,
            alpha,
            leftover,
        });
    }
    Ok(out)
}

/// Attempts to prove lim = 0 for `num / (sum u_i^2 + v)` via the polar
/// degree bound. Requires monomial squares and a polynomial numerator.
pub fn polar_degree_bound(num: &Expr, dec: &SquareDecomposition) -> PolarOutcome {
    let squares: Option<Vec<Monomial>> =
        dec.u.iter().map(|u| u.monomial.clone()).collect();
    let squares = match squares {
        Some(s) => s,
        None => {
            return PolarOutcome::NotApplicable {
                reason: "polar bound needs monomial squares".to_string(),
                alpha: None,
            }
        }
    };
    let num_terms = match as_polynomial(num) {
        Some(t) => t,
        None => {
            return PolarOutcome::NotApplicable {
                reason: "numerator is not polynomial".to_string(),
                alpha: None,
            }
        }
    };
    let mut vars = variables_of(&num_terms);
    for s in &squares {
        for v in s.exps.keys() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    vars.sort();
    // numerator terms, taken in absolute value
    let abs_terms: Vec<Monomial> = num_terms
        .iter()
        .map(|m| Monomial {
            coeff: m.coeff.abs(),
            exps: m.exps.clone(),
        })
        .collect();
    let term_bounds = match bound_terms(&abs_terms, &squares, &vars) {
        Ok(b) => b,
        Err((reason, alpha)) => return PolarOutcome::NotApplicable { reason, alpha },
    };
    let residual = if dec.residual.is_zero() {
        ResidualHandling::NoResidual
    } else {
        match dec.residual_class {
            ResidualClass::Nonnegative => ResidualHandling::DroppedNonnegative,
            ResidualClass::Unknown => {
                let res_terms = match &dec.residual_monomials {
                    Some(ms) => ms.clone(),
                    None => {
                        return PolarOutcome::NotApplicable {
                            reason: "residual is not polynomial".to_string(),
                            alpha: None,
                        }
                    }
                };
                let abs_res: Vec<Monomial> = res_terms
                    .iter()
                    .map(|m| Monomial {
                        coeff: m.coeff.abs(),
                        exps: m.exps.clone(),
                    })
                    .collect();
                match bound_terms(&abs_res, &squares, &vars) {
                    Ok(bounds) => {
                        let alpha = bounds
                            .iter()
                            .map(|b| b.alpha.clone())
                            .min()
                            .unwrap_or_else(|| rat_int(3));
                        ResidualHandling::DegreeBounded { alpha, bounds }
                    }
                    Err((reason, alpha)) => {
                        return PolarOutcome::NotApplicable {
                            reason: format!("residual not dominated: {reason}"),
                            alpha,
                        }
                    }
                }
            }
        }
    };
    let alpha_min = term_bounds
        .iter()
        .map(|b| b.alpha.clone())
        .min()
        .unwrap_or_else(|| rat_int(3));
    let mut bounded_factors = vec![format!(
        "|u_i|/rho <= 1 for the {} squares (rho^2 = sum u_i^2)",
        squares.len()
    )];
    for b in &term_bounds {
        if !b.leftover.is_empty() {
            let desc: Vec<String> = b
                .leftover
                .iter()
                .map(|(v, e)| format!("|{v}|^{e}"))
                .collect();
            bounded_factors.push(format!(
                "term {}: leftover factor {} bounded near the origin",
                crate::expr::monomial_to_expr(&b.term),
                desc.join("*")
            ));
        }
    }
    let cert = PolarBoundCertificate {
        squares,
        term_bounds,
        alpha_min,
        residual,
        bounded_factors,
    };
    if replay(&cert) {
        PolarOutcome::Zero(cert)
    } else {
        PolarOutcome::NotApplicable {
            reason: "certificate replay failed".to_string(),
            alpha: None,
        }
    }
}

/// Replays a certificate under exact arithmetic: c_i >= 0, the
/// componentwise constraint sum c_i w_i <= e, alpha_j = sum c_i, every
/// alpha_j > 2 with the recorded minimum, and the residual handling.
pub fn replay(cert: &PolarBoundCertificate) -> bool {
    let two = rat_int(2);
    let mut vars: BTreeSet<String> = BTreeSet::new();
    for s in &cert.squares {
        vars.extend(s.exps.keys().cloned());
    }
    for b in &cert.term_bounds {
        vars.extend(b.term.exps.keys().cloned());
    }
    let check_bound = |b: &TermBound| -> bool {
        if b.c.len() != cert.squares.len() {
            return false;
        }
        if b.c.iter().any(|c| c.is_negative()) {
            return false;
        }
        let alpha: Rat = b.c.iter().cloned().sum();
        if alpha != b.alpha || b.alpha <= two {
            return false;
        }
        for v in &vars {
            let mut used = Rat::zero();
            for (ci, w) in b.c.iter().zip(cert.squares.iter()) {
                used += ci.clone() * w.exponent(v);
            }
            if used > b.term.exponent(v) {
                return false;
            }
        }
        true
    };
    if !cert.term_bounds.iter().all(check_bound) {
        return false;
    }
    if let Some(min) = cert.term_bounds.iter().map(|b| b.alpha.clone()).min() {
        if min != cert.alpha_min {
            return false;
        }
    }
    match &cert.residual {
        ResidualHandling::NoResidual | ResidualHandling::DroppedNonnegative => true,
        ResidualHandling::DegreeBounded { alpha, bounds } => {
            if *alpha <= two {
                return false;
            }
            if !bounds.iter().all(check_bound) {
                return false;
            }
            bounds.iter().map(|b| b.alpha.clone()).min().as_ref() == Some(alpha)
        }
    }
}
