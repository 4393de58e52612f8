//! Step 3: sum-of-squares views of the denominator, g = u_1^2 + ... +
//! u_k^2 + v. Auto mode reads monomial squares off the terms of g;
//! general polynomial u_i (the three-variable example's y - x^3 + z^2)
//! arrive only through user hints.

use crate::expr::{as_polynomial, monomial_to_expr, polynomial_to_expr, Expr, Monomial};
use crate::rat::{rat, rat_pow_exact, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualClass {
    /// Every residual term has a positive coefficient and even exponents:
    /// g >= sum u_i^2 pointwise and the residual can be dropped.
    Nonnegative,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SquareTerm {
    pub expr: Expr,
    /// Present when u_i is a monomial (required by the polar bound).
    pub monomial: Option<Monomial>,
}

#[derive(Debug, Clone)]
pub struct SquareDecomposition {
    pub u: Vec<SquareTerm>,
    pub residual: Expr,
    pub residual_monomials: Option<Vec<Monomial>>,
    pub residual_class: ResidualClass,
    pub from_hint: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("hint rejected: {0}")]
    BadHint(String),
}

impl SquareDecomposition {
    /// Exact identity sum u_i^2 + v = g, checked in canonical form.
    pub fn identity_holds(&self, g: &Expr) -> bool {
        let mut parts: Vec<Expr> = self
            .u
            .iter()
            .map(|u| Expr::pow(u.expr.clone(), crate::rat::rat_int(2)))
            .collect();
        parts.push(self.residual.clone());
        let total = Expr::add(parts);
        Expr::sub(total, g.clone()).is_zero()
    }

    pub fn describe(&self) -> String {
        let us: Vec<String> = self.u.iter().map(|u| u.expr.to_string()).collect();
        if self.residual.is_zero() {
            format!("u = ({})", us.join(", "))
        } else {
            format!("u = ({}), v = {}", us.join(", "), self.residual)
        }
    }

    pub fn from_hint(u: &[Expr], v: &Expr, g: &Expr) -> Result<SquareDecomposition, DecomposeError> {
        if u.len() < 2 {
            return Err(DecomposeError::BadHint(
                "need at least two square terms".to_string(),
            ));
        }
        let origin: BTreeMap<String, Rat> = g
            .free_variables()
            .into_iter()
            .map(|v| (v, Rat::zero()))
            .collect();
        for (i, ui) in u.iter().enumerate() {
            match crate::expr::evaluate_exact(ui, &origin) {
                Some(val) if val.is_zero() => {}
                _ => {
                    return Err(DecomposeError::BadHint(format!(
                        "u{} = {} does not vanish at the point",
                        i + 1,
                        ui
                    )))
                }
            }
        }
        let residual_monomials = as_polynomial(v);
        let residual_class = classify_residual(&residual_monomials);
        let dec = SquareDecomposition {
            u: u.iter()
                .map(|e| SquareTerm {
                    expr: e.clone(),
                    monomial: as_polynomial(e).and_then(|ms| {
                        if ms.len() == 1 {
                            Some(ms[0].clone())
                        } else {
                            None
                        }
                    }),
                })
                .collect(),
            residual: v.clone(),
            residual_monomials,
            residual_class,
            from_hint: true,
        };
        if !dec.identity_holds(g) {
            return Err(DecomposeError::BadHint(format!(
                "sum of squares plus residual does not equal the denominator ({})",
                dec.describe()
            )));
        }
        Ok(dec)
    }
}

fn classify_residual(ms: &Option<Vec<Monomial>>) -> ResidualClass {
    match ms {
        Some(ms) => {
            let nonneg = ms.iter().all(|m| {
                m.coeff.is_positive()
                    && m.exps
                        .values()
                        .all(|e| crate::rat::is_integer(e) && e.numer().is_even())
            });
            if nonneg {
                ResidualClass::Nonnegative
            } else {
                ResidualClass::Unknown
            }
        }
        None => ResidualClass::Unknown,
    }
}

/// A denominator term that is a perfect square of a monomial: positive
/// perfect-square coefficient and even integer exponents.
fn square_root_of_term(m: &Monomial) -> Option<Monomial> {
    if !m.coeff.is_positive() {
        return None;
    }
    let root_coeff = rat_pow_exact(&m.coeff, &rat(1, 2))?;
    let mut exps = BTreeMap::new();
    for (v, e) in &m.exps {
        if !crate::rat::is_integer(e) || e.numer().is_odd() {
            return None;
        }
        exps.insert(v.clone(), e.clone() / crate::rat::rat_int(2));
    }
    Some(Monomial {
        coeff: root_coeff,
        exps,
    })
}

/// Enumerates monomial-square decompositions: subsets of the candidate
/// square terms, size two up, ordered by (size ascending, total degree of
/// the u set descending, index order), truncated to `max`.
pub fn enumerate_square_decompositions(g: &Expr, max: usize) -> Vec<SquareDecomposition> {
    let monomials = match as_polynomial(g) {
        Some(ms) => ms,
        None => return vec![],
    };
    let mut candidates: Vec<(usize, Monomial)> = Vec::new();
    for (i, m) in monomials.iter().enumerate() {
        if let Some(root) = square_root_of_term(m) {
            candidates.push((i, root));
        }
    }
    if candidates.len() < 2 {
        return vec![];
    }
    // canonical term order within each emitted u list
    candidates.sort_by(|a, b| {
        crate::expr::term_cmp(&monomial_to_expr(&a.1), &monomial_to_expr(&b.1))
    });
    let n = candidates.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for size in 2..=n {
        let mut level: Vec<Vec<usize>> = Vec::new();
        collect_subsets(n, size, 0, &mut Vec::new(), &mut level);
        // larger total degree first within a size level
        level.sort_by(|a, b| {
            let da: Rat = a
                .iter()
                .map(|&i| candidates[i].1.total_degree())
                .sum();
            let db: Rat = b
                .iter()
                .map(|&i| candidates[i].1.total_degree())
                .sum();
            db.cmp(&da).then_with(|| a.cmp(b))
        });
        subsets.extend(level);
    }
    let mut out = Vec::new();
    for subset in subsets.into_iter().take(max) {
        let chosen_terms: Vec<usize> = subset.iter().map(|&i| candidates[i].0).collect();
        let residual_ms: Vec<Monomial> = monomials
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen_terms.contains(i))
            .map(|(_, m)| m.clone())
            .collect();
        let residual = polynomial_to_expr(&residual_ms);
        let residual_class = classify_residual(&Some(residual_ms.clone()));
        out.push(SquareDecomposition {
            u: subset
                .iter()
                .map(|&i| SquareTerm {
                    expr: monomial_to_expr(&candidates[i].1),
                    monomial: Some(candidates[i].1.clone()),
                })
                .collect(),
            residual,
            residual_monomials: Some(residual_ms),
            residual_class,
            from_hint: false,
        });
    }
    out
}

fn collect_subsets(
    n: usize,
    size: usize,
    start: usize,
    acc: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if acc.len() == size {
        out.push(acc.clone());
        return;
    }
    for i in start..n {
        if n - i < size - acc.len() {
            break;
        }
        acc.push(i);
        collect_subsets(n, size, i + 1, acc, out);
        acc.pop();
    }
}
