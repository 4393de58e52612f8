//! Step 2: separation. When the numerator splits into groups supported on
//! single variables and every denominator term is nonnegative by
//! structure, each group |f_k|/g is bounded by |f_k|/g_k for the matching
//! denominator term g_k and the pieces are settled one variable at a time.

use crate::calculus::univariate_limit_two_sided;
use crate::calculus::UniVerdict;
use crate::expr::Expr;
use crate::rat::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct SeparationPiece {
    pub piece: Expr,
    pub bounding_term: Expr,
    pub variable: String,
}

#[derive(Debug, Clone)]
pub struct Separation {
    pub pieces: Vec<SeparationPiece>,
}

fn additive_terms(e: &Expr) -> Vec<Expr> {
    match e {
        Expr::Add(ts) => ts.clone(),
        other => vec![other.clone()],
    }
}

/// Attempts Step 2 on a problem already translated to the origin. Returns
/// the per-piece certificate data iff every piece certifies a zero limit
/// (so the quotient limit is 0); `None` falls through to Step 3.
pub fn separate(num: &Expr, den: &Expr, _vars: &[String]) -> Option<Separation> {
    if num.is_zero() {
        return Some(Separation { pieces: vec![] });
    }
    let den_terms = additive_terms(den);
    if !den_terms.iter().all(Expr::is_structurally_nonnegative) {
        return None;
    }
    // group numerator terms by variable support
    let mut groups: BTreeMap<Vec<String>, Vec<Expr>> = BTreeMap::new();
    for term in additive_terms(num) {
        let support: Vec<String> = term.free_variables().into_iter().collect();
        groups.entry(support).or_default().push(term);
    }
    let mut pieces = Vec::new();
    for (support, terms) in groups {
        if support.len() != 1 {
            return None; // mixed-variable group: separation does not apply
        }
        let w = &support[0];
        let piece = Expr::add(terms);
        if piece.is_zero() {
            continue;
        }
        // a denominator term with the same variable support bounds g below
        let mut settled = false;
        for gk in &den_terms {
            let gk_support: Vec<String> = gk.free_variables().into_iter().collect();
            if gk_support != support {
                continue;
            }
            match univariate_limit_two_sided(&piece, gk, w) {
                Ok(Some(lim)) if lim.verdict == UniVerdict::Value(Rat::zero()) => {
                    pieces.push(SeparationPiece {
                        piece: piece.clone(),
                        bounding_term: gk.clone(),
                        variable: w.clone(),
                    });
                    settled = true;
                    break;
                }
                _ => {}
            }
        }
        if !settled {
            return None;
        }
    }
    Some(Separation { pieces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn vars(vs: &[&str]) -> Vec<String> {
        vs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn separable_example() {
        // the shifted numerator of (x^2 + sin^4 y)/(sin^2 x + y^4)
        let num = parse("x^2 + sin(y)^4 - sin(x)^2 - y^4").unwrap();
        let den = parse("sin(x)^2 + y^4").unwrap();
        let s = separate(&num, &den, &vars(&["x", "y"])).unwrap();
        assert_eq!(s.pieces.len(), 2);
    }

    #[test]
    fn zero_numerator_trivial() {
        let s = separate(
            &Expr::zero(),
            &parse("x^2+y^2").unwrap(),
            &vars(&["x", "y"]),
        )
        .unwrap();
        assert!(s.pieces.is_empty());
    }

    #[test]
    fn mixed_term_cannot_separate() {
        let num = parse("x*y").unwrap();
        let den = parse("x^2+y^2").unwrap();
        assert!(separate(&num, &den, &vars(&["x", "y"])).is_none());
    }

    #[test]
    fn sign_indefinite_denominator_refused() {
        let num = parse("x^2").unwrap();
        let den = parse("x^2 + x*y").unwrap();
        assert!(separate(&num, &den, &vars(&["x", "y"])).is_none());
    }
}
