//! Single-variable limit evaluation by leading-term comparison of Puiseux
//! expansions, the reduction both resolvers bottom out in.

use super::series::{default_order, expand_adaptive, PuiseuxSeries, SeriesError};
use crate::expr::Expr;
use crate::rat::Rat;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Outcome of a one-sided univariate limit as t -> 0+.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniVerdict {
    Value(Rat),
    Unbounded { positive: bool },
}

impl UniVerdict {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            UniVerdict::Value(v) => Some(v),
            _ => None,
        }
    }
}

/// The limit plus the expansions that justified it.
#[derive(Debug, Clone)]
pub struct UniLimit {
    pub verdict: UniVerdict,
    pub numerator_series: PuiseuxSeries,
    pub denominator_series: PuiseuxSeries,
}

/// Resolves lim_{t->0+} num/den by comparing leading Puiseux exponents:
/// a larger numerator exponent gives 0, equal exponents give the ratio of
/// leading coefficients, a smaller one diverges (sign recorded).
pub fn univariate_limit(num: &Expr, den: &Expr, var: &str) -> Result<UniLimit, SeriesError> {
    let order = default_order(den).max(default_order(num));
    if den.is_zero() {
        return Err(SeriesError::ZeroDenominator {
            context: "denominator identically zero".to_string(),
        });
    }
    let den_series = expand_adaptive(den, var, &order)?;
    if den_series.is_zero_to_order() {
        return Err(SeriesError::TruncationUnreachable {
            achieved: den_series.truncation_order().clone(),
        });
    }
    if num.is_zero() {
        let numerator_series = PuiseuxSeries::zero(var, order);
        return Ok(UniLimit {
            verdict: UniVerdict::Value(Rat::zero()),
            numerator_series,
            denominator_series: den_series,
        });
    }
    let num_series = expand_adaptive(num, var, &order)?;
    if num_series.is_zero_to_order() {
        return Err(SeriesError::TruncationUnreachable {
            achieved: num_series.truncation_order().clone(),
        });
    }
    let (ne, nc) = {
        let (e, c) = num_series.leading().unwrap();
        (e.clone(), c.clone())
    };
    let (de, dc) = {
        let (e, c) = den_series.leading().unwrap();
        (e.clone(), c.clone())
    };
    let verdict = if ne > de {
        UniVerdict::Value(Rat::zero())
    } else if ne == de {
        UniVerdict::Value(nc / dc)
    } else {
        UniVerdict::Unbounded {
            positive: (nc * dc).is_positive(),
        }
    };
    Ok(UniLimit {
        verdict,
        numerator_series: num_series,
        denominator_series: den_series,
    })
}

/// Mirror substitution t -> -t, reducing the left-hand limit to a
/// right-hand one.
pub fn mirror(e: &Expr, var: &str) -> Expr {
    let mut bindings = BTreeMap::new();
    bindings.insert(var.to_string(), Expr::neg(Expr::var(var)));
    e.substitute(&bindings)
}

/// Two-sided limit: the t -> 0+ expansions of e(t) and e(-t) must agree.
/// Returns the shared verdict or `None` when the one-sided limits differ.
pub fn univariate_limit_two_sided(
    num: &Expr,
    den: &Expr,
    var: &str,
) -> Result<Option<UniLimit>, SeriesError> {
    let right = univariate_limit(num, den, var)?;
    let left = univariate_limit(&mirror(num, var), &mirror(den, var), var)?;
    if right.verdict == left.verdict {
        Ok(Some(right))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::rat::{rat, rat_int};

    fn lim(num: &str, den: &str) -> UniVerdict {
        univariate_limit(&parse(num).unwrap(), &parse(den).unwrap(), "t")
            .unwrap()
            .verdict
    }

    #[test]
    fn leading_exponent_comparison() {
        assert_eq!(lim("t^3", "t^2"), UniVerdict::Value(rat_int(0)));
        assert_eq!(
            lim("t^2", "t^3"),
            UniVerdict::Unbounded { positive: true }
        );
        assert_eq!(lim("t^2", "sin(t)^2"), UniVerdict::Value(rat_int(1)));
        assert_eq!(lim("3*t^2", "2*t^2"), UniVerdict::Value(rat(3, 2)));
    }

    #[test]
    fn lhopital_style_ratios() {
        // the axis restriction of (x^2+sin^4 y)/(sin^2 x + y^4) at y = 0
        assert_eq!(lim("t^2", "sin(t)^2"), UniVerdict::Value(rat_int(1)));
        // and at x = 0
        assert_eq!(lim("sin(t)^4", "t^4"), UniVerdict::Value(rat_int(1)));
    }

    #[test]
    fn two_sided_agreement() {
        let v = univariate_limit_two_sided(
            &parse("t^2").unwrap(),
            &parse("sin(t)^2").unwrap(),
            "t",
        )
        .unwrap()
        .unwrap();
        assert_eq!(v.verdict, UniVerdict::Value(rat_int(1)));
        // t/|t| disagrees across sides
        let none = univariate_limit_two_sided(
            &parse("t").unwrap(),
            &parse("abs(t)").unwrap(),
            "t",
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn zero_numerator_short_circuits() {
        assert_eq!(lim("0", "t^2"), UniVerdict::Value(rat_int(0)));
    }

    #[test]
    fn sign_of_divergence() {
        assert_eq!(
            lim("0 - t", "t^2"),
            UniVerdict::Unbounded { positive: false }
        );
    }
}
