//! The limit problem under study and the verdicts the resolvers emit.

use crate::expr::Expr;
use crate::rat::{to_f64, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Exact rational coordinates for every variable under study.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Point(pub BTreeMap<String, Rat>);

impl Point {
    pub fn origin(vars: &[String]) -> Point {
        Point(vars.iter().map(|v| (v.clone(), Rat::zero())).collect())
    }

    pub fn get(&self, var: &str) -> Option<&Rat> {
        self.0.get(var)
    }

    pub fn is_origin(&self) -> bool {
        self.0.values().all(|c| c.is_zero())
    }

    pub fn to_f64_env(&self) -> BTreeMap<String, f64> {
        self.0.iter().map(|(k, v)| (k.clone(), to_f64(v))).collect()
    }
}

/// A zero-over-zero quotient limit: numerator f, denominator g, an ordered
/// variable list, and the point of approach. The neighborhood is implicit
/// ("near p").
#[derive(Debug, Clone)]
pub struct LimitProblem {
    pub numerator: Expr,
    pub denominator: Expr,
    pub variables: Vec<String>,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("variable list does not cover free variable {0:?}")]
    UncoveredVariable(String),
    #[error("point has no coordinate for variable {0:?}")]
    MissingCoordinate(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
}

impl LimitProblem {
    pub fn new(
        numerator: Expr,
        denominator: Expr,
        variables: Vec<String>,
        point: Point,
    ) -> Result<LimitProblem, ProblemError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &variables {
            if !seen.insert(v.clone()) {
                return Err(ProblemError::DuplicateVariable(v.clone()));
            }
            if point.get(v).is_none() {
                return Err(ProblemError::MissingCoordinate(v.clone()));
            }
        }
        for e in [&numerator, &denominator] {
            for v in e.free_variables() {
                if !seen.contains(&v) {
                    return Err(ProblemError::UncoveredVariable(v));
                }
            }
        }
        Ok(LimitProblem {
            numerator,
            denominator,
            variables,
            point,
        })
    }

    /// Translates the problem so the approach point becomes the origin
    /// (substituting x_j -> x_j + p_j), the single code path all resolvers
    /// work in.
    pub fn translated_to_origin(&self) -> LimitProblem {
        if self.point.is_origin() {
            return self.clone();
        }
        let bindings: BTreeMap<String, Expr> = self
            .variables
            .iter()
            .map(|v| {
                let p = self.point.get(v).cloned().unwrap_or_else(Rat::zero);
                (
                    v.clone(),
                    Expr::add(vec![Expr::var(v.clone()), Expr::constant(p)]),
                )
            })
            .collect();
        LimitProblem {
            numerator: self.numerator.substitute(&bindings),
            denominator: self.denominator.substitute(&bindings),
            variables: self.variables.clone(),
            point: Point::origin(&self.variables),
        }
    }

    /// Maps a witness path expressed around the origin back to the original
    /// coordinates by adding the point offset.
    pub fn untranslate_path(&self, path: &WitnessPath) -> WitnessPath {
        if self.point.is_origin() {
            return path.clone();
        }
        let mut param = BTreeMap::new();
        for (v, e) in &path.parameterization {
            let offset = self.point.get(v).cloned().unwrap_or_else(Rat::zero);
            param.insert(
                v.clone(),
                Expr::add(vec![e.clone(), Expr::constant(offset)]),
            );
        }
        WitnessPath {
            label: path.label.clone(),
            parameterization: param,
            approach: path.approach.clone(),
        }
    }
}

/// An explicit curve into the singular point along which the quotient
/// approaches a recorded value; two of these with different values certify
/// nonexistence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPath {
    pub label: String,
    /// variable -> expression in the path parameter t (t -> 0+)
    pub parameterization: BTreeMap<String, Expr>,
    pub approach: ApproachValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApproachValue {
    Value(Rat),
    Unbounded { positive: bool },
}

impl ApproachValue {
    pub fn shifted(&self, ell: &Rat) -> ApproachValue {
        match self {
            ApproachValue::Value(v) => ApproachValue::Value(v.clone() + ell.clone()),
            other => other.clone(),
        }
    }
}

impl WitnessPath {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .parameterization
            .iter()
            .map(|(v, e)| format!("{v} = {e}"))
            .collect();
        let approach = match &self.approach {
            ApproachValue::Value(v) => format!("-> {v}"),
            ApproachValue::Unbounded { positive: true } => "-> +infinity".to_string(),
            ApproachValue::Unbounded { positive: false } => "-> -infinity".to_string(),
        };
        format!("{} ({} as t->0+)", parts.join(", "), approach)
    }
}

/// The resolver's answer, always paired with a certificate trace upstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Exists(Rat),
    DoesNotExist(Vec<WitnessPath>),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Verdict::Inconclusive(_))
    }

    pub fn exists_value(&self) -> Option<&Rat> {
        match self {
            Verdict::Exists(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Exists(v) => write!(f, "exists, value {v}"),
            Verdict::DoesNotExist(ws) => {
                write!(f, "does not exist")?;
                for w in ws {
                    write!(f, "\n  witness: {}", w.render())?;
                }
                Ok(())
            }
            Verdict::Inconclusive(reason) => write!(f, "inconclusive: {reason}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::rat::rat_int;

    #[test]
    fn validation() {
        let f = parse("x + y").unwrap();
        let g = parse("x").unwrap();
        let p = Point::origin(&["x".to_string()]);
        let err = LimitProblem::new(f, g, vec!["x".to_string()], p).unwrap_err();
        assert_eq!(err, ProblemError::UncoveredVariable("y".to_string()));
    }

    #[test]
    fn translation_moves_point_to_origin() {
        let f = parse("x^2").unwrap();
        let g = parse("x - 1").unwrap();
        let mut coords = BTreeMap::new();
        coords.insert("x".to_string(), rat_int(1));
        let pr = LimitProblem::new(f, g, vec!["x".to_string()], Point(coords)).unwrap();
        let t = pr.translated_to_origin();
        assert_eq!(t.numerator, parse("(x + 1)^2").unwrap());
        assert_eq!(t.denominator, parse("x").unwrap());
        assert!(t.point.is_origin());
    }
}
