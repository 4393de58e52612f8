//! Step 1: axis-restricted limits. Holding all but one variable at the
//! point gives univariate quotients; if any axis limit fails to exist the
//! overall limit cannot exist, and a common nonzero value becomes a shift
//! of the numerator so the remaining question is "zero or undefined".

use crate::calculus::limits::mirror;
use crate::calculus::{univariate_limit, UniVerdict};
use crate::expr::Expr;
use crate::problem::{ApproachValue, WitnessPath};
use crate::rat::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub enum AxisOutcome {
    /// Two-sided restricted limit exists.
    Limit(Rat),
    /// The axis restriction itself rules the limit out.
    RuledOut {
        witnesses: Vec<WitnessPath>,
        detail: String,
    },
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct AxisRecord {
    pub axis: String,
    pub outcome: AxisOutcome,
}

#[derive(Debug, Clone)]
pub struct PreliminaryProbeResult {
    pub restricted_limits: Vec<AxisRecord>,
    /// Present iff all usable axis limits exist, agree, and are nonzero.
    pub shift: Option<Rat>,
    /// f - shift * g in canonical form, when a shift occurred.
    pub shifted_numerator: Option<Expr>,
    /// An axis path along which the (shifted) quotient tends to 0, used as
    /// the contrast witness by the curve probe.
    pub baseline: Option<WitnessPath>,
    pub verdict: ProbeVerdict,
}

#[derive(Debug, Clone)]
pub enum ProbeVerdict {
    DoesNotExist(Vec<WitnessPath>),
    /// Axis limits all equal the recorded value (possibly after shift);
    /// proceed with the algorithm.
    Proceed,
    /// No axis produced usable information.
    NoInformation(String),
}

fn axis_path(vars: &[String], axis: &str, negative: bool) -> BTreeMap<String, Expr> {
    vars.iter()
        .map(|v| {
            let e = if v == axis {
                if negative {
                    Expr::neg(Expr::var("t"))
                } else {
                    Expr::var("t")
                }
            } else {
                Expr::zero()
            };
            (v.clone(), e)
        })
        .collect()
}

fn approach(v: &UniVerdict) -> ApproachValue {
    match v {
        UniVerdict::Value(r) => ApproachValue::Value(r.clone()),
        UniVerdict::Unbounded { positive } => ApproachValue::Unbounded {
            positive: *positive,
        },
    }
}

/// Runs the axis probes for a problem already translated to the origin.
pub fn preliminary_probe(num: &Expr, den: &Expr, vars: &[String]) -> PreliminaryProbeResult {
    let mut records = Vec::new();
    let mut values: Vec<(String, Rat)> = Vec::new();
    let mut dne: Option<(Vec<WitnessPath>, String)> = None;
    for axis in vars {
        let mut bindings: BTreeMap<String, Expr> = vars
            .iter()
            .map(|v| (v.clone(), Expr::zero()))
            .collect();
        bindings.insert(axis.clone(), Expr::var("t"));
        let num_axis = num.substitute(&bindings);
        let den_axis = den.substitute(&bindings);
        if den_axis.is_zero() {
            records.push(AxisRecord {
                axis: axis.clone(),
                outcome: AxisOutcome::Skipped(
                    "axis lies inside the zero set of g (restriction identically 0/0)"
                        .to_string(),
                ),
            });
            continue;
        }
        let right = univariate_limit(&num_axis, &den_axis, "t");
        let left = univariate_limit(&mirror(&num_axis, "t"), &mirror(&den_axis, "t"), "t");
        let (right, left) = match (right, left) {
            (Ok(r), Ok(l)) => (r, l),
            (Err(e), _) | (_, Err(e)) => {
                records.push(AxisRecord {
                    axis: axis.clone(),
                    outcome: AxisOutcome::Skipped(format!("axis expansion failed: {e}")),
                });
                continue;
            }
        };
        if right.verdict != left.verdict {
            let w_plus = WitnessPath {
                label: format!("axis {axis}, t -> 0+"),
                parameterization: axis_path(vars, axis, false),
                approach: approach(&right.verdict),
            };
            let w_minus = WitnessPath {
                label: format!("axis {axis}, t -> 0-"),
                parameterization: axis_path(vars, axis, true),
                approach: approach(&left.verdict),
            };
            let detail = format!("one-sided limits along axis {axis} disagree");
            records.push(AxisRecord {
                axis: axis.clone(),
                outcome: AxisOutcome::RuledOut {
                    witnesses: vec![w_plus.clone(), w_minus.clone()],
                    detail: detail.clone(),
                },
            });
            if dne.is_none() {
                dne = Some((vec![w_plus, w_minus], detail));
            }
            continue;
        }
        match right.verdict {
            UniVerdict::Value(v) => {
                records.push(AxisRecord {
                    axis: axis.clone(),
                    outcome: AxisOutcome::Limit(v.clone()),
                });
                values.push((axis.clone(), v));
            }
            UniVerdict::Unbounded { positive } => {
                let w = WitnessPath {
                    label: format!("axis {axis}"),
                    parameterization: axis_path(vars, axis, false),
                    approach: ApproachValue::Unbounded { positive },
                };
                let detail = format!("quotient is unbounded along axis {axis}");
                records.push(AxisRecord {
                    axis: axis.clone(),
                    outcome: AxisOutcome::RuledOut {
                        witnesses: vec![w.clone()],
                        detail: detail.clone(),
                    },
                });
                if dne.is_none() {
                    dne = Some((vec![w], detail));
                }
            }
        }
    }
    // a pair of axes with different finite limits also settles nonexistence
    if dne.is_none() && values.len() >= 2 {
        let (first_axis, first) = &values[0];
        if let Some((other_axis, other)) = values[1..].iter().find(|(_, v)| v != first) {
            let w1 = WitnessPath {
                label: format!("axis {first_axis}"),
                parameterization: axis_path(vars, first_axis, false),
                approach: ApproachValue::Value(first.clone()),
            };
            let w2 = WitnessPath {
                label: format!("axis {other_axis}"),
                parameterization: axis_path(vars, other_axis, false),
                approach: ApproachValue::Value(other.clone()),
            };
            dne = Some((
                vec![w1, w2],
                format!(
                    "axes {first_axis} and {other_axis} give different restricted limits ({first} vs {other})"
                ),
            ));
        }
    }
    if let Some((witnesses, _detail)) = dne {
        return PreliminaryProbeResult {
            restricted_limits: records,
            shift: None,
            shifted_numerator: None,
            baseline: None,
            verdict: ProbeVerdict::DoesNotExist(witnesses),
        };
    }
    if values.is_empty() {
        return PreliminaryProbeResult {
            restricted_limits: records,
            shift: None,
            shifted_numerator: None,
            baseline: None,
            verdict: ProbeVerdict::NoInformation(
                "every axis was skipped; no restricted baseline available".to_string(),
            ),
        };
    }
    let ell = values[0].1.clone();
    let baseline_axis = values[0].0.clone();
    let baseline = Some(WitnessPath {
        label: format!("axis {baseline_axis}"),
        parameterization: axis_path(vars, &baseline_axis, false),
        approach: ApproachValue::Value(Rat::zero()),
    });
    if ell.is_zero() {
        PreliminaryProbeResult {
            restricted_limits: records,
            shift: None,
            shifted_numerator: None,
            baseline,
            verdict: ProbeVerdict::Proceed,
        }
    } else {
        let shifted = Expr::sub(
            num.clone(),
            Expr::mul(vec![Expr::constant(ell.clone()), den.clone()]),
        );
        PreliminaryProbeResult {
            restricted_limits: records,
            shift: Some(ell),
            shifted_numerator: Some(shifted),
            baseline,
            verdict: ProbeVerdict::Proceed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::rat::rat_int;

    fn vars(vs: &[&str]) -> Vec<String> {
        vs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn shift_detected() {
        let num = parse("x^2 + sin(y)^4").unwrap();
        let den = parse("sin(x)^2 + y^4").unwrap();
        let r = preliminary_probe(&num, &den, &vars(&["x", "y"]));
        assert!(matches!(r.verdict, ProbeVerdict::Proceed));
        assert_eq!(r.shift, Some(rat_int(1)));
        let expected = parse("x^2 + sin(y)^4 - sin(x)^2 - y^4").unwrap();
        assert_eq!(r.shifted_numerator.unwrap(), expected);
    }

    #[test]
    fn zero_baseline_passes_through() {
        let num = parse("x*y").unwrap();
        let den = parse("x^2 + y^2").unwrap();
        let r = preliminary_probe(&num, &den, &vars(&["x", "y"]));
        assert!(matches!(r.verdict, ProbeVerdict::Proceed));
        assert!(r.shift.is_none());
        assert!(r.baseline.is_some());
    }

    #[test]
    fn mismatched_axes_rule_out() {
        // x/(x + y^2): axis y=0 gives 1, axis x=0 gives 0
        let num = parse("x").unwrap();
        let den = parse("x + y^2").unwrap();
        let r = preliminary_probe(&num, &den, &vars(&["x", "y"]));
        match r.verdict {
            ProbeVerdict::DoesNotExist(ws) => {
                assert_eq!(ws.len(), 2);
            }
            other => panic!("expected DNE, got {other:?}"),
        }
    }

    #[test]
    fn axis_inside_zero_set_is_skipped() {
        let num = parse("x^2*y^2").unwrap();
        let den = parse("x^2*y^2 + x^4*y^4").unwrap();
        let r = preliminary_probe(&num, &den, &vars(&["x", "y"]));
        assert!(r
            .restricted_limits
            .iter()
            .all(|rec| matches!(rec.outcome, AxisOutcome::Skipped(_))));
        assert!(matches!(r.verdict, ProbeVerdict::NoInformation(_)));
    }
}
