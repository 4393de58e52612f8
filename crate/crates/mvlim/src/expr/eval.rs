//! Floating and exact evaluation.
//!
//! Floating evaluation returns an IEEE-style extended real; division by an
//! exact zero and domain violations (sqrt of a negative) produce a
//! distinguished [`Evaluated::Undefined`] marker rather than a crash. Exact
//! evaluation works over rationals and answers `None` whenever the value is
//! irrational or cannot be decided exactly.

use super::{Expr, Func};
use crate::rat::{is_integer, rat_pow_exact, to_f64, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluated {
    Value(f64),
    Undefined,
}

impl Evaluated {
    pub fn value(self) -> Option<f64> {
        match self {
            Evaluated::Value(v) => Some(v),
            Evaluated::Undefined => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unassigned variable {0:?}")]
    UnassignedVariable(String),
}

/// Evaluates the expression at a real assignment of its free variables.
pub fn evaluate(e: &Expr, env: &BTreeMap<String, f64>) -> Result<Evaluated, EvalError> {
    Ok(match eval_inner(e, env)? {
        Some(v) if v.is_nan() => Evaluated::Undefined,
        Some(v) => Evaluated::Value(v),
        None => Evaluated::Undefined,
    })
}

fn eval_inner(e: &Expr, env: &BTreeMap<String, f64>) -> Result<Option<f64>, EvalError> {
    match e {
        Expr::Const(c) => Ok(Some(to_f64(c))),
        Expr::Var(v) => env
            .get(v)
            .copied()
            .map(Some)
            .ok_or_else(|| EvalError::UnassignedVariable(v.clone())),
        Expr::Add(ts) => {
            let mut acc = 0.0;
            for t in ts {
                match eval_inner(t, env)? {
                    Some(v) => acc += v,
                    None => return Ok(None),
                }
            }
            Ok(Some(acc))
        }
        Expr::Mul(fs) => {
            let mut acc = 1.0;
            for fac in fs {
                match eval_inner(fac, env)? {
                    Some(v) => acc *= v,
                    None => return Ok(None),
                }
            }
            Ok(Some(acc))
        }
        Expr::Pow(b, exp) => {
            let base = match eval_inner(b, env)? {
                Some(v) => v,
                None => return Ok(None),
            };
            Ok(pow_real(base, exp))
        }
        Expr::Neg(inner) => Ok(eval_inner(inner, env)?.map(|v| -v)),
        Expr::Func(f, a) => {
            let arg = match eval_inner(a, env)? {
                Some(v) => v,
                None => return Ok(None),
            };
            Ok(apply_func(*f, arg))
        }
    }
}

/// Real power under the crate convention: integer exponents as usual;
/// `x^(p/q)` with even q acts on |x|, odd q keeps the sign of x.
pub fn pow_real(base: f64, exp: &Rat) -> Option<f64> {
    let e = to_f64(exp);
    if base == 0.0 {
        if exp.is_zero() {
            return Some(1.0);
        }
        return if exp.is_negative() { None } else { Some(0.0) };
    }
    if is_integer(exp) {
        let v = base.powf(e);
        return if v.is_nan() { None } else { Some(v) };
    }
    let magnitude = base.abs().powf(e);
    if exp.denom().is_even() {
        return if magnitude.is_nan() { None } else { Some(magnitude) };
    }
    // odd root: sign(base)^p carries through
    let signed = if base < 0.0 && exp.numer().is_odd() {
        -magnitude
    } else {
        magnitude
    };
    if signed.is_nan() {
        None
    } else {
        Some(signed)
    }
}

fn apply_func(f: Func, arg: f64) -> Option<f64> {
    let v = match f {
        Func::Sin => arg.sin(),
        Func::Cos => arg.cos(),
        Func::Tan => arg.tan(),
        Func::Sec => {
            let c = arg.cos();
            if c == 0.0 {
                return None;
            }
            1.0 / c
        }
        Func::Exp => arg.exp(),
        Func::Sqrt => {
            if arg < 0.0 {
                return None;
            }
            arg.sqrt()
        }
        Func::Abs => arg.abs(),
    };
    if v.is_nan() {
        None
    } else {
        Some(v)
    }
}

/// Exact evaluation over rationals. Functions are folded only where they
/// take rational values (the origin for trig/exp, perfect squares for
/// sqrt); anything else yields `None`.
pub fn evaluate_exact(e: &Expr, env: &BTreeMap<String, Rat>) -> Option<Rat> {
    match e {
        Expr::Const(c) => Some(c.clone()),
        Expr::Var(v) => env.get(v).cloned(),
        Expr::Add(ts) => {
            let mut acc = Rat::zero();
            for t in ts {
                acc += evaluate_exact(t, env)?;
            }
            Some(acc)
        }
        Expr::Mul(fs) => {
            let mut acc = Rat::from_integer(1.into());
            for f in fs {
                acc *= evaluate_exact(f, env)?;
            }
            Some(acc)
        }
        Expr::Pow(b, exp) => {
            let base = evaluate_exact(b, env)?;
            rat_pow_exact(&base, exp)
        }
        Expr::Neg(inner) => Some(-evaluate_exact(inner, env)?),
        Expr::Func(f, a) => {
            let arg = evaluate_exact(a, env)?;
            match f {
                Func::Sin | Func::Tan if arg.is_zero() => Some(Rat::zero()),
                Func::Cos | Func::Sec | Func::Exp if arg.is_zero() => {
                    Some(Rat::from_integer(1.into()))
                }
                Func::Sqrt if !arg.is_negative() => {
                    rat_pow_exact(&arg, &crate::rat::rat(1, 2))
                }
                Func::Abs => Some(arg.abs()),
                _ => None,
            }
        }
    }
}
