//! Truncated Puiseux series: one parameter, ascending rational exponents,
//! exact rational coefficients, expanded around t -> 0+.
//!
//! A series stores every term with exponent below its truncation order
//! exactly; exponents at or beyond the truncation order are unknown. The
//! arithmetic is a commutative ring up to truncation, and stored
//! coefficients are always the true expansion coefficients — operations
//! only ever shorten what is known, never corrupt it.

use crate::expr::{Expr, Func};
use crate::rat::{is_integer, rat_int, rat_pow_exact, to_f64, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("expression is not univariate in {expected:?}: found variable {found:?}")]
    NotUnivariate { expected: String, found: String },
    #[error("division by a series that is zero to working order ({context})")]
    ZeroDenominator { context: String },
    #[error("irrational coefficient: {0}")]
    IrrationalCoefficient(String),
    #[error("function domain violation: {0}")]
    FunctionDomain(String),
    #[error("essential singularity at 0: {0}")]
    EssentialSingularity(String),
    #[error("negative leading exponent {exponent} (pole at 0, not hidden)")]
    NegativeLeadingExponent { exponent: Rat },
    #[error("truncation order unreachable under catastrophic cancellation; order achieved: {achieved}")]
    TruncationUnreachable { achieved: Rat },
}

impl SeriesError {
    /// Errors that a larger working order may cure.
    pub fn retryable(&self) -> bool {
        matches!(self, SeriesError::ZeroDenominator { .. })
    }
}

/// Truncated series `sum c_i t^(e_i) + O(t^trunc)` with strictly ascending
/// exponents, nonzero coefficients, and every stored exponent < trunc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    var: String,
    terms: Vec<(Rat, Rat)>,
    trunc: Rat,
}

impl PuiseuxSeries {
    pub fn new(var: impl Into<String>, terms: Vec<(Rat, Rat)>, trunc: Rat) -> PuiseuxSeries {
        let mut map: std::collections::BTreeMap<Rat, Rat> = std::collections::BTreeMap::new();
        for (e, c) in terms {
            if e < trunc {
                let entry = map.entry(e).or_insert_with(Rat::zero);
                *entry += c;
            }
        }
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        PuiseuxSeries {
            var: var.into(),
            terms,
            trunc,
        }
    }

    pub fn zero(var: impl Into<String>, trunc: Rat) -> PuiseuxSeries {
        PuiseuxSeries {
            var: var.into(),
            terms: vec![],
            trunc,
        }
    }

    pub fn constant(var: impl Into<String>, c: Rat, trunc: Rat) -> PuiseuxSeries {
        PuiseuxSeries::new(var, vec![(Rat::zero(), c)], trunc)
    }

    pub fn monomial(var: impl Into<String>, exp: Rat, coeff: Rat, trunc: Rat) -> PuiseuxSeries {
        PuiseuxSeries::new(var, vec![(exp, coeff)], trunc)
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn truncation_order(&self) -> &Rat {
        &self.trunc
    }

    pub fn is_zero_to_order(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading (exponent, coefficient), when any term is known.
    pub fn leading(&self) -> Option<(&Rat, &Rat)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    /// The order of the first term, or the truncation order when the series
    /// is zero to working order.
    pub fn valuation(&self) -> Rat {
        self.terms
            .first()
            .map(|(e, _)| e.clone())
            .unwrap_or_else(|| self.trunc.clone())
    }

    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let trunc = self.trunc.clone().min(other.trunc.clone());
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        PuiseuxSeries::new(self.var.clone(), terms, trunc)
    }

    pub fn neg(&self) -> PuiseuxSeries {
        PuiseuxSeries {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> PuiseuxSeries {
        if k.is_zero() {
            return PuiseuxSeries::zero(self.var.clone(), self.trunc.clone());
        }
        PuiseuxSeries {
            var: self.var.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * k.clone()))
                .collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn mul(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        // the product is known below min(Ta + vb, Tb + va)
        let trunc = (self.trunc.clone() + other.valuation())
            .min(other.trunc.clone() + self.valuation());
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.clone() + eb.clone();
                if e < trunc {
                    terms.push((e, ca.clone() * cb.clone()));
                }
            }
        }
        PuiseuxSeries::new(self.var.clone(), terms, trunc)
    }

    /// Raises to an exact rational power under the crate's real-power
    /// convention (near t -> 0+ the sign of the series is the sign of its
    /// leading coefficient).
    pub fn pow(&self, r: &Rat) -> Result<PuiseuxSeries, SeriesError> {
        if r.is_zero() {
            return Ok(PuiseuxSeries::constant(
                self.var.clone(),
                Rat::one(),
                self.trunc.clone(),
            ));
        }
        if self.terms.is_empty() {
            if r.is_positive() {
                return Ok(PuiseuxSeries::zero(
                    self.var.clone(),
                    self.trunc.clone() * r.clone(),
                ));
            }
            return Err(SeriesError::ZeroDenominator {
                context: format!("({})^({})", self, r),
            });
        }
        let (v, c) = {
            let (e, c) = self.leading().unwrap();
            (e.clone(), c.clone())
        };
        // even root denominators act on |series|; the sign near 0+ is the
        // sign of the leading coefficient
        let effective_c = if !is_integer(r) && r.denom().is_even() {
            c.abs()
        } else {
            c.clone()
        };
        let lead_pow = rat_pow_exact(&effective_c, r).ok_or_else(|| {
            SeriesError::IrrationalCoefficient(format!("({})^({})", effective_c, r))
        })?;
        // normalized tail w with (1 + w) known to relative order T - v
        let rel = self.trunc.clone() - v.clone();
        let mut w_terms = Vec::new();
        for (e, coeff) in self.terms.iter().skip(1) {
            w_terms.push((e.clone() - v.clone(), coeff.clone() / c.clone()));
        }
        let w = PuiseuxSeries::new(self.var.clone(), w_terms, rel.clone());
        let body = binomial_series(&w, r, &rel);
        let shifted: Vec<(Rat, Rat)> = body
            .terms
            .iter()
            .map(|(e, coeff)| {
                (
                    e.clone() + v.clone() * r.clone(),
                    coeff.clone() * lead_pow.clone(),
                )
            })
            .collect();
        Ok(PuiseuxSeries::new(
            self.var.clone(),
            shifted,
            rel + v * r.clone(),
        ))
    }

    pub fn recip(&self) -> Result<PuiseuxSeries, SeriesError> {
        self.pow(&rat_int(-1))
    }

    /// Floating evaluation at t > 0, for numerical fidelity checks.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| to_f64(c) * t.powf(to_f64(e)))
            .sum()
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if is_integer(e) {
                write!(f, "{}*{}^{}", c, self.var, e.numer())?;
            } else {
                write!(f, "{}*{}^({}/{})", c, self.var, e.numer(), e.denom())?;
            }
        }
        if !self.terms.is_empty() {
            write!(f, " + ")?;
        }
        if is_integer(&self.trunc) {
            write!(f, "O({}^{})", self.var, self.trunc.numer())
        } else {
            write!(
                f,
                "O({}^({}/{}))",
                self.var,
                self.trunc.numer(),
                self.trunc.denom()
            )
        }
    }
}

/// (1 + w)^r = sum_k C(r,k) w^k for a tail w with positive valuation,
/// computed to the given relative order.
fn binomial_series(w: &PuiseuxSeries, r: &Rat, rel_trunc: &Rat) -> PuiseuxSeries {
    let one = PuiseuxSeries::constant(w.var_name().to_string(), Rat::one(), rel_trunc.clone());
    if w.terms.is_empty() {
        return one;
    }
    let mut acc = one;
    let mut w_pow = PuiseuxSeries::constant(w.var_name().to_string(), Rat::one(), rel_trunc.clone());
    let mut binom = Rat::one();
    let mut k = Rat::zero();
    loop {
        // next binomial coefficient C(r, k+1) = C(r, k) * (r - k)/(k + 1)
        let next_k = k.clone() + Rat::one();
        binom = binom * (r.clone() - k.clone()) / next_k.clone();
        k = next_k;
        if binom.is_zero() {
            break;
        }
        w_pow = w_pow.mul(w);
        if w_pow.valuation() >= *rel_trunc {
            break;
        }
        acc = acc.add(&w_pow.scale(&binom));
    }
    acc
}

/// sum_k m_k s^k for an inner series with positive valuation; `coeff(k)`
/// supplies the Maclaurin coefficients of the outer function.
fn compose_analytic(
    s: &PuiseuxSeries,
    coeff: impl Fn(u32) -> Rat,
) -> PuiseuxSeries {
    let trunc = s.trunc.clone();
    let mut acc = PuiseuxSeries::constant(s.var_name().to_string(), coeff(0), trunc.clone());
    let mut s_pow = PuiseuxSeries::constant(s.var_name().to_string(), Rat::one(), trunc.clone());
    let mut k = 0u32;
    loop {
        k += 1;
        s_pow = s_pow.mul(s);
        if s_pow.valuation() >= trunc {
            break;
        }
        let c = coeff(k);
        if !c.is_zero() {
            acc = acc.add(&s_pow.scale(&c));
        }
        if k > 4096 {
            break;
        }
    }
    acc
}

fn factorial(n: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

fn sin_coeff(k: u32) -> Rat {
    if k % 2 == 0 {
        Rat::zero()
    } else {
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        Rat::new(BigInt::from(sign), factorial(k))
    }
}

fn cos_coeff(k: u32) -> Rat {
    if k % 2 == 1 {
        Rat::zero()
    } else {
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        Rat::new(BigInt::from(sign), factorial(k))
    }
}

fn exp_coeff(k: u32) -> Rat {
    Rat::new(BigInt::one(), factorial(k))
}

/// Expands an expression univariate in `var` as a Puiseux series around
/// t -> 0+ to the given working order. Internal result may carry negative
/// exponents; the public wrapper reports them as poles.
pub fn expand_raw(e: &Expr, var: &str, order: &Rat) -> Result<PuiseuxSeries, SeriesError> {
    match e {
        Expr::Const(c) => Ok(PuiseuxSeries::constant(var, c.clone(), order.clone())),
        Expr::Var(v) => {
            if v == var {
                Ok(PuiseuxSeries::monomial(
                    var,
                    Rat::one(),
                    Rat::one(),
                    order.clone(),
                ))
            } else {
                Err(SeriesError::NotUnivariate {
                    expected: var.to_string(),
                    found: v.clone(),
                })
            }
        }
        Expr::Add(ts) => {
            let mut acc = PuiseuxSeries::zero(var, order.clone());
            for t in ts {
                acc = acc.add(&expand_raw(t, var, order)?);
            }
            Ok(acc)
        }
        Expr::Mul(fs) => {
            let mut acc = PuiseuxSeries::constant(var, Rat::one(), order.clone());
            for f in fs {
                acc = acc.mul(&expand_raw(f, var, order)?);
            }
            Ok(acc)
        }
        Expr::Pow(b, r) => expand_raw(b, var, order)?.pow(r),
        Expr::Neg(inner) => Ok(expand_raw(inner, var, order)?.neg()),
        Expr::Func(f, a) => {
            let s = expand_raw(a, var, order)?;
            apply_func_series(*f, s)
        }
    }
}

fn apply_func_series(f: Func, s: PuiseuxSeries) -> Result<PuiseuxSeries, SeriesError> {
    let val = s.valuation();
    match f {
        Func::Abs => {
            return Ok(match s.leading() {
                Some((_, c)) if c.is_negative() => s.neg(),
                _ => s,
            });
        }
        Func::Sqrt => {
            if let Some((_, c)) = s.leading() {
                if c.is_negative() {
                    return Err(SeriesError::FunctionDomain(
                        "sqrt of a series negative near 0+".to_string(),
                    ));
                }
            }
            return s.pow(&crate::rat::rat(1, 2));
        }
        _ => {}
    }
    if val.is_negative() {
        return Err(SeriesError::EssentialSingularity(format!(
            "{}({}...) with negative inner exponent {}",
            f.name(),
            s.var_name(),
            val
        )));
    }
    if val.is_zero() {
        // composition at a nonzero constant would need irrational values
        // (sin c, exp c); split off the constant only when it is zero
        return Err(SeriesError::IrrationalCoefficient(format!(
            "{} of a series with nonzero constant term",
            f.name()
        )));
    }
    Ok(match f {
        Func::Sin => compose_analytic(&s, sin_coeff),
        Func::Cos => compose_analytic(&s, cos_coeff),
        Func::Exp => compose_analytic(&s, exp_coeff),
        Func::Tan => {
            let sin = compose_analytic(&s, sin_coeff);
            let cos = compose_analytic(&s, cos_coeff);
            sin.mul(&cos.recip()?)
        }
        Func::Sec => compose_analytic(&s, cos_coeff).recip()?,
        Func::Sqrt | Func::Abs => unreachable!(),
    })
}

/// Public expansion: truncated series whose evaluation differs from the
/// expression by O(t^order) as t -> 0+. A negative leading exponent is an
/// error (pole reported, not hidden).
pub fn puiseux_expand(e: &Expr, var: &str, order: &Rat) -> Result<PuiseuxSeries, SeriesError> {
    let s = expand_adaptive(e, var, order)?;
    if let Some((exp, _)) = s.leading() {
        if exp.is_negative() {
            return Err(SeriesError::NegativeLeadingExponent {
                exponent: exp.clone(),
            });
        }
    }
    Ok(s)
}

/// Expansion with the working order doubled up to four times whenever
/// cancellation leaves the series zero to working order (or a division hits
/// a zero-to-order denominator) while the expression is not structurally
/// zero.
pub fn expand_adaptive(e: &Expr, var: &str, base_order: &Rat) -> Result<PuiseuxSeries, SeriesError> {
    if e.is_zero() {
        return Ok(PuiseuxSeries::zero(var, base_order.clone()));
    }
    let mut order = base_order.clone();
    if order <= Rat::zero() {
        order = rat_int(2);
    }
    let mut last_err: Option<SeriesError> = None;
    for attempt in 0..5 {
        match expand_raw(e, var, &order) {
            Ok(s) => {
                if !s.is_zero_to_order() {
                    return Ok(s);
                }
                last_err = None;
            }
            Err(err) if err.retryable() => last_err = Some(err),
            Err(err) => return Err(err),
        }
        if attempt < 4 {
            order = order * rat_int(2);
        }
    }
    match last_err {
        Some(err) => Err(err),
        None => Err(SeriesError::TruncationUnreachable { achieved: order }),
    }
}

/// Default working order for a quotient: twice the denominator's total
/// degree plus two, falling back to 8 for non-polynomial denominators.
pub fn default_order(den: &Expr) -> Rat {
    match crate::expr::as_polynomial(den) {
        Some(ms) if !ms.is_empty() => {
            let d = crate::expr::total_degree(&ms);
            let two = rat_int(2);
            let ord = d * two.clone() + two;
            ord.max(rat_int(4))
        }
        _ => rat_int(8),
    }
}

/// Rescales t -> t^k (k a positive integer), clearing fractional exponents
/// when k is the lcm of the exponent denominators.
pub fn rescale_exponents(s: &PuiseuxSeries, k: &BigInt) -> PuiseuxSeries {
    let factor = Rat::from_integer(k.clone());
    PuiseuxSeries {
        var: s.var.clone(),
        terms: s
            .terms
            .iter()
            .map(|(e, c)| (e.clone() * factor.clone(), c.clone()))
            .collect(),
        trunc: s.trunc.clone() * factor,
    }
}
