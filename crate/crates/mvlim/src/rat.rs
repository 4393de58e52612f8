//! Exact rational arithmetic helpers shared across the crate.
//!
//! All symbolic coefficients and exponents are arbitrary-precision
//! rationals; floating point is confined to the numeric oracle.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = num_rational::BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p", "-p" or "p/q" (optionally signed) into an exact rational.
/// Decimal notation is rejected; the pipeline is exact end to end.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    if s.contains('.') {
        return Err(format!("decimal notation not accepted: {s:?} (use p/q)"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| format!("invalid integer {num_str:?}"))?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| format!("invalid integer {d:?}"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(num, den))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact integer power; `None` for 0 raised to a negative exponent.
pub fn rat_pow_int(base: &Rat, exp: &BigInt) -> Option<Rat> {
    if exp.is_zero() {
        return Some(Rat::one());
    }
    if base.is_zero() {
        return if exp.is_negative() { None } else { Some(Rat::zero()) };
    }
    let e_u32 = exp.abs().to_u32()?;
    let mut out = Rat::new(base.numer().pow(e_u32), base.denom().pow(e_u32));
    if exp.is_negative() {
        out = out.recip();
    }
    Some(out)
}

/// Exact nonnegative q-th root when the argument is a perfect q-th power.
fn root_exact_nonneg(x: &Rat, q: u32) -> Option<Rat> {
    debug_assert!(!x.is_negative());
    let rn = x.numer().nth_root(q);
    let rd = x.denom().nth_root(q);
    if &rn.pow(q) == x.numer() && &rd.pow(q) == x.denom() {
        Some(Rat::new(rn, rd))
    } else {
        None
    }
}

/// Evaluates `base^(p/q)` exactly under the crate's real-power convention:
/// even q acts on |base|, odd q keeps the sign of the base. Returns `None`
/// when the value is irrational or undefined (0 to a negative power).
pub fn rat_pow_exact(base: &Rat, exp: &Rat) -> Option<Rat> {
    if is_integer(exp) {
        return rat_pow_int(base, exp.numer());
    }
    let p = exp.numer().clone();
    let q = exp.denom().to_u32()?;
    if base.is_zero() {
        return if p.is_negative() { None } else { Some(Rat::zero()) };
    }
    let root = root_exact_nonneg(&base.abs(), q)?;
    let signed_root = if base.is_negative() && q % 2 == 1 {
        -root
    } else {
        root
    };
    rat_pow_int(&signed_root, &p)
}

/// Least common multiple of the exponent denominators, used to rescale
/// fractional-power parameterizations to integer powers of t.
pub fn lcm_of_denominators<'a>(exps: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut l = BigInt::one();
    for e in exps {
        l = l.lcm(e.denom());
    }
    l
}

pub fn rat_from_bigint(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Positive content of a set of rationals: gcd of the numerators over the
/// lcm of the denominators, so that dividing by it leaves integer
/// coefficients with gcd 1.
pub fn rational_content<'a>(vals: impl Iterator<Item = &'a Rat>) -> Rat {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for v in vals {
        num_gcd = num_gcd.gcd(&v.numer().abs());
        den_lcm = den_lcm.lcm(v.denom());
    }
    if num_gcd.is_zero() {
        return Rat::one();
    }
    Rat::new(num_gcd, den_lcm)
}

pub fn bigint_sign(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
