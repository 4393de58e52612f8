//! Rational interval arithmetic with Taylor-remainder enclosures.
//!
//! Used to prove, with exact arithmetic, that an expression cannot vanish
//! on a box around the approach point (the `D_v g != 0` hypothesis of the
//! directional rule). Trig and exponential enclosures are only attempted
//! for arguments inside [-1, 1], which covers the radius-1/4 neighborhoods
//! the resolvers work in; anything wider falls back to sampling.

use crate::expr::{Expr, Func};
use crate::rat::{is_integer, rat_int, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// A closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Interval {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: Rat) -> Interval {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    fn add(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone() + other.lo.clone(),
            self.hi.clone() + other.hi.clone(),
        )
    }

    fn neg(&self) -> Interval {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }

    fn mul(&self, other: &Interval) -> Interval {
        let candidates = [
            self.lo.clone() * other.lo.clone(),
            self.lo.clone() * other.hi.clone(),
            self.hi.clone() * other.lo.clone(),
            self.hi.clone() * other.hi.clone(),
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval::new(Rat::zero(), self.lo.abs().max(self.hi.abs()))
        }
    }

    fn powi(&self, k: &BigInt) -> Option<Interval> {
        if k.is_zero() {
            return Some(Interval::point(Rat::one()));
        }
        let kk = k.abs().to_u32()?;
        if kk > 64 {
            return None;
        }
        let out = if kk % 2 == 0 && self.contains_zero() {
            // even power straddling zero: [0, max(|lo|,|hi|)^k]
            let m = self.lo.abs().max(self.hi.abs());
            let mut top = Rat::one();
            for _ in 0..kk {
                top *= m.clone();
            }
            Interval::new(Rat::zero(), top)
        } else {
            // sign-definite base (after reflecting even powers of a
            // negative interval) is monotone under repeated multiplication
            let base = if kk % 2 == 0 && self.hi.is_negative() {
                self.neg()
            } else {
                self.clone()
            };
            let mut acc = Interval::point(Rat::one());
            for _ in 0..kk {
                acc = acc.mul(&base);
            }
            acc
        };
        if k.is_negative() {
            return out.recip();
        }
        Some(out)
    }
}

/// Lower/upper rational bounds of the q-th root by bisection; exactness is
/// not needed, only correct outward rounding.
fn root_bounds(x: &Rat, q: u32, iters: u32) -> (Rat, Rat) {
    debug_assert!(!x.is_negative());
    if x.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let mut lo = Rat::zero();
    let mut hi = x.clone().max(Rat::one());
    for _ in 0..iters {
        let mid = (lo.clone() + hi.clone()) / rat_int(2);
        let mut p = Rat::one();
        for _ in 0..q {
            p *= mid.clone();
        }
        if p <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn alternating_bounds(x: &Rat, coeff: impl Fn(u32) -> Rat, terms: u32) -> (Rat, Rat) {
    // consecutive partial sums (at nonzero terms) of an alternating series
    // with decreasing terms bracket the value; valid for |x| <= 1 with
    // factorial decay
    let mut s = Rat::zero();
    let mut prev = Rat::zero();
    let mut xpow = Rat::one();
    for k in 0..terms {
        let c = coeff(k);
        if !c.is_zero() {
            prev = s.clone();
            s += c * xpow.clone();
        }
        xpow *= x.clone();
    }
    if s <= prev {
        (s, prev)
    } else {
        (prev, s)
    }
}

fn sin_bounds(x: &Rat) -> (Rat, Rat) {
    let c = |k: u32| -> Rat {
        if k % 2 == 1 {
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            Rat::new(BigInt::from(sign), factorial(k))
        } else {
            Rat::zero()
        }
    };
    alternating_bounds(x, c, 14)
}

fn cos_bounds(x: &Rat) -> (Rat, Rat) {
    let c = |k: u32| -> Rat {
        if k % 2 == 0 {
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            Rat::new(BigInt::from(sign), factorial(k))
        } else {
            Rat::zero()
        }
    };
    alternating_bounds(x, c, 14)
}

fn exp_bounds(x: &Rat) -> (Rat, Rat) {
    // |x| <= 1: remainder after n terms bounded by 2 |x|^(n+1)/(n+1)!
    let n = 12u32;
    let mut s = Rat::zero();
    let mut xpow = Rat::one();
    for k in 0..=n {
        s += Rat::new(BigInt::one(), factorial(k)) * xpow.clone();
        xpow *= x.clone();
    }
    let rem = Rat::new(BigInt::from(2), factorial(n + 1)) * xpow.abs();
    (s.clone() - rem.clone(), s + rem)
}

fn factorial(n: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

fn unit_box(i: &Interval) -> bool {
    i.lo >= rat_int(-1) && i.hi <= rat_int(1)
}

/// Monotone enclosure via endpoint bounds.
fn monotone(i: &Interval, f: impl Fn(&Rat) -> (Rat, Rat)) -> Interval {
    let (lo, _) = f(&i.lo);
    let (_, hi) = f(&i.hi);
    Interval::new(lo, hi)
}

fn sin_interval(i: &Interval) -> Option<Interval> {
    if !unit_box(i) {
        return None;
    }
    // sin is increasing on [-1, 1]
    Some(monotone(i, sin_bounds))
}

fn cos_interval(i: &Interval) -> Option<Interval> {
    if !unit_box(i) {
        return None;
    }
    // cos decreases in |x| on [-1, 1]
    let far = i.lo.abs().max(i.hi.abs());
    let (lo, _) = cos_bounds(&far);
    let hi = if i.contains_zero() {
        Rat::one()
    } else {
        let near = i.lo.abs().min(i.hi.abs());
        cos_bounds(&near).1
    };
    Some(Interval::new(lo, hi.min(Rat::one())))
}

/// Encloses the expression over the box, or `None` when some enclosure is
/// unavailable (argument out of range, irrational corner, poles).
pub fn eval_interval(e: &Expr, box_env: &BTreeMap<String, Interval>) -> Option<Interval> {
    match e {
        Expr::Const(c) => Some(Interval::point(c.clone())),
        Expr::Var(v) => box_env.get(v).cloned(),
        Expr::Add(ts) => {
            let mut acc = Interval::point(Rat::zero());
            for t in ts {
                acc = acc.add(&eval_interval(t, box_env)?);
            }
            Some(acc)
        }
        Expr::Mul(fs) => {
            let mut acc = Interval::point(Rat::one());
            for f in fs {
                acc = acc.mul(&eval_interval(f, box_env)?);
            }
            Some(acc)
        }
        Expr::Pow(b, r) => {
            let base = eval_interval(b, box_env)?;
            if is_integer(r) {
                return base.powi(r.numer());
            }
            // x^(p/q): even q acts on |x|; odd q needs a sign-definite base
            let q = r.denom().to_u32()?;
            let p = r.numer().clone();
            let magnitude = base.abs();
            if p.is_negative() && magnitude.contains_zero() {
                return None;
            }
            let (rlo_lo, _) = root_bounds(&magnitude.lo, q, 48);
            let (_, rhi_hi) = root_bounds(&magnitude.hi, q, 48);
            let rooted = Interval::new(rlo_lo, rhi_hi);
            let powered = rooted.powi(&p)?;
            if q % 2 == 1 && base.hi.is_negative() {
                // negative base, odd root: sign(base)^p
                return Some(if p.is_odd() { powered.neg() } else { powered });
            }
            if q % 2 == 1 && base.contains_zero() && !p.is_even() {
                // sign varies across the box
                let top = powered.lo.abs().max(powered.hi.abs());
                return Some(Interval::new(-top.clone(), top));
            }
            Some(powered)
        }
        Expr::Neg(inner) => Some(eval_interval(inner, box_env)?.neg()),
        Expr::Func(f, a) => {
            let arg = eval_interval(a, box_env)?;
            match f {
                Func::Sin => sin_interval(&arg),
                Func::Cos => cos_interval(&arg),
                Func::Tan => {
                    let s = sin_interval(&arg)?;
                    let c = cos_interval(&arg)?;
                    Some(s.mul(&c.recip()?))
                }
                Func::Sec => cos_interval(&arg)?.recip(),
                Func::Exp => {
                    if !unit_box(&arg) {
                        return None;
                    }
                    Some(monotone(&arg, exp_bounds))
                }
                Func::Sqrt => {
                    if arg.lo.is_negative() {
                        return None;
                    }
                    let (lo, _) = root_bounds(&arg.lo, 2, 48);
                    let (_, hi) = root_bounds(&arg.hi, 2, 48);
                    Some(Interval::new(lo, hi))
                }
                Func::Abs => Some(arg.abs()),
            }
        }
    }
}

/// Attempts an exact proof that `e` is nonzero everywhere on the box
/// `|x_j - p_j| <= radius`. Returns the separating interval on success.
pub fn prove_nonvanishing_on_box(
    e: &Expr,
    vars: &[String],
    center: &BTreeMap<String, Rat>,
    radius: &Rat,
) -> Option<Interval> {
    let mut box_env = BTreeMap::new();
    for v in vars {
        let c = center.get(v).cloned().unwrap_or_else(Rat::zero);
        box_env.insert(
            v.clone(),
            Interval::new(c.clone() - radius.clone(), c + radius.clone()),
        );
    }
    let enclosure = eval_interval(e, &box_env)?;
    if enclosure.contains_zero() {
        None
    } else {
        Some(enclosure)
    }
}
