//! Immutable expression trees over exact rationals.
//!
//! An [`Expr`] is built from rational constants, variables, n-ary sums and
//! products, rational powers, and a fixed set of analytic functions. Every
//! public constructor canonicalizes, so structural equality is decidable:
//! sums and products are flattened and sorted under a fixed total order,
//! like terms are collected, and constant subexpressions are folded.
//!
//! Rational powers follow one convention throughout the crate: `x^(p/q)`
//! with even q denotes the real q-th root of |x| raised to p, while odd q
//! keeps the sign of x. Sign-sensitive callers (the curve-probe machinery)
//! own branch enumeration.

mod eval;
mod parse;
mod poly;
mod print;

pub use eval::{evaluate, evaluate_exact, EvalError, Evaluated};
pub use parse::{parse, ParseError};
pub use poly::{as_polynomial, monomial_to_expr, polynomial_to_expr, total_degree, Monomial};

use crate::rat::{is_integer, rat_int, rat_pow_exact, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

/// The fixed analytic function universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sec,
    Exp,
    Sqrt,
    Abs,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sec => "sec",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sec" => Func::Sec,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }
}

/// An expression tree. Canonical-form invariants:
/// - `Add`/`Mul` hold at least two elements and never nest directly;
/// - `Mul` keeps an optional constant coefficient first, remaining factors
///   sorted; `Add` keeps sorted terms with an optional constant last;
/// - `Pow` exponents are nonzero, non-unit rationals in lowest terms;
/// - `Neg` never appears (folded into constants).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Const(Rat),
    Var(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, Rat),
    Neg(Box<Expr>),
    Func(Func, Box<Expr>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Const(Rat::zero())
    }

    pub fn one() -> Expr {
        Expr::Const(Rat::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(rat_int(n))
    }

    pub fn constant(r: Rat) -> Expr {
        Expr::Const(r)
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    /// Canonical sum of the given terms.
    pub fn add(terms: Vec<Expr>) -> Expr {
        canon_add(terms)
    }

    /// Canonical product of the given factors.
    pub fn mul(factors: Vec<Expr>) -> Expr {
        canon_mul(factors)
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        canon_add(vec![a, Expr::neg(b)])
    }

    pub fn neg(e: Expr) -> Expr {
        canon_mul(vec![Expr::int(-1), e])
    }

    /// Canonical power with an exact rational exponent.
    pub fn pow(base: Expr, exponent: Rat) -> Expr {
        canon_pow(base, exponent)
    }

    pub fn func(f: Func, arg: Expr) -> Expr {
        canon_func(f, arg)
    }

    /// Quotient `a / b`, represented as `a * b^(-1)`.
    pub fn div(a: Expr, b: Expr) -> Expr {
        let inv = canon_pow(b, rat_int(-1));
        canon_mul(vec![a, inv])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_one())
    }

    pub fn as_const(&self) -> Option<&Rat> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Rewrites an arbitrary (possibly non-canonical) tree into canonical
    /// form. Idempotent on canonical input.
    pub fn canonicalize(&self) -> Expr {
        self.canonicalize_assuming(&BTreeSet::new())
    }

    /// Canonicalization with a set of variables assumed strictly positive.
    /// The extra knowledge legitimizes exponent merging and nested-power
    /// collapse for those bases, e.g. `(t^12)^(1/4) = t^3` for `t > 0`.
    pub fn canonicalize_assuming(&self, positive: &BTreeSet<String>) -> Expr {
        let ctx = Ctx { positive };
        match self {
            Expr::Const(c) => Expr::Const(c.clone()),
            Expr::Var(v) => Expr::Var(v.clone()),
            Expr::Add(ts) => ctx.add(ts.iter().map(|t| t.canonicalize_assuming(positive)).collect()),
            Expr::Mul(fs) => ctx.mul(fs.iter().map(|f| f.canonicalize_assuming(positive)).collect()),
            Expr::Pow(b, e) => ctx.pow(b.canonicalize_assuming(positive), e.clone()),
            Expr::Neg(e) => {
                let inner = e.canonicalize_assuming(positive);
                ctx.mul(vec![Expr::int(-1), inner])
            }
            Expr::Func(f, a) => ctx.func(*f, a.canonicalize_assuming(positive)),
        }
    }

    /// The exact set of variable names appearing in the expression.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Add(es) | Expr::Mul(es) => {
                for e in es {
                    e.collect_vars(out);
                }
            }
            Expr::Pow(b, _) => b.collect_vars(out),
            Expr::Neg(e) => e.collect_vars(out),
            Expr::Func(_, a) => a.collect_vars(out),
        }
    }

    /// Simultaneous substitution of variables by expressions; the result is
    /// canonical.
    pub fn substitute(&self, bindings: &BTreeMap<String, Expr>) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(c.clone()),
            Expr::Var(v) => match bindings.get(v) {
                Some(e) => e.clone(),
                None => Expr::Var(v.clone()),
            },
            Expr::Add(ts) => Expr::add(ts.iter().map(|t| t.substitute(bindings)).collect()),
            Expr::Mul(fs) => Expr::mul(fs.iter().map(|f| f.substitute(bindings)).collect()),
            Expr::Pow(b, e) => Expr::pow(b.substitute(bindings), e.clone()),
            Expr::Neg(e) => Expr::neg(e.substitute(bindings)),
            Expr::Func(f, a) => Expr::func(*f, a.substitute(bindings)),
        }
    }

    /// Splits a canonical term into (rational coefficient, remaining core).
    /// The core of a constant is 1.
    pub fn split_coefficient(&self) -> (Rat, Expr) {
        match self {
            Expr::Const(c) => (c.clone(), Expr::one()),
            Expr::Mul(fs) => {
                if let Expr::Const(c) = &fs[0] {
                    let rest: Vec<Expr> = fs[1..].to_vec();
                    let core = if rest.len() == 1 {
                        rest.into_iter().next().unwrap()
                    } else {
                        Expr::Mul(rest)
                    };
                    (c.clone(), core)
                } else {
                    (Rat::one(), self.clone())
                }
            }
            _ => (Rat::one(), self.clone()),
        }
    }

    /// Views an expression as (base, exponent), treating non-powers as
    /// exponent 1.
    pub fn as_power(&self) -> (&Expr, Rat) {
        match self {
            Expr::Pow(b, e) => (b, e.clone()),
            other => (other, Rat::one()),
        }
    }

    /// True when the expression is semantically nonnegative by structure
    /// alone: even powers, abs/sqrt/exp/sec^2 shapes, nonnegative constants,
    /// and sums/products of such.
    pub fn is_structurally_nonnegative(&self) -> bool {
        match self {
            Expr::Const(c) => !c.is_negative(),
            Expr::Var(_) => false,
            Expr::Add(ts) => ts.iter().all(|t| t.is_structurally_nonnegative()),
            Expr::Mul(fs) => fs.iter().all(|f| f.is_structurally_nonnegative()),
            Expr::Pow(b, e) => {
                if is_integer(e) && e.numer().is_even() {
                    // even integer exponent
                    true
                } else if !is_integer(e) && e.denom().is_even() {
                    // even root denominator: |base| convention
                    true
                } else {
                    b.is_structurally_nonnegative()
                }
            }
            Expr::Neg(_) => false,
            Expr::Func(f, a) => match f {
                Func::Exp | Func::Abs | Func::Sqrt => true,
                Func::Sin | Func::Cos | Func::Tan | Func::Sec => {
                    let _ = a;
                    false
                }
            },
        }
    }
}

struct Ctx<'a> {
    positive: &'a BTreeSet<String>,
}

impl<'a> Ctx<'a> {
    fn base_is_positive(&self, base: &Expr) -> bool {
        match base {
            Expr::Const(c) => c.is_positive(),
            Expr::Var(v) => self.positive.contains(v),
            Expr::Func(Func::Exp, _) => true,
            Expr::Mul(fs) => fs.iter().all(|f| self.base_is_positive(f)),
            Expr::Pow(b, _) => self.base_is_positive(b),
            _ => false,
        }
    }

    fn add(&self, terms: Vec<Expr>) -> Expr {
        let mut constant = Rat::zero();
        let mut cores: BTreeMap<Expr, Rat> = BTreeMap::new();
        let mut stack = terms;
        while let Some(t) = stack.pop() {
            match t {
                Expr::Add(inner) => stack.extend(inner),
                Expr::Const(c) => constant += c,
                other => {
                    let (coeff, core) = other.split_coefficient();
                    if core.is_one() {
                        constant += coeff;
                    } else {
                        let entry = cores.entry(core).or_insert_with(Rat::zero);
                        *entry += coeff;
                    }
                }
            }
        }
        let mut out: Vec<Expr> = Vec::new();
        let mut items: Vec<(Expr, Rat)> = cores.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        items.sort_by(|a, b| term_cmp(&a.0, &b.0));
        for (core, coeff) in items {
            if coeff.is_one() {
                out.push(core);
            } else {
                out.push(self.mul(vec![Expr::Const(coeff), core]));
            }
        }
        if !constant.is_zero() {
            out.push(Expr::Const(constant));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.into_iter().next().unwrap(),
            _ => Expr::Add(out),
        }
    }

    fn mul(&self, factors: Vec<Expr>) -> Expr {
        let mut coeff = Rat::one();
        // base -> exponents kept separate when merging is unsound
        let mut powers: BTreeMap<Expr, Vec<Rat>> = BTreeMap::new();
        let mut stack = factors;
        while let Some(f) = stack.pop() {
            match f {
                Expr::Mul(inner) => stack.extend(inner),
                Expr::Const(c) => {
                    if c.is_zero() {
                        return Expr::zero();
                    }
                    coeff *= c;
                }
                other => {
                    let (base, exp) = match other {
                        Expr::Pow(b, e) => (*b, e),
                        e => (e, Rat::one()),
                    };
                    let mergeable = self.base_is_positive(&base);
                    let slots = powers.entry(base).or_default();
                    let mut merged = false;
                    for slot in slots.iter_mut() {
                        if mergeable || (is_integer(slot) && is_integer(&exp)) {
                            *slot += exp.clone();
                            merged = true;
                            break;
                        }
                    }
                    if !merged {
                        slots.push(exp);
                    }
                }
            }
        }
        let mut out: Vec<Expr> = Vec::new();
        for (base, exps) in powers {
            for e in exps {
                if e.is_zero() {
                    continue;
                }
                let p = self.pow(base.clone(), e);
                match p {
                    Expr::Const(c) => {
                        if c.is_zero() {
                            return Expr::zero();
                        }
                        coeff *= c;
                    }
                    other => out.push(other),
                }
            }
        }
        out.sort_by(cmp_expr);
        if out.is_empty() {
            return Expr::Const(coeff);
        }
        // distribute a constant coefficient over a sum so linear
        // combinations share one normal form (no general expansion)
        if out.len() == 1 && !coeff.is_one() {
            if let Expr::Add(terms) = &out[0] {
                let scaled: Vec<Expr> = terms
                    .iter()
                    .map(|t| self.mul(vec![Expr::Const(coeff.clone()), t.clone()]))
                    .collect();
                return self.add(scaled);
            }
        }
        if !coeff.is_one() {
            out.insert(0, Expr::Const(coeff));
        }
        if out.len() == 1 {
            out.into_iter().next().unwrap()
        } else {
            Expr::Mul(out)
        }
    }

    fn pow(&self, base: Expr, exponent: Rat) -> Expr {
        if exponent.is_zero() {
            return Expr::one();
        }
        if exponent.is_one() {
            return base;
        }
        match base {
            Expr::Const(c) => {
                if let Some(v) = rat_pow_exact(&c, &exponent) {
                    return Expr::Const(v);
                }
                // even-q powers see only |c|
                let c = if c.is_negative() && exponent.denom().is_even() {
                    -c
                } else {
                    c
                };
                Expr::Pow(Box::new(Expr::Const(c)), exponent)
            }
            Expr::Mul(fs) => {
                // (ab)^r = a^r * b^r: for even q both sides see |ab| = |a||b|,
                // for odd q signs multiply through.
                let parts: Vec<Expr> = fs
                    .into_iter()
                    .map(|f| self.pow(f, exponent.clone()))
                    .collect();
                self.mul(parts)
            }
            Expr::Pow(inner, inner_exp) => {
                // x^r = sign(x)^s(r) * |x|^r with s(r) = 1 iff numerator and
                // denominator of r are both odd. (x^a)^b = x^(ab) is sound
                // exactly when the sign parities compose the same way.
                let sa = keeps_sign(&inner_exp);
                let sb = keeps_sign(&exponent);
                let ab = inner_exp * exponent.clone();
                let sab = keeps_sign(&ab);
                let collapse = self.base_is_positive(&inner)
                    || (!sa && !sab)
                    || (sa && sb == sab);
                if collapse {
                    self.pow(*inner, ab)
                } else {
                    let orig = ab / exponent.clone();
                    Expr::Pow(Box::new(Expr::Pow(inner, orig)), exponent)
                }
            }
            Expr::Func(Func::Abs, inner) => {
                // |x|^(p/q) with even q or even integer p equals x^(p/q)
                let even_int = is_integer(&exponent) && exponent.numer().is_even();
                let even_den = !is_integer(&exponent) && exponent.denom().is_even();
                if even_int || even_den {
                    self.pow(*inner, exponent)
                } else {
                    Expr::Pow(Box::new(Expr::Func(Func::Abs, inner)), exponent)
                }
            }
            other => Expr::Pow(Box::new(other), exponent),
        }
    }

    fn func(&self, f: Func, arg: Expr) -> Expr {
        if let Expr::Const(c) = &arg {
            match f {
                Func::Sin | Func::Tan if c.is_zero() => return Expr::zero(),
                Func::Cos | Func::Sec | Func::Exp if c.is_zero() => return Expr::one(),
                Func::Sqrt => {
                    if !c.is_negative() {
                        if let Some(r) = rat_pow_exact(c, &crate::rat::rat(1, 2)) {
                            return Expr::Const(r);
                        }
                    }
                }
                Func::Abs => return Expr::Const(c.abs()),
                _ => {}
            }
        }
        if f == Func::Abs {
            if arg.is_structurally_nonnegative() {
                return arg;
            }
            if let Expr::Func(Func::Abs, _) = arg {
                return arg;
            }
            // |c * core| = |c| * |core|
            let (coeff, core) = arg.split_coefficient();
            if !coeff.is_one() && !core.is_one() {
                let abs_core = self.func(Func::Abs, core);
                return self.mul(vec![Expr::Const(coeff.abs()), abs_core]);
            }
        }
        Expr::Func(f, Box::new(arg))
    }
}

fn canon_add(terms: Vec<Expr>) -> Expr {
    Ctx { positive: &BTreeSet::new() }.add(terms)
}

fn canon_mul(factors: Vec<Expr>) -> Expr {
    Ctx { positive: &BTreeSet::new() }.mul(factors)
}

fn canon_pow(base: Expr, exponent: Rat) -> Expr {
    Ctx { positive: &BTreeSet::new() }.pow(base, exponent)
}

fn canon_func(f: Func, arg: Expr) -> Expr {
    Ctx { positive: &BTreeSet::new() }.func(f, arg)
}

/// True when x^r carries the sign of x (numerator and denominator of r
/// both odd); false when the power sees only |x|.
fn keeps_sign(r: &Rat) -> bool {
    r.numer().is_odd() && r.denom().is_odd()
}

fn variant_rank(e: &Expr) -> u8 {
    match e {
        Expr::Var(_) => 0,
        Expr::Func(..) => 1,
        Expr::Pow(..) => 2,
        Expr::Add(_) => 3,
        Expr::Mul(_) => 4,
        Expr::Neg(_) => 5,
        Expr::Const(_) => 6,
    }
}

/// The fixed display/storage order: compare as (base, exponent) atoms with
/// bases ordered name-lexicographically and exponents descending, so `x^3`
/// sorts before `x^2` before `x*y` before `y`.
pub fn cmp_expr(a: &Expr, b: &Expr) -> Ordering {
    let (ba, ea) = a.as_power();
    let (bb, eb) = b.as_power();
    cmp_base(ba, bb).then_with(|| eb.cmp(&ea))
}

fn cmp_base(a: &Expr, b: &Expr) -> Ordering {
    let (ra, rb) = (variant_rank(a), variant_rank(b));
    if ra != rb {
        return ra.cmp(&rb);
    }
    match (a, b) {
        (Expr::Var(x), Expr::Var(y)) => x.cmp(y),
        (Expr::Func(f, x), Expr::Func(g, y)) => f.cmp(g).then_with(|| cmp_expr(x, y)),
        (Expr::Pow(b1, e1), Expr::Pow(b2, e2)) => cmp_base(b1, b2).then_with(|| e2.cmp(e1)),
        (Expr::Add(xs), Expr::Add(ys)) => cmp_list(xs, ys),
        (Expr::Mul(xs), Expr::Mul(ys)) => cmp_list(xs, ys),
        (Expr::Neg(x), Expr::Neg(y)) => cmp_expr(x, y),
        (Expr::Const(x), Expr::Const(y)) => x.cmp(y),
        _ => Ordering::Equal,
    }
}

fn cmp_list(xs: &[Expr], ys: &[Expr]) -> Ordering {
    for (x, y) in xs.iter().zip(ys.iter()) {
        let c = cmp_expr(x, y);
        if c != Ordering::Equal {
            return c;
        }
    }
    // longer factor lists first on a shared prefix (missing factor = power 0)
    ys.len().cmp(&xs.len())
}

/// Ordering for additive terms: compare coefficient-stripped factor
/// sequences lexicographically.
pub fn term_cmp(a: &Expr, b: &Expr) -> Ordering {
    let (_, ca) = a.split_coefficient();
    let (_, cb) = b.split_coefficient();
    let fa = factor_seq(&ca);
    let fb = factor_seq(&cb);
    for (x, y) in fa.iter().zip(fb.iter()) {
        let c = cmp_expr(x, y);
        if c != Ordering::Equal {
            return c;
        }
    }
    fb.len().cmp(&fa.len())
}

fn factor_seq(core: &Expr) -> Vec<Expr> {
    match core {
        Expr::Mul(fs) => fs.iter().filter(|f| f.as_const().is_none()).cloned().collect(),
        other => vec![other.clone()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn x() -> Expr {
        Expr::var("x")
    }
    fn y() -> Expr {
        Expr::var("y")
    }

    #[test]
    fn add_collects_like_terms() {
        let e = Expr::add(vec![x(), x(), y()]);
        assert_eq!(e, Expr::add(vec![Expr::mul(vec![Expr::int(2), x()]), y()]));
        let z = Expr::sub(x(), x());
        assert!(z.is_zero());
    }

    #[test]
    fn sin_difference_cancels() {
        let a = Expr::func(Func::Sin, Expr::var("s"));
        let b = Expr::func(Func::Sin, Expr::var("s"));
        assert!(Expr::sub(a, b).is_zero());
    }

    #[test]
    fn mul_merges_integer_exponents() {
        let e = Expr::mul(vec![x(), Expr::pow(x(), rat_int(3))]);
        assert_eq!(e, Expr::pow(x(), rat_int(4)));
        let cancel = Expr::mul(vec![Expr::pow(x(), rat_int(4)), Expr::pow(x(), rat_int(-4))]);
        assert!(cancel.is_one());
    }

    #[test]
    fn fractional_exponents_not_merged_without_positivity() {
        // x^(1/2) * x^(1/2) = |x| under the convention, not x
        let h = Expr::pow(x(), rat(1, 2));
        let e = Expr::mul(vec![h.clone(), h]);
        match &e {
            Expr::Mul(fs) => assert_eq!(fs.len(), 2),
            other => panic!("expected unmerged product, got {other:?}"),
        }
    }

    #[test]
    fn positivity_context_merges_and_collapses() {
        let mut pos = BTreeSet::new();
        pos.insert("t".to_string());
        let t = Expr::var("t");
        let nested = Expr::Pow(
            Box::new(Expr::Pow(Box::new(t.clone()), rat_int(12))),
            rat(1, 4),
        );
        assert_eq!(
            nested.canonicalize_assuming(&pos),
            Expr::pow(t.clone(), rat_int(3))
        );
        let raw = Expr::Mul(vec![
            Expr::Pow(Box::new(t.clone()), rat(1, 2)),
            Expr::Pow(Box::new(t.clone()), rat(1, 2)),
        ]);
        assert_eq!(raw.canonicalize_assuming(&pos), t);
    }

    #[test]
    fn quotient_cancellation() {
        // x^2 * x^2 / (x^4 + x^4) = 1/2
        let num = Expr::mul(vec![Expr::pow(x(), rat_int(2)), Expr::pow(x(), rat_int(2))]);
        let den = Expr::add(vec![Expr::pow(x(), rat_int(4)), Expr::pow(x(), rat_int(4))]);
        let q = Expr::div(num, den);
        assert_eq!(q, Expr::constant(rat(1, 2)));
    }

    #[test]
    fn pow_distributes_over_products() {
        let e = Expr::pow(Expr::mul(vec![Expr::int(2), x()]), rat_int(-1));
        assert_eq!(
            e,
            Expr::mul(vec![Expr::constant(rat(1, 2)), Expr::pow(x(), rat_int(-1))])
        );
    }

    #[test]
    fn term_ordering_is_name_then_exponent_descending() {
        let e = Expr::add(vec![
            Expr::pow(y(), rat_int(3)),
            Expr::mul(vec![Expr::pow(x(), rat_int(2)), y()]),
            Expr::pow(x(), rat_int(3)),
        ]);
        match &e {
            Expr::Add(ts) => {
                assert_eq!(ts[0], Expr::pow(x(), rat_int(3)));
                assert_eq!(ts[1], Expr::mul(vec![Expr::pow(x(), rat_int(2)), y()]));
                assert_eq!(ts[2], Expr::pow(y(), rat_int(3)));
            }
            other => panic!("expected sum, got {other:?}"),
        }
    }

    #[test]
    fn substitution_is_simultaneous() {
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), y());
        b.insert("y".to_string(), x());
        let e = Expr::add(vec![x(), Expr::mul(vec![Expr::int(2), y()])]);
        let s = e.substitute(&b);
        assert_eq!(s, Expr::add(vec![y(), Expr::mul(vec![Expr::int(2), x()])]));
    }

    #[test]
    fn abs_of_nonnegative_simplifies() {
        let sq = Expr::pow(x(), rat_int(2));
        assert_eq!(Expr::func(Func::Abs, sq.clone()), sq);
        let negred = Expr::func(Func::Abs, Expr::mul(vec![Expr::int(-3), x()]));
        assert_eq!(
            negred,
            Expr::mul(vec![Expr::int(3), Expr::func(Func::Abs, x())])
        );
    }
}
