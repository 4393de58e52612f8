//! Sparse polynomial view of an expression: exponent-vector monomials with
//! exact rational coefficients. Expansion distributes products over sums
//! and collects like terms.

use super::Expr;
use crate::rat::{is_integer, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// `coeff * prod_v v^exps[v]` with nonzero coefficient; zero exponents are
/// omitted. Exponents are rationals (fractional powers of single variables
/// are representable), nonnegative in the polynomial view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rat,
    pub exps: BTreeMap<String, Rat>,
}

impl Monomial {
    pub fn constant(c: Rat) -> Monomial {
        Monomial {
            coeff: c,
            exps: BTreeMap::new(),
        }
    }

    pub fn exponent(&self, var: &str) -> Rat {
        self.exps.get(var).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Rat {
        let mut d = Rat::zero();
        for e in self.exps.values() {
            d += e.clone();
        }
        d
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            let entry = exps.entry(v.clone()).or_insert_with(Rat::zero);
            *entry += e.clone();
        }
        exps.retain(|_, e| !e.is_zero());
        Monomial {
            coeff: self.coeff.clone() * other.coeff.clone(),
            exps,
        }
    }
}

pub fn total_degree(monomials: &[Monomial]) -> Rat {
    monomials
        .iter()
        .map(Monomial::total_degree)
        .max()
        .unwrap_or_else(Rat::zero)
}

/// Returns the expanded monomial list iff the expression is a polynomial
/// with rational-power monomials (exponents >= 0) and rational coefficients.
pub fn as_polynomial(e: &Expr) -> Option<Vec<Monomial>> {
    let raw = expand(e)?;
    Some(collect(raw))
}

fn expand(e: &Expr) -> Option<Vec<Monomial>> {
    match e {
        Expr::Const(c) => Some(if c.is_zero() {
            vec![]
        } else {
            vec![Monomial::constant(c.clone())]
        }),
        Expr::Var(v) => {
            let mut exps = BTreeMap::new();
            exps.insert(v.clone(), Rat::one());
            Some(vec![Monomial {
                coeff: Rat::one(),
                exps,
            }])
        }
        Expr::Add(ts) => {
            let mut out = Vec::new();
            for t in ts {
                out.extend(expand(t)?);
            }
            Some(out)
        }
        Expr::Mul(fs) => {
            let mut acc = vec![Monomial::constant(Rat::one())];
            for f in fs {
                let rhs = expand(f)?;
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for a in &acc {
                    for b in &rhs {
                        next.push(a.mul(b));
                    }
                }
                acc = collect(next);
            }
            Some(acc)
        }
        Expr::Pow(b, exp) => {
            if exp.is_negative() {
                return None;
            }
            if is_integer(exp) {
                let k = exp.numer().to_u32()?;
                if k > 512 {
                    return None;
                }
                let base = expand(b)?;
                let mut acc = vec![Monomial::constant(Rat::one())];
                for _ in 0..k {
                    let mut next = Vec::with_capacity(acc.len() * base.len());
                    for a in &acc {
                        for m in &base {
                            next.push(a.mul(m));
                        }
                    }
                    acc = collect(next);
                }
                return Some(acc);
            }
            // fractional power: sound only on a bare variable, where the
            // monomial evaluation convention matches the Pow convention
            if let Expr::Var(v) = b.as_ref() {
                let mut exps = BTreeMap::new();
                exps.insert(v.clone(), exp.clone());
                return Some(vec![Monomial {
                    coeff: Rat::one(),
                    exps,
                }]);
            }
            None
        }
        Expr::Neg(inner) => {
            let ms = expand(inner)?;
            Some(
                ms.into_iter()
                    .map(|mut m| {
                        m.coeff = -m.coeff;
                        m
                    })
                    .collect(),
            )
        }
        Expr::Func(..) => None,
    }
}

fn collect(raw: Vec<Monomial>) -> Vec<Monomial> {
    let mut map: BTreeMap<BTreeMap<String, Rat>, Rat> = BTreeMap::new();
    for m in raw {
        let entry = map.entry(m.exps).or_insert_with(Rat::zero);
        *entry += m.coeff;
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(exps, coeff)| Monomial { coeff, exps })
        .collect()
}

pub fn monomial_to_expr(m: &Monomial) -> Expr {
    let mut factors = vec![Expr::Const(m.coeff.clone())];
    for (v, e) in &m.exps {
        factors.push(Expr::pow(Expr::var(v.clone()), e.clone()));
    }
    Expr::mul(factors)
}

pub fn polynomial_to_expr(ms: &[Monomial]) -> Expr {
    Expr::add(ms.iter().map(monomial_to_expr).collect())
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::rat::{rat, rat_int};

    fn exps(pairs: &[(&str, i64)]) -> BTreeMap<String, Rat> {
        pairs
            .iter()
            .map(|(v, e)| (v.to_string(), rat_int(*e)))
            .collect()
    }

    #[test]
    fn sextic_example() {
        let ms = as_polynomial(&parse("x^6+x^2*y^2+y^6").unwrap()).unwrap();
        assert_eq!(ms.len(), 3);
        assert!(ms
            .iter()
            .any(|m| m.coeff == rat_int(1) && m.exps == exps(&[("x", 2), ("y", 2)])));
    }

    #[test]
    fn non_polynomial() {
        assert!(as_polynomial(&parse("sin(x)+y").unwrap()).is_none());
        assert!(as_polynomial(&parse("1/x").unwrap()).is_none());
    }

    #[test]
    fn binomial_expansion() {
        let ms = as_polynomial(&parse("(x+y)^2").unwrap()).unwrap();
        assert_eq!(ms.len(), 3);
        let mixed = ms
            .iter()
            .find(|m| m.exps == exps(&[("x", 1), ("y", 1)]))
            .unwrap();
        assert_eq!(mixed.coeff, rat_int(2));
    }

    #[test]
    fn fractional_single_variable() {
        let ms = as_polynomial(&parse("x^(5/2)").unwrap()).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].exponent("x"), rat(5, 2));
        // fractional power of a composite is rejected
        assert!(as_polynomial(&parse("(x+y)^(1/2)").unwrap()).is_none());
    }

    #[test]
    fn roundtrip_to_expr() {
        let e = parse("7*x^2*y*z^5+x*y^3-3*x^4*y*z").unwrap();
        let ms = as_polynomial(&e).unwrap();
        assert_eq!(polynomial_to_expr(&ms), e);
    }
}
