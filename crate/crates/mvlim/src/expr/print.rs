//! Canonical printer. Output re-parses to the same canonical form.

use super::{Expr, Func};
use crate::rat::{is_integer, Rat};
use num_traits::{One, Signed};
use std::fmt;

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, f)
    }
}

fn write_expr(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Add(terms) => {
            for (i, t) in terms.iter().enumerate() {
                let (coeff, core) = t.split_coefficient();
                if i == 0 {
                    if coeff.is_negative() {
                        write!(f, "-")?;
                    }
                } else if coeff.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                write_term(&coeff.abs(), &core, f)?;
            }
            Ok(())
        }
        other => {
            let (coeff, core) = other.split_coefficient();
            if coeff.is_negative() {
                write!(f, "-")?;
            }
            write_term(&coeff.abs(), &core, f)
        }
    }
}

/// Writes `coeff * core` with coeff >= 0, folding unit coefficients and
/// routing negative exponents into "/" segments.
fn write_term(coeff: &Rat, core: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let factors: Vec<&Expr> = match core {
        Expr::Mul(fs) => fs.iter().filter(|x| x.as_const().is_none()).collect(),
        other => vec![other],
    };
    let mut nums: Vec<String> = Vec::new();
    let mut dens: Vec<String> = Vec::new();
    for factor in factors {
        if core.is_one() {
            break;
        }
        let (base, exp) = factor.as_power();
        if exp.is_negative() {
            dens.push(pow_string(base, &-exp.clone()));
        } else {
            nums.push(pow_string(base, &exp));
        }
    }
    let coeff_str = rat_string(coeff);
    let mut head = if nums.is_empty() {
        coeff_str
    } else if coeff.is_one() {
        nums.join("*")
    } else {
        format!("{}*{}", coeff_str, nums.join("*"))
    };
    for d in dens {
        head.push('/');
        head.push_str(&d);
    }
    write!(f, "{head}")
}

fn rat_string(r: &Rat) -> String {
    if is_integer(r) {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pow_string(base: &Expr, exp: &Rat) -> String {
    let b = base_string(base);
    if exp.is_one() {
        return b;
    }
    if is_integer(exp) {
        format!("{}^{}", b, exp.numer())
    } else {
        format!("{}^({}/{})", b, exp.numer(), exp.denom())
    }
}

fn base_string(base: &Expr) -> String {
    match base {
        Expr::Var(v) => v.clone(),
        Expr::Func(func, arg) => format!("{}({})", func_name(*func), arg),
        Expr::Const(c) if is_integer(c) && !c.is_negative() => format!("{}", c.numer()),
        other => format!("({other})"),
    }
}

fn func_name(f: Func) -> &'static str {
    f.name()
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use crate::expr::Expr;
    use crate::rat::{rat, rat_int};

    fn roundtrip(src: &str) {
        let e = parse(src).unwrap();
        let printed = format!("{e}");
        let back = parse(&printed).unwrap_or_else(|err| {
            panic!("reparse of {printed:?} (from {src:?}) failed: {err}")
        });
        assert_eq!(e, back, "print round-trip of {src:?} via {printed:?}");
    }

    #[test]
    fn print_roundtrips() {
        for src in [
            "x^2*y",
            "(x - y)/(sin(x) - sin(y))",
            "x^6+x^2*y^2+y^6",
            "-x^9*sin(y)",
            "2 - 2*cos(x^2*y^2)",
            "x^(1/2) + y^(-2/3)",
            "1/(x^2+y^2)",
            "-3/4*x + 7",
            "sec(z - x^2)^2",
            "sqrt(x^2+1)",
            "abs(x)^3",
            "(x+y)^(1/2)",
            "7*x^2*y*z^5+x*y^3-3*x^4*y*z",
        ] {
            roundtrip(src);
        }
    }

    #[test]
    fn negative_and_reciprocal_forms() {
        let e = Expr::div(Expr::int(1), Expr::pow(Expr::var("x"), rat_int(2)));
        assert_eq!(format!("{e}"), "1/x^2");
        let c = Expr::constant(rat(-3, 4));
        assert_eq!(format!("{c}"), "-3/4");
        let m = Expr::mul(vec![Expr::int(-1), Expr::var("x")]);
        assert_eq!(format!("{m}"), "-x");
    }
}
