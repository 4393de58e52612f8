//! Recursive-descent parser for the expression grammar.
//!
//! Grammar (whitespace insignificant, no implicit multiplication):
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := unary (("*"|"/") unary)*
//! unary    := "-" unary | factor
//! factor   := base ("^" exponent)?
//! exponent := integer | "(" ["-"] integer "/" integer ")"
//! base     := number | identifier | "(" expr ")" | funcname "(" expr ")"
//! ```

use super::{Expr, Func};
use crate::rat::{rat_int, Rat};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses the text and returns the canonical form of the expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let raw = p.parse_expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected character {:?}", p.src[p.pos] as char)));
    }
    Ok(raw.canonicalize())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(format!("expected {:?}", ch as char)))
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.parse_term()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.parse_term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    terms.push(Expr::Neg(Box::new(t)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Add(terms)
        })
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.parse_unary()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(self.parse_unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.parse_unary()?;
                    factors.push(Expr::Pow(Box::new(f), rat_int(-1)));
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Mul(factors)
        })
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            let inner = self.parse_unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.parse_factor()
    }

    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.parse_base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exponent = self.parse_exponent()?;
            return Ok(Expr::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> Result<Rat, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let negative = self.eat(b'-');
                let num = self.parse_integer()?;
                self.expect(b'/')?;
                let den = self.parse_integer()?;
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator in exponent"));
                }
                self.expect(b')')?;
                let r = Rat::new(num, den);
                Ok(if negative { -r } else { r })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_integer()?;
                Ok(Rat::from_integer(n))
            }
            _ => Err(self.err("expected exponent (integer or \"(p/q)\")")),
        }
    }

    fn parse_integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn parse_base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_integer()?;
                Ok(Expr::Const(Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let ident_start = self.pos;
                let name = self.parse_identifier();
                if self.src.get(self.pos) == Some(&b'(') {
                    let f = Func::from_name(&name).ok_or(ParseError {
                        offset: ident_start,
                        message: format!("unknown function name {name:?}"),
                    })?;
                    self.pos += 1;
                    let arg = self.parse_expr()?;
                    self.expect(b')')?;
                    Ok(Expr::Func(f, Box::new(arg)))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_identifier(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn grammar_shapes() {
        let e = parse("x^2*y").unwrap();
        assert_eq!(
            e,
            Expr::mul(vec![
                Expr::pow(Expr::var("x"), rat_int(2)),
                Expr::var("y")
            ])
        );
        let q = parse("(x - y)/(sin(x) - sin(y))").unwrap();
        let num = Expr::sub(Expr::var("x"), Expr::var("y"));
        let den = Expr::sub(
            Expr::func(Func::Sin, Expr::var("x")),
            Expr::func(Func::Sin, Expr::var("y")),
        );
        assert_eq!(q, Expr::div(num, den));
    }

    #[test]
    fn unbalanced_parenthesis_offset() {
        let err = parse("x^(1/2").unwrap_err();
        assert_eq!(err.offset, 6);
    }

    #[test]
    fn unknown_function() {
        let err = parse("log(x)").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(err.message.contains("unknown function"));
    }

    #[test]
    fn fractional_exponents() {
        assert_eq!(parse("x^(1/2)").unwrap(), Expr::pow(Expr::var("x"), rat(1, 2)));
        assert_eq!(
            parse("x^(-2/3)").unwrap(),
            Expr::pow(Expr::var("x"), rat(-2, 3))
        );
        assert!(parse("x^-2").is_err());
    }

    #[test]
    fn no_implicit_multiplication() {
        assert!(parse("2x").is_err());
        assert!(parse("x y").is_err());
    }

    #[test]
    fn rationals_via_division() {
        assert_eq!(parse("3/4").unwrap(), Expr::constant(rat(3, 4)));
        assert_eq!(parse("-1/2").unwrap(), Expr::constant(rat(-1, 2)));
    }

    #[test]
    fn whitespace_insignificant() {
        assert_eq!(parse(" x ^ 2 + y ").unwrap(), parse("x^2+y").unwrap());
    }

    #[test]
    fn decimal_rejected() {
        assert!(parse("0.5").is_err());
    }
}
