//! Parser for rational-function expressions in the variable `z`.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+')* power
//! power  := atom ('^' nonneg-integer)?
//! atom   := 'z' | integer | '(' expr ')'
//! ```
//!
//! `*` and `/` associate left with equal precedence, so `1/2*z` is `(1/2)*z`.
//! Syntax errors carry the byte offset of the offending token; dividing by an
//! expression that simplifies to zero is reported as a division error.

use num_bigint::BigInt;

use super::rat::Rat;
use super::ratfunc::{RatForm, RatFunc};
use super::ArithError;

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, ArithError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(value),
        Some(c) => Err(p.syntax(format!("unexpected '{}' after expression", c as char))),
    }
}

/// Parses the coefficient of a 1-form `g dz` (the `dz` is implied).
pub fn parse_form(s: &str) -> Result<RatForm, ArithError> {
    Ok(RatForm::new(parse_ratfunc(s)?))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, msg: String) -> ArithError {
        ArithError::Syntax { pos: self.pos, msg }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ArithError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ArithError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.bump();
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ArithError> {
        self.skip_ws();
        let mut negate = false;
        loop {
            match self.peek() {
                Some(b'-') => {
                    negate = !negate;
                    self.bump();
                    self.skip_ws();
                }
                Some(b'+') => {
                    self.bump();
                    self.skip_ws();
                }
                _ => break,
            }
        }
        let value = self.power()?;
        Ok(if negate { -value } else { value })
    }

    fn power(&mut self) -> Result<RatFunc, ArithError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits()?;
            let exp: u32 = digits.parse().map_err(|_| ArithError::Syntax {
                pos: start,
                msg: format!("exponent {digits} out of range"),
            })?;
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ArithError> {
        self.skip_ws();
        match self.peek() {
            Some(b'z') => {
                self.bump();
                Ok(RatFunc::var())
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let n: BigInt = digits.parse().expect("digit run parses as an integer");
                Ok(RatFunc::constant(Rat::from_integer(n)))
            }
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.syntax("expected ')'".into()))
                }
            }
            Some(c) => Err(self.syntax(format!("unexpected '{}'", c as char))),
            None => Err(self.syntax("unexpected end of input".into())),
        }
    }

    fn digits(&mut self) -> Result<String, ArithError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.syntax("expected a digit".into()));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .to_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::rat::{rat, rat_int};

    #[test]
    fn parses_the_variable_and_integers() {
        assert_eq!(parse_ratfunc("z").unwrap(), RatFunc::var());
        assert_eq!(
            parse_ratfunc(" 42 ").unwrap(),
            RatFunc::constant(rat_int(42))
        );
    }

    #[test]
    fn difference_of_simple_poles() {
        // 1/z - 1/(z-1) = -1/(z^2 - z)
        let f = parse_ratfunc("1/z - 1/(z-1)").unwrap();
        assert_eq!(f.num(), &Poly::constant(rat_int(-1)));
        assert_eq!(
            f.den(),
            &Poly::from_coeffs(vec![rat_int(0), rat_int(-1), rat_int(1)])
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // equal precedence, left associative
        assert_eq!(
            parse_ratfunc("6/2/3").unwrap(),
            RatFunc::constant(rat_int(1))
        );
        assert_eq!(
            parse_ratfunc("1/2*z").unwrap(),
            RatFunc::from_poly(Poly::from_coeffs(vec![rat_int(0), rat(1, 2)]))
        );
        assert_eq!(
            parse_ratfunc("1 - 2 - 3").unwrap(),
            RatFunc::constant(rat_int(-4))
        );
        assert_eq!(
            parse_ratfunc("2*z^2").unwrap(),
            parse_ratfunc("2*(z^2)").unwrap()
        );
    }

    #[test]
    fn unary_signs_stack() {
        assert_eq!(parse_ratfunc("--z").unwrap(), RatFunc::var());
        assert_eq!(parse_ratfunc("+-z").unwrap(), -RatFunc::var());
        assert_eq!(
            parse_ratfunc("-z^2").unwrap(),
            -parse_ratfunc("z^2").unwrap()
        );
    }

    #[test]
    fn parenthesized_power() {
        let f = parse_ratfunc("(z+1)^2").unwrap();
        assert_eq!(
            f.num(),
            &Poly::from_coeffs(vec![rat_int(1), rat_int(2), rat_int(1)])
        );
    }

    #[test]
    fn division_by_a_zero_expression() {
        assert_eq!(parse_ratfunc("1/0"), Err(ArithError::DivisionByZero));
        assert_eq!(parse_ratfunc("z/(z - z)"), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_ratfunc("z^") {
            Err(ArithError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected a syntax error, got {other:?}"),
        }
        match parse_ratfunc("(z+1") {
            Err(ArithError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected a syntax error, got {other:?}"),
        }
        match parse_ratfunc("z z") {
            Err(ArithError::Syntax { pos, msg }) => {
                assert_eq!(pos, 2);
                assert!(msg.contains("after expression"));
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
        match parse_ratfunc("") {
            Err(ArithError::Syntax { pos, .. }) => assert_eq!(pos, 0),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_characters() {
        match parse_ratfunc("z + w") {
            Err(ArithError::Syntax { pos, msg }) => {
                assert_eq!(pos, 4);
                assert!(msg.contains('w'));
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["z^3 - 3/2*z + 1", "(z^2 + 1)/(z^2 - z)", "0", "-7/3"] {
            let f = parse_ratfunc(s).unwrap();
            assert_eq!(parse_ratfunc(&f.to_string()).unwrap(), f);
        }
    }
}
