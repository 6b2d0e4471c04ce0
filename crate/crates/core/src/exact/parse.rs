//! Polynomial text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      division only by constants
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers must be registry variables. Whitespace is ignored.

use std::sync::Arc;

use num_bigint::BigInt;

use super::poly::{MonomialOrder, Poly, VarRegistry};
use super::rational::Rational;
use super::ExactError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExactError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Token::Int(text[start..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else {
            return Err(ExactError::Parse(format!(
                "unexpected character {c:?} at offset {i}"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    registry: &'a Arc<VarRegistry>,
    order: MonomialOrder,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn error(&self, msg: &str) -> ExactError {
        ExactError::Parse(format!("{msg} at offset {}", self.offset()))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ExactError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ExactError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let c = rhs
                    .constant_value()
                    .ok_or_else(|| self.error("division by a non-constant"))?;
                let inv = c.recip().map_err(|_| self.error("division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ExactError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Poly, ExactError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.error("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.error("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ExactError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(
                    self.registry,
                    self.order,
                    Rational::from_integer(n),
                ))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Poly::var(self.registry, self.order, &name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

pub fn parse_poly(
    registry: &Arc<VarRegistry>,
    order: MonomialOrder,
    text: &str,
) -> Result<Poly, ExactError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        registry,
        order,
        len: text.len(),
    };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trip() {
        let r = VarRegistry::new(&["th1", "th2", "x", "d5"]).unwrap();
        let f = parse_poly(&r, MonomialOrder::GrevLex, "th2^2 + th2 + 1 - 3/4*x*d5").unwrap();
        let g = parse_poly(&r, MonomialOrder::GrevLex, &f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn nested_parentheses() {
        let r = VarRegistry::new(&["a", "b"]).unwrap();
        let f = parse_poly(&r, MonomialOrder::GrevLex, "-(a - (b + 1))^2/2").unwrap();
        let g = parse_poly(&r, MonomialOrder::GrevLex, "-1/2*a^2 + a*b + a - 1/2*b^2 - b - 1/2")
            .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn errors_carry_location() {
        let r = VarRegistry::new(&["a"]).unwrap();
        match parse_poly(&r, MonomialOrder::GrevLex, "a + $") {
            Err(ExactError::Parse(msg)) => assert!(msg.contains("offset 4"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_poly(&r, MonomialOrder::GrevLex, "a + q"),
            Err(ExactError::UnknownVariable(_))
        ));
        assert!(parse_poly(&r, MonomialOrder::GrevLex, "a / a").is_err());
        assert!(parse_poly(&r, MonomialOrder::GrevLex, "(a").is_err());
    }
}
