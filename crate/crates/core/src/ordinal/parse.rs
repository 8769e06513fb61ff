//! Recursive-descent parser for ordinal expressions.
//!
//! ```text
//! expr    := term ('+' term)*
//! term    := nat | 'w' ['^' primary] ['*' nat]
//! primary := nat | 'w' ['^' primary] | '(' expr ')'
//! ```
//!
//! `w` (or `ω`) denotes ω and whitespace is ignored. An exponent that is not a
//! natural number or a bare power of ω must be parenthesized, so `w^2+1` is
//! `ω²+1` and `w^(2+w)` is `ω^ω`. Sums are normalized with ordinal addition.

use thiserror::Error;

use super::{Ordinal, OrdinalError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("ordinal syntax error at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}'")));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_omega(&mut self) -> bool {
        matches!(self.peek(), Some('w' | 'ω')) && {
            self.pos += 1;
            true
        }
    }

    fn overflow(&self, _: OrdinalError) -> ParseError {
        self.error("coefficient overflow")
    }

    fn expr(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.term()?;
        while self.eat('+') {
            let next = self.term()?;
            acc = acc.plus(&next).map_err(|e| self.overflow(e))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_nat(self.nat()?)),
            Some('w' | 'ω') => {
                let exponent = self.omega_exponent()?;
                let coefficient = if self.eat('*') { self.nat()? } else { 1 };
                Ordinal::from_terms([(exponent, coefficient)]).map_err(|e| self.overflow(e))
            }
            Some(c) => Err(self.error(format!("expected a term, found '{c}'"))),
            None => Err(self.error("expected a term, found end of input")),
        }
    }

    // Consumes `w ['^' primary]` and returns the exponent.
    fn omega_exponent(&mut self) -> Result<Ordinal, ParseError> {
        if !self.eat_omega() {
            return Err(self.error("expected 'w'"));
        }
        if self.eat('^') {
            self.primary()
        } else {
            Ok(Ordinal::from_nat(1))
        }
    }

    fn primary(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_nat(self.nat()?)),
            Some('w' | 'ω') => Ok(Ordinal::omega_pow(self.omega_exponent()?)),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("expected an exponent, found '{c}'"))),
            None => Err(self.error("expected an exponent, found end of input")),
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| ParseError {
            position: start,
            message: "natural number too large".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert!(parse_ordinal("0").unwrap().is_zero());
        let a = parse_ordinal("w^2*3+w+4").unwrap();
        let expected = Ordinal::from_terms([
            (Ordinal::from_nat(2), 3),
            (Ordinal::from_nat(1), 1),
            (Ordinal::zero(), 4),
        ])
        .unwrap();
        assert_eq!(a, expected);
        assert_eq!(parse_ordinal("w+w").unwrap().to_string(), "w*2");
    }

    #[test]
    fn normalizes_instead_of_rejecting() {
        assert_eq!(parse_ordinal("3+w").unwrap().to_string(), "w");
        assert_eq!(parse_ordinal("w + w^2").unwrap().to_string(), "w^2");
        assert_eq!(parse_ordinal("w*0+5").unwrap().to_string(), "5");
        assert_eq!(parse_ordinal("w^0*7").unwrap().to_string(), "7");
        assert_eq!(parse_ordinal("w^(2+w)").unwrap().to_string(), "w^w");
        assert_eq!(parse_ordinal(" ω ^ 2 ").unwrap().to_string(), "w^2");
    }

    #[test]
    fn exponent_binds_tighter_than_sum() {
        assert_eq!(parse_ordinal("w^2+1").unwrap().to_string(), "w^2+1");
        assert_eq!(parse_ordinal("w^w^2*3").unwrap().terms()[0].coefficient, 3);
    }

    #[test]
    fn reports_error_positions() {
        let e = parse_ordinal("w+").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_ordinal("w^2*x").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_ordinal("w^(w+1").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(parse_ordinal("").is_err());
        assert!(parse_ordinal("2 3").is_err());
        assert!(parse_ordinal("99999999999999999999999").is_err());
    }
}
