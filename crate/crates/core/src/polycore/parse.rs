//! Text form of polynomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! sum     := ['+'|'-'] product (('+'|'-') product)*
//! product := power ('*' power)*
//! power   := atom ['^' integer]
//! atom    := integer ['/' integer] | name | '(' sum ')'
//! ```

use std::iter::Peekable;
use std::str::CharIndices;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Parses `text` over the ring whose variables are `names`.
///
/// `location` prefixes error messages (e.g. `strata[1].ideal[0]`).
pub fn parse_polynomial<F: Field>(text: &str, names: &[String], location: &str) -> Result<Polynomial<F>> {
    let mut p = Parser {
        text,
        chars: text.char_indices().peekable(),
        names,
        location,
    };
    let out = p.sum()?;
    p.skip_ws();
    if let Some(&(i, c)) = p.chars.peek() {
        return Err(p.error(i, format!("unexpected `{c}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    chars: Peekable<CharIndices<'a>>,
    names: &'a [String],
    location: &'a str,
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn error(&self, col: usize, message: String) -> Error {
        Error::Parse {
            location: format!("{} (column {})", self.location, col + 1),
            message: format!("{message} in `{}`", self.text),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn end(&self) -> usize {
        self.text.len()
    }

    fn sum<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let mut acc = Polynomial::zero(self.nvars());
        let mut negate = false;
        match self.peek() {
            Some((_, '-')) => {
                self.chars.next();
                negate = true;
            }
            Some((_, '+')) => {
                self.chars.next();
            }
            _ => {}
        }
        loop {
            let t = self.product()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some((_, '+')) => negate = false,
                Some((_, '-')) => negate = true,
                _ => return Ok(acc),
            }
            self.chars.next();
        }
    }

    fn product<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.power()?;
        while let Some((_, '*')) = self.peek() {
            self.chars.next();
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if let Some((i, '^')) = self.peek() {
            self.chars.next();
            let (_, digits) = self.integer(i)?;
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error(i, format!("exponent `{digits}` out of range")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self, after: usize) -> Result<(usize, String)> {
        let start = match self.peek() {
            Some((i, c)) if c.is_ascii_digit() => i,
            Some((i, c)) => return Err(self.error(i, format!("expected integer, found `{c}`"))),
            None => return Err(self.error(after, "expected integer".into())),
        };
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.chars.next();
        }
        Ok((start, s))
    }

    fn atom<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let n = self.nvars();
        match self.peek() {
            Some((i, c)) if c.is_ascii_digit() => {
                let (_, num) = self.integer(i)?;
                let mut value: F = num
                    .parse()
                    .map_err(|_| self.error(i, format!("bad number `{num}`")))?;
                if let Some((j, '/')) = self.peek() {
                    self.chars.next();
                    let (_, den) = self.integer(j)?;
                    let d: F = den
                        .parse()
                        .map_err(|_| self.error(j, format!("bad number `{den}`")))?;
                    if d.is_zero() {
                        return Err(self.error(j, "division by zero".into()));
                    }
                    value = value / d;
                }
                Ok(Polynomial::constant(n, value))
            }
            Some((i, c)) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if !(c.is_alphanumeric() || c == '_') {
                        break;
                    }
                    name.push(c);
                    self.chars.next();
                }
                match self.names.iter().position(|v| *v == name) {
                    Some(k) => Ok(Polynomial::var(n, k)),
                    None => Err(self.error(i, format!("undeclared variable `{name}`"))),
                }
            }
            Some((i, '(')) => {
                self.chars.next();
                let inner = self.sum()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.chars.next();
                        Ok(inner)
                    }
                    _ => Err(self.error(i, "unbalanced `(`".into())),
                }
            }
            Some((i, c)) => Err(self.error(i, format!("unexpected `{c}`"))),
            None => Err(self.error(self.end(), "unexpected end of input".into())),
        }
    }
}
