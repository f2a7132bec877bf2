//! Recursive-descent reader for symbolic expressions.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor (('*' | '·')? factor)*
//! factor := atom ('^' exponent)?
//! atom   := letter | integer | '(' expr ')' | '[' expr ']' | '{' name '}'
//! ```
//! Integers are read mod 2; exponents may be braced (`c^{64}`).

use super::{SymMonomial, SymPoly, Var};
use crate::error::{parse_err, Result};

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    lookup: &'a dyn Fn(&str) -> Option<SymPoly>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn token_here(&self) -> String {
        let start = self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i);
        self.src[start..].chars().take(12).collect()
    }

    fn err<T>(&self, reason: &str) -> Result<T> {
        let tok = self.token_here();
        Err(parse_err(if tok.is_empty() { "<end>".into() } else { tok }, reason))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<SymPoly> {
        let mut acc = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            acc.add_assign(&self.term()?);
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || "([{".contains(c))
    }

    fn term(&mut self) -> Result<SymPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                _ if self.starts_atom() => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<SymPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let braced = self.peek() == Some('{');
            if braced {
                self.pos += 1;
            }
            let n = self.integer()?;
            if braced {
                self.expect('}')?;
            }
            // variables raise exponents directly; anything else expands
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| parse_err(s, "integer out of range"))
    }

    fn atom(&mut self) -> Result<SymPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(']')?;
                Ok(e)
            }
            Some('{') => {
                self.pos += 1;
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                self.expect('}')?;
                (self.lookup)(&name).ok_or_else(|| parse_err(name, "unknown reference"))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(if n % 2 == 1 { SymPoly::one() } else { SymPoly::zero() })
            }
            Some(c) => match Var::from_letter(c) {
                Some(v) => {
                    self.pos += 1;
                    Ok(SymPoly::from_monomial(SymMonomial::var_pow(v, 1)))
                }
                None => self.err("expected a variable a..j, a number, or a group"),
            },
            None => self.err("unexpected end of expression"),
        }
    }
}

pub(super) fn parse(src: &str, lookup: &dyn Fn(&str) -> Option<SymPoly>) -> Result<SymPoly> {
    let chars: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { src, chars, pos: 0, lookup };
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
