//! Round-trippable text form of operator expressions.
//!
//! The dump format is one term per line, `coeff | radial | p1exp p2exp`,
//! exactly as produced by the `Display` impls; this module is the inverse.
//! The grammar is the canonical output shape, not a general expression
//! language: signs live inside scalar literals, polynomial sides of a
//! quotient are parenthesized, and radial factors are `*`-separated.

use super::coeff::{Coeff, ParamPoly};
use super::expr::{OperatorExpr, TermKey};
use super::gauss::GaussRat;
use super::radial::RadMono;
use num::rational::BigRational;
use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    BadChar(char, usize),
    #[error("unexpected token `{0}` (expected {1})")]
    Unexpected(String, &'static str),
    #[error("unexpected end of input (expected {0})")]
    Eof(&'static str),
    #[error("malformed term line `{0}`")]
    BadLine(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let digits = &s[start..i];
            out.push(Tok::Num(
                BigInt::parse_bytes(digits.as_bytes(), 10).unwrap(),
            ));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            out.push(Tok::Ident(s[start..i].to_string()));
        } else if "+-*/^()|".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(ParseError::BadChar(c, i));
        }
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(t) => Err(ParseError::Unexpected(format!("{t:?}"), what)),
                None => Err(ParseError::Eof(what)),
            }
        }
    }

    /// `INT` or `INT/INT` as an exact rational, optional leading minus
    /// already consumed by the caller.
    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let n = match self.next() {
            Some(Tok::Num(n)) => n,
            Some(t) => return Err(ParseError::Unexpected(format!("{t:?}"), "integer")),
            None => return Err(ParseError::Eof("integer")),
        };
        // A '/' only binds as a rational when followed by an integer.
        if self.peek() == Some(&Tok::Sym('/'))
            && matches!(self.toks.get(self.pos + 1), Some(Tok::Num(_)))
        {
            self.pos += 1;
            if let Some(Tok::Num(d)) = self.next() {
                return Ok(BigRational::new(n, d));
            }
            unreachable!();
        }
        Ok(BigRational::from_integer(n))
    }

    /// Scalar literal: `q`, `q*i`, `i`, `-i`, `-q`, `-q*i`,
    /// or `(q1+q2*i)` ­shapes with either sign.
    fn gauss(&mut self) -> Result<GaussRat, ParseError> {
        if self.eat_sym('(') {
            let re = self.signed_rational()?;
            let sign = match self.next() {
                Some(Tok::Sym('+')) => BigRational::from_integer(BigInt::from(1)),
                Some(Tok::Sym('-')) => BigRational::from_integer(BigInt::from(-1)),
                Some(t) => return Err(ParseError::Unexpected(format!("{t:?}"), "+ or -")),
                None => return Err(ParseError::Eof("+ or -")),
            };
            let im = if matches!(self.peek(), Some(Tok::Ident(id)) if id == "i") {
                self.pos += 1;
                BigRational::from_integer(BigInt::from(1))
            } else {
                let q = self.rational()?;
                self.expect_sym('*', "`*` before i")?;
                match self.next() {
                    Some(Tok::Ident(id)) if id == "i" => {}
                    Some(t) => return Err(ParseError::Unexpected(format!("{t:?}"), "i")),
                    None => return Err(ParseError::Eof("i")),
                }
                q
            };
            self.expect_sym(')', "closing paren")?;
            return Ok(GaussRat { re, im: im * sign });
        }
        let neg = self.eat_sym('-');
        if matches!(self.peek(), Some(Tok::Ident(id)) if id == "i") {
            self.pos += 1;
            let one = BigRational::from_integer(BigInt::from(if neg { -1 } else { 1 }));
            return Ok(GaussRat {
                re: BigRational::from_integer(BigInt::from(0)),
                im: one,
            });
        }
        let q = self.rational()?;
        let q = if neg { -q } else { q };
        // `q*i` form: lookahead for `* i`.
        if self.peek() == Some(&Tok::Sym('*'))
            && matches!(self.toks.get(self.pos + 1), Some(Tok::Ident(id)) if id == "i")
        {
            self.pos += 2;
            return Ok(GaussRat {
                re: BigRational::from_integer(BigInt::from(0)),
                im: q,
            });
        }
        Ok(GaussRat {
            re: q,
            im: BigRational::from_integer(BigInt::from(0)),
        })
    }

    fn signed_rational(&mut self) -> Result<BigRational, ParseError> {
        let neg = self.eat_sym('-');
        let q = self.rational()?;
        Ok(if neg { -q } else { q })
    }

    /// One polynomial monomial: scalar, optional `*`-joined parameter powers;
    /// or parameter powers with implicit unit scalar.
    fn poly_monomial(&mut self) -> Result<(GaussRat, [u32; 4]), ParseError> {
        let mut exps = [0u32; 4];
        let scalar = if matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Sym('-')) | Some(Tok::Sym('('))
        ) || matches!(self.peek(), Some(Tok::Ident(id)) if id == "i")
        {
            let g = self.gauss()?;
            if !self.eat_sym('*') {
                return Ok((g, exps));
            }
            g
        } else {
            GaussRat::one()
        };
        loop {
            let name = match self.next() {
                Some(Tok::Ident(id)) => id,
                Some(t) => return Err(ParseError::Unexpected(format!("{t:?}"), "parameter name")),
                None => return Err(ParseError::Eof("parameter name")),
            };
            let idx = match name.as_str() {
                "mt" => 0,
                "k" => 1,
                "wt" => 2,
                "lam" => 3,
                _ => return Err(ParseError::Unexpected(name, "parameter name")),
            };
            let mut e = 1u32;
            if self.eat_sym('^') {
                match self.next() {
                    Some(Tok::Num(n)) => {
                        e = n
                            .to_string()
                            .parse()
                            .map_err(|_| ParseError::Unexpected(n.to_string(), "small exponent"))?;
                    }
                    Some(t) => return Err(ParseError::Unexpected(format!("{t:?}"), "exponent")),
                    None => return Err(ParseError::Eof("exponent")),
                }
            }
            exps[idx] += e;
            if !self.eat_sym('*') {
                break;
            }
        }
        Ok((scalar, exps))
    }

    /// Polynomial: monomials joined by `+` (signs live in the scalars).
    fn poly(&mut self) -> Result<ParamPoly, ParseError> {
        let mut p = ParamPoly::zero();
        loop {
            let (c, e) = self.poly_monomial()?;
            p.add_term(e, c);
            if !self.eat_sym('+') {
                break;
            }
        }
        Ok(p)
    }

    /// Coefficient: `side` or `side/side`, sides either `(poly)` or a bare
    /// monomial.
    fn coeff(&mut self) -> Result<Coeff, ParseError> {
        let num = self.coeff_side()?;
        if self.peek() == Some(&Tok::Sym('/')) {
            self.pos += 1;
            let den = self.coeff_side()?;
            if den.is_zero() {
                return Err(ParseError::Unexpected("0".into(), "nonzero denominator"));
            }
            return Ok(Coeff::new(num, den));
        }
        Ok(Coeff::new(num, ParamPoly::one()))
    }

    fn coeff_side(&mut self) -> Result<ParamPoly, ParseError> {
        // A paren opens a polynomial side only if it is not a complex scalar
        // literal like `(1+2*i)`; try the scalar shape first by lookahead.
        if self.peek() == Some(&Tok::Sym('(')) && !self.paren_is_gauss() {
            self.pos += 1;
            let p = self.poly()?;
            self.expect_sym(')', "closing paren")?;
            return Ok(p);
        }
        let (c, e) = self.poly_monomial()?;
        let mut p = ParamPoly::zero();
        p.add_term(e, c);
        Ok(p)
    }

    /// Distinguishes `(1+2*i)`-style scalars from parenthesized polynomials:
    /// a scalar paren contains the imaginary unit and no parameter names.
    fn paren_is_gauss(&self) -> bool {
        let mut found_i = false;
        for t in &self.toks[self.pos + 1..] {
            match t {
                Tok::Sym(')') => return found_i,
                Tok::Ident(id) if id == "i" => found_i = true,
                Tok::Ident(_) => return false,
                _ => {}
            }
        }
        false
    }

    /// Radial field: `1` or `*`-joined factors from
    /// {x1[^e], x2[^e], rho^-s, r}.
    fn radial(&mut self) -> Result<RadMono, ParseError> {
        if matches!(self.peek(), Some(Tok::Num(n)) if n == &BigInt::from(1)) {
            self.pos += 1;
            return Ok(RadMono::ONE);
        }
        let mut m = RadMono::ONE;
        loop {
            let name = match self.next() {
                Some(Tok::Ident(id)) => id,
                Some(t) => return Err(ParseError::Unexpected(format!("{t:?}"), "radial factor")),
                None => return Err(ParseError::Eof("radial factor")),
            };
            match name.as_str() {
                "x1" | "x2" => {
                    let mut e = 1u32;
                    if self.eat_sym('^') {
                        match self.next() {
                            Some(Tok::Num(n)) => {
                                e = n.to_string().parse().map_err(|_| {
                                    ParseError::Unexpected(n.to_string(), "small exponent")
                                })?;
                            }
                            _ => return Err(ParseError::Eof("exponent")),
                        }
                    }
                    if name == "x1" {
                        m.x1 += e;
                    } else {
                        m.x2 += e;
                    }
                }
                "rho" => {
                    self.expect_sym('^', "^ after rho")?;
                    self.expect_sym('-', "negative rho exponent")?;
                    match self.next() {
                        Some(Tok::Num(n)) => {
                            m.rho_inv += n.to_string().parse::<u32>().map_err(|_| {
                                ParseError::Unexpected(n.to_string(), "small exponent")
                            })?;
                        }
                        _ => return Err(ParseError::Eof("exponent")),
                    }
                }
                "r" => m.has_r = !m.has_r,
                _ => return Err(ParseError::Unexpected(name, "radial factor")),
            }
            if !self.eat_sym('*') {
                break;
            }
        }
        Ok(m)
    }
}

/// Parse the multi-line dump of an [`OperatorExpr`]; inverse of `Display`.
pub fn parse_expr(input: &str) -> Result<OperatorExpr, ParseError> {
    let trimmed = input.trim();
    if trimmed == "0" {
        return Ok(OperatorExpr::zero());
    }
    let mut expr = OperatorExpr::zero();
    for line in trimmed.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            toks: tokenize(line)?,
            pos: 0,
        };
        let coeff = cur
            .coeff()
            .map_err(|_| ParseError::BadLine(line.to_string()))?;
        cur.expect_sym('|', "field separator")
            .map_err(|_| ParseError::BadLine(line.to_string()))?;
        let rad = cur
            .radial()
            .map_err(|_| ParseError::BadLine(line.to_string()))?;
        cur.expect_sym('|', "field separator")
            .map_err(|_| ParseError::BadLine(line.to_string()))?;
        let p1 = match cur.next() {
            Some(Tok::Num(n)) => n
                .to_string()
                .parse::<u32>()
                .map_err(|_| ParseError::BadLine(line.to_string()))?,
            _ => return Err(ParseError::BadLine(line.to_string())),
        };
        let p2 = match cur.next() {
            Some(Tok::Num(n)) => n
                .to_string()
                .parse::<u32>()
                .map_err(|_| ParseError::BadLine(line.to_string()))?,
            _ => return Err(ParseError::BadLine(line.to_string())),
        };
        if cur.peek().is_some() {
            return Err(ParseError::BadLine(line.to_string()));
        }
        expr.add_term(TermKey { rad, p1, p2 }, coeff);
    }
    Ok(expr)
}

/// Convenience used by tests: parse a single coefficient literal.
#[cfg(test)]
pub(crate) fn parse_coeff(input: &str) -> Result<Coeff, ParseError> {
    let mut cur = Cursor {
        toks: tokenize(input)?,
        pos: 0,
    };
    let c = cur.coeff()?;
    if cur.peek().is_some() {
        return Err(ParseError::BadLine(input.to_string()));
    }
    Ok(c)
}
