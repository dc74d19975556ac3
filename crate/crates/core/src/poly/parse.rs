//! Expression grammar for polynomials and ring specifications.
//!
//! ```text
//! list   := expr ("," expr)*
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := atom ["^" integer]
//! atom   := integer | name | "(" expr ")" | "-" atom
//! ```
//!
//! Juxtaposition (`2x`, `x y`) is rejected. Division is only accepted by a
//! nonzero constant.

use std::sync::Arc;

use num_bigint::BigInt;

use super::polynomial::Poly;
use super::ring::{is_identifier, Ring};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    /// offset of `src` inside the caller's full input, for diagnostics
    base: usize,
    full: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(full: &'a str, src: &'a str, base: usize) -> Result<Self> {
        let mut toks = Vec::new();
        let bytes = src.as_bytes();
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
                toks.push((Tok::Int(src[start..i].parse().unwrap()), base + start));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Name(src[start..i].to_string()), base + start));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Op(c), base + i));
                i += 1;
            } else {
                return Err(Error::Parse { pos: base + i, msg: format!("unexpected character {c:?}"), input: full.into() });
            }
        }
        toks.push((Tok::End, base + src.len()));
        Ok(Lexer { src, base, full, toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into(), input: self.full.into() })
    }
}

struct Parser<'a, 'r, F: Field> {
    lex: Lexer<'a>,
    ring: &'r Arc<Ring<F>>,
}

impl<F: Field> Parser<'_, '_, F> {
    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = match self.lex.peek() {
            Tok::Op('-') => {
                self.lex.bump();
                self.term()?.neg()
            }
            Tok::Op('+') => {
                self.lex.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.lex.peek() {
                Tok::Op('+') => {
                    self.lex.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.lex.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.lex.peek() {
                Tok::Op('*') => {
                    self.lex.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Op('/') => {
                    self.lex.bump();
                    let at = self.lex.offset();
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "division only by a nonzero constant".into(),
                            input: self.lex.full.into(),
                        });
                    }
                    let inv = self.ring.field().inv(d.leading_coeff().unwrap());
                    acc = acc.scale(&inv);
                }
                Tok::Int(_) | Tok::Name(_) | Tok::Op('(') => {
                    return self.lex.err("implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        let base = self.atom()?;
        if self.lex.peek() == &Tok::Op('^') {
            self.lex.bump();
            match self.lex.bump() {
                Tok::Int(n) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse {
                        pos: self.lex.offset(),
                        msg: "exponent too large".into(),
                        input: self.lex.full.into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.lex.pos -= 1;
                    return self.lex.err("expected a nonnegative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<F>> {
        match self.lex.peek().clone() {
            Tok::Int(n) => {
                self.lex.bump();
                Ok(self.ring.constant(self.ring.field().from_bigint(&n)))
            }
            Tok::Name(name) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.lex.bump();
                    Ok(self.ring.gen(i))
                }
                None => self.lex.err(format!("unknown variable {name:?} (ring is {})", self.ring)),
            },
            Tok::Op('(') => {
                self.lex.bump();
                let e = self.expr()?;
                if self.lex.peek() != &Tok::Op(')') {
                    return self.lex.err("expected ')'");
                }
                self.lex.bump();
                Ok(e)
            }
            Tok::Op('-') => {
                self.lex.bump();
                Ok(self.atom()?.neg())
            }
            Tok::End => self.lex.err("unexpected end of input"),
            Tok::Op(c) => self.lex.err(format!("unexpected {c:?}")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.lex.peek() != &Tok::End {
            return self.lex.err("unexpected trailing input");
        }
        Ok(())
    }
}

fn parse_segment<F: Field>(ring: &Arc<Ring<F>>, full: &str, seg: &str, base: usize) -> Result<Poly<F>> {
    let lex = Lexer::new(full, seg, base)?;
    if lex.src.trim().is_empty() {
        return Err(Error::Parse { pos: lex.base, msg: "empty expression".into(), input: full.into() });
    }
    let mut p = Parser { lex, ring };
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

pub(crate) fn parse_poly<F: Field>(ring: &Arc<Ring<F>>, s: &str) -> Result<Poly<F>> {
    parse_segment(ring, s, s, 0)
}

pub(crate) fn parse_poly_list<F: Field>(ring: &Arc<Ring<F>>, s: &str) -> Result<Vec<Poly<F>>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), ','))) {
        if c == ',' {
            out.push(parse_segment(ring, s, &s[start..i], start)?);
            start = i + 1;
        }
    }
    Ok(out)
}

/// A ring given as `QQ[x,y,z]` or `GF(32003)[x1,x2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub vars: Vec<String>,
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perr = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into(), input: s.into() };
        let open = s.find('[').ok_or_else(|| perr(0, "expected FIELD[vars]"))?;
        let close = s.rfind(']').filter(|&c| c > open).ok_or_else(|| perr(s.len(), "expected ']'"))?;
        if !s[close + 1..].trim().is_empty() {
            return Err(perr(close + 1, "unexpected trailing input"));
        }
        let field: FieldSpec = s[..open].trim().parse()?;
        let mut vars = Vec::new();
        let mut off = open + 1;
        for v in s[open + 1..close].split(',') {
            let name = v.trim();
            if !is_identifier(name) {
                return Err(perr(off, "expected a variable name"));
            }
            if vars.iter().any(|w| w == name) {
                return Err(perr(off, "duplicate variable"));
            }
            vars.push(name.to_string());
            off += v.len() + 1;
        }
        Ok(RingSpec { field, vars })
    }
}

impl std::fmt::Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}
