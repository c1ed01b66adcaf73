//! Recursive-descent parser for rational-function expressions.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*        juxtaposition multiplies
//! factor := base ('^' ['-'] integer)?
//! base   := integer | 'x' | 'u' | 't' | '(' expr ')'
//! ```
//!
//! `x` and `u` name the same variable (the coordinate, or the local
//! uniformizer when the expression describes a Laurent series); `t` is the
//! generator of `F_{p^d}` over `F_p` and is only meaningful for `d > 1`.
//! Integer literals are reduced modulo `p`.

use std::sync::Arc;

use super::field::{FieldElement, FieldSpec};
use super::rational::{PointOfP1, RationalFunction};
use super::ring::Ring;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a Arc<FieldSpec>,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    acc = acc.div(&d).map_err(|_| syntax(at, "division by zero"))?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let at = self.pos;
        let e = self.integer_u64()?;
        if neg {
            if base.is_zero() {
                return Err(syntax(at, "division by zero"));
            }
            base.powi(-(e as i64))
        } else {
            Ok(base.pow(e))
        }
    }

    fn integer_u64(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .ok()
            .filter(|&e| e <= 1 << 20)
            .ok_or_else(|| syntax(start, "exponent too large"))
    }

    fn base(&mut self) -> Result<RationalFunction> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(syntax(self.pos, "expected ')'"));
                }
                Ok(e)
            }
            Some(b'x') | Some(b'u') => {
                self.pos += 1;
                Ok(RationalFunction::x(self.spec))
            }
            Some(b't') => {
                if self.spec.degree() == 1 {
                    return Err(syntax(at, "'t' requires an extension field (--d > 1)"));
                }
                self.pos += 1;
                Ok(RationalFunction::constant(FieldElement::generator(self.spec)))
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.spec.p();
                let mut r = 0u64;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    r = (r * 10 + (self.src[self.pos] - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(RationalFunction::constant(FieldElement::from_int(self.spec, r as i64)))
            }
            Some(c) => Err(syntax(at, format!("unexpected character '{}'", c as char))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses an expression into its canonical rational function.
pub fn parse_rational(text: &str, spec: &Arc<FieldSpec>) -> Result<RationalFunction> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        spec,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos, "unexpected trailing input"));
    }
    Ok(f)
}

/// Parses a constant expression (integers and `t`) into a field element.
pub fn parse_field_element(text: &str, spec: &Arc<FieldSpec>) -> Result<FieldElement> {
    let f = parse_rational(text, spec)?;
    if f.is_zero() {
        return Ok(FieldElement::zero(spec));
    }
    if f.degree() != Some(0) || !f.is_polynomial() {
        return Err(syntax(0, format!("'{}' is not a constant", text)));
    }
    Ok(f.num().coeff(0))
}

/// `inf` or a constant expression.
pub fn parse_point(text: &str, spec: &Arc<FieldSpec>) -> Result<PointOfP1> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") || t == "∞" {
        return Ok(PointOfP1::Infinity);
    }
    Ok(PointOfP1::Finite(parse_field_element(t, spec)?))
}

/// Comma-separated points.
pub fn parse_point_set(text: &str, spec: &Arc<FieldSpec>) -> Result<Vec<PointOfP1>> {
    let mut out = Vec::new();
    for part in split_top_level(text, b',') {
        if part.trim().is_empty() {
            continue;
        }
        out.push(parse_point(&part, spec)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `'[' expr (',' expr)* ']'`.
pub fn parse_witt_literal(text: &str, spec: &Arc<FieldSpec>) -> Result<Vec<RationalFunction>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax(0, "Witt vector literal must be enclosed in [ ]"))?;
    let offset = text.find('[').unwrap() + 1;
    let mut out = Vec::new();
    let mut start = 0usize;
    for part in split_top_level(inner, b',') {
        let f = parse_rational(&part, spec).map_err(|e| match e {
            Error::Syntax { pos, msg } => syntax(offset + start + pos, msg),
            other => other,
        })?;
        start += part.len() + 1;
        out.push(f);
    }
    if out.is_empty() {
        return Err(syntax(offset, "empty Witt vector"));
    }
    Ok(out)
}

/// Splits on `sep` outside parentheses.
pub fn split_top_level(text: &str, sep: u8) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && ch as u32 == sep as u32 {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    parts.push(cur);
    parts
}
