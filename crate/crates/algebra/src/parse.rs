//! Recursive-descent parser for rational expressions and 1-forms.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | name | '(' expr ')'
//! form   := 'form' '(' expr (',' expr)* ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::AlgebraError;

use crate::numfield::{AlgNumber, NumberField};
use crate::polyrat::{MPoly, RFunc, URFunc};
use crate::rat::Rat;
use crate::upoly::UPoly;

type RA = RFunc<AlgNumber>;

/// Variable names and declared algebraic constants.
#[derive(Clone, Debug)]
pub struct Scope {
    vars: Vec<(String, usize)>,
    alg: Option<(String, Arc<NumberField>)>,
}

impl Scope {
    /// `x1..xn`, plus the aliases `x`, `y` for the first two variables.
    pub fn standard(n: usize) -> Self {
        let mut vars: Vec<(String, usize)> = (0..n).map(|i| (format!("x{}", i + 1), i)).collect();
        if n >= 1 {
            vars.push(("x".into(), 0));
        }
        if n >= 2 {
            vars.push(("y".into(), 1));
        }
        Scope { vars, alg: None }
    }

    /// A single variable named `name`, mapped to index 0.
    pub fn single(name: &str) -> Self {
        Scope { vars: vec![(name.to_string(), 0)], alg: None }
    }

    pub fn nvars(&self) -> usize {
        self.vars.iter().map(|v| v.1 + 1).max().unwrap_or(0)
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.alg.as_ref().map(|a| &a.1)
    }

    /// Handles `name: minpoly-in-t`, e.g. `alpha: t^2-2`.
    pub fn declare(&mut self, decl: &str) -> Result<(), AlgebraError> {
        let (name, poly) = decl.split_once(':').ok_or(AlgebraError::SyntaxError { pos: 0, msg: "expected `name: polynomial`".into() })?;
        let name = name.trim().to_string();
        let tscope = Scope::single("t");
        let m = tscope.parse_alg(poly.trim())?;
        if !m.is_poly() {
            return Err(AlgebraError::InvalidField("minimal polynomial must be a polynomial".into()));
        }
        let up = m.num().to_rat_poly().ok_or(AlgebraError::InvalidField("rational coefficients required".into()))?;
        let f = NumberField::new(up.to_upoly(0))?.with_name(&name);
        self.alg = Some((name, f));
        Ok(())
    }

    /// Parses over the declared number field (or Q).
    pub fn parse_alg(&self, s: &str) -> Result<RA, AlgebraError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, scope: self };
        let r = p.expr()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(r)
    }

    /// Parses a rational function with rational coefficients.
    pub fn parse(&self, s: &str) -> Result<RFunc<Rat>, AlgebraError> {
        let r = self.parse_alg(s)?;
        r.to_rat_func().ok_or(AlgebraError::SyntaxError { pos: 0, msg: "algebraic coefficients are not allowed here".into() })
    }

    /// Parses `form(e1, ..., en)`.
    pub fn parse_form(&self, s: &str) -> Result<Vec<RFunc<Rat>>, AlgebraError> {
        let t = s.trim();
        let inner = t
            .strip_prefix("form")
            .map(|r| r.trim_start())
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or(AlgebraError::SyntaxError { pos: 0, msg: "expected form(...)".into() })?;
        split_top(inner).iter().map(|e| self.parse(e)).collect()
    }
}

/// Splits on commas at parenthesis depth 0.
pub fn split_top(s: &str) -> Vec<String> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur);
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    scope: &'a Scope,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::SyntaxError { pos: self.pos, msg: msg.to_string() }
    }
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }
    fn expr(&mut self) -> Result<RA, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn term(&mut self) -> Result<RA, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.div(&d);
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn unary(&mut self) -> Result<RA, AlgebraError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }
    fn power(&mut self) -> Result<RA, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected integer exponent"));
            }
            let e: i64 = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(self.err("division by zero"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }
    fn atom(&mut self) -> Result<RA, AlgebraError> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
            return Ok(RA::constant(AlgNumber::rational(Rat::from_integer(n))));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
            if let Some((_, i)) = self.scope.vars.iter().find(|(n, _)| n == name) {
                return Ok(RA::var(*i));
            }
            if let Some((an, f)) = &self.scope.alg {
                if an == name {
                    return Ok(RA::constant(f.gen()));
                }
            }
            self.pos = start;
            return Err(AlgebraError::UnknownVariable(name.to_string()));
        }
        Err(self.err(&format!("unexpected character `{}`", c as char)))
    }
}

/// Parses a univariate rational function in `z`.
pub fn parse_urfunc(s: &str) -> Result<URFunc<Rat>, AlgebraError> {
    let r = Scope::single("z").parse(s)?;
    Ok(URFunc::new(to_u(r.num()), to_u(r.den())))
}

fn to_u(p: &MPoly<Rat>) -> UPoly<Rat> {
    p.to_upoly(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn parses_sum_with_fraction() {
        let sc = Scope::standard(2);
        let r = sc.parse("x1*x2 + 1/2").unwrap();
        let want = RFunc::var(0).mul(&RFunc::var(1)).add(&RFunc::constant(rat(1, 2)));
        assert_eq!(r, want);
    }

    #[test]
    fn parses_form() {
        let sc = Scope::standard(2);
        let f = sc.parse_form("form(x2, x1)").unwrap();
        assert_eq!(f, vec![RFunc::var(1), RFunc::var(0)]);
        let f = sc.parse_form("form(2*(7*x1-2)/(x1^2-2), -16/(x2^2-2))").unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn print_parse_round_trip() {
        let sc = Scope::standard(3);
        for s in ["(x1^2 - 2*x2^2)/(x3 + 1)", "-x1/(x2^2 + 3)", "1/2*x1 - 3", "x1^-2"] {
            let r = sc.parse(s).unwrap();
            assert_eq!(sc.parse(&r.text()).unwrap(), r, "{s} -> {}", r.text());
        }
    }

    #[test]
    fn algebraic_declaration() {
        let mut sc = Scope::standard(1);
        sc.declare("alpha: t^2-2").unwrap();
        let r = sc.parse_alg("alpha*alpha - x1").unwrap();
        assert_eq!(r, RFunc::from_int(2).sub(&RFunc::var(0)).map(|c: &AlgNumber| c.clone()));
        assert!(sc.parse("alpha").is_err());
    }

    #[test]
    fn errors_report_position() {
        let sc = Scope::standard(2);
        assert!(matches!(sc.parse("x1 + * 2"), Err(AlgebraError::SyntaxError { pos: 5, .. })));
        assert!(matches!(sc.parse("w + 1"), Err(AlgebraError::UnknownVariable(_))));
    }
}
