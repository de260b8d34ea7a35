//! Text format for expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' ['-'] integer)?
//! primary := number | 'x' | 'y' | 'i' | 'exp' '(' expr ')' | atom | '(' expr ')'
//! atom    := ident ("'"* | '_' [xy]+)
//! ```
//!
//! Identifiers are parameters unless the [`AtomContext`] declares them as
//! functions of `x`, `y` or `(x, y)`. Decimal literals are read exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::atom::{Atom, AtomKind};
use super::coeff::Coeff;
use super::forms::OneForm;
use super::rational::RationalExpr;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FnDecl {
    OfX,
    OfY,
    OfXY,
}

/// Declares which identifiers denote opaque functions.
#[derive(Clone, Debug, Default)]
pub struct AtomContext {
    fns: BTreeMap<String, FnDecl>,
}

impl AtomContext {
    pub fn new() -> Self {
        AtomContext::default()
    }

    pub fn with_fn(mut self, name: &str, decl: FnDecl) -> Self {
        self.fns.insert(name.to_string(), decl);
        self
    }

    pub fn decl(&self, name: &str) -> Option<FnDecl> {
        self.fns.get(name).copied()
    }
}

pub fn parse_expr(src: &str) -> Result<RationalExpr> {
    parse_expr_in(src, &AtomContext::default())
}

pub fn parse_expr_in(src: &str, ctx: &AtomContext) -> Result<RationalExpr> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, ctx };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses `{"dx": "...", "dy": "..."}`; a missing key means zero.
pub fn parse_oneform_json(v: &serde_json::Value, ctx: &AtomContext) -> Result<OneForm> {
    let obj = v.as_object().ok_or(Error::Parse { offset: 0, message: "one-form must be an object".into() })?;
    let get = |k: &str| -> Result<RationalExpr> {
        match obj.get(k) {
            None => Ok(RationalExpr::zero()),
            Some(serde_json::Value::String(s)) => parse_expr_in(s, ctx),
            Some(serde_json::Value::Number(n)) => parse_expr_in(&n.to_string(), ctx),
            Some(_) => Err(Error::Parse { offset: 0, message: format!("`{}` must be an expression string", k) }),
        }
    };
    for k in obj.keys() {
        if k != "dx" && k != "dy" {
            return Err(Error::Parse { offset: 0, message: format!("unknown key `{}`", k) });
        }
    }
    Ok(OneForm::new(get("dx")?, get("dy")?))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ctx: &'a AtomContext,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { offset: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalExpr> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<RationalExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| Error::Parse { offset: at, message: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalExpr> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalExpr> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let e: i32 = txt.parse().map_err(|_| self.err("exponent too large"))?;
        let e = if neg { -e } else { e };
        base.pow(e).map_err(|_| Error::Parse { offset: start, message: "negative power of zero".into() })
    }

    fn primary(&mut self) -> Result<RationalExpr> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(_) => Err(self.err("unexpected character")),
        }
    }

    fn number(&mut self) -> Result<RationalExpr> {
        let start = self.pos;
        let mut mant = BigInt::zero();
        let mut scale: i64 = 0;
        let mut digits = 0;
        let mut seen_dot = false;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            if c.is_ascii_digit() {
                mant = mant * 10 + BigInt::from(c - b'0');
                digits += 1;
                if seen_dot {
                    scale -= 1;
                }
            } else if c == b'.' && !seen_dot {
                seen_dot = true;
            } else {
                break;
            }
            self.pos += 1;
        }
        if digits == 0 {
            return Err(Error::Parse { offset: start, message: "malformed number".into() });
        }
        // optional exponent: e[+-]digits
        if self.pos < self.s.len() && (self.s[self.pos] == b'e' || self.s[self.pos] == b'E') {
            let save = self.pos;
            let mut j = self.pos + 1;
            let mut neg = false;
            if j < self.s.len() && (self.s[j] == b'+' || self.s[j] == b'-') {
                neg = self.s[j] == b'-';
                j += 1;
            }
            let ds = j;
            while j < self.s.len() && self.s[j].is_ascii_digit() {
                j += 1;
            }
            if j > ds {
                let e: i64 = std::str::from_utf8(&self.s[ds..j])
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Parse { offset: ds, message: "exponent too large".into() })?;
                scale += if neg { -e } else { e };
                self.pos = j;
            } else {
                self.pos = save;
            }
        }
        if scale.unsigned_abs() > 4000 {
            return Err(Error::Parse { offset: start, message: "exponent too large".into() });
        }
        let ten = BigInt::from(10);
        let r = if scale >= 0 {
            BigRational::from_integer(mant * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(mant, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(RationalExpr::constant(Coeff::new(r, BigRational::zero())))
    }

    fn ident(&mut self) -> Result<RationalExpr> {
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
        let mut primes = 0u32;
        while self.pos < self.s.len() && self.s[self.pos] == b'\'' {
            primes += 1;
            self.pos += 1;
        }
        let bad = |m: &str| Error::Parse { offset: start, message: format!("`{}`: {}", name, m) };
        match name.as_str() {
            "x" | "y" | "i" if primes > 0 => Err(bad("derivative marks on a builtin")),
            "x" => Ok(RationalExpr::x()),
            "y" => Ok(RationalExpr::y()),
            "i" => Ok(RationalExpr::i()),
            "exp" => {
                if primes > 0 {
                    return Err(bad("derivative marks on exp"));
                }
                if !self.eat(b'(') {
                    return Err(self.err("expected `(` after exp"));
                }
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                if e.is_zero() {
                    return Ok(RationalExpr::one());
                }
                Ok(RationalExpr::atom(Atom::exp(e)))
            }
            _ => {
                // `w_xy` for a declared function of (x, y)
                if let Some((base, suffix)) = name.rsplit_once('_') {
                    if self.ctx.decl(base) == Some(FnDecl::OfXY) {
                        if primes > 0 || suffix.is_empty() || !suffix.bytes().all(|c| c == b'x' || c == b'y') {
                            return Err(bad("malformed partial-derivative suffix"));
                        }
                        let dx = suffix.bytes().filter(|&c| c == b'x').count() as u32;
                        let dy = suffix.len() as u32 - dx;
                        return Ok(RationalExpr::atom(Atom::fn_of_xy(base).with_kind(AtomKind::FnXY { dx, dy })));
                    }
                }
                match self.ctx.decl(&name) {
                    None if primes > 0 => Err(bad("derivative marks on a parameter")),
                    None => Ok(RationalExpr::param(&name)),
                    Some(FnDecl::OfX) => {
                        Ok(RationalExpr::atom(Atom::fn_of_x(&name).with_kind(AtomKind::FnX { order: primes })))
                    }
                    Some(FnDecl::OfY) => {
                        Ok(RationalExpr::atom(Atom::fn_of_y(&name).with_kind(AtomKind::FnY { order: primes })))
                    }
                    Some(FnDecl::OfXY) if primes > 0 => Err(bad("use `_x`/`_y` suffixes for partials")),
                    Some(FnDecl::OfXY) => Ok(RationalExpr::atom(Atom::fn_of_xy(&name))),
                }
            }
        }
    }
}

impl std::str::FromStr for RationalExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_precedence() {
        let e = parse_expr("-x^2 + 3*x*y/2").unwrap();
        let x = RationalExpr::x();
        let y = RationalExpr::y();
        let expect = x.mul(&x).neg().add(&RationalExpr::ratio(3, 2).mul(&x).mul(&y));
        assert_eq!(e, expect);
        assert_eq!(parse_expr("x^-1").unwrap(), x.inv().unwrap());
        assert_eq!(parse_expr("2^3^1").is_err(), true);
    }

    #[test]
    fn exact_decimals() {
        assert_eq!(parse_expr("0.1").unwrap(), RationalExpr::ratio(1, 10));
        assert_eq!(parse_expr("2.5e-1").unwrap(), RationalExpr::ratio(1, 4));
        assert_eq!(parse_expr("(1+i)*(1-i)").unwrap(), RationalExpr::int(2));
    }

    #[test]
    fn atoms_follow_context() {
        let ctx = AtomContext::new().with_fn("u", FnDecl::OfY).with_fn("w", FnDecl::OfXY);
        let e = parse_expr_in("u''", &ctx).unwrap();
        assert_eq!(e.atoms()[0].name(), "u''");
        let w = parse_expr_in("w_yx", &ctx).unwrap();
        assert_eq!(w.atoms()[0].name(), "w_xy");
        assert!(parse_expr("c'").is_err());
        assert!(parse_expr_in("c", &ctx).unwrap().is_parametric_constant());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_expr("x + * y") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{:?}", other),
        }
        assert!(parse_expr("1/(x-x)").is_err());
        assert!(parse_expr("(x").is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["1/(1 - x*y)", "(x + i*y)^2/(x - 2)", "a*x - b*y^3 + 1/2"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{}", e);
        }
    }
}
