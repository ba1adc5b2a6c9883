//! Text formats: polynomials, ring descriptors, ideals and perfection
//! elements.
//!
//! Polynomial grammar: terms joined by `+`/`-`; a term is a `*`-separated
//! product of factors, each an integer literal, `name` or `name^k`.
//! Integer literals of any size are reduced mod p.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{Limits, Monomial, MonomialOrder, RingCtx};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

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

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a polynomial in the grammar above.
pub fn parse_poly(text: &str, ctx: &Arc<RingCtx>) -> Result<Polynomial> {
    let mut cur = Cursor::new(text);
    let poly = poly_expr(&mut cur, ctx)?;
    if !cur.at_end() {
        return cur.err(format!("unexpected character `{}`", cur.src[cur.pos] as char));
    }
    Ok(poly)
}

fn poly_expr(cur: &mut Cursor<'_>, ctx: &Arc<RingCtx>) -> Result<Polynomial> {
    let k = ctx.field();
    let mut terms = Vec::new();
    let mut negative = cur.eat(b'-');
    if !negative {
        cur.eat(b'+');
    }
    loop {
        let (m, c) = term(cur, ctx)?;
        terms.push((m, if negative { k.neg(c) } else { c }));
        match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            _ => break,
        }
    }
    let poly = Polynomial::from_terms(ctx, terms);
    if let Some(d) = poly.total_degree() {
        ctx.check_degree(d)?;
    }
    Ok(poly)
}

fn term(cur: &mut Cursor<'_>, ctx: &Arc<RingCtx>) -> Result<(Monomial, u32)> {
    let k = ctx.field();
    let mut coeff = 1u32;
    let mut mono = Monomial::one(ctx.nvars());
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = cur.digits();
                let mut v = 0u32;
                for d in digits.bytes() {
                    v = k.add(k.mul(v, 10 % k.characteristic()), k.reduce((d - b'0') as u64));
                }
                coeff = k.mul(coeff, v);
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = cur.pos;
                let name = cur.ident();
                let idx = ctx.var_index(name).ok_or_else(|| Error::UnknownVariable(name.into()));
                let idx = match idx {
                    Ok(i) => i,
                    Err(e) => {
                        cur.pos = start;
                        return Err(e);
                    }
                };
                let mut exp = 1u32;
                if cur.eat(b'^') {
                    let digits = cur.digits();
                    if digits.is_empty() {
                        return cur.err("expected exponent after `^`");
                    }
                    exp = match digits.parse() {
                        Ok(e) => e,
                        Err(_) => return cur.err(format!("exponent {digits} is too large")),
                    };
                }
                mono.0[idx] = match mono.0[idx].checked_add(exp) {
                    Some(e) => e,
                    None => return cur.err("exponent overflow"),
                };
            }
            Some(c) => return cur.err(format!("expected a coefficient or variable, found `{}`", c as char)),
            None => return cur.err("unexpected end of input"),
        }
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((mono, coeff))
}

/// Parses a comma-separated generator list. An empty string is the zero ideal.
pub fn parse_poly_list(text: &str, ctx: &Arc<RingCtx>) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let p = parse_poly(piece, ctx).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Textual ring description: `GF(p)[v1,...,vn]`, optionally followed by
/// `/(F)` for a hypersurface quotient and `@lex` for the lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDescriptor {
    pub p: u32,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub modulus: Option<String>,
}

impl RingDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let tag = cur.ident();
        if tag != "GF" {
            return cur.err("ring descriptor must start with `GF(`");
        }
        if !cur.eat(b'(') {
            return cur.err("expected `(`");
        }
        let digits = cur.digits();
        let p: u32 = match digits.parse() {
            Ok(p) => p,
            Err(_) => return cur.err("expected a prime characteristic"),
        };
        if !cur.eat(b')') {
            return cur.err("expected `)`");
        }
        if !cur.eat(b'[') {
            return cur.err("expected `[`");
        }
        let mut vars = Vec::new();
        loop {
            let v = cur.ident();
            if v.is_empty() {
                return cur.err("expected a variable name");
            }
            vars.push(v.to_string());
            if cur.eat(b']') {
                break;
            }
            if !cur.eat(b',') {
                return cur.err("expected `,` or `]`");
            }
        }
        let mut modulus = None;
        if cur.eat(b'/') {
            if !cur.eat(b'(') {
                return cur.err("expected `(` after `/`");
            }
            let start = cur.pos;
            while cur.pos < cur.src.len() && cur.src[cur.pos] != b')' {
                cur.pos += 1;
            }
            if cur.pos == cur.src.len() {
                return cur.err("unterminated modulus");
            }
            modulus = Some(text[start..cur.pos].trim().to_string());
            cur.pos += 1;
        }
        let mut order = MonomialOrder::Grevlex;
        if cur.eat(b'@') {
            let start = cur.pos;
            order = cur.ident().parse().map_err(|_| Error::Parse { pos: start, msg: "unknown order".into() })?;
        }
        if !cur.at_end() {
            return cur.err("trailing input after ring descriptor");
        }
        Ok(RingDescriptor { p, vars, order, modulus })
    }

    pub fn build(&self, limits: Limits) -> Result<Arc<RingCtx>> {
        let ctx = RingCtx::with_names(self.p, self.vars.clone(), self.order.clone(), limits)?;
        match &self.modulus {
            None => Ok(ctx),
            Some(text) => {
                let f = parse_poly(text, &ctx)?;
                ctx.with_modulus(&f)
            }
        }
    }

    pub fn from_ctx(ctx: &Arc<RingCtx>) -> Self {
        RingDescriptor {
            p: ctx.characteristic(),
            vars: ctx.vars().to_vec(),
            order: ctx.order().clone(),
            modulus: ctx.modulus().map(|f| f.to_string()),
        }
    }
}

impl std::fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})[{}]", self.p, self.vars.join(","))?;
        if let Some(m) = &self.modulus {
            write!(f, "/({m})")?;
        }
        if self.order != MonomialOrder::Grevlex {
            write!(f, "@{}", self.order.name())?;
        }
        Ok(())
    }
}

/// Splits `root(<poly>, <e>)` into its parts. A bare polynomial is level 0.
pub fn parse_root_form(text: &str, ctx: &Arc<RingCtx>) -> Result<(Polynomial, u32)> {
    let t = text.trim();
    let Some(inner) = t.strip_prefix("root") else {
        return Ok((parse_poly(t, ctx)?, 0));
    };
    let inner = inner.trim_start();
    let offset = text.len() - inner.len();
    let Some(inner) = inner.strip_prefix('(').and_then(|s| s.strip_suffix(')')) else {
        return Err(Error::Parse { pos: offset, msg: "expected `root(<poly>, <e>)`".into() });
    };
    let Some((body, level)) = inner.rsplit_once(',') else {
        return Err(Error::Parse { pos: offset, msg: "expected `,` before the level".into() });
    };
    let level: u32 = level.trim().parse().map_err(|_| Error::Parse {
        pos: offset + 1 + body.len(),
        msg: "level must be a non-negative integer".into(),
    })?;
    let body = parse_poly(body, ctx).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset + 1, msg },
        other => other,
    })?;
    Ok((body, level))
}
