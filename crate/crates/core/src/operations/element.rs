//! Builtin element grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' int]
//! atom   := int | 'P' int | 'H(' int ',' int ')' | 'z' | 'z1' | 'z2' | 'z3' | '(' expr ')'
//! ```
//!
//! `Pn` is [P^n], `H(n,d)` a degree-d hypersurface in P^n, and `z` = `z1`.
//! [`parse_series`] additionally accepts `t` and negative exponents.

use crate::error::{Error, Result};
use crate::fgl::AmbientContext;
use crate::series::GradedSeries;

struct Parser<'a> {
    ctx: &'a AmbientContext,
    src: &'a [u8],
    pos: usize,
    allow_t: bool,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidArgument(format!(
            "bad element `{}` at {}: {msg}",
            String::from_utf8_lossy(self.src),
            self.pos
        ))
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn expr(&mut self) -> Result<GradedSeries> {
        let neg = self.eat(b'-');
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GradedSeries> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GradedSeries> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.allow_t && self.eat(b'-');
            let e = i32::try_from(self.int()?).map_err(|_| self.err("exponent too large"))?;
            return Ok(if neg { base.powi(-e)? } else { base.pow(e as u32)? });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GradedSeries> {
        let ctx = self.ctx;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(ctx.int(self.int()?)),
            Some(b'P') => {
                self.pos += 1;
                let n = self.int()?;
                Ok(ctx.pn_class(n as i32)?.into_ambient())
            }
            Some(b'H') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.int()?;
                self.expect(b',')?;
                let d = self.int()?;
                self.expect(b')')?;
                Ok(ctx.hypersurface_class(n as i32, d as i32)?.into_ambient())
            }
            Some(b'z') => {
                self.pos += 1;
                let name = match self.src.get(self.pos) {
                    Some(d @ b'1'..=b'3') => {
                        self.pos += 1;
                        format!("z{}", *d as char)
                    }
                    _ => "z1".to_string(),
                };
                ctx.var(&name)
            }
            Some(b't') if self.allow_t => {
                self.pos += 1;
                Ok(ctx.t())
            }
            _ => Err(self.err("expected P<n>, H(n,d), z, an integer or `(`")),
        }
    }
}

/// Parses the builtin element grammar into an ambient series in b and z.
pub fn parse_element(ctx: &AmbientContext, src: &str) -> Result<GradedSeries> {
    parse(ctx, src, false)
}

/// The element grammar extended by the Laurent variable `t`, for slice
/// weights such as `t^2` or `P1*t^-1`.
pub fn parse_series(ctx: &AmbientContext, src: &str) -> Result<GradedSeries> {
    parse(ctx, src, true)
}

fn parse(ctx: &AmbientContext, src: &str, allow_t: bool) -> Result<GradedSeries> {
    let mut p = Parser { ctx, src: src.as_bytes(), pos: 0, allow_t };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
