//! Expressions for skew polynomials.
//!
//! Grammar (juxtaposition is multiplication, kept in written order):
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := power (['*' | '/'] power)*
//! power  := atom ['^' exp]
//! exp    := int | '(' int '/' int ')'
//! atom   := int | 'T' | 'theta' | 'a' | variable | '(' expr ')'
//! ```
//!
//! `x / c` needs a field element `c`. Fractional exponents are only allowed
//! on `T` and need a denominator dividing a power of `q`.

use thiserror::Error;

use crate::coeff::{Field, FieldElem};
use crate::skew::{SkewPoly, TwistPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (at column {column})")]
pub struct ExprError {
    pub message: String,
    /// 1-based character column within the expression.
    pub column: usize,
    /// Byte offset within the expression.
    pub offset: usize,
}

/// Which names denote the two ring variables, and which are rejected with
/// a reason.
#[derive(Clone, Debug)]
pub struct ExprContext {
    pub field: Field,
    pub twist: TwistPair,
    pub rho: Option<String>,
    pub sigma: Option<String>,
    pub forbidden: Vec<(String, String)>,
}

impl ExprContext {
    /// Both variables under their canonical names.
    pub fn ring(field: &Field, twist: TwistPair) -> ExprContext {
        let (r, s) = twist.names();
        ExprContext { field: field.clone(), twist, rho: Some(r.into()), sigma: Some(s.into()), forbidden: Vec::new() }
    }

    /// Entries of a t-module matrix: only `tau`.
    pub fn tau_only(field: &Field) -> ExprContext {
        ExprContext {
            field: field.clone(),
            twist: TwistPair::TAU_T,
            rho: Some("tau".into()),
            sigma: None,
            forbidden: vec![
                ("t".into(), "t is not allowed in a t-module matrix".into()),
                ("sigma".into(), "sigma is not allowed in a t-module matrix".into()),
            ],
        }
    }

    /// Entries of a motive matrix: only `t`.
    pub fn t_only(field: &Field) -> ExprContext {
        ExprContext {
            field: field.clone(),
            twist: TwistPair::T_TAU,
            rho: Some("t".into()),
            sigma: None,
            forbidden: vec![
                ("tau".into(), "tau is not allowed in a motive matrix".into()),
                ("sigma".into(), "sigma is not allowed in a motive matrix".into()),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    src_len: usize,
}

fn lex(src: &str) -> Result<Lexed, (String, usize)> {
    let mut toks = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                it.next();
            }
            let v = src[i..end].parse::<u64>().map_err(|_| ("integer too large".to_string(), i))?;
            toks.push((Tok::Int(v), i));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            toks.push((Tok::Ident(src[i..end].to_string()), i));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), i));
            it.next();
        } else {
            return Err((format!("unexpected character '{c}'"), i));
        }
    }
    Ok(Lexed { toks, src_len: src.len() })
}

struct Parser<'a> {
    ctx: &'a ExprContext,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

type PResult<T> = Result<T, (String, usize)>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err((format!("expected '{c}'"), self.offset()))
        }
    }

    fn constant(&self, c: FieldElem) -> SkewPoly {
        SkewPoly::constant(&self.ctx.field, self.ctx.twist, c)
    }

    fn expr(&mut self) -> PResult<SkewPoly> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> PResult<SkewPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.power()?;
                let c = match d.terms().next() {
                    Some((&(0, 0), c)) if d.terms().count() == 1 => c.clone(),
                    None => return Err(("division by zero".into(), at)),
                    _ => return Err(("can only divide by a field element".into(), at)),
                };
                acc = acc.mul(&self.constant(c.inv().expect("nonzero")));
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> PResult<SkewPoly> {
        let is_t = matches!(self.peek(), Some(Tok::Ident(s)) if s == "T" || s == "theta");
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        if self.eat('(') {
            let n = self.int()?;
            self.expect('/')?;
            let dat = self.offset();
            let d = self.int()?;
            self.expect(')')?;
            if !is_t {
                return Err(("fractional exponents are only allowed on T".into(), at));
            }
            if d == 0 {
                return Err(("zero denominator".into(), dat));
            }
            return self.root_power(n, d).map_err(|m| (m, dat));
        }
        let e = self.int()?;
        let mut acc = SkewPoly::one(&self.ctx.field, self.ctx.twist);
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `θ^(n/d)` with `d | q^e`.
    fn root_power(&self, n: u64, d: u64) -> Result<SkewPoly, String> {
        let q = self.ctx.field.order() as u64;
        let mut level = 0u32;
        let mut qe = 1u64;
        while !qe.is_multiple_of(d) {
            level += 1;
            qe = qe.checked_mul(q).filter(|_| level <= 16).ok_or_else(|| format!("denominator {d} does not divide a power of q = {q}"))?;
        }
        let exp = n * (qe / d);
        let one = self.ctx.field.from_int(1);
        Ok(self.constant(FieldElem::monomial(&self.ctx.field, one, exp, level)))
    }

    fn int(&mut self) -> PResult<u64> {
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err(("expected an integer".into(), self.offset())),
        }
    }

    fn atom(&mut self) -> PResult<SkewPoly> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                let p = self.ctx.field.characteristic() as u64;
                Ok(self.constant(FieldElem::from_int(&self.ctx.field, (v % p) as i64)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let f = &self.ctx.field;
                let tw = self.ctx.twist;
                if name == "T" || name == "theta" {
                    return Ok(self.constant(FieldElem::theta(f)));
                }
                if self.ctx.rho.as_deref() == Some(name.as_str()) {
                    return Ok(SkewPoly::rho(f, tw));
                }
                if self.ctx.sigma.as_deref() == Some(name.as_str()) {
                    return Ok(SkewPoly::sigma(f, tw));
                }
                if name == "a" && f.degree() > 1 {
                    return Ok(self.constant(FieldElem::from_fq(f, f.generator())));
                }
                if let Some((_, why)) = self.ctx.forbidden.iter().find(|(n, _)| *n == name) {
                    return Err((why.clone(), at));
                }
                Err((format!("unknown identifier '{name}'"), at))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err((format!("unexpected '{c}'"), at)),
            None => Err(("unexpected end of expression".into(), at)),
        }
    }
}

pub fn parse_expr(src: &str, ctx: &ExprContext) -> Result<SkewPoly, ExprError> {
    let to_err = |(message, offset): (String, usize)| ExprError {
        message,
        column: src[..offset.min(src.len())].chars().count() + 1,
        offset,
    };
    let lexed = lex(src).map_err(to_err)?;
    let mut p = Parser { ctx, toks: lexed.toks, pos: 0, end: lexed.src_len };
    if p.toks.is_empty() {
        return Err(to_err(("empty expression".into(), 0)));
    }
    let e = p.expr().map_err(to_err)?;
    if p.pos < p.toks.len() {
        return Err(to_err(("unexpected trailing input".into(), p.offset())));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn noncommutative_order_is_kept() {
        let f = f3();
        let ctx = ExprContext::tau_only(&f);
        let p = parse_expr("tau*T", &ctx).unwrap();
        assert_eq!(p.to_string(), "T^3*tau");
        assert_eq!(parse_expr("T tau", &ctx).unwrap().to_string(), "T*tau");
    }

    #[test]
    fn wrong_side_is_rejected() {
        let f = f3();
        let e = parse_expr("T + t", &ExprContext::tau_only(&f)).unwrap_err();
        assert_eq!(e.column, 5);
        assert!(e.message.contains("t-module"));
        assert!(parse_expr("tau", &ExprContext::t_only(&f)).is_err());
    }

    #[test]
    fn round_trips_rendering() {
        let f = f3();
        let ctx = ExprContext::ring(&f, TwistPair::SIGMA_T);
        for s in ["(T + 1)/(T^2 - 1)*sigma^2*t - t", "-T^(1/3)*sigma + t^2", "T^(2/9)", "1/T*sigma"] {
            let p = parse_expr(s, &ctx).unwrap();
            let again = parse_expr(&p.to_string(), &ctx).unwrap();
            assert_eq!(p, again, "{s} -> {p}");
        }
        assert_eq!(parse_expr("T^(1/3)", &ctx).unwrap().to_string(), "T^(1/3)");
    }

    #[test]
    fn prime_power_generator() {
        let f = Field::new(2, 2).unwrap();
        let ctx = ExprContext::ring(&f, TwistPair::TAU_T);
        let p = parse_expr("(a + 1)*T*tau + a^2", &ctx).unwrap();
        assert_eq!(parse_expr(&p.to_string(), &ctx).unwrap(), p);
        assert!(parse_expr("a", &ExprContext::ring(&f3(), TwistPair::TAU_T)).is_err());
    }

    #[test]
    fn errors_have_columns() {
        let f = f3();
        let ctx = ExprContext::ring(&f, TwistPair::TAU_T);
        assert_eq!(parse_expr("T + ", &ctx).unwrap_err().column, 5);
        assert_eq!(parse_expr("T ) ", &ctx).unwrap_err().column, 3);
        assert!(parse_expr("tau/tau", &ctx).is_err());
        assert!(parse_expr("T^(1/2)", &ctx).is_err());
        assert!(parse_expr("", &ctx).is_err());
    }
}
