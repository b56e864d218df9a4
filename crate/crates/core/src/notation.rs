//! A small expression language for forms and vector fields.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "^") unary | "/" unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("**" int)?
//! atom   := int | "i" | "x"k | "e"digits | "e[" k ("," k)* "]"
//!         | "E"k | "E[" k "]" | "$"name
//!         | ("exp" | "conj" | "d") "(" expr ")" | "(" expr ")"
//! ```
//!
//! `e13` is `ε₁∧ε₃`, `E2` the frame vector `e₂`, `x1` the first coordinate.
//! `*` and `^` are both the wedge product (scalar times vector is allowed);
//! `/` divides by a nonzero constant; `d(...)` needs a frame.

use crate::error::{Error, Result};
use crate::exterior::{Blade, Poly, Polyform, Scalar, Vector};
use crate::frame::FrameAlgebra;

/// A parsed value: a form or a vector field.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Form(Polyform),
    Vector(Vector),
}

impl Value {
    pub fn into_form(self) -> Result<Polyform> {
        match self {
            Value::Form(f) => Ok(f),
            Value::Vector(_) => Err(Error::Input("expected a form, found a vector field".into())),
        }
    }

    pub fn into_vector(self) -> Result<Vector> {
        match self {
            Value::Vector(v) => Ok(v),
            // the zero form doubles as the zero vector
            Value::Form(f) if f.is_zero() => Ok(Vector::zero(f.dim())),
            Value::Form(_) => Err(Error::Input("expected a vector field, found a form".into())),
        }
    }
}

/// Resolves `$name` references.
pub type Resolver<'a> = dyn Fn(&str) -> Result<Value> + 'a;

pub struct Context<'a> {
    pub dim: usize,
    pub frame: Option<&'a FrameAlgebra>,
    pub resolver: Option<&'a Resolver<'a>>,
}

impl<'a> Context<'a> {
    pub fn new(dim: usize) -> Self {
        Context {
            dim,
            frame: None,
            resolver: None,
        }
    }

    pub fn with_frame(frame: &'a FrameAlgebra) -> Self {
        Context {
            dim: frame.dim(),
            frame: Some(frame),
            resolver: None,
        }
    }

    pub fn resolver(mut self, r: &'a Resolver<'a>) -> Self {
        self.resolver = Some(r);
        self
    }
}

/// Parses a form expression.
pub fn parse_form(src: &str, ctx: &Context<'_>) -> Result<Polyform> {
    parse_value(src, ctx)?.into_form()
}

/// Parses a vector expression.
pub fn parse_vector(src: &str, ctx: &Context<'_>) -> Result<Vector> {
    parse_value(src, ctx)?.into_vector()
}

/// Parses a scalar-valued (degree-0) expression into a polynomial.
pub fn parse_poly(src: &str, ctx: &Context<'_>) -> Result<Poly> {
    let f = parse_form(src, ctx)?;
    if f.terms().any(|(b, _)| *b != Blade::SCALAR) {
        return Err(Error::Input(format!("'{src}' is not a function")));
    }
    Ok(f.scalar_part())
}

pub fn parse_value(src: &str, ctx: &Context<'_>) -> Result<Value> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        ctx,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::parse(p.pos, format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'s, 'c> {
    src: &'s [u8],
    pos: usize,
    ctx: &'c Context<'c>,
}

impl Parser<'_, '_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek2(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos + 1).copied()
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
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, "expected an integer"))
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let at = self.pos;
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = add(acc, rhs, at)?;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = add(acc, neg(rhs), at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let at = self.pos;
            if self.peek() == Some(b'*') && self.peek2() != Some(b'*') {
                self.pos += 1;
                let rhs = self.unary()?;
                acc = mul(acc, rhs, at)?;
            } else if self.eat(b'^') {
                let rhs = self.unary()?;
                acc = mul(acc, rhs, at)?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                let c = constant_of(&rhs)
                    .ok_or_else(|| Error::parse(at, "division by a non-constant"))?;
                let inv = c.inv().ok_or_else(|| Error::parse(at, "division by zero"))?;
                acc = scale(acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat(b'-') {
            return Ok(neg(self.unary()?));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() == Some(b'*') && self.peek2() == Some(b'*') {
            let at = self.pos;
            self.pos += 2;
            self.skip_ws();
            let k = self.int()?;
            let Value::Form(f) = base else {
                return Err(Error::parse(at, "power of a vector field"));
            };
            return Ok(Value::Form(f.wedge_pow(k as u32)));
        }
        Ok(base)
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn index_in_frame(&self, k: usize, at: usize) -> Result<usize> {
        if k == 0 || k > self.ctx.dim {
            return Err(Error::parse(
                at,
                format!("index {k} outside frame of dimension {}", self.ctx.dim),
            ));
        }
        Ok(k)
    }

    fn atom(&mut self) -> Result<Value> {
        let dim = self.ctx.dim;
        let at = match self.peek() {
            None => return Err(Error::parse(self.pos, "unexpected end of expression")),
            Some(_) => self.pos,
        };
        let c = self.src[at];
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            self.expect(b')')?;
            return Ok(v);
        }
        if c.is_ascii_digit() {
            let n = self.int()?;
            let n = i64::try_from(n).map_err(|_| Error::parse(at, "integer too large"))?;
            return Ok(Value::Form(Polyform::constant(dim, Scalar::int(n))));
        }
        if c == b'$' {
            self.pos += 1;
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric()
                    || matches!(self.src[self.pos], b'_' | b'.' | b'-'))
            {
                self.pos += 1;
            }
            let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
            if name.is_empty() {
                return Err(Error::parse(at, "empty reference after '$'"));
            }
            let resolver = self
                .ctx
                .resolver
                .ok_or_else(|| Error::parse(at, format!("no names in scope for ${name}")))?;
            return resolver(&name);
        }
        if c.is_ascii_alphabetic() {
            // e / E / x take a numeric suffix directly
            if matches!(c, b'e' | b'E' | b'x') {
                let next = self.src.get(at + 1).copied();
                if next.is_some_and(|n| n.is_ascii_digit() || n == b'[') {
                    self.pos += 1;
                    return self.indexed(c, at);
                }
            }
            let w = self.word();
            return match w.as_str() {
                "i" => Ok(Value::Form(Polyform::constant(dim, Scalar::i()))),
                "exp" | "conj" | "d" => {
                    self.expect(b'(')?;
                    let inner = self.expr()?;
                    self.expect(b')')?;
                    self.function(&w, inner, at)
                }
                _ => Err(Error::parse(at, format!("unknown identifier '{w}'"))),
            };
        }
        Err(Error::parse(at, format!("unexpected '{}'", c as char)))
    }

    fn indexed(&mut self, kind: u8, at: usize) -> Result<Value> {
        let dim = self.ctx.dim;
        let indices: Vec<usize> = if self.src.get(self.pos) == Some(&b'[') {
            self.pos += 1;
            let mut v = vec![self.int_ws()?];
            while self.eat(b',') {
                v.push(self.int_ws()?);
            }
            self.expect(b']')?;
            v
        } else {
            let start = self.pos;
            let k = self.int()?;
            if kind == b'e' {
                // every digit is its own index
                self.src[start..self.pos]
                    .iter()
                    .map(|d| (d - b'0') as usize)
                    .collect()
            } else {
                vec![k]
            }
        };
        for &k in &indices {
            self.index_in_frame(k, at)?;
        }
        match kind {
            b'e' => Ok(Value::Form(Polyform::basis(dim, &indices))),
            b'E' | b'x' => {
                if indices.len() != 1 {
                    return Err(Error::parse(at, "expected a single index"));
                }
                let k = indices[0];
                if kind == b'E' {
                    Ok(Value::Vector(Vector::basis(dim, k)))
                } else {
                    if let Some(f) = self.ctx.frame {
                        if k > f.variables() {
                            return Err(Error::parse(
                                at,
                                format!("x{k} is not a coordinate of this frame"),
                            ));
                        }
                    }
                    Ok(Value::Form(Polyform::scalar(dim, Poly::var(k))))
                }
            }
            _ => unreachable!("indexed atom kind"),
        }
    }

    fn int_ws(&mut self) -> Result<usize> {
        self.skip_ws();
        self.int()
    }

    fn function(&mut self, name: &str, arg: Value, at: usize) -> Result<Value> {
        match (name, arg) {
            ("conj", Value::Form(f)) => Ok(Value::Form(f.conj())),
            ("conj", Value::Vector(v)) => Ok(Value::Vector(v.conj())),
            ("exp", Value::Form(f)) => f
                .try_exp()
                .map(Value::Form)
                .map_err(|e| Error::parse(at, e.to_string())),
            ("d", Value::Form(f)) => {
                let frame = self
                    .ctx
                    .frame
                    .ok_or_else(|| Error::parse(at, "d(...) needs a frame"))?;
                frame.d(&f).map(Value::Form)
            }
            (n, Value::Vector(_)) => Err(Error::parse(at, format!("{n}(...) of a vector field"))),
            (n, _) => Err(Error::parse(at, format!("unknown function {n}"))),
        }
    }
}

fn constant_of(v: &Value) -> Option<Scalar> {
    match v {
        Value::Form(f) if f.terms().all(|(b, _)| *b == Blade::SCALAR) => {
            f.scalar_part().as_constant()
        }
        _ => None,
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Form(f) => Value::Form(-f),
        Value::Vector(x) => Value::Vector(-x),
    }
}

fn scale(v: Value, c: &Scalar) -> Value {
    match v {
        Value::Form(f) => Value::Form(f.scale(c)),
        Value::Vector(x) => Value::Vector(x.scale(c)),
    }
}

fn add(a: Value, b: Value, at: usize) -> Result<Value> {
    match (a, b) {
        (Value::Form(x), Value::Form(y)) => Ok(Value::Form(&x + &y)),
        (Value::Vector(x), Value::Vector(y)) => Ok(Value::Vector(&x + &y)),
        (Value::Form(x), Value::Vector(y)) | (Value::Vector(y), Value::Form(x)) if x.is_zero() => {
            Ok(Value::Vector(y))
        }
        _ => Err(Error::parse(at, "cannot add a form and a vector field")),
    }
}

fn mul(a: Value, b: Value, at: usize) -> Result<Value> {
    match (a, b) {
        (Value::Form(x), Value::Form(y)) => Ok(Value::Form(x.wedge(&y))),
        (Value::Form(f), Value::Vector(v)) | (Value::Vector(v), Value::Form(f)) => {
            if f.terms().any(|(b, _)| *b != Blade::SCALAR) {
                return Err(Error::parse(at, "only functions can multiply a vector field"));
            }
            Ok(Value::Vector(v.mul_poly(&f.scalar_part())))
        }
        (Value::Vector(_), Value::Vector(_)) => {
            Err(Error::parse(at, "product of two vector fields"))
        }
    }
}

impl Value {
    pub fn zero_form(dim: usize) -> Value {
        Value::Form(Polyform::zero(dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::parse_nil;

    fn form(s: &str, dim: usize) -> Polyform {
        parse_form(s, &Context::new(dim)).unwrap()
    }

    #[test]
    fn basic_forms() {
        assert_eq!(form("e12", 3), Polyform::basis(3, &[1, 2]));
        assert_eq!(form("e2*e1", 3), -Polyform::basis(3, &[1, 2]));
        assert_eq!(form("e[1,3]", 3), Polyform::basis(3, &[1, 3]));
        assert_eq!(form("3/4", 2), Polyform::constant(2, Scalar::ratio(3, 4)));
        assert_eq!(
            form("(e1 + i*e2)^(e3 + i*e4)", 4),
            Polyform::gen(4, 1)
                .try_add(&Polyform::gen(4, 2).scale(&Scalar::i()))
                .unwrap()
                .wedge(
                    &Polyform::gen(4, 3)
                        .try_add(&Polyform::gen(4, 4).scale(&Scalar::i()))
                        .unwrap()
                )
        );
        assert_eq!(form("(e12+e34)**2", 4), Polyform::basis(4, &[1, 2, 3, 4]).scale(&Scalar::int(2)));
        assert_eq!(form("exp(i*e12)", 2), &Polyform::one(2) + &Polyform::basis(2, &[1, 2]).scale(&Scalar::i()));
        assert_eq!(form("conj(i)", 1), Polyform::constant(1, -Scalar::i()));
        assert_eq!(form("-x1*e2", 2), -Polyform::gen(2, 2).mul_poly(&Poly::var(1)));
    }

    #[test]
    fn vectors_and_names() {
        let v = parse_vector("E1 - x1*E2", &Context::new(2)).unwrap();
        assert_eq!(v, &Vector::basis(2, 1) - &Vector::basis(2, 2).mul_poly(&Poly::var(1)));
        let r = |name: &str| -> Result<Value> {
            if name == "eta" {
                Ok(Value::Form(Polyform::gen(3, 3)))
            } else {
                Err(Error::Input(format!("unknown reference {name}")))
            }
        };
        let ctx = Context::new(3).resolver(&r);
        assert_eq!(parse_form("$eta^e1", &ctx).unwrap(), -Polyform::basis(3, &[1, 3]));
        assert!(parse_form("$nope", &ctx).is_err());
    }

    #[test]
    fn d_needs_frame() {
        let f = parse_nil("(0,0,12)", None).unwrap();
        assert_eq!(parse_form("d(e3)", &Context::with_frame(&f)).unwrap(), Polyform::basis(3, &[1, 2]));
        assert!(parse_form("d(e3)", &Context::new(3)).is_err());
    }

    #[test]
    fn errors() {
        let ctx = Context::new(3);
        assert!(matches!(parse_form("e14", &ctx), Err(Error::Parse { position: 0, .. })));
        assert!(parse_form("e1 +", &ctx).is_err());
        assert!(parse_form("e1/e2", &ctx).is_err());
        assert!(parse_form("e1/0", &ctx).is_err());
        assert!(parse_form("E1", &ctx).is_err());
        assert!(parse_form("foo", &ctx).is_err());
        assert!(parse_form("exp(1)", &ctx).is_err());
    }
}
