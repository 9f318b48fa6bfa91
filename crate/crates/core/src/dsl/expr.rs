//! Expressions over a presentation: scalars in q, generators, products
//! (`*` or `.`), sums, integer powers, `star(...)`, map application and
//! tensors (`⊗` or `(x)`, binding tighter than `+`).

use super::lexer::{Tok, Token};
use crate::error::{Error, Result};
use crate::freealg::{apply_map, apply_map_tensor, star, AlgName, Element, FreeNormalizer, TensorElement};
use crate::presentations::{IntTemplate, Presentation, ScalarTemplate, Universe};
use crate::scalars::{IntPoly, Scalar};
use std::sync::Arc;

/// Name resolution for the expression parser.
pub struct Scope<'a> {
    pub universe: &'a Universe,
    /// A presentation being declared (not yet in the universe).
    pub pending: Option<&'a Presentation>,
}

impl<'a> Scope<'a> {
    pub fn pres(&self, name: &str) -> Option<&Presentation> {
        if let Some(p) = self.pending {
            if &*p.name == name {
                return Some(p);
            }
        }
        self.universe.presentations.get(name).map(|p| &**p)
    }
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(Scalar),
    Elem(Element<Scalar>),
    Tensor(TensorElement<Scalar>),
}

pub struct Parser<'s, 't> {
    scope: &'s Scope<'s>,
    toks: &'t [Token],
    pos: usize,
    line: usize,
    /// Algebra of each tensor leg; a plain element has one leg.
    legs: Vec<AlgName>,
    leg: usize,
}

impl<'s, 't> Parser<'s, 't> {
    pub fn new(scope: &'s Scope<'s>, toks: &'t [Token], line: usize, legs: Vec<AlgName>) -> Self {
        Parser { scope, toks, pos: 0, line, legs, leg: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.col)
            .unwrap_or_else(|| self.toks.last().map(|t| t.col + 1).unwrap_or(1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn err_at(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col, msg: msg.into() }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn cur_alg(&self) -> &AlgName {
        &self.legs[self.leg.min(self.legs.len() - 1)]
    }

    fn cur_pres(&self) -> Result<&'s Presentation> {
        let name = self.cur_alg().clone();
        self.scope.pres(&name).ok_or_else(|| self.err(format!("unknown presentation {name}")))
    }

    /// Parse a whole token slice as an element of `alg`, stopping before `stop`.
    pub fn element(&mut self) -> Result<Element<Scalar>> {
        let v = self.sum()?;
        self.to_elem(v, self.cur_alg().clone())
    }

    pub fn tensor(&mut self) -> Result<TensorElement<Scalar>> {
        let v = self.sum()?;
        match v {
            Value::Tensor(t) => {
                if t.legs() != self.legs.as_slice() {
                    return Err(self.err("tensor legs do not match the declared algebras"));
                }
                Ok(t)
            }
            Value::Scalar(s) if s.is_zero() => Ok(TensorElement::zero(&self.legs)),
            _ => Err(self.err(format!("expected a tensor with {} legs", self.legs.len()))),
        }
    }

    fn to_elem(&self, v: Value, alg: AlgName) -> Result<Element<Scalar>> {
        match v {
            Value::Scalar(s) => Ok(Element::constant(&alg, s)),
            Value::Elem(e) => Ok(e),
            Value::Tensor(_) => Err(self.err("unexpected tensor")),
        }
    }

    fn is_sum_end(&self) -> bool {
        !matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus))
    }

    fn sum(&mut self) -> Result<Value> {
        let neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.tensor_term()?;
        if neg {
            acc = self.negate(acc);
        }
        while !self.is_sum_end() {
            let col = self.col();
            let minus = self.eat(&Tok::Minus);
            if !minus {
                self.eat(&Tok::Plus);
            }
            let mut t = self.tensor_term()?;
            if minus {
                t = self.negate(t);
            }
            acc = self.add(acc, t, col)?;
        }
        Ok(acc)
    }

    fn negate(&self, v: Value) -> Value {
        match v {
            Value::Scalar(s) => Value::Scalar(s.neg()),
            Value::Elem(e) => Value::Elem(e.neg()),
            Value::Tensor(t) => Value::Tensor(t.neg()),
        }
    }

    fn add(&self, a: Value, b: Value, col: usize) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.add(&y)),
            (Value::Elem(x), Value::Scalar(y)) | (Value::Scalar(y), Value::Elem(x)) => {
                Value::Elem(x.add(&Element::constant(x.alg(), y))?)
            }
            (Value::Elem(x), Value::Elem(y)) => {
                Value::Elem(x.add(&y).map_err(|e| self.err_at(col, e.to_string()))?)
            }
            (Value::Tensor(x), Value::Tensor(y)) => {
                Value::Tensor(x.add(&y).map_err(|e| self.err_at(col, e.to_string()))?)
            }
            (Value::Tensor(x), Value::Scalar(y)) | (Value::Scalar(y), Value::Tensor(x)) if y.is_zero() => {
                Value::Tensor(x)
            }
            _ => return Err(self.err_at(col, "cannot add a tensor and a non-tensor")),
        })
    }

    /// product { ⊗ product }; leg `i` of the term is parsed in `legs[i]`.
    fn tensor_term(&mut self) -> Result<Value> {
        let saved = self.leg;
        let first = self.product()?;
        if self.peek() != Some(&Tok::Tensor) {
            return Ok(first);
        }
        if self.legs.len() < 2 {
            return Err(self.err("tensor product not allowed here"));
        }
        let mut parts = vec![self.to_elem(first, self.cur_alg().clone())?];
        while self.eat(&Tok::Tensor) {
            self.leg += 1;
            if self.leg >= self.legs.len() {
                return Err(self.err(format!("too many tensor legs (expected {})", self.legs.len())));
            }
            let v = self.product()?;
            parts.push(self.to_elem(v, self.cur_alg().clone())?);
        }
        if parts.len() != self.legs.len() {
            return Err(self.err(format!("expected {} tensor legs, found {}", self.legs.len(), parts.len())));
        }
        self.leg = saved;
        let refs: Vec<&Element<Scalar>> = parts.iter().collect();
        Ok(Value::Tensor(TensorElement::pure(&refs)))
    }

    fn product(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        loop {
            let col = self.col();
            if self.eat(&Tok::Star) || self.eat(&Tok::Dot) {
                let b = self.power()?;
                acc = self.mul(acc, b, col)?;
            } else if self.eat(&Tok::Slash) {
                let b = self.power()?;
                let Value::Scalar(d) = b else {
                    return Err(self.err_at(col, "can only divide by a scalar"));
                };
                let inv = d.inv().map_err(|e| self.err_at(col, e.to_string()))?;
                acc = self.mul(acc, Value::Scalar(inv), col)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn mul(&self, a: Value, b: Value, col: usize) -> Result<Value> {
        let wrap = |e: Error| self.err_at(col, e.to_string());
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul(&y)),
            (Value::Elem(x), Value::Scalar(y)) | (Value::Scalar(y), Value::Elem(x)) => Value::Elem(x.scale(&y)),
            (Value::Tensor(x), Value::Scalar(y)) | (Value::Scalar(y), Value::Tensor(x)) => {
                Value::Tensor(x.scale(&y))
            }
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.mul(&y).map_err(wrap)?),
            (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(x.mul(&y).map_err(wrap)?),
            _ => return Err(self.err_at(col, "cannot multiply a tensor by an element")),
        })
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let col = self.col();
        let k = self.int_exponent()?;
        match base {
            Value::Scalar(s) => Ok(Value::Scalar(s.pow(k).map_err(|e| self.err_at(col, e.to_string()))?)),
            Value::Elem(e) => {
                if k < 0 {
                    return Err(self.err_at(col, "negative power of an algebra element"));
                }
                let mut acc = Element::one(e.alg());
                for _ in 0..k {
                    acc = acc.mul(&e)?;
                }
                Ok(Value::Elem(acc))
            }
            Value::Tensor(t) => {
                if k < 0 {
                    return Err(self.err_at(col, "negative power of a tensor"));
                }
                let mut acc = TensorElement::one(t.legs());
                for _ in 0..k {
                    acc = acc.mul(&t)?;
                }
                Ok(Value::Tensor(acc))
            }
        }
    }

    fn int_exponent(&mut self) -> Result<i64> {
        let neg = self.eat(&Tok::Minus);
        let v = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                i64::try_from(&n).map_err(|_| self.err("exponent too large"))?
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = int_template(self, false)?;
                self.expect(&Tok::RParen, "')'")?;
                t.eval(0)
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Value> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Value::Scalar(Scalar::from_poly(IntPoly::constant(n))))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "q" {
                    return Ok(Value::Scalar(Scalar::q()));
                }
                if self.peek() == Some(&Tok::LParen) {
                    return self.call(&name, col);
                }
                let p = self.cur_pres()?;
                match p.letter(&name) {
                    Some(_) => Ok(Value::Elem(p.gen(&name)?)),
                    None => Err(self.err_at(col, format!("unknown generator '{name}' in {}", p.name))),
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn call(&mut self, name: &str, col: usize) -> Result<Value> {
        self.expect(&Tok::LParen, "'('")?;
        if name == "star" {
            let v = self.sum()?;
            self.expect(&Tok::RParen, "')'")?;
            let e = self.to_elem(v, self.cur_alg().clone())?;
            let p = self
                .scope
                .pres(e.alg())
                .ok_or_else(|| self.err_at(col, format!("unknown presentation {}", e.alg())))?;
            if p.star.iter().any(|s| s.is_none()) {
                return Err(self.err_at(col, format!("star table of {} is incomplete", p.name)));
            }
            let s = star(&p.star_map(), &e, &FreeNormalizer).map_err(|e| self.err_at(col, e.to_string()))?;
            return Ok(Value::Elem(s));
        }
        let spec = self
            .scope
            .universe
            .maps
            .get(name)
            .or_else(|| {
                let h = name.strip_prefix("Delta_").or_else(|| name.strip_prefix("S_"))?;
                let hd = self.scope.universe.hopf.get(h)?;
                if name.starts_with("Delta_") {
                    Some(&hd.coproduct)
                } else {
                    hd.antipode.as_ref()
                }
            })
            .ok_or_else(|| self.err_at(col, format!("unknown map '{name}'")))?
            .clone();
        let (saved_legs, saved_leg) = (std::mem::replace(&mut self.legs, vec![spec.source.clone()]), self.leg);
        self.leg = 0;
        let v = self.sum();
        self.legs = saved_legs;
        self.leg = saved_leg;
        let v = v?;
        self.expect(&Tok::RParen, "')'")?;
        let e = self.to_elem(v, spec.source.clone())?;
        if spec.targets.len() == 1 && !spec.is_tensor_valued() {
            Ok(Value::Elem(apply_map(&spec, &e, &FreeNormalizer).map_err(|e| self.err_at(col, e.to_string()))?))
        } else {
            Ok(Value::Tensor(
                apply_map_tensor(&spec, &e, &FreeNormalizer).map_err(|e| self.err_at(col, e.to_string()))?,
            ))
        }
    }
}

/// `n`-templates for Haar families: a sum of integer terms with the
/// variable `n` (only `n` allowed when `allow_n`).
fn int_template(p: &mut Parser<'_, '_>, allow_n: bool) -> Result<IntTemplate> {
    fn atom(p: &mut Parser<'_, '_>, allow_n: bool) -> Result<IntTemplate> {
        match p.peek().cloned() {
            Some(Tok::Int(k)) => {
                p.pos += 1;
                Ok(IntTemplate::Const(i64::try_from(&k).map_err(|_| p.err("integer too large"))?))
            }
            Some(Tok::Ident(n)) if n == "n" && allow_n => {
                p.pos += 1;
                Ok(IntTemplate::N)
            }
            Some(Tok::LParen) => {
                p.pos += 1;
                let t = int_template(p, allow_n)?;
                p.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            Some(Tok::Minus) => {
                p.pos += 1;
                Ok(IntTemplate::Neg(Box::new(atom(p, allow_n)?)))
            }
            _ => Err(p.err("expected integer expression")),
        }
    }
    fn term(p: &mut Parser<'_, '_>, allow_n: bool) -> Result<IntTemplate> {
        let mut acc = atom(p, allow_n)?;
        loop {
            if p.eat(&Tok::Star) {
                acc = IntTemplate::Mul(Box::new(acc), Box::new(atom(p, allow_n)?));
            } else if matches!(p.peek(), Some(Tok::Ident(n)) if n == "n") && allow_n {
                // implicit product such as `2n`
                p.pos += 1;
                acc = IntTemplate::Mul(Box::new(acc), Box::new(IntTemplate::N));
            } else {
                return Ok(acc);
            }
        }
    }
    let mut acc = term(p, allow_n)?;
    loop {
        if p.eat(&Tok::Plus) {
            acc = IntTemplate::Add(Box::new(acc), Box::new(term(p, allow_n)?));
        } else if p.eat(&Tok::Minus) {
            acc = IntTemplate::Sub(Box::new(acc), Box::new(term(p, allow_n)?));
        } else {
            return Ok(acc);
        }
    }
}

/// Scalar template in `q` and `n`, e.g. `(q^2-1)/(q^(2n+2)-1)`.
pub fn scalar_template(p: &mut Parser<'_, '_>) -> Result<ScalarTemplate> {
    fn atom(p: &mut Parser<'_, '_>) -> Result<ScalarTemplate> {
        let base = match p.peek().cloned() {
            Some(Tok::Int(k)) => {
                p.pos += 1;
                ScalarTemplate::Const(Scalar::from_poly(IntPoly::constant(k)))
            }
            Some(Tok::Ident(n)) if n == "q" => {
                p.pos += 1;
                ScalarTemplate::Q
            }
            Some(Tok::LParen) => {
                p.pos += 1;
                let t = sum(p)?;
                p.expect(&Tok::RParen, "')'")?;
                t
            }
            _ => return Err(p.err("expected scalar expression in q and n")),
        };
        if p.eat(&Tok::Caret) {
            let neg = p.eat(&Tok::Minus);
            let k = match p.peek().cloned() {
                Some(Tok::Int(k)) => {
                    p.pos += 1;
                    IntTemplate::Const(i64::try_from(&k).map_err(|_| p.err("exponent too large"))?)
                }
                Some(Tok::Ident(n)) if n == "n" => {
                    p.pos += 1;
                    IntTemplate::N
                }
                Some(Tok::LParen) => {
                    p.pos += 1;
                    let t = int_template(p, true)?;
                    p.expect(&Tok::RParen, "')'")?;
                    t
                }
                _ => return Err(p.err("expected exponent")),
            };
            let k = if neg { IntTemplate::Neg(Box::new(k)) } else { k };
            return Ok(ScalarTemplate::Pow(Box::new(base), k));
        }
        Ok(base)
    }
    fn term(p: &mut Parser<'_, '_>) -> Result<ScalarTemplate> {
        let mut acc = atom(p)?;
        loop {
            if p.eat(&Tok::Star) {
                acc = ScalarTemplate::Mul(Box::new(acc), Box::new(atom(p)?));
            } else if p.eat(&Tok::Slash) {
                acc = ScalarTemplate::Div(Box::new(acc), Box::new(atom(p)?));
            } else {
                return Ok(acc);
            }
        }
    }
    fn sum(p: &mut Parser<'_, '_>) -> Result<ScalarTemplate> {
        let mut acc = if p.eat(&Tok::Minus) { ScalarTemplate::Neg(Box::new(term(p)?)) } else { term(p)? };
        loop {
            if p.eat(&Tok::Plus) {
                acc = ScalarTemplate::Add(Box::new(acc), Box::new(term(p)?));
            } else if p.eat(&Tok::Minus) {
                acc = ScalarTemplate::Sub(Box::new(acc), Box::new(term(p)?));
            } else {
                return Ok(acc);
            }
        }
    }
    sum(p)
}

/// Parse `text` as an element of `alg`.
pub fn parse_element(universe: &Universe, alg: &str, text: &str) -> Result<Element<Scalar>> {
    let scope = Scope { universe, pending: None };
    parse_element_in(&scope, alg, text, 1)
}

pub fn parse_element_in(scope: &Scope<'_>, alg: &str, text: &str, line: usize) -> Result<Element<Scalar>> {
    let toks = super::lexer::lex(text, line)?;
    let mut p = Parser::new(scope, &toks, line, vec![Arc::from(alg)]);
    let e = p.element()?;
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse `text` as a tensor with the given leg algebras.
pub fn parse_tensor(universe: &Universe, legs: &[&str], text: &str) -> Result<TensorElement<Scalar>> {
    let scope = Scope { universe, pending: None };
    let toks = super::lexer::lex(text, 1)?;
    let mut p = Parser::new(&scope, &toks, 1, legs.iter().map(|l| Arc::from(*l)).collect());
    let t = p.tensor()?;
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}
