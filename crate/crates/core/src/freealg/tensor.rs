use super::element::format_term;
use super::{AlgName, Element, Word};
use crate::error::{Error, Result};
use crate::scalars::{Coeff, Scalar};
use smallvec::SmallVec;
use std::collections::BTreeMap;

pub type TensorKey = SmallVec<[Word; 3]>;

/// A finite linear combination of n-tuples of words, leg `i` living in
/// `legs[i]`. Used for A⊗A, A⊗H, triple tensors and so on.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorElement<C> {
    legs: Vec<AlgName>,
    terms: BTreeMap<TensorKey, C>,
}

impl<C: Coeff> TensorElement<C> {
    pub fn zero(legs: &[AlgName]) -> Self {
        TensorElement { legs: legs.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(legs: &[AlgName]) -> Self {
        let mut t = Self::zero(legs);
        t.add_term(legs.iter().map(|_| Word::unit()).collect(), C::one());
        t
    }

    /// `a_1 ⊗ a_2 ⊗ ... ⊗ a_n`.
    pub fn pure(parts: &[&Element<C>]) -> Self {
        let legs: Vec<AlgName> = parts.iter().map(|e| e.alg().clone()).collect();
        let mut t = Self::zero(&legs);
        let mut acc: Vec<(TensorKey, C)> = vec![(TensorKey::new(), C::one())];
        for e in parts {
            let mut next = Vec::with_capacity(acc.len() * e.len());
            for (k, c) in &acc {
                for (w, d) in e.terms() {
                    let mut k2 = k.clone();
                    k2.push(w.clone());
                    next.push((k2, c.mul(d)));
                }
            }
            acc = next;
        }
        for (k, c) in acc {
            t.add_term(k, c);
        }
        t
    }

    pub fn legs(&self) -> &[AlgName] {
        &self.legs
    }

    pub fn arity(&self) -> usize {
        self.legs.len()
    }

    pub fn terms(&self) -> &BTreeMap<TensorKey, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &TensorKey) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, k: TensorKey, c: C) {
        debug_assert_eq!(k.len(), self.legs.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.legs.len() != other.legs.len() {
            return Err(Error::ArityMismatch { expected: self.legs.len(), got: other.legs.len() });
        }
        for (a, b) in self.legs.iter().zip(&other.legs) {
            if a != b {
                return Err(Error::MixedAlgebras(a.to_string(), b.to_string()));
            }
        }
        Ok(())
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &C) {
        for (k, d) in &other.terms {
            self.add_term(k.clone(), d.mul(c));
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &C::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &C::one().neg());
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.legs);
        out.add_assign_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    /// Legwise free product `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.legs);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let k: TensorKey = k1.iter().zip(k2).map(|(a, b)| a.concat(b)).collect();
                out.add_term(k, c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Tensor product of two tensors (concatenating legs).
    pub fn otimes(&self, other: &Self) -> Self {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        let mut out = Self::zero(&legs);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                out.add_term(k, c1.mul(c2));
            }
        }
        out
    }

    /// Multiply a single leg on the left by an element (free product).
    pub fn left_mul_leg(&self, leg: usize, e: &Element<C>) -> Result<Self> {
        if self.legs[leg] != *e.alg() {
            return Err(Error::MixedAlgebras(self.legs[leg].to_string(), e.alg().to_string()));
        }
        let mut out = Self::zero(&self.legs);
        for (k, c) in &self.terms {
            for (w, d) in e.terms() {
                let mut k2 = k.clone();
                k2[leg] = w.concat(&k[leg]);
                out.add_term(k2, c.mul(d));
            }
        }
        Ok(out)
    }

    /// Group terms by all legs except `leg`, collecting the coefficient
    /// element living in that leg.
    pub fn slice_leg(&self, leg: usize) -> BTreeMap<TensorKey, Element<C>> {
        let mut out: BTreeMap<TensorKey, Element<C>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut rest = k.clone();
            let w = rest.remove(leg);
            out.entry(rest)
                .or_insert_with(|| Element::zero(&self.legs[leg]))
                .add_term(w, c.clone());
        }
        out
    }

    /// Collapse legs `i` and `i+1` by free concatenation (multiplication map
    /// applied in the middle). Both legs must be the same algebra.
    pub fn contract(&self, i: usize) -> Result<Self> {
        if self.legs[i] != self.legs[i + 1] {
            return Err(Error::MixedAlgebras(self.legs[i].to_string(), self.legs[i + 1].to_string()));
        }
        let mut legs = self.legs.clone();
        legs.remove(i + 1);
        let mut out = Self::zero(&legs);
        for (k, c) in &self.terms {
            let mut k2 = k.clone();
            let b = k2.remove(i + 1);
            k2[i] = k2[i].concat(&b);
            out.add_term(k2, c.clone());
        }
        Ok(out)
    }

    /// Free multiplication of all legs into one element (requires a single
    /// common algebra).
    pub fn multiply_out(&self) -> Result<Element<C>> {
        let mut t = self.clone();
        while t.arity() > 1 {
            t = t.contract(0)?;
        }
        let mut out = Element::zero(&t.legs[0]);
        for (k, c) in t.terms {
            out.add_term(k[0].clone(), c);
        }
        Ok(out)
    }

    /// Permute legs: leg `i` of the output is leg `perm[i]` of the input.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let legs: Vec<AlgName> = perm.iter().map(|&p| self.legs[p].clone()).collect();
        let mut out = Self::zero(&legs);
        for (k, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| k[p].clone()).collect(), c.clone());
        }
        out
    }

    /// Reinterpret a one-leg tensor as an element.
    pub fn into_element(self) -> Result<Element<C>> {
        if self.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, got: self.arity() });
        }
        let mut out = Element::zero(&self.legs[0]);
        for (k, c) in self.terms {
            out.add_term(k[0].clone(), c);
        }
        Ok(out)
    }

    pub fn from_element(e: &Element<C>) -> Self {
        Self::pure(&[e])
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<TensorElement<D>> {
        let mut out = TensorElement::zero(&self.legs);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn embed(t: &TensorElement<Scalar>, point: &C::Point) -> Result<Self> {
        t.map_coeffs(|s| Ok(C::embed(s, point)?))
    }

    /// Canonical text with `⊗` between legs, e.g. `q^2*u11.u22 ⊗ u`.
    pub fn format_with(&self, names: &[&[String]]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let (neg, first) = format_term(&k[0], c, names[0]);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&first);
            for (leg, w) in k.iter().enumerate().skip(1) {
                out.push_str(" ⊗ ");
                out.push_str(&super::element::format_word(w, names[leg]));
            }
        }
        out
    }
}
