use super::{AlgName, Word};
use crate::error::{Error, Result};
use crate::scalars::{Coeff, Scalar};
use std::collections::BTreeMap;

/// A finite linear combination of words of one algebra. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<C> {
    alg: AlgName,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Element<C> {
    pub fn zero(alg: &AlgName) -> Self {
        Element { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &AlgName) -> Self {
        Self::monomial(alg, Word::unit(), C::one())
    }

    pub fn monomial(alg: &AlgName, w: Word, c: C) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(w, c);
        e
    }

    pub fn word(alg: &AlgName, w: Word) -> Self {
        Self::monomial(alg, w, C::one())
    }

    pub fn constant(alg: &AlgName, c: C) -> Self {
        Self::monomial(alg, Word::unit(), c)
    }

    pub fn from_terms(alg: &AlgName, terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut e = Self::zero(alg);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn alg(&self) -> &AlgName {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Word, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, C> {
        self.terms
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

    /// Largest word length present (0 for zero or scalars).
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// The scalar value if the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
        if self.alg != other.alg {
            return Err(Error::MixedAlgebras(self.alg.to_string(), other.alg.to_string()));
        }
        Ok(())
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &C) {
        debug_assert_eq!(self.alg, other.alg);
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d.mul(c));
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
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    /// Free-algebra product: bilinear concatenation of words.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.alg);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Re-tag as an element of another algebra with the same alphabet indices.
    pub fn retag(mut self, alg: &AlgName) -> Self {
        self.alg = alg.clone();
        self
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Element<D>> {
        let mut out = Element::zero(&self.alg);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Scalar multiple of an `Element<Scalar>` embedded into this domain.
    pub fn embed(e: &Element<Scalar>, point: &C::Point) -> Result<Self> {
        e.map_coeffs(|s| Ok(C::embed(s, point)?))
    }

    /// Canonical text, e.g. `q^2*u11.u22 - u13.u21 + 1`.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (sign, body) = format_term(w, c, names);
            if i == 0 {
                if sign {
                    out.push('-');
                }
            } else {
                out.push_str(if sign { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

pub(crate) fn format_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters().iter().map(|&l| names[l as usize].as_str()).collect::<Vec<_>>().join(".")
}

/// Returns (is_negative, text of absolute term).
pub(crate) fn format_term<C: Coeff>(w: &Word, c: &C, names: &[String]) -> (bool, String) {
    let text = c.to_string();
    let (neg, abs) = match text.strip_prefix('-') {
        Some(rest) if !has_top_level_sum(rest) => (true, rest.to_string()),
        _ => (false, text.clone()),
    };
    let coeff = if has_top_level_sum(&abs) { format!("({abs})") } else { abs };
    let body = if w.is_empty() {
        coeff
    } else if coeff == "1" {
        format_word(w, names)
    } else {
        format!("{coeff}*{}", format_word(w, names))
    };
    (neg, body)
}

/// A `+` or `-` outside parentheses, ignoring a leading sign.
pub(crate) fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 && !s[..i].ends_with('^') => return true,
            _ => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn alg() -> AlgName {
        Arc::from("A")
    }

    #[test]
    fn unit_law_and_concatenation() {
        let a = alg();
        let x = Element::<Scalar>::word(&a, Word::letter(0));
        let y = Element::<Scalar>::word(&a, Word::letter(1));
        assert_eq!(Element::one(&a).mul(&x).unwrap(), x);
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.coeff(&Word::from_slice(&[0, 1])), Scalar::one());
    }

    #[test]
    fn scalar_bilinearity() {
        let a = alg();
        let y = Element::word(&a, Word::letter(1)).scale(&Scalar::q());
        let x = Element::word(&a, Word::letter(0));
        let p = y.mul(&x).unwrap();
        assert_eq!(p.coeff(&Word::from_slice(&[1, 0])), Scalar::q());
    }

    #[test]
    fn mixed_algebras_rejected() {
        let x = Element::<Scalar>::one(&Arc::from("A"));
        let y = Element::<Scalar>::one(&Arc::from("B"));
        assert!(matches!(x.mul(&y), Err(Error::MixedAlgebras(..))));
    }

    #[test]
    fn formatting() {
        let a = alg();
        let names = vec!["u11".to_string(), "u22".to_string()];
        let mut e = Element::<Scalar>::word(&a, Word::from_slice(&[0, 1])).scale(&"q^2".parse().unwrap());
        e.add_term(Word::unit(), "-q+1".parse().unwrap());
        assert_eq!(e.format_with(&names), "(-q+1) + q^2*u11.u22");
    }
}
