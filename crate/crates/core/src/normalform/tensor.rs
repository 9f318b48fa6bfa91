use super::engine::Engine;
use crate::error::Result;
use crate::freealg::{Element, Normalizer, TensorElement, TensorKey};
use crate::scalars::Coeff;
use std::collections::BTreeMap;

impl<C: Coeff> Engine<C> {
    pub fn is_zero_mod_ideal(&self, e: &Element<C>) -> Result<bool> {
        self.get(e.alg())?.is_zero_mod_ideal(e)
    }

    /// Membership in the sum of the legwise ideals `I⊗A⊗.. + A⊗I⊗.. + ..`.
    ///
    /// Legs with a complete system are replaced by normal forms, which are
    /// then independent. All other incomplete legs but one are replaced by
    /// their remainders modulo the bounded relation span; the last one is
    /// sliced out and decided by the element oracle.
    pub fn is_zero_tensor(&self, t: &TensorElement<C>) -> Result<bool> {
        let t = self.normalize_tensor(t)?;
        if t.is_zero() {
            return Ok(true);
        }
        let legs = t.legs().to_vec();
        let incomplete: Vec<usize> =
            (0..legs.len()).filter(|&i| self.get(&legs[i]).map(|e| !e.is_complete()).unwrap_or(true)).collect();
        let Some((&last, rest)) = incomplete.split_last() else {
            return Ok(false);
        };
        let mut cur = t;
        for &i in rest {
            let eng = self.get(&legs[i])?;
            let bound = cur.terms().keys().map(|k| k[i].len()).max().unwrap_or(0);
            let mut next = TensorElement::zero(&legs);
            for (k, c) in cur.terms() {
                let w = Element::word(&legs[i], k[i].clone());
                let r = eng.bounded_remainder(&w, bound)?;
                for (v, d) in r.terms() {
                    let mut k2 = k.clone();
                    k2[i] = v.clone();
                    next.add_term(k2, c.mul(d));
                }
            }
            cur = next;
        }
        let mut slices: BTreeMap<TensorKey, Element<C>> = BTreeMap::new();
        for (k, c) in cur.terms() {
            let mut key = k.clone();
            let w = key.remove(last);
            slices.entry(key).or_insert_with(|| Element::zero(&legs[last])).add_term(w, c.clone());
        }
        let eng = self.get(&legs[last])?;
        for e in slices.values() {
            if !eng.is_zero_mod_ideal(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
