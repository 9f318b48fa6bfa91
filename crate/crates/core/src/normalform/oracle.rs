//! Bounded-degree ideal membership by exact linear algebra, per
//! (multidegree, length bound) block.

use super::engine::AlgEngine;
use crate::error::{Error, Result};
use crate::freealg::{Element, Letter, Word};
use crate::presentations::{Degree, DegreeOf};
use crate::scalars::Coeff;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// An echelon basis of sparse rows. Each row is monic with its largest word
/// (in `Word` order) as pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon<C> {
    pivots: HashMap<Word, usize>,
    rows: Vec<BTreeMap<Word, C>>,
}

impl<C: Coeff> Echelon<C> {
    pub fn new() -> Self {
        Echelon { pivots: HashMap::new(), rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `r` modulo the span: it contains no pivot words.
    pub fn reduce(&self, mut r: BTreeMap<Word, C>) -> BTreeMap<Word, C> {
        let mut out = BTreeMap::new();
        while let Some((w, c)) = r.pop_last() {
            match self.pivots.get(&w) {
                Some(&i) => {
                    for (v, d) in &self.rows[i] {
                        if *v == w {
                            continue;
                        }
                        let x = r.remove(v).unwrap_or_else(C::zero).sub(&c.mul(d));
                        if !x.is_zero() {
                            r.insert(v.clone(), x);
                        }
                    }
                }
                None => {
                    out.insert(w, c);
                }
            }
        }
        out
    }

    /// Adds `r` to the span; returns false if it was already in it.
    pub fn insert(&mut self, r: BTreeMap<Word, C>) -> bool {
        let red = self.reduce(r);
        let Some((p, c)) = red.last_key_value() else {
            return false;
        };
        let (p, inv) = (p.clone(), c.inv().unwrap());
        let row: BTreeMap<Word, C> = red.into_iter().map(|(w, c)| (w, c.mul(&inv))).collect();
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }
}

/// Span of `m1 r m2` for all relations `r` and words `m1, m2` with
/// `|m1| + |r| + |m2| <= bound` and total degree `degree`.
pub struct BoundedSpan<C> {
    pub degree: Degree,
    pub bound: usize,
    /// Number of words in the block, the dimension used for caps.
    pub dimension: usize,
    pub generators: usize,
    pub echelon: Echelon<C>,
}

/// Number of words of each length `<= bound` and degree `d`.
pub fn block_dimension(degrees: &[Degree], d: Degree, bound: usize) -> usize {
    let mut layer: HashMap<Degree, usize> = HashMap::from([((0, 0), 1)]);
    let mut total = usize::from(d == (0, 0));
    for _ in 0..bound {
        let mut next: HashMap<Degree, usize> = HashMap::new();
        for (&(a, b), &k) in &layer {
            for &(x, y) in degrees {
                *next.entry((a + x, b + y)).or_insert(0) += k;
            }
        }
        total = total.saturating_add(next.get(&d).copied().unwrap_or(0));
        layer = next;
    }
    total
}

/// All words of length `len` and degree `d`, in `Word` order.
pub fn words_of(degrees: &[Degree], d: Degree, len: usize) -> Vec<Word> {
    fn go(degrees: &[Degree], d: Degree, left: usize, cur: &mut Word, acc: (i64, i64), out: &mut Vec<Word>) {
        if left == 0 {
            if acc == d {
                out.push(cur.clone());
            }
            return;
        }
        // prune: each letter moves the degree by at most the largest step
        let reach = degrees.iter().map(|&(a, b)| a.abs().max(b.abs())).max().unwrap_or(0) * left as i64;
        if (d.0 - acc.0).abs() > reach || (d.1 - acc.1).abs() > reach {
            return;
        }
        for (l, &(x, y)) in degrees.iter().enumerate() {
            cur.push(l as Letter);
            go(degrees, d, left - 1, cur, (acc.0 + x, acc.1 + y), out);
            cur.0.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, d, len, &mut Word::unit(), (0, 0), &mut out);
    out.sort();
    out
}

impl<C: Coeff> AlgEngine<C> {
    /// The bounded relation span of one block (cached).
    pub fn bounded_span(&self, d: Degree, bound: usize) -> Result<Arc<BoundedSpan<C>>> {
        if let Some(s) = self.spans.get(&(d, bound)) {
            return Ok(s.clone());
        }
        let degrees = &self.pres.degrees;
        let dimension = block_dimension(degrees, d, bound);
        if let Some(cap) = self.limits.max_dim {
            if dimension > cap {
                return Err(Error::ResourceCap {
                    what: format!("block dimension of {} at degree {:?}, length <= {}", self.alg(), d, bound),
                    used: dimension,
                    cap,
                });
            }
        }
        let mut ech = Echelon::new();
        let mut generators = 0;
        for (_, r) in &self.relations {
            let len = r.max_len();
            if len > bound {
                continue;
            }
            let dr = match self.pres.degree_of(r) {
                DegreeOf::Homogeneous(x) => x,
                DegreeOf::Zero => continue,
                DegreeOf::Inhomogeneous => {
                    return Err(Error::Invalid(format!("inhomogeneous relation in {}", self.alg())))
                }
            };
            let md = (d.0 - dr.0, d.1 - dr.1);
            for l in 0..=bound - len {
                for m in words_of(degrees, md, l) {
                    for split in 0..=l {
                        let m1 = Word::from_slice(&m.letters()[..split]);
                        let m2 = Word::from_slice(&m.letters()[split..]);
                        let row: BTreeMap<Word, C> =
                            r.terms().iter().map(|(w, c)| (m1.concat(w).concat(&m2), c.clone())).collect();
                        ech.insert(row);
                        generators += 1;
                    }
                }
            }
        }
        let span = Arc::new(BoundedSpan { degree: d, bound, dimension, generators, echelon: ech });
        self.spans.insert((d, bound), span.clone());
        Ok(span)
    }

    /// Remainder of a homogeneous element modulo its bounded block.
    pub fn bounded_remainder(&self, e: &Element<C>, bound: usize) -> Result<Element<C>> {
        let mut out = Element::zero(self.alg());
        for (d, part) in split_by_degree(&self.pres.degrees, e) {
            let span = self.bounded_span(d, bound)?;
            let r = span.echelon.reduce(part.terms().clone());
            for (w, c) in r {
                out.add_term(w, c);
            }
        }
        Ok(out)
    }

    /// The oracle alone: is `e` in the bounded span at its own length?
    pub fn bounded_member(&self, e: &Element<C>) -> Result<bool> {
        let bound = e.max_len();
        Ok(self.bounded_remainder(e, bound)?.is_zero())
    }

    /// Ideal membership: rewriting to zero decides "yes"; a complete system
    /// decides "no"; otherwise the bounded oracle decides.
    pub fn is_zero_mod_ideal(&self, e: &Element<C>) -> Result<bool> {
        if self.normalize_elem(e)?.is_zero() {
            return Ok(true);
        }
        if self.is_complete() {
            return Ok(false);
        }
        self.bounded_member(e)
    }

    /// Greedy basis of the quotient in one (degree, length) block; earlier
    /// words in the monomial order win.
    pub fn quotient_basis(&self, d: Degree, len: usize) -> Result<Vec<Word>> {
        let mut words = words_of(&self.pres.degrees, d, len);
        if let Some(cap) = self.limits.max_dim {
            if words.len() > cap {
                return Err(Error::ResourceCap {
                    what: format!("quotient block of {}", self.alg()),
                    used: words.len(),
                    cap,
                });
            }
        }
        let order = self.order().clone();
        words.sort_by(|a, b| order.cmp(a, b));
        let mut chosen = Vec::new();
        if self.is_complete() {
            let mut ech = Echelon::new();
            for w in words {
                let nf = self.nf_word(&w)?;
                if ech.insert(nf.terms().clone()) {
                    chosen.push(w);
                }
            }
        } else {
            let span = self.bounded_span(d, len)?;
            let mut ech = span.echelon.clone();
            for w in words {
                if ech.insert(BTreeMap::from([(w.clone(), C::one())])) {
                    chosen.push(w);
                }
            }
        }
        chosen.sort();
        Ok(chosen)
    }
}

/// Homogeneous components of `e`.
pub fn split_by_degree<C: Coeff>(degrees: &[Degree], e: &Element<C>) -> BTreeMap<Degree, Element<C>> {
    let mut out: BTreeMap<Degree, Element<C>> = BTreeMap::new();
    for (w, c) in e.terms() {
        let d = w.letters().iter().fold((0, 0), |(a, b), &l| (a + degrees[l as usize].0, b + degrees[l as usize].1));
        out.entry(d).or_insert_with(|| Element::zero(e.alg())).add_term(w.clone(), c.clone());
    }
    out
}
