use super::oracle::{BoundedSpan, Echelon};
use super::Limits;
use crate::error::{Error, Result};
use crate::freealg::{AlgName, Element, Letter, Normalizer, Word};
use crate::presentations::{Degree, MonomialOrder, OrderKind, Presentation};
use crate::scalars::{Coeff, Scalar};
use dashmap::DashMap;
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::sync::Arc;

type Exps = SmallVec<[u16; 16]>;

/// `lhs -> rhs`, applied to any factor of a word.
#[derive(Clone, Debug)]
pub struct Rule<C> {
    pub label: String,
    pub lhs: Word,
    pub rhs: Element<C>,
}

/// A relation acting by divisibility on sorted words (PBW order only): a
/// normal word whose exponent vector dominates `lead` is rewritten through
/// `sorted(quotient) * rel`.
#[derive(Clone, Debug)]
pub struct DivRule<C> {
    pub label: String,
    pub lead: Word,
    lead_exp: Exps,
    /// Monic, reduced by the factor rules.
    pub rel: Element<C>,
}

/// What construction learned about the rule system.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct SystemStatus {
    /// Normal forms are unique: NF(a) = 0 iff a is in the ideal.
    pub complete: bool,
    /// Relations that reduced to zero under the earlier ones.
    pub redundant: Vec<String>,
    /// Relations kept only for the bounded oracle.
    pub unoriented: Vec<String>,
    /// Critical pairs that did not resolve.
    pub unresolved: Vec<String>,
    pub notes: Vec<String>,
}

/// Rewriting engine for one presentation with coefficients in `C`.
pub struct AlgEngine<C: Coeff> {
    pub pres: Arc<Presentation>,
    pub point: C::Point,
    alg: AlgName,
    order: MonomialOrder,
    n: usize,
    rules: Vec<Rule<C>>,
    by_last: Vec<Vec<usize>>,
    div: Vec<DivRule<C>>,
    /// The whole algebra is zero (a unit lies in the ideal).
    trivial: bool,
    pub status: SystemStatus,
    pub limits: Limits,
    /// Raw relations with coefficients in `C`, for the bounded oracle.
    pub relations: Vec<(String, Element<C>)>,
    mulp: DashMap<(Word, Letter), Arc<Element<C>>>,
    divred: DashMap<Word, Arc<Element<C>>>,
    mulf: DashMap<(Word, Letter), Arc<Element<C>>>,
    nf: DashMap<Word, Arc<Element<C>>>,
    pub(crate) spans: DashMap<(Degree, usize), Arc<BoundedSpan<C>>>,
    /// S5q spans keyed by (degree, bound, ordered).
    pub(crate) sphere: DashMap<(i64, usize, bool), Arc<Echelon<C>>>,
}

fn exps_le(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sorted_word(e: &[u16]) -> Word {
    let mut w = Word::unit();
    for (l, &k) in e.iter().enumerate() {
        for _ in 0..k {
            w.push(l as Letter);
        }
    }
    w
}

impl<C: Coeff> AlgEngine<C> {
    /// Orient the relations of `pres` (coefficients embedded at `point`) and
    /// decide whether the resulting system is complete.
    pub fn build(pres: Arc<Presentation>, point: &C::Point, limits: Limits) -> Result<Self> {
        let alg = pres.name.clone();
        let n = pres.gens.len();
        let mut eng: AlgEngine<C> = AlgEngine {
            order: pres.order(),
            alg: alg.clone(),
            n,
            rules: Vec::new(),
            by_last: vec![Vec::new(); n],
            div: Vec::new(),
            trivial: false,
            status: SystemStatus::default(),
            limits,
            relations: Vec::new(),
            mulp: DashMap::new(),
            divred: DashMap::new(),
            mulf: DashMap::new(),
            nf: DashMap::new(),
            spans: DashMap::new(),
            sphere: DashMap::new(),
            pres: pres.clone(),
            point: point.clone(),
        };
        for r in &pres.relations {
            eng.relations.push((r.label.clone(), Element::embed(&r.elem, point)?));
        }
        let rels = eng.relations.clone();
        for (label, r) in &rels {
            let red = eng.normalize_elem(r)?;
            if red.is_zero() {
                eng.status.redundant.push(label.clone());
                continue;
            }
            let lw = eng.order.max(red.terms().keys()).unwrap().clone();
            let lc = red.coeff(&lw);
            let monic = red.scale(&lc.inv().expect("nonzero leading coefficient"));
            if lw.is_empty() {
                eng.trivial = true;
                eng.status.notes.push(format!("{label} reduces to a nonzero constant"));
                eng.clear_caches();
                continue;
            }
            if pres.order == OrderKind::Pbw && lw.len() > 2 {
                let lead_exp = lw.exponents(n);
                if sorted_word(&lead_exp) != lw {
                    eng.status.unoriented.push(label.clone());
                    continue;
                }
                eng.div.push(DivRule { label: label.clone(), lead: lw, lead_exp, rel: monic });
            } else if !eng.div.is_empty() {
                eng.status.unoriented.push(label.clone());
                continue;
            } else {
                let mut rhs = monic.neg();
                rhs.add_term(lw.clone(), C::one());
                let last = *lw.letters().last().unwrap() as usize;
                eng.by_last[last].push(eng.rules.len());
                eng.rules.push(Rule { label: label.clone(), lhs: lw, rhs });
            }
            eng.clear_caches();
        }
        eng.check_completeness()?;
        Ok(eng)
    }

    fn clear_caches(&self) {
        self.mulp.clear();
        self.divred.clear();
        self.mulf.clear();
        self.nf.clear();
        self.spans.clear();
        self.sphere.clear();
    }

    pub fn alg(&self) -> &AlgName {
        &self.alg
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule<C>] {
        &self.rules
    }

    pub fn div_rules(&self) -> &[DivRule<C>] {
        &self.div
    }

    pub fn is_complete(&self) -> bool {
        self.status.complete
    }

    fn cap_terms(&self, e: &Element<C>) -> Result<()> {
        if let Some(cap) = self.limits.max_terms {
            if e.len() > cap {
                return Err(Error::ResourceCap { what: format!("terms in {}", self.alg), used: e.len(), cap });
            }
        }
        Ok(())
    }

    /// A factor rule matching a suffix of `m x`: (rule index, prefix length).
    fn suffix_rule(&self, m: &Word, x: Letter) -> Option<(usize, usize)> {
        let ml = m.letters();
        for &ri in &self.by_last[x as usize] {
            let lhs = self.rules[ri].lhs.letters();
            let k = lhs.len() - 1;
            if k <= ml.len() && ml[ml.len() - k..] == lhs[..k] {
                return Some((ri, ml.len() - k));
            }
        }
        None
    }

    /// `m x` reduced by the factor rules, for a factor-normal word `m`.
    pub fn mul_pair(&self, m: &Word, x: Letter) -> Result<Arc<Element<C>>> {
        let key = (m.clone(), x);
        if let Some(v) = self.mulp.get(&key) {
            return Ok(v.clone());
        }
        let out = match self.suffix_rule(m, x) {
            None => {
                let mut w = m.clone();
                w.push(x);
                Element::word(&self.alg, w)
            }
            Some((ri, p)) => {
                let prefix = Word::from_slice(&m.letters()[..p]);
                let mut acc = Element::zero(&self.alg);
                for (v, c) in self.rules[ri].rhs.terms() {
                    let t = self.pair_mul_word(&prefix, v)?;
                    acc.add_assign_scaled(&t, c);
                }
                acc
            }
        };
        self.cap_terms(&out)?;
        let out = Arc::new(out);
        self.mulp.insert(key, out.clone());
        Ok(out)
    }

    /// `prefix v` reduced by the factor rules, `prefix` factor-normal.
    fn pair_mul_word(&self, prefix: &Word, v: &Word) -> Result<Element<C>> {
        let mut acc = Element::word(&self.alg, prefix.clone());
        for &y in v.letters() {
            let mut next = Element::zero(&self.alg);
            for (t, c) in acc.terms() {
                next.add_assign_scaled(&*self.mul_pair(t, y)?, c);
            }
            acc = next;
            self.cap_terms(&acc)?;
        }
        Ok(acc)
    }

    /// Normal form of a word under the factor rules alone.
    pub fn pair_nf_word(&self, w: &Word) -> Result<Element<C>> {
        self.pair_mul_word(&Word::unit(), w)
    }

    fn find_div(&self, w: &Word) -> Option<(usize, Exps)> {
        if self.div.is_empty() || w.len() < 3 {
            return None;
        }
        let e = w.exponents(self.n);
        for (i, d) in self.div.iter().enumerate() {
            if exps_le(&d.lead_exp, &e) {
                let q: Exps = e.iter().zip(&d.lead_exp).map(|(a, b)| a - b).collect();
                return Some((i, q));
            }
        }
        None
    }

    /// One divisibility step at `w`: the element `w - P/c'` (without `w`).
    pub fn div_step(&self, w: &Word, di: usize, quot: &[u16]) -> Result<Element<C>> {
        let d = &self.div[di];
        let s = sorted_word(quot);
        let mut p = Element::zero(&self.alg);
        for (t, c) in d.rel.terms() {
            p.add_assign_scaled(&self.pair_nf_word(&s.concat(t))?, c);
        }
        let lead = self.order.max(p.terms().keys()).cloned();
        if lead.as_ref() != Some(w) {
            return Err(Error::Invalid(format!(
                "{}: divisibility rule {} does not lead with the reduced word",
                self.alg, d.label
            )));
        }
        let cw = p.coeff(w);
        let f = cw.inv().unwrap().neg();
        let mut out = Element::zero(&self.alg);
        for (v, c) in p.terms() {
            if v != w {
                out.add_term(v.clone(), c.mul(&f));
            }
        }
        Ok(out)
    }

    /// Full normal form of a factor-normal word.
    fn reduce_div_word(&self, w: &Word) -> Result<Arc<Element<C>>> {
        let Some((di, quot)) = self.find_div(w) else {
            return Ok(Arc::new(Element::word(&self.alg, w.clone())));
        };
        if let Some(v) = self.divred.get(w) {
            return Ok(v.clone());
        }
        let step = self.div_step(w, di, &quot)?;
        let mut out = Element::zero(&self.alg);
        for (v, c) in step.terms() {
            out.add_assign_scaled(&*self.reduce_div_word(v)?, c);
        }
        self.cap_terms(&out)?;
        let out = Arc::new(out);
        self.divred.insert(w.clone(), out.clone());
        Ok(out)
    }

    /// `m x` in normal form, for a normal word `m`.
    pub fn mul_letter(&self, m: &Word, x: Letter) -> Result<Arc<Element<C>>> {
        if self.trivial {
            return Ok(Arc::new(Element::zero(&self.alg)));
        }
        let p = self.mul_pair(m, x)?;
        if self.div.is_empty() {
            return Ok(p);
        }
        let key = (m.clone(), x);
        if let Some(v) = self.mulf.get(&key) {
            return Ok(v.clone());
        }
        let mut out = Element::zero(&self.alg);
        for (v, c) in p.terms() {
            out.add_assign_scaled(&*self.reduce_div_word(v)?, c);
        }
        let out = Arc::new(out);
        self.mulf.insert(key, out.clone());
        Ok(out)
    }

    /// Normal form of `e * w` for `e` in normal form.
    pub fn mul_word_right(&self, e: &Element<C>, w: &Word) -> Result<Element<C>> {
        let mut acc = e.clone();
        for &x in w.letters() {
            let mut next = Element::zero(&self.alg);
            for (t, c) in acc.terms() {
                next.add_assign_scaled(&*self.mul_letter(t, x)?, c);
            }
            self.cap_terms(&next)?;
            acc = next;
        }
        Ok(acc)
    }

    pub fn nf_word(&self, w: &Word) -> Result<Arc<Element<C>>> {
        if self.trivial {
            return Ok(Arc::new(Element::zero(&self.alg)));
        }
        if w.len() <= 1 {
            return Ok(Arc::new(Element::word(&self.alg, w.clone())));
        }
        if let Some(v) = self.nf.get(w) {
            return Ok(v.clone());
        }
        // split off the last letter so prefixes are shared through the cache
        let (init, last) = w.letters().split_at(w.len() - 1);
        let head = self.nf_word(&Word::from_slice(init))?;
        let out = Arc::new(self.mul_word_right(&head, &Word::letter(last[0]))?);
        self.nf.insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn normalize_elem(&self, e: &Element<C>) -> Result<Element<C>> {
        if e.alg() != &self.alg {
            return Err(Error::MixedAlgebras(self.alg.to_string(), e.alg().to_string()));
        }
        let parts: Vec<(Arc<Element<C>>, C)> = crate::par::try_map(e.terms().iter().collect(), |(w, c)| {
            Ok((self.nf_word(w)?, (*c).clone()))
        })?;
        let mut out = Element::zero(&self.alg);
        for (p, c) in parts {
            out.add_assign_scaled(&p, &c);
        }
        self.cap_terms(&out)?;
        Ok(out)
    }

    /// Product of two normal forms.
    pub fn mul_elems(&self, a: &Element<C>, b: &Element<C>) -> Result<Element<C>> {
        let mut out = Element::zero(&self.alg);
        for (w, c) in b.terms() {
            let t = self.mul_word_right(a, w)?;
            out.add_assign_scaled(&t, c);
        }
        Ok(out)
    }

    /// A word is normal when no rule applies to it.
    pub fn is_normal_word(&self, w: &Word) -> bool {
        if self.trivial {
            return false;
        }
        let ls = w.letters();
        for r in &self.rules {
            let l = r.lhs.letters();
            if ls.windows(l.len()).any(|f| f == l) {
                return false;
            }
        }
        self.find_div(w).is_none()
    }

    /// Leftmost factor-rule occurrence in `w`: (rule, position).
    pub fn find_factor(&self, w: &Word) -> Option<(usize, usize)> {
        let ls = w.letters();
        for p in 0..ls.len() {
            for (ri, r) in self.rules.iter().enumerate() {
                let l = r.lhs.letters();
                if p + l.len() <= ls.len() && &ls[p..p + l.len()] == l {
                    return Some((ri, p));
                }
            }
        }
        None
    }

    pub fn find_div_rule(&self, w: &Word) -> Option<(usize, Vec<u16>)> {
        self.find_div(w).map(|(i, q)| (i, q.to_vec()))
    }

    fn check_completeness(&mut self) -> Result<()> {
        let mut ok = self.status.unoriented.is_empty() && !self.trivial;
        // overlaps and inclusions of factor rules
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (a, b) = (r1.lhs.letters(), r2.lhs.letters());
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        let tail = Word::from_slice(&b[k..]);
                        let head = Word::from_slice(&a[..a.len() - k]);
                        let left = self.normalize_elem(&times_right(&r1.rhs, &tail)?)?;
                        let right = self.normalize_elem(&times_left(&head, &r2.rhs)?)?;
                        if left != right {
                            ok = false;
                            self.status.unresolved.push(format!("{} / {}", r1.label, r2.label));
                        }
                    }
                }
                if i != j && b.len() < a.len() {
                    for p in 0..=a.len() - b.len() {
                        if a[p..p + b.len()] == *b {
                            ok = false;
                            self.status.unresolved.push(format!("{} contains {}", r1.label, r2.label));
                        }
                    }
                }
            }
        }
        if self.div.len() > 1 {
            ok = false;
            self.status.notes.push("more than one divisibility relation".into());
        }
        for d in &self.div {
            for x in 0..self.n as Letter {
                let xw = Word::letter(x);
                let mut comm = Element::zero(&self.alg);
                for (t, c) in d.rel.terms() {
                    comm.add_assign_scaled(&self.pair_nf_word(&t.concat(&xw))?, c);
                    comm.add_assign_scaled(&self.pair_nf_word(&xw.concat(t))?, &c.neg());
                }
                if !comm.is_zero() {
                    ok = false;
                    self.status.notes.push(format!("{} is not central", d.label));
                    break;
                }
            }
        }
        self.status.complete = ok;
        Ok(())
    }
}

fn times_right<C: Coeff>(e: &Element<C>, w: &Word) -> Result<Element<C>> {
    e.mul(&Element::word(e.alg(), w.clone()))
}

fn times_left<C: Coeff>(w: &Word, e: &Element<C>) -> Result<Element<C>> {
    Element::word(e.alg(), w.clone()).mul(e)
}

/// Engines for every presentation of a universe at one coefficient point.
pub struct Engine<C: Coeff> {
    pub engines: BTreeMap<String, Arc<AlgEngine<C>>>,
    pub point: C::Point,
}

impl<C: Coeff> Engine<C> {
    pub fn new(presentations: &BTreeMap<String, Arc<Presentation>>, point: C::Point, limits: Limits) -> Result<Self> {
        let list: Vec<(&String, &Arc<Presentation>)> = presentations.iter().collect();
        let built = crate::par::try_map(list, |(name, p)| {
            Ok((name.clone(), Arc::new(AlgEngine::build(p.clone(), &point, limits)?)))
        })?;
        Ok(Engine { engines: built.into_iter().collect(), point })
    }

    pub fn get(&self, alg: &str) -> Result<&Arc<AlgEngine<C>>> {
        self.engines.get(alg).ok_or_else(|| Error::Unknown { kind: "presentation", name: alg.to_string() })
    }
}

impl<C: Coeff> Normalizer<C> for Engine<C> {
    fn normalize(&self, e: &Element<C>) -> Result<Element<C>> {
        self.get(e.alg())?.normalize_elem(e)
    }

    fn normalize_word(&self, alg: &AlgName, w: &Word) -> Result<Element<C>> {
        Ok((*self.get(alg)?.nf_word(w)?).clone())
    }

    fn mul(&self, a: &Element<C>, b: &Element<C>) -> Result<Element<C>> {
        if a.alg() != b.alg() {
            return Err(Error::MixedAlgebras(a.alg().to_string(), b.alg().to_string()));
        }
        self.get(a.alg())?.mul_elems(a, b)
    }
}

/// Engine over Q(q).
pub type SymbolicEngine = Engine<Scalar>;
