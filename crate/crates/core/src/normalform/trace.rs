use super::engine::AlgEngine;
use crate::error::{Error, Result};
use crate::freealg::{Element, Word};
use crate::scalars::Coeff;
use serde::Serialize;

/// One rewrite: `rule` applied to `word` at letter `position` (divisibility
/// steps use position 0).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub rule: String,
    pub word: String,
    pub position: usize,
    #[serde(skip)]
    raw: Word,
    /// The rewrite replaced `word` only by smaller words.
    pub decreasing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionTrace {
    pub input: String,
    pub steps: Vec<TraceStep>,
    pub output: String,
    pub fixpoint: bool,
}

impl<C: Coeff> AlgEngine<C> {
    /// Rewrite the largest reducible word, one rule at a time, recording each
    /// step. Uses no caches, so it is an independent path to the normal form.
    pub fn trace_normal_form(&self, e: &Element<C>, max_steps: usize) -> Result<(Element<C>, ReductionTrace)> {
        let names = &self.pres.gens;
        let mut cur = e.clone();
        let mut steps = Vec::new();
        let mut fixpoint = false;
        while steps.len() < max_steps {
            let order = self.order();
            let target = cur
                .terms()
                .keys()
                .filter(|w| !self.is_normal_word(w))
                .max_by(|a, b| order.cmp(a, b))
                .cloned();
            let Some(w) = target else {
                fixpoint = true;
                break;
            };
            let step = self.apply_step(&mut cur, &w)?;
            steps.push(TraceStep {
                word: crate::freealg::format_word(&w, names),
                raw: w,
                ..step
            });
        }
        let trace = ReductionTrace {
            input: e.format_with(names),
            steps,
            output: cur.format_with(names),
            fixpoint,
        };
        Ok((cur, trace))
    }

    fn apply_step(&self, cur: &mut Element<C>, w: &Word) -> Result<TraceStep> {
        let c = cur.coeff(w);
        cur.add_term(w.clone(), c.neg());
        let order = self.order();
        let (rule, position, repl) = if let Some((ri, p)) = self.find_factor(w) {
            let r = &self.rules()[ri];
            let pre = Word::from_slice(&w.letters()[..p]);
            let post = Word::from_slice(&w.letters()[p + r.lhs.len()..]);
            let mut repl = Element::zero(self.alg());
            for (v, d) in r.rhs.terms() {
                repl.add_term(pre.concat(v).concat(&post), d.clone());
            }
            (r.label.clone(), p, repl)
        } else if let Some((di, q)) = self.find_div_rule(w) {
            (self.div_rules()[di].label.clone(), 0, self.div_step(w, di, &q)?)
        } else {
            return Err(Error::Invalid("no rule applies".into()));
        };
        let decreasing = repl.terms().keys().all(|v| order.cmp(v, w).is_lt());
        cur.add_assign_scaled(&repl, &c);
        Ok(TraceStep { rule, word: String::new(), position, raw: Word::unit(), decreasing })
    }

    /// Re-apply the steps of a trace to `input` and return the result.
    pub fn replay(&self, input: &Element<C>, trace: &ReductionTrace) -> Result<Element<C>> {
        let mut cur = input.clone();
        for s in &trace.steps {
            let st = self.apply_step(&mut cur, &s.raw)?;
            if st.rule != s.rule || st.position != s.position {
                return Err(Error::Invalid(format!("replay diverged at {}", s.word)));
            }
        }
        Ok(cur)
    }
}
