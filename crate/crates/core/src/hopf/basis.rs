//! The basis 𝓑 of U_q(2):
//! `a_klmn = u^k α^l γ^m (−qγ*u*)^n` and `b_klmn = u^k γ^l (−qγ*u*)^m (α*u*)^n`
//! with `k ∈ Z`, `n ≥ 1` for `b`.
//!
//! Normal words are `u^K α^l γ^m γ*^n` and `u^K α*^p γ^m γ*^n`; they are
//! scalar multiples of 𝓑 words. Moving `α*^p` right past `γ^m γ*^n` costs
//! `q^{p(m+n)}`.

use super::Ctx;
use crate::error::{Error, Result};
use crate::freealg::{Element, Word};
use crate::scalars::{Coeff, Scalar};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BKind {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisWord {
    pub kind: BKind,
    pub k: i64,
    pub l: u32,
    pub m: u32,
    pub n: u32,
}

impl std::fmt::Display for BasisWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = if self.kind == BKind::A { 'a' } else { 'b' };
        write!(f, "{c}({},{},{},{})", self.k, self.l, self.m, self.n)
    }
}

/// All 𝓑 words with `|k|, l, m, n <= cap` (and `n >= 1` for `b`).
pub fn b_words(cap: u32) -> Vec<BasisWord> {
    let c = cap as i64;
    let mut out = Vec::new();
    for kind in [BKind::A, BKind::B] {
        for k in -c..=c {
            for l in 0..=cap {
                for m in 0..=cap {
                    for n in 0..=cap {
                        if kind == BKind::B && n == 0 {
                            continue;
                        }
                        out.push(BasisWord { kind, k, l, m, n });
                    }
                }
            }
        }
    }
    out
}

fn pow_text(base: &str, e: u32) -> String {
    vec![base; e as usize].join(".")
}

impl BasisWord {
    pub fn total(&self) -> u32 {
        self.k.unsigned_abs() as u32 + self.l + self.m + self.n
    }

    /// DSL text of the word, given the text of `u, u*, v22, v32, v23, v33`.
    fn text(&self, u: &str, ust: &str, a: &str, g: &str, gs: &str, ast: &str) -> String {
        let mut parts = Vec::new();
        if self.k > 0 {
            parts.push(pow_text(u, self.k as u32));
        } else if self.k < 0 {
            parts.push(pow_text(ust, (-self.k) as u32));
        }
        match self.kind {
            BKind::A => {
                parts.push(pow_text(a, self.l));
                parts.push(pow_text(g, self.m));
                parts.push(pow_text(gs, self.n));
            }
            BKind::B => {
                parts.push(pow_text(g, self.l));
                parts.push(pow_text(gs, self.m));
                parts.push(pow_text(ast, self.n));
            }
        }
        let body: Vec<String> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        if body.is_empty() {
            "1".to_string()
        } else {
            body.join(".")
        }
    }

    /// The element of U_q(2), or its image in SU_q(2) (where `u = 1`).
    pub fn element<C: Coeff>(&self, ctx: &Ctx<C>, alg: &str) -> Result<Element<C>> {
        if ctx.pres(alg)?.letter("u").is_some() {
            ctx.parse(alg, &self.text("u", "u*", "alpha", "gamma", "(-q*gamma*.u*)", "(alpha*.u*)"))
        } else {
            ctx.parse(alg, &self.text("1", "1", "alpha", "gamma", "(-q*gamma*)", "alpha*"))
        }
    }

    /// `j` of the word (Lemma 3.5).
    pub fn j_image<C: Coeff>(&self, ctx: &Ctx<C>, alg: &str) -> Result<Element<C>> {
        ctx.parse(alg, &self.text("u11", "star(u11)", "u22", "u32", "u23", "u33"))
    }
}

/// Letter indices of U_q(2) by name.
struct U2Letters {
    u: u8,
    us: u8,
    a: u8,
    as_: u8,
    g: u8,
    gs: u8,
}

fn letters<C: Coeff>(ctx: &Ctx<C>, alg: &str) -> Result<U2Letters> {
    let p = ctx.pres(alg)?;
    let l = |n: &str| p.letter(n).ok_or_else(|| Error::Unknown { kind: "generator", name: format!("{n} in {alg}") });
    Ok(U2Letters { u: l("u")?, us: l("u*")?, a: l("alpha")?, as_: l("alpha*")?, g: l("gamma")?, gs: l("gamma*")? })
}

/// Express a normal word as `c · (𝓑 word)`.
pub fn word_to_basis(ctx: &Ctx<impl Coeff>, alg: &str, w: &Word) -> Result<(BasisWord, Scalar)> {
    let x = letters(ctx, alg)?;
    let mut cnt = [0i64; 6];
    let mut last = 0usize;
    for &c in w.letters() {
        let slot = [x.u, x.us, x.a, x.as_, x.g, x.gs].iter().position(|&y| y == c).unwrap();
        if slot < last {
            return Err(Error::Invalid(format!("word {w:?} is not a normal word of {alg}")));
        }
        last = slot;
        cnt[slot] += 1;
    }
    let [a, b, l, p, m, n] = cnt;
    if (a > 0 && b > 0) || (l > 0 && p > 0) {
        return Err(Error::Invalid(format!("word {w:?} is not a normal word of {alg}")));
    }
    let kk = a - b;
    if p == 0 {
        // u^K α^l γ^m γ*^n = (−q)^{−n} a_{K+n,l,m,n}
        let bw = BasisWord { kind: BKind::A, k: kk + n, l: l as u32, m: m as u32, n: n as u32 };
        Ok((bw, Scalar::neg_q_pow(-n)))
    } else {
        // u^K α*^p γ^m γ*^n = (−q)^{−n} q^{−p(m+n)} b_{K+n+p,m,n,p}
        let bw = BasisWord { kind: BKind::B, k: kk + n + p, l: m as u32, m: n as u32, n: p as u32 };
        Ok((bw, Scalar::neg_q_pow(-n).mul(&Scalar::q_pow(-p * (m + n)))))
    }
}

impl<C: Coeff> Ctx<C> {
    /// 𝓑-coordinates of an element of U_q(2).
    pub fn basis_coordinates(&self, e: &Element<C>) -> Result<Vec<(BasisWord, C)>> {
        let nf = self.nf(e)?;
        let mut out = Vec::new();
        for (w, c) in nf.terms() {
            let (bw, s) = word_to_basis(self, e.alg(), w)?;
            out.push((bw, c.mul(&self.scalar(&s)?)));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// The section `j` of Lemma 3.5, extended linearly over 𝓑.
    pub fn eval_j(&self, h: &Element<C>, target: &str) -> Result<Element<C>> {
        let mut out = Element::zero(&self.alg(target)?);
        for (bw, c) in self.basis_coordinates(h)? {
            out.add_assign_scaled(&bw.j_image(self, target)?, &c);
        }
        self.nf(&out)
    }
}
