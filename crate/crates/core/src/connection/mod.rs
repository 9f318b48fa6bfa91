//! The strong connection of SU_q(3) over CP^2_q: the section `j`, the
//! connection form `ℓ = (S⊗id)∘Δ∘j`, the splitting `σ` and connection `∇`
//! on the flag manifold, and idempotents from comodules.

mod checks;
mod idempotent;
#[cfg(test)]
mod tests;

pub use checks::*;
pub use idempotent::*;

use crate::error::Result;
use crate::freealg::{Element, TensorElement};
use crate::hopf::{map_leg, Ctx};
use crate::scalars::Coeff;

/// The total space, the structure Hopf algebra and the epimorphism.
pub const A: &str = "SU3";
pub const H: &str = "U2";
pub const PI: &str = "pi";

/// `𝔰(a1⊗a2 ⊗ a3⊗a4) = a3 a1 ⊗ a2 a4`, normalized.
pub fn sandwich<C: Coeff>(ctx: &Ctx<C>, x: &TensorElement<C>, y: &TensorElement<C>) -> Result<TensorElement<C>> {
    let legs = x.legs().to_vec();
    let mut out = TensorElement::zero(&legs);
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            let mut k = kx.clone();
            k[0] = ky[0].concat(&kx[0]);
            k[1] = kx[1].concat(&ky[1]);
            out.add_term(k, cx.mul(cy));
        }
    }
    ctx.nf_tensor(&out)
}

impl<C: Coeff> Ctx<C> {
    /// `(S ⊗ id) ∘ Δ` on an element of the total space.
    pub fn ell_total(&self, a: &Element<C>) -> Result<TensorElement<C>> {
        let d = self.coproduct(a)?;
        let alg = d.legs()[0].to_string();
        self.nf_tensor(&self.map_leg_elem(&d, 0, &alg, |x| self.antipode(x))?)
    }

    /// `ℓ(h) = (S ⊗ id) Δ j(h)` by definition.
    pub fn eval_ell(&self, h: &Element<C>) -> Result<TensorElement<C>> {
        self.ell_total(&self.eval_j(h, A)?)
    }

    /// Is `j(hh') = j(h) j(h')` modulo the ideal?
    pub fn j_multiplicative(&self, h: &Element<C>, h2: &Element<C>) -> Result<bool> {
        let lhs = self.eval_j(&self.mul(h, h2)?, A)?;
        let rhs = self.mul(&self.eval_j(h, A)?, &self.eval_j(h2, A)?)?;
        self.is_zero(&lhs.sub(&rhs)?)
    }

    /// `ℓ(hh')`, by the sandwich rule when `j` is multiplicative on the
    /// pair and by the definition otherwise. The flag reports which.
    pub fn ell_product(&self, h: &Element<C>, h2: &Element<C>) -> Result<(TensorElement<C>, bool)> {
        if self.j_multiplicative(h, h2)? {
            Ok((sandwich(self, &self.eval_ell(h)?, &self.eval_ell(h2)?)?, true))
        } else {
            Ok((self.eval_ell(&self.mul(h, h2)?)?, false))
        }
    }

    /// `ℓ` applied to one leg of a tensor whose leg lives in `H`.
    pub fn ell_leg(&self, t: &TensorElement<C>, leg: usize) -> Result<TensorElement<C>> {
        let h = t.legs()[leg].clone();
        let a = self.alg(A)?;
        map_leg(t, leg, &[a.clone(), a], |w| self.eval_ell(&Element::word(&h, w.clone())))
    }

    /// `σ(a) = Σ a₍₁₎ ℓ(π(a₍₂₎))`, computed as `(μ ⊗ id)(id ⊗ ℓ) ϱ(a)`.
    pub fn sigma(&self, a: &Element<C>) -> Result<TensorElement<C>> {
        let r = self.coaction(a, PI)?;
        let t = self.ell_leg(&r, 1)?;
        self.nf_tensor(&t.contract(0)?)
    }

    /// `∇(x) = 1 ⊗ x − σ(x)`.
    pub fn nabla(&self, x: &Element<C>) -> Result<TensorElement<C>> {
        let one = Element::one(x.alg());
        TensorElement::pure(&[&one, x]).sub(&self.sigma(x)?)
    }

    /// `d(b) = 1 ⊗ b − b ⊗ 1`.
    pub fn d(&self, b: &Element<C>) -> Result<TensorElement<C>> {
        let one = Element::one(b.alg());
        TensorElement::pure(&[&one, b]).sub(&TensorElement::pure(&[b, &one]))
    }

    /// Multiply the last leg of a tensor on the right by `s`.
    pub fn right_mul_last(&self, t: &TensorElement<C>, s: &Element<C>) -> Result<TensorElement<C>> {
        let mut legs: Vec<Element<C>> = t.legs().iter().map(Element::one).collect();
        *legs.last_mut().unwrap() = s.clone();
        let refs: Vec<&Element<C>> = legs.iter().collect();
        self.mul_tensor(t, &TensorElement::pure(&refs))
    }

    /// Multiply the first leg of a tensor on the left by `b`.
    pub fn left_mul_first(&self, b: &Element<C>, t: &TensorElement<C>) -> Result<TensorElement<C>> {
        let mut legs: Vec<Element<C>> = t.legs().iter().map(Element::one).collect();
        legs[0] = b.clone();
        let refs: Vec<&Element<C>> = legs.iter().collect();
        self.mul_tensor(&TensorElement::pure(&refs), t)
    }
}
