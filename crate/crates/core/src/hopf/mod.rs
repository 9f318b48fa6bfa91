//! Coalgebra structure, coactions from Hopf epimorphisms, Haar functionals,
//! averaging, the canonical map and cotensor membership.

mod basis;
mod checks;
mod context;

pub use basis::{b_words, BasisWord, BKind};
pub use checks::*;
pub use context::{as_tensor, contract_leg, embed_map, error_item, map_leg, Ctx, HopfMaps};

use crate::error::{Error, Result};
use crate::freealg::{apply_map, apply_map_tensor, Element, TensorElement, Word};
use crate::presentations::{subalgebra_membership, DegreeOf, Membership, Subalgebra};
use crate::scalars::Coeff;

/// Outcome of [`Ctx::cotensor_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cotensor {
    Holds,
    Fails,
    /// Some second leg is not in the coideal subalgebra.
    Precondition,
}

impl<C: Coeff> Ctx<C> {
    pub fn coproduct(&self, e: &Element<C>) -> Result<TensorElement<C>> {
        let h = self.hopf(e.alg())?;
        apply_map_tensor(&h.coproduct, e, &self.engine)
    }

    fn coproduct_word(&self, alg: &str, w: &Word) -> Result<TensorElement<C>> {
        self.coproduct(&Element::word(&self.alg(alg)?, w.clone()))
    }

    pub fn counit_word(&self, alg: &str, w: &Word) -> Result<C> {
        let h = self.hopf(alg)?;
        let mut acc = C::one();
        for &l in w.letters() {
            let c = h.counit.get(l as usize).and_then(|c| c.as_ref()).ok_or_else(|| Error::MissingImage {
                map: format!("counit[{alg}]"),
                generator: self.pres(alg).map(|p| p.gens[l as usize].clone()).unwrap_or_default(),
            })?;
            acc = acc.mul(c);
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn counit(&self, e: &Element<C>) -> Result<C> {
        let mut acc = C::zero();
        for (w, c) in e.terms() {
            acc = acc.add(&c.mul(&self.counit_word(e.alg(), w)?));
        }
        Ok(acc)
    }

    pub fn antipode(&self, e: &Element<C>) -> Result<Element<C>> {
        let h = self.hopf(e.alg())?;
        let s = h.antipode.as_ref().ok_or_else(|| Error::Unknown { kind: "antipode", name: e.alg().to_string() })?;
        apply_map(s, e, &self.engine)
    }

    /// `S⁻¹ = * ∘ S ∘ *`.
    pub fn inverse_antipode(&self, e: &Element<C>) -> Result<Element<C>> {
        self.star(&self.antipode(&self.star(e)?)?)
    }

    /// `ϱ = (id ⊗ epi) ∘ Δ`.
    pub fn coaction(&self, e: &Element<C>, epi: &str) -> Result<TensorElement<C>> {
        apply_map_tensor(self.rho_spec(epi)?, e, &self.engine)
    }

    /// `(epi ⊗ id) ∘ Δ`.
    pub fn left_image_coproduct(&self, e: &Element<C>, epi: &str) -> Result<TensorElement<C>> {
        apply_map_tensor(self.lrho_spec(epi)?, e, &self.engine)
    }

    /// Coaction applied to one leg of a tensor (that leg becomes two).
    pub fn coaction_leg(&self, t: &TensorElement<C>, leg: usize, epi: &str) -> Result<TensorElement<C>> {
        let m = self.map(epi)?;
        let alg = t.legs()[leg].clone();
        let mut legs = vec![alg.clone()];
        legs.extend(m.targets.iter().cloned());
        map_leg(t, leg, &legs, |w| self.coaction(&Element::word(&alg, w.clone()), epi))
    }

    pub fn coproduct_leg(&self, t: &TensorElement<C>, leg: usize) -> Result<TensorElement<C>> {
        let alg = t.legs()[leg].clone();
        map_leg(t, leg, &[alg.clone(), alg.clone()], |w| self.coproduct_word(&alg, w))
    }

    pub fn counit_leg(&self, t: &TensorElement<C>, leg: usize) -> Result<TensorElement<C>> {
        let alg = t.legs()[leg].clone();
        contract_leg(t, leg, |w| self.counit_word(&alg, w))
    }

    pub fn haar_leg(&self, t: &TensorElement<C>, leg: usize) -> Result<TensorElement<C>> {
        let alg = t.legs()[leg].clone();
        contract_leg(t, leg, |w| self.haar(&Element::word(&alg, w.clone())))
    }

    /// Apply an element-valued function to one leg.
    pub fn map_leg_elem(
        &self,
        t: &TensorElement<C>,
        leg: usize,
        target: &str,
        f: impl Fn(&Element<C>) -> Result<Element<C>>,
    ) -> Result<TensorElement<C>> {
        let alg = t.legs()[leg].clone();
        let target = self.alg(target)?;
        map_leg(t, leg, &[target], |w| Ok(as_tensor(&f(&Element::word(&alg, w.clone()))?)))
    }

    /// `λ(a) = Σ S⁻¹(a₍₁₎) ⊗ a₍₀₎`.
    pub fn left_coaction(&self, e: &Element<C>, epi: &str) -> Result<TensorElement<C>> {
        let r = self.coaction(e, epi)?.permute(&[1, 0]);
        let h = r.legs()[0].to_string();
        self.map_leg_elem(&r, 0, &h, |x| self.inverse_antipode(x))
    }

    /// The Haar functional: the declared family values on normal monomials,
    /// zero elsewhere. No families means the unit coefficient.
    pub fn haar(&self, e: &Element<C>) -> Result<C> {
        let data = self.universe.haar(e.alg())?;
        let nf = self.nf(e)?;
        let mut acc = C::zero();
        for (w, c) in nf.terms() {
            if w.is_empty() {
                acc = acc.add(c);
                continue;
            }
            for fam in &data.families {
                let b = fam.base.len();
                if b == 0 || w.len() % b != 0 {
                    continue;
                }
                let n = w.len() / b;
                let mut pw = Word::unit();
                for _ in 0..n {
                    pw = pw.concat(&fam.base);
                }
                let img = self.engine.get(e.alg())?.nf_word(&pw)?;
                if img.len() != 1 {
                    return Err(Error::Invalid(format!("haar family {} is not monomial at n={n}", fam.source)));
                }
                let (w2, c2) = img.terms().iter().next().unwrap();
                if w2 == w {
                    let v = self.scalar(&fam.value.eval(n as i64)?)?;
                    acc = acc.add(&c.mul(&v).mul(&c2.inv().unwrap()));
                }
            }
        }
        Ok(acc)
    }

    /// `E = (id ⊗ hm) ∘ ϱ`.
    pub fn averaging(&self, e: &Element<C>, epi: &str) -> Result<Element<C>> {
        self.haar_leg(&self.coaction(e, epi)?, 1)?.into_element()
    }

    /// `can(a ⊗ b) = (a ⊗ 1) ϱ(b)`.
    pub fn canonical_map(&self, a: &Element<C>, b: &Element<C>, epi: &str) -> Result<TensorElement<C>> {
        let r = self.coaction(b, epi)?;
        let one = Element::one(&r.legs()[1]);
        self.mul_tensor(&TensorElement::pure(&[a, &one]), &r)
    }

    /// Is the normal form of `e` in the subalgebra? Only the grading part:
    /// degree (0,0) after normal form (Flag, CP1q).
    pub fn degree_zero(&self, e: &Element<C>) -> Result<bool> {
        let p = self.pres(e.alg())?;
        Ok(match p.degree_of(&self.nf(e)?) {
            DegreeOf::Zero => true,
            DegreeOf::Homogeneous(d) => d == (0, 0),
            DegreeOf::Inhomogeneous => false,
        })
    }

    pub fn membership(&self, e: &Element<C>, sub: Subalgebra) -> Result<Membership> {
        subalgebra_membership(self.engine.get(e.alg())?, e, sub)
    }

    /// `(ϱ ⊗ id)(t) = (id ⊗ Δ_H)(t)` for `t` in `A ⊗ H` whose second legs
    /// lie in the coideal subalgebra `sub`.
    pub fn cotensor_check(&self, t: &TensorElement<C>, epi: &str, sub: Subalgebra) -> Result<Cotensor> {
        let t = self.nf_tensor(t)?;
        for (_, h) in t.slice_leg(1) {
            let ok = match sub {
                Subalgebra::CP1q | Subalgebra::Flag => self.degree_zero(&h)?,
                _ => return Err(Error::Invalid(format!("{sub:?} is not a coideal subalgebra of the fibre"))),
            };
            if !ok {
                return Ok(Cotensor::Precondition);
            }
        }
        let lhs = self.coaction_leg(&t, 0, epi)?;
        let rhs = self.coproduct_leg(&t, 1)?;
        Ok(if self.is_zero_tensor(&lhs.sub(&rhs)?)? { Cotensor::Holds } else { Cotensor::Fails })
    }
}

#[cfg(test)]
mod tests;
