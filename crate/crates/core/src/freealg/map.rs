use super::{AlgName, Element, TensorElement, TensorKey, Word};
use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// Reduction to normal form, dispatched on the element's algebra name.
pub trait Normalizer<C: Coeff>: Sync {
    fn normalize(&self, e: &Element<C>) -> Result<Element<C>>;

    /// Normal form of a single word. Engines override this with a cache.
    fn normalize_word(&self, alg: &AlgName, w: &Word) -> Result<Element<C>> {
        self.normalize(&Element::word(alg, w.clone()))
    }

    /// Product of two normal forms, reduced.
    fn mul(&self, a: &Element<C>, b: &Element<C>) -> Result<Element<C>> {
        self.normalize(&a.mul(b)?)
    }

    fn normalize_tensor(&self, t: &TensorElement<C>) -> Result<TensorElement<C>> {
        let mut out = TensorElement::zero(t.legs());
        for (k, c) in t.terms() {
            let parts = k
                .iter()
                .zip(t.legs())
                .map(|(w, alg)| self.normalize_word(alg, w))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Element<C>> = parts.iter().collect();
            out.add_assign_scaled(&TensorElement::pure(&refs), c);
        }
        Ok(out)
    }

    fn mul_tensor(&self, a: &TensorElement<C>, b: &TensorElement<C>) -> Result<TensorElement<C>> {
        self.normalize_tensor(&a.mul(b)?)
    }
}

/// No relations: the identity reduction.
pub struct FreeNormalizer;

impl<C: Coeff> Normalizer<C> for FreeNormalizer {
    fn normalize(&self, e: &Element<C>) -> Result<Element<C>> {
        Ok(e.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    AlgebraHom,
    /// Reverses products: the star structure and antipodes.
    AntiHom,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Image<C> {
    Elem(Element<C>),
    Tensor(TensorElement<C>),
}

/// A map defined by its values on generators and extended multiplicatively.
/// Coefficients are fixed by every map here (q is real, so star is linear
/// over Q(q)).
#[derive(Clone, Debug, PartialEq)]
pub struct MapSpec<C> {
    pub name: String,
    pub source: AlgName,
    pub targets: Vec<AlgName>,
    pub kind: MapKind,
    /// Indexed by source letter.
    pub images: Vec<Option<Image<C>>>,
    /// Generator names of the source, for error messages.
    pub source_names: Vec<String>,
}

impl<C: Coeff> MapSpec<C> {
    pub fn is_tensor_valued(&self) -> bool {
        self.targets.len() != 1 || self.images.iter().flatten().any(|i| matches!(i, Image::Tensor(_)))
    }

    fn image(&self, l: u8) -> Result<&Image<C>> {
        self.images.get(l as usize).and_then(|i| i.as_ref()).ok_or_else(|| Error::MissingImage {
            map: self.name.clone(),
            generator: self.source_names.get(l as usize).cloned().unwrap_or_else(|| format!("#{l}")),
        })
    }

    fn elem_image(&self, l: u8) -> Result<&Element<C>> {
        match self.image(l)? {
            Image::Elem(e) => Ok(e),
            Image::Tensor(_) => Err(Error::Invalid(format!("map {} is tensor-valued", self.name))),
        }
    }

    fn tensor_image(&self, l: u8) -> Result<TensorElement<C>> {
        match self.image(l)? {
            Image::Elem(e) => Ok(TensorElement::from_element(e)),
            Image::Tensor(t) => Ok(t.clone()),
        }
    }

    fn ordered(&self, w: &Word) -> Vec<u8> {
        match self.kind {
            MapKind::AlgebraHom => w.letters().to_vec(),
            MapKind::AntiHom => w.letters().iter().rev().copied().collect(),
        }
    }

    fn check_source(&self, alg: &AlgName) -> Result<()> {
        if *alg != self.source {
            return Err(Error::MixedAlgebras(self.source.to_string(), alg.to_string()));
        }
        Ok(())
    }
}

/// Image of a single word under an element-valued map.
pub fn apply_map_word<C: Coeff>(spec: &MapSpec<C>, w: &Word, nf: &dyn Normalizer<C>) -> Result<Element<C>> {
    let target = &spec.targets[0];
    let mut acc = Element::one(target);
    for l in spec.ordered(w) {
        acc = nf.mul(&acc, spec.elem_image(l)?)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

pub fn apply_map<C: Coeff>(spec: &MapSpec<C>, e: &Element<C>, nf: &dyn Normalizer<C>) -> Result<Element<C>> {
    spec.check_source(e.alg())?;
    if spec.targets.len() != 1 {
        return Err(Error::ArityMismatch { expected: 1, got: spec.targets.len() });
    }
    let mut out = Element::zero(&spec.targets[0]);
    for (w, c) in e.terms() {
        out.add_assign_scaled(&apply_map_word(spec, w, nf)?, c);
    }
    Ok(out)
}

/// Image of a single word under a (possibly) tensor-valued map.
pub fn apply_map_tensor_word<C: Coeff>(
    spec: &MapSpec<C>,
    w: &Word,
    nf: &dyn Normalizer<C>,
) -> Result<TensorElement<C>> {
    let mut acc = TensorElement::one(&spec.targets);
    for l in spec.ordered(w) {
        acc = nf.mul_tensor(&acc, &spec.tensor_image(l)?)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

pub fn apply_map_tensor<C: Coeff>(
    spec: &MapSpec<C>,
    e: &Element<C>,
    nf: &dyn Normalizer<C>,
) -> Result<TensorElement<C>> {
    spec.check_source(e.alg())?;
    let mut out = TensorElement::zero(&spec.targets);
    for (w, c) in e.terms() {
        out.add_assign_scaled(&apply_map_tensor_word(spec, w, nf)?, c);
    }
    Ok(out)
}

/// The star structure, given as an anti-multiplicative generator table.
pub fn star<C: Coeff>(spec: &MapSpec<C>, e: &Element<C>, nf: &dyn Normalizer<C>) -> Result<Element<C>> {
    if spec.kind != MapKind::AntiHom {
        return Err(Error::Invalid(format!("{} is not an anti-homomorphism", spec.name)));
    }
    apply_map(spec, e, nf)
}

/// What to do with one leg in [`tensor_product_map`].
#[derive(Clone, Copy)]
pub enum LegMap<'a, C> {
    Id,
    Map(&'a MapSpec<C>),
}

/// `(f_1 ⊗ ... ⊗ f_n)(t)`. Each leg map may raise that leg's arity.
pub fn tensor_product_map<C: Coeff>(
    maps: &[LegMap<'_, C>],
    t: &TensorElement<C>,
    nf: &dyn Normalizer<C>,
) -> Result<TensorElement<C>> {
    if maps.len() != t.arity() {
        return Err(Error::ArityMismatch { expected: t.arity(), got: maps.len() });
    }
    let mut legs: Vec<AlgName> = Vec::new();
    for (m, leg) in maps.iter().zip(t.legs()) {
        match m {
            LegMap::Id => legs.push(leg.clone()),
            LegMap::Map(s) => {
                s.check_source(leg)?;
                legs.extend(s.targets.iter().cloned());
            }
        }
    }
    let mut out = TensorElement::zero(&legs);
    for (k, c) in t.terms() {
        let mut acc: Option<TensorElement<C>> = None;
        for ((m, w), leg) in maps.iter().zip(k.iter()).zip(t.legs()) {
            let part = match m {
                LegMap::Id => {
                    let mut p = TensorElement::zero(std::slice::from_ref(leg));
                    let mut key = TensorKey::new();
                    key.push(w.clone());
                    p.add_term(key, C::one());
                    p
                }
                LegMap::Map(s) => apply_map_tensor_word(s, w, nf)?,
            };
            acc = Some(match acc {
                None => part,
                Some(a) => a.otimes(&part),
            });
            if acc.as_ref().is_some_and(|a| a.is_zero()) {
                break;
            }
        }
        if let Some(a) = acc {
            if !a.is_zero() {
                out.add_assign_scaled(&a, c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;
    use std::sync::Arc;

    #[test]
    fn antihom_reverses() {
        let a: AlgName = Arc::from("A");
        let x = Element::<Scalar>::word(&a, Word::letter(0));
        let y = Element::<Scalar>::word(&a, Word::letter(1));
        let spec = MapSpec {
            name: "swap".into(),
            source: a.clone(),
            targets: vec![a.clone()],
            kind: MapKind::AntiHom,
            images: vec![Some(Image::Elem(y.clone())), Some(Image::Elem(x.clone()))],
            source_names: vec!["x".into(), "y".into()],
        };
        let xy = x.mul(&y).unwrap();
        let img = star(&spec, &xy, &FreeNormalizer).unwrap();
        assert_eq!(img, x.mul(&y).unwrap());
        let yyx = y.mul(&y).unwrap().mul(&x).unwrap();
        let img = star(&spec, &yyx, &FreeNormalizer).unwrap();
        assert_eq!(img, y.mul(&x).unwrap().mul(&x).unwrap());
    }

    #[test]
    fn missing_image_is_error() {
        let a: AlgName = Arc::from("A");
        let spec = MapSpec::<Scalar> {
            name: "f".into(),
            source: a.clone(),
            targets: vec![a.clone()],
            kind: MapKind::AlgebraHom,
            images: vec![None],
            source_names: vec!["x".into()],
        };
        let x = Element::word(&a, Word::letter(0));
        assert!(matches!(apply_map(&spec, &x, &FreeNormalizer), Err(Error::MissingImage { .. })));
    }

    #[test]
    fn coproduct_style_tensor_map() {
        let a: AlgName = Arc::from("A");
        let x = Element::<Scalar>::word(&a, Word::letter(0));
        let dx = TensorElement::pure(&[&x, &x]);
        let spec = MapSpec {
            name: "delta".into(),
            source: a.clone(),
            targets: vec![a.clone(), a.clone()],
            kind: MapKind::AlgebraHom,
            images: vec![Some(Image::Tensor(dx))],
            source_names: vec!["x".into()],
        };
        let xx = x.mul(&x).unwrap();
        let t = apply_map_tensor(&spec, &xx, &FreeNormalizer).unwrap();
        assert_eq!(t, TensorElement::pure(&[&xx, &xx]));
        let t3 = tensor_product_map(&[LegMap::Map(&spec), LegMap::Id], &t, &FreeNormalizer).unwrap();
        assert_eq!(t3.arity(), 3);
        assert_eq!(t3, TensorElement::pure(&[&xx, &xx, &xx]));
    }
}
