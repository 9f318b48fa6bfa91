use crate::dsl;
use crate::error::{Error, Result};
use crate::freealg::{apply_map, AlgName, Element, Image, MapSpec, Normalizer, TensorElement, TensorKey, Word};
use crate::normalform::{Engine, Limits};
use crate::presentations::{Presentation, Universe};
use crate::report::Item;
use crate::scalars::{Coeff, Scalar};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Coproduct, counit and antipode with coefficients in `C`.
pub struct HopfMaps<C> {
    pub coproduct: MapSpec<C>,
    pub counit: Vec<Option<C>>,
    pub antipode: Option<MapSpec<C>>,
}

/// A universe specialized to one coefficient domain: engines for every
/// presentation and all maps with embedded coefficients.
pub struct Ctx<C: Coeff> {
    pub universe: Arc<Universe>,
    pub engine: Engine<C>,
    maps: BTreeMap<String, MapSpec<C>>,
    stars: BTreeMap<String, MapSpec<C>>,
    hopf: BTreeMap<String, HopfMaps<C>>,
    /// `(id ⊗ epi) ∘ Δ` and `(epi ⊗ id) ∘ Δ` on generators, per map name.
    rho: BTreeMap<String, MapSpec<C>>,
    lrho: BTreeMap<String, MapSpec<C>>,
}

pub fn embed_map<C: Coeff>(m: &MapSpec<Scalar>, point: &C::Point) -> Result<MapSpec<C>> {
    let images = m
        .images
        .iter()
        .map(|i| {
            i.as_ref()
                .map(|i| {
                    Ok(match i {
                        Image::Elem(e) => Image::Elem(Element::embed(e, point)?),
                        Image::Tensor(t) => Image::Tensor(TensorElement::embed(t, point)?),
                    })
                })
                .transpose()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MapSpec {
        name: m.name.clone(),
        source: m.source.clone(),
        targets: m.targets.clone(),
        kind: m.kind,
        images,
        source_names: m.source_names.clone(),
    })
}

impl<C: Coeff> Ctx<C> {
    pub fn new(universe: Arc<Universe>, point: C::Point, limits: Limits) -> Result<Self> {
        let engine = Engine::new(&universe.presentations, point, limits)?;
        let point = &engine.point;
        let maps =
            universe.maps.iter().map(|(n, m)| Ok((n.clone(), embed_map(m, point)?))).collect::<Result<_>>()?;
        let stars = universe
            .presentations
            .iter()
            .filter(|(_, p)| p.star.iter().all(|s| s.is_some()))
            .map(|(n, p)| Ok((n.clone(), embed_map(&p.star_map(), point)?)))
            .collect::<Result<_>>()?;
        let hopf = universe
            .hopf
            .iter()
            .map(|(n, h)| {
                let counit =
                    h.counit.iter().map(|c| c.as_ref().map(|c| C::embed(c, point)).transpose()).collect::<Result<
                        Vec<_>,
                        _,
                    >>()?;
                Ok((
                    n.clone(),
                    HopfMaps {
                        coproduct: embed_map(&h.coproduct, point)?,
                        counit,
                        antipode: h.antipode.as_ref().map(|a| embed_map(a, point)).transpose()?,
                    },
                ))
            })
            .collect::<Result<_>>()?;
        let mut ctx = Ctx { universe, engine, maps, stars, hopf, rho: BTreeMap::new(), lrho: BTreeMap::new() };
        let names: Vec<String> = ctx
            .maps
            .iter()
            .filter(|(_, m)| m.targets.len() == 1 && ctx.hopf.contains_key(&*m.source))
            .map(|(n, _)| n.clone())
            .collect();
        for n in names {
            let (r, l) = (ctx.side_coaction_spec(&n, 1)?, ctx.side_coaction_spec(&n, 0)?);
            ctx.rho.insert(n.clone(), r);
            ctx.lrho.insert(n, l);
        }
        Ok(ctx)
    }

    /// Generator table of `(id ⊗ epi) ∘ Δ` (side 1) or `(epi ⊗ id) ∘ Δ`
    /// (side 0). Both are algebra maps, so they extend multiplicatively.
    fn side_coaction_spec(&self, epi: &str, side: usize) -> Result<MapSpec<C>> {
        let m = self.map(epi)?;
        let src = m.source.clone();
        let p = self.pres(&src)?;
        let mut images = Vec::new();
        for l in 0..p.gens.len() {
            let d = self.coproduct(&Element::word(&src, Word::letter(l as u8)))?;
            let t = map_leg(&d, side, &m.targets, |w| {
                Ok(as_tensor(&apply_map(m, &Element::word(&src, w.clone()), &self.engine)?))
            })?;
            images.push(Some(Image::Tensor(t)));
        }
        let mut targets = vec![src.clone()];
        targets.insert(side, m.targets[0].clone());
        Ok(MapSpec {
            name: format!("coaction[{epi},{side}]"),
            source: src,
            targets,
            kind: crate::freealg::MapKind::AlgebraHom,
            images,
            source_names: p.gens.clone(),
        })
    }

    pub fn rho_spec(&self, epi: &str) -> Result<&MapSpec<C>> {
        self.rho.get(epi).ok_or_else(|| Error::Unknown { kind: "coaction", name: epi.to_string() })
    }

    pub fn lrho_spec(&self, epi: &str) -> Result<&MapSpec<C>> {
        self.lrho.get(epi).ok_or_else(|| Error::Unknown { kind: "coaction", name: epi.to_string() })
    }

    pub fn point(&self) -> &C::Point {
        &self.engine.point
    }

    pub fn describe_point(&self) -> String {
        C::describe_point(self.point())
    }

    pub fn pres(&self, alg: &str) -> Result<&Arc<Presentation>> {
        self.universe.pres(alg)
    }

    pub fn alg(&self, alg: &str) -> Result<AlgName> {
        Ok(self.pres(alg)?.name.clone())
    }

    pub fn scalar(&self, s: &Scalar) -> Result<C> {
        Ok(C::embed(s, self.point())?)
    }

    pub fn embed(&self, e: &Element<Scalar>) -> Result<Element<C>> {
        Element::embed(e, self.point())
    }

    pub fn embed_tensor(&self, t: &TensorElement<Scalar>) -> Result<TensorElement<C>> {
        TensorElement::embed(t, self.point())
    }

    /// Parse an expression in the DSL syntax.
    pub fn parse(&self, alg: &str, text: &str) -> Result<Element<C>> {
        self.embed(&dsl::parse_element(&self.universe, alg, text)?)
    }

    pub fn parse_tensor(&self, legs: &[&str], text: &str) -> Result<TensorElement<C>> {
        self.embed_tensor(&dsl::parse_tensor(&self.universe, legs, text)?)
    }

    pub fn gen(&self, alg: &str, name: &str) -> Result<Element<C>> {
        self.embed(&self.pres(alg)?.gen(name)?)
    }

    pub fn one(&self, alg: &str) -> Result<Element<C>> {
        Ok(Element::one(&self.alg(alg)?))
    }

    pub fn map(&self, name: &str) -> Result<&MapSpec<C>> {
        self.maps.get(name).ok_or_else(|| Error::Unknown { kind: "map", name: name.to_string() })
    }

    pub fn hopf(&self, alg: &str) -> Result<&HopfMaps<C>> {
        self.hopf.get(alg).ok_or_else(|| Error::Unknown { kind: "hopf structure", name: alg.to_string() })
    }

    pub fn star_spec(&self, alg: &str) -> Result<&MapSpec<C>> {
        self.stars.get(alg).ok_or_else(|| Error::Unknown { kind: "star structure", name: alg.to_string() })
    }

    pub fn nf(&self, e: &Element<C>) -> Result<Element<C>> {
        self.engine.normalize(e)
    }

    pub fn nf_tensor(&self, t: &TensorElement<C>) -> Result<TensorElement<C>> {
        self.engine.normalize_tensor(t)
    }

    pub fn mul(&self, a: &Element<C>, b: &Element<C>) -> Result<Element<C>> {
        Normalizer::mul(&self.engine, a, b)
    }

    pub fn mul_tensor(&self, a: &TensorElement<C>, b: &TensorElement<C>) -> Result<TensorElement<C>> {
        self.engine.mul_tensor(a, b)
    }

    pub fn apply(&self, map: &str, e: &Element<C>) -> Result<Element<C>> {
        apply_map(self.map(map)?, e, &self.engine)
    }

    pub fn star(&self, e: &Element<C>) -> Result<Element<C>> {
        apply_map(self.star_spec(e.alg())?, e, &self.engine)
    }

    pub fn is_zero(&self, e: &Element<C>) -> Result<bool> {
        self.engine.is_zero_mod_ideal(e)
    }

    pub fn is_zero_tensor(&self, t: &TensorElement<C>) -> Result<bool> {
        self.engine.is_zero_tensor(t)
    }

    pub fn format(&self, e: &Element<C>) -> String {
        self.universe.format_coeff(e)
    }

    pub fn format_tensor(&self, t: &TensorElement<C>) -> String {
        self.universe.format_tensor(t)
    }

    /// Item for the claim `e ≡ 0`.
    pub fn zero_item(&self, label: impl Into<String>, e: Result<Element<C>>) -> Item {
        let label = label.into();
        let e = match e {
            Ok(e) => e,
            Err(err) => return error_item(label, err),
        };
        match self.is_zero(&e) {
            Ok(true) => Item::pass(label),
            Ok(false) => Item::fail(label, self.format(&self.nf(&e).unwrap_or(e))),
            Err(err) => error_item(label, err),
        }
    }

    /// Item for the claim `t ≡ 0` in the tensor product of quotients.
    pub fn zero_tensor_item(&self, label: impl Into<String>, t: Result<TensorElement<C>>) -> Item {
        let label = label.into();
        let t = match t {
            Ok(t) => t,
            Err(err) => return error_item(label, err),
        };
        match self.is_zero_tensor(&t) {
            Ok(true) => Item::pass(label),
            Ok(false) => Item::fail(label, self.format_tensor(&self.nf_tensor(&t).unwrap_or(t))),
            Err(err) => error_item(label, err),
        }
    }

    pub fn eq_item(&self, label: impl Into<String>, a: Result<Element<C>>, b: Result<Element<C>>) -> Item {
        self.zero_item(label, a.and_then(|a| a.sub(&b?)))
    }

    pub fn eq_tensor_item(
        &self,
        label: impl Into<String>,
        a: Result<TensorElement<C>>,
        b: Result<TensorElement<C>>,
    ) -> Item {
        self.zero_tensor_item(label, a.and_then(|a| a.sub(&b?)))
    }
}

/// A resource cap makes the claim undecided; any other error fails it.
pub fn error_item(label: String, err: Error) -> Item {
    match err {
        Error::ResourceCap { .. } => Item::undecided(label, err.to_string()),
        _ => Item::fail(label, format!("error: {err}")),
    }
}

/// Replace leg `leg` of every term by the tensor `f(word)`, whose legs are
/// `new_legs`. Scalar-valued maps are given with `new_legs` empty and return
/// zero-arity tensors via [`scalar_tensor`].
pub fn map_leg<C: Coeff>(
    t: &TensorElement<C>,
    leg: usize,
    new_legs: &[AlgName],
    mut f: impl FnMut(&Word) -> Result<TensorElement<C>>,
) -> Result<TensorElement<C>> {
    let mut legs: Vec<AlgName> = t.legs()[..leg].to_vec();
    legs.extend(new_legs.iter().cloned());
    legs.extend(t.legs()[leg + 1..].iter().cloned());
    let mut cache: HashMap<Word, TensorElement<C>> = HashMap::new();
    let mut out = TensorElement::zero(&legs);
    for (k, c) in t.terms() {
        if !cache.contains_key(&k[leg]) {
            let img = f(&k[leg])?;
            cache.insert(k[leg].clone(), img);
        }
        let img = &cache[&k[leg]];
        for (k2, d) in img.terms() {
            let mut key: TensorKey = k[..leg].iter().cloned().collect();
            key.extend(k2.iter().cloned());
            key.extend(k[leg + 1..].iter().cloned());
            out.add_term(key, c.mul(d));
        }
    }
    Ok(out)
}

/// Apply a scalar-valued functional to one leg, dropping it.
pub fn contract_leg<C: Coeff>(
    t: &TensorElement<C>,
    leg: usize,
    mut f: impl FnMut(&Word) -> Result<C>,
) -> Result<TensorElement<C>> {
    let mut legs = t.legs().to_vec();
    legs.remove(leg);
    let mut cache: HashMap<Word, C> = HashMap::new();
    let mut out = TensorElement::zero(&legs);
    for (k, c) in t.terms() {
        if !cache.contains_key(&k[leg]) {
            let v = f(&k[leg])?;
            cache.insert(k[leg].clone(), v);
        }
        let v = &cache[&k[leg]];
        if v.is_zero() {
            continue;
        }
        let mut key = k.clone();
        key.remove(leg);
        out.add_term(key, c.mul(v));
    }
    Ok(out)
}

/// Element as a one-leg tensor and back.
pub fn as_tensor<C: Coeff>(e: &Element<C>) -> TensorElement<C> {
    TensorElement::from_element(e)
}
