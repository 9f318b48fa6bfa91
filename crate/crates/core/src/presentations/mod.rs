//! Presented *-algebras: alphabet, star table, relations, Z^2-degrees and the
//! monomial order used to orient relations. The six shipped presentations
//! (and the maps and Hopf data between them) are embedded as DSL text.

mod membership;
mod order;
mod standard;

pub use membership::{sphere_span, subalgebra_membership, Membership, Subalgebra};
pub use order::{MonomialOrder, OrderKind};
pub use standard::{standard_source, standard_universe, star_variants, su3_variant, StarVariant};

use crate::error::{Error, Result};
use crate::freealg::{AlgName, Element, Image, Letter, MapKind, MapSpec, TensorElement, Word};
use crate::scalars::Scalar;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A Z^2 degree `(m, n)`.
pub type Degree = (i64, i64);

#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub label: String,
    pub elem: Element<Scalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: AlgName,
    pub gens: Vec<String>,
    pub degrees: Vec<Degree>,
    pub weights: Vec<u32>,
    pub order: OrderKind,
    /// Star of each letter, expressed in the same alphabet.
    pub star: Vec<Option<Element<Scalar>>>,
    pub relations: Vec<Relation>,
}

/// Result of [`Presentation::degree_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeOf {
    Homogeneous(Degree),
    Inhomogeneous,
    /// The zero element has every degree.
    Zero,
}

impl Presentation {
    pub fn new(name: &str) -> Self {
        Presentation {
            name: Arc::from(name),
            gens: Vec::new(),
            degrees: Vec::new(),
            weights: Vec::new(),
            order: OrderKind::Deglex,
            star: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.gens.iter().position(|g| g == name).map(|i| i as Letter)
    }

    pub fn gen(&self, name: &str) -> Result<Element<Scalar>> {
        let l = self
            .letter(name)
            .ok_or_else(|| Error::Unknown { kind: "generator", name: format!("{name} in {}", self.name) })?;
        Ok(Element::word(&self.name, Word::letter(l)))
    }

    /// Element from a product of generator names, e.g. `["u11", "u22"]`.
    pub fn monomial(&self, names: &[&str]) -> Result<Element<Scalar>> {
        let mut w = Word::unit();
        for n in names {
            w.push(
                self.letter(n)
                    .ok_or_else(|| Error::Unknown { kind: "generator", name: n.to_string() })?,
            );
        }
        Ok(Element::word(&self.name, w))
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::new(self.order, self.weights.clone())
    }

    pub fn word_degree(&self, w: &Word) -> Degree {
        w.letters().iter().fold((0, 0), |(a, b), &l| {
            let (m, n) = self.degrees[l as usize];
            (a + m, b + n)
        })
    }

    pub fn degree_of<C: crate::scalars::Coeff>(&self, e: &Element<C>) -> DegreeOf {
        let mut it = e.terms().keys().map(|w| self.word_degree(w));
        match it.next() {
            None => DegreeOf::Zero,
            Some(d) => {
                if it.all(|d2| d2 == d) {
                    DegreeOf::Homogeneous(d)
                } else {
                    DegreeOf::Inhomogeneous
                }
            }
        }
    }

    /// Star table as an anti-homomorphism.
    pub fn star_map(&self) -> MapSpec<Scalar> {
        MapSpec {
            name: format!("star[{}]", self.name),
            source: self.name.clone(),
            targets: vec![self.name.clone()],
            kind: MapKind::AntiHom,
            images: self.star.iter().map(|s| s.clone().map(Image::Elem)).collect(),
            source_names: self.gens.clone(),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.gens
    }

    pub fn format<C: crate::scalars::Coeff>(&self, e: &Element<C>) -> String {
        e.format_with(&self.gens)
    }
}

/// Coproduct, counit and (optionally) antipode of a presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfData {
    pub alg: AlgName,
    pub coproduct: MapSpec<Scalar>,
    pub counit: Vec<Option<Scalar>>,
    pub antipode: Option<MapSpec<Scalar>>,
}

/// `hm(NF(base^n)) = value(n)` for each family; zero on all other normal
/// monomials. An empty family list means: the coefficient of the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct HaarData {
    pub alg: AlgName,
    pub families: Vec<HaarFamily>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HaarFamily {
    pub base: Word,
    pub value: ScalarTemplate,
    pub source: String,
}

/// A scalar expression in q and one integer parameter `n`.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarTemplate {
    Const(Scalar),
    Q,
    Add(Box<ScalarTemplate>, Box<ScalarTemplate>),
    Sub(Box<ScalarTemplate>, Box<ScalarTemplate>),
    Mul(Box<ScalarTemplate>, Box<ScalarTemplate>),
    Div(Box<ScalarTemplate>, Box<ScalarTemplate>),
    Neg(Box<ScalarTemplate>),
    Pow(Box<ScalarTemplate>, IntTemplate),
}

#[derive(Clone, Debug, PartialEq)]
pub enum IntTemplate {
    Const(i64),
    N,
    Add(Box<IntTemplate>, Box<IntTemplate>),
    Sub(Box<IntTemplate>, Box<IntTemplate>),
    Mul(Box<IntTemplate>, Box<IntTemplate>),
    Neg(Box<IntTemplate>),
}

impl IntTemplate {
    pub fn eval(&self, n: i64) -> i64 {
        match self {
            IntTemplate::Const(c) => *c,
            IntTemplate::N => n,
            IntTemplate::Add(a, b) => a.eval(n) + b.eval(n),
            IntTemplate::Sub(a, b) => a.eval(n) - b.eval(n),
            IntTemplate::Mul(a, b) => a.eval(n) * b.eval(n),
            IntTemplate::Neg(a) => -a.eval(n),
        }
    }
}

impl ScalarTemplate {
    pub fn eval(&self, n: i64) -> Result<Scalar> {
        Ok(match self {
            ScalarTemplate::Const(c) => c.clone(),
            ScalarTemplate::Q => Scalar::q(),
            ScalarTemplate::Add(a, b) => a.eval(n)?.add(&b.eval(n)?),
            ScalarTemplate::Sub(a, b) => a.eval(n)?.sub(&b.eval(n)?),
            ScalarTemplate::Mul(a, b) => a.eval(n)?.mul(&b.eval(n)?),
            ScalarTemplate::Div(a, b) => a.eval(n)?.div(&b.eval(n)?)?,
            ScalarTemplate::Neg(a) => a.eval(n)?.neg(),
            ScalarTemplate::Pow(a, k) => a.eval(n)?.pow(k.eval(n))?,
        })
    }
}

/// Everything declared by a script: presentations, maps, Hopf and Haar data.
#[derive(Clone, Debug, Default)]
pub struct Universe {
    pub presentations: BTreeMap<String, Arc<Presentation>>,
    pub maps: BTreeMap<String, MapSpec<Scalar>>,
    pub hopf: BTreeMap<String, HopfData>,
    pub haar: BTreeMap<String, HaarData>,
    /// Declaration order, for serialization.
    pub order: Vec<(DeclKind, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Presentation,
    Map,
    Hopf,
    Haar,
}

impl Universe {
    pub fn pres(&self, name: &str) -> Result<&Arc<Presentation>> {
        self.presentations
            .get(name)
            .ok_or_else(|| Error::Unknown { kind: "presentation", name: name.to_string() })
    }

    pub fn map(&self, name: &str) -> Result<&MapSpec<Scalar>> {
        self.maps.get(name).ok_or_else(|| Error::Unknown { kind: "map", name: name.to_string() })
    }

    pub fn hopf(&self, name: &str) -> Result<&HopfData> {
        self.hopf.get(name).ok_or_else(|| Error::Unknown { kind: "hopf structure", name: name.to_string() })
    }

    pub fn haar(&self, name: &str) -> Result<&HaarData> {
        self.haar.get(name).ok_or_else(|| Error::Unknown { kind: "haar functional", name: name.to_string() })
    }

    pub fn names_of(&self, alg: &str) -> Vec<String> {
        self.presentations.get(alg).map(|p| p.gens.clone()).unwrap_or_default()
    }

    pub fn format(&self, e: &Element<Scalar>) -> String {
        e.format_with(&self.names_of(e.alg()))
    }

    pub fn format_coeff<C: crate::scalars::Coeff>(&self, e: &Element<C>) -> String {
        e.format_with(&self.names_of(e.alg()))
    }

    pub fn format_tensor<C: crate::scalars::Coeff>(&self, t: &TensorElement<C>) -> String {
        let names: Vec<Vec<String>> = t.legs().iter().map(|l| self.names_of(l)).collect();
        let refs: Vec<&[String]> = names.iter().map(|v| v.as_slice()).collect();
        t.format_with(&refs)
    }

    /// Replace one relation's element (used by mutation tests).
    pub fn with_relation(&self, alg: &str, index: usize, elem: Element<Scalar>) -> Result<Universe> {
        let mut u = self.clone();
        let p = u.pres(alg)?;
        let mut p2 = (**p).clone();
        p2.relations[index].elem = elem;
        u.presentations.insert(alg.to_string(), Arc::new(p2));
        Ok(u)
    }
}
