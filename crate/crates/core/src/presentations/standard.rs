use super::{Presentation, Universe};
use crate::error::{Error, Result};
use crate::freealg::Element;
use crate::scalars::Scalar;

const STANDARD: &str = include_str!("../../data/standard.qh");

pub fn standard_source() -> &'static str {
    STANDARD
}

pub fn standard_universe() -> Result<Universe> {
    Ok(crate::dsl::parse(STANDARD)?.universe)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarVariant {
    Printed,
    Minor,
}

pub fn star_variants() -> [StarVariant; 2] {
    [StarVariant::Printed, StarVariant::Minor]
}

impl StarVariant {
    pub fn name(self) -> &'static str {
        match self {
            StarVariant::Printed => "printed",
            StarVariant::Minor => "minor",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        star_variants().into_iter().find(|v| v.name() == s)
    }

    /// `u_ij* = (-q)^(j-i) (u_{i1 j1} u_{i2 j2} - q X)` with `X = u_{i1 j2} u_{i1 j1}`
    /// as printed, or the quantum minor term `X = u_{i1 j2} u_{i2 j1}`.
    pub fn su3_images(self, su3: &Presentation) -> Result<Vec<Element<Scalar>>> {
        let mut out = Vec::new();
        for i in 1..=3usize {
            for j in 1..=3usize {
                let rows: Vec<usize> = (1..=3).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (1..=3).filter(|&c| c != j).collect();
                let (i1, i2, j1, j2) = (rows[0], rows[1], cols[0], cols[1]);
                let u = |a: usize, b: usize| format!("u{a}{b}");
                let first = su3.monomial(&[&u(i1, j1), &u(i2, j2)])?;
                let second = match self {
                    StarVariant::Printed => su3.monomial(&[&u(i1, j2), &u(i1, j1)])?,
                    StarVariant::Minor => su3.monomial(&[&u(i1, j2), &u(i2, j1)])?,
                };
                let e = first.sub(&second.scale(&Scalar::q()))?;
                out.push(e.scale(&Scalar::neg_q_pow(j as i64 - i as i64)));
            }
        }
        Ok(out)
    }
}

/// SU3 keeping only the q-matrix and determinant relations, with the star
/// table of `v`. Unitarity is then a consequence to be checked, not an axiom.
pub fn su3_variant(su3: &Presentation, v: StarVariant) -> Result<Presentation> {
    if su3.gens.len() != 9 {
        return Err(Error::Invalid(format!("{} is not the SU3 presentation", su3.name)));
    }
    let mut p = su3.clone();
    p.relations.retain(|r| r.label.starts_with("qm") || r.label.starts_with("det_"));
    p.star = v.su3_images(su3)?.into_iter().map(Some).collect();
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_parses() {
        let u = standard_universe().unwrap();
        assert_eq!(u.presentations.len(), 6);
        let su3 = u.pres("SU3").unwrap();
        assert_eq!(su3.relations.iter().filter(|r| r.label.starts_with("qm1_")).count(), 9);
    }

    #[test]
    fn minor_variant_is_the_shipped_star() {
        let u = standard_universe().unwrap();
        let su3 = u.pres("SU3").unwrap();
        let imgs = StarVariant::Minor.su3_images(su3).unwrap();
        for (k, img) in imgs.iter().enumerate() {
            assert_eq!(Some(img), su3.star[k].as_ref(), "{}", su3.gens[k]);
        }
        assert_ne!(StarVariant::Printed.su3_images(su3).unwrap(), imgs);
    }
}
