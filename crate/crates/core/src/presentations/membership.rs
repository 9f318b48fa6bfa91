use super::{Degree, DegreeOf};
use crate::error::{Error, Result};
use crate::freealg::{Element, Word};
use crate::normalform::{split_by_degree, AlgEngine, Echelon};
use crate::scalars::Coeff;
use serde::Serialize;
use std::sync::Arc;

/// The subalgebras the paper works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subalgebra {
    /// Generated by the first column of u and its star.
    S5q,
    /// Degree (0,0) part of S5q.
    CP2q,
    /// Degree (0,0) part of U_q(2).
    CP1q,
    /// Degree (0,0) part of SU_q(3).
    Flag,
}

impl Subalgebra {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "S5q" => Some(Subalgebra::S5q),
            "CP2q" => Some(Subalgebra::CP2q),
            "CP1q" => Some(Subalgebra::CP1q),
            "Flag" => Some(Subalgebra::Flag),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Member,
    NotMember,
    Undecided { dimension: usize, cap: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

fn graded_member<C: Coeff>(eng: &AlgEngine<C>, e: &Element<C>, ok: impl Fn(Degree) -> bool) -> Result<Membership> {
    let nf = eng.normalize_elem(e)?;
    Ok(match eng.pres.degree_of(&nf) {
        DegreeOf::Zero => Membership::Member,
        DegreeOf::Homogeneous(d) if ok(d) => Membership::Member,
        _ => Membership::NotMember,
    })
}

/// The letters `u_i1` and `star(u_i1)` as elements.
fn sphere_letters<C: Coeff>(eng: &AlgEngine<C>) -> Result<(Vec<Element<C>>, Vec<Element<C>>)> {
    let pres = &eng.pres;
    let (mut z, mut zs) = (Vec::new(), Vec::new());
    for i in 1..=3 {
        let name = format!("u{i}1");
        let l = pres.letter(&name).ok_or_else(|| Error::Unknown { kind: "generator", name: name.clone() })?;
        z.push(Element::word(&pres.name, Word::letter(l)));
        let st = pres.star[l as usize]
            .as_ref()
            .ok_or_else(|| Error::MissingImage { map: format!("star[{}]", pres.name), generator: name.clone() })?;
        zs.push(Element::embed(st, &eng.point)?);
    }
    Ok((z, zs))
}

fn exponent_vectors(total: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..=total {
        for b in 0..=total - a {
            out.push([a, b, total - a - b]);
        }
    }
    out
}

fn check_cap(seen: usize, cap: Option<usize>) -> Result<()> {
    match cap {
        Some(cap) if seen > cap => Err(Error::ResourceCap { what: "S5q spanning words".into(), used: seen, cap }),
        _ => Ok(()),
    }
}

/// Normal forms of the words in `z_i = u_i1`, `z_i* = star(u_i1)` with `a`
/// letters `z`, `b` letters `z*`, `a - b = m` and `a + 2b <= bound`. With
/// `ordered`, only `z1^a1 z2^a2 z3^a3 z1*^b1 z2*^b2 z3*^b3`.
pub fn sphere_span<C: Coeff>(eng: &AlgEngine<C>, m: i64, bound: usize, ordered: bool) -> Result<Arc<Echelon<C>>> {
    if let Some(e) = eng.sphere.get(&(m, bound, ordered)) {
        return Ok(e.clone());
    }
    let (z, zs) = sphere_letters(eng)?;
    let cap = eng.limits.max_dim;
    let mut ech = Echelon::new();
    let mut seen = 0usize;
    if ordered {
        for b in 0..=bound / 2 {
            let a = m + b as i64;
            if a < 0 || a as usize + 2 * b > bound {
                continue;
            }
            for ea in exponent_vectors(a as usize) {
                for eb in exponent_vectors(b) {
                    seen += 1;
                    check_cap(seen, cap)?;
                    let mut w = Element::one(&eng.pres.name);
                    for (x, &k) in z.iter().zip(&ea).chain(zs.iter().zip(&eb)) {
                        for _ in 0..k {
                            w = eng.mul_elems(&w, x)?;
                        }
                    }
                    ech.insert(w.terms().clone());
                }
            }
        }
    } else {
        let mut letters: Vec<(&Element<C>, usize, usize)> = z.iter().map(|x| (x, 1, 0)).collect();
        letters.extend(zs.iter().map(|x| (x, 0, 1)));
        let mut layer = vec![(Element::one(&eng.pres.name), 0usize, 0usize)];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (w, a, b) in &layer {
                if *a as i64 - *b as i64 == m {
                    ech.insert(w.terms().clone());
                }
                for (x, da, db) in &letters {
                    let (a2, b2) = (a + da, b + db);
                    if a2 + 2 * b2 > bound {
                        continue;
                    }
                    seen += 1;
                    check_cap(seen, cap)?;
                    next.push((eng.mul_elems(w, x)?, a2, b2));
                }
            }
            layer = next;
        }
    }
    let ech = Arc::new(ech);
    eng.sphere.insert((m, bound, ordered), ech.clone());
    Ok(ech)
}

/// Subalgebra membership. Flag and CP1q are grading conditions; S5q is a
/// span test per homogeneous component at the element's own length.
pub fn subalgebra_membership<C: Coeff>(eng: &AlgEngine<C>, e: &Element<C>, sub: Subalgebra) -> Result<Membership> {
    match sub {
        Subalgebra::Flag | Subalgebra::CP1q => graded_member(eng, e, |d| d == (0, 0)),
        Subalgebra::S5q | Subalgebra::CP2q => {
            let nf = eng.normalize_elem(e)?;
            let bound = nf.max_len();
            for (d, part) in split_by_degree(&eng.pres.degrees, &nf) {
                if d.1 != 0 || (sub == Subalgebra::CP2q && d.0 != 0) {
                    return Ok(Membership::NotMember);
                }
                let ech = match sphere_span(eng, d.0, bound, true) {
                    Ok(s) => s,
                    Err(Error::ResourceCap { used, cap, .. }) => return Ok(Membership::Undecided { dimension: used, cap }),
                    Err(err) => return Err(err),
                };
                if !ech.reduce(part.terms().clone()).is_empty() {
                    return Ok(Membership::NotMember);
                }
            }
            Ok(Membership::Member)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalform::Engine;
    use crate::presentations::standard_universe;
    use crate::scalars::Scalar;

    fn engine() -> Engine<Scalar> {
        let u = standard_universe().unwrap();
        Engine::new(&u.presentations, (), Default::default()).unwrap()
    }

    fn member(src: &str, alg: &str, sub: Subalgebra) -> Membership {
        let u = standard_universe().unwrap();
        let eng = engine();
        let e = crate::dsl::expr::parse_element(&u, alg, src).unwrap();
        subalgebra_membership(eng.get(alg).unwrap(), &e, sub).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(member("u11.star(u21)", "SU3", Subalgebra::CP2q), Membership::Member);
        assert_eq!(member("u11", "SU3", Subalgebra::CP2q), Membership::NotMember);
        assert_eq!(member("u11", "SU3", Subalgebra::S5q), Membership::Member);
        assert_eq!(member("u12", "SU3", Subalgebra::S5q), Membership::NotMember);
        assert_eq!(member("u12.star(u12)", "SU3", Subalgebra::Flag), Membership::Member);
        assert_eq!(member("u12.star(u12)", "SU3", Subalgebra::CP2q), Membership::NotMember);
        assert_eq!(member("u11.star(u11) + u21.star(u21) + u31.star(u31)", "SU3", Subalgebra::CP2q), Membership::Member);
        assert_eq!(member("gamma.gamma*", "U2", Subalgebra::CP1q), Membership::Member);
        assert_eq!(member("alpha.gamma*", "U2", Subalgebra::CP1q), Membership::Member);
        assert_eq!(member("u.alpha", "U2", Subalgebra::CP1q), Membership::NotMember);
    }

    #[test]
    fn ordered_monomials_span_the_sphere() {
        let eng = engine();
        let su3 = eng.get("SU3").unwrap();
        for (m, bound) in [(0, 3), (0, 6), (1, 4), (-1, 5), (2, 5)] {
            let all = sphere_span(su3, m, bound, false).unwrap();
            let ord = sphere_span(su3, m, bound, true).unwrap();
            assert_eq!(all.rank(), ord.rank(), "m={m} bound={bound}");
        }
    }
}
