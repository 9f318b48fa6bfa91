use crate::freealg::{Image, MapKind, MapSpec};
use crate::presentations::{DeclKind, Universe};
use std::fmt::Write;

/// DSL text for every declaration of `u`, in declaration order.
pub fn serialize_universe(u: &Universe) -> String {
    let mut out = String::new();
    for (kind, name) in &u.order {
        match kind {
            DeclKind::Presentation => {
                let p = &u.presentations[name];
                writeln!(out, "presentation {}", p.name).unwrap();
                writeln!(out, "  order {}", p.order.keyword()).unwrap();
                for (i, g) in p.gens.iter().enumerate() {
                    let (a, b) = p.degrees[i];
                    if p.weights[i] == 1 {
                        writeln!(out, "  gen {g} : ({a},{b})").unwrap();
                    } else {
                        writeln!(out, "  gen {g} : ({a},{b}) weight {}", p.weights[i]).unwrap();
                    }
                }
                for (i, s) in p.star.iter().enumerate() {
                    if let Some(s) = s {
                        writeln!(out, "  star {} -> {}", p.gens[i], p.format(s)).unwrap();
                    }
                }
                for r in &p.relations {
                    writeln!(out, "  rel {}: {}", r.label, p.format(&r.elem)).unwrap();
                }
                out.push_str("end\n\n");
            }
            DeclKind::Map => {
                let m = &u.maps[name];
                let tg: Vec<&str> = m.targets.iter().map(|t| &**t).collect();
                let kind = match m.kind {
                    MapKind::AlgebraHom => "hom",
                    MapKind::AntiHom => "antihom",
                };
                writeln!(out, "map {} : {} -> {} {kind}", m.name, m.source, tg.join(" (x) ")).unwrap();
                images(u, m, "  ", &mut out);
                out.push_str("end\n\n");
            }
            DeclKind::Hopf => {
                let h = &u.hopf[name];
                writeln!(out, "hopf {}", h.alg).unwrap();
                images(u, &h.coproduct, "  coproduct ", &mut out);
                let p = &u.presentations[&*h.alg];
                for (i, c) in h.counit.iter().enumerate() {
                    if let Some(c) = c {
                        let c = c.to_string();
                        writeln!(out, "  counit {} -> {c}", p.gens[i]).unwrap();
                    }
                }
                if let Some(s) = &h.antipode {
                    images(u, s, "  antipode ", &mut out);
                }
                out.push_str("end\n\n");
            }
            DeclKind::Haar => {
                let h = &u.haar[name];
                let p = &u.presentations[&*h.alg];
                writeln!(out, "haar {}", h.alg).unwrap();
                for f in &h.families {
                    let w = crate::freealg::Element::<crate::scalars::Scalar>::word(&h.alg, f.base.clone());
                    writeln!(out, "  family {} -> {}", p.format(&w), f.source).unwrap();
                }
                out.push_str("end\n\n");
            }
        }
    }
    out
}

fn images(u: &Universe, m: &MapSpec<crate::scalars::Scalar>, prefix: &str, out: &mut String) {
    for (i, img) in m.images.iter().enumerate() {
        let Some(img) = img else { continue };
        let text = match img {
            Image::Elem(e) => u.format(e),
            Image::Tensor(t) => u.format_tensor(t),
        };
        writeln!(out, "{prefix}{} -> {text}", m.source_names[i]).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::standard_universe;

    #[test]
    fn standard_round_trip() {
        let u = standard_universe().unwrap();
        let text = serialize_universe(&u);
        let v = crate::dsl::parse(&text).unwrap().universe;
        assert_eq!(u.presentations, v.presentations);
        assert_eq!(u.maps, v.maps);
        assert_eq!(u.hopf, v.hopf);
        assert_eq!(u.haar, v.haar);
        assert_eq!(u.order, v.order);
    }
}
