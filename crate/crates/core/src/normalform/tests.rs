use super::*;
use crate::dsl::parse_element;
use crate::freealg::Normalizer;
use crate::presentations::{standard_universe, Universe};
use crate::scalars::Scalar;
use num_rational::BigRational;
use std::sync::OnceLock;

fn universe() -> &'static Universe {
    static U: OnceLock<Universe> = OnceLock::new();
    U.get_or_init(|| standard_universe().unwrap())
}

fn symbolic() -> &'static Engine<Scalar> {
    static E: OnceLock<Engine<Scalar>> = OnceLock::new();
    E.get_or_init(|| Engine::new(&universe().presentations, (), Limits::default()).unwrap())
}

fn el(alg: &str, s: &str) -> crate::freealg::Element<Scalar> {
    parse_element(universe(), alg, s).unwrap()
}

fn nf(alg: &str, s: &str) -> String {
    let e = symbolic().normalize(&el(alg, s)).unwrap();
    universe().format(&e)
}

#[test]
fn shipped_systems_are_complete() {
    for (name, e) in &symbolic().engines {
        assert!(e.is_complete(), "{name}: {:?}", e.status);
    }
    let su3 = symbolic().get("SU3").unwrap();
    assert_eq!(su3.rules().len(), 36);
    assert_eq!(su3.div_rules().len(), 1);
    assert_eq!(su3.div_rules()[0].label, "det_123");
}

#[test]
fn spec_examples() {
    assert_eq!(nf("SU3", "u12.u11 - q^-1*u11.u12"), "0");
    assert_eq!(nf("SU3", "u11.u22 - u22.u11"), "(q^2-1)/q*u12.u21");
    assert_eq!(nf("SU3", "1"), "1");
    assert_eq!(nf("U2", "alpha*.alpha"), "1 - gamma.gamma*");
}

#[test]
fn unitarity_and_star_star() {
    let e = symbolic();
    for s in ["u11.star(u11) + u12.star(u12) + u13.star(u13) - 1", "star(star(u12)) - u12"] {
        assert!(e.is_zero_mod_ideal(&el("SU3", s)).unwrap(), "{s}");
    }
    assert!(!e.is_zero_mod_ideal(&el("SU3", "u11.u12 - u12.u11")).unwrap());
}

#[test]
fn specialized_engine_builds() {
    let p = BigRational::new(1.into(), 3.into());
    let e = Engine::<BigRational>::new(&universe().presentations, p, Limits::default()).unwrap();
    assert!(e.engines.values().all(|x| x.is_complete()));
}

#[test]
fn quotient_basis_examples() {
    let u2 = symbolic().get("U2").unwrap();
    let b = u2.quotient_basis((0, 0), 2).unwrap();
    let names: Vec<String> = b.iter().map(|w| crate::freealg::format_word(w, &u2.pres.gens)).collect();
    assert!(names.contains(&"gamma.gamma*".to_string()));
    assert!(!names.contains(&"alpha*.alpha".to_string()));
    let su3 = symbolic().get("SU3").unwrap();
    let b = su3.quotient_basis((1, 0), 1).unwrap();
    let names: Vec<String> = b.iter().map(|w| crate::freealg::format_word(w, &su3.pres.gens)).collect();
    assert_eq!(names, vec!["u11", "u21", "u31"]);
}

#[test]
fn trace_replays() {
    let su3 = symbolic().get("SU3").unwrap();
    let a = el("SU3", "u33.u22.u11 - u13.u31");
    let (out, trace) = su3.trace_normal_form(&a, 10_000).unwrap();
    assert!(trace.fixpoint);
    assert!(trace.steps.iter().all(|s| s.decreasing));
    assert_eq!(out, su3.normalize_elem(&a).unwrap());
    assert_eq!(su3.replay(&a, &trace).unwrap(), out);
}
