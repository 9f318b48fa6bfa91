use super::*;
use crate::normalform::Limits;
use crate::presentations::standard_universe;
use crate::report::Verdict;
use crate::scalars::{sample_points, Scalar};
use num_rational::BigRational;
use std::sync::{Arc, OnceLock};

fn sym() -> &'static Ctx<Scalar> {
    static C: OnceLock<Ctx<Scalar>> = OnceLock::new();
    C.get_or_init(|| Ctx::new(Arc::new(standard_universe().unwrap()), (), Limits::default()).unwrap())
}

fn spec() -> &'static Ctx<BigRational> {
    static C: OnceLock<Ctx<BigRational>> = OnceLock::new();
    C.get_or_init(|| {
        let q0 = sample_points(7, 1).remove(0);
        Ctx::new(Arc::new(standard_universe().unwrap()), q0, Limits::default()).unwrap()
    })
}

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn assert_pass(f: &crate::report::Findings) {
    if let Some(i) = f.first_failure() {
        panic!("{}: {:?}", i.label, i.residue);
    }
    assert_eq!(f.verdict(), Verdict::Pass);
}

#[test]
fn haar_values() {
    let c = sym();
    let h = |t: &str| c.haar(&c.parse("U2", t).unwrap()).unwrap();
    assert_eq!(h("gamma.gamma*"), s("1/(1+q^2)"));
    assert_eq!(h("alpha"), Scalar::zero());
    assert_eq!(h("u"), Scalar::zero());
    assert_eq!(h("1"), Scalar::one());
    // α*α = 1 − γγ*
    assert_eq!(h("alpha*.alpha"), s("q^2/(1+q^2)"));
    assert_eq!(h("u.u*"), Scalar::one());
}

#[test]
fn coproduct_of_gamma() {
    let c = sym();
    let d = c.coproduct(&c.parse("U2", "gamma").unwrap()).unwrap();
    let e = c.parse_tensor(&["U2", "U2"], "gamma (x) alpha + alpha*.u* (x) gamma").unwrap();
    assert!(c.is_zero_tensor(&d.sub(&e).unwrap()).unwrap());
}

#[test]
fn coaction_on_first_column() {
    let c = sym();
    for i in 1..=3 {
        let x = c.parse("SU3", &format!("u{i}1")).unwrap();
        let r = c.coaction(&x, "pi").unwrap();
        let e = c.parse_tensor(&["SU3", "U2"], &format!("u{i}1 (x) u")).unwrap();
        assert!(c.is_zero_tensor(&r.sub(&e).unwrap()).unwrap(), "{}", c.format_tensor(&r));
    }
}

#[test]
fn averaging_projects_to_degree_zero() {
    let c = sym();
    let x = c.parse("SU3", "u11.star(u11)").unwrap();
    let e = c.averaging(&x, "pi").unwrap();
    assert!(c.is_zero(&e.sub(&x).unwrap()).unwrap(), "{}", c.format(&e));
    let y = c.parse("SU3", "u11").unwrap();
    assert!(c.is_zero(&c.averaging(&y, "pi").unwrap()).unwrap());
}

#[test]
fn basis_round_trip() {
    let c = sym();
    for bw in b_words(1) {
        let e = bw.element(c, "U2").unwrap();
        let coords = c.basis_coordinates(&e).unwrap();
        assert_eq!(coords.len(), 1, "{bw}");
        assert_eq!(coords[0].0, bw);
        assert_eq!(coords[0].1, Scalar::one(), "{bw}");
    }
}

#[test]
fn j_is_a_section() {
    let c = sym();
    for bw in b_words(1) {
        let h = bw.element(c, "U2").unwrap();
        let back = c.apply("pi", &bw.j_image(c, "SU3").unwrap()).unwrap();
        assert!(c.is_zero(&back.sub(&h).unwrap()).unwrap(), "{bw}");
    }
}

#[test]
fn cotensor_examples() {
    let c = sym();
    // u11 ⊗ u* has a second leg outside CP1q
    let w = c.parse_tensor(&["SU3", "U2"], "u11 (x) u*").unwrap();
    assert_eq!(c.cotensor_check(&w, "pi", Subalgebra::CP1q).unwrap(), Cotensor::Precondition);
    let one = c.parse_tensor(&["SU3", "U2"], "1 (x) 1").unwrap();
    assert_eq!(c.cotensor_check(&one, "pi", Subalgebra::CP1q).unwrap(), Cotensor::Holds);
    let bad = c.parse_tensor(&["SU3", "U2"], "u11 (x) 1").unwrap();
    assert_eq!(c.cotensor_check(&bad, "pi", Subalgebra::CP1q).unwrap(), Cotensor::Fails);
}

#[test]
fn structure_checks_pass() {
    let c = spec();
    for alg in ["SU3", "U2", "SU2", "T2", "T1"] {
        assert_pass(&homogeneity(c, alg).unwrap());
        assert_pass(&star_closure(c, alg).unwrap());
        assert_pass(&star_involution(c, alg).unwrap());
        assert_pass(&hopf_axioms(c, alg).unwrap());
        assert_pass(&antipode_inverse(c, alg).unwrap());
    }
}

#[test]
fn epimorphisms_pass() {
    let c = spec();
    for (m, graded) in [("pi", true), ("pihat0", true), ("pihat1", true), ("p", false), ("iota", true)] {
        assert_pass(&epimorphism(c, m, graded).unwrap());
    }
    assert_pass(&triangle(c, "pi", "pihat1", "pihat0").unwrap());
    assert_pass(&fibre_scalars(c, "pi").unwrap());
}

#[test]
fn gauge_and_haar_invariance() {
    let c = spec();
    assert_pass(&gauge_coaction(c, "SU3", "pihat0", 2).unwrap());
    assert_pass(&haar_invariance(c, "U2", 2).unwrap());
    assert_pass(&haar_invariance(c, "SU2", 2).unwrap());
}

#[test]
fn left_coideal_expansions() {
    let c = spec();
    let derived = left_coideal(c, "U2", false).unwrap();
    assert_pass(&derived);
    let printed = left_coideal(c, "U2", true).unwrap();
    assert_eq!(printed.verdict(), Verdict::Fail);
}

#[test]
fn only_minor_star_is_unitary() {
    let c = spec();
    assert_pass(&star_variant(c, crate::presentations::StarVariant::Minor).unwrap());
    let printed = star_variant(c, crate::presentations::StarVariant::Printed).unwrap();
    assert_eq!(printed.verdict(), Verdict::Fail);
}
