use num_rational::BigRational;
use proptest::prelude::*;
use qhopf::connection::{sandwich, A, H};
use qhopf::freealg::{apply_map, Element, FreeNormalizer, Word};
use qhopf::hopf::{b_words, Ctx};
use qhopf::normalform::Limits;
use qhopf::presentations::{standard_universe, DegreeOf, Universe};
use qhopf::scalars::{parse_scalar, sample_points, Scalar};
use std::sync::{Arc, OnceLock};

fn universe() -> Arc<Universe> {
    static U: OnceLock<Arc<Universe>> = OnceLock::new();
    U.get_or_init(|| Arc::new(standard_universe().unwrap())).clone()
}

fn sym() -> &'static Ctx<Scalar> {
    static C: OnceLock<Ctx<Scalar>> = OnceLock::new();
    C.get_or_init(|| Ctx::new(universe(), (), Limits::default()).unwrap())
}

fn spec(k: usize) -> &'static Ctx<BigRational> {
    static C: OnceLock<Vec<Ctx<BigRational>>> = OnceLock::new();
    &C.get_or_init(|| {
        sample_points(7, 3).into_iter().map(|p| Ctx::new(universe(), p, Limits::default()).unwrap()).collect()
    })[k]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    let laurent = prop::collection::vec((-3i64..=3, -3i64..=3), 1..4).prop_map(|ts| {
        ts.into_iter().fold(Scalar::zero(), |a, (c, k)| a.add(&Scalar::int(c).mul(&Scalar::q_pow(k))))
    });
    (laurent.clone(), laurent).prop_map(|(a, b)| if b.is_zero() { a } else { a.div(&b).unwrap() })
}

fn word(n: u8, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..n, 0..=max).prop_map(|ls| Word::from_slice(&ls))
}

fn element(alg: &'static str, max: usize) -> impl Strategy<Value = Element<Scalar>> {
    let n = universe().pres(alg).unwrap().gens.len() as u8;
    prop::collection::vec((word(n, max), -3i64..=3), 1..4).prop_map(move |ts| {
        let a = Arc::from(alg);
        Element::from_terms(&a, ts.into_iter().map(|(w, c)| (w, Scalar::int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn scalar_forms_are_canonical(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.sub(&b).is_zero(), a == b);
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn specialize_is_a_homomorphism(a in scalar(), b in scalar()) {
        for q0 in sample_points(3, 3) {
            if let (Ok(x), Ok(y)) = (a.specialize(&q0), b.specialize(&q0)) {
                prop_assert_eq!(a.mul(&b).specialize(&q0).unwrap(), &x * &y);
                prop_assert_eq!(a.add(&b).specialize(&q0).unwrap(), &x + &y);
            }
        }
    }

    #[test]
    fn printed_scalars_reparse(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn free_product_is_associative_and_unital(a in element("SU3", 3), b in element("SU3", 3), c in element("SU3", 3)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let one = Element::one(a.alg());
        prop_assert_eq!(one.mul(&a).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn hom_and_antihom_on_word_pairs(a in element("SU3", 3), b in element("SU3", 3)) {
        let c = sym();
        let pi = c.map("pi").unwrap();
        let f = |e: &Element<Scalar>| apply_map(pi, e, &FreeNormalizer).unwrap();
        prop_assert_eq!(f(&a.mul(&b).unwrap()), f(&a).mul(&f(&b)).unwrap());
        let st = c.star_spec("SU3").unwrap();
        let s = |e: &Element<Scalar>| apply_map(st, e, &FreeNormalizer).unwrap();
        prop_assert_eq!(s(&a.mul(&b).unwrap()), s(&b).mul(&s(&a)).unwrap());
    }

    #[test]
    fn normal_forms_keep_degrees(w in word(9, 4), v in word(6, 4)) {
        let c = sym();
        for (alg, w) in [("SU3", w), ("U2", v)] {
            let a = Arc::from(alg);
            let x = Element::word(&a, w);
            let p = c.pres(alg).unwrap();
            let d = p.degree_of(&x);
            match p.degree_of(&c.nf(&x).unwrap()) {
                DegreeOf::Zero => {}
                e => prop_assert_eq!(e, d),
            }
        }
    }

    #[test]
    fn rewriting_terminates_by_descent(w in word(9, 6), v in word(6, 6)) {
        let c = sym();
        for (alg, w) in [("SU3", w), ("U2", v)] {
            let x = Element::word(&Arc::from(alg), w);
            let (y, t) = c.engine.get(alg).unwrap().trace_normal_form(&x, 100_000).unwrap();
            prop_assert!(t.fixpoint);
            prop_assert!(t.steps.iter().all(|s| s.decreasing));
            prop_assert_eq!(y, c.nf(&x).unwrap());
        }
    }

    #[test]
    fn symbolic_zero_agrees_with_specialized(x in element("U2", 4), y in element("U2", 2)) {
        // x - nf(x) is zero; x y - y x usually is not
        let c = sym();
        for e in [x.sub(&c.nf(&x).unwrap()).unwrap(), x.mul(&y).unwrap().sub(&y.mul(&x).unwrap()).unwrap()] {
            let z = c.is_zero(&e).unwrap();
            for k in 0..3 {
                let s = spec(k);
                let zs = s.is_zero(&s.embed(&e).unwrap()).unwrap();
                if z {
                    prop_assert!(zs);
                }
                if !zs {
                    prop_assert!(!z);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn sandwich_agrees_with_definition(i in 0usize..1000, k in 0usize..1000) {
        let c = spec(0);
        let ws = b_words(1);
        let (h, h2) = (ws[i % ws.len()].element(c, H).unwrap(), ws[k % ws.len()].element(c, H).unwrap());
        if c.j_multiplicative(&h, &h2).unwrap() {
            let fast = sandwich(c, &c.eval_ell(&h).unwrap(), &c.eval_ell(&h2).unwrap()).unwrap();
            let direct = c.eval_ell(&c.mul(&h, &h2).unwrap()).unwrap();
            prop_assert!(c.is_zero_tensor(&fast.sub(&direct).unwrap()).unwrap());
        }
    }

    #[test]
    fn gauge_coaction_is_the_grading(w in word(9, 3)) {
        let c = spec(0);
        let x = Element::word(&Arc::from(A), w);
        let DegreeOf::Homogeneous(d) = c.pres(A).unwrap().degree_of(&x) else { return Ok(()) };
        let lhs = c.coaction(&x, "pihat0").unwrap();
        let (m, n) = (d.0, d.1);
        let pw = |g: &str, k: i64| if k >= 0 { vec![g.to_string(); k as usize] } else { vec![format!("{g}*"); (-k) as usize] };
        let mut t: Vec<String> = pw("U1", m);
        t.extend(pw("U2", n));
        let rhs_text = if t.is_empty() { "1".to_string() } else { t.join(".") };
        let rhs = qhopf::freealg::TensorElement::pure(&[&x, &c.parse("T2", &rhs_text).unwrap()]);
        prop_assert!(c.is_zero_tensor(&lhs.sub(&rhs).unwrap()).unwrap());
    }
}
