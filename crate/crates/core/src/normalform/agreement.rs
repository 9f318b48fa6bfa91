//! Seeded random elements for cross-checking the rewriter against the
//! bounded linear-algebra oracle.

use super::engine::AlgEngine;
use crate::error::Result;
use crate::freealg::{Element, Word};
use crate::scalars::Coeff;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, Default)]
pub struct Agreement {
    pub samples: usize,
    pub nf_zero: usize,
    pub oracle_zero: usize,
    /// Samples whose normal form is zero but which the oracle rejects.
    pub violations: Vec<String>,
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Word {
    let ls: Vec<u8> = (0..len).map(|_| rng.gen_range(0..n) as u8).collect();
    Word::from_slice(&ls)
}

fn small_coeff<C: Coeff>(rng: &mut ChaCha8Rng) -> C {
    let k = rng.gen_range(1..=3i64);
    let c = (0..k).fold(C::zero(), |a, _| a.add(&C::one()));
    if rng.gen_bool(0.5) {
        c.neg()
    } else {
        c
    }
}

/// Random elements of word length `<= max_len`, in three equal families:
/// sums of random words, `x - nf(x)`, and sums of `m1 r m2` with `r` a
/// relation. The last two lie in the ideal by construction.
pub fn random_elements<C: Coeff>(eng: &AlgEngine<C>, seed: u64, count: usize, max_len: usize) -> Result<Vec<Element<C>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = eng.alg().clone();
    let n = eng.pres.gens.len();
    let rels: Vec<&Element<C>> = eng.relations.iter().map(|(_, r)| r).filter(|r| r.max_len() <= max_len).collect();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let terms = rng.gen_range(1..=3);
        let mut e = Element::zero(&alg);
        for _ in 0..terms {
            let t = if k % 3 == 2 && !rels.is_empty() {
                let r = rels[rng.gen_range(0..rels.len())];
                let room = max_len - r.max_len();
                let a = rng.gen_range(0..=room);
                let b = rng.gen_range(0..=room - a);
                let m1 = Element::word(&alg, random_word(&mut rng, n, a));
                let m2 = Element::word(&alg, random_word(&mut rng, n, b));
                m1.mul(r)?.mul(&m2)?
            } else {
                let len = rng.gen_range(1..=max_len);
                Element::word(&alg, random_word(&mut rng, n, len))
            };
            e.add_assign_scaled(&t, &small_coeff::<C>(&mut rng));
        }
        if k % 3 == 1 {
            e = e.sub(&eng.normalize_elem(&e)?)?;
        }
        out.push(e);
    }
    Ok(out)
}

/// Normal form zero implies oracle zero, on `count` random elements.
pub fn oracle_agreement<C: Coeff>(eng: &AlgEngine<C>, seed: u64, count: usize, max_len: usize) -> Result<Agreement> {
    let mut a = Agreement::default();
    for e in random_elements(eng, seed, count, max_len)? {
        a.samples += 1;
        let nf = eng.normalize_elem(&e)?.is_zero();
        let oracle = eng.bounded_member(&e)?;
        a.nf_zero += nf as usize;
        a.oracle_zero += oracle as usize;
        if nf && !oracle {
            a.violations.push(e.format_with(&eng.pres.gens));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalform::{Engine, Limits};
    use crate::presentations::standard_universe;
    use crate::scalars::sample_points;

    #[test]
    fn rewriter_and_oracle_agree_on_u2_and_su3() {
        let u = standard_universe().unwrap();
        let q0 = sample_points(7, 1).remove(0);
        let e = Engine::<num_rational::BigRational>::new(&u.presentations, q0, Limits::default()).unwrap();
        for alg in ["U2", "SU3"] {
            let a = oracle_agreement(e.get(alg).unwrap(), 11, 30, 4).unwrap();
            assert!(a.violations.is_empty(), "{alg}: {:?}", a.violations);
            assert!(a.nf_zero >= 20, "{alg}: {a:?}");
        }
    }
}
