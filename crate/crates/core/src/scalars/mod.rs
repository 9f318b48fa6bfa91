//! Exact arithmetic in the rational function field Q(q), plus evaluation of
//! q at rational points for the fast specialised verification path.

mod parse;
mod poly;

pub use parse::parse_scalar;
pub use poly::IntPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator {den} vanishes at q = {at}")]
    Pole { den: String, at: String },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An element of Q(q) in canonical form: `num/den` with `gcd(num, den) = 1`
/// in Z[q] and `den` having positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: IntPoly,
    den: IntPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(c: i64) -> Self {
        Scalar { num: IntPoly::constant(BigInt::from(c)), den: IntPoly::one() }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::new(IntPoly::constant(n.into()), IntPoly::constant(d.into())).expect("nonzero")
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            Scalar { num: IntPoly::monomial(BigInt::one(), k as usize), den: IntPoly::one() }
        } else {
            Scalar { num: IntPoly::one(), den: IntPoly::monomial(BigInt::one(), (-k) as usize) }
        }
    }

    /// `(-q)^k`.
    pub fn neg_q_pow(k: i64) -> Self {
        let s = Self::q_pow(k);
        if k.rem_euclid(2) == 1 {
            s.neg()
        } else {
            s
        }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Scalar { num: p, den: IntPoly::one() }
    }

    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on q.
    pub fn is_rational_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::canonical(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::canonical(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar { num: self.num.mul(&other.num), den: IntPoly::one() };
        }
        // cross-cancel before multiplying keeps intermediate sizes small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (a, d) = (self.num.div_exact(&g1), other.den.div_exact(&g1));
        let (c, b) = (other.num.div_exact(&g2), self.den.div_exact(&g2));
        let mut num = a.mul(&c);
        let mut den = b.mul(&d);
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exact evaluation at `q = q0`.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q0);
        if num_traits::Zero::is_zero(&d) {
            return Err(ScalarError::Pole { den: self.den.to_string(), at: q0.to_string() });
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Substitute `q -> q^k` (used by mutation tests).
    pub fn substitute_q_power(&self, k: usize) -> Self {
        Self::canonical(self.num.compose_power(k), self.den.compose_power(k))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

fn is_single_term(p: &IntPoly) -> bool {
    p.is_monomial()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if is_single_term(&self.num) {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if is_single_term(&self.den) && self.den.leading().unwrap().is_one() {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

/// The coefficient domain of the engine: Q(q) itself, or Q after q has been
/// fixed to a rational value.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Evaluation data needed to embed a Q(q) scalar.
    type Point: Clone + fmt::Debug + Send + Sync + 'static;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn embed(s: &Scalar, point: &Self::Point) -> Result<Self, ScalarError>;
    /// Short human-readable description of the point (for reports).
    fn describe_point(point: &Self::Point) -> String;
}

impl Coeff for Scalar {
    type Point = ();
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self).ok()
    }
    fn embed(s: &Scalar, _: &()) -> Result<Self, ScalarError> {
        Ok(s.clone())
    }
    fn describe_point(_: &()) -> String {
        "symbolic".to_string()
    }
}

impl Coeff for BigRational {
    type Point = BigRational;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn embed(s: &Scalar, p: &BigRational) -> Result<Self, ScalarError> {
        s.specialize(p)
    }
    fn describe_point(p: &BigRational) -> String {
        format!("q={p}")
    }
}

/// `n` distinct seeded rationals in (0,1) with denominators below 100.
pub fn sample_points(seed: u64, n: usize) -> Vec<BigRational> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<BigRational> = Vec::new();
    while out.len() < n {
        let d: i64 = rng.gen_range(3..100);
        let k: i64 = rng.gen_range(1..d);
        let x = BigRational::new(BigInt::from(k), BigInt::from(d));
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_q_and_inverse() {
        assert_eq!(Scalar::q().add(&Scalar::q_pow(-1)), s("(q^2+1)/q"));
    }

    #[test]
    fn haar_value_reduces() {
        let h = s("(q^2-1)/(q^4-1)");
        assert_eq!(h.mul(&Scalar::one()), s("1/(q^2+1)"));
        assert_eq!(h.to_string(), "1/(q^2+1)");
    }

    #[test]
    fn sub_self_is_zero() {
        assert!(Scalar::q().sub(&Scalar::q()).is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(s("q-q^-1").specialize(&r(1, 2)).unwrap(), r(-3, 2));
        assert_eq!(s("1/(1+q^2)").specialize(&r(1, 2)).unwrap(), r(4, 5));
    }

    #[test]
    fn specialize_pole() {
        // 1/(q^2-q^2) cannot even be formed
        assert!(parse_scalar("1/(q^2-q^2)").is_err());
        let p = Scalar::new(IntPoly::one(), IntPoly::from_i64s(&[-1, 2])).unwrap();
        assert!(matches!(p.specialize(&r(1, 2)), Err(ScalarError::Pole { .. })));
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = Scalar::new(IntPoly::from_i64s(&[2]), IntPoly::from_i64s(&[0, -4])).unwrap();
        assert_eq!(a.to_string(), "-1/(2*q)");
        assert_eq!(a, s("-1/(2*q)"));
    }

    #[test]
    fn neg_q_powers() {
        assert_eq!(Scalar::neg_q_pow(3), s("-q^3"));
        assert_eq!(Scalar::neg_q_pow(-2), s("q^-2"));
    }
}
