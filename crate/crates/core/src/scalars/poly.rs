use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Dense univariate polynomial in `q` with arbitrary-precision integer
/// coefficients, `coeffs[k]` being the coefficient of `q^k`.
///
/// The highest stored coefficient is always nonzero; the zero polynomial has
/// no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exponent of the lowest nonzero term.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.low_order() == self.degree()
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divide by `q^k`; the caller guarantees `k <= low_order`.
    fn unshift(&self, k: usize) -> Self {
        IntPoly { coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading().unwrap().clone();
            let t = d.scale(&rl).shift(rd - dd);
            r = r.scale(&lc).sub(&t);
        }
        r
    }

    /// Exact quotient `self / d`; both must have integer quotient.
    pub fn div_exact(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        if dd == 0 {
            return self.div_scalar_exact(&d.coeffs[0]);
        }
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        let qlen = self.coeffs.len().saturating_sub(dd);
        let mut quot = vec![BigInt::zero(); qlen.max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading().unwrap() / lc;
            debug_assert!((&c * lc) == *r.leading().unwrap(), "inexact division");
            quot[rd - dd] = c.clone();
            r = r.sub(&d.scale(&c).shift(rd - dd));
        }
        debug_assert!(r.is_zero(), "inexact division");
        Self::from_coeffs(quot)
    }

    /// Greatest common divisor in Z[q], normalised to positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let cg = self.content().gcd(&other.content());
        // q-adic part handled up front: it is the common case
        let k = self.low_order().unwrap().min(other.low_order().unwrap());
        let a = self.unshift(self.low_order().unwrap());
        let b = other.unshift(other.low_order().unwrap());
        let mut g = if a.is_constant() || b.is_constant() {
            IntPoly::one()
        } else if a.is_monomial() || b.is_monomial() {
            IntPoly::one()
        } else {
            let (mut x, mut y) = if a.degree() >= b.degree() {
                (a.primitive(), b.primitive())
            } else {
                (b.primitive(), a.primitive())
            };
            while !y.is_zero() {
                let r = x.prem(&y);
                x = y;
                y = if r.is_zero() { r } else { r.primitive() };
            }
            x.primitive()
        };
        g = g.shift(k);
        g.scale(&cg)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Substitute `q -> q^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        let mut out = vec![BigInt::zero(); (self.coeffs.len().max(1) - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::from_coeffs(out)
    }

    /// Total order used only to make canonical choices deterministic.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for IntPoly {
    /// Descending powers, e.g. `q^2-1`, `-2*q^3+q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_cyclotomic_like_factors() {
        // (q^2-1) = (q-1)(q+1), (q^4-1) = (q^2-1)(q^2+1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 0, 0, 0, 1]);
        assert_eq!(a.gcd(&b), a);
        assert_eq!(b.div_exact(&a), p(&[1, 0, 1]));
    }

    #[test]
    fn gcd_with_contents_and_q_powers() {
        let a = p(&[0, 0, 6, 6]); // 6 q^2 (1+q)
        let b = p(&[0, 4, 4]); // 4 q (1+q)
        assert_eq!(a.gcd(&b), p(&[0, 2, 2]));
    }

    #[test]
    fn display_descending() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "q^2-1");
        assert_eq!(p(&[0, 1, 0, -2]).to_string(), "-2*q^3+q");
        assert_eq!(p(&[]).to_string(), "0");
    }

    #[test]
    fn eval_horner() {
        let x = BigRational::new(1.into(), 2.into());
        assert_eq!(p(&[1, 0, 1]).eval(&x), BigRational::new(5.into(), 4.into()));
    }
}
