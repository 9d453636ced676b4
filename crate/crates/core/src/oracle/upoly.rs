//! Dense univariate polynomials over the rationals.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients from degree 0 upward, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `c t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest degree with a nonzero coefficient; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Number of distinct roots over an algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        self.squarefree_part().degree().unwrap_or(0)
    }

    /// Multiplicity of the root 0 after removing `t`: `p = t^k q`, `q(0) != 0`.
    pub fn strip_t(&self) -> (usize, UPoly) {
        match self.order() {
            Some(k) => (k, Self::new(self.coeffs[k..].to_vec())),
            None => (0, Self::zero()),
        }
    }

    pub fn pow(&self, k: u32) -> UPoly {
        (0..k).fold(UPoly::one(), |acc, _| &acc * self)
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = UPoly::from_ints(&[1, 1]); // t + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UPoly::from_ints(&[-1, 1])), UPoly::from_ints(&[-1, 1]));
        assert_eq!(a.gcd(&UPoly::from_ints(&[2, 1])), UPoly::one());
    }

    #[test]
    fn squarefree_counts_distinct_roots() {
        let p = &UPoly::from_ints(&[-1, 1]).pow(3) * &UPoly::from_ints(&[2, 0, 1]);
        assert_eq!(p.distinct_root_count(), 3);
        assert_eq!(UPoly::from_ints(&[5]).distinct_root_count(), 0);
    }

    #[test]
    fn order_and_strip() {
        let p = UPoly::from_ints(&[0, 0, 3, 1]);
        assert_eq!(p.order(), Some(2));
        assert_eq!(p.strip_t(), (2, UPoly::from_ints(&[3, 1])));
        assert_eq!(p.derivative(), UPoly::from_ints(&[0, 6, 3]));
    }
}
