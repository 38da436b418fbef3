use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// A power series in `t` with polynomial coefficients, truncated after `t^order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { order, coeffs: vec![MultiPoly::zero(); order + 1] }
    }

    pub fn constant(order: usize, c: MultiPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, MultiPoly::one())
    }

    /// `c * t^k`; zero when `k > order`.
    pub fn term(order: usize, k: usize, c: MultiPoly) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficient(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "series orders differ");
    }

    /// Multiplicative inverse; the constant coefficient must be `1` or `-1`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0]
            .as_constant()
            .filter(|c| c.magnitude().is_one())
            .ok_or_else(|| Error::Domain("constant term of the series is not a unit".into()))?;
        let a0 = MultiPoly::constant(a0);
        let mut out = Self::zero(self.order);
        out.coeffs[0] = a0.clone();
        for k in 1..=self.order {
            let mut acc = MultiPoly::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &out.coeffs[k - j]);
            }
            // b_k = -a0^{-1} * acc with a0^{-1} = a0
            out.coeffs[k] = -(&a0 * &acc);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn constant_coeff_int(&self) -> Option<BigInt> {
        self.coeffs[0].as_constant()
    }
}

impl<'a> Add<&'a TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { order: self.order, coeffs }
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        TruncatedSeries { order: self.order, coeffs }
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        self.check(rhs);
        let mut out = TruncatedSeries::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs[..=self.order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genpoly::poly::Var;

    #[test]
    fn geometric_series() {
        // 1 / (1 - q t) = sum q^k t^k
        let q = MultiPoly::var(Var::Q);
        let s = &TruncatedSeries::one(5) - &TruncatedSeries::term(5, 1, q.clone());
        let r = s.reciprocal().unwrap();
        for k in 0..=5 {
            assert_eq!(*r.coefficient(k), q.pow(k as u32));
        }
        assert_eq!(&s * &r, TruncatedSeries::one(5));
    }

    #[test]
    fn non_unit_rejected() {
        let s = TruncatedSeries::constant(3, MultiPoly::constant(2));
        assert!(s.reciprocal().is_err());
        let s = TruncatedSeries::constant(3, MultiPoly::var(Var::Q));
        assert!(s.reciprocal().is_err());
    }

    #[test]
    fn truncation() {
        let t = TruncatedSeries::term(2, 1, MultiPoly::one());
        let t3 = &(&t * &t) * &t;
        assert_eq!(t3, TruncatedSeries::zero(2));
        assert_eq!(TruncatedSeries::term(2, 3, MultiPoly::one()), TruncatedSeries::zero(2));
    }
}
