use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Scalar;

/// A Laurent polynomial `Σ c_e t^e` with finitely many nonzero terms.
///
/// Stored densely from the lowest nonzero exponent; the zero polynomial has
/// no coefficients.
#[derive(Clone, PartialEq)]
pub struct Laurent<F> {
    lo: i64,
    coeffs: Vec<F>,
}

impl<F: Scalar> Laurent<F> {
    pub fn zero() -> Self {
        Laurent {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    pub fn monomial(c: F, e: i64) -> Self {
        Self::from_dense(e, vec![c])
    }

    /// `Σ coeffs[k] t^(lo + k)`.
    pub fn from_dense(lo: i64, coeffs: Vec<F>) -> Self {
        let mut p = Laurent { lo, coeffs };
        p.normalize();
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        let terms: Vec<(i64, F)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![F::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> F {
        let k = e - self.lo;
        if k < 0 || k >= self.coeffs.len() as i64 {
            F::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms `(exponent, coefficient)`, increasing.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lo + k as i64, c))
    }

    /// Drops every term of exponent `>= hi`.
    pub fn truncate(&self, hi: i64) -> Self {
        let keep = (hi - self.lo).clamp(0, self.coeffs.len() as i64) as usize;
        Self::from_dense(self.lo, self.coeffs[..keep].to_vec())
    }

    pub fn shift(&self, by: i64) -> Self {
        Laurent {
            lo: if self.is_zero() { 0 } else { self.lo + by },
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_dense(self.lo, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }
}

impl<F: Scalar> Add for &Laurent<F> {
    type Output = Laurent<F>;
    fn add(self, rhs: &Laurent<F>) -> Laurent<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.degree().unwrap().max(rhs.degree().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        Laurent::from_dense(lo, coeffs)
    }
}

impl<F: Scalar> Sub for &Laurent<F> {
    type Output = Laurent<F>;
    fn sub(self, rhs: &Laurent<F>) -> Laurent<F> {
        self + &(-rhs)
    }
}

impl<F: Scalar> Neg for &Laurent<F> {
    type Output = Laurent<F>;
    fn neg(self) -> Laurent<F> {
        Laurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<F: Scalar> Mul for &Laurent<F> {
    type Output = Laurent<F>;
    fn mul(self, rhs: &Laurent<F>) -> Laurent<F> {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Laurent::from_dense(self.lo + rhs.lo, coeffs)
    }
}

impl<F: Scalar> fmt::Debug for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Scalar> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| {
                let one = c.is_one();
                match (e, one) {
                    (0, _) => format!("{c}"),
                    (1, true) => "t".to_string(),
                    (_, true) => format!("t^{e}"),
                    (1, false) => format!("{c}t"),
                    _ => format!("{c}t^{e}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type F = Fp<101>;
    type L = Laurent<F>;

    fn f(x: i64) -> F {
        F::from_i64(x)
    }

    #[test]
    fn arithmetic() {
        let a = L::from_terms([(0, f(1)), (2, f(3))]);
        let b = L::from_terms([(-1, f(2)), (2, f(-3))]);
        let sum = &a + &b;
        assert_eq!(sum, L::from_terms([(-1, f(2)), (0, f(1))]));
        let prod = &a * &b;
        assert_eq!(prod.order(), Some(-1));
        assert_eq!(prod.degree(), Some(4));
        assert_eq!(prod.coeff(4), f(-9));
        assert!((&a - &a).is_zero());
        assert_eq!(a.truncate(2), L::one());
        assert_eq!(a.shift(3).order(), Some(3));
        assert_eq!(a.to_string(), "1 + 3t^2");
    }

    #[test]
    fn zero_behaviour() {
        let z = L::zero();
        assert!(z.is_zero());
        assert_eq!(z.order(), None);
        assert_eq!(&z * &L::one(), z);
        assert_eq!(L::from_terms([(5, f(0))]), z);
    }
}
