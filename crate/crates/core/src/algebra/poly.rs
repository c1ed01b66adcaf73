use std::fmt;

use num_bigint::BigInt;

use super::ring::{PDivisible, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, constant term first, no trailing zeros.
///
/// `zero` is a template element of the coefficient ring so that the zero
/// polynomial still knows where it lives.
#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>, zero: &R) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            coeffs,
            zero: zero.zero_like(),
        }
    }

    pub fn zero(template: &R) -> Self {
        Self::new(Vec::new(), template)
    }

    pub fn constant(c: R) -> Self {
        let z = c.zero_like();
        Self::new(vec![c], &z)
    }

    /// The indeterminate.
    pub fn x(template: &R) -> Self {
        Self::new(vec![template.zero_like(), template.one_like()], template)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z.clone(); k];
        v.push(c);
        Self::new(v, &z)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn template(&self) -> &R {
        &self.zero
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, c| acc.mul(at).add(c))
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.zero)
    }

    pub fn map<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero)
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&c.from_i64_like(k as i64)))
            .collect();
        Self::new(v, &self.zero)
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &R) -> Self {
        // Horner in the ring of polynomials.
        let lin = Poly::new(vec![a.clone(), a.one_like()], &self.zero);
        let mut acc = Poly::zero(&self.zero);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Coefficients reversed with respect to degree `n` (`x^n f(1/x)`).
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = vec![self.zero.clone(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[n - k] = c.clone();
        }
        Self::new(v, &self.zero)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Division with remainder by a divisor with invertible leading coefficient.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d
            .leading()
            .unwrap()
            .inv()
            .ok_or_else(|| Error::NotUnit(format!("{:?}", d.leading())))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.zero), self.clone()));
        }
        let mut quot = vec![self.zero.clone(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = k - dd;
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].sub(&c.mul(di));
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot, &self.zero), Poly::new(rem, &self.zero)))
    }

    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => {
                let inv = l.inv().ok_or_else(|| Error::NotUnit(format!("{:?}", l)))?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Poly::zero(&self.zero)
    }

    fn one_like(&self) -> Self {
        Poly::constant(self.zero.one_like())
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v, &self.zero)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.neg()).collect(), &self.zero)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Poly::new(v, &self.zero)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        Poly::constant(self.zero.from_int_like(n))
    }

    fn inv(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].inv().map(Poly::constant)
        } else {
            None
        }
    }

    fn char_p(&self) -> Option<u64> {
        self.zero.char_p()
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.zero.same_ring(&other.zero)
    }
}

impl<R: PDivisible> PDivisible for Poly<R> {
    fn div_p_pow(&self, p: u64, k: u32) -> Option<Self> {
        let v: Option<Vec<R>> = self.coeffs.iter().map(|c| c.div_p_pow(p, k)).collect();
        v.map(|v| Poly::new(v, &self.zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{FieldElement, FieldSpec};

    fn poly(k: &std::sync::Arc<FieldSpec>, c: &[i64]) -> Poly<FieldElement> {
        let z = FieldElement::zero(k);
        Poly::new(c.iter().map(|&n| FieldElement::from_int(k, n)).collect(), &z)
    }

    #[test]
    fn division_and_gcd() {
        let k = FieldSpec::prime(5).unwrap();
        // (x+1)^2 and (x+1)(x+2)
        let a = poly(&k, &[1, 2, 1]);
        let b = poly(&k, &[2, 3, 1]);
        assert_eq!(a.gcd(&b).unwrap(), poly(&k, &[1, 1]));
        let (q, r) = a.mul(&b).div_rem(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn shift_and_reverse() {
        let k = FieldSpec::prime(7).unwrap();
        let f = poly(&k, &[0, 0, 1]); // x^2
        let one = FieldElement::one(&k);
        assert_eq!(f.shift(&one), poly(&k, &[1, 2, 1]));
        assert_eq!(poly(&k, &[3, 1]).reversed(1), poly(&k, &[1, 3]));
    }

    #[test]
    fn derivative_of_pth_power_vanishes() {
        let k = FieldSpec::prime(3).unwrap();
        assert!(poly(&k, &[1, 0, 0, 2]).derivative().is_zero());
    }
}
