use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring whose elements carry their own context.
///
/// Elements of `F_{p^d}` or of a Galois ring need a handle on the field
/// tables, so constants are produced from an existing element
/// (`zero_like`, `one_like`, `from_int_like`) rather than from nothing.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Image of an integer under the structure map `Z -> R`; `self` is a
    /// template carrying the ring (field tables, precision).
    #[allow(clippy::wrong_self_convention)]
    fn from_int_like(&self, n: &BigInt) -> Self;
    /// Multiplicative inverse, if `self` is a unit.
    fn inv(&self) -> Option<Self>;
    /// `Some(p)` iff the ring is an `F_p`-algebra.
    fn char_p(&self) -> Option<u64>;

    /// Whether `other` lives in the same ring (same field tables etc.).
    fn same_ring(&self, _other: &Self) -> bool {
        true
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, n: i64) -> Self {
        self.from_int_like(&BigInt::from(n))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Rings in which exact division by powers of a prime can be attempted.
pub trait PDivisible: Ring {
    /// Returns `self / p^k` when the division is exact, `None` otherwise.
    fn div_p_pow(&self, p: u64, k: u32) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        n.clone()
    }
    fn inv(&self) -> Option<Self> {
        if One::is_one(&self.abs()) {
            Some(self.clone())
        } else {
            None
        }
    }
    fn char_p(&self) -> Option<u64> {
        None
    }
}

impl PDivisible for BigInt {
    fn div_p_pow(&self, p: u64, k: u32) -> Option<Self> {
        let d = BigInt::from(p).pow(k);
        let (q, r) = self.div_rem(&d);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn char_p(&self) -> Option<u64> {
        None
    }
}

impl PDivisible for BigRational {
    fn div_p_pow(&self, p: u64, k: u32) -> Option<Self> {
        Some(self / BigRational::from_integer(BigInt::from(p).pow(k)))
    }
}

/// Reduces a rational number modulo `p`; `None` if `p` divides the denominator.
pub fn rational_mod_p(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = x.numer().mod_floor(&pb).to_u64()?;
    Some(num * mod_inverse(den, p) % p)
}

/// Inverse of `a` modulo the prime `p` (`a` nonzero mod `p`).
pub fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

pub fn mod_pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_reduction() {
        let x = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_mod_p(&x, 3), Some(2));
        assert_eq!(rational_mod_p(&x, 2), None);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn bigint_exact_division() {
        let x = BigInt::from(12);
        assert_eq!(x.div_p_pow(2, 2), Some(BigInt::from(3)));
        assert_eq!(x.div_p_pow(2, 3), None);
    }
}
