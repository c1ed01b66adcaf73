//! The Galois ring `GR(p^N, d) = W_N(F_{p^d})`, realised as
//! `(Z/p^N)[t]/(M(t))` for a monic lift `M` of the residue field modulus.
//!
//! This is the coefficient ring for Teichmüller lifts of Laurent series:
//! `N` bounds how many `p`-adic digits survive, which is what the ghost
//! inversion of the Witt residue needs.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::field::{FieldElement, FieldSpec};
use super::ring::{PDivisible, Ring};
use crate::error::{Error, Result};

/// Teichmüller tables are cached for residue fields up to this size.
const TEICH_TABLE_LIMIT: u64 = 4096;

pub struct GaloisRing {
    field: Arc<FieldSpec>,
    n: u32,
    pn: u64,
    /// Monic lift of the residue modulus, constant term first (length d + 1).
    modulus: Vec<u64>,
    teich: OnceLock<Vec<Vec<u64>>>,
}

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.field.p(), self.n, self.field.degree())
    }
}

impl GaloisRing {
    /// `W_n(k')` for the residue field `field`.
    pub fn new(field: &Arc<FieldSpec>, n: u32) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::Invalid("Galois ring length must be positive".into()));
        }
        let p = field.p();
        let pn = (p as u128)
            .checked_pow(n)
            .filter(|&x| x < (1u128 << 62))
            .ok_or_else(|| Error::Invalid(format!("p^N = {}^{} does not fit the native word size", p, n)))?
            as u64;
        let d = field.degree() as usize;
        let modulus = match field.modulus() {
            Some(m) => m.to_vec(),
            None => {
                let mut m = vec![0u64; d + 1];
                m[d] = 1;
                m
            }
        };
        Ok(Arc::new(GaloisRing {
            field: field.clone(),
            n,
            pn,
            modulus,
            teich: OnceLock::new(),
        }))
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn length(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    fn d(&self) -> usize {
        self.field.degree() as usize
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.pn as u128) as u64
    }

    fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.d();
        if d == 1 {
            return vec![self.mulmod(a[0], b[0])];
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + self.mulmod(x, y)) % self.pn;
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..d {
                    let sub = self.mulmod(c, self.modulus[i]);
                    let idx = k - d + i;
                    prod[idx] = (prod[idx] + self.pn - sub) % self.pn;
                }
            }
        }
        prod.truncate(d);
        prod
    }

    fn raw_pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = vec![0u64; self.d()];
        acc[0] = 1 % self.pn;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.raw_mul(&base, &base);
            }
        }
        acc
    }

    /// `[a]^{q^{N-1}}` of a naive lift is the Teichmüller representative.
    fn teich_raw(&self, a: &FieldElement) -> Vec<u64> {
        let mut x: Vec<u64> = a.digits();
        let q = self.field.size();
        for _ in 1..self.n {
            x = self.raw_pow(&x, q);
        }
        x
    }

    fn teich_table(&self) -> Option<&Vec<Vec<u64>>> {
        if self.field.size() > TEICH_TABLE_LIMIT {
            return None;
        }
        Some(
            self.teich
                .get_or_init(|| FieldElement::all(&self.field).map(|a| self.teich_raw(&a)).collect()),
        )
    }
}

/// An element of a Galois ring.
#[derive(Clone)]
pub struct GrElement {
    ring: Arc<GaloisRing>,
    c: Vec<u64>,
}

impl GrElement {
    pub fn zero(ring: &Arc<GaloisRing>) -> Self {
        GrElement {
            ring: ring.clone(),
            c: vec![0; ring.d()],
        }
    }

    pub fn one(ring: &Arc<GaloisRing>) -> Self {
        let mut c = vec![0; ring.d()];
        c[0] = 1 % ring.pn;
        GrElement { ring: ring.clone(), c }
    }

    /// The Teichmüller representative of `a`.
    pub fn teichmuller(ring: &Arc<GaloisRing>, a: &FieldElement) -> Self {
        let c = match ring.teich_table() {
            Some(t) => t[a.index() as usize].clone(),
            None => ring.teich_raw(a),
        };
        GrElement { ring: ring.clone(), c }
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// Image in the residue field.
    pub fn reduce(&self) -> FieldElement {
        let p = self.ring.p();
        let digits: Vec<u64> = self.c.iter().map(|x| x % p).collect();
        FieldElement::from_digits(&self.ring.field, &digits).expect("d digits")
    }

    fn with(&self, c: Vec<u64>) -> Self {
        GrElement {
            ring: self.ring.clone(),
            c,
        }
    }
}

impl PartialEq for GrElement {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.ring.pn == other.ring.pn
    }
}

impl fmt::Debug for GrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.len() == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{:?}", self.c)
        }
    }
}

impl Ring for GrElement {
    fn zero_like(&self) -> Self {
        GrElement::zero(&self.ring)
    }

    fn one_like(&self) -> Self {
        GrElement::one(&self.ring)
    }

    fn add(&self, rhs: &Self) -> Self {
        let pn = self.ring.pn;
        self.with(self.c.iter().zip(&rhs.c).map(|(a, b)| (a + b) % pn).collect())
    }

    fn sub(&self, rhs: &Self) -> Self {
        let pn = self.ring.pn;
        self.with(self.c.iter().zip(&rhs.c).map(|(a, b)| (a + pn - b) % pn).collect())
    }

    fn neg(&self) -> Self {
        let pn = self.ring.pn;
        self.with(self.c.iter().map(|a| (pn - a) % pn).collect())
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.with(self.ring.raw_mul(&self.c, &rhs.c))
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        let mut c = vec![0; self.ring.d()];
        c[0] = n.mod_floor(&BigInt::from(self.ring.pn)).to_u64().unwrap();
        self.with(c)
    }

    /// Units are exactly the elements with nonzero residue; the inverse is
    /// refined from the residue-field inverse by Newton iteration.
    fn inv(&self) -> Option<Self> {
        let r = self.reduce().inv()?;
        let mut x = self.with(r.digits());
        let two = self.from_i64_like(2);
        let mut good = 1u32;
        while good < self.ring.n {
            x = x.mul(&two.sub(&self.mul(&x)));
            good *= 2;
        }
        Some(x)
    }

    fn char_p(&self) -> Option<u64> {
        if self.ring.n == 1 {
            Some(self.ring.p())
        } else {
            None
        }
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring.pn == other.ring.pn
    }

    fn pow(&self, e: u64) -> Self {
        self.with(self.ring.raw_pow(&self.c, e))
    }
}

impl PDivisible for GrElement {
    /// Exact division of the integer representatives; the quotient is only
    /// meaningful modulo `p^{N-k}`, which callers account for by lifting to
    /// a longer ring than the final answer needs.
    fn div_p_pow(&self, p: u64, k: u32) -> Option<Self> {
        debug_assert_eq!(p, self.ring.p());
        if k >= self.ring.n {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let pk = p.pow(k);
        if self.c.iter().any(|x| x % pk != 0) {
            return None;
        }
        Some(self.with(self.c.iter().map(|x| x / pk).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_is_multiplicative_and_lifts() {
        let k = FieldSpec::extension(3, &[2, 2, 1]).unwrap();
        let gr = GaloisRing::new(&k, 4).unwrap();
        for a in FieldElement::all(&k) {
            let ta = GrElement::teichmuller(&gr, &a);
            assert_eq!(ta.reduce(), a);
            // [a]^q = [a]
            assert_eq!(ta.pow(k.size()), ta);
            for b in FieldElement::all(&k).step_by(2) {
                let tb = GrElement::teichmuller(&gr, &b);
                assert_eq!(ta.mul(&tb), GrElement::teichmuller(&gr, &a.mul(&b)));
            }
        }
    }

    #[test]
    fn unit_inverse() {
        let k = FieldSpec::prime(5).unwrap();
        let gr = GaloisRing::new(&k, 5).unwrap();
        let x = GrElement::one(&gr).from_i64_like(7);
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert!(x.from_i64_like(10).inv().is_none());
    }

    #[test]
    fn exact_division() {
        let k = FieldSpec::prime(2).unwrap();
        let gr = GaloisRing::new(&k, 4).unwrap();
        let x = GrElement::one(&gr).from_i64_like(12);
        assert_eq!(x.div_p_pow(2, 2), Some(x.from_i64_like(3)));
        assert_eq!(x.div_p_pow(2, 3), None);
    }
}
