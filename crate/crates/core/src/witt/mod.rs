//! Truncated `p`-typical Witt vectors over an arbitrary coefficient ring.

pub mod laws;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;

use crate::algebra::ring::{PDivisible, Ring};
use crate::error::{Error, Result};
pub use laws::{IntPoly, Law, WittLaws};

/// Default maximum Witt length; universal polynomials grow quickly with `m`.
pub const DEFAULT_LENGTH_CAP: usize = 4;

static LENGTH_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_LENGTH_CAP);

/// Current maximum Witt length accepted by constructors.
pub fn length_cap() -> usize {
    LENGTH_CAP.load(Ordering::Relaxed)
}

/// Changes the maximum Witt length. Meant to be called once at start-up.
pub fn set_length_cap(cap: usize) {
    LENGTH_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Raises the cap to at least `cap` (never lowers it).
pub fn ensure_length_cap(cap: usize) {
    LENGTH_CAP.fetch_max(cap, Ordering::Relaxed);
}

pub(crate) fn check_length(len: usize) -> Result<()> {
    let cap = length_cap();
    if len == 0 {
        return Err(Error::Invalid("Witt vectors have length at least 1".into()));
    }
    if len > cap {
        return Err(Error::WittLengthCap { len, cap });
    }
    Ok(())
}

/// `(a_0, ..., a_{m-1}) in W_m(R)`.
#[derive(Clone, PartialEq)]
pub struct WittVector<R: Ring> {
    p: u64,
    comps: Vec<R>,
}

impl<R: Ring> fmt::Debug for WittVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}{:?}", self.comps.len(), self.comps)
    }
}

impl<R: Ring> WittVector<R> {
    pub fn new(p: u64, comps: Vec<R>) -> Result<Self> {
        check_length(comps.len())?;
        Ok(WittVector { p, comps })
    }

    pub fn zero(p: u64, m: usize, template: &R) -> Result<Self> {
        Self::new(p, vec![template.zero_like(); m])
    }

    pub fn one(p: u64, m: usize, template: &R) -> Result<Self> {
        let mut v = vec![template.zero_like(); m];
        v[0] = template.one_like();
        Self::new(p, v)
    }

    /// The Teichmüller representative `[a] = (a, 0, ..., 0)`.
    pub fn teichmuller(p: u64, a: R, m: usize) -> Result<Self> {
        let mut v = vec![a.zero_like(); m];
        v[0] = a;
        Self::new(p, v)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn comps(&self) -> &[R] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<R> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> WittVector<S> {
        WittVector {
            p: self.p,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<WittVector<S>> {
        Ok(WittVector {
            p: self.p,
            comps: self.comps.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn compatible(&self, rhs: &Self) -> Result<()> {
        if self.p != rhs.p {
            return Err(Error::DomainMismatch);
        }
        if self.len() != rhs.len() {
            return Err(Error::LengthMismatch(self.len(), rhs.len()));
        }
        if !self.comps[0].same_ring(&rhs.comps[0]) {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    fn binary(&self, rhs: &Self, law: Law) -> Result<Self> {
        self.compatible(rhs)?;
        let laws = WittLaws::get(self.p, self.len());
        let args: Vec<R> = self
            .comps
            .iter()
            .zip(&rhs.comps)
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        Ok(WittVector {
            p: self.p,
            comps: laws.eval(law, &args),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.binary(rhs, Law::Sum)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.binary(rhs, Law::Product)
    }

    pub fn neg(&self) -> Self {
        let laws = WittLaws::get(self.p, self.len());
        let args: Vec<R> = self.comps.iter().flat_map(|a| [a.clone(), a.zero_like()]).collect();
        WittVector {
            p: self.p,
            comps: laws.eval(Law::Negation, &args),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    /// `n * self` by double-and-add on the Witt group law.
    pub fn mul_int(&self, n: i64) -> Result<Self> {
        let template = &self.comps[0];
        let mut acc = Self::zero(self.p, self.len(), template)?;
        let mut base = if n < 0 { self.neg() } else { self.clone() };
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.add(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.add(&base)?;
            }
        }
        Ok(acc)
    }

    /// The image of an integer in `W_m(R)`.
    pub fn from_int(p: u64, m: usize, n: i64, template: &R) -> Result<Self> {
        Self::one(p, m, template)?.mul_int(n)
    }

    /// Frobenius, defined here only over `F_p`-algebras where it is
    /// `a_i -> a_i^p`.
    pub fn frobenius(&self) -> Result<Self> {
        if self.comps[0].char_p() != Some(self.p) {
            return Err(Error::FrobeniusNotCharP);
        }
        Ok(self.map(|a| a.pow(self.p)))
    }

    /// Verschiebung `(a_0, ..., a_{m-2}) -> (0, a_0, ..., a_{m-2})` on `W_m`.
    pub fn verschiebung(&self) -> Self {
        let mut comps = Vec::with_capacity(self.len());
        comps.push(self.comps[0].zero_like());
        comps.extend_from_slice(&self.comps[..self.len() - 1]);
        WittVector { p: self.p, comps }
    }

    /// Restriction `W_m -> W_{m-1}`.
    pub fn restrict(&self) -> Result<Self> {
        if self.len() == 1 {
            return Err(Error::Invalid("cannot restrict a Witt vector of length 1".into()));
        }
        Ok(WittVector {
            p: self.p,
            comps: self.comps[..self.len() - 1].to_vec(),
        })
    }

    /// Pads with zero components (the inclusion `V^k`-style shift is
    /// [`WittVector::verschiebung`]); used to compare vectors of different
    /// lengths.
    pub fn extend_to(&self, m: usize) -> Result<Self> {
        let mut comps = self.comps.clone();
        comps.resize(m.max(self.len()), self.comps[0].zero_like());
        Self::new(self.p, comps)
    }

    /// Ghost components `w_j = sum_{i <= j} p^i a_i^{p^{j-i}}`.
    pub fn ghost(&self) -> Vec<R> {
        let p = self.p;
        (0..self.len())
            .map(|j| {
                let mut acc = self.comps[0].zero_like();
                for i in 0..=j {
                    let t = self.comps[i].pow(p.pow((j - i) as u32));
                    let c = t.from_int_like(&BigInt::from(p).pow(i as u32));
                    acc = acc.add(&t.mul(&c));
                }
                acc
            })
            .collect()
    }
}

impl<R: PDivisible> WittVector<R> {
    /// Inverts the ghost map; every division by `p^j` must be exact.
    pub fn unghost(p: u64, w: &[R]) -> Result<Self> {
        check_length(w.len())?;
        let mut comps: Vec<R> = Vec::with_capacity(w.len());
        for (j, wj) in w.iter().enumerate() {
            let mut rest = wj.clone();
            for (i, ai) in comps.iter().enumerate() {
                let t = ai.pow(p.pow((j - i) as u32));
                let c = t.from_int_like(&BigInt::from(p).pow(i as u32));
                rest = rest.sub(&t.mul(&c));
            }
            let aj = rest.div_p_pow(p, j as u32).ok_or(Error::Divisibility {
                index: j,
                power: j as u32,
            })?;
            comps.push(aj);
        }
        Ok(WittVector { p, comps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{FieldElement, FieldSpec};

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn wz(p: u64, c: &[i64]) -> WittVector<BigInt> {
        WittVector::new(p, c.iter().map(|&n| z(n)).collect()).unwrap()
    }

    #[test]
    fn one_plus_one_in_w2_f2() {
        let k = FieldSpec::prime(2).unwrap();
        let one = WittVector::one(2, 2, &FieldElement::zero(&k)).unwrap();
        let two = one.add(&one).unwrap();
        assert_eq!(two.comps(), &[FieldElement::zero(&k), FieldElement::one(&k)]);
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(wz(2, &[0, 1]).ghost(), vec![z(0), z(2)]);
        assert_eq!(WittVector::unghost(2, &[z(2), z(2)]).unwrap(), wz(2, &[2, -1]));
        assert!(matches!(
            WittVector::unghost(2, &[z(1), z(2)]),
            Err(Error::Divisibility { index: 1, .. })
        ));
        // ghost([c]) = (c, c^p, c^{p^2})
        assert_eq!(wz(3, &[2, 0, 0]).ghost(), vec![z(2), z(8), z(512)]);
    }

    #[test]
    fn additive_identity_and_teichmuller() {
        let k = FieldSpec::extension(3, &[1, 0, 1]).unwrap();
        let zero = FieldElement::zero(&k);
        let a = WittVector::new(
            3,
            vec![FieldElement::from_index(&k, 5), FieldElement::from_index(&k, 7)],
        )
        .unwrap();
        assert_eq!(a.add(&WittVector::zero(3, 2, &zero).unwrap()).unwrap(), a);
        for x in FieldElement::all(&k) {
            for y in FieldElement::all(&k) {
                let tx = WittVector::teichmuller(3, x.clone(), 2).unwrap();
                let ty = WittVector::teichmuller(3, y.clone(), 2).unwrap();
                assert_eq!(tx.mul(&ty).unwrap(), WittVector::teichmuller(3, x.mul(&y), 2).unwrap());
            }
        }
    }

    #[test]
    fn frobenius_verschiebung_is_p() {
        let k = FieldSpec::prime(2).unwrap();
        let zero = FieldElement::zero(&k);
        for code in 0..8u64 {
            let c: Vec<FieldElement> = (0..3)
                .map(|i| FieldElement::from_int(&k, ((code >> i) & 1) as i64))
                .collect();
            let a = WittVector::new(2, c).unwrap();
            let two = WittVector::from_int(2, 3, 2, &zero).unwrap();
            let pa = a.mul(&two).unwrap();
            assert_eq!(a.verschiebung().frobenius().unwrap(), pa);
            assert_eq!(a.frobenius().unwrap().verschiebung(), pa);
        }
        assert_eq!(wz(2, &[1, 0]).verschiebung(), wz(2, &[0, 1]));
        assert!(matches!(wz(2, &[1, 0]).frobenius(), Err(Error::FrobeniusNotCharP)));
    }

    #[test]
    fn restrict_and_caps() {
        assert_eq!(wz(2, &[1, 2, 3]).restrict().unwrap(), wz(2, &[1, 2]));
        assert!(wz(2, &[1]).restrict().is_err());
        assert!(matches!(
            WittVector::new(2, vec![z(0); 1000]),
            Err(Error::WittLengthCap { .. })
        ));
    }
}
