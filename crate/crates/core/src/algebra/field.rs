//! Finite fields `F_{p^d}`, the working stand-in for an algebraically
//! closed field of characteristic `p`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ring::{is_prime, Ring};
use crate::error::{Error, Result};

/// Largest field size accepted; multiplication goes through log tables.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// The prime `p`, the degree `d`, and (for `d > 1`) the defining modulus.
///
/// Elements are encoded as integers `sum c_k p^k` where `c_k` are the
/// coefficients of the residue polynomial in `t`.
pub struct FieldSpec {
    p: u64,
    d: u32,
    q: u64,
    modulus: Option<Vec<u64>>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.d)?;
        if let Some(m) = &self.modulus {
            write!(f, " mod {:?}", m)?;
        }
        Ok(())
    }
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Self::build(p, 1, None)
    }

    /// `F_p[t]/(modulus)`; `modulus` lists coefficients from the constant
    /// term up, must be monic and irreducible.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if *m.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let d = (m.len() - 1) as u32;
        if d == 1 {
            return Self::build(p, 1, None);
        }
        if !is_irreducible(p, &m) {
            return Err(Error::InvalidField(format!(
                "modulus {:?} is reducible over F_{}",
                m, p
            )));
        }
        Self::build(p, d, Some(m))
    }

    /// `F_{p^d}` with the first monic irreducible modulus in the order of
    /// coefficient vectors read as base-`p` integers (constant term first).
    pub fn with_degree(p: u64, d: u32) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 1 {
            return Self::prime(p);
        }
        let count = (p as u128).checked_pow(d).filter(|&c| c <= MAX_FIELD_SIZE as u128);
        let count = count.ok_or_else(|| Error::InvalidField(format!("F_{}^{} is too large", p, d)))? as u64;
        for code in 0..count {
            let mut m: Vec<u64> = (0..d).map(|i| (code / p.pow(i)) % p).collect();
            m.push(1);
            if is_irreducible(p, &m) {
                return Self::extension(p, &m);
            }
        }
        Err(Error::InvalidField(format!(
            "no irreducible polynomial of degree {} over F_{}",
            d, p
        )))
    }

    fn build(p: u64, d: u32, modulus: Option<Vec<u64>>) -> Result<Arc<Self>> {
        let q = (p as u128).pow(d);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::InvalidField(format!(
                "field of size {} exceeds the supported maximum {}",
                q, MAX_FIELD_SIZE
            )));
        }
        let q = q as u64;
        let mut spec = FieldSpec {
            p,
            d,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        spec.build_tables()?;
        Ok(Arc::new(spec))
    }

    fn build_tables(&mut self) -> Result<()> {
        let order = self.q - 1;
        let factors = prime_factors(order);
        let gen = (1..self.q)
            .find(|&g| {
                factors.iter().all(|&l| {
                    let x = self.slow_pow(g, order / l);
                    x != 1
                }) || order == 1
            })
            .ok_or_else(|| Error::InvalidField("no primitive element found".into()))?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u64;
        for k in 0..order {
            exp.push(x as u32);
            log[x as usize] = k as u32;
            x = self.slow_mul(x, gen);
        }
        if x != 1 {
            return Err(Error::InvalidField("multiplicative group is not cyclic".into()));
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    fn digits_of(&self, mut v: u64) -> Vec<u64> {
        let mut out = vec![0; self.d as usize];
        for slot in out.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits_of(a), self.digits_of(b));
        let d = self.d as usize;
        let mut prod = vec![0u64; 2 * d];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        if let Some(m) = &self.modulus {
            for k in (d..2 * d).rev() {
                let c = prod[k];
                if c != 0 {
                    for (i, &mi) in m.iter().enumerate().take(d) {
                        let idx = k - d + i;
                        prod[idx] = (prod[idx] + self.p * self.p - c * mi % self.p) % self.p;
                    }
                    prod[k] = 0;
                }
            }
        }
        self.encode(&prod[..d])
    }

    fn slow_pow(&self, g: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    fn same(&self, other: &FieldSpec) -> bool {
        self.p == other.p && self.d == other.d && self.modulus == other.modulus
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldSpec {}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Brute-force irreducibility: no monic factor of degree `1..=deg/2`.
fn is_irreducible(p: u64, m: &[u64]) -> bool {
    let deg = m.len() - 1;
    for k in 1..=deg / 2 {
        let count = p.pow(k as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            if poly_rem_mod_p(m, &f, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        r.pop();
    }
    r
}

/// An element of `F_{p^d}`.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    v: u32,
}

impl FieldElement {
    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        FieldElement {
            spec: spec.clone(),
            v: 0,
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        FieldElement {
            spec: spec.clone(),
            v: 1,
        }
    }

    pub fn from_int(spec: &Arc<FieldSpec>, n: i64) -> Self {
        FieldElement {
            spec: spec.clone(),
            v: n.rem_euclid(spec.p as i64) as u32,
        }
    }

    /// Element with the given coefficients in `t` (constant term first).
    pub fn from_digits(spec: &Arc<FieldSpec>, digits: &[u64]) -> Result<Self> {
        if digits.len() > spec.d as usize && digits[spec.d as usize..].iter().any(|&c| c % spec.p != 0) {
            return Err(Error::Invalid("too many digits for this field".into()));
        }
        let take = digits.len().min(spec.d as usize);
        Ok(FieldElement {
            spec: spec.clone(),
            v: spec.encode(&digits[..take]) as u32,
        })
    }

    /// Element with encoded index `v` in `0..q`.
    pub fn from_index(spec: &Arc<FieldSpec>, v: u64) -> Self {
        assert!(v < spec.q, "index out of range");
        FieldElement {
            spec: spec.clone(),
            v: v as u32,
        }
    }

    /// The generator `t` of the extension (equals `0`-th power basis for d = 1).
    pub fn generator(spec: &Arc<FieldSpec>) -> Self {
        if spec.d == 1 {
            Self::zero(spec)
        } else {
            FieldElement {
                spec: spec.clone(),
                v: spec.p as u32,
            }
        }
    }

    pub fn all(spec: &Arc<FieldSpec>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..spec.q).map(move |v| Self::from_index(spec, v))
    }

    /// `1, t, ..., t^{d-1}`: an `F_p`-basis.
    pub fn basis(spec: &Arc<FieldSpec>) -> Vec<FieldElement> {
        (0..spec.d).map(|k| Self::from_index(spec, spec.p.pow(k))).collect()
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn index(&self) -> u64 {
        self.v as u64
    }

    pub fn digits(&self) -> Vec<u64> {
        self.spec.digits_of(self.v as u64)
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn frobenius(&self) -> Self {
        self.pow(self.spec.p)
    }

    /// The unique `p`-th root (the field is perfect).
    pub fn pth_root(&self) -> Self {
        self.pow(self.spec.q / self.spec.p)
    }

    /// The unique `p^r`-th root.
    pub fn pth_root_iter(&self, r: u32) -> Self {
        let mut x = self.clone();
        for _ in 0..r {
            x = x.pth_root();
        }
        x
    }

    fn with(&self, v: u64) -> Self {
        FieldElement {
            spec: self.spec.clone(),
            v: v as u32,
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && (Arc::ptr_eq(&self.spec, &other.spec) || self.spec.same(&other.spec))
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.v.cmp(&other.v)
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.d == 1 {
            return write!(f, "{}", self.v);
        }
        let digits = self.digits();
        let mut first = true;
        for (k, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{}", c)?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{}*t", c)?,
                (k, 1) => write!(f, "t^{}", k)?,
                (k, c) => write!(f, "{}*t^{}", c, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FieldElement {
    /// True when the printed form has more than one term (needs parentheses
    /// as a coefficient).
    pub fn is_compound(&self) -> bool {
        self.spec.d > 1 && self.digits().iter().filter(|&&c| c != 0).count() > 1
    }
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        self.with(0)
    }

    fn one_like(&self) -> Self {
        self.with(1)
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_ring(rhs));
        let p = self.spec.p;
        if self.spec.d == 1 {
            return self.with((self.v as u64 + rhs.v as u64) % p);
        }
        let (mut a, mut b) = (self.v as u64, rhs.v as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.d {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        self.with(out)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        let p = self.spec.p;
        if self.spec.d == 1 {
            return self.with((p - self.v as u64) % p);
        }
        let mut a = self.v as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.d {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        self.with(out)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.v == 0 || rhs.v == 0 {
            return self.with(0);
        }
        let order = self.spec.q - 1;
        let l = (self.spec.log[self.v as usize] as u64 + self.spec.log[rhs.v as usize] as u64) % order;
        self.with(self.spec.exp[l as usize] as u64)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(self.spec.p)).to_u64().unwrap();
        self.with(r)
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let order = self.spec.q - 1;
        let l = self.spec.log[self.v as usize] as u64;
        Some(self.with(self.spec.exp[((order - l) % order) as usize] as u64))
    }

    fn char_p(&self) -> Option<u64> {
        Some(self.spec.p)
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || self.spec.same(&other.spec)
    }

    fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return self.with(1);
        }
        if self.v == 0 {
            return self.with(0);
        }
        let order = self.spec.q - 1;
        let l = (self.spec.log[self.v as usize] as u128 * e as u128 % order as u128) as u64;
        self.with(self.spec.exp[l as usize] as u64)
    }
}
