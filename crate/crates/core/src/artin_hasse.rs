//! The Artin–Hasse series `F(u) = exp(-sum_s u^{p^s}/p^s)` and the
//! isomorphism `prod_{i < n, p ∤ i} W_{r_i}(k') -> V_(n)(k')`,
//! `(a_i) -> prod_i E(a_i u^i)`, together with its greedy inverse.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::field::{FieldElement, FieldSpec};
use crate::algebra::ring::{rational_mod_p, Ring};
use crate::algebra::unit::PrincipalUnit;
use crate::error::{Error, Result};
use crate::witt::{check_length, WittVector};

/// Coefficients of `exp(sign * sum_{p^s < n} u^{p^s}/p^s)` over `Q`, via
/// `k e_k = sign * sum_s e_{k - p^s}`.
pub fn exp_series_rational(p: u64, n: usize, sign: i64) -> Vec<BigRational> {
    let mut e: Vec<BigRational> = Vec::with_capacity(n);
    if n == 0 {
        return e;
    }
    e.push(BigRational::one());
    for k in 1..n {
        let mut acc = BigRational::zero();
        let mut ps = 1usize;
        while ps <= k {
            acc += &e[k - ps];
            ps *= p as usize;
        }
        let scale = BigRational::new(BigInt::from(sign), BigInt::from(k as u64));
        e.push(acc * scale);
    }
    e
}

fn reduce_all(p: u64, xs: &[BigRational]) -> Result<Vec<u64>> {
    xs.iter()
        .enumerate()
        .map(|(k, x)| {
            rational_mod_p(x, p).ok_or_else(|| {
                Error::Invalid(format!(
                    "coefficient {} of the Artin–Hasse series has denominator divisible by {}",
                    k, p
                ))
            })
        })
        .collect()
}

struct Tables {
    f: Vec<u64>,
    g: Vec<u64>,
}

static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Tables>>>> = OnceLock::new();

fn tables(p: u64, n: usize) -> Result<Arc<Tables>> {
    let map = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = map.lock().expect("cache poisoned");
        if let Some(t) = guard.get(&p) {
            if t.f.len() >= n {
                return Ok(t.clone());
            }
        }
    }
    // Compute outside the lock; a concurrent duplicate computation is
    // harmless since both produce identical tables.
    let len = n.max(64);
    let t = Arc::new(Tables {
        f: reduce_all(p, &exp_series_rational(p, len, -1))?,
        g: reduce_all(p, &exp_series_rational(p, len, 1))?,
    });
    let mut guard = map.lock().expect("cache poisoned");
    let entry = guard.entry(p).or_insert_with(|| t.clone());
    if entry.f.len() < len {
        *entry = t.clone();
    }
    Ok(entry.clone())
}

/// The first `n` coefficients of `F(u)` reduced modulo `p`.
pub fn artin_hasse_f(p: u64, n: usize) -> Result<Vec<u64>> {
    Ok(tables(p, n)?.f[..n].to_vec())
}

/// The first `n` coefficients of `F(u)^{-1} = exp(+sum_s u^{p^s}/p^s)` mod `p`.
pub fn artin_hasse_inverse(p: u64, n: usize) -> Result<Vec<u64>> {
    Ok(tables(p, n)?.g[..n].to_vec())
}

fn as_field(spec: &Arc<FieldSpec>, xs: &[u64]) -> Vec<FieldElement> {
    xs.iter().map(|&c| FieldElement::from_int(spec, c as i64)).collect()
}

/// Least `r` with `p^r >= n / i`, i.e. `i p^r >= n`.
pub fn r_i(p: u64, n: usize, i: usize) -> usize {
    let mut r = 0;
    let mut x = i as u128;
    while x < n as u128 {
        x *= p as u128;
        r += 1;
    }
    r
}

/// The slots `(i, r_i)` for `1 <= i < n`, `p ∤ i`.
pub fn slots(p: u64, n: usize) -> Vec<(usize, usize)> {
    (1..n)
        .filter(|i| !(*i as u64).is_multiple_of(p))
        .map(|i| (i, r_i(p, n, i)))
        .collect()
}

/// `E(a u^i) = prod_s F(a_s u^{i p^s})` at level `n`.
pub fn unit_from_witt(a: &WittVector<FieldElement>, i: usize, n: usize) -> Result<PrincipalUnit> {
    let p = a.p();
    if i == 0 || i >= n {
        return Err(Error::Invalid(format!("exponent {} outside 1..{}", i, n)));
    }
    if (i as u64).is_multiple_of(p) {
        return Err(Error::Invalid(format!("exponent {} is divisible by p = {}", i, p)));
    }
    let r = r_i(p, n, i);
    if a.len() != r {
        return Err(Error::LengthMismatch(a.len(), r));
    }
    let spec = a.comps()[0].spec().clone();
    let f = as_field(&spec, &artin_hasse_f(p, n)?);
    let mut out = PrincipalUnit::one(&spec, n);
    let mut j = i;
    for c in a.comps() {
        if !c.is_zero() {
            out.mul_series_at(&f, c, j);
        }
        j *= p as usize;
    }
    Ok(out)
}

/// A principal unit written as `prod_i E(a_i u^i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitDecomposition {
    pub p: u64,
    pub n: usize,
    /// Only nonzero slots are stored.
    pub slots: BTreeMap<usize, WittVector<FieldElement>>,
}

impl UnitDecomposition {
    /// Multiplies the slots back together.
    pub fn reassemble(&self, spec: &Arc<FieldSpec>) -> Result<PrincipalUnit> {
        let mut out = PrincipalUnit::one(spec, self.n);
        for (&i, a) in &self.slots {
            out = out.mul(&unit_from_witt(a, i, self.n)?)?;
        }
        Ok(out)
    }

    /// Slotwise Witt sum (the group law transported from `V_(n)`).
    pub fn add(&self, rhs: &Self, spec: &Arc<FieldSpec>) -> Result<Self> {
        if self.n != rhs.n || self.p != rhs.p {
            return Err(Error::LengthMismatch(self.n, rhs.n));
        }
        let mut slots = BTreeMap::new();
        for (i, r) in self::slots(self.p, self.n) {
            let zero = WittVector::zero(self.p, r, &FieldElement::zero(spec))?;
            let a = self.slots.get(&i).unwrap_or(&zero);
            let b = rhs.slots.get(&i).unwrap_or(&zero);
            let s = a.add(b)?;
            if !s.is_zero() {
                slots.insert(i, s);
            }
        }
        Ok(UnitDecomposition {
            p: self.p,
            n: self.n,
            slots,
        })
    }
}

/// Greedy inverse of the Artin–Hasse isomorphism.
///
/// The lowest nonzero coefficient `c u^j` of the remaining unit fixes the
/// slot `i = j / p^s` (`p ∤ i`) and the Witt component `s`: since
/// `F(b u^j) = 1 - b u^j + O(u^{j+1})`, the component is `b = -c`, and
/// dividing by `F(b u^j)` clears degree `j` without touching lower degrees.
pub fn decompose_unit(v: &PrincipalUnit) -> Result<UnitDecomposition> {
    let spec = v.spec().clone();
    let p = spec.p();
    let n = v.level();
    let zero = FieldElement::zero(&spec);
    for (_, r) in slots(p, n) {
        check_length(r)?;
    }
    let g = as_field(&spec, &artin_hasse_inverse(p, n)?);
    let mut comps: BTreeMap<usize, Vec<FieldElement>> = BTreeMap::new();
    let mut h = v.clone();
    for j in 1..n {
        let c = h.coeffs()[j].clone();
        if c.is_zero() {
            continue;
        }
        let (mut i, mut s) = (j, 0usize);
        while (i as u64).is_multiple_of(p) {
            i /= p as usize;
            s += 1;
        }
        let b = c.neg();
        let r = r_i(p, n, i);
        comps.entry(i).or_insert_with(|| vec![zero.clone(); r])[s] = b.clone();
        h.mul_series_at(&g, &b, j);
    }
    debug_assert!(h.is_one());
    let slots = comps
        .into_iter()
        .map(|(i, c)| Ok((i, WittVector::new(p, c)?)))
        .collect::<Result<_>>()?;
    Ok(UnitDecomposition { p, n, slots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng as _, SeedableRng};

    #[test]
    fn first_order_and_inverse() {
        for p in [2u64, 3, 5, 7] {
            let f = artin_hasse_f(p, 2).unwrap();
            assert_eq!(f, vec![1, p - 1]);
            let fr = exp_series_rational(p, 40, -1);
            let gr = exp_series_rational(p, 40, 1);
            for k in 0..40 {
                let mut acc = BigRational::zero();
                for i in 0..=k {
                    acc += &fr[i] * &gr[k - i];
                }
                assert_eq!(
                    acc,
                    if k == 0 {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                );
            }
        }
    }

    #[test]
    fn slot_lengths_sum_to_dimension() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..=200 {
                let total: usize = slots(p, n).iter().map(|(_, r)| r).sum();
                assert_eq!(total, n - 1, "p = {}, n = {}", p, n);
            }
        }
        assert_eq!(slots(2, 4), vec![(1, 2), (3, 1)]);
        assert_eq!(slots(2, 7), vec![(1, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn teichmuller_first_order() {
        let k = FieldSpec::prime(5).unwrap();
        let c = FieldElement::from_int(&k, 3);
        let a = WittVector::teichmuller(5, c.clone(), 1).unwrap();
        let e = unit_from_witt(&a, 1, 2).unwrap();
        assert_eq!(e.coeffs()[1], c.neg());
    }

    #[test]
    fn decomposition_examples() {
        let k = FieldSpec::prime(2).unwrap();
        let one = PrincipalUnit::one(&k, 5);
        assert!(decompose_unit(&one).unwrap().slots.is_empty());

        let v = PrincipalUnit::from_coeffs(&k, &[FieldElement::one(&k), FieldElement::one(&k)], 2).unwrap();
        let d = decompose_unit(&v).unwrap();
        assert_eq!(d.slots.len(), 1);
        assert_eq!(d.slots[&1].comps(), &[FieldElement::one(&k)]);
    }

    #[test]
    fn roundtrip_and_homomorphism_small() {
        let mut rng = StdRng::seed_from_u64(7);
        for p in [2u64, 3, 5] {
            let k = FieldSpec::prime(p).unwrap();
            for n in [2usize, 4, 8, 9] {
                for _ in 0..20 {
                    let mut rand_unit = || {
                        let mut c = vec![FieldElement::one(&k)];
                        c.extend((1..n).map(|_| FieldElement::from_int(&k, rng.gen_range(0..p as i64))));
                        PrincipalUnit::from_coeffs(&k, &c, n).unwrap()
                    };
                    let (v, w) = (rand_unit(), rand_unit());
                    let dv = decompose_unit(&v).unwrap();
                    assert_eq!(dv.reassemble(&k).unwrap(), v);
                    let dw = decompose_unit(&w).unwrap();
                    let dvw = decompose_unit(&v.mul(&w).unwrap()).unwrap();
                    assert_eq!(dvw, dv.add(&dw, &k).unwrap());
                }
            }
        }
    }
}
