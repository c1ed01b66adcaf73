//! Universal Witt polynomials over the integers.
//!
//! Variables are interleaved: `X_i` has index `2i` and `Y_i` index `2i + 1`,
//! so the polynomials for length `m` only mention the first `2m` variables
//! and a longer law set restricts to a shorter one.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Monomial = Vec<u32>;

/// A sparse polynomial with integer coefficients in `nvars` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        if k.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        IntPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::constant(self.nvars, BigInt::one());
        let mut base = self.clone();
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

    /// Exact division of every coefficient by `d`.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.terms.insert(e.clone(), q);
        }
        Some(out)
    }

    /// Coefficients reduced into `[0, p)`, zero terms dropped.
    fn reduce_mod(&self, p: u64) -> Vec<(Monomial, u64)> {
        let pb = BigInt::from(p);
        self.terms
            .iter()
            .filter_map(|(e, c)| {
                let r = c.mod_floor(&pb).to_u64().unwrap();
                (r != 0).then(|| (e.clone(), r))
            })
            .collect()
    }
}

/// A polynomial prepared for evaluation in some ring.
#[derive(Debug)]
struct Compiled {
    /// `(monomial as (var, exp) pairs, coefficient)`.
    terms: Vec<(Vec<(usize, u32)>, BigInt)>,
    max_exp: Vec<u32>,
}

impl Compiled {
    fn from_terms(nvars: usize, it: impl Iterator<Item = (Monomial, BigInt)>) -> Self {
        let mut max_exp = vec![0u32; nvars];
        let terms = it
            .map(|(e, c)| {
                let sparse: Vec<(usize, u32)> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| {
                        max_exp[i] = max_exp[i].max(x);
                        (i, x)
                    })
                    .collect();
                (sparse, c)
            })
            .collect();
        Compiled { terms, max_exp }
    }
}

/// Evaluates several compiled polynomials at a common point, sharing the
/// table of variable powers.
fn eval_many<R: crate::algebra::ring::Ring>(polys: &[Compiled], vals: &[R]) -> Vec<R> {
    let template = &vals[0];
    let nvars = vals.len();
    let mut max_exp = vec![0u32; nvars];
    for p in polys {
        for (i, &e) in p.max_exp.iter().enumerate().take(nvars) {
            max_exp[i] = max_exp[i].max(e);
        }
    }
    let powers: Vec<Vec<R>> = vals
        .iter()
        .zip(&max_exp)
        .map(|(v, &e)| {
            let mut row = Vec::with_capacity(e as usize + 1);
            row.push(v.one_like());
            for k in 1..=e as usize {
                let next = row[k - 1].mul(v);
                row.push(next);
            }
            row
        })
        .collect();
    polys
        .iter()
        .map(|poly| {
            let mut acc = template.zero_like();
            for (mono, c) in &poly.terms {
                // No shortcut on zero factors: a zero series may still carry
                // finite precision that the product has to inherit.
                let mut t: Option<R> = None;
                for &(i, e) in mono {
                    let f = &powers[i][e as usize];
                    t = Some(match t {
                        None => f.clone(),
                        Some(x) => x.mul(f),
                    });
                }
                let t = t.unwrap_or_else(|| template.one_like());
                let term = if c.is_one() {
                    t
                } else if (-c).is_one() {
                    t.neg()
                } else {
                    t.mul(&template.from_int_like(c))
                };
                acc = acc.add(&term);
            }
            acc
        })
        .collect()
}

/// Ghost polynomial `w_n = sum_{i <= n} p^i Z_i^{p^{n-i}}` in the variables
/// `Z_i = var(offset + stride * i)`.
fn ghost_poly(p: u64, n: usize, nvars: usize, offset: usize, stride: usize) -> IntPoly {
    let mut acc = IntPoly::zero(nvars);
    for i in 0..=n {
        let z = IntPoly::var(nvars, offset + stride * i);
        let e = p.pow((n - i) as u32);
        acc = acc.add(&z.pow(e).scale(&BigInt::from(p).pow(i as u32)));
    }
    acc
}

/// Solves `sum_{i <= n} p^i Q_i^{p^{n-i}} = target_n` for `Q_n`.
fn ghost_solve(p: u64, targets: &[IntPoly]) -> Result<Vec<IntPoly>> {
    let mut out: Vec<IntPoly> = Vec::with_capacity(targets.len());
    for (n, target) in targets.iter().enumerate() {
        let mut rest = target.clone();
        for (i, qi) in out.iter().enumerate() {
            let e = p.pow((n - i) as u32);
            rest = rest.sub(&qi.pow(e).scale(&BigInt::from(p).pow(i as u32)));
        }
        let pn = BigInt::from(p).pow(n as u32);
        let qn = rest.div_exact(&pn).ok_or(Error::Divisibility {
            index: n,
            power: n as u32,
        })?;
        out.push(qn);
    }
    Ok(out)
}

/// Checks `sum_i p^i Q_i^{p^{n-i}} == target_n` for every `n`.
fn ghost_identity_holds(p: u64, qs: &[IntPoly], targets: &[IntPoly]) -> bool {
    targets.iter().enumerate().all(|(n, target)| {
        let mut acc = IntPoly::zero(target.nvars);
        for (i, qi) in qs.iter().take(n + 1).enumerate() {
            let e = p.pow((n - i) as u32);
            acc = acc.add(&qi.pow(e).scale(&BigInt::from(p).pow(i as u32)));
        }
        &acc == target
    })
}

/// Which universal law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Sum,
    Product,
    Negation,
}

/// The sum, product and negation polynomials for a fixed `(p, m)`.
#[derive(Debug)]
pub struct WittLaws {
    p: u64,
    m: usize,
    sum: OnceLock<LawSet>,
    product: OnceLock<LawSet>,
    negation: OnceLock<LawSet>,
}

#[derive(Debug)]
struct LawSet {
    polys: Vec<IntPoly>,
    integral: Vec<Compiled>,
    mod_p: Vec<Compiled>,
}

impl LawSet {
    fn new(p: u64, polys: Vec<IntPoly>) -> Self {
        let integral = polys
            .iter()
            .map(|q| Compiled::from_terms(q.nvars, q.terms.iter().map(|(e, c)| (e.clone(), c.clone()))))
            .collect();
        let mod_p = polys
            .iter()
            .map(|q| Compiled::from_terms(q.nvars, q.reduce_mod(p).into_iter().map(|(e, c)| (e, BigInt::from(c)))))
            .collect();
        LawSet { polys, integral, mod_p }
    }
}

/// Laws are cached per `(p, m)`; population is synchronized through the
/// mutex around the map and the `OnceLock`s inside each entry.
type LawCache = Mutex<HashMap<(u64, usize), Arc<WittLaws>>>;

static CACHE: OnceLock<LawCache> = OnceLock::new();

/// Lengths up to which the ghost identities are re-verified symbolically
/// after construction.
const VERIFY_UP_TO: usize = 4;

impl WittLaws {
    pub fn get(p: u64, m: usize) -> Arc<WittLaws> {
        let map = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().expect("law cache poisoned");
        guard
            .entry((p, m))
            .or_insert_with(|| {
                Arc::new(WittLaws {
                    p,
                    m,
                    sum: OnceLock::new(),
                    product: OnceLock::new(),
                    negation: OnceLock::new(),
                })
            })
            .clone()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.m
    }

    fn build(&self, law: Law) -> LawSet {
        let (p, m) = (self.p, self.m);
        let nvars = 2 * m;
        let targets: Vec<IntPoly> = (0..m)
            .map(|n| {
                let gx = ghost_poly(p, n, nvars, 0, 2);
                match law {
                    Law::Sum => gx.add(&ghost_poly(p, n, nvars, 1, 2)),
                    Law::Product => gx.mul(&ghost_poly(p, n, nvars, 1, 2)),
                    Law::Negation => gx.scale(&BigInt::from(-1)),
                }
            })
            .collect();
        let polys = ghost_solve(p, &targets).expect("Witt polynomials are integral (Witt's theorem)");
        if m <= VERIFY_UP_TO {
            assert!(
                ghost_identity_holds(p, &polys, &targets),
                "ghost identity failed for {:?}, p = {}, m = {}",
                law,
                p,
                m
            );
        }
        LawSet::new(p, polys)
    }

    fn set(&self, law: Law) -> &LawSet {
        let cell = match law {
            Law::Sum => &self.sum,
            Law::Product => &self.product,
            Law::Negation => &self.negation,
        };
        cell.get_or_init(|| self.build(law))
    }

    /// The integral polynomials of a law.
    pub fn polynomials(&self, law: Law) -> &[IntPoly] {
        &self.set(law).polys
    }

    /// Evaluates the law at interleaved arguments `(x_0, y_0, x_1, y_1, ...)`
    /// (for negation the `y_i` are ignored and may be anything).
    ///
    /// Over `F_p`-algebras the coefficients are pre-reduced modulo `p`.
    pub fn eval<R: crate::algebra::ring::Ring>(&self, law: Law, args: &[R]) -> Vec<R> {
        let set = self.set(law);
        let compiled = if args[0].char_p() == Some(self.p) {
            &set.mod_p
        } else {
            &set.integral
        };
        eval_many(compiled, args)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sum_polynomials_p2() {
        let laws = WittLaws::get(2, 2);
        let s = laws.polynomials(Law::Sum);
        // S_1 = X_1 + Y_1 - X_0 Y_0
        let x0 = IntPoly::var(4, 0);
        let y0 = IntPoly::var(4, 1);
        let expect = IntPoly::var(4, 2).add(&IntPoly::var(4, 3)).sub(&x0.mul(&y0));
        assert_eq!(s[1], expect);
    }

    #[test]
    fn negation_is_componentwise_for_odd_p() {
        let laws = WittLaws::get(3, 3);
        for (i, n) in laws.polynomials(Law::Negation).iter().enumerate() {
            assert_eq!(n, &IntPoly::var(6, 2 * i).scale(&BigInt::from(-1)));
        }
    }

    #[test]
    fn laws_build_for_length_four() {
        for p in [2u64, 3] {
            let laws = WittLaws::get(p, 4);
            assert_eq!(laws.polynomials(Law::Sum).len(), 4);
            assert_eq!(laws.polynomials(Law::Product).len(), 4);
        }
    }
}
