//! Global geometry on `X = P^1`: differential forms `h dx`, their orders
//! at points (including infinity), the exterior derivative, the Cartier
//! operator, and moduli (effective divisors).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{FieldElement, FieldSpec};
use crate::algebra::parse::{parse_point, split_top_level};
use crate::algebra::poly::Poly;
use crate::algebra::rational::{PointOfP1, RationalFunction};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

/// The form `h dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialForm {
    coeff: RationalFunction,
}

impl DifferentialForm {
    pub fn new(coeff: RationalFunction) -> Self {
        DifferentialForm { coeff }
    }

    /// The coefficient `h` of `h dx`.
    pub fn coeff(&self) -> &RationalFunction {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `ord_x(h dx)`; at infinity `dx = -u^{-2} du` contributes `-2`.
    pub fn ord_at(&self, at: &PointOfP1) -> Result<i64> {
        let v = self
            .coeff
            .ord_at(at)
            .ok_or_else(|| Error::Invalid("order of the zero form is undefined".into()))?;
        Ok(if at.is_infinity() { v - 2 } else { v })
    }

    /// `g^p ω`-style scaling by a function.
    pub fn scale(&self, g: &RationalFunction) -> Self {
        DifferentialForm::new(self.coeff.mul(g))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        DifferentialForm::new(self.coeff.add(&rhs.coeff))
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "({})*dx", self.coeff)
        }
    }
}

/// `df = f' dx`.
pub fn d(f: &RationalFunction) -> DifferentialForm {
    DifferentialForm::new(f.derivative())
}

/// The Cartier operator.
///
/// With `h = N / B` write `h = N B^{p-1} / B^p` and split
/// `N B^{p-1} = sum_i x^i P_i(x^p)`; then
/// `C(h dx) = P_{p-1}^{(1/p)} / B dx`, where `P^{(1/p)}` takes `p`-th roots of
/// the coefficients. No factorisation of `B` is needed.
pub fn cartier(omega: &DifferentialForm) -> DifferentialForm {
    let h = &omega.coeff;
    let spec = h.spec().clone();
    if h.is_zero() {
        return omega.clone();
    }
    let p = spec.p() as usize;
    let zero = FieldElement::zero(&spec);
    let m = h.num().mul(&h.den().pow(p as u64 - 1));
    let coeffs: Vec<FieldElement> = m.coeffs().iter().skip(p - 1).step_by(p).map(|c| c.pth_root()).collect();
    let num = Poly::new(coeffs, &zero);
    DifferentialForm::new(RationalFunction::new(num, h.den().clone()).expect("nonzero denominator"))
}

/// Whether `ω` is killed by the Cartier operator (is exact).
pub fn is_alpha_p_form(omega: &DifferentialForm) -> bool {
    cartier(omega).is_zero()
}

/// An effective divisor `sum n_x x` with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Modulus {
    support: BTreeMap<PointOfP1, u64>,
}

impl Modulus {
    pub fn zero() -> Self {
        Modulus::default()
    }

    /// Builds a modulus, dropping zero multiplicities and summing repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (PointOfP1, u64)>) -> Self {
        let mut support = BTreeMap::new();
        for (x, n) in pairs {
            if n > 0 {
                *support.entry(x).or_insert(0) += n;
            }
        }
        Modulus { support }
    }

    /// `sum_{x in S} 1 x`.
    pub fn reduced(points: &[PointOfP1]) -> Self {
        Self::from_pairs(points.iter().map(|x| (x.clone(), 1)))
    }

    /// Parses `"0:4,inf:7"`; an empty string is the zero modulus.
    pub fn parse(text: &str, spec: &Arc<FieldSpec>) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Self::zero());
        }
        let mut pairs = Vec::new();
        for item in split_top_level(text, b',') {
            let (pt, mult) = item.rsplit_once(':').ok_or_else(|| {
                Error::Invalid(format!(
                    "modulus entry '{}' must look like point:multiplicity",
                    item.trim()
                ))
            })?;
            let mult = mult
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Invalid(format!("bad multiplicity in '{}'", item.trim())))?;
            let pt = parse_point(pt.trim(), spec)?;
            if pairs.iter().any(|(q, _)| q == &pt) {
                return Err(Error::Invalid(format!("point {} listed twice", pt)));
            }
            pairs.push((pt, mult));
        }
        Ok(Self::from_pairs(pairs))
    }

    pub fn get(&self, x: &PointOfP1) -> u64 {
        self.support.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PointOfP1, &u64)> + '_ {
        self.support.iter()
    }

    pub fn support(&self) -> Vec<PointOfP1> {
        self.support.keys().cloned().collect()
    }

    pub fn degree(&self) -> u64 {
        self.support.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Pointwise minimum.
    pub fn inf(&self, rhs: &Self) -> Self {
        Self::from_pairs(self.support.iter().map(|(x, &n)| (x.clone(), n.min(rhs.get(x)))))
    }

    /// Pointwise maximum.
    pub fn sup(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (x, &n) in &rhs.support {
            let e = out.support.entry(x.clone()).or_insert(0);
            *e = (*e).max(n);
        }
        out
    }

    /// Pointwise `self <= rhs`.
    pub fn le(&self, rhs: &Self) -> bool {
        self.support.iter().all(|(x, &n)| n <= rhs.get(x))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support.iter().map(|(x, n)| format!("{}*{}", n, x)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
