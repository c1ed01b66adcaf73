//! Principal units `(1 + u k'[[u]]) / (1 + u^n k'[[u]])`.

use std::fmt;
use std::sync::Arc;

use super::field::{FieldElement, FieldSpec};
use super::laurent::LaurentSeries;
use super::ring::Ring;
use crate::error::{Error, Result};

/// A principal unit at level `n`: coefficients `c_0 = 1, c_1, ..., c_{n-1}`.
#[derive(Clone, PartialEq)]
pub struct PrincipalUnit {
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for PrincipalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrincipalUnit(n={}, {:?})", self.level(), self.coeffs)
    }
}

impl PrincipalUnit {
    /// The unit `1` at level `n >= 1`.
    pub fn one(spec: &Arc<FieldSpec>, n: usize) -> Self {
        assert!(n >= 1, "level must be positive");
        let mut coeffs = vec![FieldElement::zero(spec); n];
        coeffs[0] = FieldElement::one(spec);
        PrincipalUnit { coeffs }
    }

    /// From coefficients `c_0, c_1, ...`; `c_0` must be 1. Terms at and
    /// beyond `u^n` are discarded, missing ones are zero.
    pub fn from_coeffs(spec: &Arc<FieldSpec>, coeffs: &[FieldElement], n: usize) -> Result<Self> {
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::NotUnit("constant term must be 1".into()));
        }
        let mut u = Self::one(spec, n);
        for (k, c) in coeffs.iter().enumerate().take(n).skip(1) {
            u.coeffs[k] = c.clone();
        }
        Ok(u)
    }

    /// From a series of valuation 0 with constant term 1, known to `u^n`.
    pub fn from_series(s: &LaurentSeries<FieldElement>, n: usize) -> Result<Self> {
        if s.valuation() != Some(0) {
            return Err(Error::NotUnit(format!("{:?} has nonzero valuation", s)));
        }
        if s.prec() < n as i64 {
            return Err(Error::Precision {
                needed: n as i64,
                available: s.prec(),
            });
        }
        let spec = s.template().spec().clone();
        let c: Vec<FieldElement> = (0..n as i64).map(|k| s.coeff_unchecked(k)).collect();
        Self::from_coeffs(&spec, &c, n)
    }

    pub fn level(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.coeffs[0].spec()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_series(&self) -> LaurentSeries<FieldElement> {
        LaurentSeries::new(0, self.coeffs.clone(), self.level() as i64, &self.coeffs[0].zero_like())
    }

    /// Truncated product; both factors must share the level.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.level() != rhs.level() {
            return Err(Error::LengthMismatch(self.level(), rhs.level()));
        }
        let n = self.level();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(PrincipalUnit { coeffs: out })
    }

    pub fn inv(&self) -> Self {
        let n = self.level();
        let mut out = vec![self.coeffs[0].zero_like(); n];
        out[0] = self.coeffs[0].one_like();
        for k in 1..n {
            let mut acc = self.coeffs[0].zero_like();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out[k] = acc.neg();
        }
        PrincipalUnit { coeffs: out }
    }

    /// Multiplies in place by `sum_k s_k (b u^j)^k` truncated at level `n`,
    /// where `s` is a power series given by its coefficients.
    pub fn mul_series_at(&mut self, s: &[FieldElement], b: &FieldElement, j: usize) {
        let n = self.level();
        let mut factor = vec![self.coeffs[0].zero_like(); n];
        let mut bk = b.one_like();
        for (k, sk) in s.iter().enumerate() {
            let idx = k * j;
            if idx >= n {
                break;
            }
            factor[idx] = sk.mul(&bk);
            bk = bk.mul(b);
        }
        let f = PrincipalUnit { coeffs: factor };
        *self = self.mul(&f).expect("same level");
    }
}
