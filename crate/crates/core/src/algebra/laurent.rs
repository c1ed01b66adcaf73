//! Truncated Laurent series `sum_{k >= v} c_k u^k + O(u^N)` with tracked
//! absolute precision.

use std::fmt;

use num_bigint::BigInt;

use super::ring::{PDivisible, Ring};
use crate::error::{Error, Result};

/// Precision value used for exact (finitely supported) series.
pub const INF_PREC: i64 = i64::MAX / 4;

fn clamp(prec: i64) -> i64 {
    prec.min(INF_PREC)
}

/// A Laurent series over `R` known modulo `u^prec`.
///
/// `coeffs[k]` is the coefficient of `u^(val + k)`; indices from
/// `val + coeffs.len()` up to `prec` are known to be zero. The leading
/// coefficient is nonzero unless the series is (tracked) zero, in which case
/// `coeffs` is empty and `val == prec`.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries<R: Ring> {
    val: i64,
    coeffs: Vec<R>,
    prec: i64,
    zero: R,
}

impl<R: Ring> fmt::Debug for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})u^{}", c, self.val + k as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        if self.prec < INF_PREC {
            write!(f, " + O(u^{})", self.prec)?;
        }
        Ok(())
    }
}

impl<R: Ring> LaurentSeries<R> {
    /// Series with `coeffs[k]` the coefficient of `u^(start + k)`, known
    /// modulo `u^prec`. Coefficients at or beyond `prec` are discarded.
    pub fn new(start: i64, coeffs: Vec<R>, prec: i64, zero: &R) -> Self {
        let prec = clamp(prec);
        let mut s = LaurentSeries {
            val: start,
            coeffs,
            prec,
            zero: zero.zero_like(),
        };
        s.normalize();
        s
    }

    /// A finitely supported series, exact in every degree.
    pub fn exact(start: i64, coeffs: Vec<R>, zero: &R) -> Self {
        Self::new(start, coeffs, INF_PREC, zero)
    }

    pub fn zero_with_prec(prec: i64, template: &R) -> Self {
        Self::new(prec, Vec::new(), prec, template)
    }

    pub fn monomial(c: R, k: i64) -> Self {
        let z = c.zero_like();
        Self::exact(k, vec![c], &z)
    }

    /// The uniformizer `u`.
    pub fn u(template: &R) -> Self {
        Self::monomial(template.one_like(), 1)
    }

    fn normalize(&mut self) {
        if self.val < self.prec {
            let keep = (self.prec - self.val).min(self.coeffs.len() as i64).max(0) as usize;
            self.coeffs.truncate(keep);
        } else {
            self.coeffs.clear();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn template(&self) -> &R {
        &self.zero
    }

    /// Absolute precision: the series is known modulo `u^prec`.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= INF_PREC
    }

    /// Valuation, or `None` when the series is zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Number of known coefficients beyond the leading one.
    pub fn relative_prec(&self) -> i64 {
        self.prec.saturating_sub(self.val)
    }

    /// Coefficient of `u^k`, or a precision error when it is not known.
    pub fn coeff(&self, k: i64) -> Result<R> {
        if k >= self.prec {
            return Err(Error::Precision {
                needed: k + 1,
                available: self.prec,
            });
        }
        Ok(self.coeff_unchecked(k))
    }

    /// Coefficient of `u^k`, treating unknown terms as zero.
    pub fn coeff_unchecked(&self, k: i64) -> R {
        if k < self.val {
            return self.zero.clone();
        }
        self.coeffs
            .get((k - self.val) as usize)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    /// `(exponent, coefficient)` pairs of the nonzero known terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.val + k as i64, c))
    }

    /// Exponent just past the last stored coefficient.
    pub fn support_end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn truncate(&self, prec: i64) -> Self {
        Self::new(self.val, self.coeffs.clone(), prec.min(self.prec), &self.zero)
    }

    /// The principal part `sum_{k < 0} c_k u^k` (exact).
    pub fn principal_part(&self) -> Self {
        let n = (-self.val).clamp(0, self.coeffs.len() as i64) as usize;
        Self::exact(self.val, self.coeffs[..n].to_vec(), &self.zero)
    }

    /// Coefficient of `u^{-1}`: the residue of the differential `s du`.
    pub fn residue(&self) -> Result<R> {
        self.coeff(-1)
    }

    /// `u^k * self`.
    pub fn shift(&self, k: i64) -> Self {
        let prec = if self.is_exact() { INF_PREC } else { self.prec + k };
        Self::new(self.val + k, self.coeffs.clone(), prec, &self.zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(
            self.val,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
            self.prec,
            &self.zero,
        )
    }

    pub fn map<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> LaurentSeries<S> {
        LaurentSeries::new(self.val, self.coeffs.iter().map(f).collect(), self.prec, zero)
    }

    /// `d/du`.
    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.mul(&c.from_i64_like(self.val + k as i64)))
            .collect();
        let prec = if self.is_exact() { INF_PREC } else { self.prec - 1 };
        Self::new(self.val - 1, v, prec, &self.zero)
    }

    /// Substitutes `u -> u^k` for `k >= 1`.
    pub fn inflate(&self, k: u64) -> Self {
        let k = k as i64;
        let mut v = Vec::with_capacity(self.coeffs.len() * k as usize);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                v.extend(std::iter::repeat_n(self.zero.clone(), k as usize - 1));
            }
            v.push(c.clone());
        }
        let prec = if self.is_exact() { INF_PREC } else { self.prec * k };
        Self::new(self.val * k, v, prec, &self.zero)
    }

    /// Multiplicative inverse keeping `rel` relative terms (capped by the
    /// known relative precision). Requires an invertible leading coefficient.
    pub fn inverse(&self, rel: i64) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let rel = rel.min(self.relative_prec()).max(1);
        let lead_inv = self.coeffs[0]
            .inv()
            .ok_or_else(|| Error::NotUnit(format!("{:?}", self.coeffs[0])))?;
        let n = rel as usize;
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = self.zero.clone();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out.push(acc.mul(&lead_inv).neg());
        }
        Ok(Self::new(-v, out, -v + rel, &self.zero))
    }

    /// `self / rhs` with relative precision the smaller of the operands'.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let rel = if rhs.is_exact() && self.is_exact() {
            return Err(Error::Invalid(
                "exact series division needs an explicit precision; use div_to".into(),
            ));
        } else {
            self.relative_prec().min(rhs.relative_prec())
        };
        self.div_to(rhs, rel)
    }

    /// `self / rhs` keeping at most `rel` relative terms.
    pub fn div_to(&self, rhs: &Self, rel: i64) -> Result<Self> {
        let inv = rhs.inverse(rel)?;
        let q = self.mul(&inv);
        let v = q.val;
        Ok(q.truncate(v.saturating_add(rel)))
    }

    /// Logarithmic derivative `g'/g`, keeping `rel` relative terms of `1/g`.
    pub fn dlog(&self, rel: i64) -> Result<Self> {
        Ok(self.derivative().mul(&self.inverse(rel)?))
    }
}

impl<R: Ring> Ring for LaurentSeries<R> {
    fn zero_like(&self) -> Self {
        Self::exact(0, Vec::new(), &self.zero)
    }

    fn one_like(&self) -> Self {
        Self::exact(0, vec![self.zero.one_like()], &self.zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        // Empty series carry `val == prec`, which must not widen the range.
        let nonempty = [self, rhs].into_iter().filter(|s| !s.coeffs.is_empty());
        let (lo, hi) = nonempty.fold((prec, i64::MIN), |(lo, hi), s| (lo.min(s.val), hi.max(s.support_end())));
        let hi = hi.min(prec);
        if hi <= lo {
            return Self::zero_with_prec(prec, &self.zero);
        }
        let v = (lo..hi)
            .map(|k| self.coeff_unchecked(k).add(&rhs.coeff_unchecked(k)))
            .collect();
        Self::new(lo, v, prec, &self.zero)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        Self::new(
            self.val,
            self.coeffs.iter().map(|c| c.neg()).collect(),
            self.prec,
            &self.zero,
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        let prec = clamp(self.val.saturating_add(rhs.prec).min(rhs.val.saturating_add(self.prec)));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero_with_prec(prec, &self.zero);
        }
        let lo = self.val + rhs.val;
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let n = ((prec - lo).max(0) as usize).min(full);
        let mut v = vec![self.zero.clone(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(lo, v, prec, &self.zero)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::exact(0, vec![self.zero.from_int_like(n)], &self.zero)
    }

    /// Only monomials have exact inverses; use [`LaurentSeries::inverse`]
    /// for truncated inversion.
    fn inv(&self) -> Option<Self> {
        if self.coeffs.len() == 1 && self.is_exact() {
            let c = self.coeffs[0].inv()?;
            Some(Self::exact(-self.val, vec![c], &self.zero))
        } else if !self.is_exact() {
            self.inverse(self.relative_prec()).ok()
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

impl<R: PDivisible> PDivisible for LaurentSeries<R> {
    fn div_p_pow(&self, p: u64, k: u32) -> Option<Self> {
        let v: Option<Vec<R>> = self.coeffs.iter().map(|c| c.div_p_pow(p, k)).collect();
        v.map(|v| Self::new(self.val, v, self.prec, &self.zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{FieldElement, FieldSpec};

    fn ser(k: &std::sync::Arc<FieldSpec>, start: i64, c: &[i64], prec: i64) -> LaurentSeries<FieldElement> {
        let z = FieldElement::zero(k);
        LaurentSeries::new(
            start,
            c.iter().map(|&n| FieldElement::from_int(k, n)).collect(),
            prec,
            &z,
        )
    }

    #[test]
    fn residues() {
        let k = FieldSpec::prime(5).unwrap();
        assert_eq!(ser(&k, -1, &[1], 3).residue().unwrap(), FieldElement::one(&k));
        // u^-2 + 3u
        let s = ser(&k, -2, &[1, 0, 0, 3], 4);
        assert!(s.residue().unwrap().is_zero());
        // unknown residue
        assert!(matches!(ser(&k, -3, &[1], -1).residue(), Err(Error::Precision { .. })));
    }

    #[test]
    fn dlog_residue_of_one_minus_cu() {
        // (u^-1) * d(1 - cu)/(1 - cu) has residue -c.
        let k = FieldSpec::prime(7).unwrap();
        let c = FieldElement::from_int(&k, 3);
        let g = ser(&k, 0, &[1, -3], INF_PREC);
        let d = g.dlog(10).unwrap();
        let f = ser(&k, -1, &[1], INF_PREC);
        assert_eq!(f.mul(&d).residue().unwrap(), c.neg());
    }

    #[test]
    fn precision_of_products_and_quotients() {
        let k = FieldSpec::prime(3).unwrap();
        let a = ser(&k, -2, &[1, 1], 3); // rel 5
        let b = ser(&k, 1, &[1, 2, 1], 4); // rel 3
        let ab = a.mul(&b);
        assert_eq!(ab.valuation(), Some(-1));
        assert_eq!(ab.prec(), -2 + 4);
        let q = a.div(&b).unwrap();
        assert_eq!(q.valuation(), Some(-3));
        assert_eq!(q.relative_prec(), 3);
        // q * b recovers a to the shared precision
        let back = q.mul(&b);
        assert_eq!(back.truncate(0), a.truncate(0));
    }

    #[test]
    fn exact_derivative_has_no_residue() {
        let k = FieldSpec::prime(2).unwrap();
        let s = ser(&k, -5, &[1, 1, 0, 1, 1, 1, 1], INF_PREC);
        assert!(s.derivative().residue().unwrap().is_zero());
    }
}
