//! Rational functions in one variable over `F_{p^d}` and their expansions
//! at points of the projective line.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::field::{FieldElement, FieldSpec};
use super::laurent::LaurentSeries;
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

pub type FPoly = Poly<FieldElement>;

/// A `k'`-rational point of `P^1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PointOfP1 {
    Finite(FieldElement),
    Infinity,
}

impl PointOfP1 {
    pub fn is_infinity(&self) -> bool {
        matches!(self, PointOfP1::Infinity)
    }
}

impl PartialOrd for PointOfP1 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite points by encoded index, infinity last.
impl Ord for PointOfP1 {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PointOfP1::Finite(a), PointOfP1::Finite(b)) => a.cmp(b),
            (PointOfP1::Finite(_), PointOfP1::Infinity) => Ordering::Less,
            (PointOfP1::Infinity, PointOfP1::Finite(_)) => Ordering::Greater,
            (PointOfP1::Infinity, PointOfP1::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for PointOfP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointOfP1::Finite(a) => write!(f, "{}", a),
            PointOfP1::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for PointOfP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    num: FPoly,
    den: FPoly,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl RationalFunction {
    pub fn new(num: FPoly, den: FPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero_from(den.template()));
        }
        let g = num.gcd(&den)?;
        let (n, _) = num.div_rem(&g)?;
        let (d, _) = den.div_rem(&g)?;
        let lead = d.leading().unwrap().inv().expect("field");
        Ok(RationalFunction {
            num: n.scale(&lead),
            den: d.scale(&lead),
        })
    }

    pub fn from_poly(p: FPoly) -> Self {
        let one = FPoly::constant(p.template().one_like());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(FPoly::constant(c))
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        Self::zero_from(&FieldElement::zero(spec))
    }

    fn zero_from(t: &FieldElement) -> Self {
        RationalFunction {
            num: FPoly::zero(t),
            den: FPoly::constant(t.one_like()),
        }
    }

    /// The coordinate function `x`.
    pub fn x(spec: &Arc<FieldSpec>) -> Self {
        Self::from_poly(FPoly::x(&FieldElement::zero(spec)))
    }

    pub fn num(&self) -> &FPoly {
        &self.num
    }

    pub fn den(&self) -> &FPoly {
        &self.den
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.num.template().spec()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `deg num - deg den` (so `deg(fg) = deg f + deg g`); `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        Some(n - self.den.degree().unwrap() as i64)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            self.one_like().div(&self.pow(e.unsigned_abs()))
        }
    }

    /// Formal derivative `d/dx`.
    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// Value at a finite point, `None` at a pole.
    pub fn eval(&self, a: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(a);
        let inv = d.inv()?;
        Some(self.num.eval(a).mul(&inv))
    }

    /// Order of vanishing at a point (negative at poles); `None` for zero.
    pub fn ord_at(&self, at: &PointOfP1) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        match at {
            PointOfP1::Infinity => Some(-self.degree().unwrap()),
            PointOfP1::Finite(a) => {
                Some(root_multiplicity(&self.num, a) as i64 - root_multiplicity(&self.den, a) as i64)
            }
        }
    }

    /// Expansion in the uniformizer `u = x - a` (or `u = 1/x` at infinity)
    /// with `rel` correct terms starting at the valuation.
    pub fn laurent_expand(&self, at: &PointOfP1, rel: i64) -> LaurentSeries<FieldElement> {
        let zero = self.num.template().clone();
        if self.is_zero() {
            return LaurentSeries::exact(0, Vec::new(), &zero);
        }
        let (n, d, shift) = match at {
            PointOfP1::Finite(a) => (self.num.shift(a), self.den.shift(a), 0i64),
            PointOfP1::Infinity => {
                let dn = self.num.degree().unwrap();
                let dd = self.den.degree().unwrap();
                (self.num.reversed(dn), self.den.reversed(dd), dd as i64 - dn as i64)
            }
        };
        let on = n.order().unwrap();
        let od = d.order().unwrap();
        let n = FPoly::new(n.coeffs()[on..].to_vec(), &zero);
        let d = FPoly::new(d.coeffs()[od..].to_vec(), &zero);
        let val = shift + on as i64 - od as i64;
        let ns = LaurentSeries::exact(0, n.coeffs().to_vec(), &zero);
        let ds = LaurentSeries::exact(0, d.coeffs().to_vec(), &zero);
        if d.degree() == Some(0) {
            let c = d.coeff(0).inv().expect("nonzero");
            return ns.scale(&c).shift(val);
        }
        let rel = rel.max(1);
        ns.div_to(&ds, rel).expect("unit denominator").shift(val)
    }

    /// Distinct `k'`-rational roots of the numerator and denominator, plus
    /// infinity; errors if either has an irreducible factor of degree > 1.
    pub fn critical_points(&self) -> Result<Vec<PointOfP1>> {
        let mut pts = rational_roots(&self.num)?;
        pts.extend(rational_roots(&self.den)?);
        let mut pts: Vec<PointOfP1> = pts.into_iter().map(PointOfP1::Finite).collect();
        pts.push(PointOfP1::Infinity);
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    /// Finite poles (roots of the denominator), which must be rational.
    pub fn finite_poles(&self) -> Result<Vec<FieldElement>> {
        rational_roots(&self.den)
    }
}

/// Multiplicity of `a` as a root of `f` (`f` nonzero).
pub fn root_multiplicity(f: &FPoly, a: &FieldElement) -> usize {
    f.shift(a).order().unwrap_or(0)
}

/// Distinct roots of `f` in `k'`; errors when `f` does not split over `k'`.
pub fn rational_roots(f: &FPoly) -> Result<Vec<FieldElement>> {
    let deg = match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    let spec = f.template().spec().clone();
    let mut roots = Vec::new();
    let mut total = 0usize;
    for a in FieldElement::all(&spec) {
        if f.eval(&a).is_zero() {
            total += root_multiplicity(f, &a);
            roots.push(a);
        }
    }
    if total != deg {
        return Err(Error::NonRational(format!(
            "{} has a root outside F_{}",
            poly_to_string(f),
            spec.size()
        )));
    }
    Ok(roots)
}

fn coeff_string(c: &FieldElement) -> String {
    if c.is_compound() {
        format!("({})", c)
    } else {
        c.to_string()
    }
}

pub fn poly_to_string(f: &FPoly) -> String {
    let mut out = String::new();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        let mon = match k {
            0 => String::new(),
            1 => "x".to_string(),
            k => format!("x^{}", k),
        };
        if k == 0 {
            out.push_str(&coeff_string(c));
        } else if c.is_one() {
            out.push_str(&mon);
        } else {
            out.push_str(&format!("{}*{}", coeff_string(c), mon));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = poly_to_string(&self.num);
        if self.is_polynomial() {
            return write!(f, "{}", n);
        }
        let d = poly_to_string(&self.den);
        let wrap = |s: String, poly: &FPoly| {
            let terms = poly.coeffs().iter().filter(|c| !c.is_zero()).count();
            if terms > 1 {
                format!("({})", s)
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl Ring for RationalFunction {
    fn zero_like(&self) -> Self {
        Self::zero_from(self.num.template())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.num.template().one_like())
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone()).expect("nonzero");
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
        .expect("nonzero")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero")
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::constant(self.num.template().from_int_like(n))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()).expect("nonzero"))
        }
    }

    fn char_p(&self) -> Option<u64> {
        Some(self.spec().p())
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.num.template().same_ring(other.num.template())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(k: &Arc<FieldSpec>, c: &[i64]) -> FPoly {
        let z = FieldElement::zero(k);
        FPoly::new(c.iter().map(|&n| FieldElement::from_int(k, n)).collect(), &z)
    }

    #[test]
    fn normalization() {
        let k = FieldSpec::prime(5).unwrap();
        // (x+1)^2 / (x^2 + 2x + 1) = 1
        let f = RationalFunction::new(poly(&k, &[1, 2, 1]), poly(&k, &[1, 2, 1])).unwrap();
        assert_eq!(f, RationalFunction::constant(FieldElement::one(&k)));
        // 2x / (2x + 2) = x / (x + 1)
        let g = RationalFunction::new(poly(&k, &[0, 2]), poly(&k, &[2, 2])).unwrap();
        assert_eq!(g.num(), &poly(&k, &[0, 1]));
        assert_eq!(g.den(), &poly(&k, &[1, 1]));
        assert!(RationalFunction::new(poly(&k, &[1]), poly(&k, &[])).is_err());
    }

    #[test]
    fn degree_is_additive() {
        let k = FieldSpec::prime(3).unwrap();
        let f = RationalFunction::new(poly(&k, &[1, 0, 1]), poly(&k, &[0, 1])).unwrap();
        let g = RationalFunction::new(poly(&k, &[2]), poly(&k, &[1, 1, 1, 1])).unwrap();
        assert_eq!(f.mul(&g).degree(), Some(f.degree().unwrap() + g.degree().unwrap()));
    }

    #[test]
    fn expansions() {
        let k = FieldSpec::prime(5).unwrap();
        let x = RationalFunction::x(&k);
        let inv_x = x.inv().unwrap();
        let s = inv_x.laurent_expand(&PointOfP1::Infinity, 5);
        assert_eq!(s.valuation(), Some(1));
        assert!(s.coeff(1).unwrap().is_one());
        assert!(s.coeff(2).unwrap().is_zero());

        let one = FieldElement::one(&k);
        let f = x.sub(&RationalFunction::constant(one.clone())).inv().unwrap();
        let s = f.laurent_expand(&PointOfP1::Finite(one), 5);
        assert_eq!(s.valuation(), Some(-1));
        assert!(s.residue().unwrap().is_one());
    }

    #[test]
    fn expansion_matches_long_division_over_f2() {
        // x/(x+1) at 0 is u + u^2 + u^3 + ... over F_2.
        let k = FieldSpec::prime(2).unwrap();
        let x = RationalFunction::x(&k);
        let f = x.div(&x.add(&x.one_like())).unwrap();
        let s = f.laurent_expand(&PointOfP1::Finite(FieldElement::zero(&k)), 12);
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.prec(), 13);
        for j in 1..13 {
            assert!(s.coeff(j).unwrap().is_one());
        }
    }

    #[test]
    fn non_split_denominator_is_rejected() {
        let k = FieldSpec::prime(3).unwrap();
        let f = RationalFunction::new(poly(&k, &[1]), poly(&k, &[1, 0, 1])).unwrap();
        assert!(matches!(f.critical_points(), Err(Error::NonRational(_))));
    }
}
