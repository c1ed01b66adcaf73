//! Class reduction and conductors for torsors under
//! `W_m[F^r]` (local-local), `Z/p^m` (Artin–Schreier–Witt) and `mu_n`.
//!
//! Local-local classes live in `W_m(L) / F^r W_m(L)` (resolution
//! `0 -> W_m[F^r] -> W_m -F^r-> W_m -> 0`). Étale classes live in
//! `W_m(L) / (F - 1) W_m(L)`. Kummer classes are `L^x` modulo `n`-th powers.

use std::fmt;

use crate::algebra::field::FieldElement;
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::rational::{PointOfP1, RationalFunction};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::localsym::{self, pole_orders, LocalWittElement, Series, SymbolOptions};
use crate::witt::WittVector;

/// One factor of a finite commutative group scheme of supported shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `W_m[F^r]`; `alpha_{p^r} = W_1[F^r]`.
    LocalLocal { m: usize, r: u32 },
    /// `Z/p^m`.
    EtaleAsw { m: usize },
    /// `mu_n`.
    Kummer { n: u64 },
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::LocalLocal { m, r } => write!(f, "W{}[F^{}]", m, r),
            Factor::EtaleAsw { m } => write!(f, "Z/p^{}", m),
            Factor::Kummer { n } => write!(f, "mu_{}", n),
        }
    }
}

impl Factor {
    /// Witt length of the data for this factor (Kummer data is a function).
    pub fn witt_length(&self) -> Option<usize> {
        match *self {
            Factor::LocalLocal { m, .. } | Factor::EtaleAsw { m } => Some(m),
            Factor::Kummer { .. } => None,
        }
    }
}

/// A product of factors over a fixed prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub p: u64,
    pub factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn new(p: u64, factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Invalid("empty group".into()));
        }
        for f in &factors {
            match *f {
                Factor::LocalLocal { m, r } => {
                    if m == 0 || r == 0 {
                        return Err(Error::Invalid(format!("{}: need m >= 1 and r >= 1", f)));
                    }
                    crate::witt::check_length(m)?;
                }
                Factor::EtaleAsw { m } => {
                    if m == 0 {
                        return Err(Error::Invalid("Z/p^m needs m >= 1".into()));
                    }
                    crate::witt::check_length(m)?;
                }
                Factor::Kummer { n } => {
                    if n < 2 {
                        return Err(Error::Invalid("mu_n needs n >= 2".into()));
                    }
                }
            }
        }
        Ok(GroupSpec { p, factors })
    }

    /// Parses `"W2[F^1]"`, `"alpha_p"`, `"Z/2^2"`, `"Z/p"`, `"mu_3"`, and
    /// products joined by `*`.
    pub fn parse(text: &str, p: u64) -> Result<Self> {
        let mut factors = Vec::new();
        for part in text.split('*') {
            factors.push(parse_factor(part.trim(), p)?);
        }
        Self::new(p, factors)
    }

    pub fn is_local_local(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::LocalLocal { .. }))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

fn bad_group(text: &str) -> Error {
    Error::Invalid(format!(
        "unrecognised group '{}': expected Wm[F^r], alpha_p, Z/p^m or mu_n",
        text
    ))
}

fn parse_factor(text: &str, p: u64) -> Result<Factor> {
    let t = text.replace(' ', "");
    if t == "alpha_p" || t == "G_a[F]" {
        return Ok(Factor::LocalLocal { m: 1, r: 1 });
    }
    if let Some(rest) = t.strip_prefix("mu_") {
        let n = rest.parse::<u64>().map_err(|_| bad_group(text))?;
        return Ok(Factor::Kummer { n });
    }
    if let Some(rest) = t.strip_prefix("Z/") {
        let (base, exp) = match rest.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad_group(text))?),
            None => (rest, 1),
        };
        if base != "p" && base.parse::<u64>().ok() != Some(p) {
            return Err(Error::Invalid(format!("{}: base must be p = {}", text, p)));
        }
        return Ok(Factor::EtaleAsw { m: exp });
    }
    if let Some(rest) = t.strip_prefix('W') {
        let (m, tail) = rest.split_once('[').ok_or_else(|| bad_group(text))?;
        let m = m.parse::<usize>().map_err(|_| bad_group(text))?;
        let tail = tail.strip_suffix(']').ok_or_else(|| bad_group(text))?;
        let r = match tail {
            "F" => 1,
            _ => tail
                .strip_prefix("F^")
                .and_then(|x| x.parse::<u32>().ok())
                .ok_or_else(|| bad_group(text))?,
        };
        return Ok(Factor::LocalLocal { m, r });
    }
    Err(bad_group(text))
}

/// `V^i [c u^k]` of length `m`.
fn monomial_witt(p: u64, m: usize, i: usize, c: FieldElement, k: i64) -> Result<LocalWittElement> {
    let zero = c.zero_like();
    let comps = (0..m)
        .map(|j| {
            if j == i {
                LaurentSeries::monomial(c.clone(), k)
            } else {
                LaurentSeries::exact(0, Vec::new(), &zero)
            }
        })
        .collect();
    WittVector::new(p, comps)
}

/// Upper bound on reduction steps; each step lowers a pole order, so this
/// is only a guard against malformed input.
const MAX_REDUCTION_STEPS: usize = 100_000;

/// Greedy pole reduction of a local-local or étale class.
///
/// Repeatedly picks the first component whose leading polar term `c u^{-d}`
/// is an `F^r`-image (`p^r | d`; for étale classes `r = 1`), and removes it
/// by subtracting `F^r(h)` (resp. `F(h) - h`) for
/// `h = V^i [c^{1/p^r} u^{-d/p^r}]`. Components before `i` are untouched and
/// the pole order of component `i` drops, so the process terminates.
pub fn reduce_class(factor: &Factor, f: &LocalWittElement) -> Result<LocalWittElement> {
    let (r, etale) = match *factor {
        Factor::LocalLocal { r, .. } => (r, false),
        Factor::EtaleAsw { .. } => (1, true),
        Factor::Kummer { .. } => return Err(Error::Invalid("Kummer classes are reduced by valuation only".into())),
    };
    let p = f.p();
    let m = f.len();
    let pr = p.pow(r) as i64;
    let mut f = f.clone();
    for _ in 0..MAX_REDUCTION_STEPS {
        // The principal part of every component must be fully known.
        if let Some(s) = f.comps().iter().find(|s| s.prec() < 1) {
            return Err(Error::Precision {
                needed: 1,
                available: s.prec(),
            });
        }
        let target = f.comps().iter().enumerate().find_map(|(i, s)| {
            let v = s.valuation()?;
            (v < 0 && (-v) % pr == 0).then_some((i, v))
        });
        let Some((i, v)) = target else {
            return Ok(f);
        };
        let c = f.comps()[i].coeff(v)?;
        let root = c.pth_root_iter(r);
        let h = monomial_witt(p, m, i, root, v / pr)?;
        let image = monomial_witt(p, m, i, c, v)?;
        f = if etale {
            // F(h) - h with F(V^i[y]) = V^i[y^p]
            f.sub(&image.sub(&h)?)?
        } else {
            f.sub(&image)?
        };
    }
    Err(Error::Invalid("class reduction did not terminate".into()))
}

/// The classical Artin–Schreier–Witt conductor of a reduced class:
/// 0 if integral, else `1 + max_i p^{m-1-i} d_i`.
pub fn asw_conductor_of_reduced(f: &LocalWittElement) -> i64 {
    if localsym::is_integral(f) {
        0
    } else {
        localsym::pole_bound(f)
    }
}

/// Conductor of a local class for one factor, plus the reduced
/// representative.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalConductor {
    pub conductor: i64,
    pub reduced: Option<LocalWittElement>,
}

/// Local data for one factor.
#[derive(Clone, Debug)]
pub enum LocalData {
    Witt(LocalWittElement),
    Kummer(Series),
}

/// Conductor of a class for a single factor, computed on series data.
pub fn factor_conductor(factor: &Factor, data: &LocalData, opts: &SymbolOptions) -> Result<LocalConductor> {
    match (factor, data) {
        (Factor::LocalLocal { .. }, LocalData::Witt(f)) => {
            let red = reduce_class(factor, f)?;
            let c = localsym::fil_level_with(&red, opts)?;
            Ok(LocalConductor {
                conductor: c,
                reduced: Some(red),
            })
        }
        (Factor::EtaleAsw { .. }, LocalData::Witt(f)) => {
            let red = reduce_class(factor, f)?;
            Ok(LocalConductor {
                conductor: asw_conductor_of_reduced(&red),
                reduced: Some(red),
            })
        }
        (Factor::Kummer { n }, LocalData::Kummer(g)) => {
            let v = g.valuation().ok_or(Error::DivisionByZero)?;
            Ok(LocalConductor {
                conductor: if v.rem_euclid(*n as i64) != 0 { 1 } else { 0 },
                reduced: None,
            })
        }
        _ => Err(Error::DomainMismatch),
    }
}

/// Global data for one factor: Witt vectors of rational functions, or a
/// rational function for Kummer factors.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorData {
    Witt(WittVector<RationalFunction>),
    Kummer(RationalFunction),
}

/// Maximum number of precision doublings before giving up.
const MAX_PRECISION_ROUNDS: u32 = 6;

/// Conductor of global data at a point, expanding with increasing precision
/// until every step of reduction and symbol evaluation is certified.
pub fn conductor_at(
    factor: &Factor,
    data: &FactorData,
    at: &PointOfP1,
    opts: &SymbolOptions,
) -> Result<LocalConductor> {
    match data {
        FactorData::Kummer(g) => {
            if g.is_zero() {
                return Err(Error::DivisionByZero);
            }
            factor_conductor(factor, &LocalData::Kummer(g.laurent_expand(at, 1)), opts)
        }
        FactorData::Witt(f) => {
            if Some(f.len()) != factor.witt_length() {
                return Err(Error::LengthMismatch(f.len(), factor.witt_length().unwrap_or(0)));
            }
            // Reduction multiplies by polar monomials, which costs absolute
            // precision; start with room for the largest such loss.
            let p = f.p() as i64;
            let total_pole: i64 = f.comps().iter().map(|c| c.ord_at(at).map_or(0, |v| (-v).max(0))).sum();
            let mut extra = opts.extra + total_pole * p.pow(f.len() as u32) + 4;
            let mut last = None;
            for _ in 0..MAX_PRECISION_ROUNDS {
                let local = localsym::expand_witt_at(f, at, 2 * opts.scale, extra)?;
                match factor_conductor(factor, &LocalData::Witt(local), opts) {
                    Err(e @ Error::Precision { .. }) => {
                        last = Some(e);
                        extra = extra * 2 + 8;
                    }
                    other => return other,
                }
            }
            Err(last.unwrap())
        }
    }
}

/// Maximum of the factor conductors of a class under a product group.
pub fn local_conductor(group: &GroupSpec, data: &[FactorData], at: &PointOfP1, opts: &SymbolOptions) -> Result<i64> {
    if data.len() != group.factors.len() {
        return Err(Error::LengthMismatch(data.len(), group.factors.len()));
    }
    let mut best = 0;
    for (factor, d) in group.factors.iter().zip(data) {
        best = best.max(conductor_at(factor, d, at, opts)?.conductor);
    }
    Ok(best)
}

/// The pole orders of a reduced representative (useful in reports).
pub fn reduced_pole_orders(f: &LocalWittElement) -> Vec<i64> {
    pole_orders(f)
}

/// Brute-force oracle for length-1 classes: the least `fil_level` over all
/// representatives `f - F^r(h)` (resp. `f - (h^p - h)` for `Z/p`) with `h`
/// ranging over every polar part `sum_{k=1}^{max_pole} b_k u^{-k}`.
pub fn exhaustive_conductor(factor: &Factor, f: &LocalWittElement, max_pole: u32, opts: &SymbolOptions) -> Result<i64> {
    let (q, etale) = match *factor {
        Factor::LocalLocal { m: 1, r } => (f.p().pow(r), false),
        Factor::EtaleAsw { m: 1 } => (f.p(), true),
        _ => {
            return Err(Error::Invalid(
                "the exhaustive oracle handles length-1 factors only".into(),
            ))
        }
    };
    if f.len() != 1 {
        return Err(Error::LengthMismatch(f.len(), 1));
    }
    let f0 = &f.comps()[0];
    let spec = f0.template().spec().clone();
    let zero = FieldElement::zero(&spec);
    let size = spec.size();
    let total = size
        .checked_pow(max_pole)
        .ok_or_else(|| Error::Invalid("search grid too large".into()))?;
    let mut best = i64::MAX;
    for code in 0..total {
        let coeffs: Vec<FieldElement> = (0..max_pole)
            .map(|k| FieldElement::from_index(&spec, (code / size.pow(k)) % size))
            .collect();
        // coefficients of u^{-max_pole}, ..., u^{-1}
        let h = LaurentSeries::exact(-(max_pole as i64), coeffs.into_iter().rev().collect(), &zero);
        let image = if etale { h.pow(q).sub(&h) } else { h.pow(q) };
        let rep = WittVector::new(f.p(), vec![f0.sub(&image)])?;
        best = best.min(localsym::fil_level_with(&rep, opts)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;
    use crate::algebra::parse::parse_rational;
    use std::sync::Arc;

    fn at0(k: &Arc<FieldSpec>) -> PointOfP1 {
        PointOfP1::Finite(FieldElement::zero(k))
    }

    fn witt(k: &Arc<FieldSpec>, exprs: &[&str]) -> FactorData {
        FactorData::Witt(WittVector::new(k.p(), exprs.iter().map(|e| parse_rational(e, k).unwrap()).collect()).unwrap())
    }

    fn cond(k: &Arc<FieldSpec>, group: &str, exprs: &[&str]) -> i64 {
        let g = GroupSpec::parse(group, k.p()).unwrap();
        conductor_at(&g.factors[0], &witt(k, exprs), &at0(k), &SymbolOptions::default())
            .unwrap()
            .conductor
    }

    #[test]
    fn parse_groups() {
        let g = GroupSpec::parse("W2[F^1] * Z/2^2 * mu_3", 2).unwrap();
        assert_eq!(
            g.factors,
            vec![
                Factor::LocalLocal { m: 2, r: 1 },
                Factor::EtaleAsw { m: 2 },
                Factor::Kummer { n: 3 }
            ]
        );
        assert!(GroupSpec::parse("Z/3", 2).is_err());
        assert!(GroupSpec::parse("W0[F]", 2).is_err());
        assert_eq!(
            GroupSpec::parse("alpha_p", 5).unwrap().factors,
            vec![Factor::LocalLocal { m: 1, r: 1 }]
        );
    }

    #[test]
    fn reduction_examples() {
        let k = FieldSpec::prime(2).unwrap();
        let s = |e: &str| parse_rational(e, &k).unwrap().laurent_expand(&at0(&k), 20);
        let alpha = Factor::LocalLocal { m: 1, r: 1 };
        let asw = Factor::EtaleAsw { m: 1 };
        let w = |e: &str| WittVector::new(2, vec![s(e)]).unwrap();
        assert!(reduce_class(&alpha, &w("1/u^2")).unwrap().comps()[0].is_zero());
        let r = reduce_class(&asw, &w("1/u^2")).unwrap();
        assert_eq!(r.comps()[0].valuation(), Some(-1));
        assert_eq!(r.comps()[0].coeff(-1).unwrap(), FieldElement::one(&k));
        let r = reduce_class(&alpha, &w("1/u^3")).unwrap();
        assert_eq!(r.comps()[0].valuation(), Some(-3));
    }

    #[test]
    fn conductor_examples() {
        for p in [2u64, 3, 5] {
            let k = FieldSpec::prime(p).unwrap();
            assert_eq!(cond(&k, "alpha_p", &["1/u"]), 2);
            assert_eq!(cond(&k, "Z/p", &["1/u"]), 2);
            assert_eq!(cond(&k, "alpha_p", &["1+u"]), 0);
            assert_eq!(cond(&k, "Z/p", &["u/(1+u)"]), 0);
        }
        let k = FieldSpec::prime(2).unwrap();
        assert_eq!(cond(&k, "alpha_p", &["1/u^3"]), 4);
        assert_eq!(cond(&k, "Z/p", &["1/u^2"]), 2);
        assert_eq!(cond(&k, "W1[F^2]", &["1/u^3"]), 4);
        assert_eq!(cond(&k, "W1[F^2]", &["1/u^2"]), 2);
    }

    #[test]
    fn greedy_matches_oracle_small() {
        let k = FieldSpec::prime(2).unwrap();
        let o = SymbolOptions::default();
        for e in ["1/u^4+1/u^3", "1/u^2+1/u", "1/u^4", "1/u^3+1/u^2"] {
            let f = parse_rational(e, &k).unwrap();
            let s = WittVector::new(2, vec![f.laurent_expand(&at0(&k), 40)]).unwrap();
            for factor in [Factor::LocalLocal { m: 1, r: 1 }, Factor::EtaleAsw { m: 1 }] {
                let greedy = conductor_at(&factor, &FactorData::Witt(f_witt(&f)), &at0(&k), &o).unwrap();
                let oracle = exhaustive_conductor(&factor, &s, 4, &o).unwrap();
                assert_eq!(greedy.conductor, oracle, "{} {}", factor, e);
            }
        }
    }

    fn f_witt(f: &RationalFunction) -> WittVector<RationalFunction> {
        WittVector::new(f.spec().p(), vec![f.clone()]).unwrap()
    }

    #[test]
    fn kummer() {
        let k = FieldSpec::prime(3).unwrap();
        let g = GroupSpec::parse("mu_2", 3).unwrap();
        let data = FactorData::Kummer(parse_rational("x", &k).unwrap());
        let c = conductor_at(&g.factors[0], &data, &at0(&k), &SymbolOptions::default()).unwrap();
        assert_eq!(c.conductor, 1);
        let data = FactorData::Kummer(parse_rational("x^2", &k).unwrap());
        let c = conductor_at(&g.factors[0], &data, &at0(&k), &SymbolOptions::default()).unwrap();
        assert_eq!(c.conductor, 0);
    }
}
