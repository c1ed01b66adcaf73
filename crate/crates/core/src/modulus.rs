//! Global torsor classes over `U = P^1 \ S` and their minimal moduli.
//!
//! Classes are represented by regular data on `U`: for `W_m[F^r]` and
//! `Z/p^m` a Witt vector of functions regular on `U` (modulo `F^r`, resp.
//! `F - 1`, of regular Witt vectors), for `mu_n` a function invertible on
//! `U` modulo `n`-th powers. This uses the vanishing of coherent `H^1` on
//! the affine curve `U`.

use std::sync::Arc;

use crate::algebra::field::{FieldElement, FieldSpec};
use crate::algebra::rational::{rational_roots, PointOfP1, RationalFunction};
use crate::algebra::ring::Ring;
use crate::conductor::{conductor_at, Factor, FactorData, GroupSpec};
use crate::curve::{d, Modulus};
use crate::error::{Error, Result};
use crate::localsym::SymbolOptions;
use crate::witt::WittVector;

/// A class in `H^1_fppf(U, G)` given by regular data on `U = P^1 \ S`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalTorsorClass {
    group: GroupSpec,
    data: Vec<FactorData>,
    s: Vec<PointOfP1>,
    spec: Arc<FieldSpec>,
}

fn finite_points(s: &[PointOfP1]) -> impl Iterator<Item = &FieldElement> {
    s.iter().filter_map(|x| match x {
        PointOfP1::Finite(a) => Some(a),
        PointOfP1::Infinity => None,
    })
}

/// Roots of `f` must all be rational and lie in `S`.
fn roots_in_s(f: &crate::algebra::rational::FPoly, s: &[PointOfP1], what: &str) -> Result<()> {
    let roots = rational_roots(f)
        .map_err(|_| Error::NotRegular(format!("{} has non-rational points, which cannot lie in S", what)))?;
    for a in roots {
        if !finite_points(s).any(|b| b == &a) {
            return Err(Error::NotRegular(format!("{} at {} which is not in S", what, a)));
        }
    }
    Ok(())
}

fn check_regular(f: &RationalFunction, s: &[PointOfP1]) -> Result<()> {
    roots_in_s(f.den(), s, &format!("{} has a pole", f))?;
    if !s.contains(&PointOfP1::Infinity) && f.ord_at(&PointOfP1::Infinity).is_some_and(|v| v < 0) {
        return Err(Error::NotRegular(format!("{} has a pole at inf which is not in S", f)));
    }
    Ok(())
}

fn check_invertible(g: &RationalFunction, s: &[PointOfP1]) -> Result<()> {
    if g.is_zero() {
        return Err(Error::NotUnit("0".into()));
    }
    roots_in_s(g.num(), s, &format!("{} has a zero", g))?;
    roots_in_s(g.den(), s, &format!("{} has a pole", g))?;
    if !s.contains(&PointOfP1::Infinity) && g.ord_at(&PointOfP1::Infinity) != Some(0) {
        return Err(Error::NotRegular(format!(
            "{} has a zero or pole at inf which is not in S",
            g
        )));
    }
    Ok(())
}

impl GlobalTorsorClass {
    /// Validates lengths, field consistency and regularity on `U`.
    pub fn new(group: GroupSpec, data: Vec<FactorData>, s: Vec<PointOfP1>, spec: &Arc<FieldSpec>) -> Result<Self> {
        if data.len() != group.factors.len() {
            return Err(Error::LengthMismatch(data.len(), group.factors.len()));
        }
        if spec.p() != group.p {
            return Err(Error::DomainMismatch);
        }
        let mut s = s;
        s.sort();
        s.dedup();
        for (factor, d) in group.factors.iter().zip(&data) {
            match (factor, d) {
                (Factor::Kummer { .. }, FactorData::Kummer(g)) => {
                    if g.spec() != spec {
                        return Err(Error::DomainMismatch);
                    }
                    check_invertible(g, &s)?;
                }
                (Factor::Kummer { .. }, _) | (_, FactorData::Kummer(_)) => return Err(Error::DomainMismatch),
                (_, FactorData::Witt(f)) => {
                    if Some(f.len()) != factor.witt_length() {
                        return Err(Error::LengthMismatch(f.len(), factor.witt_length().unwrap_or(0)));
                    }
                    if f.p() != group.p {
                        return Err(Error::DomainMismatch);
                    }
                    for c in f.comps() {
                        if c.spec() != spec {
                            return Err(Error::DomainMismatch);
                        }
                        check_regular(c, &s)?;
                    }
                }
            }
        }
        Ok(GlobalTorsorClass {
            group,
            data,
            s,
            spec: spec.clone(),
        })
    }

    /// An `alpha_p`-class given by one regular function.
    pub fn alpha_p(f: RationalFunction, s: Vec<PointOfP1>) -> Result<Self> {
        let spec = f.spec().clone();
        let p = spec.p();
        let group = GroupSpec::new(p, vec![Factor::LocalLocal { m: 1, r: 1 }])?;
        Self::new(group, vec![FactorData::Witt(WittVector::new(p, vec![f])?)], s, &spec)
    }

    /// A `mu_n`-class given by one invertible function.
    pub fn kummer(n: u64, g: RationalFunction, s: Vec<PointOfP1>) -> Result<Self> {
        let spec = g.spec().clone();
        let group = GroupSpec::new(spec.p(), vec![Factor::Kummer { n }])?;
        Self::new(group, vec![FactorData::Kummer(g)], s, &spec)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn data(&self) -> &[FactorData] {
        &self.data
    }

    pub fn s(&self) -> &[PointOfP1] {
        &self.s
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    fn single(&self) -> (&Factor, &FactorData) {
        (&self.group.factors[0], &self.data[0])
    }
}

/// A minimal modulus together with what is known about triviality of the
/// class (`None` when undecided by the route used).
#[derive(Clone, Debug, PartialEq)]
pub struct ModulusResult {
    pub modulus: Modulus,
    pub trivial: Option<bool>,
}

/// Whether `f` lies in `k(x^{p^r})`, i.e. is a `p^r`-th power in `k(x)`.
pub fn is_pr_power(f: &RationalFunction, r: u32) -> bool {
    let q = f.spec().p().pow(r) as usize;
    let ok = |poly: &crate::algebra::rational::FPoly| {
        poly.coeffs().iter().enumerate().all(|(k, c)| k % q == 0 || c.is_zero())
    };
    ok(f.num()) && ok(f.den())
}

/// `sum_{x in S} max(0, -ord_x(df)) x`; the class is trivial iff `df = 0`.
pub fn alpha_p_modulus(class: &GlobalTorsorClass) -> Result<ModulusResult> {
    let (factor, data) = class.single();
    let f = match (factor, data, class.group.factors.len()) {
        (Factor::LocalLocal { m: 1, r: 1 }, FactorData::Witt(f), 1) => &f.comps()[0],
        _ => return Err(Error::Invalid("alpha_p_modulus needs a class for alpha_p".into())),
    };
    let omega = d(f);
    if omega.is_zero() {
        return Ok(ModulusResult {
            modulus: Modulus::zero(),
            trivial: Some(true),
        });
    }
    let mut pairs = Vec::new();
    for x in &class.s {
        let v = omega.ord_at(x)?;
        pairs.push((x.clone(), (-v).max(0) as u64));
    }
    Ok(ModulusResult {
        modulus: Modulus::from_pairs(pairs),
        trivial: Some(false),
    })
}

fn factor_modulus(factor: &Factor, data: &FactorData, s: &[PointOfP1], opts: &SymbolOptions) -> Result<Modulus> {
    let mut pairs = Vec::new();
    for x in s {
        let c = conductor_at(factor, data, x, opts)?.conductor;
        pairs.push((x.clone(), c as u64));
    }
    Ok(Modulus::from_pairs(pairs))
}

/// `sum_{x in S} c_x x` with `c_x` the local conductor of the expansion at
/// `x`, for groups whose factors are all local-local.
pub fn local_local_modulus(class: &GlobalTorsorClass, opts: &SymbolOptions) -> Result<ModulusResult> {
    if !class.group.is_local_local() {
        return Err(Error::Invalid("local_local_modulus needs a local-local group".into()));
    }
    let mut modulus = Modulus::zero();
    let mut trivial = true;
    for (factor, data) in class.group.factors.iter().zip(&class.data) {
        modulus = modulus.sup(&factor_modulus(factor, data, &class.s, opts)?);
        if let (Factor::LocalLocal { r, .. }, FactorData::Witt(f)) = (factor, data) {
            trivial &= f.comps().iter().all(|c| is_pr_power(c, *r));
        }
    }
    Ok(ModulusResult {
        modulus,
        trivial: Some(trivial),
    })
}

/// `sum_{x in S, n ∤ ord_x g} x`; always at most the reduced modulus.
pub fn kummer_modulus(class: &GlobalTorsorClass) -> Result<ModulusResult> {
    let (factor, data) = class.single();
    let (n, g) = match (factor, data, class.group.factors.len()) {
        (Factor::Kummer { n }, FactorData::Kummer(g), 1) => (*n as i64, g),
        _ => return Err(Error::Invalid("kummer_modulus needs a class for mu_n".into())),
    };
    let mut pairs = Vec::new();
    let mut all_divisible = true;
    for x in &class.s {
        let v = g.ord_at(x).ok_or(Error::DivisionByZero)?;
        let ramified = v.rem_euclid(n) != 0;
        all_divisible &= !ramified;
        pairs.push((x.clone(), ramified as u64));
    }
    // g = c * prod (x - a)^{e_a}; an n-th power iff all e_a are divisible by
    // n and c is an n-th power in k'.
    let trivial = all_divisible && {
        let c = g.num().leading().expect("nonzero").clone();
        FieldElement::all(g.spec()).any(|y| y.pow(n as u64) == c)
    };
    Ok(ModulusResult {
        modulus: Modulus::from_pairs(pairs),
        trivial: Some(trivial),
    })
}

/// `sum_{x in S} c_x x` with the classical Artin–Schreier–Witt conductor.
pub fn asw_modulus(class: &GlobalTorsorClass, opts: &SymbolOptions) -> Result<ModulusResult> {
    let (factor, data) = class.single();
    if !matches!(factor, Factor::EtaleAsw { .. }) || class.group.factors.len() != 1 {
        return Err(Error::Invalid("asw_modulus needs a class for Z/p^m".into()));
    }
    Ok(ModulusResult {
        modulus: factor_modulus(factor, data, &class.s, opts)?,
        trivial: None,
    })
}

/// The minimal modulus of any supported class: factorwise, then the
/// pointwise sup over factors.
pub fn minimal_modulus(class: &GlobalTorsorClass, opts: &SymbolOptions) -> Result<Modulus> {
    let mut out = Modulus::zero();
    for (factor, data) in class.group.factors.iter().zip(&class.data) {
        out = out.sup(&factor_modulus(factor, data, &class.s, opts)?);
    }
    Ok(out)
}

/// `P in F_m H^1`, i.e. `m >= m(P)` pointwise; `m` must be supported on `S`.
pub fn filtration_member(class: &GlobalTorsorClass, m: &Modulus, opts: &SymbolOptions) -> Result<bool> {
    if let Some(x) = m.support().into_iter().find(|x| !class.s.contains(x)) {
        return Err(Error::Invalid(format!("modulus point {} is not in S", x)));
    }
    Ok(minimal_modulus(class, opts)?.le(m))
}

/// `f_X + #S - 1`, the `Z/p^n`-rank of `H^1(U, mu_{p^n})`.
pub fn mu_rank(_p: u64, _n: u32, s_count: usize, f_x: u64) -> Result<u64> {
    if s_count == 0 {
        return Err(Error::Invalid("mu_rank needs S nonempty".into()));
    }
    Ok(f_x + s_count as u64 - 1)
}

/// Brute-force rank of `{g in O(U)^x}/(n-th powers, constants)` on `P^1`:
/// enumerate `g = prod_{a in S finite} (x - a)^{e_a}` for `0 <= e_a < 2n`,
/// record the residues of `ord_x g mod n` at every `x in S`, and return
/// `log_n` of the number of distinct classes.
pub fn mu_rank_brute_force(spec: &Arc<FieldSpec>, n: u64, s: &[PointOfP1]) -> Result<u32> {
    let finite: Vec<&FieldElement> = finite_points(s).collect();
    let range = 2 * n as usize;
    let total = range
        .checked_pow(finite.len() as u32)
        .ok_or_else(|| Error::Invalid("S too large".into()))?;
    let mut classes = std::collections::BTreeSet::new();
    for code in 0..total {
        let mut g = RationalFunction::constant(FieldElement::one(spec));
        let mut c = code;
        for a in &finite {
            let e = (c % range) as i64;
            c /= range;
            let lin = RationalFunction::x(spec).sub(&RationalFunction::constant((*a).clone()));
            g = g.mul(&lin.powi(e)?);
        }
        let key: Vec<i64> = s.iter().map(|x| g.ord_at(x).unwrap().rem_euclid(n as i64)).collect();
        classes.insert(key);
    }
    let mut rank = 0;
    let mut size = 1usize;
    while size < classes.len() {
        size *= n as usize;
        rank += 1;
    }
    if size != classes.len() {
        return Err(Error::Invalid(format!(
            "{} classes is not a power of {}",
            classes.len(),
            n
        )));
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_point_set, parse_rational};

    fn rf(k: &Arc<FieldSpec>, e: &str) -> RationalFunction {
        parse_rational(e, k).unwrap()
    }

    fn m(k: &Arc<FieldSpec>, t: &str) -> Modulus {
        Modulus::parse(t, k).unwrap()
    }

    #[test]
    fn alpha_p_examples() {
        let o = SymbolOptions::default();
        let k = FieldSpec::prime(3).unwrap();
        let s = parse_point_set("inf", &k).unwrap();
        let c = GlobalTorsorClass::alpha_p(rf(&k, "x^2"), s.clone()).unwrap();
        let r = alpha_p_modulus(&c).unwrap();
        assert_eq!(r.modulus, m(&k, "inf:3"));
        assert_eq!(r.trivial, Some(false));
        assert_eq!(local_local_modulus(&c, &o).unwrap().modulus, r.modulus);
        for p in [2u64, 3, 5] {
            let k = FieldSpec::prime(p).unwrap();
            let s = parse_point_set("inf", &k).unwrap();
            let c = GlobalTorsorClass::alpha_p(rf(&k, "x"), s.clone()).unwrap();
            assert_eq!(alpha_p_modulus(&c).unwrap().modulus, m(&k, "inf:2"));
            assert_eq!(local_local_modulus(&c, &o).unwrap().modulus, m(&k, "inf:2"));
            let c = GlobalTorsorClass::alpha_p(rf(&k, &format!("x^{}", p)), s.clone()).unwrap();
            let r = alpha_p_modulus(&c).unwrap();
            assert!(r.modulus.is_zero());
            assert_eq!(r.trivial, Some(true));
            assert_eq!(local_local_modulus(&c, &o).unwrap(), r);
        }
        let k = FieldSpec::prime(2).unwrap();
        let s = parse_point_set("0,inf", &k).unwrap();
        let c = GlobalTorsorClass::alpha_p(rf(&k, "1/x"), s).unwrap();
        let r = local_local_modulus(&c, &o).unwrap();
        assert_eq!(r.modulus.get(&PointOfP1::Infinity), 0);
        assert_eq!(r.modulus, m(&k, "0:2"));
    }

    #[test]
    fn alpha_p_squared() {
        let k = FieldSpec::prime(2).unwrap();
        let g = GroupSpec::parse("W1[F^2]", 2).unwrap();
        let f = FactorData::Witt(WittVector::new(2, vec![rf(&k, "x^3")]).unwrap());
        let c = GlobalTorsorClass::new(g, vec![f], parse_point_set("inf", &k).unwrap(), &k).unwrap();
        let r = local_local_modulus(&c, &SymbolOptions::default()).unwrap();
        assert_eq!(r.modulus, m(&k, "inf:4"));
    }

    #[test]
    fn regularity_is_checked() {
        let k = FieldSpec::prime(3).unwrap();
        let s = parse_point_set("inf", &k).unwrap();
        assert!(matches!(
            GlobalTorsorClass::alpha_p(rf(&k, "1/x"), s.clone()),
            Err(Error::NotRegular(_))
        ));
        assert!(GlobalTorsorClass::alpha_p(rf(&k, "x"), vec![PointOfP1::Finite(FieldElement::zero(&k))]).is_err());
        assert!(GlobalTorsorClass::alpha_p(rf(&k, "1/(x^2+1)"), s).is_err());
    }

    #[test]
    fn kummer_examples() {
        let k = FieldSpec::prime(3).unwrap();
        let c = GlobalTorsorClass::kummer(2, rf(&k, "x"), parse_point_set("0,inf", &k).unwrap()).unwrap();
        assert_eq!(kummer_modulus(&c).unwrap().modulus, m(&k, "0:1,inf:1"));
        let c = GlobalTorsorClass::kummer(2, rf(&k, "x^2"), parse_point_set("0,inf", &k).unwrap()).unwrap();
        let r = kummer_modulus(&c).unwrap();
        assert!(r.modulus.is_zero());
        assert_eq!(r.trivial, Some(true));
        let k = FieldSpec::prime(2).unwrap();
        let s = parse_point_set("0,1,inf", &k).unwrap();
        let c = GlobalTorsorClass::kummer(3, rf(&k, "x^2*(x-1)"), s).unwrap();
        assert_eq!(kummer_modulus(&c).unwrap().modulus, m(&k, "0:1,1:1"));
    }

    #[test]
    fn asw_examples() {
        let o = SymbolOptions::default();
        for p in [2u64, 3, 5] {
            let k = FieldSpec::prime(p).unwrap();
            let g = GroupSpec::parse("Z/p", p).unwrap();
            let f = FactorData::Witt(WittVector::new(p, vec![rf(&k, "x")]).unwrap());
            let c = GlobalTorsorClass::new(g, vec![f], parse_point_set("inf", &k).unwrap(), &k).unwrap();
            assert_eq!(asw_modulus(&c, &o).unwrap().modulus, m(&k, "inf:2"));
        }
        let k = FieldSpec::prime(2).unwrap();
        let g = GroupSpec::parse("Z/p", 2).unwrap();
        let f = FactorData::Witt(WittVector::new(2, vec![rf(&k, "x^2")]).unwrap());
        let c = GlobalTorsorClass::new(g.clone(), vec![f], parse_point_set("inf", &k).unwrap(), &k).unwrap();
        assert_eq!(asw_modulus(&c, &o).unwrap().modulus, m(&k, "inf:2"));
        let f = FactorData::Witt(WittVector::new(2, vec![rf(&k, "1")]).unwrap());
        let c = GlobalTorsorClass::new(g, vec![f], parse_point_set("inf", &k).unwrap(), &k).unwrap();
        assert!(asw_modulus(&c, &o).unwrap().modulus.is_zero());
    }

    #[test]
    fn mixed_group_is_pointwise_sup() {
        let k = FieldSpec::prime(2).unwrap();
        let g = GroupSpec::parse("alpha_p * mu_3", 2).unwrap();
        let data = vec![
            FactorData::Witt(WittVector::new(2, vec![rf(&k, "x^3")]).unwrap()),
            FactorData::Kummer(rf(&k, "x")),
        ];
        let c = GlobalTorsorClass::new(g, data, parse_point_set("0,inf", &k).unwrap(), &k).unwrap();
        let o = SymbolOptions::default();
        assert_eq!(minimal_modulus(&c, &o).unwrap(), m(&k, "0:1,inf:4"));
        assert!(filtration_member(&c, &m(&k, "0:1,inf:4"), &o).unwrap());
        assert!(!filtration_member(&c, &m(&k, "0:1,inf:3"), &o).unwrap());
        assert!(filtration_member(&c, &m(&k, "1:1"), &o).is_err());
    }

    #[test]
    fn mu_ranks() {
        assert_eq!(mu_rank(2, 1, 3, 0).unwrap(), 2);
        assert_eq!(mu_rank(2, 1, 1, 0).unwrap(), 0);
        let k = FieldSpec::prime(2).unwrap();
        let s = parse_point_set("0,1,inf", &k).unwrap();
        assert_eq!(mu_rank_brute_force(&k, 2, &s).unwrap(), 2);
    }
}
