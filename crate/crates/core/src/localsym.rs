//! Local symbols over `L = k'((u))`: the residue pairing for `G_a`, the
//! Schmid–Witt symbol for `W_m`, the Rosenlicht–Serre filtration, and the
//! reciprocity sum over the points of `P^1`.
//!
//! The Witt symbol is computed by lifting to the Galois ring
//! `W_N(k')`. Write `g = c u^v prod_{j >= 1} (1 - b_j u^j)`. The first
//! argument `f` is lifted componentwise with Teichmüller coefficients, and
//! each binomial factor of `g` is lifted to `1 - [b_j] u^j`. These binomial
//! lifts commute with the Frobenius lift `u -> u^p`, which is what makes the
//! residues of `ghost_l(f~) dlog g~` a ghost vector. The vector is then
//! inverted over `W_N(k')` and reduced modulo `p`. A lift of `g` by
//! Teichmüller coefficients alone would not commute with Frobenius.

use std::sync::Arc;

use crate::algebra::field::FieldElement;
use crate::algebra::galois::{GaloisRing, GrElement};
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::poly::Poly;
use crate::algebra::rational::{PointOfP1, RationalFunction};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::witt::WittVector;

pub type Series = LaurentSeries<FieldElement>;

/// A Witt vector of Laurent series: an element of `W_m(L)`.
pub type LocalWittElement = WittVector<Series>;

/// Pole orders `d_i = max(0, -v(f_i))` (zero components count as 0).
pub fn pole_orders(f: &LocalWittElement) -> Vec<i64> {
    f.comps()
        .iter()
        .map(|s| s.valuation().map_or(0, |v| (-v).max(0)))
        .collect()
}

/// `J(f) = 1 + max_i p^{m-1-i} d_i`: symbols against `1 - c u^j` vanish for
/// every `j >= J(f)`.
pub fn pole_bound(f: &LocalWittElement) -> i64 {
    let p = f.p() as i64;
    let m = f.len();
    1 + pole_orders(f)
        .iter()
        .enumerate()
        .map(|(i, &d)| p.pow((m - 1 - i) as u32) * d)
        .max()
        .unwrap_or(0)
}

/// Absolute precision of `f_i` needed for ghost coefficients at indices
/// `<= 0`: `(p^{m-1-i} - 1) d_i + 1`.
pub fn required_precision(p: u64, m: usize, i: usize, d: i64) -> i64 {
    (p.pow((m - 1 - i) as u32) as i64 - 1) * d + 1
}

/// `Res(f dg/g)`, the local symbol for `G_a`.
pub fn symbol_ga(f: &Series, g: &Series) -> Result<FieldElement> {
    g.valuation().ok_or(Error::DivisionByZero)?;
    let vf = match f.valuation() {
        Some(v) => v,
        None => {
            // f is zero to its known precision; the residue is certified
            // zero only if that precision reaches past u^0.
            if f.prec() >= 1 {
                return Ok(f.template().zero_like());
            }
            return Err(Error::Precision {
                needed: 1,
                available: f.prec(),
            });
        }
    };
    let rel = (1 - vf).max(1) + 1;
    let d = g.dlog(rel)?;
    f.mul(&d).residue()
}

/// Options shared by the symbol and filtration routines.
#[derive(Clone, Copy, Debug)]
pub struct SymbolOptions {
    /// Slack added to the Witt length for the Galois-ring lift (default `m`).
    pub delta: Option<u32>,
    /// Multiplier applied to the computed precision bounds.
    pub scale: i64,
    /// Extra terms beyond the computed bound (expert override).
    pub extra: i64,
    /// Recompute at doubled precision and `delta + 2` and compare.
    pub check_stability: bool,
}

impl Default for SymbolOptions {
    fn default() -> Self {
        SymbolOptions {
            delta: None,
            scale: 1,
            extra: 0,
            check_stability: true,
        }
    }
}

impl SymbolOptions {
    fn doubled(&self, m: usize) -> Self {
        SymbolOptions {
            delta: Some(self.delta.unwrap_or(m as u32) + 2),
            scale: self.scale * 2,
            extra: self.extra,
            check_stability: false,
        }
    }

    fn precision(&self, needed: i64) -> i64 {
        needed * self.scale + self.extra
    }
}

/// Ghost coefficients of the Teichmüller-coefficient lift of `f`, at
/// indices `lo..=0`.
struct GhostTable {
    p: u64,
    m: usize,
    gr: Arc<GaloisRing>,
    /// `gh[l][k - lo]` is the coefficient of `u^k` in `ghost_l(f~)`.
    gh: Vec<Vec<GrElement>>,
    lo: i64,
    bound: i64,
}

impl GhostTable {
    fn new(f: &LocalWittElement, opts: &SymbolOptions) -> Result<Self> {
        let p = f.p();
        let m = f.len();
        let spec = f.comps()[0].template().spec().clone();
        let delta = opts.delta.unwrap_or(m as u32);
        let gr = GaloisRing::new(&spec, m as u32 + delta)?;
        let gzero = GrElement::zero(&gr);
        let bound = pole_bound(f);
        let lo = -(bound - 1);
        let width = (1 - lo) as usize;
        let mut gh = vec![vec![gzero.clone(); width]; m];
        let orders = pole_orders(f);
        for (i, fi) in f.comps().iter().enumerate() {
            let need = required_precision(p, m, i, orders[i]);
            if fi.prec() < need {
                return Err(Error::Precision {
                    needed: need,
                    available: fi.prec(),
                });
            }
            if fi.is_zero() {
                continue;
            }
            let keep = opts.precision(need).max(need).min(fi.prec());
            let mut cur = fi.truncate(keep).map(&gzero, |c| GrElement::teichmuller(&gr, c));
            let weight = gzero.from_int_like(&num_bigint::BigInt::from(p).pow(i as u32));
            for (l, row) in gh.iter_mut().enumerate().skip(i) {
                if l > i {
                    cur = cur.pow(p);
                }
                for (slot, k) in row.iter_mut().zip(lo..=0) {
                    let c = cur.coeff(k)?;
                    *slot = slot.add(&c.mul(&weight));
                }
            }
        }
        Ok(GhostTable {
            p,
            m,
            gr,
            gh,
            lo,
            bound,
        })
    }

    fn at(&self, l: usize, k: i64) -> &GrElement {
        &self.gh[l][(k - self.lo) as usize]
    }

    /// Symbol against `g = c u^v prod_j (1 - b_j u^j)`.
    fn symbol(&self, v: i64, b: &[FieldElement]) -> Result<WittVector<FieldElement>> {
        let gzero = GrElement::zero(&self.gr);
        let lifted: Vec<GrElement> = b.iter().map(|x| GrElement::teichmuller(&self.gr, x)).collect();
        let w: Vec<GrElement> = (0..self.m)
            .map(|l| {
                let mut acc = self.at(l, 0).mul(&gzero.from_i64_like(v));
                for (idx, bj) in lifted.iter().enumerate() {
                    let j = idx as i64 + 1;
                    if bj.is_zero() {
                        continue;
                    }
                    let mut inner = gzero.clone();
                    let mut bk = bj.clone();
                    let mut k = 1;
                    while j * k < self.bound {
                        inner = inner.add(&self.at(l, -j * k).mul(&bk));
                        bk = bk.mul(bj);
                        k += 1;
                    }
                    acc = acc.sub(&inner.mul(&gzero.from_i64_like(j)));
                }
                acc
            })
            .collect();
        let a = WittVector::unghost(self.p, &w)?;
        Ok(a.map(|x| x.reduce()))
    }

    /// Symbol against `1 - [c] u^j` with `c` a formal variable: the
    /// components are polynomials in `c` over `k'`, exact for every `c`
    /// in an algebraic closure.
    fn formal_binomial(&self, j: i64) -> Result<WittVector<Poly<FieldElement>>> {
        let gzero = GrElement::zero(&self.gr);
        let w: Vec<Poly<GrElement>> = (0..self.m)
            .map(|l| {
                let mut coeffs = vec![gzero.clone()];
                let mut k = 1;
                while j * k < self.bound {
                    coeffs.push(self.at(l, -j * k).mul(&gzero.from_i64_like(-j)));
                    k += 1;
                }
                Poly::new(coeffs, &gzero)
            })
            .collect();
        let a = WittVector::unghost(self.p, &w)?;
        let fzero = FieldElement::zero(self.gr.field());
        Ok(a.map(|poly| poly.map(&fzero, |c| c.reduce())))
    }
}

/// Runs `compute` with the lift slack from `opts`, retrying once with a
/// larger slack on a divisibility failure.
fn with_retry<T>(opts: &SymbolOptions, m: usize, compute: impl Fn(&SymbolOptions) -> Result<T>) -> Result<T> {
    match compute(opts) {
        Err(Error::Divisibility { .. }) => {
            let bumped = SymbolOptions {
                delta: Some(opts.delta.unwrap_or(m as u32) * 2 + 1),
                ..*opts
            };
            compute(&bumped)
        }
        other => other,
    }
}

/// Recomputes with doubled precision and extra slack and demands agreement.
fn stable<T: PartialEq + std::fmt::Debug>(
    opts: &SymbolOptions,
    m: usize,
    compute: impl Fn(&SymbolOptions) -> Result<T>,
) -> Result<T> {
    let first = with_retry(opts, m, &compute)?;
    if opts.check_stability {
        let second = with_retry(&opts.doubled(m), m, &compute)?;
        if first != second {
            return Err(Error::Invalid(format!(
                "result not stable under doubled precision: {:?} vs {:?}",
                first, second
            )));
        }
    }
    Ok(first)
}

/// `g = c u^v * unit` with `unit = prod_{j=1}^{upto} (1 - b_j u^j) mod u^{upto+1}`.
fn binomial_factors(g: &Series, upto: i64) -> Result<(i64, Vec<FieldElement>)> {
    let v = g.valuation().ok_or(Error::DivisionByZero)?;
    let lead = g.coeff(v)?;
    let inv = lead.inv().expect("nonzero leading coefficient");
    let n = (upto + 1).max(1) as usize;
    if g.relative_prec() < n as i64 {
        return Err(Error::Precision {
            needed: v + n as i64,
            available: g.prec(),
        });
    }
    let mut h: Vec<FieldElement> = (0..n as i64).map(|k| g.coeff_unchecked(v + k).mul(&inv)).collect();
    let zero = lead.zero_like();
    let mut b = vec![zero.clone(); n.saturating_sub(1)];
    for j in 1..n {
        let c = h[j].clone();
        if c.is_zero() {
            continue;
        }
        let bj = c.neg();
        // h <- h / (1 - bj u^j) = h * sum_k bj^k u^{jk}
        let mut out = h.clone();
        let mut bk = bj.clone();
        let mut k = 1;
        while j * k < n {
            for idx in (j * k)..n {
                let add = h[idx - j * k].mul(&bk);
                out[idx] = out[idx].add(&add);
            }
            bk = bk.mul(&bj);
            k += 1;
        }
        h = out;
        b[j - 1] = bj;
    }
    Ok((v, b))
}

/// The Schmid–Witt symbol `(f, g)` for `f in W_m(L)`, `g in L^x`.
pub fn schmid_witt_symbol_with(
    f: &LocalWittElement,
    g: &Series,
    opts: &SymbolOptions,
) -> Result<WittVector<FieldElement>> {
    let m = f.len();
    let bound = pole_bound(f);
    stable(opts, m, |o| {
        let keep = o.precision(bound).max(bound);
        let gv = g.valuation().ok_or(Error::DivisionByZero)?;
        let gt = g.truncate(gv.saturating_add(keep));
        let (v, b) = binomial_factors(&gt, bound - 1)?;
        GhostTable::new(f, o)?.symbol(v, &b)
    })
}

pub fn schmid_witt_symbol(f: &LocalWittElement, g: &Series) -> Result<WittVector<FieldElement>> {
    schmid_witt_symbol_with(f, g, &SymbolOptions::default())
}

/// The symbols `(f, 1 - c u^j)` for `j = 1 .. J(f)-1`, as polynomials in `c`.
fn formal_symbols(f: &LocalWittElement, opts: &SymbolOptions) -> Result<Vec<WittVector<Poly<FieldElement>>>> {
    let m = f.len();
    stable(opts, m, |o| {
        let table = GhostTable::new(f, o)?;
        (1..table.bound).map(|j| table.formal_binomial(j)).collect()
    })
}

/// Whether `f` lies in `W_m(O_L)` (as given, no representative search).
pub fn is_integral(f: &LocalWittElement) -> bool {
    pole_orders(f).iter().all(|&d| d == 0)
}

/// `fil_level` with explicit options.
pub fn fil_level_with(f: &LocalWittElement, opts: &SymbolOptions) -> Result<i64> {
    if is_integral(f) {
        return Ok(0);
    }
    let symbols = formal_symbols(f, opts)?;
    let top = symbols
        .iter()
        .enumerate()
        .rev()
        .find(|(_, s)| !s.is_zero())
        .map(|(idx, _)| idx as i64 + 1);
    Ok(match top {
        Some(j) => j + 1,
        None => 1,
    })
}

/// The least `n` with `f in fil_n W_m(L)`: `0` for integral `f`, otherwise
/// `1 + max{ j : (f, 1 - c u^j) != 0 for some c }` (or 1 if no such `j`).
pub fn fil_level(f: &LocalWittElement) -> Result<i64> {
    fil_level_with(f, &SymbolOptions::default())
}

/// `f in fil_n`: integrality for `n = 0`, otherwise vanishing of the
/// symbols against `1 - c u^j` for all `c` and all `j >= n`.
pub fn fil_membership(f: &LocalWittElement, n: i64) -> Result<bool> {
    if n <= 0 {
        return Ok(is_integral(f));
    }
    if is_integral(f) {
        return Ok(true);
    }
    let symbols = formal_symbols(f, &SymbolOptions::default())?;
    Ok(symbols
        .iter()
        .enumerate()
        .all(|(idx, s)| (idx as i64 + 1) < n || s.is_zero()))
}

/// Expands global Witt data at a point with enough precision for the symbol
/// computations there (`scale` times the bound, plus `extra`).
pub fn expand_witt_at(
    f: &WittVector<RationalFunction>,
    at: &PointOfP1,
    scale: i64,
    extra: i64,
) -> Result<LocalWittElement> {
    let p = f.p();
    let m = f.len();
    let comps: Vec<Series> = f
        .comps()
        .iter()
        .enumerate()
        .map(|(i, fi)| {
            if fi.is_zero() {
                return LaurentSeries::exact(0, Vec::new(), &FieldElement::zero(fi.spec()));
            }
            let v = fi.ord_at(at).unwrap();
            let need = required_precision(p, m, i, (-v).max(0));
            let rel = (need - v).max(1) * scale + extra;
            fi.laurent_expand(at, rel)
        })
        .collect();
    WittVector::new(p, comps)
}

/// Local symbol of global data at a point of `P^1`.
pub fn symbol_at(
    f: &WittVector<RationalFunction>,
    g: &RationalFunction,
    at: &PointOfP1,
    opts: &SymbolOptions,
) -> Result<WittVector<FieldElement>> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let scale = 2 * opts.scale;
    let fl = expand_witt_at(f, at, scale, opts.extra)?;
    let bound = pole_bound(&fl);
    let gl = g.laurent_expand(at, bound * scale + opts.extra + 1);
    schmid_witt_symbol_with(&fl, &gl, opts)
}

/// `sum_x (f, g)_x` over all points where a contribution is possible:
/// poles of the `f_i`, zeros and poles of `g`, and infinity.
pub fn reciprocity_sum(
    f: &WittVector<RationalFunction>,
    g: &RationalFunction,
    opts: &SymbolOptions,
) -> Result<WittVector<FieldElement>> {
    let spec = g.spec().clone();
    let zero = FieldElement::zero(&spec);
    let mut points = g.critical_points()?;
    for fi in f.comps() {
        for a in fi.finite_poles()? {
            points.push(PointOfP1::Finite(a));
        }
    }
    points.sort();
    points.dedup();
    let mut acc = WittVector::zero(f.p(), f.len(), &zero)?;
    for x in &points {
        acc = acc.add(&symbol_at(f, g, x, opts)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;
    use crate::algebra::laurent::INF_PREC;
    use crate::algebra::parse::parse_rational;

    fn series(k: &Arc<crate::algebra::field::FieldSpec>, expr: &str) -> Series {
        parse_rational(expr, k)
            .unwrap()
            .laurent_expand(&PointOfP1::Finite(FieldElement::zero(k)), 64)
    }

    fn wl(k: &Arc<FieldSpec>, exprs: &[&str]) -> LocalWittElement {
        WittVector::new(k.p(), exprs.iter().map(|e| series(k, e)).collect()).unwrap()
    }

    #[test]
    fn ga_examples() {
        let k = FieldSpec::prime(5).unwrap();
        let c = FieldElement::from_int(&k, 3);
        let fc = LaurentSeries::exact(0, vec![c.clone()], &FieldElement::zero(&k));
        let u = LaurentSeries::u(&FieldElement::zero(&k));
        assert_eq!(symbol_ga(&fc, &u).unwrap(), c);
        assert_eq!(symbol_ga(&series(&k, "1/u"), &series(&k, "1-3u")).unwrap(), c.neg());
        for j in 2..6 {
            let g = series(&k, &format!("1-3u^{}", j));
            assert!(symbol_ga(&series(&k, "1/u"), &g).unwrap().is_zero());
        }
    }

    #[test]
    fn witt_symbol_examples() {
        let k = FieldSpec::prime(2).unwrap();
        // (0, u^-1) against 1 - u gives (0, 1)
        let f = wl(&k, &["0", "1/u"]);
        let s = schmid_witt_symbol(&f, &series(&k, "1-u")).unwrap();
        assert_eq!(s.comps(), &[FieldElement::zero(&k), FieldElement::one(&k)]);
        // integral f against 1 - cu
        let f = wl(&k, &["1+u", "u^3"]);
        assert!(schmid_witt_symbol(&f, &series(&k, "1-u")).unwrap().is_zero());
        // m = 1 agrees with the residue
        let f = wl(&k, &["1/u^3+1/u"]);
        let g = series(&k, "(1+u+u^2)*u");
        let s = schmid_witt_symbol(&f, &g).unwrap();
        assert_eq!(s.comps()[0], symbol_ga(&f.comps()[0], &g).unwrap());
    }

    #[test]
    fn fil_levels_small() {
        let k = FieldSpec::prime(3).unwrap();
        assert_eq!(fil_level(&wl(&k, &["1+u"])).unwrap(), 0);
        assert_eq!(fil_level(&wl(&k, &["1/u"])).unwrap(), 2);
        assert_eq!(fil_level(&wl(&k, &["1/u^2"])).unwrap(), 3);
        // u^{-3} = F(u^{-1}) has the level of u^{-1}
        assert_eq!(fil_level(&wl(&k, &["1/u^3"])).unwrap(), 2);
        let f = wl(&k, &["1/u^2"]);
        assert!(fil_membership(&f, 3).unwrap());
        assert!(!fil_membership(&f, 2).unwrap());
    }

    #[test]
    fn precision_shortfall_is_reported() {
        let k = FieldSpec::prime(2).unwrap();
        let z = FieldElement::zero(&k);
        let one = FieldElement::one(&k);
        // f_0 = u^-2 + O(u^0) in W_2: needs precision (2-1)*2+1 = 3
        let f0 = LaurentSeries::new(-2, vec![one.clone()], 0, &z);
        let f = WittVector::new(2, vec![f0, LaurentSeries::exact(0, vec![], &z)]).unwrap();
        let g = LaurentSeries::new(0, vec![one.clone(), one], INF_PREC, &z);
        assert!(matches!(schmid_witt_symbol(&f, &g), Err(Error::Precision { .. })));
    }

    #[test]
    fn reciprocity_on_p1() {
        let k = FieldSpec::prime(3).unwrap();
        let f = WittVector::new(
            3,
            vec![
                parse_rational("1/x + x^2", &k).unwrap(),
                parse_rational("1/(x-1)^2", &k).unwrap(),
            ],
        )
        .unwrap();
        let g = parse_rational("(x-1)/x", &k).unwrap();
        let s = reciprocity_sum(&f, &g, &SymbolOptions::default()).unwrap();
        assert!(s.is_zero(), "{:?}", s);
        // constants: the symbols at 0 and infinity cancel
        let c = WittVector::new(3, vec![parse_rational("2", &k).unwrap(); 2]).unwrap();
        let x = parse_rational("x", &k).unwrap();
        assert!(reciprocity_sum(&c, &x, &SymbolOptions::default()).unwrap().is_zero());
    }
}
