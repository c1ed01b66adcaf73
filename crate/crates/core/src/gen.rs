//! Random instance generators shared by the `verify` subcommand and the
//! test suites. All functions are deterministic given the RNG state.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::field::{FieldElement, FieldSpec};
use crate::algebra::poly::Poly;
use crate::algebra::rational::{PointOfP1, RationalFunction};
use crate::algebra::ring::Ring;
use crate::curve::Modulus;
use crate::witt::WittVector;

pub fn field_element<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>) -> FieldElement {
    FieldElement::from_index(spec, rng.gen_range(0..spec.size()))
}

pub fn nonzero_field_element<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>) -> FieldElement {
    FieldElement::from_index(spec, rng.gen_range(1..spec.size()))
}

/// `(x - a)` for a finite point, as a rational function.
pub fn linear(spec: &Arc<FieldSpec>, a: &FieldElement) -> RationalFunction {
    RationalFunction::x(spec).sub(&RationalFunction::constant(a.clone()))
}

/// A polynomial of degree at most `deg` with random coefficients.
pub fn poly<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>, deg: usize) -> RationalFunction {
    let zero = FieldElement::zero(spec);
    let coeffs = (0..=deg).map(|_| field_element(rng, spec)).collect();
    RationalFunction::from_poly(Poly::new(coeffs, &zero))
}

/// A function regular on `P^1 \ S` with pole order at most `max_pole` at
/// each point of `S`, built from random principal parts plus a constant.
pub fn regular_on_u<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>, s: &[PointOfP1], max_pole: u32) -> RationalFunction {
    let mut f = RationalFunction::constant(field_element(rng, spec));
    for x in s {
        let e = rng.gen_range(0..=max_pole) as i64;
        for k in 1..=e {
            let c = RationalFunction::constant(field_element(rng, spec));
            let term = match x {
                PointOfP1::Infinity => RationalFunction::x(spec).powi(k).unwrap(),
                PointOfP1::Finite(a) => linear(spec, a).powi(-k).unwrap(),
            };
            f = f.add(&c.mul(&term));
        }
    }
    f
}

/// `c prod_{a in S finite} (x - a)^{e_a}` with `|e_a| <= max_exp`; its
/// divisor is supported on `S` provided `inf` is in `S` or the exponents
/// happen to sum to zero (callers pass `S` containing `inf`).
pub fn unit_on_u<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>, s: &[PointOfP1], max_exp: i64) -> RationalFunction {
    let mut g = RationalFunction::constant(nonzero_field_element(rng, spec));
    for x in s {
        if let PointOfP1::Finite(a) = x {
            let e = rng.gen_range(-max_exp..=max_exp);
            g = g.mul(&linear(spec, a).powi(e).unwrap());
        }
    }
    g
}

/// A Laurent polynomial in `u` (written with the variable `x`) with
/// exponents in `[-max_pole, max_pos]`.
pub fn laurent_poly<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>, max_pole: u32, max_pos: u32) -> RationalFunction {
    let zero = FieldElement::zero(spec);
    let len = (max_pole + max_pos + 1) as usize;
    let coeffs = (0..len).map(|_| field_element(rng, spec)).collect();
    let num = RationalFunction::from_poly(Poly::new(coeffs, &zero));
    num.mul(&RationalFunction::x(spec).powi(-(max_pole as i64)).unwrap())
}

/// A Witt vector of Laurent polynomials with pole orders at most
/// `max_pole` (random per component).
pub fn local_witt<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>, m: usize, max_pole: u32) -> WittVector<RationalFunction> {
    let comps = (0..m)
        .map(|_| {
            let d = rng.gen_range(0..=max_pole);
            laurent_poly(rng, spec, d, 2)
        })
        .collect();
    WittVector::new(spec.p(), comps).expect("length within cap")
}

/// A nonzero function whose zeros and poles are all rational:
/// `c prod (x - a_i)^{e_i}` with `|e_i| <= max_exp`.
pub fn split_function<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>, factors: usize, max_exp: i64) -> RationalFunction {
    let mut g = RationalFunction::constant(nonzero_field_element(rng, spec));
    for _ in 0..factors {
        let a = field_element(rng, spec);
        let e = rng.gen_range(-max_exp..=max_exp);
        g = g.mul(&linear(spec, &a).powi(e).unwrap());
    }
    g
}

/// A random subset of `{0, 1, inf}` (nonempty).
pub fn subset_01inf<R: Rng>(rng: &mut R, spec: &Arc<FieldSpec>) -> Vec<PointOfP1> {
    let all = [
        PointOfP1::Finite(FieldElement::zero(spec)),
        PointOfP1::Finite(FieldElement::one(spec)),
        PointOfP1::Infinity,
    ];
    loop {
        let mask: u8 = rng.gen_range(1..8);
        let s: Vec<PointOfP1> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, x)| x.clone())
            .collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// A modulus supported on `s` with multiplicities in `[0, max]`.
pub fn modulus_on<R: Rng>(rng: &mut R, s: &[PointOfP1], max: u64) -> Modulus {
    Modulus::from_pairs(s.iter().map(|x| (x.clone(), rng.gen_range(0..=max))))
}
