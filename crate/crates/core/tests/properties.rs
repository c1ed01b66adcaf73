//! Property tests for the algebraic substrate. Each property draws a seed
//! and builds its instances with the shared generators.

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ramify::algebra::field::{FieldElement, FieldSpec};
use ramify::algebra::rational::{PointOfP1, RationalFunction};
use ramify::algebra::ring::Ring;
use ramify::curve::{cartier, d, DifferentialForm, Modulus};
use ramify::gen;
use ramify::witt::WittVector;

fn field(choice: u8) -> Arc<FieldSpec> {
    match choice % 5 {
        0 => FieldSpec::prime(2).unwrap(),
        1 => FieldSpec::prime(3).unwrap(),
        2 => FieldSpec::with_degree(2, 2).unwrap(),
        3 => FieldSpec::with_degree(3, 2).unwrap(),
        _ => FieldSpec::with_degree(5, 2).unwrap(),
    }
}

fn point(rng: &mut StdRng, k: &Arc<FieldSpec>) -> PointOfP1 {
    if rng.gen_bool(0.25) {
        PointOfP1::Infinity
    } else {
        PointOfP1::Finite(gen::field_element(rng, k))
    }
}

fn nonzero_rational(rng: &mut StdRng, k: &Arc<FieldSpec>) -> RationalFunction {
    loop {
        let f = gen::poly(rng, k, 3).mul(&gen::split_function(rng, k, 2, 2));
        if !f.is_zero() {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed: u64, choice: u8) {
        let k = field(choice);
        let mut rng = StdRng::seed_from_u64(seed);
        let (a, b, c) = (gen::field_element(&mut rng, &k), gen::field_element(&mut rng, &k), gen::field_element(&mut rng, &k));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).frobenius(), a.frobenius().add(&b.frobenius()));
        prop_assert_eq!(a.frobenius().pth_root(), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn witt_ring_laws(seed: u64, choice: u8, m in 1usize..=3) {
        let k = field(choice);
        let p = k.p();
        let mut rng = StdRng::seed_from_u64(seed);
        let mut w = || WittVector::new(p, (0..m).map(|_| gen::field_element(&mut rng, &k)).collect()).unwrap();
        let (a, b, c) = (w(), w(), w());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a.neg()).unwrap().comps().iter().all(|x| x.is_zero()));
        // V F = F V = multiplication by p in characteristic p
        let mut pa = a.clone();
        for _ in 1..p {
            pa = pa.add(&a).unwrap();
        }
        let vf = a.frobenius().unwrap().extend_to(m + 1).unwrap().verschiebung().restrict().unwrap();
        prop_assert_eq!(vf, pa.clone());
        let fv = a.extend_to(m + 1).unwrap().verschiebung().frobenius().unwrap().restrict().unwrap();
        prop_assert_eq!(fv, pa);
    }

    #[test]
    fn witt_ghost_roundtrip_over_z(p in prop::sample::select(vec![2u64, 3, 5]), comps in prop::collection::vec(-50i64..50, 1..=4)) {
        let a = WittVector::new(p, comps.into_iter().map(BigInt::from).collect()).unwrap();
        prop_assert_eq!(WittVector::unghost(p, &a.ghost()).unwrap(), a);
    }

    #[test]
    fn laurent_expansion_is_a_ring_map(seed: u64, choice: u8) {
        let k = field(choice);
        let mut rng = StdRng::seed_from_u64(seed);
        let at = point(&mut rng, &k);
        let f = nonzero_rational(&mut rng, &k);
        let g = nonzero_rational(&mut rng, &k);
        let h = nonzero_rational(&mut rng, &k);
        let n = 12;
        let ex = |r: &RationalFunction| r.laurent_expand(&at, 3 * n);
        let (ef, eg, eh) = (ex(&f), ex(&g), ex(&h));
        let lhs = ef.mul(&eg).mul(&eh);
        let rhs = ef.mul(&eg.mul(&eh));
        let cut = lhs.prec().min(rhs.prec()).min(ex(&f.mul(&g).mul(&h)).prec());
        prop_assert_eq!(lhs.truncate(cut), rhs.truncate(cut));
        prop_assert_eq!(ex(&f.mul(&g).mul(&h)).truncate(cut), lhs.truncate(cut));
        let fg = ex(&f.add(&g));
        let sum_cut = ef.prec().min(eg.prec()).min(fg.prec());
        prop_assert_eq!(fg.truncate(sum_cut), ef.add(&eg).truncate(sum_cut));
    }

    #[test]
    fn cartier_laws(seed: u64, choice: u8) {
        let k = field(choice);
        let mut rng = StdRng::seed_from_u64(seed);
        let f = nonzero_rational(&mut rng, &k);
        let g = nonzero_rational(&mut rng, &k);
        let omega = DifferentialForm::new(nonzero_rational(&mut rng, &k));
        // C kills exact forms, is p^{-1}-linear, and fixes dlog forms
        prop_assert!(cartier(&d(&f)).is_zero());
        let gp = g.pow(k.p());
        prop_assert_eq!(cartier(&omega.scale(&gp)), cartier(&omega).scale(&g));
        let dlog = DifferentialForm::new(d(&g).coeff().div(&g).unwrap());
        prop_assert_eq!(cartier(&dlog), dlog);
        prop_assert_eq!(cartier(&omega.add(&d(&f))), cartier(&omega));
    }

    #[test]
    fn modulus_lattice(a in prop::collection::vec(0u64..8, 3), b in prop::collection::vec(0u64..8, 3), c in prop::collection::vec(0u64..8, 3)) {
        let k = FieldSpec::prime(3).unwrap();
        let pts = [PointOfP1::Finite(FieldElement::zero(&k)), PointOfP1::Finite(FieldElement::one(&k)), PointOfP1::Infinity];
        let m = |v: &[u64]| Modulus::from_pairs(pts.iter().cloned().zip(v.iter().copied()));
        let (a, b, c) = (m(&a), m(&b), m(&c));
        prop_assert_eq!(a.inf(&b), b.inf(&a));
        prop_assert_eq!(a.sup(&b), b.sup(&a));
        prop_assert_eq!(a.inf(&b.inf(&c)), a.inf(&b).inf(&c));
        prop_assert_eq!(a.inf(&a.sup(&b)), a.clone());
        prop_assert_eq!(a.sup(&a.inf(&b)), a.clone());
        prop_assert_eq!(a.inf(&b).degree() + a.sup(&b).degree(), a.degree() + b.degree());
        prop_assert_eq!(a.le(&b), a.inf(&b) == a);
        let text: Vec<String> = a.iter().map(|(x, n)| format!("{}:{}", x, n)).collect();
        prop_assert_eq!(Modulus::parse(&text.join(","), &k).unwrap(), a.clone());
    }
}
