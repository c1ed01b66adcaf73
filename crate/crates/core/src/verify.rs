//! Built-in randomized property checks, run concurrently by the `verify`
//! subcommand. Each check is deterministic for a given seed.

use std::sync::Arc;
use std::thread;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::field::{FieldElement, FieldSpec};
use crate::algebra::rational::PointOfP1;
use crate::algebra::ring::Ring;
use crate::algebra::unit::PrincipalUnit;
use crate::artin_hasse::decompose_unit;
use crate::conductor::{conductor_at, exhaustive_conductor, Factor, FactorData};
use crate::curve::{cartier, d, DifferentialForm};
use crate::error::Result;
use crate::gen;
use crate::localsym::{self, symbol_ga, SymbolOptions};
use crate::modulus::{alpha_p_modulus, filtration_member, kummer_modulus, local_local_modulus, GlobalTorsorClass};
use crate::witt::WittVector;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub passed: bool,
    /// First failing case, if any.
    pub failure: Option<String>,
}

type Check = fn(&mut StdRng, usize) -> std::result::Result<(), String>;

fn lift<T>(r: Result<T>, ctx: impl FnOnce() -> String) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {}", ctx(), e))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn at0(k: &Arc<FieldSpec>) -> PointOfP1 {
    PointOfP1::Finite(FieldElement::zero(k))
}

fn witt_ghost_laws(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    for _ in 0..cases {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let m = rng.gen_range(1..=3);
        let mut rand_w =
            || WittVector::new(p, (0..m).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect()).unwrap();
        let (a, b) = (rand_w(), rand_w());
        let (ga, gb) = (a.ghost(), b.ghost());
        let s = a.add(&b).unwrap().ghost();
        let pr = a.mul(&b).unwrap().ghost();
        for j in 0..m {
            ensure(s[j] == &ga[j] + &gb[j], || {
                format!("ghost sum p={} a={:?} b={:?}", p, a, b)
            })?;
            ensure(pr[j] == &ga[j] * &gb[j], || {
                format!("ghost product p={} a={:?} b={:?}", p, a, b)
            })?;
        }
    }
    Ok(())
}

fn artin_hasse(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(2..=16);
        let k = FieldSpec::prime(p).unwrap();
        let mut rand_unit = || {
            let mut c = vec![FieldElement::one(&k)];
            c.extend((1..n).map(|_| gen::field_element(rng, &k)));
            PrincipalUnit::from_coeffs(&k, &c, n).unwrap()
        };
        let (v, w) = (rand_unit(), rand_unit());
        let dv = lift(decompose_unit(&v), || format!("decompose p={} n={}", p, n))?;
        let dw = lift(decompose_unit(&w), || format!("decompose p={} n={}", p, n))?;
        ensure(dv.reassemble(&k).unwrap() == v, || {
            format!("roundtrip p={} n={} v={:?}", p, n, v)
        })?;
        let dvw = decompose_unit(&v.mul(&w).unwrap()).unwrap();
        ensure(dvw == dv.add(&dw, &k).unwrap(), || {
            format!("homomorphism p={} n={}", p, n)
        })?;
    }
    Ok(())
}

fn symbol_residue(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let k = FieldSpec::prime(p).unwrap();
        let depth = rng.gen_range(0..6);
        let f = gen::laurent_poly(rng, &k, depth, 3);
        let g = gen::split_function(rng, &k, 2, 3);
        let fw = WittVector::new(p, vec![f.clone()]).unwrap();
        let sw = lift(
            localsym::symbol_at(&fw, &g, &at0(&k), &SymbolOptions::default()),
            || format!("symbol f={} g={}", f, g),
        )?;
        let fl = f.laurent_expand(&at0(&k), 40);
        let gl = g.laurent_expand(&at0(&k), 40);
        let r = lift(symbol_ga(&fl, &gl), || "residue".into())?;
        ensure(sw.comps()[0] == r, || {
            format!("m=1 symbol vs residue p={} f={} g={}", p, f, g)
        })?;
    }
    Ok(())
}

fn reciprocity(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    for _ in 0..cases {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let m = rng.gen_range(1..=2);
        let k = FieldSpec::prime(p).unwrap();
        let s = gen::subset_01inf(rng, &k);
        let f = WittVector::new(p, (0..m).map(|_| gen::regular_on_u(rng, &k, &s, 2)).collect()).unwrap();
        let g = gen::split_function(rng, &k, 2, 2);
        let sum = lift(localsym::reciprocity_sum(&f, &g, &SymbolOptions::default()), || {
            format!("reciprocity f={:?} g={}", f, g)
        })?;
        ensure(sum.is_zero(), || {
            format!("reciprocity sum {:?} for f={:?} g={}", sum, f, g)
        })?;
    }
    Ok(())
}

fn conductor_composite(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    let o = SymbolOptions::default();
    for _ in 0..cases {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let m = rng.gen_range(1..=2);
        let r = rng.gen_range(1..=2);
        let k = FieldSpec::prime(p).unwrap();
        let f = gen::local_witt(rng, &k, m, 4);
        let ff = f.map(|c| c.pow(p));
        let c1 = lift(
            conductor_at(&Factor::LocalLocal { m, r }, &FactorData::Witt(f.clone()), &at0(&k), &o),
            || format!("conductor f={:?}", f),
        )?;
        let c2 = lift(
            conductor_at(&Factor::LocalLocal { m, r: r + 1 }, &FactorData::Witt(ff), &at0(&k), &o),
            || format!("composite conductor f={:?}", f),
        )?;
        ensure(c1.conductor == c2.conductor, || {
            format!("(m,r)=({},{}) f={:?}: {} vs {}", m, r, f, c1.conductor, c2.conductor)
        })?;
    }
    Ok(())
}

fn conductor_oracle(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    let o = SymbolOptions::default();
    let k = FieldSpec::prime(2).unwrap();
    for _ in 0..cases {
        let f = gen::laurent_poly(rng, &k, 4, 1);
        let fw = WittVector::new(2, vec![f.clone()]).unwrap();
        let factor = Factor::LocalLocal { m: 1, r: 1 };
        let greedy = lift(
            conductor_at(&factor, &FactorData::Witt(fw.clone()), &at0(&k), &o),
            || format!("greedy f={}", f),
        )?;
        let local = localsym::expand_witt_at(&fw, &at0(&k), 4, 16).unwrap();
        let oracle = lift(exhaustive_conductor(&factor, &local, 4, &o), || {
            format!("oracle f={}", f)
        })?;
        ensure(greedy.conductor == oracle, || {
            format!("f={}: greedy {} vs oracle {}", f, greedy.conductor, oracle)
        })?;
    }
    Ok(())
}

fn alpha_p_routes(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    let o = SymbolOptions::default();
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let k = FieldSpec::prime(p).unwrap();
        let s = gen::subset_01inf(rng, &k);
        let f = gen::regular_on_u(rng, &k, &s, 6);
        let c = lift(GlobalTorsorClass::alpha_p(f.clone(), s.clone()), || {
            format!("class f={}", f)
        })?;
        let a = alpha_p_modulus(&c).unwrap();
        let b = lift(local_local_modulus(&c, &o), || format!("local route f={}", f))?;
        ensure(a.modulus == b.modulus, || {
            format!("p={} f={}: {} vs {}", p, f, a.modulus, b.modulus)
        })?;
    }
    Ok(())
}

fn kummer_bound(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let k = FieldSpec::prime(p).unwrap();
        let mut s = gen::subset_01inf(rng, &k);
        if !s.contains(&PointOfP1::Infinity) {
            s.push(PointOfP1::Infinity);
        }
        let n = rng.gen_range(2..=6);
        let g = gen::unit_on_u(rng, &k, &s, 5);
        let c = lift(GlobalTorsorClass::kummer(n, g.clone(), s.clone()), || {
            format!("class g={}", g)
        })?;
        let r = kummer_modulus(&c).unwrap();
        let red = crate::curve::Modulus::reduced(&s);
        ensure(r.modulus.le(&red), || {
            format!("g={} n={}: {} not <= {}", g, n, r.modulus, red)
        })?;
    }
    Ok(())
}

fn lattice_law(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    let o = SymbolOptions::default();
    for _ in 0..cases {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let k = FieldSpec::prime(p).unwrap();
        let s = gen::subset_01inf(rng, &k);
        let f = gen::regular_on_u(rng, &k, &s, 4);
        let c = GlobalTorsorClass::alpha_p(f.clone(), s.clone()).unwrap();
        let m1 = gen::modulus_on(rng, &s, 6);
        let m2 = gen::modulus_on(rng, &s, 6);
        let both = lift(filtration_member(&c, &m1.inf(&m2), &o), || format!("member f={}", f))?;
        let a = filtration_member(&c, &m1, &o).unwrap();
        let b = filtration_member(&c, &m2, &o).unwrap();
        ensure(both == (a && b), || format!("f={} m={} m'={}", f, m1, m2))?;
    }
    Ok(())
}

fn cartier_checks(rng: &mut StdRng, cases: usize) -> std::result::Result<(), String> {
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let k = FieldSpec::prime(p).unwrap();
        let f = gen::split_function(rng, &k, 3, 3).add(&gen::poly(rng, &k, 3));
        ensure(cartier(&d(&f)).is_zero(), || format!("C(df) != 0 for f={}", f))?;
        let h = gen::split_function(rng, &k, 2, 2);
        let omega = DifferentialForm::new(gen::split_function(rng, &k, 3, 3));
        let lhs = cartier(&omega.scale(&h.pow(p)));
        ensure(lhs == cartier(&omega).scale(&h), || {
            format!("p^-1-linearity h={} w={}", h, omega)
        })?;
        let pts = omega.coeff().critical_points().unwrap();
        let deg: i64 = pts.iter().map(|x| omega.ord_at(x).unwrap()).sum();
        ensure(deg == -2, || format!("deg div({}) = {}", omega, deg))?;
    }
    Ok(())
}

const CHECKS: &[(&str, Check, usize)] = &[
    // (name, check, relative weight of the case budget)
    ("witt_ghost_laws", witt_ghost_laws, 4),
    ("artin_hasse_roundtrip_homomorphism", artin_hasse, 2),
    ("symbol_matches_residue", symbol_residue, 2),
    ("reciprocity_on_p1", reciprocity, 1),
    ("conductor_composite_resolution", conductor_composite, 1),
    ("conductor_greedy_vs_exhaustive", conductor_oracle, 1),
    ("alpha_p_modulus_two_routes", alpha_p_routes, 2),
    ("kummer_modulus_bounded_by_reduced", kummer_bound, 4),
    ("filtration_lattice_law", lattice_law, 2),
    ("cartier_operator", cartier_checks, 2),
];

/// Runs every check on its own thread with `cases` (times a per-check
/// weight) random instances.
pub fn run_all(seed: u64, cases: usize) -> Vec<CheckResult> {
    thread::scope(|scope| {
        let handles: Vec<_> = CHECKS
            .iter()
            .enumerate()
            .map(|(idx, &(name, check, weight))| {
                scope.spawn(move || {
                    let n = cases * weight;
                    let mut rng = StdRng::seed_from_u64(seed.wrapping_add(idx as u64));
                    let outcome = check(&mut rng, n);
                    CheckResult {
                        name,
                        cases: n,
                        passed: outcome.is_ok(),
                        failure: outcome.err(),
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(CHECKS)
            .map(|(h, &(name, _, weight))| {
                h.join().unwrap_or_else(|_| CheckResult {
                    name,
                    cases: cases * weight,
                    passed: false,
                    failure: Some("check panicked".into()),
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_on_a_small_budget() {
        for r in run_all(1, 3) {
            assert!(r.passed, "{}: {:?}", r.name, r.failure);
        }
    }
}
