//! Local conductors and minimal moduli of torsors over P^1 minus S.

use ramify::algebra::field::{FieldElement, FieldSpec};
use ramify::algebra::parse::{parse_point_set, parse_rational};
use ramify::algebra::rational::PointOfP1;
use ramify::conductor::{conductor_at, Factor, FactorData};
use ramify::localsym::SymbolOptions;
use ramify::modulus::{alpha_p_modulus, kummer_modulus, local_local_modulus, GlobalTorsorClass};
use ramify::witt::WittVector;

fn main() -> ramify::Result<()> {
    let opts = SymbolOptions::default();
    let k = FieldSpec::prime(2)?;
    let zero = PointOfP1::Finite(FieldElement::zero(&k));

    for (factor, text) in [
        (Factor::LocalLocal { m: 1, r: 1 }, "1/x^2"),
        (Factor::LocalLocal { m: 1, r: 1 }, "1/x^3"),
        (Factor::EtaleAsw { m: 1 }, "1/x^2"),
    ] {
        let f = WittVector::new(2, vec![parse_rational(text, &k)?])?;
        let c = conductor_at(&factor, &FactorData::Witt(f), &zero, &opts)?;
        println!("{} class of {}: conductor {}", factor, text, c.conductor);
    }

    let k3 = FieldSpec::prime(3)?;
    let s = parse_point_set("inf", &k3)?;
    let class = GlobalTorsorClass::alpha_p(parse_rational("x^2", &k3)?, s)?;
    println!(
        "alpha_p, f = x^2: via dF {} / via conductors {}",
        alpha_p_modulus(&class)?.modulus,
        local_local_modulus(&class, &opts)?.modulus
    );

    let s = parse_point_set("0,1,inf", &k)?;
    let class = GlobalTorsorClass::kummer(3, parse_rational("x^2*(x-1)", &k)?, s)?;
    println!("mu_3, g = x^2(x-1): {}", kummer_modulus(&class)?.modulus);
    Ok(())
}
