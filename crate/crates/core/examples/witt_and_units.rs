//! Witt vector arithmetic and the Artin–Hasse decomposition of a unit.

use ramify::algebra::field::{FieldElement, FieldSpec};
use ramify::algebra::parse::parse_rational;
use ramify::algebra::rational::PointOfP1;
use ramify::algebra::unit::PrincipalUnit;
use ramify::artin_hasse::decompose_unit;
use ramify::witt::WittVector;

fn main() -> ramify::Result<()> {
    let k = FieldSpec::prime(2)?;
    let one = WittVector::new(2, vec![FieldElement::one(&k), FieldElement::zero(&k)])?;
    // 1 + 1 = 2 = V(1) in W_2(F_2)
    println!("(1,0) + (1,0) = {:?}", one.add(&one)?);

    let g = WittVector::new(2, vec![num_bigint::BigInt::from(0), num_bigint::BigInt::from(1)])?;
    println!("ghost(0,1) = {:?}", g.ghost());

    let f = parse_rational("1+x+x^2+x^3", &k)?;
    let s = f.laurent_expand(&PointOfP1::Finite(FieldElement::zero(&k)), 4);
    let v = PrincipalUnit::from_series(&s, 4)?;
    let dec = decompose_unit(&v)?;
    for (i, w) in &dec.slots {
        println!("slot i={}: {:?}", i, w);
    }
    assert_eq!(dec.reassemble(&k)?, v);
    Ok(())
}
