//! Local symbols, filtration levels and reciprocity on P^1.

use ramify::algebra::field::{FieldElement, FieldSpec};
use ramify::algebra::parse::parse_rational;
use ramify::algebra::rational::PointOfP1;
use ramify::localsym::{fil_level, reciprocity_sum, symbol_at, SymbolOptions};
use ramify::witt::WittVector;

fn main() -> ramify::Result<()> {
    let k = FieldSpec::prime(3)?;
    let zero = PointOfP1::Finite(FieldElement::zero(&k));
    let opts = SymbolOptions::default();

    // (u^-1, 1 - 2u) = -2 = 1 in F_3
    let f = WittVector::new(3, vec![parse_rational("1/x", &k)?])?;
    let g = parse_rational("1-2*x", &k)?;
    println!("(1/u, 1-2u) = {:?}", symbol_at(&f, &g, &zero, &opts)?);

    let local = f.map(|c| c.laurent_expand(&zero, 20));
    println!("fil_level(1/u) = {}", fil_level(&local)?);

    // the sum of local symbols over all points of P^1 vanishes
    let f2 = WittVector::new(
        3,
        vec![parse_rational("x^2 + 1/x", &k)?, parse_rational("1/(x-1)", &k)?],
    )?;
    let g2 = parse_rational("(x-1)/x", &k)?;
    println!("reciprocity sum = {:?}", reciprocity_sum(&f2, &g2, &opts)?);
    Ok(())
}
