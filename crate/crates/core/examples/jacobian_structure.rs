//! Structure of a generalized Jacobian and of the unipotent fundamental group.

use ramify::algebra::field::FieldSpec;
use ramify::curve::Modulus;
use ramify::structure::{frobenius_kernel_exponent, jacobian_report, uni_ab_factors};

fn main() -> ramify::Result<()> {
    let k = FieldSpec::prime(2)?;
    let m = Modulus::parse("0:4,inf:7", &k)?;
    let report = jacobian_report(2, 0, 0, &m);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    println!("|J[F^2]| = 2^{}", frobenius_kernel_exponent(2, 0, &m, 2));
    println!("{}", uni_ab_factors(2, &Modulus::parse("0:4,1:1", &k)?).join(" × "));
    Ok(())
}
