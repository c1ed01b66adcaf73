//! Exact arithmetic: finite fields, polynomials, rational functions,
//! truncated Laurent series, Galois rings and the expression parser.

pub mod field;
pub mod galois;
pub mod laurent;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod unit;

pub use field::{FieldElement, FieldSpec};
pub use galois::{GaloisRing, GrElement};
pub use laurent::{LaurentSeries, INF_PREC};
pub use parse::{parse_field_element, parse_point, parse_point_set, parse_rational, parse_witt_literal};
pub use poly::Poly;
pub use rational::{PointOfP1, RationalFunction};
pub use ring::{PDivisible, Ring};
pub use unit::PrincipalUnit;
