//! Exact arithmetic for elliptic curves over rational function fields of
//! small characteristic: reduction data at every place (Kodaira type,
//! minimal discriminant, conductor), height computations with exact
//! rationals, character-profile heights at cyclic quotient singularities,
//! and a machine-checkable certificate that ties them together.

pub mod certifier;
pub mod dicyclic;
pub mod field;
pub mod heights;
pub mod poly;
pub mod ratfunc;
pub mod stackrep;
pub mod tate;
pub mod weierstrass;

pub use field::{Field, FieldSpec, FqElem};
pub use poly::Poly;
pub use ratfunc::{parse_place, parse_ratfunc, Place, RatFunc, Valuation};
pub use weierstrass::WeierstrassModel;

/// Exact rational numbers used for every height; no floating point anywhere.
pub type Rational = num::BigRational;

/// Build a rational from an integer pair.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Canonical `"p/q"` rendering used by all JSON output.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
