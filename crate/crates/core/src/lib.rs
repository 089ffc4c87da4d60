//! Exact constructibility tests and circumradius solvers for cyclic polygons.
//!
//! The exact side works over the rationals and real quadratic towers; the
//! numeric side is generic over [`numeric::Real`] (`f64` or multiprecision).

pub mod fields;
pub mod irreducible;
pub mod numeric;
pub mod poly;
pub mod scalar;
pub mod report;
pub mod series;
pub mod trig;

pub use fields::{QuadraticTower, RealInterval, TowerElement};
pub use poly::{BiPoly, QPoly, UniPoly, ZPoly};

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;

/// Default multiprecision real used by the cross-checks.
pub type BigReal = numeric::HighPrec;
