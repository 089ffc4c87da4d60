//! Exact arithmetic in real quadratic towers over the rationals.

mod interval;
mod text;
mod tower;

pub use interval::RealInterval;
pub use text::TowerTree;
pub use tower::{QuadraticTower, SqrtAdjunction, TowerElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative element {0}")]
    NegativeRadicand(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("cannot parse tower element: {0}")]
    Parse(String),
}
