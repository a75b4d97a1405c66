//! Exact scalars: the base field `k = ℚ` and division algebras over it.

mod algebra;
mod rational;

pub use algebra::{AlgebraSpec, Coords, DivisionAlgebraElement, Sign};
pub use rational::{ParseRationalError, Rational};
