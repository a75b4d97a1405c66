//! Linear algebra over `k` and over the division algebra `D`.

mod dmatrix;
mod qmatrix;

pub use dmatrix::DMatrix;
pub use qmatrix::{QMatrix, Rref, SpanSolver};
