pub mod cli;
pub mod corpus;
pub mod dlinalg;
pub mod dualpair;
pub mod error;
pub mod hermitian;
pub mod random;
pub mod report;
pub mod scalars;
pub mod sl2;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};
