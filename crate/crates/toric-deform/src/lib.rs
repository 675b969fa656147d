//! Graded deformation invariants of affine toric varieties in exact arithmetic.

pub mod cli;
pub mod cone;
pub mod cup;
pub mod degree_complex;
pub mod error;
pub mod gersten2;
pub mod input;
pub mod lattice;
pub mod oracle;
pub mod pipeline;

pub use error::{Error, Result};
