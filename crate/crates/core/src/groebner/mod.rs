//! Gröbner bases and the ideal-theoretic toolbox.

mod dimension;
mod ideal;
pub mod kernel;

pub use dimension::{monomial_dimension, DimensionReport};
pub use ideal::*;
