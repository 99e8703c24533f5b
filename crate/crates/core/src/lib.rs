//! Exact commutative algebra for free divisors and the blowup algebras of
//! their Jacobian ideals.
//!
//! The crate is layered bottom-up: [`poly`] (rationals, polynomials,
//! matrices), [`groebner`] (Buchberger kernel and ideal operations),
//! [`homalg`] (syzygies, resolutions, Ext), [`blowup`], [`divisor`],
//! [`maxspread`] and [`families`].

pub mod blowup;
pub mod divisor;
pub mod error;
pub mod families;
pub mod groebner;
pub mod homalg;
pub mod maxspread;
pub mod poly;

pub use error::{Deadline, Error, Result};
pub use groebner::{DimensionReport, Ideal};
pub use poly::{GradedMatrix, Monomial, MonomialOrder, Polynomial, Rational, Ring, RingDescriptor};
