//! Exact arithmetic and multivariate polynomial algebra.

mod gcd;
mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod rational;
mod ring;

pub use gcd::{multivariate_gcd, squarefree_part};
pub use matrix::{hessian, hessian_determinant, rational_rank, subsets, GradedMatrix};
pub use monomial::{Monomial, MAX_VARS};
pub use parse::{parse_polynomial, ParseError};
pub use polynomial::{euler_check, ring_of, variables, Polynomial};
pub(crate) use polynomial::same_ring;
pub use rational::{ParseRationalError, Rational};
pub use ring::{MonomialOrder, Ring, RingDescriptor};
