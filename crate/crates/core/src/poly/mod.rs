//! Sparse multivariate polynomials over exact fields.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Exponent, Monomial, TermOrder};
pub use parse::RingSpec;
pub use polynomial::{Poly, Term};
pub use ring::{Ring, VarKind};
