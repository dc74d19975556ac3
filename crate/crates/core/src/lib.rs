//! Exact computation of the relation type of ideals in polynomial rings and
//! their quotients.
//!
//! The relation type of an ideal `I = (f_1, .., f_m)` of `R = k[x]/a` is the
//! largest T-degree needed to generate the defining ideal `Q` of the Rees
//! algebra `R[It]` inside `R[T_1, .., T_m]`. This crate builds `Q` by
//! eliminating an auxiliary variable, extracts minimal generators by graded
//! Nakayama, and cross-checks the result against the associated graded ring
//! and a Gröbner-free linear-algebra oracle.

pub mod blowup;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod field;
pub mod geometry;
pub mod groebner;
pub mod linalg;
pub mod oracle;
pub mod poly;

pub use error::{Error, Interruption, Result};
pub use exec::{Config, Exec, Limits};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use poly::{Monomial, Poly, Ring, RingSpec, TermOrder, VarKind};
