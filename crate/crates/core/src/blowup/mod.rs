//! Rees-algebra, symmetric-algebra and associated-graded presentations of an
//! ideal, and its relation type.
//!
//! For `I = (f_1, .., f_m)` in `R = k[x]/a`, the Rees ideal `Q` is the kernel
//! of `R[T_1, .., T_m] -> R[t]`, `T_i -> f_i t`. It is computed as
//! `((T_i - t f_i) + a) ∩ k[x, T]` by eliminating `t`, then split into
//! T-homogeneous pieces. The relation type is the top T-degree of a minimal
//! homogeneous generating set of `Q`.

mod cyclic;
mod matrix;
mod rees;
mod relation_type;

use std::sync::Arc;

pub use cyclic::relation_type_cyclic;
pub use matrix::{jacobian_dual, linear_relation_matrix, PolyMatrix};
pub use rees::{rees_ideal, ReesPresentation};
pub use relation_type::{
    gr_presentation, is_linear_type, relation_type, sym_ideal, Certificate, GeneratorInfo, GrPresentation,
    RelationTypeReport,
};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, Ring, VarKind};

/// A base ring `k[x]/a`: a polynomial ring in x-variables together with the
/// generators of `a` (possibly none).
#[derive(Clone, Debug)]
pub struct BaseRing<F: Field> {
    ring: Arc<Ring<F>>,
    ideal: Vec<Poly<F>>,
}

impl<F: Field> BaseRing<F> {
    pub fn polynomial(ring: Arc<Ring<F>>) -> Self {
        BaseRing { ring, ideal: Vec::new() }
    }

    pub fn quotient(ring: Arc<Ring<F>>, ideal: Vec<Poly<F>>) -> Result<Self> {
        if (0..ring.nvars()).any(|i| ring.kind(i) != VarKind::X) {
            return Err(Error::InvalidRing("base ring must contain only x-variables".into()));
        }
        let ideal = ideal
            .into_iter()
            .map(|p| p.transfer(&ring))
            .filter(|p| !matches!(p, Ok(q) if q.is_zero()))
            .collect::<Result<Vec<_>>>()?;
        Ok(BaseRing { ring, ideal })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn ideal(&self) -> &[Poly<F>] {
        &self.ideal
    }

    pub fn is_polynomial(&self) -> bool {
        self.ideal.is_empty()
    }
}
