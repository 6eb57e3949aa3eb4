use serde::Serialize;

use super::{LieAlgebra, Subspace};
use crate::error::{Error, Result};

/// Which of the sum conditions a pair of subalgebras satisfies.
///
/// * semidirect: `A` ideal, `A + B = l`, `A ∩ B = 0`
/// * direct: semidirect and `B` also an ideal
/// * central: `A` ideal, `A + B = l`, `A ∩ B ⊆ Z(A) ∩ Z(B)`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionVerdict {
    pub dim_a: usize,
    pub dim_b: usize,
    pub spans_whole: bool,
    pub a_is_ideal: bool,
    pub b_is_ideal: bool,
    pub a_is_abelian: bool,
    pub b_is_abelian: bool,
    pub intersection_dim: usize,
    pub is_semidirect: bool,
    pub is_central: bool,
    pub is_direct: bool,
}

impl LieAlgebra {
    pub fn check_decomposition(&self, a: &Subspace, b: &Subspace) -> Result<DecompositionVerdict> {
        let tol = self.tol();
        if !self.is_subalgebra(a)? {
            return Err(Error::NotSubalgebra("A".into()));
        }
        if !self.is_subalgebra(b)? {
            return Err(Error::NotSubalgebra("B".into()));
        }
        let spans_whole = a.sum(b, tol)?.dim() == self.dim();
        let a_is_ideal = self.is_ideal(a)?;
        let b_is_ideal = self.is_ideal(b)?;
        let meet = a.intersect(b, tol)?;
        let centers = self.subalgebra_center(a)?.intersect(&self.subalgebra_center(b)?, tol)?;
        let meet_central = centers.contains_subspace(&meet, tol)?;

        let is_semidirect = spans_whole && a_is_ideal && meet.is_zero();
        Ok(DecompositionVerdict {
            dim_a: a.dim(),
            dim_b: b.dim(),
            spans_whole,
            a_is_ideal,
            b_is_ideal,
            a_is_abelian: self.is_abelian_subspace(a)?,
            b_is_abelian: self.is_abelian_subspace(b)?,
            intersection_dim: meet.dim(),
            is_semidirect,
            is_central: spans_whole && a_is_ideal && meet_central,
            is_direct: is_semidirect && b_is_ideal,
        })
    }
}
