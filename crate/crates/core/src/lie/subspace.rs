use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, C64};

/// A linear subspace of `ℂⁿ`, stored as the reduced row-echelon basis of its
/// span. Two subspaces are equal exactly when their canonical bases agree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<C64>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: linalg::unit_vectors(ambient_dim) }
    }

    /// Span of arbitrary vectors. The rank is decided by singular values, then
    /// the orthonormal row space is brought to reduced row-echelon form.
    pub fn span(ambient_dim: usize, vectors: &[Vec<C64>], tol: f64) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::ShapeMismatch(format!(
                    "vector of length {} in ambient dimension {ambient_dim}",
                    v.len()
                )));
            }
        }
        let ortho = linalg::row_space(vectors, ambient_dim, tol);
        let basis = linalg::rref(&ortho, tol);
        debug_assert_eq!(basis.len(), ortho.len());
        Ok(Self { ambient_dim, basis })
    }

    /// Re-run the row reduction on the stored basis. A no-op on any value
    /// produced by this type.
    pub fn canonicalize(&self, tol: f64) -> Self {
        Self { ambient_dim: self.ambient_dim, basis: linalg::rref(&self.basis, tol) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::ShapeMismatch(format!(
                "subspaces of ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Membership test: the component of `x` orthogonal to the subspace must
    /// be at most `tol * max(‖x‖, 1)`.
    pub fn contains(&self, x: &[C64], tol: f64) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in ambient dimension {}",
                x.len(),
                self.ambient_dim
            )));
        }
        let q = linalg::row_space(&self.basis, self.ambient_dim, tol);
        Ok(residual_norm(&q, x) <= tol * linalg::norm(x).max(1.0))
    }

    pub fn contains_subspace(&self, other: &Subspace, tol: f64) -> Result<bool> {
        self.check_ambient(other)?;
        let q = linalg::row_space(&self.basis, self.ambient_dim, tol);
        Ok(other
            .basis
            .iter()
            .all(|x| residual_norm(&q, x) <= tol * linalg::norm(x).max(1.0)))
    }

    /// Equality up to `tol`, robust to rounding in the canonical bases.
    pub fn approx_eq(&self, other: &Subspace, tol: f64) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains_subspace(other, tol)?)
    }

    pub fn sum(&self, other: &Subspace, tol: f64) -> Result<Subspace> {
        self.check_ambient(other)?;
        let all: Vec<Vec<C64>> = self.basis.iter().chain(other.basis.iter()).cloned().collect();
        Subspace::span(self.ambient_dim, &all, tol)
    }

    /// Intersection via the nullspace of `[Sᵀ | −Tᵀ]`: each null vector
    /// `(x, y)` gives the common element `Σ x_r s_r = Σ y_r t_r`.
    pub fn intersect(&self, other: &Subspace, tol: f64) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let (s, t) = (self.dim(), other.dim());
        if s == 0 || t == 0 {
            return Ok(Subspace::zero(n));
        }
        // Orthonormal bases keep the stacked system well conditioned.
        let qs = linalg::row_space(&self.basis, n, tol);
        let qt = linalg::row_space(&other.basis, n, tol);
        let m = DMatrix::from_fn(n, s + t, |i, j| if j < s { qs[j][i] } else { -qt[j - s][i] });
        let null = linalg::nullspace(&m, tol);
        let common: Vec<Vec<C64>> = null
            .iter()
            .map(|coef| {
                let mut v = vec![linalg::ZERO; n];
                for (r, q) in qs.iter().enumerate() {
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi += coef[r] * qi;
                    }
                }
                v
            })
            .collect();
        Subspace::span(n, &common, tol)
    }
}

/// `‖x − Σ q ⟨q, x⟩‖` for an orthonormal list `q`.
fn residual_norm(q: &[Vec<C64>], x: &[C64]) -> f64 {
    let mut r = x.to_vec();
    for qi in q {
        let c = linalg::inner(qi, x);
        for (ri, qij) in r.iter_mut().zip(qi) {
            *ri -= c * qij;
        }
    }
    linalg::norm(&r)
}
