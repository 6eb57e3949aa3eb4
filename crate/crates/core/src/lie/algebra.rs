use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};

/// Default zero-test threshold for rank and membership decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Outcome of checking a structure-constant array.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub max_antisymmetry_defect: f64,
    pub max_jacobi_residual: f64,
    pub tol: f64,
    pub accepted: bool,
}

/// Measure antisymmetry and Jacobi defects of a raw `n × n × n` array laid out
/// as `constants[(i * n + j) * n + k]` = coefficient of `b_k` in `[b_i, b_j]`.
pub fn validate_constants(dim: usize, constants: &[C64], tol: f64) -> Result<ValidationReport> {
    if constants.len() != dim * dim * dim {
        return Err(Error::ShapeMismatch(format!(
            "expected {} structure constants for dimension {dim}, found {}",
            dim * dim * dim,
            constants.len()
        )));
    }
    if let Some(pos) = constants.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        let (i, j, k) = (pos / (dim * dim), (pos / dim) % dim, pos % dim);
        return Err(Error::NonFinite(format!("structure constant c[{i}][{j}][{k}]")));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::BadParameter(format!("tolerance must be finite and nonnegative, got {tol}")));
    }
    let c = |i: usize, j: usize, k: usize| constants[(i * dim + j) * dim + k];

    let mut anti = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                anti = anti.max((c(i, j, k) + c(j, i, k)).norm());
            }
        }
    }

    let mut jac = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut sq = 0.0;
                for m in 0..dim {
                    let mut r = ZERO;
                    for l in 0..dim {
                        r += c(j, k, l) * c(i, l, m) + c(k, i, l) * c(j, l, m) + c(i, j, l) * c(k, l, m);
                    }
                    sq += r.norm_sqr();
                }
                jac = jac.max(sq.sqrt());
            }
        }
    }

    Ok(ValidationReport {
        dim,
        max_antisymmetry_defect: anti,
        max_jacobi_residual: jac,
        tol,
        accepted: anti <= tol && jac <= tol,
    })
}

/// A finite-dimensional complex Lie algebra given by structure constants
/// `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<C64>,
    labels: Vec<String>,
    tol: f64,
}

impl LieAlgebra {
    /// Build from a full constants array. Rejects arrays whose antisymmetry or
    /// Jacobi defect exceeds `tol`; the stored constants are then made exactly
    /// antisymmetric from the `i < j` half.
    pub fn new(dim: usize, mut constants: Vec<C64>, labels: Option<Vec<String>>, tol: f64) -> Result<Self> {
        let report = validate_constants(dim, &constants, tol)?;
        if report.max_antisymmetry_defect > tol {
            return Err(Error::AntisymmetryViolation { defect: report.max_antisymmetry_defect });
        }
        if report.max_jacobi_residual > tol {
            return Err(Error::JacobiViolation { residual: report.max_jacobi_residual });
        }
        for i in 0..dim {
            for k in 0..dim {
                constants[(i * dim + i) * dim + k] = ZERO;
            }
            for j in (i + 1)..dim {
                for k in 0..dim {
                    constants[(j * dim + i) * dim + k] = -constants[(i * dim + j) * dim + k];
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(Error::ShapeMismatch(format!("{} labels for dimension {dim}", l.len())));
            }
            Some(l) => l,
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        Ok(Self { dim, constants, labels, tol })
    }

    /// Build from the brackets `[b_i, b_j]` with `i < j`; the rest follows
    /// by antisymmetry. Unlisted pairs commute.
    pub fn from_brackets(
        dim: usize,
        brackets: &[(usize, usize, Vec<C64>)],
        labels: Option<Vec<String>>,
        tol: f64,
    ) -> Result<Self> {
        let mut constants = vec![ZERO; dim * dim * dim];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= dim {
                return Err(Error::InvalidInput(format!(
                    "bracket indices must satisfy i < j < {dim}, got ({i}, {j})"
                )));
            }
            if coeffs.len() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "bracket ({i}, {j}) has {} coefficients, expected {dim}",
                    coeffs.len()
                )));
            }
            for (k, &z) in coeffs.iter().enumerate() {
                constants[(i * dim + j) * dim + k] = z;
                constants[(j * dim + i) * dim + k] = -z;
            }
        }
        Self::new(dim, constants, labels, tol)
    }

    /// Convenience for real integer-coefficient presentations: each entry
    /// `(i, j, k, value)` sets `c[i][j][k]`, zero-based, `i < j`.
    pub fn from_relations(
        dim: usize,
        relations: &[(usize, usize, usize, C64)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut brackets: Vec<(usize, usize, Vec<C64>)> = Vec::new();
        for &(i, j, k, z) in relations {
            match brackets.iter_mut().find(|(a, b, _)| *a == i && *b == j) {
                Some((_, _, v)) => v[k] += z,
                None => {
                    let mut v = vec![ZERO; dim];
                    if k >= dim {
                        return Err(Error::InvalidInput(format!("relation target {k} out of range")));
                    }
                    v[k] = z;
                    brackets.push((i, j, v));
                }
            }
        }
        Self::from_brackets(dim, &brackets, labels, DEFAULT_TOL)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::ShapeMismatch(format!("{} labels for dimension {}", labels.len(), self.dim)));
        }
        self.labels = labels;
        Ok(self)
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> C64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[C64] {
        &self.constants
    }

    /// Re-run the defect checks on the stored constants.
    pub fn validate(&self) -> ValidationReport {
        validate_constants(self.dim, &self.constants, self.tol).expect("stored constants are well formed")
    }

    /// `b_i` as a coordinate vector.
    pub fn basis_vector(&self, i: usize) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        v[i] = linalg::ONE;
        v
    }

    fn check_len(&self, x: &[C64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in an algebra of dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[C64], y: &[C64]) -> Result<Vec<C64>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == ZERO || i == j {
                    continue;
                }
                let w = xi * yj;
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.constants[base + k];
                }
            }
        }
        out
    }

    /// Express the algebra in a new basis whose `i`-th element is row `i` of
    /// `p` (coordinates in the current basis).
    pub fn change_basis(&self, p: &DMatrix<C64>) -> Result<Self> {
        let n = self.dim;
        if p.shape() != (n, n) {
            return Err(Error::ShapeMismatch(format!("basis change must be {n} x {n}, got {:?}", p.shape())));
        }
        if linalg::rank(p, self.tol) < n {
            return Err(Error::BadParameter("basis change matrix is singular".into()));
        }
        let pinv = p.clone().try_inverse().ok_or_else(|| Error::BadParameter("basis change matrix is singular".into()))?;
        let rows: Vec<Vec<C64>> = (0..n).map(|i| p.row(i).iter().copied().collect()).collect();
        let mut constants = vec![ZERO; n * n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let z = self.bracket_unchecked(&rows[i], &rows[j]);
                for k in 0..n {
                    let mut s = ZERO;
                    for (l, &zl) in z.iter().enumerate() {
                        s += zl * pinv[(l, k)];
                    }
                    constants[(i * n + j) * n + k] = s;
                    constants[(j * n + i) * n + k] = -s;
                }
            }
        }
        // Rounding in the transformed constants scales with the entries of p
        // and its inverse; loosen the Jacobi check accordingly.
        let scale = p.iter().chain(pinv.iter()).map(|z| z.norm()).fold(1.0, f64::max);
        let check_tol = self.tol.max(1e-12 * scale.powi(4));
        Ok(Self::new(n, constants, Some(self.labels.clone()), check_tol)?.with_tol(self.tol))
    }

    /// Block-diagonal direct sum; cross brackets vanish.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut constants = vec![ZERO; n * n * n];
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    constants[(i * n + j) * n + k] = self.constant(i, j, k);
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    constants[((n1 + i) * n + n1 + j) * n + n1 + k] = other.constant(i, j, k);
                }
            }
        }
        let labels = self.labels.iter().chain(other.labels.iter()).cloned().collect();
        LieAlgebra { dim: n, constants, labels, tol: self.tol.max(other.tol) }
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(|z| z.norm() <= self.tol)
    }
}
