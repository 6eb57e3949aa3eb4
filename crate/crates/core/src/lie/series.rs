//! Centers, derived subalgebras and central series.
//!
//! Quotient-phrased definitions are evaluated through their commutator form:
//! `Z_{i+1} = {x : [x, b_j] ∈ Z_i for every basis vector b_j}`.

use nalgebra::DMatrix;
use serde::Serialize;

use super::{LieAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    UpperCentral,
    LowerCentral,
}

/// Terms of a central series.
///
/// The upper series lists `Z_1, Z_2, …` and stops at the first repeat; the
/// lower series lists `l¹ = l, l², …` likewise. `stabilized` is true when the
/// series ends at its trivial term (the whole algebra for the upper series,
/// zero for the lower one), i.e. when the algebra is nilpotent.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub dims: Vec<usize>,
    pub stabilized: bool,
}

impl LieAlgebra {
    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "subspace of ambient dimension {} in an algebra of dimension {}",
                s.ambient_dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Span of vectors using this algebra's tolerance.
    pub fn span(&self, vectors: &[Vec<C64>]) -> Result<Subspace> {
        Subspace::span(self.dim(), vectors, self.tol())
    }

    /// `{x : [x, t] ∈ within for all t in targets}`.
    fn bracket_preimage(&self, targets: &[Vec<C64>], within: &Subspace) -> Subspace {
        let n = self.dim();
        // Linear functionals vanishing on `within`.
        let functionals = if within.is_zero() {
            linalg::unit_vectors(n)
        } else {
            let w = DMatrix::from_fn(within.dim(), n, |r, k| within.basis()[r][k]);
            linalg::nullspace(&w, self.tol())
        };
        if functionals.is_empty() || targets.is_empty() {
            return Subspace::whole(n);
        }
        let nrows = targets.len() * functionals.len();
        let mut m = DMatrix::from_element(nrows, n, ZERO);
        let mut row = 0;
        for t in targets {
            // ad_t^T: entry (i, k) = Σ_j t_j c[i][j][k] = coefficient of b_k in [b_i, t]
            let mut adt = vec![ZERO; n * n];
            for i in 0..n {
                for (j, &tj) in t.iter().enumerate() {
                    if tj == ZERO {
                        continue;
                    }
                    for k in 0..n {
                        adt[i * n + k] += tj * self.constant(i, j, k);
                    }
                }
            }
            for f in &functionals {
                for i in 0..n {
                    let mut s = ZERO;
                    for k in 0..n {
                        s += f[k] * adt[i * n + k];
                    }
                    m[(row, i)] = s;
                }
                row += 1;
            }
        }
        let null = linalg::nullspace(&m, self.tol());
        Subspace::span(n, &null, self.tol()).expect("nullspace vectors have ambient length")
    }

    fn all_basis_vectors(&self) -> Vec<Vec<C64>> {
        linalg::unit_vectors(self.dim())
    }

    /// `Z(l)`: nullspace of the stacked adjoint maps.
    pub fn center(&self) -> Subspace {
        self.bracket_preimage(&self.all_basis_vectors(), &Subspace::zero(self.dim()))
    }

    /// `{x : [x, s] = 0 for all s ∈ S}`.
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        Ok(self.bracket_preimage(s.basis(), &Subspace::zero(self.dim())))
    }

    /// Span of all brackets of pairs drawn from `a` and `b`.
    fn bracket_span(&self, a: &[Vec<C64>], b: &[Vec<C64>]) -> Subspace {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(self.bracket_unchecked(x, y));
            }
        }
        Subspace::span(self.dim(), &out, self.tol()).expect("brackets have ambient length")
    }

    /// `[l, l]`, closed under the bracket until stable.
    pub fn derived_subalgebra(&self) -> Subspace {
        let basis = self.all_basis_vectors();
        let mut d = self.bracket_span(&basis, &basis);
        loop {
            let inner = self.bracket_span(d.basis(), d.basis());
            let next = d.sum(&inner, self.tol()).expect("same ambient");
            if next.dim() == d.dim() {
                return d;
            }
            d = next;
        }
    }

    pub fn upper_central_series(&self) -> SeriesReport {
        let n = self.dim();
        let basis = self.all_basis_vectors();
        let mut terms = Vec::new();
        let mut current = Subspace::zero(n);
        while current.dim() < n {
            let next = self.bracket_preimage(&basis, &current);
            if next.dim() <= current.dim() {
                break;
            }
            terms.push(next.clone());
            current = next;
        }
        let dims = terms.iter().map(Subspace::dim).collect();
        SeriesReport { kind: SeriesKind::UpperCentral, terms, dims, stabilized: current.dim() == n }
    }

    pub fn lower_central_series(&self) -> SeriesReport {
        let n = self.dim();
        let basis = self.all_basis_vectors();
        let mut current = Subspace::whole(n);
        let mut terms = vec![current.clone()];
        while !current.is_zero() {
            let next = self.bracket_span(&basis, current.basis());
            if next.dim() >= current.dim() {
                break;
            }
            terms.push(next.clone());
            current = next;
        }
        let dims = terms.iter().map(Subspace::dim).collect();
        SeriesReport { kind: SeriesKind::LowerCentral, terms, dims, stabilized: current.is_zero() }
    }

    /// Smallest `c` with `Z_c = l`; the zero algebra has class 0.
    pub fn nilpotency_class(&self) -> Result<usize> {
        let ucs = self.upper_central_series();
        if ucs.stabilized {
            Ok(ucs.dims.len())
        } else {
            Err(Error::NotNilpotent { stalled_at: ucs.dims.last().copied().unwrap_or(0), dim: self.dim() })
        }
    }

    /// `[b_j, s] ∈ S` for every basis vector `b_j` and every `s` in a basis of `S`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        for j in 0..self.dim() {
            let bj = self.basis_vector(j);
            for x in s.basis() {
                if !s.contains(&self.bracket_unchecked(&bj, x), self.tol())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All pairwise brackets of the basis of `S` vanish.
    pub fn is_abelian_subspace(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        let zero = Subspace::zero(self.dim());
        for (a, x) in s.basis().iter().enumerate() {
            for y in &s.basis()[a + 1..] {
                if !zero.contains(&self.bracket_unchecked(x, y), self.tol())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        for (a, x) in s.basis().iter().enumerate() {
            for y in &s.basis()[a + 1..] {
                if !s.contains(&self.bracket_unchecked(x, y), self.tol())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Center of the subalgebra `S` (as a subspace of the ambient algebra).
    pub fn subalgebra_center(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let n = self.dim();
        let d = s.dim();
        if d == 0 {
            return Ok(Subspace::zero(n));
        }
        // Σ_r y_r [s_r, s_q] = 0 for every q.
        let cols: Vec<Vec<Vec<C64>>> = s
            .basis()
            .iter()
            .map(|x| s.basis().iter().map(|y| self.bracket_unchecked(x, y)).collect())
            .collect();
        let m = DMatrix::from_fn(d * n, d, |row, r| cols[r][row / n][row % n]);
        let null = linalg::nullspace(&m, self.tol());
        let elems: Vec<Vec<C64>> = null
            .iter()
            .map(|y| {
                let mut v = vec![ZERO; n];
                for (r, x) in s.basis().iter().enumerate() {
                    for (vi, xi) in v.iter_mut().zip(x) {
                        *vi += y[r] * xi;
                    }
                }
                v
            })
            .collect();
        Subspace::span(n, &elems, self.tol())
    }
}
