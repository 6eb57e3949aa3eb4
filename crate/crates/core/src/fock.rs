//! One-mode pseudo-bosonic models on a truncated number basis `e_0 … e_{N−1}`.
//!
//! Truncation corrupts an operator product near the top of the basis: each
//! ladder factor can leak one index. Identities that involve `k` degree-one
//! factors are therefore only trusted on the first `N − guard·k` basis vectors
//! (the *safe block*).

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::catalog::check_swanson_theta;
use crate::error::{Error, Result};
use crate::linalg::{self, C64, ONE, ZERO};

/// Smallest admissible truncation.
pub const MIN_N_MAX: usize = 8;
pub const DEFAULT_GUARD: usize = 2;
/// A vacuum with `‖op·φ₀‖` above this is rejected.
pub const VACUUM_RESIDUAL_LIMIT: f64 = 1e-6;
/// `|⟨φ₀, Ψ₀⟩|` below this cannot be normalized.
pub const MIN_OVERLAP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FockSpace {
    n_max: usize,
    guard: usize,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        Self::with_guard(n_max, DEFAULT_GUARD)
    }

    pub fn with_guard(n_max: usize, guard: usize) -> Result<Self> {
        if n_max < MIN_N_MAX {
            return Err(Error::BadParameter(format!("n_max must be at least {MIN_N_MAX}, got {n_max}")));
        }
        Ok(Self { n_max, guard })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// Number of leading basis vectors on which a degree-`k` expression is
    /// exact.
    pub fn safe_block(&self, degree: usize) -> usize {
        self.n_max.saturating_sub(self.guard * degree)
    }
}

/// Dense matrix on the truncated basis plus the ladder degree it carries.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    matrix: DMatrix<C64>,
    degree: usize,
}

impl FockOperator {
    pub fn new(matrix: DMatrix<C64>, degree: usize) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!("operator matrix is {}x{}", matrix.nrows(), matrix.ncols())));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("operator matrix".into()));
        }
        Ok(Self { matrix, degree })
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), degree: self.degree }
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    /// `x·y − y·x`, of degree `deg x + deg y`.
    pub fn commutator(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
            degree: self.degree + other.degree,
        }
    }

    /// `Σ coef · op`, degree the maximum of the terms.
    pub fn combination(terms: &[(C64, &FockOperator)]) -> Self {
        let n = terms[0].1.dim();
        let mut m = DMatrix::from_element(n, n, ZERO);
        let mut degree = 0;
        for (z, op) in terms {
            m += &op.matrix * *z;
            degree = degree.max(op.degree);
        }
        Self { matrix: m, degree }
    }
}

/// The annihilator `c e_n = √n e_{n−1}`; `c†` is its adjoint.
pub fn ladder_c(space: &FockSpace) -> FockOperator {
    let n = space.n_max;
    let m = DMatrix::from_fn(n, n, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { ZERO });
    FockOperator { matrix: m, degree: 1 }
}

pub fn identity(space: &FockSpace) -> FockOperator {
    FockOperator { matrix: DMatrix::identity(space.n_max, space.n_max), degree: 0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant")]
pub enum ModelSpec {
    /// `a = c − α`, `b = c† − β̄`. `allow_ccr` admits `α = β`, where `b = a†`.
    Shifted { alpha: C64, beta: C64, allow_ccr: bool },
    /// `a = cos θ c + i sin θ c†`, `b = cos θ c† + i sin θ c`.
    Swanson { theta: f64 },
    /// `a = (iP + βQ)/√(2β)`, `b = (−iP + βQ)/√(2β)` with `Q = x + iα`.
    BenderJones { alpha: f64, beta: f64 },
}

impl ModelSpec {
    pub fn shifted(alpha: C64, beta: C64) -> Self {
        ModelSpec::Shifted { alpha, beta, allow_ccr: false }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Shifted { .. } => "shifted",
            ModelSpec::Swanson { .. } => "swanson",
            ModelSpec::BenderJones { .. } => "bender-jones",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |z: C64| z.re.is_finite() && z.im.is_finite();
        match *self {
            ModelSpec::Shifted { alpha, beta, allow_ccr } => {
                if !finite(alpha) || !finite(beta) {
                    return Err(Error::NonFinite("shifted model parameters".into()));
                }
                if alpha == beta && !allow_ccr {
                    return Err(Error::BadParameter(
                        "shifted model needs alpha != beta (set the ccr flag to allow b = a†)".into(),
                    ));
                }
                Ok(())
            }
            ModelSpec::Swanson { theta } => check_swanson_theta(theta),
            ModelSpec::BenderJones { alpha, beta } => {
                if !alpha.is_finite() || !beta.is_finite() {
                    return Err(Error::NonFinite("bender-jones parameters".into()));
                }
                if beta <= 0.0 {
                    return Err(Error::BadParameter(format!("bender-jones needs beta > 0, got {beta}")));
                }
                Ok(())
            }
        }
    }

    /// Default truncation and number of levels for this model.
    pub fn defaults(&self) -> (usize, usize) {
        match self {
            ModelSpec::Swanson { .. } => (80, 6),
            _ => (60, 8),
        }
    }
}

/// The generators `v1 = a`, `v2 = b`, `v3 = b†`, `v4 = a†`, `v = I`.
#[derive(Debug, Clone)]
pub struct ModelOperators {
    pub a: FockOperator,
    pub b: FockOperator,
    pub b_dag: FockOperator,
    pub a_dag: FockOperator,
    pub identity: FockOperator,
}

impl ModelOperators {
    pub fn generators(&self) -> [&FockOperator; 5] {
        [&self.a, &self.b, &self.b_dag, &self.a_dag, &self.identity]
    }
}

pub fn build_model(space: &FockSpace, spec: &ModelSpec) -> Result<ModelOperators> {
    spec.validate()?;
    let c = ladder_c(space);
    let cd = c.adjoint();
    let id = identity(space);
    let (a, b) = match *spec {
        ModelSpec::Shifted { alpha, beta, .. } => (
            FockOperator::combination(&[(ONE, &c), (-alpha, &id)]),
            FockOperator::combination(&[(ONE, &cd), (-beta.conj(), &id)]),
        ),
        ModelSpec::Swanson { theta } => {
            let (s, co) = theta.sin_cos();
            (
                FockOperator::combination(&[(C64::new(co, 0.0), &c), (C64::new(0.0, s), &cd)]),
                FockOperator::combination(&[(C64::new(co, 0.0), &cd), (C64::new(0.0, s), &c)]),
            )
        }
        ModelSpec::BenderJones { alpha, beta } => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let x = FockOperator::combination(&[(C64::new(r, 0.0), &c), (C64::new(r, 0.0), &cd)]);
            // p = (c − c†)/(i√2)
            let p = FockOperator::combination(&[(C64::new(0.0, -r), &c), (C64::new(0.0, r), &cd)]);
            let q = FockOperator::combination(&[(ONE, &x), (C64::new(0.0, alpha), &id)]);
            let k = 1.0 / (2.0 * beta).sqrt();
            (
                FockOperator::combination(&[(C64::new(0.0, k), &p), (C64::new(beta * k, 0.0), &q)]),
                FockOperator::combination(&[(C64::new(0.0, -k), &p), (C64::new(beta * k, 0.0), &q)]),
            )
        }
    };
    Ok(ModelOperators { a_dag: a.adjoint(), b_dag: b.adjoint(), a, b, identity: id })
}

fn check_space(op: &FockOperator, space: &FockSpace) -> Result<()> {
    if op.dim() != space.n_max {
        return Err(Error::ShapeMismatch(format!(
            "operator of size {} on a space with n_max = {}",
            op.dim(),
            space.n_max
        )));
    }
    Ok(())
}

/// `max_j ‖([x, y] − I) e_j‖` over the safe block of degree `deg x + deg y`.
pub fn commutator_defect(x: &FockOperator, y: &FockOperator, space: &FockSpace) -> Result<f64> {
    check_space(x, space)?;
    check_space(y, space)?;
    let block = space.safe_block(x.degree + y.degree);
    let mut m = x.commutator(y).matrix;
    for j in 0..space.n_max {
        m[(j, j)] -= ONE;
    }
    Ok((0..block).map(|j| m.column(j).norm()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vacuum {
    pub vector: DVector<C64>,
    /// `‖op · φ₀‖`.
    pub residual: f64,
}

/// Unit vector minimizing `‖op · v‖` among vectors supported on the safe
/// block, phase-fixed so its leading significant coefficient is real positive.
pub fn vacuum(op: &FockOperator, space: &FockSpace) -> Result<Vacuum> {
    check_space(op, space)?;
    let cols = space.safe_block(op.degree.max(1));
    if cols == 0 {
        return Err(Error::BlockTooSmall(format!("no safe columns at n_max = {}", space.n_max)));
    }
    let restricted = op.matrix.columns(0, cols).into_owned();
    let (x, _) = linalg::smallest_right_singular_vector(&restricted);
    let mut v = DVector::from_element(space.n_max, ZERO);
    v.rows_mut(0, cols).copy_from(&x);

    let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-8 * vmax).copied() {
        v *= lead.conj() / lead.norm();
    }
    let residual = op.apply(&v).norm();
    if residual > VACUUM_RESIDUAL_LIMIT || !residual.is_finite() {
        return Err(Error::NoVacuum { residual });
    }
    Ok(Vacuum { vector: v, residual })
}

/// `φ_n = bⁿ φ₀ / √n!` and `Ψ_n = (a†)ⁿ Ψ₀ / √n!`, with `⟨φ₀, Ψ₀⟩ = 1`.
#[derive(Debug, Clone)]
pub struct BiorthogonalFamily {
    pub phis: Vec<DVector<C64>>,
    pub psis: Vec<DVector<C64>>,
    /// `⟨φ₀, Ψ₀⟩` before rescaling `Ψ₀`.
    pub raw_overlap: C64,
    pub vacuum_residual_a: f64,
    pub vacuum_residual_b_dag: f64,
    pub space: FockSpace,
}

impl BiorthogonalFamily {
    pub fn levels(&self) -> usize {
        self.phis.len() - 1
    }

    /// `G[n][m] = ⟨φ_n, Ψ_m⟩`.
    pub fn gram(&self) -> DMatrix<C64> {
        let k = self.phis.len();
        DMatrix::from_fn(k, k, |n, m| self.phis[n].dotc(&self.psis[m]))
    }

    /// `max |G − I|`.
    pub fn gram_defect(&self) -> f64 {
        let g = self.gram();
        let mut worst: f64 = 0.0;
        for n in 0..g.nrows() {
            for m in 0..g.ncols() {
                let target = if n == m { ONE } else { ZERO };
                worst = worst.max((g[(n, m)] - target).norm());
            }
        }
        worst
    }

    /// Block on which relations among the family vectors are checked.
    fn check_block(&self) -> usize {
        self.space.safe_block(self.levels() + 1)
    }
}

pub fn build_family(space: &FockSpace, spec: &ModelSpec, levels: usize) -> Result<BiorthogonalFamily> {
    let ops = build_model(space, spec)?;
    family_from_operators(space, &ops, levels)
}

pub fn family_from_operators(space: &FockSpace, ops: &ModelOperators, levels: usize) -> Result<BiorthogonalFamily> {
    if space.guard * (levels + 1) >= space.n_max {
        return Err(Error::BlockTooSmall(format!(
            "{levels} levels need guard*(levels+1) < n_max = {}",
            space.n_max
        )));
    }
    let phi0 = vacuum(&ops.a, space)?;
    let psi0 = vacuum(&ops.b_dag, space)?;
    let overlap = phi0.vector.dotc(&psi0.vector);
    if overlap.norm() < MIN_OVERLAP {
        return Err(Error::NormalizationFailure { overlap: overlap.norm() });
    }
    let raise = |op: &FockOperator, v0: DVector<C64>| {
        let mut out = vec![v0];
        for n in 0..levels {
            let next = op.apply(&out[n]) / C64::new(((n + 1) as f64).sqrt(), 0.0);
            out.push(next);
        }
        out
    };
    Ok(BiorthogonalFamily {
        phis: raise(&ops.b, phi0.vector),
        psis: raise(&ops.a_dag, psi0.vector / overlap),
        raw_overlap: overlap,
        vacuum_residual_a: phi0.residual,
        vacuum_residual_b_dag: psi0.residual,
        space: *space,
    })
}

fn head_norm(v: &DVector<C64>, block: usize) -> f64 {
    v.rows(0, block.min(v.len())).norm()
}

/// Residuals of the four lowering/raising relations, maximized over levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderResiduals {
    /// `‖b φ_n − √(n+1) φ_{n+1}‖`
    pub b_phi: f64,
    /// `‖a φ_n − √n φ_{n−1}‖`
    pub a_phi: f64,
    /// `‖a† Ψ_n − √(n+1) Ψ_{n+1}‖`
    pub a_dag_psi: f64,
    /// `‖b† Ψ_n − √n Ψ_{n−1}‖`
    pub b_dag_psi: f64,
}

impl LadderResiduals {
    pub fn max(&self) -> f64 {
        self.b_phi.max(self.a_phi).max(self.a_dag_psi).max(self.b_dag_psi)
    }
}

pub fn ladder_check(family: &BiorthogonalFamily, ops: &ModelOperators) -> LadderResiduals {
    let block = family.check_block();
    let k = family.levels();
    let sq = |n: usize| C64::new((n as f64).sqrt(), 0.0);
    let mut r = LadderResiduals { b_phi: 0.0, a_phi: 0.0, a_dag_psi: 0.0, b_dag_psi: 0.0 };
    for n in 0..k.max(1) {
        let lower = |op: &FockOperator, v: &[DVector<C64>]| {
            let mut out = op.apply(&v[n]);
            if n > 0 {
                out -= &v[n - 1] * sq(n);
            }
            head_norm(&out, block)
        };
        r.a_phi = r.a_phi.max(lower(&ops.a, &family.phis));
        r.b_dag_psi = r.b_dag_psi.max(lower(&ops.b_dag, &family.psis));
        if n < k {
            let up = |op: &FockOperator, v: &[DVector<C64>]| head_norm(&(op.apply(&v[n]) - &v[n + 1] * sq(n + 1)), block);
            r.b_phi = r.b_phi.max(up(&ops.b, &family.phis));
            r.a_dag_psi = r.a_dag_psi.max(up(&ops.a_dag, &family.psis));
        }
    }
    r
}

/// `max_n max(‖b a φ_n − n φ_n‖, ‖a† b† Ψ_n − n Ψ_n‖)` on the check block.
pub fn number_op_check(family: &BiorthogonalFamily, ops: &ModelOperators) -> f64 {
    let block = family.check_block();
    let mut worst: f64 = 0.0;
    for (n, (phi, psi)) in family.phis.iter().zip(&family.psis).enumerate() {
        let nn = C64::new(n as f64, 0.0);
        let rphi = ops.b.apply(&ops.a.apply(phi)) - phi * nn;
        let rpsi = ops.a_dag.apply(&ops.b_dag.apply(psi)) - psi * nn;
        worst = worst.max(head_norm(&rphi, block)).max(head_norm(&rpsi, block));
    }
    worst
}

/// `|⟨f,g⟩ − S_K|` for `K = 0 … levels`, with `S_K = Σ_{n≤K} ⟨f,φ_n⟩⟨Ψ_n,g⟩`
/// (`forward`) and `Σ_{n≤K} ⟨f,Ψ_n⟩⟨φ_n,g⟩` (`backward`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasiBasisResidual {
    pub forward: Vec<f64>,
    pub backward: Vec<f64>,
}

pub fn quasi_basis_residual(
    family: &BiorthogonalFamily,
    f: &DVector<C64>,
    g: &DVector<C64>,
) -> Result<QuasiBasisResidual> {
    let n = family.space.n_max;
    if f.len() != n || g.len() != n {
        return Err(Error::ShapeMismatch(format!("test vectors must have length {n}")));
    }
    let target = f.dotc(g);
    let (mut s_fwd, mut s_bwd) = (ZERO, ZERO);
    let mut out = QuasiBasisResidual { forward: Vec::new(), backward: Vec::new() };
    for (phi, psi) in family.phis.iter().zip(&family.psis) {
        s_fwd += f.dotc(phi) * psi.dotc(g);
        s_bwd += f.dotc(psi) * phi.dotc(g);
        out.forward.push((target - s_fwd).norm());
        out.backward.push((target - s_bwd).norm());
    }
    Ok(out)
}

/// Number-basis vector `e_k`.
pub fn basis_vector(space: &FockSpace, k: usize) -> DVector<C64> {
    let mut v = DVector::from_element(space.n_max, ZERO);
    v[k] = ONE;
    v
}
