//! `pbalg`: analyze Lie algebras given by structure constants and audit the
//! pseudo-bosonic operator models. Reports are JSON on standard output.
//!
//! Exit codes: 0 on success, 1 on a computation or input error (reported as
//! `{"error": {"code", "message"}}`), 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};

use pbalg::catalog::{self, CatalogId};
use pbalg::cohomology;
use pbalg::extraction;
use pbalg::fock::{self, FockSpace, ModelSpec};
use pbalg::io::{parse_algebra, to_json_string};
use pbalg::{LieAlgebra, Subspace};

#[derive(Parser)]
#[command(name = "pbalg", version, about = "Nilpotent Lie algebras and pseudo-boson models")]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Antisymmetry and Jacobi residuals of an algebra.
    Validate(AlgebraArgs),
    /// Center, derived subalgebra, central series and nilpotency class.
    Analyze(AlgebraArgs),
    /// Check whether two subalgebras give a semidirect, central or direct sum.
    Decompose(DecomposeArgs),
    /// Identify a nilpotent algebra of dimension at most 5.
    Classify(AlgebraArgs),
    /// Second cohomology (Schur multiplier dimension) and the multiplier audit.
    Schur(AlgebraArgs),
    /// Build a pseudo-boson model on a truncated Fock space.
    Model(ModelArgs),
    /// Extract a model's Lie algebra and compare it with the stated properties.
    Audit(ModelArgs),
    /// List the catalog identifiers.
    CatalogList,
}

#[derive(Args)]
#[group(skip)]
struct AlgebraArgs {
    /// Catalog id, e.g. `abelian:4`, `heisenberg:2`, `l5_6`, `a_sh`, `swanson:0.392699`.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    catalog: Option<String>,
    /// JSON file with `dim`, `tol`, `labels` and `brackets`.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Zero-test threshold overriding the algebra's own.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// JSON list of spanning vectors for A; entries are numbers or `[re, im]`.
    #[arg(long)]
    a_basis: String,
    /// JSON list of spanning vectors for B.
    #[arg(long)]
    b_basis: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Shifted,
    Swanson,
    BenderJones,
}

#[derive(Args)]
struct ModelArgs {
    model: ModelKind,
    /// Shift α as `re,im` (shifted) or a real number (bender-jones).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: Option<C64>,
    /// Shift β as `re,im` (shifted).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "beta_real")]
    beta: Option<C64>,
    /// Real β (bender-jones).
    #[arg(long, allow_hyphen_values = true)]
    beta_real: Option<f64>,
    /// Swanson angle, 0 < |θ| < π/4.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Allow α = β in the shifted model (ordinary bosons).
    #[arg(long)]
    ccr: bool,
    /// Truncation size of the number basis.
    #[arg(long)]
    nmax: Option<usize>,
    /// Number of biorthogonal levels beyond the vacuum.
    #[arg(long)]
    levels: Option<usize>,
    /// Check all ladder relations against the model's tolerance.
    #[arg(long)]
    verify: bool,
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("'{p}': {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected 're' or 're,im', got '{s}'")),
    }
}

/// Failure reported as JSON with exit code 1.
struct Failure {
    code: &'static str,
    message: String,
}

impl From<pbalg::Error> for Failure {
    fn from(e: pbalg::Error) -> Self {
        Self { code: e.code(), message: e.to_string() }
    }
}

fn file_error(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure { code: "FILE_ERROR", message: format!("{}: {e}", path.display()) }
}

fn usage_error(message: impl Into<String>) -> Failure {
    Failure { code: "USAGE_ERROR", message: message.into() }
}

fn load_algebra(args: &AlgebraArgs) -> Result<(LieAlgebra, Option<CatalogId>), Failure> {
    let (l, id) = match (&args.catalog, &args.file) {
        (Some(id), None) => {
            let id: CatalogId = id.parse()?;
            (catalog::make(id)?, Some(id))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| file_error(path, e))?;
            (parse_algebra(&text)?, None)
        }
        _ => return Err(usage_error("exactly one of --catalog and --file is required")),
    };
    match args.tol {
        Some(t) if !(t.is_finite() && t >= 0.0) => Err(pbalg::Error::BadParameter(format!("tol must be >= 0, got {t}")).into()),
        Some(t) => Ok((l.with_tol(t), id)),
        None => Ok((l, id)),
    }
}

#[derive(Serialize)]
struct SubspaceReport {
    dim: usize,
    basis: Vec<Vec<C64>>,
}

impl From<&Subspace> for SubspaceReport {
    fn from(s: &Subspace) -> Self {
        Self { dim: s.dim(), basis: s.basis().to_vec() }
    }
}

fn analyze(l: &LieAlgebra) -> Result<Value, Failure> {
    let ucs = l.upper_central_series();
    let lcs = l.lower_central_series();
    let class = l.nilpotency_class().ok();
    Ok(json!({
        "dim": l.dim(),
        "labels": l.labels(),
        "validation": l.validate(),
        "is_abelian": l.is_abelian(),
        "center": SubspaceReport::from(&l.center()),
        "derived": SubspaceReport::from(&l.derived_subalgebra()),
        "ucs_dims": ucs.dims,
        "lcs_dims": lcs.dims,
        "nilpotent": class.is_some(),
        "nilpotency_class": class,
    }))
}

fn parse_vectors(text: &str, dim: usize, which: &str) -> Result<Vec<Vec<C64>>, Failure> {
    let invalid = |m: String| Failure { code: "INVALID_INPUT", message: format!("{which}: {m}") };
    let raw: Vec<Vec<Value>> = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
    raw.into_iter()
        .map(|v| {
            if v.len() != dim {
                return Err(invalid(format!("vector of length {} in dimension {dim}", v.len())));
            }
            v.into_iter()
                .map(|x| {
                    let z = match &x {
                        Value::Number(n) => n.as_f64().map(|r| C64::new(r, 0.0)),
                        Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
                            (Some(re), Some(im)) => Some(C64::new(re, im)),
                            _ => None,
                        },
                        _ => None,
                    };
                    z.ok_or_else(|| invalid(format!("entry {x} is not a number or [re, im]")))
                })
                .collect()
        })
        .collect()
}

/// The stated classification claim for a catalog algebra,
/// for the algebras that carry one.
fn stated_classification(id: Option<CatalogId>, matched: Option<CatalogId>) -> Option<Value> {
    let a_sh_class = catalog::classify_dim_le5(&catalog::a_sh()).ok()?.matched;
    match id? {
        CatalogId::ASh | CatalogId::BenderJones => {
            let stated = CatalogId::l(5, 2);
            Some(json!({"stated": stated.to_string(), "agrees": matched == Some(stated)}))
        }
        CatalogId::Swanson(_) => Some(json!({
            "stated": "not isomorphic to a_sh",
            "agrees": matched != a_sh_class,
        })),
        _ => None,
    }
}

fn spec_from(args: &ModelArgs) -> ModelSpec {
    match args.model {
        ModelKind::Shifted => ModelSpec::Shifted {
            alpha: args.alpha.unwrap_or(C64::new(0.3, 0.0)),
            beta: args.beta.or(args.beta_real.map(|b| C64::new(b, 0.0))).unwrap_or(C64::new(0.2, 0.0)),
            allow_ccr: args.ccr,
        },
        ModelKind::Swanson => ModelSpec::Swanson { theta: args.theta.unwrap_or(std::f64::consts::PI / 8.0) },
        ModelKind::BenderJones => ModelSpec::BenderJones {
            alpha: args.alpha.map_or(0.7, |a| a.re),
            beta: args.beta_real.or(args.beta.map(|b| b.re)).unwrap_or(1.3),
        },
    }
}

fn model_space(args: &ModelArgs, spec: &ModelSpec) -> Result<(FockSpace, usize), Failure> {
    let (n, k) = spec.defaults();
    Ok((FockSpace::new(args.nmax.unwrap_or(n))?, args.levels.unwrap_or(k)))
}

fn model_report(args: &ModelArgs) -> Result<Value, Failure> {
    let spec = spec_from(args);
    if let ModelSpec::BenderJones { .. } = spec {
        if args.alpha.is_some_and(|a| a.im != 0.0) {
            return Err(usage_error("bender-jones takes a real --alpha"));
        }
    }
    let (space, levels) = model_space(args, &spec)?;
    let ops = fock::build_model(&space, &spec)?;
    let family = fock::family_from_operators(&space, &ops, levels)?;
    let g = family.gram();
    let gram: Vec<Vec<C64>> = (0..g.nrows()).map(|i| g.row(i).iter().copied().collect()).collect();
    let mut report = json!({
        "model": spec,
        "n_max": space.n_max(),
        "guard": space.guard(),
        "levels": levels,
        "vacuum_residual_a": family.vacuum_residual_a,
        "vacuum_residual_b_dag": family.vacuum_residual_b_dag,
        "raw_overlap": family.raw_overlap,
        "gram_defect": family.gram_defect(),
        "gram": gram,
    });
    if args.verify {
        let tol = if matches!(spec, ModelSpec::Swanson { .. }) { 1e-6 } else { 1e-8 };
        let defect = fock::commutator_defect(&ops.a, &ops.b, &space)?;
        let ladder = fock::ladder_check(&family, &ops);
        let number = fock::number_op_check(&family, &ops);
        let e0 = fock::basis_vector(&space, 0);
        let quasi = fock::quasi_basis_residual(&family, &e0, &e0)?;
        let verified = defect <= 1e-12 && family.gram_defect() <= tol && ladder.max() <= tol && number <= tol;
        report["verification"] = json!({
            "tolerance": tol,
            "commutator_defect": defect,
            "ladder": ladder,
            "number_operator": number,
            "quasi_basis_e0": quasi,
            "verified": verified,
        });
    }
    Ok(report)
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Validate(a) => {
            let (l, _) = load_algebra(a)?;
            Ok(json!(l.validate()))
        }
        Command::Analyze(a) => analyze(&load_algebra(a)?.0),
        Command::Decompose(d) => {
            let (l, _) = load_algebra(&d.algebra)?;
            let av = parse_vectors(&d.a_basis, l.dim(), "--a-basis")?;
            let bv = parse_vectors(&d.b_basis, l.dim(), "--b-basis")?;
            let verdict = l.check_decomposition(&l.span(&av)?, &l.span(&bv)?)?;
            Ok(json!(verdict))
        }
        Command::Classify(a) => {
            let (l, id) = load_algebra(a)?;
            let r = catalog::classify_dim_le5(&l)?;
            let mut out = json!(r);
            if let Some(s) = stated_classification(id, r.matched) {
                out["stated_claim"] = s;
            }
            Ok(out)
        }
        Command::Schur(a) => {
            let (l, _) = load_algebra(a)?;
            let report = cohomology::h2_dim(&l);
            let d = l.dim() - l.derived_subalgebra().dim();
            // The bound is for non-abelian nilpotent algebras, where d < n.
            let nilpotent = l.nilpotency_class().is_ok();
            let bound = (nilpotent && d < l.dim()).then(|| cohomology::multiplier_bound(l.dim(), d).ok()).flatten();
            Ok(json!({
                "cohomology": report,
                "abelianization_dim": d,
                "bound": bound,
                "within_bound": bound.map(|b| report.h2_dim as i64 <= b),
                "audit": cohomology::audit_multiplier_claims()?,
            }))
        }
        Command::Model(m) => model_report(m),
        Command::Audit(m) => {
            let spec = spec_from(m);
            let (space, _) = model_space(m, &spec)?;
            Ok(json!(extraction::audit_model(&spec, &space)?))
        }
        Command::CatalogList => {
            let entries: Vec<Value> = catalog::listing()
                .into_iter()
                .map(|id| {
                    let l = catalog::make(id).expect("listed ids are valid");
                    json!({"id": id.to_string(), "dim": l.dim(), "labels": l.labels()})
                })
                .collect();
            Ok(Value::Array(entries))
        }
    }
}

/// Print to stdout, ignoring a closed pipe (e.g. `pbalg ... | head`).
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn error_json(f: &Failure) -> String {
    to_json_string(&json!({"error": {"code": f.code, "message": f.message}}), true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|value| {
        let text = to_json_string(&value, true);
        if let Some(path) = &cli.json {
            fs::write(path, format!("{text}\n")).map_err(|e| file_error(path, e))?;
        }
        Ok(text)
    });
    match result {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            emit(&error_json(&f));
            ExitCode::from(1)
        }
    }
}
