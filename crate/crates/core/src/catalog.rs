//! Named Lie algebras and an invariant-based classifier for nilpotent
//! algebras of dimension at most five.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::cohomology;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{C64, ONE};

/// Identifier of a catalog algebra.
///
/// `Small { dim, index }` is `l_{dim,index}` from the standard list of
/// nilpotent algebras of dimension 3, 4 and 5.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogId {
    Abelian(usize),
    Heisenberg(usize),
    Small { dim: usize, index: usize },
    ASh,
    Swanson(f64),
    BenderJones,
}

impl CatalogId {
    pub fn l(dim: usize, index: usize) -> Self {
        CatalogId::Small { dim, index }
    }

    /// The fourteen entries of the dimension 3–5 list, in order.
    pub fn small_list() -> Vec<CatalogId> {
        let mut v = Vec::new();
        for (dim, count) in [(3, 2), (4, 3), (5, 9)] {
            for index in 1..=count {
                v.push(CatalogId::l(dim, index));
            }
        }
        v
    }

    pub fn dim(&self) -> usize {
        match *self {
            CatalogId::Abelian(n) => n,
            CatalogId::Heisenberg(m) => 2 * m + 1,
            CatalogId::Small { dim, .. } => dim,
            CatalogId::ASh | CatalogId::Swanson(_) | CatalogId::BenderJones => 5,
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Abelian(n) => write!(f, "abelian:{n}"),
            CatalogId::Heisenberg(m) => write!(f, "heisenberg:{m}"),
            CatalogId::Small { dim, index } => write!(f, "l{dim}_{index}"),
            CatalogId::ASh => write!(f, "a_sh"),
            CatalogId::Swanson(theta) => write!(f, "swanson:{theta}"),
            CatalogId::BenderJones => write!(f, "bender_jones"),
        }
    }
}

impl Serialize for CatalogId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown catalog id '{s}'"));
        let t = s.trim().to_ascii_lowercase();
        if let Some((name, arg)) = t.split_once(':') {
            return match name {
                "abelian" => arg.parse().map(CatalogId::Abelian).map_err(|_| bad()),
                "heisenberg" => arg.parse().map(CatalogId::Heisenberg).map_err(|_| bad()),
                "swanson" => arg.parse().map(CatalogId::Swanson).map_err(|_| bad()),
                _ => Err(bad()),
            };
        }
        match t.as_str() {
            "a_sh" | "ash" => return Ok(CatalogId::ASh),
            "bender_jones" | "bender_jones_algebra" | "bender-jones" => return Ok(CatalogId::BenderJones),
            _ => {}
        }
        let rest = t.strip_prefix('l').ok_or_else(bad)?;
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let (d, k) = rest.split_once(['_', ',']).ok_or_else(bad)?;
        let id = CatalogId::l(d.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?);
        if CatalogId::small_list().contains(&id) {
            Ok(id)
        } else {
            Err(bad())
        }
    }
}

fn labels_v(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// `v1 … v4, v` ordering used by the five-dimensional model algebras.
fn labels_model() -> Vec<String> {
    vec!["v1".into(), "v2".into(), "v3".into(), "v4".into(), "v".into()]
}

/// Relations given one-based as `[v_i, v_j] = v_k`.
fn from_unit_relations(dim: usize, rels: &[(usize, usize, usize)]) -> Result<LieAlgebra> {
    let r: Vec<_> = rels.iter().map(|&(i, j, k)| (i - 1, j - 1, k - 1, ONE)).collect();
    LieAlgebra::from_relations(dim, &r, Some(labels_v(dim)))
}

pub fn abelian(n: usize) -> LieAlgebra {
    from_unit_relations(n, &[]).expect("abelian algebra is valid")
}

/// `h(m)`: `[v_{2i-1}, v_{2i}] = v`, basis `v1 … v_{2m}, v`.
pub fn heisenberg(m: usize) -> Result<LieAlgebra> {
    if m < 1 {
        return Err(Error::BadParameter(format!("heisenberg(m) needs m >= 1, got {m}")));
    }
    let n = 2 * m + 1;
    let r: Vec<_> = (0..m).map(|i| (2 * i, 2 * i + 1, n - 1, ONE)).collect();
    let mut labels = labels_v(2 * m);
    labels.push("v".into());
    LieAlgebra::from_relations(n, &r, Some(labels))
}

/// The shifted-oscillator algebra: `[v1,v2] = [v3,v4] = [v1,v4] = [v3,v2] = v`.
pub fn a_sh() -> LieAlgebra {
    let r = [(0, 1, 4, ONE), (2, 3, 4, ONE), (0, 3, 4, ONE), (1, 2, 4, -ONE)];
    LieAlgebra::from_relations(5, &r, Some(labels_model())).expect("a_sh is valid")
}

/// The Swanson algebra: as `a_sh` but `[v1,v4] = [v3,v2] = cos 2θ v` and
/// `[v1,v3] = [v4,v2] = −i sin 2θ v`.
pub fn swanson(theta: f64) -> Result<LieAlgebra> {
    check_swanson_theta(theta)?;
    let (s2, c2) = (2.0 * theta).sin_cos();
    let r = [
        (0, 1, 4, ONE),
        (2, 3, 4, ONE),
        (0, 3, 4, C64::new(c2, 0.0)),
        (1, 2, 4, C64::new(-c2, 0.0)),
        (0, 2, 4, C64::new(0.0, -s2)),
        (1, 3, 4, C64::new(0.0, s2)),
    ];
    LieAlgebra::from_relations(5, &r, Some(labels_model()))
}

pub(crate) fn check_swanson_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta == 0.0 || theta.abs() >= FRAC_PI_4 {
        return Err(Error::BadParameter(format!(
            "swanson angle must satisfy 0 < |theta| < pi/4, got {theta}"
        )));
    }
    Ok(())
}

/// Construct a catalog algebra with generators labeled in presentation order.
pub fn make(id: CatalogId) -> Result<LieAlgebra> {
    match id {
        CatalogId::Abelian(n) => Ok(abelian(n)),
        CatalogId::Heisenberg(m) => heisenberg(m),
        CatalogId::ASh => Ok(a_sh()),
        CatalogId::BenderJones => Ok(a_sh()),
        CatalogId::Swanson(theta) => swanson(theta),
        CatalogId::Small { dim, index } => {
            let rels: &[(usize, usize, usize)] = match (dim, index) {
                (3, 1) | (4, 1) | (5, 1) => &[],
                (3, 2) | (4, 2) | (5, 2) => &[(1, 2, 3)],
                (4, 3) | (5, 3) => &[(1, 2, 3), (1, 3, 4)],
                (5, 4) => &[(1, 2, 5), (3, 4, 5)],
                (5, 5) => &[(1, 2, 3), (1, 3, 5), (2, 4, 5)],
                (5, 6) => &[(1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 3, 5)],
                (5, 7) => &[(1, 2, 3), (1, 3, 4), (1, 4, 5)],
                (5, 8) => &[(1, 2, 4), (1, 3, 5)],
                (5, 9) => &[(1, 2, 3), (1, 3, 4), (2, 3, 5)],
                _ => return Err(Error::BadParameter(format!("no catalog algebra l{dim}_{index}"))),
            };
            from_unit_relations(dim, rels)
        }
    }
}

/// Block-diagonal direct sum.
pub fn direct_sum(l1: &LieAlgebra, l2: &LieAlgebra) -> LieAlgebra {
    l1.direct_sum(l2)
}

/// Isomorphism invariants of a nilpotent algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub lcs_dims: Vec<usize>,
    pub ucs_dims: Vec<usize>,
    pub class: usize,
    pub dim_derived: usize,
    pub dim_center: usize,
    pub dim_centralizer_of_derived: usize,
    pub h2_dim: usize,
}

pub fn fingerprint(l: &LieAlgebra) -> Result<Fingerprint> {
    let class = l.nilpotency_class()?;
    let derived = l.derived_subalgebra();
    Ok(Fingerprint {
        dim: l.dim(),
        lcs_dims: l.lower_central_series().dims,
        ucs_dims: l.upper_central_series().dims,
        class,
        dim_derived: derived.dim(),
        dim_center: l.center().dim(),
        dim_centralizer_of_derived: l.centralizer(&derived)?.dim(),
        h2_dim: cohomology::h2_dim(l).h2_dim,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationResult {
    pub matched: Option<CatalogId>,
    pub fingerprint: Fingerprint,
    pub ambiguous_with: Vec<CatalogId>,
}

/// Reference fingerprints: abelian algebras below dimension 3, then the
/// dimension 3–5 list. Built on first use.
pub fn reference_table() -> &'static [(CatalogId, Fingerprint)] {
    static TABLE: OnceLock<Vec<(CatalogId, Fingerprint)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..3)
            .map(CatalogId::Abelian)
            .chain(CatalogId::small_list())
            .map(|id| {
                let l = make(id).expect("catalog entries are valid");
                (id, fingerprint(&l).expect("catalog entries are nilpotent"))
            })
            .collect()
    })
}

/// Match the fingerprint of `l` against the reference table.
pub fn classify_dim_le5(l: &LieAlgebra) -> Result<ClassificationResult> {
    if l.dim() > 5 {
        return Err(Error::DimTooLarge(l.dim()));
    }
    let fp = fingerprint(l)?;
    let hits: Vec<CatalogId> = reference_table()
        .iter()
        .filter(|(_, f)| *f == fp)
        .map(|(id, _)| *id)
        .collect();
    Ok(match hits.len() {
        1 => ClassificationResult { matched: Some(hits[0]), fingerprint: fp, ambiguous_with: Vec::new() },
        _ => ClassificationResult { matched: None, fingerprint: fp, ambiguous_with: hits },
    })
}

/// Catalog ids listed by the `catalog-list` command.
pub fn listing() -> Vec<CatalogId> {
    let mut v = vec![
        CatalogId::Abelian(1),
        CatalogId::Abelian(2),
        CatalogId::Abelian(3),
        CatalogId::Heisenberg(1),
        CatalogId::Heisenberg(2),
    ];
    v.extend(CatalogId::small_list());
    v.extend([CatalogId::ASh, CatalogId::Swanson(std::f64::consts::PI / 8.0), CatalogId::BenderJones]);
    v
}
