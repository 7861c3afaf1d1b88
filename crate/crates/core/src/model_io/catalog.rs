//! Built-in fixtures: abelian algebras, `so(3)`, `sl2(R)`, the Heisenberg
//! algebra, the diagonal affine algebras `R ⋉ R^n` and the scaled `so(3)`
//! bundle over `R^2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::poly::{rat, Poly, PolyRing};
use crate::spinor::bundle::{scaled_so3_bundle, LieBundle};

/// Expected outcomes carried alongside an algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_height: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Metadata {
    fn new(verdict: &str, height: Option<usize>, note: &str) -> Self {
        Metadata {
            expected_verdict: Some(verdict.to_string()),
            expected_height: height,
            note: Some(note.to_string()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.expected_verdict.is_none() && self.expected_height.is_none() && self.note.is_none()
    }
}

#[derive(Debug, Clone)]
pub enum CatalogItem {
    Algebra(LieAlgebra),
    Bundle(LieBundle),
}

impl CatalogItem {
    pub fn dim(&self) -> usize {
        match self {
            CatalogItem::Algebra(l) => l.dim(),
            CatalogItem::Bundle(b) => b.fibre_dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub dimension: usize,
    pub kind: &'static str,
    #[serde(flatten)]
    pub metadata: Metadata,
}

fn so3_entries() -> Vec<(usize, usize, usize, i64)> {
    vec![(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)]
}

/// `[X1,X2] = X3`, `[X2,X3] = X1`, `[X3,X1] = X2`.
pub fn so3() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        so3_entries().into_iter().map(|(i, j, k, v)| (i, j, k, rat(v))),
        Some("so3".into()),
    )
    .expect("so3 table")
}

/// `[e1,e2] = -e3`, `[e2,e3] = e1`, `[e3,e1] = e2`; the Killing form is
/// `diag(2, 2, -2)`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        [(0, 1, 2, rat(-1)), (1, 2, 0, rat(1)), (0, 2, 1, rat(-1))],
        Some("sl2".into()),
    )
    .expect("sl2 table")
}

/// `[X,Y] = Z`.
pub fn heis3() -> LieAlgebra {
    LieAlgebra::from_brackets(3, [(0, 1, 2, rat(1))], Some("heis3".into())).expect("heis3 table")
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::from_brackets(n, [], Some(format!("abelian{n}"))).expect("abelian table")
}

/// `R ⋉ R^n` with basis `X, e_1, …, e_n` and `[X, e_i] = e_i`.
pub fn diagonal_affine(n: usize) -> LieAlgebra {
    LieAlgebra::from_brackets(
        n + 1,
        (1..=n).map(|i| (0, i, i, rat(1))),
        Some(format!("diagonal_affine{n}")),
    )
    .expect("diagonal affine table")
}

pub const ABELIAN_LISTED: std::ops::RangeInclusive<usize> = 1..=6;
pub const DIAGONAL_AFFINE_LISTED: std::ops::RangeInclusive<usize> = 1..=5;
const MAX_RESOLVED_DIM: usize = 12;

/// Every listed entry with its expected outcome.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        CatalogEntry {
            name: "so3".into(),
            dimension: 3,
            kind: "algebra",
            metadata: Metadata::new("LiftsAsDiracOnly", Some(1), "compact simple; constant height 1"),
        },
        CatalogEntry {
            name: "sl2".into(),
            dimension: 3,
            kind: "algebra",
            metadata: Metadata::new("DoesNotLift", None, "height 0 exactly on the light cone"),
        },
        CatalogEntry {
            name: "heis3".into(),
            dimension: 3,
            kind: "algebra",
            metadata: Metadata::new("DoesNotLift", None, "heights 0 and 1"),
        },
    ];
    for n in ABELIAN_LISTED {
        out.push(CatalogEntry {
            name: format!("abelian{n}"),
            dimension: n,
            kind: "algebra",
            metadata: Metadata::new("LiftsAsPoisson", Some(0), "zero bracket"),
        });
    }
    for n in DIAGONAL_AFFINE_LISTED {
        out.push(CatalogEntry {
            name: format!("diagonal_affine{n}"),
            dimension: n + 1,
            kind: "algebra",
            metadata: Metadata::new("LiftsAsPoisson", Some(0), "R acting on R^n by scalars"),
        });
    }
    out.push(CatalogEntry {
        name: "scaled_so3_bundle".into(),
        dimension: 3,
        kind: "bundle",
        metadata: Metadata::new(
            "depends on f",
            None,
            "so(3) scaled by f(y1, y2) over R^2; lifts iff f = 0 or f vanishes nowhere",
        ),
    });
    out
}

fn parse_indexed(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let digits = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    digits.parse().ok()
}

/// Resolves a catalog name. `abelianN`, `abelian(N)`, `diagonal_affineN`
/// and `diagonal_affine(N)` are accepted for any dimension up to 12. The
/// bundle takes its scaling function from `f` (default `1`).
pub fn resolve(name: &str, f: Option<&str>) -> Result<CatalogItem> {
    let unknown = || Error::Usage(format!("unknown catalog entry '{name}'"));
    if f.is_some() && !matches!(name, "scaled_so3" | "scaled_so3_bundle") {
        return Err(Error::Usage("--f only applies to scaled_so3_bundle".into()));
    }
    let item = match name {
        "so3" => CatalogItem::Algebra(so3()),
        "sl2" => CatalogItem::Algebra(sl2()),
        "heis3" => CatalogItem::Algebra(heis3()),
        "scaled_so3" | "scaled_so3_bundle" => {
            let ring = PolyRing::fibre_and_base(3, 2);
            let f = match f {
                None => Poly::constant(rat(1)),
                Some(text) => parse_base_function(&ring, text)?,
            };
            CatalogItem::Bundle(scaled_so3_bundle(f)?)
        }
        _ => {
            if let Some(n) = parse_indexed(name, "diagonal_affine") {
                if n == 0 || n + 1 > MAX_RESOLVED_DIM {
                    return Err(unknown());
                }
                CatalogItem::Algebra(diagonal_affine(n))
            } else if let Some(n) = parse_indexed(name, "abelian") {
                if n == 0 || n > MAX_RESOLVED_DIM {
                    return Err(unknown());
                }
                CatalogItem::Algebra(abelian(n))
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(item)
}

/// Parses a polynomial in `y1, y2` for the scaled bundle.
pub fn parse_base_function(ring: &PolyRing, text: &str) -> Result<Poly> {
    let p = ring
        .parse(text)
        .map_err(|m| Error::Usage(format!("--f: {m}")))?;
    if p.terms().any(|(m, _)| (0..3).any(|v| m.exponent(v) > 0)) {
        return Err(Error::Usage("--f may only involve y1 and y2".into()));
    }
    Ok(p)
}

/// The metadata recorded for a resolvable name.
pub fn metadata_for(name: &str) -> Metadata {
    let canonical = match name {
        "scaled_so3" => "scaled_so3_bundle".to_string(),
        _ => name.replace(['(', ')'], ""),
    };
    entries()
        .into_iter()
        .find(|e| e.name == canonical)
        .map(|e| e.metadata)
        .or_else(|| {
            if parse_indexed(name, "diagonal_affine").is_some() {
                Some(Metadata::new("LiftsAsPoisson", Some(0), "R acting on R^n by scalars"))
            } else if parse_indexed(name, "abelian").is_some() {
                Some(Metadata::new("LiftsAsPoisson", Some(0), "zero bracket"))
            } else {
                None
            }
        })
        .unwrap_or_default()
}

/// Every listed algebra (bundles excluded).
pub fn algebras() -> Vec<LieAlgebra> {
    let mut out = vec![so3(), sl2(), heis3()];
    out.extend(ABELIAN_LISTED.map(abelian));
    out.extend(DIAGONAL_AFFINE_LISTED.map(diagonal_affine));
    out
}
