//! TOML document format for Lie algebras.
//!
//! ```toml
//! schema_version = 1
//! name = "so3"
//! dimension = 3
//! brackets = [
//!   { i = 1, j = 2, k = 3, value = "1" },
//!   { i = 2, j = 3, k = 1, value = "1" },
//!   { i = 1, j = 3, k = 2, value = "-1" },
//! ]
//!
//! [metadata]
//! expected_verdict = "LiftsAsDiracOnly"
//! expected_height = 1
//! note = "compact"
//! ```
//!
//! Each entry states `c^k_{ij}` for `[b_i, b_j] = Σ_k c^k_{ij} b_k` with
//! 1-based `i < j`; the antisymmetric completion is implied. Values are
//! strings `"p/q"` or `"n"` (TOML integers are also accepted). Floating
//! literals are rejected.

use std::collections::BTreeSet;
use std::ops::Range;

use num_rational::BigRational;
use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::poly::{format_rational, parse_rational};

use super::catalog::Metadata;

pub const SCHEMA_VERSION: i64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketEntry {
    /// 1-based indices.
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub name: String,
    pub dimension: usize,
    pub brackets: Vec<BracketEntry>,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedAlgebra {
    pub algebra: LieAlgebra,
    pub metadata: Metadata,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: Spanned<i64>,
    name: String,
    dimension: Spanned<i64>,
    #[serde(default)]
    brackets: Vec<Spanned<RawBracket>>,
    #[serde(default)]
    metadata: Option<RawMetadata>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: Spanned<i64>,
    j: Spanned<i64>,
    k: Spanned<i64>,
    value: Spanned<toml::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetadata {
    expected_verdict: Option<String>,
    expected_height: Option<Spanned<i64>>,
    note: Option<String>,
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_error(text: &str, span: Range<usize>, message: impl Into<String>) -> Error {
    let (line, column) = line_col(text, span.start);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn exact_value(text: &str, v: &Spanned<toml::Value>) -> Result<BigRational> {
    match v.get_ref() {
        toml::Value::String(s) => parse_rational(s).map_err(|m| parse_error(text, v.span(), m)),
        toml::Value::Integer(n) => Ok(BigRational::from_integer((*n).into())),
        toml::Value::Float(_) => Err(parse_error(
            text,
            v.span(),
            "floating-point literal rejected: arithmetic is exact, write the value as a string \"p/q\"",
        )),
        other => Err(parse_error(
            text,
            v.span(),
            format!("bracket value must be a rational string, found {}", other.type_str()),
        )),
    }
}

fn index_in_range(text: &str, v: &Spanned<i64>, n: usize, what: &str) -> Result<usize> {
    let x = *v.get_ref();
    if x < 1 || x as u64 > n as u64 {
        let (line, column) = line_col(text, v.span().start);
        return Err(Error::IndexRange(format!(
            "{what} = {x} outside 1..={n} at line {line}, column {column}"
        )));
    }
    Ok(x as usize)
}

pub fn parse_document(text: &str) -> Result<AlgebraDocument> {
    let raw: RawDocument = toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        parse_error(text, span, e.message().trim().to_string())
    })?;
    if *raw.schema_version.get_ref() != SCHEMA_VERSION {
        return Err(parse_error(
            text,
            raw.schema_version.span(),
            format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                raw.schema_version.get_ref()
            ),
        ));
    }
    let dim = *raw.dimension.get_ref();
    if !(1..=64).contains(&dim) {
        return Err(parse_error(text, raw.dimension.span(), format!("dimension {dim} outside 1..=64")));
    }
    let n = dim as usize;
    let mut seen = BTreeSet::new();
    let mut brackets = Vec::with_capacity(raw.brackets.len());
    for entry in &raw.brackets {
        let b = entry.get_ref();
        let i = index_in_range(text, &b.i, n, "i")?;
        let j = index_in_range(text, &b.j, n, "j")?;
        let k = index_in_range(text, &b.k, n, "k")?;
        if i >= j {
            let (line, column) = line_col(text, entry.span().start);
            return Err(Error::IndexRange(format!(
                "bracket entries need i < j, found i = {i}, j = {j} at line {line}, column {column}"
            )));
        }
        if !seen.insert((i, j, k)) {
            return Err(parse_error(text, entry.span(), format!("duplicate bracket entry ({i}, {j}, {k})")));
        }
        brackets.push(BracketEntry {
            i,
            j,
            k,
            value: exact_value(text, &b.value)?,
        });
    }
    let metadata = match raw.metadata {
        None => Metadata::default(),
        Some(m) => Metadata {
            expected_verdict: m.expected_verdict,
            expected_height: match m.expected_height {
                None => None,
                Some(h) if *h.get_ref() >= 0 => Some(*h.get_ref() as usize),
                Some(h) => return Err(parse_error(text, h.span(), "expected_height must be nonnegative")),
            },
            note: m.note,
        },
    };
    Ok(AlgebraDocument {
        name: raw.name,
        dimension: n,
        brackets,
        metadata,
    })
}

impl AlgebraDocument {
    /// Builds and validates the algebra (antisymmetry and Jacobi).
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        LieAlgebra::from_brackets(
            self.dimension,
            self.brackets
                .iter()
                .map(|b| (b.i - 1, b.j - 1, b.k - 1, b.value.clone())),
            Some(self.name.clone()),
        )?
        .validated()
    }

    pub fn from_algebra(l: &LieAlgebra, metadata: Metadata) -> Self {
        AlgebraDocument {
            name: l.name().unwrap_or("unnamed").to_string(),
            dimension: l.dim(),
            brackets: l
                .bracket_entries()
                .into_iter()
                .map(|(i, j, k, value)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    value,
                })
                .collect(),
            metadata,
        }
    }

    pub fn to_toml(&self) -> String {
        let quote = |s: &str| toml::Value::String(s.to_string()).to_string();
        let mut out = format!(
            "schema_version = {SCHEMA_VERSION}\nname = {}\ndimension = {}\n",
            quote(&self.name),
            self.dimension
        );
        if self.brackets.is_empty() {
            out.push_str("brackets = []\n");
        } else {
            out.push_str("brackets = [\n");
            for b in &self.brackets {
                out.push_str(&format!(
                    "  {{ i = {}, j = {}, k = {}, value = {} }},\n",
                    b.i,
                    b.j,
                    b.k,
                    quote(&format_rational(&b.value))
                ));
            }
            out.push_str("]\n");
        }
        let m = &self.metadata;
        if !m.is_empty() {
            out.push_str("\n[metadata]\n");
            if let Some(v) = &m.expected_verdict {
                out.push_str(&format!("expected_verdict = {}\n", quote(v)));
            }
            if let Some(h) = m.expected_height {
                out.push_str(&format!("expected_height = {h}\n"));
            }
            if let Some(note) = &m.note {
                out.push_str(&format!("note = {}\n", quote(note)));
            }
        }
        out
    }
}

/// Parses and validates a document.
pub fn parse_algebra(text: &str) -> Result<LoadedAlgebra> {
    let doc = parse_document(text)?;
    Ok(LoadedAlgebra {
        algebra: doc.to_algebra()?,
        metadata: doc.metadata,
    })
}

pub fn serialize_algebra(l: &LieAlgebra, metadata: &Metadata) -> String {
    AlgebraDocument::from_algebra(l, metadata.clone()).to_toml()
}
