//! JSON schemas for the files the command line front end and the runnable
//! examples exchange, with conversions to and from the domain types.
//!
//! Rationals travel as strings ("5/6", "-1/6", "2"), big integers likewise;
//! polynomials and variety classes travel as strings in the expression
//! grammars of [`crate::ring`] and [`crate::classes`].

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_rational::Rational64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{parse_class_expr, ClassExpr};
use crate::degeneration::{BlowupCenter, Component, Stratification};
use crate::equivariant::EquivariantHodgeStructure;
use crate::ring::{parse_polynomial, BidegreePolynomial};
use crate::spectra::{SpectrumTable, WeightDims};

/// Failure to load or interpret an input file. All variants are input-side
/// problems, as opposed to preconditions of the computations themselves.
#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{origin}: invalid JSON: {source}")]
    Json {
        origin: String,
        source: serde_json::Error,
    },
    #[error("{origin}: {message}")]
    Schema { origin: String, message: String },
}

pub fn schema_error(origin: &str, message: impl Into<String>) -> FileError {
    FileError::Schema {
        origin: origin.to_string(),
        message: message.into(),
    }
}

fn read_file(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, FileError> {
    serde_json::from_str(text).map_err(|source| FileError::Json {
        origin: origin.to_string(),
        source,
    })
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, FileError> {
    parse_json(&read_file(path)?, &path.display().to_string())
}

/// Parses "p/q" or "p".
pub fn parse_rational(s: &str) -> Result<Rational64, String> {
    Rational64::from_str(s).map_err(|e| format!("invalid rational {s:?}: {e}"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub id: String,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumRecord {
    pub subset: Vec<String>,
    #[serde(rename = "classD")]
    pub class_d: String,
    #[serde(rename = "classE", default, skip_serializing_if = "Option::is_none")]
    pub class_e: Option<String>,
}

/// A one-parameter normal crossing degeneration: components with
/// multiplicities and the classes of the closed strata. `classD` is the
/// class of the cover stratum entering the nearby fibre; the optional
/// `classE` is the class of the underlying reduced stratum where the two
/// differ (they agree when all multiplicities are 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerationFile {
    pub components: Vec<ComponentRecord>,
    pub strata: Vec<StratumRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_dim: Option<u64>,
}

impl DegenerationFile {
    /// Builds the validated stratification. When any stratum carries a
    /// `classE`, a reduced table is formed for all strata, the missing
    /// entries defaulting to their `classD`.
    pub fn to_stratification(&self) -> Result<Stratification, String> {
        let components = self
            .components
            .iter()
            .map(|c| Component::new(c.id.clone(), c.multiplicity))
            .collect();
        let has_reduced = self.strata.iter().any(|s| s.class_e.is_some());
        let mut cover = Vec::new();
        let mut reduced = Vec::new();
        for (i, s) in self.strata.iter().enumerate() {
            let class_d =
                parse_class_expr(&s.class_d).map_err(|e| format!("strata[{i}].classD: {e}"))?;
            if has_reduced {
                let class_e = match &s.class_e {
                    Some(text) => parse_class_expr(text)
                        .map_err(|e| format!("strata[{i}].classE: {e}"))?,
                    None => class_d.clone(),
                };
                reduced.push((s.subset.clone(), class_e));
            }
            cover.push((s.subset.clone(), class_d));
        }
        Stratification::new(
            components,
            cover,
            has_reduced.then_some(reduced),
            self.relative_dim,
        )
        .map_err(|report| report.to_string())
    }

    /// Renders a stratification back into the file schema, classes as
    /// `poly(...)` literals in canonical form.
    pub fn from_stratification(s: &Stratification) -> Self {
        let cover: BTreeMap<_, _> = s.cover_strata().collect();
        let reduced: BTreeMap<_, _> = s
            .reduced_strata()
            .map(|it| it.collect())
            .unwrap_or_default();
        let mut subsets: BTreeSet<_> = cover.keys().copied().collect();
        subsets.extend(reduced.keys().copied());
        let poly_literal = |p: &BidegreePolynomial| ClassExpr::from(p.clone()).to_string();
        let strata = subsets
            .into_iter()
            .map(|subset| StratumRecord {
                subset: subset.iter().cloned().collect(),
                class_d: poly_literal(
                    cover
                        .get(subset)
                        .copied()
                        .unwrap_or(&BidegreePolynomial::zero()),
                ),
                class_e: reduced.get(subset).map(|p| poly_literal(p)),
            })
            .collect();
        DegenerationFile {
            components: s
                .components()
                .iter()
                .map(|c| ComponentRecord {
                    id: c.id.clone(),
                    multiplicity: c.multiplicity,
                })
                .collect(),
            strata,
            relative_dim: s.relative_dim(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverRecord {
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "classW")]
    pub class_w: String,
}

/// A permitted modification: blow up a smooth center of codimension `c`
/// contained in the components `A`, described by the classes of its closed
/// intersections `W_B` with the strata disjoint from `A`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveFile {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub c: i64,
    pub new_id: String,
    pub covers: Vec<CoverRecord>,
}

impl MoveFile {
    pub fn to_center(&self) -> Result<BlowupCenter, String> {
        let mut covers = Vec::new();
        for (i, cover) in self.covers.iter().enumerate() {
            let expr = parse_class_expr(&cover.class_w)
                .map_err(|e| format!("covers[{i}].classW: {e}"))?;
            covers.push((cover.b.clone(), expr));
        }
        Ok(BlowupCenter {
            contained_in: self.a.clone(),
            codimension: self.c,
            covers,
            new_id: self.new_id.clone(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgePieceRecord {
    pub p: i64,
    pub q: i64,
    pub dim: u64,
}

/// One monodromy eigenspace: the weight, the eigenvalue `exp(2 pi i angle)`
/// with `angle` in `[0, 1)`, and the Hodge numbers of the piece.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivariantPieceRecord {
    pub weight: i64,
    pub angle: String,
    pub hodge: Vec<HodgePieceRecord>,
}

pub fn to_equivariant(
    pieces: &[EquivariantPieceRecord],
) -> Result<EquivariantHodgeStructure, String> {
    let mut records = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let angle = parse_rational(&piece.angle).map_err(|e| format!("pieces[{i}].angle: {e}"))?;
        for h in &piece.hodge {
            records.push((piece.weight, angle, (h.p, h.q), h.dim));
        }
    }
    EquivariantHodgeStructure::new(records).map_err(|e| e.to_string())
}

/// Weight-graded dimensions of a single cohomology group `H^k`, weights as
/// decimal string keys. Either a full symmetric grading or any half of it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDimsFile {
    pub k: i64,
    pub g: BTreeMap<String, u64>,
}

impl WeightDimsFile {
    /// Parses the weight keys; symmetry is left to `WeightDims::new` so the
    /// caller can tell schema problems from grading problems.
    pub fn parsed_dims(&self) -> Result<(i64, BTreeMap<i64, u64>), String> {
        let mut g = BTreeMap::new();
        for (key, &dim) in &self.g {
            let w: i64 = key
                .parse()
                .map_err(|_| format!("invalid weight key {key:?}"))?;
            g.insert(w, dim);
        }
        Ok((self.k, g))
    }

    pub fn from_weight_dims(wd: &WeightDims) -> Self {
        WeightDimsFile {
            k: wd.k(),
            g: wd.dims().iter().map(|(w, d)| (w.to_string(), *d)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub poly: String,
}

impl PolyFile {
    pub fn to_polynomial(&self) -> Result<BidegreePolynomial, String> {
        parse_polynomial(&self.poly).map_err(|e| format!("poly: {e}"))
    }

    pub fn from_polynomial(p: &BidegreePolynomial) -> Self {
        PolyFile {
            poly: p.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumEntryRecord {
    pub alpha: String,
    pub w: i64,
    pub m: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumFile {
    pub entries: Vec<SpectrumEntryRecord>,
}

impl SpectrumFile {
    pub fn from_table(t: &SpectrumTable) -> Self {
        SpectrumFile {
            entries: t
                .entries()
                .map(|(alpha, w, m)| SpectrumEntryRecord {
                    alpha: alpha.to_string(),
                    w,
                    m: m.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JordanBlockRecord {
    pub size: u64,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JordanFile {
    pub blocks: Vec<JordanBlockRecord>,
}

impl JordanFile {
    pub fn from_counts(counts: &BTreeMap<u64, u64>) -> Self {
        JordanFile {
            blocks: counts
                .iter()
                .map(|(&size, &count)| JordanBlockRecord { size, count })
                .collect(),
        }
    }
}
