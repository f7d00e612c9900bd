//! Scenario documents: a morphism germ and its expected outcomes as one JSON file.
//!
//! Exact values never pass through floating point: rationals are strings
//! `"p/q"`, number field elements are arrays of such strings (coefficients
//! of 1, θ, θ², …), exponent keys are integer arrays.

use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::log_smooth::MorphismGerm;
use crate::monomialize::Mode;
use crate::series::{LocalModel, TruncatedSeries};
use crate::toric::{AffineMonoid, ToricPoint};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid {object}: {message}")]
    Validation { object: String, message: String },
}

fn invalid(object: impl Into<String>, message: impl ToString) -> ScenarioError {
    ScenarioError::Validation {
        object: object.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldDoc {
    Rationals,
    NumberField {
        /// Low-to-high coefficients of a monic integer polynomial.
        min_poly: Vec<i64>,
        generator: String,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        trusted_irreducible: bool,
    },
}

impl FieldDoc {
    pub fn build(&self) -> Result<Arc<FieldSpec>, String> {
        match self {
            FieldDoc::Rationals => Ok(FieldSpec::rationals()),
            FieldDoc::NumberField {
                min_poly,
                generator,
                trusted_irreducible,
            } => FieldSpec::number_field(min_poly.clone(), generator, *trusted_irreducible).map_err(|e| e.to_string()),
        }
    }

    pub fn from_spec(spec: &FieldSpec) -> FieldDoc {
        if spec.is_rationals() {
            FieldDoc::Rationals
        } else {
            FieldDoc::NumberField {
                min_poly: spec
                    .min_poly()
                    .iter()
                    .map(|c| i64::try_from(c).expect("small minimal polynomial"))
                    .collect(),
                generator: spec.generator_label().to_string(),
                trusted_irreducible: spec.trusted_irreducible(),
            }
        }
    }
}

/// A rational `"p/q"`, or number field coefficients low to high.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Rational(String),
    Coeffs(Vec<String>),
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|_| format!("{s:?} is not a rational number"))
}

impl ScalarDoc {
    pub fn build(&self, field: &Arc<FieldSpec>) -> Result<Scalar, String> {
        match self {
            ScalarDoc::Rational(s) => Ok(Scalar::from_rational(field, parse_rational(s)?)),
            ScalarDoc::Coeffs(cs) => {
                let coeffs = cs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
                Scalar::from_coeffs(field, coeffs).map_err(|e| e.to_string())
            }
        }
    }

    pub fn from_scalar(s: &Scalar) -> ScalarDoc {
        if s.field().is_rationals() {
            ScalarDoc::Rational(s.coeffs()[0].to_string())
        } else {
            ScalarDoc::Coeffs(s.coeffs().iter().map(ToString::to_string).collect())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub label: String,
    pub vector: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub generators: Vec<GeneratorDoc>,
    /// Positive weights on the ambient lattice; searched for when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    pub saturated: bool,
}

impl MonoidDoc {
    pub fn build(&self, object: &str) -> Result<AffineMonoid, ScenarioError> {
        let rank = self
            .generators
            .first()
            .map(|g| g.vector.len())
            .ok_or_else(|| invalid(object, "no generators"))?;
        if let Some(g) = self.generators.iter().find(|g| g.vector.len() != rank) {
            return Err(invalid(object, format!("generator {:?} has the wrong length", g.label)));
        }
        if !self.saturated {
            return Err(invalid(object, "only saturated monoids are supported"));
        }
        AffineMonoid::build(
            rank,
            self.generators.iter().map(|g| g.vector.clone()).collect(),
            self.generators.iter().map(|g| g.label.clone()).collect(),
            self.grading.clone(),
            self.saturated,
        )
        .map_err(|e| invalid(object, e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    /// Labels of the source generators spanning the face of the point.
    pub face: Vec<String>,
    /// Values of the unit-direction basis characters z_{r+1}, …, z_m.
    pub char_values: Vec<ScalarDoc>,
}

/// One term `c·χ^v` (ambient exponent) or `c·z^a·s^d` (raw key).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<Vec<i64>>,
    pub c: ScalarDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeDoc {
    RationalResidue,
    RootCapable,
}

impl From<ModeDoc> for Mode {
    fn from(m: ModeDoc) -> Mode {
        match m {
            ModeDoc::RationalResidue => Mode::RationalResidue,
            ModeDoc::RootCapable => Mode::RootCapable,
        }
    }
}

impl From<Mode> for ModeDoc {
    fn from(m: Mode) -> ModeDoc {
        match m {
            Mode::RationalResidue => ModeDoc::RationalResidue,
            Mode::RootCapable => ModeDoc::RootCapable,
        }
    }
}

/// Expected outcomes, checked by the runner when present.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<ScalarDoc>>,
    /// Error kind expected from `monomialize`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Dominance of f cannot be decided from the germ; the scenario author asserts it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominant: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub base_field: FieldDoc,
    pub residue_field: FieldDoc,
    pub source_monoid: MonoidDoc,
    pub target_monoid: MonoidDoc,
    pub point: PointDoc,
    /// Weights in z-coordinates (length m, 1 on unit directions).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    #[serde(default)]
    pub pullbacks: Vec<Vec<TermDoc>>,
    pub truncation: i64,
    pub mode: ModeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assertions: Option<AssertionsDoc>,
}

/// A validated scenario together with the germ it describes.
#[derive(Debug, Clone)]
pub struct Scenario {
    doc: ScenarioDoc,
    germ: MorphismGerm,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.doc == other.doc
    }
}

impl Scenario {
    pub fn doc(&self) -> &ScenarioDoc {
        &self.doc
    }

    pub fn name(&self) -> &str {
        &self.doc.name
    }

    pub fn germ(&self) -> &MorphismGerm {
        &self.germ
    }

    pub fn mode(&self) -> Mode {
        self.doc.mode.into()
    }

    pub fn truncation(&self) -> i64 {
        self.doc.truncation
    }

    pub fn from_doc(doc: ScenarioDoc) -> Result<Scenario, ScenarioError> {
        let germ = build_germ(&doc)?;
        Ok(Scenario { doc, germ })
    }

    /// The same scenario at another truncation order.
    pub fn with_truncation(&self, order: i64) -> Result<Scenario, ScenarioError> {
        let mut doc = self.doc.clone();
        doc.truncation = order;
        Scenario::from_doc(doc)
    }

    /// The same scenario in another mode. Expectations on λ and on the error
    /// kind belong to the declared mode and are dropped when it changes.
    pub fn with_mode(&self, mode: Mode) -> Scenario {
        let mut out = self.clone();
        if ModeDoc::from(mode) != out.doc.mode {
            out.doc.mode = mode.into();
            if let Some(a) = out.doc.assertions.as_mut() {
                a.lambda = None;
                a.error = None;
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serialize_scenario(&self.doc)
    }
}

pub fn serialize_scenario(doc: &ScenarioDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("scenario documents always serialize");
    s.push('\n');
    s
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let doc: ScenarioDoc = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Scenario::from_doc(doc)
}

fn build_germ(doc: &ScenarioDoc) -> Result<MorphismGerm, ScenarioError> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(invalid(
            "schema_version",
            format!("expected {SCHEMA_VERSION}, found {}", doc.schema_version),
        ));
    }
    if doc.name.trim().is_empty() {
        return Err(invalid("name", "empty"));
    }
    let base = doc.base_field.build().map_err(|e| invalid("base_field", e))?;
    let residue = doc.residue_field.build().map_err(|e| invalid("residue_field", e))?;
    if !base.is_rationals() && base != residue {
        return Err(invalid(
            "base_field",
            "must be Q or equal to the residue field",
        ));
    }
    let source = doc.source_monoid.build("source_monoid")?;
    let target = doc.target_monoid.build("target_monoid")?;

    let mut face = Vec::with_capacity(doc.point.face.len());
    for label in &doc.point.face {
        let idx = source
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| invalid("point", format!("unknown generator label {label:?}")))?;
        face.push(idx);
    }
    let values = doc
        .point
        .char_values
        .iter()
        .map(|v| v.build(&residue))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| invalid("point", e))?;
    let point = ToricPoint::new(source, face, values, residue.clone()).map_err(|e| invalid("point", e))?;
    if doc.truncation < 1 {
        return Err(invalid("truncation", "must be at least 1"));
    }
    let model = LocalModel::new(point, doc.grading.clone(), doc.truncation).map_err(|e| invalid("grading", e))?;

    if doc.pullbacks.is_empty() {
        return Err(invalid("pullbacks", "missing or empty"));
    }
    let pullbacks = doc
        .pullbacks
        .iter()
        .enumerate()
        .map(|(j, terms)| build_series(&model, terms).map_err(|e| invalid(format!("pullbacks[{j}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    MorphismGerm::new(model, target, pullbacks, base).map_err(|e| invalid("pullbacks", e))
}

/// Sums the terms of a serialized series in a model.
pub fn build_series(model: &Arc<LocalModel>, terms: &[TermDoc]) -> Result<TruncatedSeries, String> {
    let field = model.field();
    let mut acc = TruncatedSeries::zero(model);
    let mut raw = Vec::new();
    for t in terms {
        let c = t.c.build(field)?;
        match (&t.chi, &t.key) {
            (Some(v), None) => {
                if v.len() != model.m() {
                    return Err(format!("character {v:?} has the wrong length"));
                }
                let chi = TruncatedSeries::character(model, v).map_err(|e| e.to_string())?;
                acc = acc.add(&chi.scale(&c)).map_err(|e| e.to_string())?;
            }
            (None, Some(k)) => raw.push((k.clone(), c)),
            _ => return Err("each term needs exactly one of \"chi\" and \"key\"".into()),
        }
    }
    let raw = TruncatedSeries::from_terms(model, raw).map_err(|e| e.to_string())?;
    acc.add(&raw).map_err(|e| e.to_string())
}

/// Serialized form of a series: its terms as raw keys, in canonical order.
pub fn series_to_terms(s: &TruncatedSeries) -> Vec<TermDoc> {
    s.terms()
        .map(|(k, c)| TermDoc {
            chi: None,
            key: Some(k.exps().to_vec()),
            c: ScalarDoc::from_scalar(c),
        })
        .collect()
}
