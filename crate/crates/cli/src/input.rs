//! Reading input files, with errors that carry the file name and, for
//! malformed JSON, the line and column.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use esp_core::equivariance::EquivariantBridge;
use esp_core::lattice::{family_from_json, Kind, Lattice};
use esp_core::model::{validate_model, ModelDoc};
use esp_core::topology::SpaceDoc;
use esp_core::{CategoryModel, Error, FiniteSpace, SubcatFamily, Support};
use serde::de::DeserializeOwned;

/// Process exit status for each failure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    CheckFailed = 1,
    BadInput = 2,
    Capacity = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            status: Status::BadInput,
            message: message.into(),
        }
    }

    /// Wraps a library error, classifying it by variant.
    pub fn from_core(context: &str, err: Error) -> Self {
        let status = match err {
            Error::Capacity { .. } => Status::Capacity,
            Error::NotSpectral
            | Error::SupportNotClosed
            | Error::SupportNotOpen
            | Error::NotContained(_)
            | Error::NotInvariant(_)
            | Error::NotClosedSet
            | Error::Reducible => Status::CheckFailed,
            _ => Status::BadInput,
        };
        let message = if context.is_empty() {
            err.to_string()
        } else {
            format!("{context}: {err}")
        };
        Self { status, message }
    }
}

pub type Result<T> = std::result::Result<T, Failure>;

pub trait Context<T> {
    fn context(self, what: &str) -> Result<T>;
}

impl<T> Context<T> for esp_core::Result<T> {
    fn context(self, what: &str) -> Result<T> {
        self.map_err(|e| Failure::from_core(what, e))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Failure::input(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line(),
            e.column(),
            e
        ))
    })
}

pub fn model_doc(path: &Path) -> Result<ModelDoc> {
    parse(path, &read(path)?)
}

pub fn model(path: &Path) -> Result<CategoryModel> {
    let doc = model_doc(path)?;
    let report = validate_model(&doc);
    if !report.is_valid() {
        return Err(Failure::input(format!(
            "{}: invalid model: {report}",
            path.display()
        )));
    }
    CategoryModel::from_doc(&doc).context(&path.display().to_string())
}

pub fn space(path: &Path) -> Result<FiniteSpace> {
    let doc: SpaceDoc = parse(path, &read(path)?)?;
    FiniteSpace::from_doc(&doc).context(&path.display().to_string())
}

pub fn support<'m>(model: &'m CategoryModel, path: &Path) -> Result<Support<'m>> {
    let doc = parse(path, &read(path)?)?;
    Support::from_doc(model, &doc).context(&path.display().to_string())
}

pub fn bridge(path: &Path) -> Result<EquivariantBridge> {
    let doc = parse(path, &read(path)?)?;
    EquivariantBridge::from_doc(&doc, path.parent()).context(&path.display().to_string())
}

/// A family of subcategories named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Kind(Kind),
    Matsui,
    Balmer,
    Nc,
    Custom(PathBuf),
}

impl FamilySpec {
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        if let Some(path) = s.strip_prefix("custom:") {
            return Ok(FamilySpec::Custom(path.into()));
        }
        Ok(match s {
            "as" => FamilySpec::Kind(Kind::As),
            "thick" => FamilySpec::Kind(Kind::Thick),
            "serre" => FamilySpec::Kind(Kind::Serre),
            "tt-ideal" => FamilySpec::Kind(Kind::TtIdeal),
            "nc-two-sided" => FamilySpec::Kind(Kind::NcTwoSided),
            "matsui" => FamilySpec::Matsui,
            "balmer" => FamilySpec::Balmer,
            "nc" => FamilySpec::Nc,
            _ => {
                return Err(format!(
                    "unknown family `{s}`; expected as, thick, serre, tt-ideal, nc-two-sided, \
                     matsui, balmer, nc or custom:FILE"
                ))
            }
        })
    }

    pub fn build(&self, model: &CategoryModel, limit: usize) -> Result<SubcatFamily> {
        let lattice = Lattice::new(model).with_limit(limit);
        let family = match self {
            FamilySpec::Kind(k) => lattice.enumerate(*k),
            FamilySpec::Matsui => lattice.matsui_primes(),
            FamilySpec::Balmer => lattice.balmer_primes(),
            FamilySpec::Nc => lattice.nc_primes(),
            FamilySpec::Custom(path) => {
                let text = read(path)?;
                // Surface JSON syntax errors with their position first.
                parse::<serde_json::Value>(path, &text)?;
                return family_from_json(model, &text).context(&path.display().to_string());
            }
        };
        family.context("family")
    }
}
