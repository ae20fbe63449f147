use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("invalid model: {0}")]
    InvalidModel(ValidationReport),

    #[error("model has no tensor table")]
    MissingTensor,

    #[error("capacity exceeded: {what} ({size} > limit {limit})")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("objects belong to different models")]
    ModelMismatch,

    #[error("family member {0} is not a subcategory of the required kind")]
    NotSubcategory(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("set is not closed in the space")]
    NotClosedSet,

    #[error("closed set is empty or reducible")]
    Reducible,

    #[error("support is not closed")]
    SupportNotClosed,

    #[error("support is not open")]
    SupportNotOpen,

    #[error("space is not spectral")]
    NotSpectral,

    #[error("basis does not generate the topology")]
    BasisMismatch,

    #[error("family is not contained in the target family: {0}")]
    NotContained(String),

    #[error("family member {0} is not invariant under the group action")]
    NotInvariant(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("invalid bridge: {0}")]
    InvalidBridge(String),

    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
