//! Spectra of finite extriangulated-category models.
//!
//! A [`CategoryModel`] presents a Krull–Schmidt category by its indecomposables,
//! a list of conflations and an optional tensor table. On top of it the crate
//! enumerates subcategory lattices ([`lattice`]), builds the spectrum of a
//! family of subcategories with its support topology ([`spectrum`]), and checks
//! the surrounding theory: finite-space topology ([`topology`]), abstract
//! supports and their immersions ([`supports`]), and finite group actions
//! ([`equivariance`]).

pub mod checks;
pub mod equivariance;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod model;
pub mod random;
pub mod spectrum;
pub mod supports;
pub mod topology;

pub use error::{Error, Result};
pub use lattice::{FamilyKind, Kind, Lattice, Subcat, SubcatFamily};
pub use model::{CategoryModel, Conflation, Flavor, ModelDoc, Obj, TensorTable};

pub use spectrum::Spectrum;
pub use supports::Support;
pub use topology::{FiniteSpace, PointSet};
