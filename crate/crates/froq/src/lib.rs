//! Fuzzy-rough attribute measures, Choquet p-distances and distance-based
//! classification.
//!
//! The crate turns a labeled tabular dataset into a monotone measure on
//! attribute subsets — how well each subset separates the classes — and
//! aggregates per-attribute differences against that measure with the
//! Choquet integral. The result is a distance that weights attribute
//! *combinations* instead of single attributes, which a k-nearest-neighbour
//! classifier can use directly.
//!
//! ```
//! use froq::{fit, ClassifierConfig, PExponent};
//! use froq::dataset::{load_decision_system, CsvSchema};
//! use std::sync::Arc;
//!
//! let csv = "a1,a2,a3,d\n0,0.9,0.9,1\n0.9,0.95,0.95,1\n0,1,0,0\n0.9,0,0,0\n";
//! let ds = Arc::new(load_decision_system(csv.as_bytes(), &CsvSchema::default())?);
//!
//! // fit the Manhattan-based gamma measure and classify a new patient
//! let cfg = ClassifierConfig { normalize: false, ..ClassifierConfig::default() };
//! let model = fit(&ds, &cfg)?;
//! let prediction = &model.predict(&[vec![0.1, 0.95, 0.9]], 1)?[0];
//! assert_eq!(prediction.label, "1");
//! # Ok::<(), froq::Error>(())
//! ```
//!
//! The modules mirror the pipeline: [`connectives`] holds the fuzzy-logic
//! operators, [`dataset`] the tabular layer, [`fuzzy_rough`] the relations
//! and approximations, [`measures`] the dependency measures, [`choquet`] the
//! integral and distances, and [`classifier`] the k-NN front end. The
//! [`flu`] module ships a small worked example with golden reference tables.

pub mod choquet;
pub mod classifier;
pub mod connectives;
pub mod dataset;
mod error;
pub mod flu;
pub mod fuzzy_rough;
pub mod measures;
pub mod subset;

pub use choquet::{choquet_integral, choquet_p_distance, distance_matrix, DistanceMatrix, PExponent};
pub use classifier::{
    evaluate_kfold, evaluate_loo, fit, ClassifierConfig, EvalReport, FittedModel, MeasureKind,
    MeasureScope, Prediction, VoteRule,
};
pub use connectives::{Connectives, Implicator, TNorm};
pub use dataset::{load_decision_system, load_decision_system_path, CsvSchema, DecisionSystem};
pub use error::{Error, Result};
pub use measures::{
    audit_monotonicity, delta_distance, delta_positive, gamma_distance, gamma_positive,
    monotonize_measure, AttributeMeasure, BaseDistance, MeasureFile,
};
pub use subset::AttrSet;
