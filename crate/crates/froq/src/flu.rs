//! The bundled flu example: four patients, three symptom attributes, and the
//! golden reference tables the demo reproduces.
//!
//! The reference values are the known-good outputs for this data — the
//! expert-assigned measure, the normalized counting measure, an additive
//! weighting, the Manhattan-based γ dependency values, and the Choquet
//! distances each of them induces. `froq demo` recomputes everything and
//! compares entry by entry.

use crate::dataset::{load_decision_system, CsvSchema, DecisionSystem};
use crate::measures::{AttributeMeasure, MeasureEntry, MeasureFile};
use crate::subset::AttrSet;

/// The dataset as CSV text: fever, fatigue and cough in `[0,1]`, flu label.
pub const CSV: &str = include_str!("../data/flu.csv");

/// Parse the bundled dataset. The values are already in `[0,1]`, so no
/// normalization is applied anywhere in the demo pipeline.
pub fn dataset() -> DecisionSystem {
    load_decision_system(CSV.as_bytes(), &CsvSchema::default())
        .expect("bundled dataset is well-formed")
}

/// The expert-assigned measure over (fever, fatigue, cough): fatigue and
/// cough together carry most of the evidence, fever alone very little.
pub fn expert_measure_file() -> MeasureFile {
    let entry = |subset: &[&str], value: f64| MeasureEntry {
        subset: subset.iter().map(|s| s.to_string()).collect(),
        value,
    };
    MeasureFile {
        attributes: vec!["a1".into(), "a2".into(), "a3".into()],
        entries: vec![
            entry(&[], 0.0),
            entry(&["a1"], 0.1),
            entry(&["a2"], 0.2),
            entry(&["a3"], 0.2),
            entry(&["a1", "a2"], 0.2),
            entry(&["a1", "a3"], 0.2),
            entry(&["a2", "a3"], 0.8),
            entry(&["a1", "a2", "a3"], 1.0),
        ],
        default: None,
    }
}

pub fn expert_measure() -> AttributeMeasure {
    expert_measure_file().to_measure().expect("bundled measure is well-formed")
}

/// Additive weights for the weighted-average comparison.
pub const ADDITIVE_WEIGHTS: [f64; 3] = [0.2, 0.4, 0.4];

/// Per-entry tolerance for the reference comparisons; the references are
/// rounded to at most three digits.
pub const TOLERANCE: f64 = 0.005;

/// Upper-triangle pair order used by all reference distance tables:
/// (x1,x2), (x1,x3), (x1,x4), (x2,x3), (x2,x4), (x3,x4).
pub const PAIR_LABELS: [(&str, &str); 6] = [
    ("x1", "x2"),
    ("x1", "x3"),
    ("x1", "x4"),
    ("x2", "x3"),
    ("x2", "x4"),
    ("x3", "x4"),
];

/// Choquet p=1 distances under the expert measure.
pub const REF_EXPERT_P1: [f64; 6] = [0.135, 0.24, 0.9, 0.23, 0.76, 0.2];

/// Choquet p=1 distances under the normalized counting measure
/// (Manhattan / 3).
pub const REF_COUNTING_P1: [f64; 6] = [0.33, 0.33, 0.9, 0.63, 0.63, 0.63];

/// The reference counting table prints 0.66 in its (x4,x2) cell even though
/// the distance is symmetric and evaluates to 0.6333 on both sides; the demo
/// reports this known discrepancy without failing on it.
pub const REF_COUNTING_ASYMMETRIC_CELL: f64 = 0.66;

/// Choquet p=1 distances under the additive weights.
pub const REF_ADDITIVE_P1: [f64; 6] = [0.22, 0.4, 0.9, 0.58, 0.76, 0.58];

/// Choquet p=1 distances under the Manhattan-based γ measure.
pub const REF_GAMMA_P1: [f64; 6] = [0.05, 0.59, 0.9, 0.62, 0.79, 0.34];

/// Reference values of the Manhattan-based γ measure, by subset.
pub fn ref_gamma_values() -> Vec<(AttrSet, f64)> {
    vec![
        (AttrSet::EMPTY, 0.0),
        (AttrSet::from_indices([0]), 0.0),
        (AttrSet::from_indices([1]), 0.19),
        (AttrSet::from_indices([2]), 0.63),
        (AttrSet::from_indices([0, 1]), 0.36),
        (AttrSet::from_indices([0, 2]), 0.64),
        (AttrSet::from_indices([1, 2]), 0.83),
        (AttrSet::from_indices([0, 1, 2]), 1.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_parses() {
        let ds = dataset();
        assert_eq!(ds.n_instances(), 4);
        assert_eq!(ds.n_attributes(), 3);
        let m = expert_measure();
        assert_eq!(m.value(AttrSet::from_indices([1, 2])).unwrap(), 0.8);
    }
}
