//! Distance-based classification on top of the Choquet p-distance.
//!
//! The pipeline has three steps: fit an attribute measure on the training
//! data, use it to define a Choquet p-distance, and classify queries with
//! k-nearest neighbours under that distance. Evaluation harnesses for
//! leave-one-out and stratified k-fold protocols are included; by default the
//! measure is refit inside every fold so no test label leaks into it, with an
//! opt-in global scope that fits once on the full data.

use crate::choquet::{choquet_p_distance, PExponent};
use crate::connectives::Connectives;
use crate::dataset::{DecisionSystem, Normalizer};
use crate::error::{Error, Result};
use crate::measures::{
    delta_distance, delta_positive, gamma_distance, gamma_positive, AttributeMeasure,
    BaseDistance, MeasureFile, TABULATION_LIMIT,
};
use crate::subset::AttrSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

/// Which attribute measure the classifier fits.
#[derive(Debug, Clone)]
pub enum MeasureKind {
    GammaDistance,
    DeltaDistance,
    GammaPositive,
    DeltaPositive,
    Counting { normalized: bool },
    Additive { weights: Vec<f64> },
    Explicit(MeasureFile),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteRule {
    Majority,
    DistanceWeighted,
}

/// Where evaluation harnesses fit the measure: inside every fold (default,
/// no label leakage) or once on the full dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureScope {
    PerFold,
    Global,
}

#[derive(Debug, Clone)]
pub struct ClassifierConfig {
    pub measure: MeasureKind,
    /// Base distance family for the distance-form measures.
    pub base: BaseDistance,
    /// Connectives for the positive-region measures.
    pub connectives: Connectives,
    pub p: PExponent,
    pub k: usize,
    pub vote: VoteRule,
    /// Min-max normalize the training data at fit time. Disable only when
    /// the data is already in `[0,1]`.
    pub normalize: bool,
    pub measure_scope: MeasureScope,
    /// Attach tabulated per-fold measures to evaluation reports.
    pub dump_fold_measures: bool,
}

impl Default for ClassifierConfig {
    fn default() -> ClassifierConfig {
        ClassifierConfig {
            measure: MeasureKind::GammaDistance,
            base: BaseDistance::manhattan(),
            connectives: Connectives::default(),
            p: PExponent::Finite(1),
            k: 1,
            vote: VoteRule::Majority,
            normalize: true,
            measure_scope: MeasureScope::PerFold,
            dump_fold_measures: false,
        }
    }
}

/// A trained classifier: immutable training snapshot, fitted measure with a
/// warm cache, and the distance configuration.
pub struct FittedModel {
    train: Arc<DecisionSystem>,
    normalizer: Option<Normalizer>,
    measure: AttributeMeasure,
    cfg: ClassifierConfig,
}

fn build_measure(ds: &Arc<DecisionSystem>, cfg: &ClassifierConfig) -> Result<AttributeMeasure> {
    match &cfg.measure {
        MeasureKind::GammaDistance => gamma_distance(ds, cfg.base),
        MeasureKind::DeltaDistance => delta_distance(ds, cfg.base),
        MeasureKind::GammaPositive => gamma_positive(ds, cfg.connectives),
        MeasureKind::DeltaPositive => delta_positive(ds, cfg.connectives),
        MeasureKind::Counting { normalized } => {
            Ok(AttributeMeasure::counting(ds.n_attributes(), *normalized))
        }
        MeasureKind::Additive { weights } => {
            if weights.len() != ds.n_attributes() {
                return Err(Error::DimensionMismatch {
                    expected: ds.n_attributes(),
                    got: weights.len(),
                });
            }
            AttributeMeasure::additive(weights)
        }
        MeasureKind::Explicit(file) => file.to_measure_for(ds.attribute_names()),
    }
}

/// Fit a model on a decision system. Deterministic given the inputs; the
/// full-set and singleton measure values are precomputed into the cache.
pub fn fit(ds: &Arc<DecisionSystem>, cfg: &ClassifierConfig) -> Result<FittedModel> {
    if cfg.k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    let (train, normalizer) = if cfg.normalize {
        let (norm, nz) = ds.normalize_min_max();
        (Arc::new(norm), Some(nz))
    } else {
        ds.ensure_unit_range()?;
        (ds.clone(), None)
    };
    let measure = build_measure(&train, cfg)?;
    measure.value(train.full_set())?;
    for a in 0..train.n_attributes() {
        measure.value(AttrSet::singleton(a))?;
    }
    Ok(FittedModel { train, normalizer, measure, cfg: cfg.clone() })
}

#[derive(Debug, Clone, Serialize)]
pub struct Neighbour {
    pub index: usize,
    pub id: String,
    pub distance: f64,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tally {
    pub label: String,
    pub votes: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    pub label: String,
    pub neighbours: Vec<Neighbour>,
    pub tallies: Vec<Tally>,
    /// Number of query values clamped into `[0,1]` after normalization.
    pub clamped: usize,
}

impl FittedModel {
    pub fn training_data(&self) -> &Arc<DecisionSystem> {
        &self.train
    }

    pub fn measure(&self) -> &AttributeMeasure {
        &self.measure
    }

    pub fn config(&self) -> &ClassifierConfig {
        &self.cfg
    }

    /// Distances from a prepared (normalized, in-range) query row to every
    /// training instance except `skip`, sorted ascending with index
    /// tie-break.
    fn ranked_neighbours(&self, row: &[f64], skip: Option<usize>) -> Result<Vec<(f64, usize)>> {
        let mut out = Vec::with_capacity(self.train.n_instances());
        for j in 0..self.train.n_instances() {
            if skip == Some(j) {
                continue;
            }
            let d = choquet_p_distance(row, self.train.row(j), &self.measure, self.cfg.p)?;
            out.push((d, j));
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite distances").then(a.1.cmp(&b.1)));
        Ok(out)
    }

    fn vote(&self, top: &[(f64, usize)]) -> (usize, Vec<Tally>) {
        let n_classes = self.train.n_classes();
        let mut votes = vec![0.0f64; n_classes];
        let mut first_seen = vec![usize::MAX; n_classes];
        for (pos, &(d, j)) in top.iter().enumerate() {
            let class = self.train.label(j);
            votes[class] += match self.cfg.vote {
                VoteRule::Majority => 1.0,
                VoteRule::DistanceWeighted => 1.0 / (d + 1e-9),
            };
            if first_seen[class] == usize::MAX {
                first_seen[class] = pos;
            }
        }
        // winner: largest vote; ties go to the class seen earliest in the
        // neighbour list, which keeps the outcome deterministic
        let mut winner = 0;
        for c in 1..n_classes {
            let better = votes[c] > votes[winner]
                || (votes[c] == votes[winner] && first_seen[c] < first_seen[winner]);
            if better {
                winner = c;
            }
        }
        let tallies = (0..n_classes)
            .filter(|&c| votes[c] > 0.0)
            .map(|c| Tally { label: self.train.label_name(c).to_string(), votes: votes[c] })
            .collect();
        (winner, tallies)
    }

    fn predict_prepared(
        &self,
        row: &[f64],
        clamped: usize,
        k: usize,
        skip: Option<usize>,
    ) -> Result<Prediction> {
        let ranked = self.ranked_neighbours(row, skip)?;
        let top = &ranked[..k.min(ranked.len())];
        let (winner, tallies) = self.vote(top);
        let neighbours = top
            .iter()
            .map(|&(d, j)| Neighbour {
                index: j,
                id: self.train.ids()[j].clone(),
                distance: d,
                label: self.train.label_name(self.train.label(j)).to_string(),
            })
            .collect();
        Ok(Prediction {
            label: self.train.label_name(winner).to_string(),
            neighbours,
            tallies,
            clamped,
        })
    }

    /// Normalize a raw query row with the training parameters, clamping to
    /// `[0,1]`.
    fn prepare(&self, query: &[f64]) -> Result<(Vec<f64>, usize)> {
        if query.len() != self.train.n_attributes() {
            return Err(Error::DimensionMismatch {
                expected: self.train.n_attributes(),
                got: query.len(),
            });
        }
        match &self.normalizer {
            Some(nz) => nz.apply(query),
            None => {
                let mut clamped = 0;
                let row = query
                    .iter()
                    .map(|&v| {
                        if !v.is_finite() {
                            return Err(Error::NonFinite("query value"));
                        }
                        if !(0.0..=1.0).contains(&v) {
                            clamped += 1;
                        }
                        Ok(v.clamp(0.0, 1.0))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                Ok((row, clamped))
            }
        }
    }

    /// Classify query instances with k-nearest neighbours under the fitted
    /// Choquet distance. Deterministic; distance ties break on the lowest
    /// training-instance index.
    pub fn predict(&self, queries: &[Vec<f64>], k: usize) -> Result<Vec<Prediction>> {
        if k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if k > self.train.n_instances() {
            return Err(Error::Config(format!(
                "k ({k}) exceeds the training size ({})",
                self.train.n_instances()
            )));
        }
        queries
            .iter()
            .map(|q| {
                let (row, clamped) = self.prepare(q)?;
                self.predict_prepared(&row, clamped, k, None)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FoldError {
    pub fold: usize,
    pub instances: Vec<String>,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceOutcome {
    pub index: usize,
    pub id: String,
    pub true_label: String,
    pub predicted_label: String,
    pub correct: bool,
    pub neighbours: Vec<Neighbour>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub folds: usize,
    pub evaluated: usize,
    pub correct: usize,
    pub fold_errors: Vec<FoldError>,
    pub outcomes: Vec<InstanceOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fold_measures: Option<Vec<MeasureFile>>,
}

struct FoldOutcome {
    fold: usize,
    outcomes: Vec<InstanceOutcome>,
    error: Option<FoldError>,
    measure: Option<MeasureFile>,
}

fn run_fold(
    ds: &Arc<DecisionSystem>,
    cfg: &ClassifierConfig,
    global: Option<&FittedModel>,
    fold: usize,
    test: &[usize],
) -> FoldOutcome {
    let test_ids: Vec<String> = test.iter().map(|&i| ds.ids()[i].clone()).collect();
    let fail = |message: String| FoldOutcome {
        fold,
        outcomes: Vec::new(),
        error: Some(FoldError { fold, instances: test_ids.clone(), message }),
        measure: None,
    };

    let run = |model: &FittedModel, skip_self: bool| -> Result<Vec<InstanceOutcome>> {
        let pool = model.train.n_instances() - usize::from(skip_self);
        if cfg.k > pool {
            return Err(Error::Config(format!(
                "k ({}) exceeds the fold training size ({pool})",
                cfg.k
            )));
        }
        test.iter()
            .map(|&i| {
                let prediction = if skip_self {
                    // global scope: the model was fit on the full data, so
                    // the held-out instance is excluded from the pool here
                    let row = model.train.row(i).to_vec();
                    model.predict_prepared(&row, 0, cfg.k, Some(i))?
                } else {
                    let (row, clamped) = model.prepare(ds.row(i))?;
                    model.predict_prepared(&row, clamped, cfg.k, None)?
                };
                let true_label = ds.label_name(ds.label(i)).to_string();
                Ok(InstanceOutcome {
                    index: i,
                    id: ds.ids()[i].clone(),
                    correct: prediction.label == true_label,
                    true_label,
                    predicted_label: prediction.label.clone(),
                    neighbours: prediction.neighbours,
                })
            })
            .collect()
    };

    match global {
        Some(model) => match run(model, true) {
            Ok(outcomes) => FoldOutcome { fold, outcomes, error: None, measure: None },
            Err(e) => fail(e.to_string()),
        },
        None => {
            let train_idx: Vec<usize> =
                (0..ds.n_instances()).filter(|i| !test.contains(i)).collect();
            let sub = match ds.select_instances(&train_idx) {
                Ok(sub) => Arc::new(sub),
                Err(e) => return fail(e.to_string()),
            };
            let model = match fit(&sub, cfg) {
                Ok(m) => m,
                Err(e) => return fail(e.to_string()),
            };
            let measure = if cfg.dump_fold_measures && ds.n_attributes() <= TABULATION_LIMIT {
                MeasureFile::from_measure(&model.measure, ds.attribute_names()).ok()
            } else {
                None
            };
            match run(&model, false) {
                Ok(outcomes) => FoldOutcome { fold, outcomes, error: None, measure },
                Err(e) => fail(e.to_string()),
            }
        }
    }
}

fn collect_report(folds: usize, mut results: Vec<FoldOutcome>) -> Result<EvalReport> {
    results.sort_by_key(|r| r.fold);
    let mut outcomes = Vec::new();
    let mut fold_errors = Vec::new();
    let mut fold_measures = Vec::new();
    for r in results {
        outcomes.extend(r.outcomes);
        if let Some(e) = r.error {
            fold_errors.push(e);
        }
        if let Some(m) = r.measure {
            fold_measures.push(m);
        }
    }
    outcomes.sort_by_key(|o| o.index);
    let evaluated = outcomes.len();
    if evaluated == 0 {
        let first = fold_errors
            .first()
            .map(|e| e.message.clone())
            .unwrap_or_else(|| "no instances evaluated".into());
        return Err(Error::Measure(format!("all folds failed: {first}")));
    }
    let correct = outcomes.iter().filter(|o| o.correct).count();
    Ok(EvalReport {
        accuracy: correct as f64 / evaluated as f64,
        folds,
        evaluated,
        correct,
        fold_errors,
        outcomes,
        fold_measures: if fold_measures.is_empty() { None } else { Some(fold_measures) },
    })
}

/// Leave-one-out evaluation. With [`MeasureScope::PerFold`] the measure is
/// refit on each remainder; folds that cannot be fit (for instance a single
/// remaining class) are recorded as fold errors and excluded from the
/// accuracy. Deterministic; folds run in parallel and are merged in order.
pub fn evaluate_loo(ds: &Arc<DecisionSystem>, cfg: &ClassifierConfig) -> Result<EvalReport> {
    let n = ds.n_instances();
    if n < 3 {
        return Err(Error::Config("leave-one-out needs at least 3 instances".into()));
    }
    let global = match cfg.measure_scope {
        MeasureScope::Global => Some(fit(ds, cfg)?),
        MeasureScope::PerFold => None,
    };
    let results: Vec<FoldOutcome> = (0..n)
        .into_par_iter()
        .map(|i| run_fold(ds, cfg, global.as_ref(), i, &[i]))
        .collect();
    collect_report(n, results)
}

/// Stratified k-fold evaluation with a seeded shuffle. Instances of each
/// class are dealt round-robin into folds after shuffling, so every fold is
/// stratified where sizes permit. `folds == n` reproduces leave-one-out.
pub fn evaluate_kfold(
    ds: &Arc<DecisionSystem>,
    cfg: &ClassifierConfig,
    folds: usize,
    seed: u64,
) -> Result<EvalReport> {
    let n = ds.n_instances();
    if folds < 2 {
        return Err(Error::Config("k-fold evaluation needs at least 2 folds".into()));
    }
    if folds > n {
        return Err(Error::Config(format!(
            "folds ({folds}) exceed the instance count ({n})"
        )));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; n];
    let mut cursor = 0usize;
    for class in 0..ds.n_classes() {
        let mut members: Vec<usize> =
            (0..n).filter(|&i| ds.label(i) == class).collect();
        members.shuffle(&mut rng);
        for i in members {
            assignment[i] = cursor % folds;
            cursor += 1;
        }
    }
    let test_sets: Vec<Vec<usize>> = (0..folds)
        .map(|f| (0..n).filter(|&i| assignment[i] == f).collect())
        .collect();
    let global = match cfg.measure_scope {
        MeasureScope::Global => Some(fit(ds, cfg)?),
        MeasureScope::PerFold => None,
    };
    let results: Vec<FoldOutcome> = test_sets
        .par_iter()
        .enumerate()
        .map(|(f, test)| run_fold(ds, cfg, global.as_ref(), f, test))
        .collect();
    collect_report(folds, results)
}
