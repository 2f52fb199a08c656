//! Attribute-dependency measures and general monotone set functions.
//!
//! An [`AttributeMeasure`] is a lazily evaluated, memoized set function on
//! attribute subsets. The γ and δ dependency measures come in two forms: the
//! positive-region form built on fuzzy-rough lower approximations, and the
//! distance form built on a monotone family of per-subset base distances
//! (Manhattan-style sums or negated similarity). With the Łukasiewicz
//! implicator and the minimum t-norm the two forms coincide.
//!
//! Arbitrary non-negative set functions can be turned into normalized
//! monotone measures with [`monotonize_measure`], and any measure can be
//! checked with [`audit_monotonicity`].

use crate::connectives::{Connectives, Implicator};
use crate::dataset::DecisionSystem;
use crate::error::{Error, Result};
use crate::fuzzy_rough::{positive_region_of, RelationFamily, TNormFamily};
use crate::subset::AttrSet;
use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Absolute tolerance used by the monotonicity audit.
pub const MONOTONICITY_TOLERANCE: f64 = 1e-9;

/// Largest arity for which exhaustive subset enumeration (tabulation, audit,
/// monotonization) is attempted.
pub const TABULATION_LIMIT: usize = 20;

pub(crate) trait MeasureEval: Send + Sync {
    fn value(&self, subset: AttrSet) -> Result<f64>;

    /// Fast path for Choquet chains: values of the suffix sets
    /// `{order[i..]}` for `i in 0..order.len()`. Implementations that return
    /// `Some` bypass the memo cache entirely so the result is a pure function
    /// of `order`.
    fn suffix_chain(&self, _order: &[usize]) -> Option<Result<Vec<f64>>> {
        None
    }
}

/// A set function on attribute subsets with lazy, memoized evaluation.
#[derive(Clone)]
pub struct AttributeMeasure {
    arity: usize,
    known_monotone: bool,
    known_normalized: bool,
    counting_family: bool,
    eval: Arc<dyn MeasureEval>,
    cache: Arc<DashMap<u64, f64>>,
}

impl std::fmt::Debug for AttributeMeasure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AttributeMeasure")
            .field("arity", &self.arity)
            .field("known_monotone", &self.known_monotone)
            .field("known_normalized", &self.known_normalized)
            .field("counting_family", &self.counting_family)
            .field("cached", &self.cache.len())
            .finish()
    }
}

impl AttributeMeasure {
    fn build(
        arity: usize,
        known_monotone: bool,
        known_normalized: bool,
        counting_family: bool,
        eval: Arc<dyn MeasureEval>,
    ) -> AttributeMeasure {
        assert!(arity >= 1, "measures need at least one attribute");
        AttributeMeasure {
            arity,
            known_monotone,
            known_normalized,
            counting_family,
            eval,
            cache: Arc::new(DashMap::new()),
        }
    }

    /// Wrap a plain function as a measure. The flags are taken on trust; use
    /// [`audit_monotonicity`] to verify monotonicity when in doubt.
    pub fn from_fn<F>(arity: usize, known_monotone: bool, known_normalized: bool, f: F) -> Self
    where
        F: Fn(AttrSet) -> f64 + Send + Sync + 'static,
    {
        struct FnEval<F>(F);
        impl<F: Fn(AttrSet) -> f64 + Send + Sync> MeasureEval for FnEval<F> {
            fn value(&self, subset: AttrSet) -> Result<f64> {
                Ok((self.0)(subset))
            }
        }
        AttributeMeasure::build(
            arity,
            known_monotone,
            known_normalized,
            false,
            Arc::new(FnEval(f)),
        )
    }

    /// The counting measure `|B|`, or `|B| / n` when `normalized`.
    pub fn counting(arity: usize, normalized: bool) -> Self {
        let scale = if normalized { arity as f64 } else { 1.0 };
        struct CountEval {
            scale: f64,
        }
        impl MeasureEval for CountEval {
            fn value(&self, subset: AttrSet) -> Result<f64> {
                Ok(subset.len() as f64 / self.scale)
            }
        }
        AttributeMeasure::build(arity, true, normalized, true, Arc::new(CountEval { scale }))
    }

    /// An additive measure from non-negative per-attribute weights.
    pub fn additive(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Config("additive measure needs at least one weight".into()));
        }
        for &w in weights {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::Config(format!(
                    "additive weights must be non-negative and finite, got {w}"
                )));
            }
        }
        let sum: f64 = weights.iter().sum();
        struct AddEval {
            weights: Vec<f64>,
        }
        impl MeasureEval for AddEval {
            fn value(&self, subset: AttrSet) -> Result<f64> {
                // fold from +0.0; f64::sum seeds with -0.0 and an empty
                // subset would come out as negative zero
                Ok(subset.iter().map(|a| self.weights[a]).fold(0.0, |a, b| a + b))
            }
        }
        Ok(AttributeMeasure::build(
            weights.len(),
            true,
            (sum - 1.0).abs() <= 1e-12,
            false,
            Arc::new(AddEval { weights: weights.to_vec() }),
        ))
    }

    /// A measure given by an explicit subset table with an optional default
    /// for unlisted subsets. Duplicate subsets are rejected; querying an
    /// unlisted subset without a default is an error.
    pub fn explicit(
        arity: usize,
        entries: &[(AttrSet, f64)],
        default: Option<f64>,
    ) -> Result<Self> {
        let full = AttrSet::full(arity);
        let mut table = HashMap::with_capacity(entries.len());
        for &(subset, value) in entries {
            if !subset.is_subset_of(full) {
                return Err(Error::Measure(format!(
                    "subset {subset:?} lies outside the {arity}-attribute universe"
                )));
            }
            if !value.is_finite() || value < 0.0 {
                return Err(Error::Measure(format!(
                    "measure values must be non-negative and finite, got {value}"
                )));
            }
            if table.insert(subset.bits(), value).is_some() {
                return Err(Error::Measure(format!("duplicate subset {subset:?}")));
            }
        }
        struct TableEval {
            table: HashMap<u64, f64>,
            default: Option<f64>,
        }
        impl MeasureEval for TableEval {
            fn value(&self, subset: AttrSet) -> Result<f64> {
                match self.table.get(&subset.bits()) {
                    Some(&v) => Ok(v),
                    None => self.default.ok_or_else(|| {
                        Error::Measure(format!(
                            "measure has no entry for subset {subset:?} and no default"
                        ))
                    }),
                }
            }
        }
        let full_value = table.get(&full.bits()).copied();
        Ok(AttributeMeasure::build(
            arity,
            false,
            full_value == Some(1.0),
            false,
            Arc::new(TableEval { table, default }),
        ))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn known_monotone(&self) -> bool {
        self.known_monotone
    }

    pub fn known_normalized(&self) -> bool {
        self.known_normalized
    }

    /// True for the counting measure and its normalized variant; the symbolic
    /// `p = ±∞` distance limits are only defined for these.
    pub fn is_counting_family(&self) -> bool {
        self.counting_family
    }

    /// Evaluate the measure at a subset, memoizing the result. Each cache key
    /// is written at most once; racing evaluations compute identical values.
    pub fn value(&self, subset: AttrSet) -> Result<f64> {
        if !subset.is_subset_of(AttrSet::full(self.arity)) {
            return Err(Error::Measure(format!(
                "subset {subset:?} lies outside the {}-attribute universe",
                self.arity
            )));
        }
        if let Some(hit) = self.cache.get(&subset.bits()) {
            return Ok(*hit);
        }
        let v = self.eval.value(subset)?;
        Ok(*self.cache.entry(subset.bits()).or_insert(v))
    }

    /// Values of the Choquet chain sets `{order[i..]}` for `i in 0..n`.
    /// `order` must be a permutation of `0..arity`.
    pub(crate) fn chain_values(&self, order: &[usize]) -> Result<Vec<f64>> {
        debug_assert_eq!(order.len(), self.arity);
        if let Some(res) = self.eval.suffix_chain(order) {
            return res;
        }
        let mut masks = vec![AttrSet::EMPTY; order.len()];
        let mut acc = AttrSet::EMPTY;
        for i in (0..order.len()).rev() {
            acc = acc.with(order[i]);
            masks[i] = acc;
        }
        masks.into_iter().map(|s| self.value(s)).collect()
    }

    /// Materialize all `2^arity` values; refused above [`TABULATION_LIMIT`].
    pub fn tabulate(&self) -> Result<Vec<(AttrSet, f64)>> {
        if self.arity > TABULATION_LIMIT {
            return Err(Error::Config(format!(
                "tabulation over 2^{} subsets refused (limit {TABULATION_LIMIT})",
                self.arity
            )));
        }
        AttrSet::powerset(self.arity).map(|s| Ok((s, self.value(s)?))).collect()
    }
}

/// The per-subset base distance family used by the distance-form measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseDistance {
    /// `d_B(x,y) = sum over a in B of |a(x)-a(y)|^q`; `q = 1` is the
    /// Manhattan distance.
    MinkowskiSum { q: u32 },
    /// `d_B = N(R_B)`: the negated t-norm similarity relation. With the
    /// minimum t-norm and the Łukasiewicz negator this is the Chebyshev
    /// distance over the subset.
    NegatedSimilarity(Connectives),
}

impl BaseDistance {
    pub fn manhattan() -> BaseDistance {
        BaseDistance::MinkowskiSum { q: 1 }
    }
}

enum Aggregation {
    Sum,
    Min,
}

/// Cross-class candidate table: for every instance `y`, the per-attribute
/// components of its distances to every out-of-class instance `z`.
struct PairTable {
    n_attrs: usize,
    /// Per instance: range into the pair rows.
    groups: Vec<(usize, usize)>,
    /// Row-major `pairs x n_attrs`.
    rows: Vec<f64>,
    base: BaseDistance,
}

impl PairTable {
    fn new(ds: &DecisionSystem, base: BaseDistance) -> Result<PairTable> {
        // check the labels actually present; a fold subset can carry fewer
        // classes than its parent's label universe
        let first = ds.labels().first();
        if !ds.labels().iter().any(|l| Some(l) != first) {
            return Err(Error::SingleClass);
        }
        ds.ensure_unit_range()?;
        let n = ds.n_instances();
        let m = ds.n_attributes();
        let mut groups = Vec::with_capacity(n);
        let mut rows = Vec::new();
        for y in 0..n {
            let start = rows.len() / m;
            for z in 0..n {
                if ds.label(z) == ds.label(y) {
                    continue;
                }
                for a in 0..m {
                    let d = (ds.value(z, a) - ds.value(y, a)).abs();
                    let component = match base {
                        BaseDistance::MinkowskiSum { q: 1 } => d,
                        BaseDistance::MinkowskiSum { q } => d.powi(q as i32),
                        BaseDistance::NegatedSimilarity(_) => 1.0 - d,
                    };
                    rows.push(component);
                }
            }
            groups.push((start, rows.len() / m));
        }
        Ok(PairTable { n_attrs: m, groups, rows, base })
    }

    #[inline]
    fn pair_row(&self, p: usize) -> &[f64] {
        &self.rows[p * self.n_attrs..(p + 1) * self.n_attrs]
    }

    /// Distance of one pair over a subset.
    fn pair_distance(&self, p: usize, subset: AttrSet) -> f64 {
        let row = self.pair_row(p);
        match self.base {
            BaseDistance::MinkowskiSum { .. } => {
                subset.iter().map(|a| row[a]).fold(0.0, |a, b| a + b)
            }
            BaseDistance::NegatedSimilarity(conn) => {
                conn.implicator.negator_eval(conn.t_norm.fold_eval(subset.iter().map(|a| row[a])))
            }
        }
    }

    /// Aggregate `min over pairs of d_B` per instance, then sum or min over
    /// instances.
    fn aggregate(&self, subset: AttrSet, agg: &Aggregation) -> f64 {
        let per_instance = self.groups.iter().map(|&(s, e)| {
            (s..e).map(|p| self.pair_distance(p, subset)).fold(f64::INFINITY, f64::min)
        });
        match agg {
            Aggregation::Sum => per_instance.sum(),
            Aggregation::Min => per_instance.fold(f64::INFINITY, f64::min),
        }
    }

    /// Aggregates along a removal chain: position `i` covers the subset
    /// `{order[i..]}`. Each step removes one attribute from per-pair running
    /// sums, so the whole chain costs `O(n_attrs * pairs)`.
    fn aggregate_chain(&self, order: &[usize], agg: &Aggregation) -> Vec<f64> {
        let n_pairs = self.groups.last().map_or(0, |&(_, e)| e);
        let mut sums: Vec<f64> = (0..n_pairs).map(|p| self.pair_row(p).iter().sum()).collect();
        let mut out = Vec::with_capacity(order.len());
        for (step, &removed) in order.iter().enumerate() {
            let per_instance = self.groups.iter().map(|&(s, e)| {
                sums[s..e].iter().copied().fold(f64::INFINITY, f64::min)
            });
            let v = match agg {
                Aggregation::Sum => per_instance.sum(),
                Aggregation::Min => per_instance.fold(f64::INFINITY, f64::min),
            };
            out.push(v);
            if step + 1 < order.len() {
                for (p, sum) in sums.iter_mut().enumerate() {
                    *sum -= self.pair_row(p)[removed];
                }
            }
        }
        out
    }
}

struct DistanceMeasureEval {
    table: PairTable,
    agg: Aggregation,
    denom: f64,
}

impl MeasureEval for DistanceMeasureEval {
    fn value(&self, subset: AttrSet) -> Result<f64> {
        Ok(self.table.aggregate(subset, &self.agg) / self.denom)
    }

    fn suffix_chain(&self, order: &[usize]) -> Option<Result<Vec<f64>>> {
        match self.table.base {
            BaseDistance::MinkowskiSum { .. } => {
                let vals = self
                    .table
                    .aggregate_chain(order, &self.agg)
                    .into_iter()
                    .map(|v| v / self.denom)
                    .collect();
                Some(Ok(vals))
            }
            // negated similarity folds cannot be updated incrementally
            BaseDistance::NegatedSimilarity(_) => None,
        }
    }
}

fn distance_measure(
    ds: &DecisionSystem,
    base: BaseDistance,
    agg: Aggregation,
) -> Result<AttributeMeasure> {
    if let BaseDistance::MinkowskiSum { q } = base {
        if q == 0 {
            return Err(Error::Config("base distance exponent q must be at least 1".into()));
        }
    }
    let table = PairTable::new(ds, base)?;
    let full = ds.full_set();
    let denom = table.aggregate(full, &agg);
    if !(denom > 0.0) {
        return Err(Error::Measure(
            "dataset has duplicate instances across classes under the full-attribute base \
             distance"
                .into(),
        ));
    }
    let eval = DistanceMeasureEval { table, agg, denom };
    Ok(AttributeMeasure::build(
        ds.n_attributes(),
        true, // the base families shipped here are monotone in the subset
        true, // value at the full attribute set is 1 by construction
        false,
        Arc::new(eval),
    ))
}

/// The γ dependency measure in distance form: the normalized sum over
/// instances of the distance to the closest out-of-class instance.
pub fn gamma_distance(ds: &DecisionSystem, base: BaseDistance) -> Result<AttributeMeasure> {
    distance_measure(ds, base, Aggregation::Sum)
}

/// The δ dependency measure in distance form: the normalized worst case of
/// the distance to the closest out-of-class instance.
pub fn delta_distance(ds: &DecisionSystem, base: BaseDistance) -> Result<AttributeMeasure> {
    distance_measure(ds, base, Aggregation::Min)
}

fn family_measure(
    family: Arc<dyn RelationFamily>,
    labels: Vec<usize>,
    implicator: Implicator,
    agg: Aggregation,
) -> Result<AttributeMeasure> {
    let arity = family.arity();
    let full = AttrSet::full(arity);
    let pos_full = positive_region_of(&family.relation(full), &labels, implicator)?;
    let denom = match agg {
        Aggregation::Sum => pos_full.iter().sum::<f64>(),
        Aggregation::Min => pos_full.iter().copied().fold(f64::INFINITY, f64::min),
    };
    if !(denom > 0.0) {
        return Err(match agg {
            Aggregation::Sum => {
                Error::Measure("full-attribute positive region vanishes".into())
            }
            Aggregation::Min => Error::Measure(
                "delta undefined: an instance lies fully outside the full-attribute positive \
                 region"
                    .into(),
            ),
        });
    }
    struct PosEval {
        family: Arc<dyn RelationFamily>,
        labels: Vec<usize>,
        implicator: Implicator,
        sum: bool,
        denom: f64,
    }
    impl MeasureEval for PosEval {
        fn value(&self, subset: AttrSet) -> Result<f64> {
            let pos =
                positive_region_of(&self.family.relation(subset), &self.labels, self.implicator)?;
            let v = if self.sum {
                pos.iter().sum::<f64>()
            } else {
                pos.iter().copied().fold(f64::INFINITY, f64::min)
            };
            Ok(v / self.denom)
        }
    }
    let known_monotone = family.known_monotone();
    let sum = matches!(agg, Aggregation::Sum);
    Ok(AttributeMeasure::build(
        arity,
        known_monotone,
        true,
        false,
        Arc::new(PosEval { family, labels, implicator, sum, denom }),
    ))
}

/// γ over an arbitrary relation family with crisp labels. Monotone whenever
/// the family is.
pub fn gamma_for_family(
    family: Arc<dyn RelationFamily>,
    labels: Vec<usize>,
    implicator: Implicator,
) -> Result<AttributeMeasure> {
    family_measure(family, labels, implicator, Aggregation::Sum)
}

/// δ over an arbitrary relation family with crisp labels.
pub fn delta_for_family(
    family: Arc<dyn RelationFamily>,
    labels: Vec<usize>,
    implicator: Implicator,
) -> Result<AttributeMeasure> {
    family_measure(family, labels, implicator, Aggregation::Min)
}

/// The γ dependency measure in positive-region form over the t-norm
/// similarity family of a decision system.
pub fn gamma_positive(ds: &Arc<DecisionSystem>, cfg: Connectives) -> Result<AttributeMeasure> {
    ds.ensure_unit_range()?;
    let family = Arc::new(TNormFamily::new(ds.clone(), cfg.t_norm));
    gamma_for_family(family, ds.labels().to_vec(), cfg.implicator)
}

/// The δ dependency measure in positive-region form.
pub fn delta_positive(ds: &Arc<DecisionSystem>, cfg: Connectives) -> Result<AttributeMeasure> {
    ds.ensure_unit_range()?;
    let family = Arc::new(TNormFamily::new(ds.clone(), cfg.t_norm));
    delta_for_family(family, ds.labels().to_vec(), cfg.implicator)
}

/// Monotonize and normalize a non-negative set function:
/// `out(B) = max over S ⊆ B of raw(S), divided by the global maximum`.
///
/// Evaluation is lazy and memoized via the recursion
/// `max(raw(B), max over a in B of unnormalized(B \ {a}))`; the global
/// maximum (the unnormalized value at the full set) is computed up front,
/// which forces all `2^arity` raw values.
pub fn monotonize_measure<F>(raw: F, arity: usize) -> Result<AttributeMeasure>
where
    F: Fn(AttrSet) -> f64 + Send + Sync + 'static,
{
    if arity > TABULATION_LIMIT {
        return Err(Error::Config(format!(
            "monotonization needs the global maximum over 2^{arity} subsets \
             (limit {TABULATION_LIMIT})"
        )));
    }
    struct MonoCore<F> {
        raw: F,
        cache: DashMap<u64, f64>,
    }
    impl<F: Fn(AttrSet) -> f64 + Send + Sync> MonoCore<F> {
        fn unnormalized(&self, subset: AttrSet) -> Result<f64> {
            if let Some(hit) = self.cache.get(&subset.bits()) {
                return Ok(*hit);
            }
            let rv = (self.raw)(subset);
            if !rv.is_finite() || rv < 0.0 {
                return Err(Error::Measure(format!(
                    "raw set function must be non-negative and finite, got {rv} at {subset:?}"
                )));
            }
            let mut best = rv;
            for a in subset.iter() {
                best = best.max(self.unnormalized(subset.without(a))?);
            }
            Ok(*self.cache.entry(subset.bits()).or_insert(best))
        }
    }
    let core = Arc::new(MonoCore { raw, cache: DashMap::new() });
    let scale = core.unnormalized(AttrSet::full(arity))?;
    if !(scale > 0.0) {
        return Err(Error::Measure("cannot normalize zero measure".into()));
    }
    struct MonoEval<F> {
        core: Arc<MonoCore<F>>,
        scale: f64,
    }
    impl<F: Fn(AttrSet) -> f64 + Send + Sync> MeasureEval for MonoEval<F> {
        fn value(&self, subset: AttrSet) -> Result<f64> {
            Ok(self.core.unnormalized(subset)? / self.scale)
        }
    }
    Ok(AttributeMeasure::build(arity, true, true, false, Arc::new(MonoEval { core, scale })))
}

/// Witnessed monotonicity violations: pairs `(sub, sup)` of covering subsets
/// with `value(sub) > value(sup) + tolerance`. Exhaustive up to
/// [`TABULATION_LIMIT`] attributes, deterministic sampling beyond.
pub fn audit_monotonicity(measure: &AttributeMeasure) -> Result<Vec<(AttrSet, AttrSet)>> {
    let n = measure.arity();
    let mut violations = Vec::new();
    if n <= TABULATION_LIMIT {
        for sup in AttrSet::powerset(n) {
            let sup_v = measure.value(sup)?;
            for a in sup.iter() {
                let sub = sup.without(a);
                if measure.value(sub)? > sup_v + MONOTONICITY_TOLERANCE {
                    violations.push((sub, sup));
                }
            }
        }
    } else {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x4155_4449);
        for _ in 0..100_000 {
            let sup = AttrSet::from_bits(rng.random::<u64>()).intersection(AttrSet::full(n));
            if sup.is_empty() {
                continue;
            }
            let members: Vec<usize> = sup.iter().collect();
            let a = members[rng.random_range(0..members.len())];
            let sub = sup.without(a);
            if measure.value(sub)? > measure.value(sup)? + MONOTONICITY_TOLERANCE {
                violations.push((sub, sup));
            }
        }
    }
    Ok(violations)
}

/// JSON document mapping named attribute subsets to measure values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureFile {
    pub attributes: Vec<String>,
    pub entries: Vec<MeasureEntry>,
    #[serde(default)]
    pub default: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureEntry {
    pub subset: Vec<String>,
    pub value: f64,
}

impl MeasureFile {
    pub fn from_json(text: &str) -> Result<MeasureFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        // route through a Value so object keys come out sorted
        Ok(serde_json::to_string_pretty(&serde_json::to_value(self)?)?)
    }

    fn subset_for(&self, names: &[String], entry: &MeasureEntry) -> Result<AttrSet> {
        let mut s = AttrSet::EMPTY;
        for name in &entry.subset {
            let idx = names.iter().position(|n| n == name).ok_or_else(|| {
                Error::Measure(format!("unknown attribute '{name}' in measure entry"))
            })?;
            if s.contains(idx) {
                return Err(Error::Measure(format!(
                    "attribute '{name}' listed twice in one subset"
                )));
            }
            s = s.with(idx);
        }
        Ok(s)
    }

    /// Interpret the file over its own attribute list.
    pub fn to_measure(&self) -> Result<AttributeMeasure> {
        self.to_measure_for(&self.attributes)
    }

    /// Interpret the file over the attribute order of a dataset; the name
    /// sets must match exactly.
    pub fn to_measure_for(&self, names: &[String]) -> Result<AttributeMeasure> {
        if self.attributes.len() != names.len()
            || !self.attributes.iter().all(|a| names.contains(a))
        {
            return Err(Error::Measure(format!(
                "measure attributes {:?} do not match dataset attributes {:?}",
                self.attributes, names
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|e| Ok((self.subset_for(names, e)?, e.value)))
            .collect::<Result<Vec<_>>>()?;
        AttributeMeasure::explicit(names.len(), &entries, self.default)
    }

    /// Tabulate a measure into the file format.
    pub fn from_measure(measure: &AttributeMeasure, names: &[String]) -> Result<MeasureFile> {
        if names.len() != measure.arity() {
            return Err(Error::DimensionMismatch {
                expected: measure.arity(),
                got: names.len(),
            });
        }
        let entries = measure
            .tabulate()?
            .into_iter()
            .map(|(s, v)| MeasureEntry {
                subset: s.iter().map(|a| names[a].clone()).collect(),
                value: v,
            })
            .collect();
        Ok(MeasureFile { attributes: names.to_vec(), entries, default: None })
    }
}
