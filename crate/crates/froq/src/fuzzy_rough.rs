//! Similarity relations, lower/upper approximations and positive regions.
//!
//! A fuzzy relation on the instance set is stored densely as a
//! [`RelationMatrix`]. The t-norm construction folds per-attribute
//! similarities into a relation per attribute subset; the resulting family is
//! monotone by construction (larger subsets yield smaller relations).
//! Arbitrary subset-indexed families implement [`RelationFamily`] and can be
//! monotonized with [`monotonize_relation_family`].

use crate::connectives::{Connectives, Implicator, TNorm};
use crate::dataset::DecisionSystem;
use crate::error::{Error, Result};
use crate::subset::AttrSet;
use dashmap::DashMap;
use std::collections::HashMap;
use std::sync::Arc;

/// A fuzzy relation on instances: a square matrix with entries in `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RelationMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> RelationMatrix {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = f(i, j);
            }
        }
        RelationMatrix { n, data }
    }

    pub fn constant(n: usize, v: f64) -> RelationMatrix {
        RelationMatrix { n, data: vec![v; n * n] }
    }

    /// The crisp identity relation.
    pub fn identity(n: usize) -> RelationMatrix {
        RelationMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The crisp label-equality relation of a decision system.
    pub fn label_equality(labels: &[usize]) -> RelationMatrix {
        RelationMatrix::from_fn(labels.len(), |i, j| if labels[i] == labels[j] { 1.0 } else { 0.0 })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Entrywise minimum; both matrices must have the same size.
    pub fn entrywise_min(&self, other: &RelationMatrix) -> RelationMatrix {
        assert_eq!(self.n, other.n, "relation size mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a.min(b)).collect();
        RelationMatrix { n: self.n, data }
    }

    /// True when every entry of `self` is `<=` the matching entry of `other`.
    pub fn pointwise_le(&self, other: &RelationMatrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(&a, &b)| a <= b)
    }

    /// Row `i` as a membership vector.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// The t-norm-combined similarity relation over an attribute subset:
/// `R_B(x,y)` folds `1 - |a(x) - a(y)|` over `a in B`. The empty subset
/// yields the all-ones relation.
pub fn similarity_relation(ds: &DecisionSystem, subset: AttrSet, t_norm: TNorm) -> RelationMatrix {
    let n = ds.n_instances();
    let attrs: Vec<usize> = subset.iter().collect();
    let mut m = RelationMatrix::constant(n, 1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = t_norm.fold_eval(attrs.iter().map(|&a| ds.similarity_unchecked(a, i, j)));
            m.data[i * n + j] = v;
            m.data[j * n + i] = v;
        }
    }
    m
}

/// Lower approximation of a fuzzy set `a` w.r.t. a relation:
/// `out(x) = min_y I(R(x,y), a(y))`.
pub fn lower_approximation(
    relation: &RelationMatrix,
    set: &[f64],
    implicator: Implicator,
) -> Result<Vec<f64>> {
    if set.len() != relation.size() {
        return Err(Error::DimensionMismatch { expected: relation.size(), got: set.len() });
    }
    let n = relation.size();
    Ok((0..n)
        .map(|x| {
            (0..n)
                .map(|y| implicator.eval(relation.get(x, y), set[y]))
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}

/// Upper approximation of a fuzzy set `a` w.r.t. a relation:
/// `out(x) = max_y C(R(x,y), a(y))`.
pub fn upper_approximation(
    relation: &RelationMatrix,
    set: &[f64],
    conjunctor: TNorm,
) -> Result<Vec<f64>> {
    if set.len() != relation.size() {
        return Err(Error::DimensionMismatch { expected: relation.size(), got: set.len() });
    }
    let n = relation.size();
    Ok((0..n)
        .map(|x| {
            (0..n)
                .map(|y| conjunctor.eval(relation.get(x, y), set[y]))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect())
}

/// Positive region for crisp labels over an arbitrary relation:
/// `POS(y) = min over z with label(z) != label(y) of N(R(z,y))`.
pub fn positive_region_of(
    relation: &RelationMatrix,
    labels: &[usize],
    implicator: Implicator,
) -> Result<Vec<f64>> {
    let n = relation.size();
    if labels.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: labels.len() });
    }
    let distinct = {
        let first = labels.first();
        labels.iter().any(|l| Some(l) != first)
    };
    if !distinct {
        return Err(Error::SingleClass);
    }
    Ok((0..n)
        .map(|y| {
            (0..n)
                .filter(|&z| labels[z] != labels[y])
                .map(|z| implicator.negator_eval(relation.get(z, y)))
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}

/// Positive region of a decision system over the t-norm similarity relation
/// for `subset`, using the crisp shortcut for the label relation.
pub fn positive_region(
    ds: &DecisionSystem,
    subset: AttrSet,
    cfg: Connectives,
) -> Result<Vec<f64>> {
    let relation = similarity_relation(ds, subset, cfg.t_norm);
    positive_region_of(&relation, ds.labels(), cfg.implicator)
}

/// Positive region in its general union form, for an arbitrary fuzzy decision
/// relation `r_d`: `POS(y) = max_x lower_approximation(R_B, row x of r_d)(y)`.
pub fn positive_region_general_of(
    relation: &RelationMatrix,
    r_d: &RelationMatrix,
    implicator: Implicator,
) -> Result<Vec<f64>> {
    let n = relation.size();
    if r_d.size() != n {
        return Err(Error::DimensionMismatch { expected: n, got: r_d.size() });
    }
    let mut out = vec![f64::NEG_INFINITY; n];
    for x in 0..n {
        let lower = lower_approximation(relation, r_d.row(x), implicator)?;
        for (o, l) in out.iter_mut().zip(lower) {
            *o = o.max(l);
        }
    }
    Ok(out)
}

/// General-form positive region over the t-norm similarity relation of a
/// decision system.
pub fn positive_region_general(
    ds: &DecisionSystem,
    subset: AttrSet,
    cfg: Connectives,
    r_d: &RelationMatrix,
) -> Result<Vec<f64>> {
    let relation = similarity_relation(ds, subset, cfg.t_norm);
    positive_region_general_of(&relation, r_d, cfg.implicator)
}

/// A family of fuzzy relations indexed by attribute subsets.
///
/// Implementations must be safe for concurrent queries; callers may race to
/// compute the same subset, but each cached entry is written at most once and
/// every reader observes a fully computed matrix.
pub trait RelationFamily: Send + Sync {
    /// Number of conditional attributes the subsets range over.
    fn arity(&self) -> usize;

    /// Number of instances each relation is defined on.
    fn instance_count(&self) -> usize;

    /// The relation for a subset.
    fn relation(&self, subset: AttrSet) -> Arc<RelationMatrix>;

    /// True when the family is monotone by construction
    /// (`A ⊆ B` implies `R_B ⊆ R_A`).
    fn known_monotone(&self) -> bool {
        false
    }
}

/// The t-norm-generated similarity family of a decision system. Lazily
/// computes and memoizes one matrix per queried subset.
pub struct TNormFamily {
    ds: Arc<DecisionSystem>,
    t_norm: TNorm,
    cache: DashMap<u64, Arc<RelationMatrix>>,
}

impl TNormFamily {
    pub fn new(ds: Arc<DecisionSystem>, t_norm: TNorm) -> TNormFamily {
        TNormFamily { ds, t_norm, cache: DashMap::new() }
    }
}

impl RelationFamily for TNormFamily {
    fn arity(&self) -> usize {
        self.ds.n_attributes()
    }

    fn instance_count(&self) -> usize {
        self.ds.n_instances()
    }

    fn relation(&self, subset: AttrSet) -> Arc<RelationMatrix> {
        if let Some(hit) = self.cache.get(&subset.bits()) {
            return hit.clone();
        }
        let computed = Arc::new(similarity_relation(&self.ds, subset, self.t_norm));
        // first writer wins; racing computations produce identical values
        self.cache.entry(subset.bits()).or_insert(computed).clone()
    }

    fn known_monotone(&self) -> bool {
        true
    }
}

/// A family given by an explicit table of matrices, mainly for synthetic
/// (possibly non-monotone) families in tests and experiments. Subsets missing
/// from the table fall back to the all-ones relation only for the empty set;
/// any other missing subset panics.
pub struct ExplicitFamily {
    arity: usize,
    instances: usize,
    table: HashMap<u64, Arc<RelationMatrix>>,
}

impl ExplicitFamily {
    pub fn new(
        arity: usize,
        instances: usize,
        entries: Vec<(AttrSet, RelationMatrix)>,
    ) -> Result<ExplicitFamily> {
        let mut table = HashMap::new();
        for (s, m) in entries {
            if m.size() != instances {
                return Err(Error::DimensionMismatch { expected: instances, got: m.size() });
            }
            if table.insert(s.bits(), Arc::new(m)).is_some() {
                return Err(Error::Config(format!("duplicate relation for subset {s:?}")));
            }
        }
        Ok(ExplicitFamily { arity, instances, table })
    }
}

impl RelationFamily for ExplicitFamily {
    fn arity(&self) -> usize {
        self.arity
    }

    fn instance_count(&self) -> usize {
        self.instances
    }

    fn relation(&self, subset: AttrSet) -> Arc<RelationMatrix> {
        if let Some(m) = self.table.get(&subset.bits()) {
            return m.clone();
        }
        if subset.is_empty() {
            return Arc::new(RelationMatrix::constant(self.instances, 1.0));
        }
        panic!("explicit family has no relation for subset {subset:?}");
    }
}

/// The monotonization of a relation family:
/// `R^m_A(x,y) = min over S ⊆ A of R_S(x,y)`.
///
/// Families that are monotone by construction pass through unchanged. For the
/// rest, evaluation is lazy with one memoized matrix per subset, using the
/// recursion `R^m_A = min(R_A, min over a in A of R^m_{A \ {a}})`.
pub struct MonotonizedFamily<F: RelationFamily> {
    inner: F,
    cache: DashMap<u64, Arc<RelationMatrix>>,
}

pub fn monotonize_relation_family<F: RelationFamily>(family: F) -> MonotonizedFamily<F> {
    MonotonizedFamily { inner: family, cache: DashMap::new() }
}

impl<F: RelationFamily> RelationFamily for MonotonizedFamily<F> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn instance_count(&self) -> usize {
        self.inner.instance_count()
    }

    fn relation(&self, subset: AttrSet) -> Arc<RelationMatrix> {
        if self.inner.known_monotone() {
            return self.inner.relation(subset);
        }
        if let Some(hit) = self.cache.get(&subset.bits()) {
            return hit.clone();
        }
        let mut m = (*self.inner.relation(subset)).clone();
        for a in subset.iter() {
            m = m.entrywise_min(&self.relation(subset.without(a)));
        }
        self.cache.entry(subset.bits()).or_insert(Arc::new(m)).clone()
    }

    fn known_monotone(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{load_decision_system, CsvSchema};
    use proptest::prelude::*;

    const FLU: &str = "a1,a2,a3,d\n0,0.9,0.9,1\n0.9,0.95,0.95,1\n0,1,0,0\n0.9,0,0,0\n";

    fn flu() -> Arc<DecisionSystem> {
        Arc::new(load_decision_system(FLU.as_bytes(), &CsvSchema::default()).unwrap())
    }

    fn indicator(n: usize, members: &[usize]) -> Vec<f64> {
        let mut v = vec![0.0; n];
        for &m in members {
            v[m] = 1.0;
        }
        v
    }

    #[test]
    fn similarity_relation_on_flu() {
        let ds = flu();
        let r = similarity_relation(&ds, ds.full_set(), TNorm::Minimum);
        assert!((r.get(2, 0) - 0.1).abs() <= 1e-12); // min(1.0, 0.9, 0.1)
        assert_eq!(r.get(0, 2), r.get(2, 0));
        assert!((r.get(2, 1) - 0.05).abs() <= 1e-12); // min(0.1, 0.95, 0.05)
        for i in 0..4 {
            assert_eq!(r.get(i, i), 1.0);
        }
        let r1 = similarity_relation(&ds, AttrSet::singleton(0), TNorm::Minimum);
        assert_eq!(r1.get(0, 2), 1.0);
        let empty = similarity_relation(&ds, AttrSet::EMPTY, TNorm::Minimum);
        assert!(empty.pointwise_le(&RelationMatrix::constant(4, 1.0)));
        assert!(RelationMatrix::constant(4, 1.0).pointwise_le(&empty));
    }

    #[test]
    fn lower_approximation_identity_and_constant_relations() {
        let a = vec![0.3, 0.8, 0.5];
        let id = RelationMatrix::identity(3);
        let lower = lower_approximation(&id, &a, Implicator::Lukasiewicz).unwrap();
        assert_eq!(lower, a);
        let ones = RelationMatrix::constant(3, 1.0);
        let lower = lower_approximation(&ones, &a, Implicator::Lukasiewicz).unwrap();
        assert_eq!(lower, vec![0.3, 0.3, 0.3]);
        assert!(lower_approximation(&id, &[0.1], Implicator::Lukasiewicz).is_err());
    }

    #[test]
    fn lower_approximation_on_flu_class() {
        let ds = flu();
        let r = similarity_relation(&ds, ds.full_set(), TNorm::Minimum);
        let a = indicator(4, &[0, 1]);
        let lower = lower_approximation(&r, &a, Implicator::Lukasiewicz).unwrap();
        assert!((lower[0] - 0.9).abs() < 1e-12);
    }

    #[test]
    fn upper_approximation_cases() {
        let a = vec![0.3, 0.8, 0.5];
        let id = RelationMatrix::identity(3);
        assert_eq!(upper_approximation(&id, &a, TNorm::Minimum).unwrap(), a);
        let zero = vec![0.0; 3];
        let ones = RelationMatrix::constant(3, 1.0);
        assert_eq!(upper_approximation(&ones, &zero, TNorm::Minimum).unwrap(), zero);

        let ds = flu();
        let r = similarity_relation(&ds, ds.full_set(), TNorm::Minimum);
        let upper = upper_approximation(&r, &indicator(4, &[0, 1]), TNorm::Minimum).unwrap();
        assert!((upper[2] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn positive_region_on_flu() {
        let ds = flu();
        let pos = positive_region(&ds, ds.full_set(), Connectives::default()).unwrap();
        assert!((pos[0] - 0.9).abs() < 1e-12);
        assert!((pos[1] - 0.95).abs() < 1e-12);
        assert!((pos[2] - 0.9).abs() < 1e-12);
        assert!((pos[3] - 0.9).abs() < 1e-12);
        // empty subset: R is all ones, the negator sends 1 to 0
        let pos = positive_region(&ds, AttrSet::EMPTY, Connectives::default()).unwrap();
        assert_eq!(pos, vec![0.0; 4]);
    }

    #[test]
    fn positive_region_single_class_errors() {
        let ds = DecisionSystem::new(
            vec!["a".into()],
            vec![vec![0.1], vec![0.9]],
            vec!["same".into(), "same".into()],
        )
        .unwrap();
        let err = positive_region(&ds, ds.full_set(), Connectives::default()).unwrap_err();
        assert!(matches!(err, Error::SingleClass));
    }

    #[test]
    fn positive_region_is_one_on_separated_classes() {
        // classes live on disjoint attribute supports: cross-class R_B = 0
        let ds = DecisionSystem::new(
            vec!["a".into()],
            vec![vec![0.0], vec![0.0], vec![1.0], vec![1.0]],
            vec!["l".into(), "l".into(), "r".into(), "r".into()],
        )
        .unwrap();
        let pos = positive_region(&ds, ds.full_set(), Connectives::default()).unwrap();
        assert_eq!(pos, vec![1.0; 4]);
    }

    #[test]
    fn general_form_matches_crisp_shortcut_on_flu() {
        let ds = flu();
        let cfg = Connectives::default();
        let r_d = RelationMatrix::label_equality(ds.labels());
        for subset in AttrSet::powerset(3) {
            let shortcut = positive_region(&ds, subset, cfg).unwrap();
            let general = positive_region_general(&ds, subset, cfg, &r_d).unwrap();
            assert_eq!(shortcut, general, "subset {subset:?}");
        }
    }

    #[test]
    fn general_form_boundary_relations() {
        let ds = flu();
        let cfg = Connectives::default();
        let all = RelationMatrix::constant(4, 1.0);
        let pos = positive_region_general(&ds, ds.full_set(), cfg, &all).unwrap();
        assert_eq!(pos, vec![1.0; 4]);
        // identity decision relation under total indiscernibility
        let r_b = ExplicitFamily::new(1, 4, vec![(AttrSet::singleton(0), RelationMatrix::constant(4, 1.0))]).unwrap();
        let pos = positive_region_general_of(
            &r_b.relation(AttrSet::singleton(0)),
            &RelationMatrix::identity(4),
            cfg.implicator,
        )
        .unwrap();
        assert_eq!(pos, vec![0.0; 4]);
    }

    #[test]
    fn monotonization_passthrough_for_tnorm_family() {
        let ds = flu();
        let family = TNormFamily::new(ds.clone(), TNorm::Minimum);
        let mono = monotonize_relation_family(family);
        for subset in AttrSet::powerset(3) {
            let direct = similarity_relation(&ds, subset, TNorm::Minimum);
            assert_eq!(*mono.relation(subset), direct, "subset {subset:?}");
        }
    }

    #[test]
    fn monotonization_of_synthetic_family() {
        // two attributes; the pair relation is larger than a singleton one,
        // so the monotonization must pull it down
        let pairm = RelationMatrix::constant(2, 0.9);
        let single0 = RelationMatrix::constant(2, 0.3);
        let single1 = RelationMatrix::constant(2, 0.7);
        let fam = ExplicitFamily::new(
            2,
            2,
            vec![
                (AttrSet::from_indices([0, 1]), pairm),
                (AttrSet::singleton(0), single0),
                (AttrSet::singleton(1), single1),
            ],
        )
        .unwrap();
        let mono = monotonize_relation_family(fam);
        let m = mono.relation(AttrSet::from_indices([0, 1]));
        assert_eq!(m.get(0, 1), 0.3);
        assert_eq!(m.get(0, 0), 0.3);
        // the empty set keeps its (default all-ones) relation
        let e = mono.relation(AttrSet::EMPTY);
        assert_eq!(e.get(0, 1), 1.0);
        assert!(mono.known_monotone());
    }

    fn arb_relation(n: usize) -> impl Strategy<Value = RelationMatrix> {
        proptest::collection::vec(0.0f64..=1.0, n * n).prop_map(move |data| {
            RelationMatrix::from_fn(n, |i, j| if i <= j { data[i * n + j] } else { data[j * n + i] })
        })
    }

    proptest! {
        #[test]
        fn lower_approximation_is_relation_antitone(
            m1 in arb_relation(5),
            m2 in arb_relation(5),
            a in proptest::collection::vec(0.0f64..=1.0, 5),
        ) {
            let small = m1.entrywise_min(&m2);
            for imp in [Implicator::Lukasiewicz, Implicator::KleeneDienes, Implicator::Godel] {
                let lo_small = lower_approximation(&small, &a, imp).unwrap();
                let lo_big = lower_approximation(&m1, &a, imp).unwrap();
                for (s, b) in lo_small.iter().zip(&lo_big) {
                    prop_assert!(b <= s);
                }
            }
        }

        #[test]
        fn tnorm_family_is_monotone(
            rows in proptest::collection::vec(
                proptest::collection::vec(0.0f64..=1.0, 4), 2..7),
            bits in 0u64..16,
            extra in 0usize..4,
        ) {
            let n = rows.len();
            let labels = (0..n).map(|k| (k % 2).to_string()).collect();
            let ds = DecisionSystem::new(
                (0..4).map(|i| format!("a{i}")).collect(), rows, labels).unwrap();
            let small = AttrSet::from_bits(bits);
            let big = small.with(extra);
            for t in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz] {
                let r_small = similarity_relation(&ds, small, t);
                let r_big = similarity_relation(&ds, big, t);
                prop_assert!(r_big.pointwise_le(&r_small));
            }
        }

        #[test]
        fn lower_below_upper_for_residuated_pairs(
            m in arb_relation(4),
            a in proptest::collection::vec(0.0f64..=1.0, 4),
        ) {
            // force reflexivity
            let r = RelationMatrix::from_fn(4, |i, j| if i == j { 1.0 } else { m.get(i, j) });
            for (t, imp) in [
                (TNorm::Minimum, Implicator::Godel),
                (TNorm::Lukasiewicz, Implicator::Lukasiewicz),
            ] {
                let lo = lower_approximation(&r, &a, imp).unwrap();
                let up = upper_approximation(&r, &a, t).unwrap();
                for (l, u) in lo.iter().zip(&up) {
                    prop_assert!(*l <= *u + 1e-12);
                }
            }
        }

        #[test]
        fn monotonized_family_is_monotone(
            mats in proptest::collection::vec(arb_relation(3), 8),
            bits in 0u64..8,
            extra in 0usize..3,
        ) {
            let entries = (0..8u64)
                .map(|b| (AttrSet::from_bits(b), mats[b as usize].clone()))
                .collect();
            let fam = ExplicitFamily::new(3, 3, entries).unwrap();
            let mono = monotonize_relation_family(fam);
            let small = AttrSet::from_bits(bits);
            let big = small.with(extra);
            prop_assert!(mono.relation(big).pointwise_le(&mono.relation(small)));
            // definition check: R^m equals the min over all subsets
            let direct = small.subsets().fold(
                RelationMatrix::constant(3, 1.0),
                |acc, s| acc.entrywise_min(&mono_inner(&mats, s)),
            );
            prop_assert_eq!(&*mono.relation(small), &direct);
        }
    }

    fn mono_inner(mats: &[RelationMatrix], s: AttrSet) -> RelationMatrix {
        mats[s.bits() as usize].clone()
    }
}
