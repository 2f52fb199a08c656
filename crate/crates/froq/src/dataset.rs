//! Decision systems: labeled tabular data with real-valued conditional
//! attributes.
//!
//! A [`DecisionSystem`] is immutable after construction. Conditional
//! attribute values are expected to live in `[0,1]` before any measure or
//! distance is computed; [`DecisionSystem::normalize_min_max`] rescales
//! arbitrary columns into that range and returns the [`Normalizer`] needed to
//! map query instances with the same parameters.

use crate::error::{Error, Result};
use crate::subset::{AttrSet, MAX_ATTRIBUTES};
use std::io::{Read, Write};

/// A finite table of instances with conditional attributes and one crisp
/// decision label per instance.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionSystem {
    attribute_names: Vec<String>,
    label_column: String,
    ids: Vec<String>,
    /// Row-major `n_instances x n_attributes`.
    values: Vec<f64>,
    /// Class index per instance, into `label_names`.
    labels: Vec<usize>,
    /// Distinct label identifiers in first-appearance order.
    label_names: Vec<String>,
}

impl DecisionSystem {
    /// Build a decision system from rows of attribute values and raw label
    /// strings. Labels are interned in first-appearance order.
    pub fn new(
        attribute_names: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<String>,
    ) -> Result<DecisionSystem> {
        let n_attrs = attribute_names.len();
        if n_attrs == 0 {
            return Err(Error::Dataset("need at least 1 conditional attribute".into()));
        }
        if n_attrs > MAX_ATTRIBUTES {
            return Err(Error::Dataset(format!(
                "{n_attrs} conditional attributes exceed the supported maximum of {MAX_ATTRIBUTES}"
            )));
        }
        if rows.len() < 2 {
            return Err(Error::Dataset("need at least 2 instances".into()));
        }
        if rows.len() != labels.len() {
            return Err(Error::DimensionMismatch { expected: rows.len(), got: labels.len() });
        }
        let mut values = Vec::with_capacity(rows.len() * n_attrs);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n_attrs {
                return Err(Error::Dataset(format!(
                    "row {} has {} values, expected {}",
                    r + 1,
                    row.len(),
                    n_attrs
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Dataset(format!(
                        "non-finite value at row {}, column '{}'",
                        r + 1,
                        attribute_names[c]
                    )));
                }
                values.push(v);
            }
        }
        let mut label_names: Vec<String> = Vec::new();
        let mut label_ids = Vec::with_capacity(labels.len());
        for l in &labels {
            let id = match label_names.iter().position(|k| k == l) {
                Some(id) => id,
                None => {
                    label_names.push(l.clone());
                    label_names.len() - 1
                }
            };
            label_ids.push(id);
        }
        let ids = (1..=rows.len()).map(|i| format!("x{i}")).collect();
        Ok(DecisionSystem {
            attribute_names,
            label_column: "class".into(),
            ids,
            values,
            labels: label_ids,
            label_names,
        })
    }

    pub fn n_instances(&self) -> usize {
        self.ids.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn n_classes(&self) -> usize {
        self.label_names.len()
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn label_column(&self) -> &str {
        &self.label_column
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    /// Class index of instance `i`.
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_name(&self, class: usize) -> &str {
        &self.label_names[class]
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    #[inline]
    pub fn value(&self, instance: usize, attribute: usize) -> f64 {
        self.values[instance * self.attribute_names.len() + attribute]
    }

    pub fn row(&self, instance: usize) -> &[f64] {
        let n = self.attribute_names.len();
        &self.values[instance * n..(instance + 1) * n]
    }

    /// The subset containing every conditional attribute.
    pub fn full_set(&self) -> AttrSet {
        AttrSet::full(self.n_attributes())
    }

    /// Per-attribute similarity `1 - |a(x_i) - a(x_j)|`, with index checks.
    /// Requires values in `[0,1]`.
    pub fn similarity(&self, attribute: usize, i: usize, j: usize) -> Result<f64> {
        if attribute >= self.n_attributes() {
            return Err(Error::IndexOutOfRange { index: attribute, len: self.n_attributes() });
        }
        let n = self.n_instances();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, len: n });
        }
        Ok(self.similarity_unchecked(attribute, i, j))
    }

    #[inline]
    pub(crate) fn similarity_unchecked(&self, attribute: usize, i: usize, j: usize) -> f64 {
        1.0 - (self.value(i, attribute) - self.value(j, attribute)).abs()
    }

    /// Verify that every conditional value lies in `[0,1]`.
    pub fn ensure_unit_range(&self) -> Result<()> {
        for i in 0..self.n_instances() {
            for (c, name) in self.attribute_names.iter().enumerate() {
                let v = self.value(i, c);
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::Dataset(format!(
                        "value {v} outside [0,1] at row {}, column '{name}'; \
                         normalize the data or fix the input",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Min-max rescale every column into `[0,1]`. Columns already spanning
    /// `[0,1]` are unchanged; constant columns map to all zeros. Returns the
    /// rescaled system together with the parameters needed to transform
    /// query instances.
    pub fn normalize_min_max(&self) -> (DecisionSystem, Normalizer) {
        let n = self.n_instances();
        let m = self.n_attributes();
        let mut params = Vec::with_capacity(m);
        for c in 0..m {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for i in 0..n {
                let v = self.value(i, c);
                lo = lo.min(v);
                hi = hi.max(v);
            }
            params.push(ColumnScale { min: lo, range: hi - lo });
        }
        let mut out = self.clone();
        for i in 0..n {
            for (c, p) in params.iter().enumerate() {
                let v = out.values[i * m + c];
                out.values[i * m + c] = p.transform(v);
            }
        }
        (out, Normalizer { params })
    }

    /// A copy of this system restricted to the given instance indices,
    /// keeping ids and label interning.
    pub fn select_instances(&self, indices: &[usize]) -> Result<DecisionSystem> {
        if indices.len() < 2 {
            return Err(Error::Dataset("need at least 2 instances".into()));
        }
        let m = self.n_attributes();
        let mut values = Vec::with_capacity(indices.len() * m);
        let mut ids = Vec::with_capacity(indices.len());
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.n_instances() {
                return Err(Error::IndexOutOfRange { index: i, len: self.n_instances() });
            }
            values.extend_from_slice(self.row(i));
            ids.push(self.ids[i].clone());
            labels.push(self.labels[i]);
        }
        Ok(DecisionSystem {
            attribute_names: self.attribute_names.clone(),
            label_column: self.label_column.clone(),
            ids,
            values,
            labels,
            label_names: self.label_names.clone(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct ColumnScale {
    min: f64,
    range: f64,
}

impl ColumnScale {
    #[inline]
    fn transform(&self, v: f64) -> f64 {
        if self.range > 0.0 {
            (v - self.min) / self.range
        } else {
            0.0
        }
    }
}

/// Column-wise min-max parameters captured from a training set, used to map
/// query instances into the same `[0,1]` box.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalizer {
    params: Vec<ColumnScale>,
}

impl Normalizer {
    /// Transform one query row with the training parameters, clamping to
    /// `[0,1]`. Returns the transformed row and the number of clamped values.
    pub fn apply(&self, row: &[f64]) -> Result<(Vec<f64>, usize)> {
        if row.len() != self.params.len() {
            return Err(Error::DimensionMismatch { expected: self.params.len(), got: row.len() });
        }
        let mut clamped = 0;
        let out = row
            .iter()
            .zip(&self.params)
            .map(|(&v, p)| {
                if !v.is_finite() {
                    return Err(Error::NonFinite("query value"));
                }
                let t = p.transform(v);
                if !(0.0..=1.0).contains(&t) {
                    clamped += 1;
                }
                Ok(t.clamp(0.0, 1.0))
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok((out, clamped))
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

/// Column configuration for loading delimiter-separated text.
#[derive(Debug, Clone)]
pub struct CsvSchema {
    /// Field delimiter, comma by default.
    pub delimiter: u8,
    /// Name of the decision column; the last column when absent.
    pub label_column: Option<String>,
}

impl Default for CsvSchema {
    fn default() -> CsvSchema {
        CsvSchema { delimiter: b',', label_column: None }
    }
}

/// Load a decision system from delimiter-separated text with a header row.
///
/// Conditional columns are parsed as locale-independent real numbers; the
/// decision column is kept as categorical labels. Row order is preserved.
pub fn load_decision_system<R: Read>(reader: R, schema: &CsvSchema) -> Result<DecisionSystem> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(|h| h.to_string()).collect();
    if headers.is_empty() {
        return Err(Error::Dataset("empty header row".into()));
    }
    let label_idx = match &schema.label_column {
        Some(name) => headers.iter().position(|h| h == name).ok_or_else(|| {
            Error::Dataset(format!("decision column '{name}' not found in header"))
        })?,
        None => headers.len() - 1,
    };
    let attribute_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(c, _)| *c != label_idx)
        .map(|(_, h)| h.clone())
        .collect();
    if attribute_names.is_empty() {
        return Err(Error::Dataset("need at least 1 conditional attribute".into()));
    }

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() != headers.len() {
            return Err(Error::Dataset(format!(
                "row {} has {} fields, expected {}",
                r + 1,
                record.len(),
                headers.len()
            )));
        }
        let mut row = Vec::with_capacity(attribute_names.len());
        for (c, field) in record.iter().enumerate() {
            if c == label_idx {
                if field.is_empty() {
                    return Err(Error::Dataset(format!(
                        "missing value at row {}, column '{}'",
                        r + 1,
                        headers[c]
                    )));
                }
                labels.push(field.to_string());
                continue;
            }
            if field.is_empty() {
                return Err(Error::Dataset(format!(
                    "missing value at row {}, column '{}'",
                    r + 1,
                    headers[c]
                )));
            }
            let v: f64 = field.parse().map_err(|_| {
                Error::Dataset(format!(
                    "cannot parse '{}' as a number at row {}, column '{}'",
                    field,
                    r + 1,
                    headers[c]
                ))
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    let mut ds = DecisionSystem::new(attribute_names, rows, labels)?;
    ds.label_column = headers[label_idx].clone();
    Ok(ds)
}

/// Load a decision system from a file path.
pub fn load_decision_system_path(
    path: &std::path::Path,
    schema: &CsvSchema,
) -> Result<DecisionSystem> {
    let file = std::fs::File::open(path)?;
    load_decision_system(file, schema)
}

/// Write a decision system back to CSV at full precision (shortest
/// round-trip float formatting), attribute columns first, decision last.
pub fn write_decision_system<W: Write>(ds: &DecisionSystem, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = ds.attribute_names.iter().map(|s| s.as_str()).collect();
    header.push(&ds.label_column);
    wtr.write_record(&header)?;
    for i in 0..ds.n_instances() {
        let mut record: Vec<String> = ds.row(i).iter().map(|v| v.to_string()).collect();
        record.push(ds.label_name(ds.label(i)).to_string());
        wtr.write_record(&record)?;
    }
    wtr.flush()?;
    Ok(())
}
