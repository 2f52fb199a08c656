//! The Choquet integral and Choquet p-distances.
//!
//! The integral aggregates a score vector against a monotone measure by
//! sorting the scores ascending and weighting the increments with the measure
//! of the suffix chain sets. Plugging in the coordinatewise differences
//! `|a(x) - a(y)|^p` and taking the p-th root yields the Choquet p-distance;
//! under the counting measure it reduces to the Minkowski p-distance, whose
//! `p -> ±∞` limits (Chebyshev / coordinate minimum) are exposed as symbolic
//! exponents.

use crate::dataset::DecisionSystem;
use crate::error::{Error, Result};
use crate::measures::AttributeMeasure;
use rayon::prelude::*;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// The exponent of a Choquet p-distance: a positive integer or one of the
/// two symbolic limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PExponent {
    Finite(u32),
    PosInfinity,
    NegInfinity,
}

impl PExponent {
    fn validate(self) -> Result<()> {
        match self {
            PExponent::Finite(0) => {
                Err(Error::Config("exponent p must be a positive integer".into()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::PosInfinity => f.write_str("inf"),
            PExponent::NegInfinity => f.write_str("-inf"),
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<PExponent> {
        match s {
            "inf" | "+inf" | "infinity" => Ok(PExponent::PosInfinity),
            "-inf" | "-infinity" => Ok(PExponent::NegInfinity),
            other => {
                let p: u32 = other.parse().map_err(|_| {
                    Error::Config(format!(
                        "invalid exponent '{other}' (expected a positive integer, inf or -inf)"
                    ))
                })?;
                let p = PExponent::Finite(p);
                p.validate()?;
                Ok(p)
            }
        }
    }
}

/// Choquet integral of a score vector with respect to a measure on the
/// attributes. Ties in the scores never influence the result: equal values
/// contribute through a single chain increment.
pub fn choquet_integral(scores: &[f64], measure: &AttributeMeasure) -> Result<f64> {
    if scores.len() != measure.arity() {
        return Err(Error::DimensionMismatch { expected: measure.arity(), got: scores.len() });
    }
    if scores.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("score vector"));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|&i, &j| {
        scores[i].partial_cmp(&scores[j]).expect("finite scores").then(i.cmp(&j))
    });
    let chain = measure.chain_values(&order)?;
    let mut total = 0.0;
    let mut prev = 0.0;
    for (i, &attr) in order.iter().enumerate() {
        let f = scores[attr];
        let diff = f - prev;
        if diff != 0.0 {
            total += diff * chain[i];
        }
        prev = f;
    }
    Ok(total)
}

/// Choquet p-distance between two instances. The symbolic `±∞` exponents are
/// defined only for the counting measure family, where they are the Chebyshev
/// distance and the coordinate minimum.
pub fn choquet_p_distance(
    x: &[f64],
    y: &[f64],
    measure: &AttributeMeasure,
    p: PExponent,
) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    if x.len() != measure.arity() {
        return Err(Error::DimensionMismatch { expected: measure.arity(), got: x.len() });
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("instance values"));
    }
    p.validate()?;
    match p {
        PExponent::Finite(p) => {
            let diffs: Vec<f64> = x
                .iter()
                .zip(y)
                .map(|(&a, &b)| {
                    let d = (a - b).abs();
                    match p {
                        1 => d,
                        2 => d * d,
                        _ => d.powi(p as i32),
                    }
                })
                .collect();
            // a monotone measure keeps the integral of a non-negative
            // integrand non-negative; clamp residual rounding noise
            let integral = choquet_integral(&diffs, measure)?.max(0.0);
            Ok(match p {
                1 => integral,
                2 => integral.sqrt(),
                _ => integral.powf(1.0 / f64::from(p)),
            })
        }
        PExponent::PosInfinity | PExponent::NegInfinity => {
            if !measure.is_counting_family() {
                return Err(Error::Measure(
                    "limit semantics defined only for the counting measure".into(),
                ));
            }
            let diffs = x.iter().zip(y).map(|(&a, &b)| (a - b).abs());
            Ok(if p == PExponent::PosInfinity {
                diffs.fold(0.0, f64::max)
            } else {
                diffs.fold(f64::INFINITY, f64::min)
            })
        }
    }
}

/// A symmetric instance-distance matrix with named rows.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    ids: Vec<String>,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ids.len() + j]
    }

    /// Off-diagonal upper-triangle entries in row-major pair order.
    pub fn upper_triangle(&self) -> Vec<f64> {
        let n = self.size();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                out.push(self.get(i, j));
            }
        }
        out
    }

    /// Write as CSV with instance ids as row and column headers. Values are
    /// written at full precision unless a decimal rounding is requested.
    pub fn to_csv<W: Write>(&self, writer: W, round: Option<usize>) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec![String::new()];
        header.extend(self.ids.iter().cloned());
        wtr.write_record(&header)?;
        for i in 0..self.size() {
            let mut record = vec![self.ids[i].clone()];
            for j in 0..self.size() {
                let v = self.get(i, j);
                record.push(match round {
                    Some(digits) => format!("{v:.digits$}"),
                    None => v.to_string(),
                });
            }
            wtr.write_record(&record)?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// JSON value `{"ids": [...], "distances": [[...]]}`, optionally rounded.
    pub fn to_json_value(&self, round: Option<usize>) -> serde_json::Value {
        let n = self.size();
        let rows: Vec<serde_json::Value> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = self.get(i, j);
                        match round {
                            Some(digits) => {
                                let scale = 10f64.powi(digits as i32);
                                serde_json::json!((v * scale).round() / scale)
                            }
                            None => serde_json::json!(v),
                        }
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "ids": self.ids, "distances": rows })
    }
}

/// Pairwise Choquet p-distances over all instances of a decision system.
/// Pairs are evaluated in parallel; the result is bitwise independent of the
/// worker count.
pub fn distance_matrix(
    ds: &DecisionSystem,
    measure: &AttributeMeasure,
    p: PExponent,
) -> Result<DistanceMatrix> {
    if measure.arity() != ds.n_attributes() {
        return Err(Error::DimensionMismatch {
            expected: ds.n_attributes(),
            got: measure.arity(),
        });
    }
    let n = ds.n_instances();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| choquet_p_distance(ds.row(i), ds.row(j), measure, p))
        .collect::<Result<Vec<f64>>>()?;
    let mut data = vec![0.0; n * n];
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        data[i * n + j] = v;
        data[j * n + i] = v;
    }
    Ok(DistanceMatrix { ids: ds.ids().to_vec(), data })
}
