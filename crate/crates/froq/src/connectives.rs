//! Fuzzy-logic connectives: t-norms, implicators and induced negators.
//!
//! These are the building blocks for every approximation in the crate. A
//! t-norm generalizes conjunction on `[0,1]` (commutative, associative,
//! neutral element 1); an implicator generalizes implication (antitone in the
//! first argument, monotone in the second, classical boundary values). Fixing
//! the consequent of an implicator to 0 induces a negator.
//!
//! All operations are pure; the checked entry points validate that their
//! arguments lie in the unit interval, the `eval` variants assume it.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[inline]
fn check_unit(x: f64, context: &'static str) -> Result<f64> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(Error::OutOfUnitInterval { value: x, context })
    }
}

/// T-norm kinds shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TNorm {
    /// `min(a, b)` — the largest t-norm.
    Minimum,
    /// `a * b`.
    Product,
    /// `max(0, a + b - 1)`.
    Lukasiewicz,
}

impl TNorm {
    /// Apply the t-norm after validating both arguments.
    pub fn apply(self, a: f64, b: f64) -> Result<f64> {
        check_unit(a, "t-norm argument")?;
        check_unit(b, "t-norm argument")?;
        Ok(self.eval(a, b))
    }

    /// Apply the t-norm; arguments must already be in `[0,1]`.
    #[inline]
    pub fn eval(self, a: f64, b: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
        match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
        }
    }

    /// Fold a list with the t-norm, validating every element. The empty fold
    /// is 1, the neutral element.
    pub fn fold(self, values: &[f64]) -> Result<f64> {
        for &v in values {
            check_unit(v, "t-norm fold element")?;
        }
        Ok(self.fold_eval(values.iter().copied()))
    }

    /// Fold without validation; the empty fold is 1.
    #[inline]
    pub fn fold_eval<I: IntoIterator<Item = f64>>(self, values: I) -> f64 {
        values.into_iter().fold(1.0, |acc, v| self.eval(acc, v))
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TNorm::Minimum => "min",
            TNorm::Product => "prod",
            TNorm::Lukasiewicz => "luk",
        };
        f.write_str(s)
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<TNorm> {
        match s {
            "min" | "minimum" => Ok(TNorm::Minimum),
            "prod" | "product" => Ok(TNorm::Product),
            "luk" | "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            other => Err(Error::Config(format!(
                "unknown t-norm '{other}' (expected min, prod or luk)"
            ))),
        }
    }
}

/// Implicator kinds shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Implicator {
    /// `min(1, 1 - a + b)`.
    Lukasiewicz,
    /// `max(1 - a, b)`.
    KleeneDienes,
    /// `1` if `a <= b`, else `b`.
    Godel,
}

impl Implicator {
    /// Apply the implicator after validating both arguments.
    pub fn apply(self, a: f64, b: f64) -> Result<f64> {
        check_unit(a, "implicator argument")?;
        check_unit(b, "implicator argument")?;
        Ok(self.eval(a, b))
    }

    /// Apply the implicator; arguments must already be in `[0,1]`.
    #[inline]
    pub fn eval(self, a: f64, b: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
        match self {
            Implicator::Lukasiewicz => (1.0 - a + b).min(1.0),
            Implicator::KleeneDienes => (1.0 - a).max(b),
            Implicator::Godel => {
                if a <= b {
                    1.0
                } else {
                    b
                }
            }
        }
    }

    /// The induced negator `x -> I(x, 0)`, validated.
    pub fn negator(self, x: f64) -> Result<f64> {
        check_unit(x, "negator argument")?;
        Ok(self.negator_eval(x))
    }

    /// The induced negator without validation. For the Łukasiewicz implicator
    /// this is exactly `1 - x`.
    #[inline]
    pub fn negator_eval(self, x: f64) -> f64 {
        self.eval(x, 0.0)
    }
}

impl fmt::Display for Implicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Implicator::Lukasiewicz => "luk",
            Implicator::KleeneDienes => "kd",
            Implicator::Godel => "godel",
        };
        f.write_str(s)
    }
}

impl FromStr for Implicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Implicator> {
        match s {
            "luk" | "lukasiewicz" => Ok(Implicator::Lukasiewicz),
            "kd" | "kleene-dienes" | "kleene_dienes" => Ok(Implicator::KleeneDienes),
            "godel" => Ok(Implicator::Godel),
            other => Err(Error::Config(format!(
                "unknown implicator '{other}' (expected luk, kd or godel)"
            ))),
        }
    }
}

/// The connective configuration shared by approximations and measures.
///
/// The t-norm doubles as the conjunctor of the upper approximation (every
/// t-norm is a conjunctor). The defaults — minimum t-norm and Łukasiewicz
/// implicator — make the induced negator `1 - x`, so the negated similarity
/// `1 - R_B` coincides with the Chebyshev distance over the subset `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connectives {
    pub t_norm: TNorm,
    pub implicator: Implicator,
}

impl Connectives {
    pub fn new(t_norm: TNorm, implicator: Implicator) -> Connectives {
        Connectives { t_norm, implicator }
    }

    /// The conjunctor used by the upper approximation.
    pub fn conjunctor(&self) -> TNorm {
        self.t_norm
    }
}

impl Default for Connectives {
    fn default() -> Connectives {
        Connectives { t_norm: TNorm::Minimum, implicator: Implicator::Lukasiewicz }
    }
}
