//! Scalar functionals on sampled series: inner product, Pearson correlation,
//! the correlation transforms, the correlation penalty `phi`, the composite
//! cost `psi`, the stagewise squared loss and its closed-form minimizer.
//!
//! Inner products are plain index-wise sums with no grid-step factor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Side};

/// Slack allowed outside `[-1, 1]` before [`transform`] rejects its input.
pub const DOMAIN_TOLERANCE: f64 = 1e-9;

/// Correlation-to-penalty map `t` with `t(1) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    /// `t(x) = 1/(2+x) - 1/3`: convex, strictly decreasing on `[-1, 1]`.
    Reciprocal,
    /// `t(x) = 1/(1+x^2) - 1/2`: even, so anti-correlation is rewarded like
    /// correlation.
    Witch,
}

impl TransformKind {
    pub const ALL: [TransformKind; 2] = [TransformKind::Reciprocal, TransformKind::Witch];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Reciprocal => "reciprocal",
            TransformKind::Witch => "witch",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reciprocal" => Ok(TransformKind::Reciprocal),
            "witch" => Ok(TransformKind::Witch),
            other => Err(Error::InvalidConfig(format!(
                "unknown transform `{other}` (expected reciprocal or witch)"
            ))),
        }
    }
}

pub fn mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

fn check_len(f: &[f64], g: &[f64]) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::shape(f.len(), g.len()));
    }
    Ok(())
}

pub fn inner(f: &[f64], g: &[f64]) -> Result<f64> {
    check_len(f, g)?;
    if f.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(dot(f, g))
}

#[inline]
pub(crate) fn dot(f: &[f64], g: &[f64]) -> f64 {
    f.iter().zip(g).map(|(a, b)| a * b).sum()
}

/// Centered copy of `values` and its sum of squares, or `None` when the
/// spread is indistinguishable from rounding noise of the centering itself.
pub(crate) fn centered(values: &[f64]) -> Option<(Vec<f64>, f64)> {
    let m = values.iter().sum::<f64>() / values.len() as f64;
    let dev: Vec<f64> = values.iter().map(|v| v - m).collect();
    let ss = dot(&dev, &dev);
    let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let noise = 16.0 * f64::EPSILON * scale;
    if ss <= values.len() as f64 * noise * noise {
        None
    } else {
        Some((dev, ss))
    }
}

/// Sample Pearson correlation, clamped to `[-1, 1]`.
pub fn pearson(f: &[f64], g: &[f64]) -> Result<f64> {
    check_len(f, g)?;
    if f.len() < 2 {
        return Err(Error::shape(2, f.len()));
    }
    let (df, sf) = centered(f).ok_or(Error::DegenerateCorrelation(Side::Left))?;
    let (dg, sg) = centered(g).ok_or(Error::DegenerateCorrelation(Side::Right))?;
    let r = dot(&df, &dg) / (sf * sg).sqrt();
    Ok(r.clamp(-1.0, 1.0))
}

pub fn transform(kind: TransformKind, x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + DOMAIN_TOLERANCE {
        return Err(Error::DomainError(x));
    }
    let x = x.clamp(-1.0, 1.0);
    Ok(match kind {
        TransformKind::Reciprocal => 1.0 / (2.0 + x) - 1.0 / 3.0,
        TransformKind::Witch => 1.0 / (1.0 + x * x) - 0.5,
    })
}

/// Correlation penalty of `g` relative to the fixed series `f`.
pub fn phi(kind: TransformKind, f: &[f64], g: &[f64]) -> Result<f64> {
    transform(kind, pearson(f, g)?)
}

/// Half squared distance between `f` and `g` plus the correlation penalty.
pub fn psi(kind: TransformKind, f: &[f64], g: &[f64]) -> Result<f64> {
    let penalty = phi(kind, f, g)?;
    let dist: f64 = f.iter().zip(g).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(0.5 * dist + penalty)
}

/// Squared loss of approximating `y` by `rho * h`.
pub fn lambda_err(rho: f64, h: &[f64], y: &[f64]) -> Result<f64> {
    check_len(h, y)?;
    Ok(h.iter()
        .zip(y)
        .map(|(hi, yi)| {
            let e = yi - rho * hi;
            e * e
        })
        .sum())
}

/// Closed-form least-squares weight `<h, y> / <h, h>`.
pub fn argmin_rho(h: &[f64], y: &[f64]) -> Result<f64> {
    check_len(h, y)?;
    let hh = dot(h, h);
    if hh == 0.0 {
        return Err(Error::ZeroCandidate);
    }
    Ok(dot(h, y) / hh)
}
