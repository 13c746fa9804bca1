//! Forecast metrics, the cumulative (integrated) series and the
//! validation-segment grid sweep over boosting metaparameters.

use std::cmp::Ordering;

use crate::boost::{fit, predict, BoostConfig};
use crate::error::{Error, Result};
use crate::functional::{self, TransformKind};
use crate::series::{restrict, split, Family, Series, SplitSpec, CUMULATIVE_ID};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub rmse: f64,
    pub mae: f64,
    /// `None` when either series has zero variance.
    pub pearson: Option<f64>,
    pub psi: Option<f64>,
    /// `|integral(prediction) - integral(target)|` over the whole series.
    pub cumulative_abs_error: f64,
}

pub fn evaluate(
    prediction: &Series,
    target: &Series,
    kind: TransformKind,
    grid_step: f64,
) -> Result<Metrics> {
    let (p, y) = (prediction.values(), target.values());
    if p.len() != y.len() {
        return Err(Error::shape(y.len(), p.len()));
    }
    if y.len() < 2 {
        return Err(Error::shape(2, y.len()));
    }
    let n = y.len() as f64;
    let (mut sq, mut abs, mut signed) = (0.0, 0.0, 0.0);
    for (pi, yi) in p.iter().zip(y) {
        let d = pi - yi;
        sq += d * d;
        abs += d.abs();
        signed += d;
    }
    Ok(Metrics {
        rmse: (sq / n).sqrt(),
        mae: abs / n,
        pearson: functional::pearson(p, y).ok(),
        psi: functional::psi(kind, y, p).ok(),
        cumulative_abs_error: signed.abs() * grid_step,
    })
}

/// Left-endpoint running integral: `out[k] = step * sum(values[..=k])`.
pub fn cumulative(series: &Series, grid_step: f64) -> Result<Series> {
    if series.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut acc = 0.0;
    let values = series
        .values()
        .iter()
        .map(|v| {
            acc += v * grid_step;
            acc
        })
        .collect();
    Series::new(CUMULATIVE_ID, values)
}

/// Candidate values for each metaparameter; the sweep covers their product.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub panel_sizes: Vec<usize>,
    pub lbounds: Vec<f64>,
    pub alphas: Vec<f64>,
    pub transforms: Vec<TransformKind>,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if self.panel_sizes.is_empty()
            || self.lbounds.is_empty()
            || self.alphas.is_empty()
            || self.transforms.is_empty()
        {
            return Err(Error::InvalidConfig("every sweep axis needs at least one value".into()));
        }
        for c in self.configs() {
            c.validate()?;
        }
        Ok(())
    }

    /// Cartesian product, panel size outermost and transform innermost.
    pub fn configs(&self) -> Vec<BoostConfig> {
        let mut out = Vec::new();
        for &panel_size in &self.panel_sizes {
            for &lbound in &self.lbounds {
                for &alpha in &self.alphas {
                    for &transform in &self.transforms {
                        out.push(BoostConfig {
                            panel_size,
                            lbound,
                            alpha,
                            transform,
                            with_replacement: false,
                        });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepFit {
    pub train: Metrics,
    pub validation: Metrics,
    pub stopped_early: bool,
    pub n_terms: usize,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub config: BoostConfig,
    /// Error code of the failed fit, e.g. `NoAdmissibleMember`.
    pub outcome: std::result::Result<SweepFit, &'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub best: usize,
}

impl SweepResult {
    pub fn best_row(&self) -> &SweepRow {
        &self.rows[self.best]
    }
}

pub fn sweep(
    family: &Family,
    target: &Series,
    split_spec: &SplitSpec,
    grid: &SweepGrid,
) -> Result<SweepResult> {
    grid.validate()?;
    if target.len() != family.grid().count() {
        return Err(Error::shape(family.grid().count(), target.len()));
    }
    let ranges = split(family.grid(), split_spec)?;
    let train_family = family.restrict(ranges.train.clone())?;
    let train_target = restrict(target, ranges.train.clone())?;
    let val_family = family.restrict(ranges.validation.clone())?;
    let val_target = restrict(target, ranges.validation.clone())?;
    let step = family.grid().step();

    let mut rows = Vec::new();
    for config in grid.configs() {
        let outcome = match fit(&train_family, &train_target, &config) {
            Ok((model, _)) => {
                let train_pred = predict(&model, &train_family)?;
                let val_pred = predict(&model, &val_family)?;
                Ok(SweepFit {
                    train: evaluate(&train_pred, &train_target, config.transform, step)?,
                    validation: evaluate(&val_pred, &val_target, config.transform, step)?,
                    stopped_early: model.stopped_early(),
                    n_terms: model.terms().len(),
                    members: model.member_ids().map(str::to_string).collect(),
                })
            }
            Err(e @ (Error::NoAdmissibleMember { .. } | Error::DegenerateResidual)) => Err(e.code()),
            Err(e) => return Err(e),
        };
        rows.push(SweepRow { config, outcome });
    }

    let best = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.outcome.as_ref().ok().map(|f| (i, &r.config, f.validation.rmse)))
        .min_by(|a, b| {
            a.2.total_cmp(&b.2)
                .then(a.1.panel_size.cmp(&b.1.panel_size))
                .then(a.1.alpha.partial_cmp(&b.1.alpha).unwrap_or(Ordering::Equal))
                .then(a.0.cmp(&b.0))
        })
        .map(|(i, _, _)| i)
        .ok_or(Error::SweepFailed)?;
    Ok(SweepResult { rows, best })
}
