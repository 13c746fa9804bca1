//! Greedy stagewise extraction of a weighted panel.
//!
//! Each iteration fits the current residual with every remaining family
//! member using the least-squares weight, scores the weighted candidate by
//! its Pearson correlation with the residual, and accepts the best candidate
//! whose score reaches `lbound`. Accepted weights are damped by `alpha`.

use crate::error::{Error, Result};
use crate::functional::{self, dot, TransformKind};
use crate::series::{restrict, split, Family, Series, SplitRanges, SplitSpec, TimeGrid, PREDICTION_ID};

/// Fitting stops once `||residual|| <= CONVERGED_RTOL * ||target||`.
pub const CONVERGED_RTOL: f64 = 1e-12;

/// A candidate whose uncentered cosine with the residual is at most this is
/// treated as having zero least-squares weight: the sign of such a weight is
/// rounding noise and would decide the sign of its score.
pub const NULL_STEP_COS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostConfig {
    /// Total number of panel terms, the initial one included.
    pub panel_size: usize,
    pub lbound: f64,
    pub alpha: f64,
    pub transform: TransformKind,
    pub with_replacement: bool,
}

impl BoostConfig {
    pub fn new(panel_size: usize) -> Self {
        Self {
            panel_size,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.panel_size == 0 {
            return Err(Error::InvalidConfig("panel size must be at least 1".into()));
        }
        if !(-1.0..=1.0).contains(&self.lbound) {
            return Err(Error::InvalidConfig(format!(
                "lbound {} outside [-1, 1]",
                self.lbound
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha {} outside (0, 1]",
                self.alpha
            )));
        }
        Ok(())
    }
}

impl Default for BoostConfig {
    fn default() -> Self {
        Self {
            panel_size: 1,
            lbound: -1.0,
            alpha: 1.0,
            transform: TransformKind::Reciprocal,
            with_replacement: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelTerm {
    pub member_id: String,
    /// Shrunk coefficient, `alpha * raw_rho`.
    pub weight: f64,
    pub raw_rho: f64,
    pub score: f64,
    pub iteration: usize,
}

/// A fitted panel: ordered weighted members plus the configuration that
/// produced them. Always holds at least one term.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelModel {
    terms: Vec<PanelTerm>,
    config: BoostConfig,
    grid: TimeGrid,
    stopped_early: bool,
}

impl PanelModel {
    pub fn new(
        terms: Vec<PanelTerm>,
        config: BoostConfig,
        grid: TimeGrid,
        stopped_early: bool,
    ) -> Result<Self> {
        config.validate()?;
        if terms.is_empty() || terms.len() > config.panel_size {
            return Err(Error::InvalidConfig(format!(
                "model has {} terms, expected 1..={}",
                terms.len(),
                config.panel_size
            )));
        }
        for (i, t) in terms.iter().enumerate() {
            if !config.with_replacement && terms[..i].iter().any(|p| p.member_id == t.member_id) {
                return Err(Error::DuplicateId(t.member_id.clone()));
            }
            if t.score < config.lbound {
                return Err(Error::InvalidConfig(format!(
                    "term `{}` has score {} below lbound {}",
                    t.member_id, t.score, config.lbound
                )));
            }
            if (t.weight - config.alpha * t.raw_rho).abs() > 1e-12 * t.weight.abs().max(1.0) {
                return Err(Error::InvalidConfig(format!(
                    "term `{}` weight {} is not alpha * raw_rho",
                    t.member_id, t.weight
                )));
            }
        }
        Ok(Self {
            terms,
            config,
            grid,
            stopped_early,
        })
    }

    pub fn terms(&self) -> &[PanelTerm] {
        &self.terms
    }

    pub fn config(&self) -> &BoostConfig {
        &self.config
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn stopped_early(&self) -> bool {
        self.stopped_early
    }

    pub fn member_ids(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|t| t.member_id.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub member_id: String,
    pub raw_rho: f64,
    pub score: f64,
    pub squared_error_after: f64,
    /// `None` when the prediction has zero variance.
    pub psi_after: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FitTrace {
    pub records: Vec<TraceRecord>,
}

/// The candidate accepted by one selection step.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub member_id: String,
    pub raw_rho: f64,
    pub score: f64,
}

/// Per-candidate quantities that stay fixed across boosting iterations.
struct Candidate<'a> {
    series: &'a Series,
    norm_sq: f64,
    // Centered values and their sum of squares; None for constant members.
    centered: Option<(Vec<f64>, f64)>,
}

struct Pool<'a> {
    candidates: Vec<Candidate<'a>>,
}

impl<'a> Pool<'a> {
    fn new(family: &'a Family) -> Self {
        let candidates = family
            .members()
            .iter()
            .map(|s| {
                let v = s.values();
                Candidate {
                    series: s,
                    norm_sq: dot(v, v),
                    centered: functional::centered(v),
                }
            })
            .collect();
        Self { candidates }
    }

    /// Best admissible candidate among `active` (all when `None`), first in
    /// family order on ties.
    fn select(
        &self,
        active: Option<&[bool]>,
        residual: &[f64],
        lbound: f64,
    ) -> Result<Option<(usize, f64, f64)>> {
        let (res_dev, res_ss) = functional::centered(residual).ok_or(Error::DegenerateResidual)?;
        let res_norm = dot(residual, residual).sqrt();
        let mut best: Option<(usize, f64, f64)> = None;
        for (idx, c) in self.candidates.iter().enumerate() {
            if active.is_some_and(|a| !a[idx]) {
                continue;
            }
            let Some((dev, ss)) = &c.centered else { continue };
            if c.norm_sq == 0.0 {
                continue;
            }
            let hy = dot(c.series.values(), residual);
            if hy.abs() <= NULL_STEP_COS * c.norm_sq.sqrt() * res_norm {
                continue;
            }
            let raw_rho = hy / c.norm_sq;
            let corr = (dot(&res_dev, dev) / (res_ss * ss).sqrt()).clamp(-1.0, 1.0);
            let score = if raw_rho > 0.0 { corr } else { -corr };
            if score < lbound {
                continue;
            }
            if best.is_none_or(|(_, _, s)| score > s) {
                best = Some((idx, raw_rho, score));
            }
        }
        Ok(best)
    }
}

/// One selection step against `residual`.
///
/// Returns `None` when no candidate reaches `config.lbound`. Constant and
/// all-zero candidates are skipped.
pub fn select_step(
    candidates: &Family,
    residual: &Series,
    config: &BoostConfig,
) -> Result<Option<Selection>> {
    if candidates.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if residual.len() != candidates.grid().count() {
        return Err(Error::shape(candidates.grid().count(), residual.len()));
    }
    let pool = Pool::new(candidates);
    Ok(pool
        .select(None, residual.values(), config.lbound)?
        .map(|(idx, raw_rho, score)| Selection {
            member_id: candidates.members()[idx].id().to_string(),
            raw_rho,
            score,
        }))
}

/// Runs the boosting loop on `family` against `target`.
pub fn fit(family: &Family, target: &Series, config: &BoostConfig) -> Result<(PanelModel, FitTrace)> {
    config.validate()?;
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.grid().count();
    if target.len() != n {
        return Err(Error::shape(n, target.len()));
    }

    let pool = Pool::new(family);
    let y = target.values();
    let target_norm = dot(y, y).sqrt();
    let mut active = vec![true; family.len()];
    let mut prediction = vec![0.0; n];
    let mut residual = y.to_vec();
    let mut terms: Vec<PanelTerm> = Vec::with_capacity(config.panel_size);
    let mut trace = FitTrace::default();
    let mut stopped_early = false;

    while terms.len() < config.panel_size {
        if !terms.is_empty() && dot(&residual, &residual).sqrt() <= CONVERGED_RTOL * target_norm {
            stopped_early = true;
            break;
        }
        let picked = match pool.select(Some(&active), &residual, config.lbound) {
            Ok(p) => p,
            Err(Error::DegenerateResidual) if !terms.is_empty() => None,
            Err(e) => return Err(e),
        };
        let Some((idx, raw_rho, score)) = picked else {
            if terms.is_empty() {
                return Err(Error::NoAdmissibleMember {
                    lbound: config.lbound,
                });
            }
            stopped_early = true;
            break;
        };

        let member = pool.candidates[idx].series;
        let weight = config.alpha * raw_rho;
        for (p, h) in prediction.iter_mut().zip(member.values()) {
            *p += weight * h;
        }
        for ((r, t), p) in residual.iter_mut().zip(y).zip(&prediction) {
            *r = t - p;
        }
        if !config.with_replacement {
            active[idx] = false;
        }

        let iteration = terms.len();
        trace.records.push(TraceRecord {
            iteration,
            member_id: member.id().to_string(),
            raw_rho,
            score,
            squared_error_after: dot(&residual, &residual),
            psi_after: functional::psi(config.transform, y, &prediction).ok(),
        });
        terms.push(PanelTerm {
            member_id: member.id().to_string(),
            weight,
            raw_rho,
            score,
            iteration,
        });
    }

    let model = PanelModel::new(terms, *config, *family.grid(), stopped_early)?;
    Ok((model, trace))
}

/// Fits on the training segment of `split` only.
pub fn fit_on_split(
    family: &Family,
    target: &Series,
    spec: &SplitSpec,
    config: &BoostConfig,
) -> Result<(PanelModel, FitTrace, SplitRanges)> {
    let ranges = split(family.grid(), spec)?;
    let train_family = family.restrict(ranges.train.clone())?;
    let train_target = restrict(target, ranges.train.clone())?;
    let (model, trace) = fit(&train_family, &train_target, config)?;
    Ok((model, trace, ranges))
}

/// Weighted sum of the panel members found in `family`.
///
/// The family may live on any grid: forecasting uses the same members
/// observed over a new interval.
pub fn predict(model: &PanelModel, family: &Family) -> Result<Series> {
    let mut out = vec![0.0; family.grid().count()];
    for term in model.terms() {
        let member = family
            .get(&term.member_id)
            .ok_or_else(|| Error::MissingPanelMember(term.member_id.clone()))?;
        for (o, h) in out.iter_mut().zip(member.values()) {
            *o += term.weight * h;
        }
    }
    Series::new(PREDICTION_ID, out)
}

pub fn residual(target: &Series, prediction: &Series) -> Result<Series> {
    if target.len() != prediction.len() {
        return Err(Error::shape(target.len(), prediction.len()));
    }
    let values = target
        .values()
        .iter()
        .zip(prediction.values())
        .map(|(t, p)| t - p)
        .collect();
    Series::new("__residual__", values)
}
