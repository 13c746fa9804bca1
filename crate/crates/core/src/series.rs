//! Sampling grids, series, families of series and the train/validation/test
//! partition of a grid.

use std::collections::HashSet;
use std::ops::Range;

use crate::error::{Error, Result};

/// Id of the aggregate series built by [`aggregate_target`].
pub const TARGET_ID: &str = "__target__";
/// Id of the series returned by `boost::predict`.
pub const PREDICTION_ID: &str = "__prediction__";
/// Id of a running integral column in prediction output.
pub const CUMULATIVE_ID: &str = "__cumulative__";

/// Uniform sampling of a time interval: sample `k` sits at `start + k * step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    start: f64,
    step: f64,
    count: usize,
}

impl TimeGrid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() {
            return Err(Error::InvalidConfig(format!("grid start {start} is not finite")));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidConfig(format!("grid step {step} must be positive")));
        }
        if count < 2 {
            return Err(Error::InvalidConfig(format!(
                "grid needs at least 2 samples, got {count}"
            )));
        }
        Ok(Self { start, step, count })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn coordinate(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn coordinates(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|k| self.coordinate(k))
    }

    /// The sub-grid covering `range`.
    pub fn restrict(&self, range: Range<usize>) -> Result<Self> {
        check_range(&range, self.count)?;
        TimeGrid::new(self.coordinate(range.start), self.step, range.len())
    }
}

/// One component series aligned to a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    id: String,
    values: Vec<f64>,
}

impl Series {
    /// Rejects NaN and infinite entries.
    pub fn new(id: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let id = id.into();
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { id, index });
        }
        Ok(Self { id, values })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

/// The candidate set: an ordered list of series sharing one grid.
///
/// Member order is stable and doubles as the tie-breaking order during
/// selection.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    grid: TimeGrid,
    members: Vec<Series>,
}

impl Family {
    pub fn new(grid: TimeGrid, members: Vec<Series>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(members.len());
        for m in &members {
            if m.len() != grid.count() {
                return Err(Error::shape(grid.count(), m.len()));
            }
            if !seen.insert(m.id()) {
                return Err(Error::DuplicateId(m.id().to_string()));
            }
        }
        Ok(Self { grid, members })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn members(&self) -> &[Series] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Series> {
        self.members.iter().find(|m| m.id() == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(Series::id)
    }

    /// Every member restricted to `range`, on the matching sub-grid.
    pub fn restrict(&self, range: Range<usize>) -> Result<Self> {
        let grid = self.grid.restrict(range.clone())?;
        let members = self
            .members
            .iter()
            .map(|m| restrict(m, range.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, members })
    }

    /// Keeps only the members whose id satisfies `keep`, preserving order.
    pub fn filter(&self, mut keep: impl FnMut(&str) -> bool) -> Self {
        Self {
            grid: self.grid,
            members: self.members.iter().filter(|m| keep(m.id())).cloned().collect(),
        }
    }
}

/// Fractions of the grid assigned to the training and validation segments.
/// Whatever remains is a held-out test segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub validation_fraction: f64,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, validation_fraction: f64) -> Result<Self> {
        let spec = Self {
            train_fraction,
            validation_fraction,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if !open_unit(self.train_fraction) || !open_unit(self.validation_fraction) {
            return Err(Error::InvalidConfig(format!(
                "split fractions must lie in (0, 1), got ({}, {})",
                self.train_fraction, self.validation_fraction
            )));
        }
        if self.train_fraction + self.validation_fraction > 1.0 + 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "split fractions sum to {} > 1",
                self.train_fraction + self.validation_fraction
            )));
        }
        Ok(())
    }
}

/// Contiguous train / validation / test index ranges, in time order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitRanges {
    pub train: Range<usize>,
    pub validation: Range<usize>,
    pub test: Range<usize>,
}

/// Pointwise sum of all members of `family`, under the id [`TARGET_ID`].
pub fn aggregate_target(family: &Family) -> Result<Series> {
    let (first, rest) = family.members().split_first().ok_or(Error::EmptyFamily)?;
    let mut total = first.values().to_vec();
    for m in rest {
        for (acc, v) in total.iter_mut().zip(m.values()) {
            *acc += v;
        }
    }
    Series::new(TARGET_ID, total)
}

// Guards `floor` against products like 0.29 * 100 = 28.999999999999996.
const FLOOR_SLACK: f64 = 1e-9;

pub fn split(grid: &TimeGrid, spec: &SplitSpec) -> Result<SplitRanges> {
    spec.validate()?;
    let count = grid.count();
    let seg = |fraction: f64| ((fraction * count as f64 + FLOOR_SLACK).floor() as usize).min(count);
    let train_len = seg(spec.train_fraction);
    let val_len = seg(spec.validation_fraction).min(count - train_len);
    let ranges = SplitRanges {
        train: 0..train_len,
        validation: train_len..train_len + val_len,
        test: train_len + val_len..count,
    };
    for (segment, r) in [
        ("train", &ranges.train),
        ("validation", &ranges.validation),
        ("test", &ranges.test),
    ] {
        if r.len() < 2 {
            return Err(Error::DegenerateSplit {
                segment,
                len: r.len(),
            });
        }
    }
    Ok(ranges)
}

pub fn restrict(series: &Series, range: Range<usize>) -> Result<Series> {
    check_range(&range, series.len())?;
    Ok(Series {
        id: series.id.clone(),
        values: series.values[range].to_vec(),
    })
}

fn check_range(range: &Range<usize>, len: usize) -> Result<()> {
    if range.start >= range.end || range.end > len {
        return Err(Error::RangeError {
            start: range.start,
            end: range.end,
            len,
        });
    }
    Ok(())
}
