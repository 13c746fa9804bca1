//! Sparse panel models for additive time series.
//!
//! A target series that is the pointwise sum of many component series is
//! approximated by a small weighted subset of those components. The subset
//! is grown greedily: at each step every remaining component is fitted to
//! the residual by least squares and the one whose weighted version
//! correlates best with the residual is kept, provided that correlation
//! clears a lower bound. The fitted panel then forecasts the aggregate on
//! new observations of the same components.
//!
//! ```
//! use panelboost::{fit, predict, BoostConfig, Family, Series, TimeGrid};
//!
//! let grid = TimeGrid::new(0.0, 1.0, 4).unwrap();
//! let a = Series::new("a", vec![1.0, 0.0, 2.0, 1.0]).unwrap();
//! let b = Series::new("b", vec![0.0, 3.0, 1.0, 1.0]).unwrap();
//! let family = Family::new(grid, vec![a, b]).unwrap();
//! let target = panelboost::aggregate_target(&family).unwrap();
//!
//! let (model, _trace) = fit(&family, &target, &BoostConfig::new(2)).unwrap();
//! let forecast = predict(&model, &family).unwrap();
//! assert_eq!(forecast.len(), 4);
//! ```

pub mod boost;
pub mod error;
pub mod functional;
pub mod io;
pub mod modelsel;
pub mod series;

pub use boost::{
    fit, fit_on_split, predict, residual, select_step, BoostConfig, FitTrace, PanelModel,
    PanelTerm, Selection, TraceRecord,
};
pub use error::{Error, Result};
pub use functional::TransformKind;
pub use modelsel::{cumulative, evaluate, sweep, Metrics, SweepGrid, SweepResult, SweepRow};
pub use series::{aggregate_target, restrict, split, Family, Series, SplitRanges, SplitSpec, TimeGrid};
