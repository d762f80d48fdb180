//! Chaos criteria and ergodic estimators for two fixed-price Keynesian
//! income maps on `E = [0, 1/k]`:
//!
//! * the smooth quadratic map `f(y) = beta*y + delta*y*(1 - k*y)`;
//! * the V-shaped piecewise-linear map `h` with kink at `y0`.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the
//! `f64` aliases at the crate root are what the CLI uses.

// `!(a < b)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chaos;
pub mod ergodic;
pub mod error;
pub mod models;
pub mod scalar;
pub mod scan;

pub use chaos::{
    brute_force_odd_cycle, deng_criterion, exact_chaos_threshold, ChaosVerdict, Classification,
    Extremum, UnimodalSpec,
};
pub use error::{ClassBound, ClassViolation, Error, Result};
pub use models::{ClassCheck, IntervalMap, Landmarks, Model, NonlinearParams, PiecewiseParams};
pub use scalar::{CompensatedSum, Scalar};

pub type Nonlinear = NonlinearParams<f64>;
pub type Piecewise = PiecewiseParams<f64>;
pub type Map = Model<f64>;
pub type Verdict = ChaosVerdict<f64>;
pub type Orbit = ergodic::OrbitSeries<f64>;
pub type Density = ergodic::DensityEstimate<f64>;
pub type Expansivity = ergodic::ExpansivityReport<f64>;
pub type Sweep = scan::SweepDataset<f64>;
pub type Family = scan::ModelFamily<f64>;
pub type Grid = scan::ParamGrid<f64>;

pub type Nonlinear32 = NonlinearParams<f32>;
pub type Piecewise32 = PiecewiseParams<f32>;
pub type Map32 = Model<f32>;
