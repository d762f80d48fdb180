use std::fmt;

use thiserror::Error;

/// Named inequality of a class-membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassBound {
    /// `delta > max{2 - beta, beta}`
    NonlinearLower,
    /// `delta <= 2 - beta + 2 sqrt(1 - beta)`
    NonlinearUpper,
    /// `mu > beta (1 - k y0) / k`
    PiecewiseLower,
    /// `mu <= (1 - k y0) / (k^2 y0)`
    PiecewiseUpper,
}

impl fmt::Display for ClassBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassBound::NonlinearLower => "delta must exceed the lower bound max{2-beta, beta}",
            ClassBound::NonlinearUpper => {
                "delta must not exceed the upper bound 2-beta+2*sqrt(1-beta)"
            }
            ClassBound::PiecewiseLower => "mu must exceed the lower bound beta*(1-k*y0)/k",
            ClassBound::PiecewiseUpper => "mu must not exceed the upper bound (1-k*y0)/(k^2*y0)",
        };
        f.write_str(s)
    }
}

/// Why a map failed a class-membership test.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassViolation {
    Bound {
        bound: ClassBound,
        value: f64,
        limit: f64,
    },
    /// A grid-based shape check of a generic unimodal map failed.
    Shape(String),
}

impl fmt::Display for ClassViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassViolation::Bound {
                bound,
                value,
                limit,
            } => write!(f, "{bound} (got {value}, bound {limit})"),
            ClassViolation::Shape(msg) => f.write_str(msg),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("point {value} lies outside the domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },
    #[error("map is not in the admissible class: {0}")]
    Class(ClassViolation),
    #[error("numerical failure: {0}")]
    Numerical(&'static str),
    #[error("derivative vanishes at the critical point (evaluated at {at})")]
    SingularPoint { at: f64 },
    #[error("orbit hit the critical point to machine precision at step {step}")]
    SingularOrbit { step: usize },
    #[error("no point of period dividing two found on the monotone branch")]
    EmptyPi,
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("orbit left the domain after {steps} retained values")]
    OrbitExited { steps: usize },
}

impl Error {
    pub(crate) fn bound(bound: ClassBound, value: f64, limit: f64) -> Self {
        Error::Class(ClassViolation::Bound {
            bound,
            value,
            limit,
        })
    }

    /// Parameter/domain/class problems, as opposed to numerical breakdowns.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::Domain { .. }
                | Error::Class(_)
                | Error::NotApplicable(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
