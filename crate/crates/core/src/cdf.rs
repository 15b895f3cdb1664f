//! Evaluable estimates of the distribution function.

use std::fmt;
use std::str::FromStr;

use crate::bases::BasisModel;
use crate::error::Error;
use crate::isotonic::StepCdf;
use crate::projection::ProjectionEstimate;
use crate::quotient::quotient_value;
use crate::regression::LeastSquaresFit;

/// Anything that can be evaluated as a distribution function on [0, 1].
pub trait CdfFunction {
    fn cdf(&self, x: f64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Quotient,
    Regression,
    Npmle,
    Birge,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Quotient,
        Method::Regression,
        Method::Npmle,
        Method::Birge,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Quotient => "quotient",
            Method::Regression => "regression",
            Method::Npmle => "npmle",
            Method::Birge => "birge",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "quotient" => Ok(Method::Quotient),
            "regression" | "ms" => Ok(Method::Regression),
            "npmle" | "groeneboom" => Ok(Method::Npmle),
            "birge" => Ok(Method::Birge),
            other => Err(Error::InvalidConfig(format!("unknown method '{other}'"))),
        }
    }
}

/// A selected model together with the criterion terms that chose it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelChoice {
    /// `"g"`, `"psi"` or `"F"`.
    pub role: &'static str,
    pub model: BasisModel,
    pub contrast: f64,
    pub penalty: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CdfKind {
    Quotient {
        psi: ProjectionEstimate,
        g: ProjectionEstimate,
    },
    Regression {
        fit: LeastSquaresFit,
        clamp: bool,
    },
    Step(StepCdf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdfEstimate {
    pub method: Method,
    pub kind: CdfKind,
    pub choices: Vec<ModelChoice>,
}

impl CdfEstimate {
    pub fn evaluate(&self, x: f64) -> f64 {
        match &self.kind {
            CdfKind::Quotient { psi, g } => quotient_value(psi.evaluate(x), g.evaluate(x)),
            CdfKind::Regression { fit, clamp } => {
                let v = fit.evaluate(x);
                if *clamp {
                    v.clamp(0.0, 1.0)
                } else {
                    v
                }
            }
            CdfKind::Step(step) => step.evaluate(x),
        }
    }

    /// Values on `points` evenly spaced over [0, 1], endpoints included.
    pub fn on_grid(&self, points: usize) -> Vec<(f64, f64)> {
        grid(points).map(|x| (x, self.evaluate(x))).collect()
    }
}

impl CdfFunction for CdfEstimate {
    fn cdf(&self, x: f64) -> f64 {
        self.evaluate(x)
    }
}

/// `points` evenly spaced abscissae over [0, 1]; a single point is 0.
pub fn grid(points: usize) -> impl Iterator<Item = f64> {
    let denom = points.saturating_sub(1).max(1) as f64;
    (0..points).map(move |i| i as f64 / denom)
}
