//! One entry point for every estimation method.

use crate::bases::{BasisFamily, DEFAULT_MAX_DEGREE};
use crate::cdf::{CdfEstimate, CdfKind, Method};
use crate::error::{Error, Result};
use crate::isotonic::{birge_histogram, npmle_pava};
use crate::projection::PenaltyConfig;
use crate::quotient::estimate_f_quotient;
use crate::regression::{estimate_f_regression, RegressionConfig};
use crate::sample::ObservationSample;

/// Bin count of the histogram benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BirgeBins {
    /// 5 cells below `n = 500`, 10 cells from there on.
    SampleSizeRule,
    Fixed(usize),
}

impl BirgeBins {
    pub fn bins(&self, n: usize) -> usize {
        match *self {
            BirgeBins::SampleSizeRule => {
                if n < 500 {
                    5
                } else {
                    10
                }
            }
            BirgeBins::Fixed(d) => d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    pub family: BasisFamily,
    pub density: PenaltyConfig,
    pub regression: RegressionConfig,
    pub birge_bins: BirgeBins,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            family: BasisFamily::DyadicPiecewisePoly {
                max_degree: DEFAULT_MAX_DEGREE,
            },
            density: PenaltyConfig::default(),
            regression: RegressionConfig::default(),
            birge_bins: BirgeBins::SampleSizeRule,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        self.density.validate()?;
        if !(self.regression.kappa0.is_finite() && self.regression.kappa0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "regression penalty constant must be positive, got {}",
                self.regression.kappa0
            )));
        }
        if let BirgeBins::Fixed(0) = self.birge_bins {
            return Err(Error::InvalidConfig(
                "histogram needs at least one bin".into(),
            ));
        }
        Ok(())
    }
}

pub fn estimate_cdf(
    method: Method,
    sample: &ObservationSample,
    cfg: &EstimatorConfig,
) -> Result<CdfEstimate> {
    match method {
        Method::Quotient => estimate_f_quotient(sample, cfg.family, &cfg.density),
        Method::Regression => estimate_f_regression(sample, cfg.family, &cfg.regression),
        Method::Npmle => Ok(CdfEstimate {
            method,
            kind: CdfKind::Step(npmle_pava(sample)),
            choices: Vec::new(),
        }),
        Method::Birge => Ok(CdfEstimate {
            method,
            kind: CdfKind::Step(birge_histogram(sample, cfg.birge_bins.bins(sample.len()))),
            choices: Vec::new(),
        }),
    }
}
