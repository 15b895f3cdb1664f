//! Estimation of a distribution function `F` on [0, 1] from current-status
//! data `(U_i, δ_i = 1{X_i ≤ U_i})`.
//!
//! Two adaptive estimators are provided, both selecting a model from a
//! collection of orthonormal bases by penalized contrast:
//!
//! * the quotient estimator `F̃ = clamp(ψ̃ / g̃, 0, 1)`, built from projection
//!   estimates of the sub-density `ψ = F g` and of the design density `g`
//!   ([`quotient`], [`projection`]);
//! * the mean-square estimator, a least-squares projection of the indicators
//!   onto each model ([`regression`]).
//!
//! The NPMLE and the fixed-partition histogram estimator serve as benchmarks
//! ([`isotonic`]), and [`simulation`] runs the Monte Carlo comparison.

pub mod bases;
pub mod cdf;
pub mod error;
pub mod isotonic;
pub mod pipeline;
pub mod projection;
pub mod quadrature;
pub mod quotient;
pub mod regression;
pub mod sample;
pub mod simulation;
pub mod special;

pub use bases::{build_collection, BasisFamily, BasisModel, CapRule};
pub use cdf::{CdfEstimate, CdfFunction, CdfKind, Method, ModelChoice};
pub use error::{Error, Result};
pub use isotonic::{birge_histogram, npmle_maxmin, npmle_pava, StepCdf};
pub use pipeline::{estimate_cdf, BirgeBins, EstimatorConfig};
pub use projection::{
    density_contrast, empirical_coefficients, estimate_g, estimate_psi, penalty_density,
    select_model, PenaltyConfig, ProjectionEstimate, Selection, Target,
};
pub use quotient::{estimate_f_quotient, quotient_cdf};
pub use regression::{
    estimate_f_regression, fit_least_squares, penalty_ms, LeastSquaresFit, RegressionConfig,
};
pub use sample::ObservationSample;
pub use simulation::{
    monte_carlo, truncated_mse, Contender, MonteCarloConfig, MseCell, MseReport, SimModel,
};
