//! Mean-square (regression) estimator of `F`.
//!
//! On each model the fitted values at the design points are the orthogonal
//! projection of `(δ_1, …, δ_n)` onto `{(t(U_1), …, t(U_n)) : t ∈ S_m}`.
//! Coefficients are the minimum-norm least-squares solution, obtained from
//! a thin SVD of the design matrix with singular values below `RANK_TOL · σ_max`
//! treated as zero.

use faer::Mat;

use crate::bases::{build_collection, BasisFamily, BasisModel, CapRule};
use crate::cdf::{CdfEstimate, CdfKind, Method, ModelChoice};
use crate::error::{Error, Result};
use crate::projection::dyadic_shape;
use crate::sample::ObservationSample;

/// Relative singular-value cutoff of the minimum-norm solve.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresFit {
    pub model: BasisModel,
    pub coeffs: Vec<f64>,
    /// `(1/n) Σ (δ_i − t̂(U_i))²`.
    pub contrast: f64,
    pub gram_rank: usize,
}

impl LeastSquaresFit {
    pub fn evaluate(&self, x: f64) -> f64 {
        self.model.combine(&self.coeffs, x)
    }
}

pub fn fit_least_squares(sample: &ObservationSample, model: BasisModel) -> Result<LeastSquaresFit> {
    let d = model.dimension();
    let rows: Vec<usize> = (0..sample.len())
        .filter(|&i| (0.0..=1.0).contains(&sample.u()[i]))
        .collect();

    let (coeffs, rank) = if rows.is_empty() {
        (vec![0.0; d], 0)
    } else {
        let mut design = Mat::<f64>::zeros(rows.len(), d);
        let mut buf = vec![0.0; d];
        for (r, &i) in rows.iter().enumerate() {
            model.evaluate_into(sample.u()[i], &mut buf);
            for (c, v) in buf.iter().enumerate() {
                design[(r, c)] = *v;
            }
        }
        let rhs: Vec<f64> = rows.iter().map(|&i| f64::from(sample.delta()[i])).collect();
        min_norm_solve(&design, &rhs)?
    };

    let fit = LeastSquaresFit {
        model,
        coeffs,
        contrast: 0.0,
        gram_rank: rank,
    };
    let contrast = sample
        .u()
        .iter()
        .zip(sample.delta())
        .map(|(&u, &d)| (f64::from(d) - fit.evaluate(u)).powi(2))
        .sum::<f64>()
        / sample.len() as f64;
    Ok(LeastSquaresFit { contrast, ..fit })
}

fn min_norm_solve(design: &Mat<f64>, rhs: &[f64]) -> Result<(Vec<f64>, usize)> {
    let svd = design
        .thin_svd()
        .map_err(|_| Error::Numerical("SVD of the design matrix did not converge".into()))?;
    let (u, v) = (svd.U(), svd.V());
    let sigma = svd.S().column_vector();
    let sigma_max = (0..sigma.nrows()).map(|k| sigma[k]).fold(0.0, f64::max);
    let tol = RANK_TOL * sigma_max;
    let mut coeffs = vec![0.0; design.ncols()];
    let mut rank = 0;
    for k in 0..sigma.nrows() {
        let s = sigma[k];
        if s > tol && s > 0.0 {
            rank += 1;
            let proj = (0..rhs.len()).map(|i| u[(i, k)] * rhs[i]).sum::<f64>() / s;
            for (j, c) in coeffs.iter_mut().enumerate() {
                *c += v[(j, k)] * proj;
            }
        }
    }
    Ok((coeffs, rank))
}

/// `κ₀ D_m / n`, or `κ₀ 2^p (r + 1 + ln^{2.5}(r + 1)) / n` for dyadic
/// polynomials when `practical_correction` is set.
pub fn penalty_ms(model: &BasisModel, n: usize, kappa0: f64, practical_correction: bool) -> f64 {
    let shape = dyadic_shape(model, practical_correction).unwrap_or(model.dimension() as f64);
    kappa0 * shape / n as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionConfig {
    pub kappa0: f64,
    pub practical_correction: bool,
    /// `None` picks the per-family default (`√n/ln n` for trig, `n/ln² n`
    /// otherwise).
    pub cap: Option<CapRule>,
    pub clamp: bool,
}

impl Default for RegressionConfig {
    fn default() -> Self {
        Self {
            kappa0: 4.0,
            practical_correction: true,
            cap: None,
            clamp: false,
        }
    }
}

/// Fits every model of `collection` and keeps the minimizer of
/// `γ_n^MS(F̂_m) + pen^MS(m)`; ties go to the smaller dimension.
pub fn select_regression(
    sample: &ObservationSample,
    collection: &[BasisModel],
    cfg: &RegressionConfig,
) -> Result<(LeastSquaresFit, f64)> {
    if !(cfg.kappa0.is_finite() && cfg.kappa0 > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "penalty constant must be positive, got {}",
            cfg.kappa0
        )));
    }
    let n = sample.len();
    let mut ordered: Vec<&BasisModel> = collection.iter().collect();
    ordered.sort_by_key(|m| (m.dimension(), m.order_key()));
    let mut best: Option<(LeastSquaresFit, f64)> = None;
    for model in ordered {
        let fit = fit_least_squares(sample, *model)?;
        let pen = penalty_ms(model, n, cfg.kappa0, cfg.practical_correction);
        let better = best
            .as_ref()
            .is_none_or(|(b, bp)| fit.contrast + pen < b.contrast + bp);
        if better {
            best = Some((fit, pen));
        }
    }
    best.ok_or(Error::EmptyCollection { n })
}

pub fn estimate_f_regression(
    sample: &ObservationSample,
    family: BasisFamily,
    cfg: &RegressionConfig,
) -> Result<CdfEstimate> {
    let cap = cfg
        .cap
        .unwrap_or_else(|| CapRule::regression_default(family));
    let collection = build_collection(family, sample.len(), cap)?;
    let (fit, penalty) = select_regression(sample, &collection, cfg)?;
    let choice = ModelChoice {
        role: "F",
        model: fit.model,
        contrast: fit.contrast,
        penalty,
    };
    Ok(CdfEstimate {
        method: Method::Regression,
        kind: CdfKind::Regression {
            fit,
            clamp: cfg.clamp,
        },
        choices: vec![choice],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_bin_histogram_interpolates() {
        let s = ObservationSample::new(vec![0.25, 0.75], vec![0, 1]).unwrap();
        let fit = fit_least_squares(&s, BasisModel::dyadic(1, 0)).unwrap();
        assert!(fit.evaluate(0.25).abs() < 1e-14);
        assert!((fit.evaluate(0.75) - 1.0).abs() < 1e-14);
        assert!(fit.contrast.abs() < 1e-28);
        assert_eq!(fit.gram_rank, 2);
    }

    #[test]
    fn constant_model_gives_mean_and_variance() {
        let u = vec![0.1, 0.3, 0.35, 0.6, 0.8, 0.95];
        let d = vec![0, 1, 0, 1, 1, 1];
        let s = ObservationSample::new(u, d.clone()).unwrap();
        let fit = fit_least_squares(&s, BasisModel::haar(0)).unwrap();
        let mean = 4.0 / 6.0;
        let var = d
            .iter()
            .map(|&x| (f64::from(x) - mean).powi(2))
            .sum::<f64>()
            / 6.0;
        assert!((fit.coeffs[0] - mean).abs() < 1e-14);
        assert!((fit.contrast - var).abs() < 1e-14);
    }

    #[test]
    fn all_ones_fit_exactly_on_occupied_bins() {
        let s = ObservationSample::new(vec![0.05, 0.1, 0.55, 0.6], vec![1; 4]).unwrap();
        let fit = fit_least_squares(&s, BasisModel::piecewise(4, 0)).unwrap();
        assert!((fit.evaluate(0.07) - 1.0).abs() < 1e-14);
        assert!((fit.evaluate(0.58) - 1.0).abs() < 1e-14);
        assert_eq!(fit.evaluate(0.3), 0.0);
        assert!(fit.contrast < 1e-28);
        assert_eq!(fit.gram_rank, 2);
    }

    #[test]
    fn no_point_inside_unit_interval() {
        let s = ObservationSample::new(vec![1.5, 2.0], vec![1, 0]).unwrap();
        let fit = fit_least_squares(&s, BasisModel::trig(2)).unwrap();
        assert_eq!(fit.coeffs, vec![0.0; 5]);
        assert_eq!(fit.gram_rank, 0);
        assert!((fit.contrast - 0.5).abs() < 1e-15);
    }

    #[test]
    fn underdetermined_piece_uses_minimum_norm() {
        // One point in the only piece, cubic model: rank 1.
        let s = ObservationSample::new(vec![0.3], vec![1]).unwrap();
        let fit = fit_least_squares(&s, BasisModel::piecewise(1, 3)).unwrap();
        assert_eq!(fit.gram_rank, 1);
        assert!((fit.evaluate(0.3) - 1.0).abs() < 1e-12);
        let phi = BasisModel::piecewise(1, 3).evaluate(0.3);
        let nrm: f64 = phi.iter().map(|v| v * v).sum();
        for (c, p) in fit.coeffs.iter().zip(&phi) {
            assert!((c - p / nrm).abs() < 1e-12);
        }
    }

    #[test]
    fn penalty_ms_values() {
        assert!((penalty_ms(&BasisModel::trig(1), 100, 4.0, false) - 0.12).abs() < 1e-15);
        assert!((penalty_ms(&BasisModel::dyadic(3, 0), 1000, 4.0, true) - 0.032).abs() < 1e-15);
        assert_eq!(penalty_ms(&BasisModel::haar(0), 1, 4.0, true), 4.0);
    }

    #[test]
    fn single_model_collection_is_selected() {
        let s = ObservationSample::new(vec![0.2, 0.4, 0.9], vec![0, 1, 1]).unwrap();
        let (fit, _) = select_regression(
            &s,
            &[BasisModel::dyadic(1, 1)],
            &RegressionConfig::default(),
        )
        .unwrap();
        assert_eq!(fit.model, BasisModel::dyadic(1, 1));
    }

    #[test]
    fn clamping_is_opt_in() {
        let s = ObservationSample::new(vec![0.1, 0.2, 0.8, 0.9], vec![0, 0, 1, 1]).unwrap();
        let fit = fit_least_squares(&s, BasisModel::piecewise(1, 1)).unwrap();
        assert!(fit.evaluate(1.0) > 1.0);
        let raw = CdfEstimate {
            method: Method::Regression,
            kind: CdfKind::Regression {
                fit: fit.clone(),
                clamp: false,
            },
            choices: vec![],
        };
        let clamped = CdfEstimate {
            kind: CdfKind::Regression { fit, clamp: true },
            ..raw.clone()
        };
        assert!(raw.evaluate(1.0) > 1.0);
        assert_eq!(clamped.evaluate(1.0), 1.0);
    }
}
