//! Projection estimators of the design density `g` and of the sub-density
//! `ψ = F g`, with model selection by penalized contrast.
//!
//! For an orthonormal basis the contrast minimizer on `S_m` is explicit:
//! `t̂ = Σ â_λ φ_λ` with `â_λ = (1/n) Σ w_i φ_λ(U_i)`, and its contrast is
//! `−Σ â_λ²`. Selection therefore only needs the coefficients.

use crate::bases::{build_collection, BasisFamily, BasisModel, CapRule};
use crate::error::{Error, Result};
use crate::sample::ObservationSample;

/// Which density a projection estimate targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Density of the examination times; weights ≡ 1.
    G,
    /// Sub-density of the observations with `δ = 1`; weights = δ.
    Psi,
}

impl Target {
    pub fn weights(&self, sample: &ObservationSample) -> Vec<f64> {
        match self {
            Target::G => vec![1.0; sample.len()],
            Target::Psi => sample.delta_weights(),
        }
    }

    /// Mean weight entering the data-driven penalty: 1 for `g`,
    /// `(1/n) Σ δ_i` for `ψ`.
    pub fn penalty_scale(&self, sample: &ObservationSample) -> f64 {
        match self {
            Target::G => 1.0,
            Target::Psi => sample.delta_mean(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionEstimate {
    pub model: BasisModel,
    pub coeffs: Vec<f64>,
    pub target: Target,
}

impl ProjectionEstimate {
    pub fn from_sample(sample: &ObservationSample, model: BasisModel, target: Target) -> Self {
        let coeffs = empirical_coefficients(sample, &model, &target.weights(sample));
        Self {
            model,
            coeffs,
            target,
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.model.combine(&self.coeffs, x)
    }

    /// `‖t‖² = Σ coeffs²`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyConfig {
    pub kappa: f64,
    /// Use the `2^p (r + 1 + ln^{2.5}(r + 1))` shape on dyadic piecewise
    /// polynomials instead of `Φ₀² D_m`.
    pub practical_correction: bool,
    pub cap: CapRule,
    /// `Φ₀²` of the collection. `None` takes the largest per-model value
    /// over the collection being searched.
    pub phi0_sq: Option<f64>,
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        Self {
            kappa: 4.0,
            practical_correction: true,
            cap: CapRule::LogSquared,
            phi0_sq: None,
        }
    }
}

impl PenaltyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "penalty constant must be positive, got {}",
                self.kappa
            )));
        }
        if let Some(c) = self.phi0_sq {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "Φ₀² must be positive, got {c}"
                )));
            }
        }
        Ok(())
    }
}

/// `(1/n) Σ_i w_i φ_λ(u_i)` for every `λ`. Points outside [0, 1] add
/// nothing but still count in `n`.
pub fn empirical_coefficients(
    sample: &ObservationSample,
    model: &BasisModel,
    weights: &[f64],
) -> Vec<f64> {
    assert_eq!(weights.len(), sample.len(), "one weight per observation");
    let d = model.dimension();
    let mut acc = vec![0.0; d];
    let mut buf = vec![0.0; d];
    for (&u, &w) in sample.u().iter().zip(weights) {
        if w == 0.0 || !(0.0..=1.0).contains(&u) {
            continue;
        }
        model.evaluate_into(u, &mut buf);
        for (a, v) in acc.iter_mut().zip(&buf) {
            *a += w * v;
        }
    }
    let n = sample.len() as f64;
    acc.iter_mut().for_each(|a| *a /= n);
    acc
}

/// `‖t‖² − (2/n) Σ w_i t(u_i)` for `t` given by `estimate`, evaluated
/// directly at the sample points.
pub fn density_contrast(
    sample: &ObservationSample,
    estimate: &ProjectionEstimate,
    weights: &[f64],
) -> f64 {
    assert_eq!(weights.len(), sample.len(), "one weight per observation");
    let cross: f64 = sample
        .u()
        .iter()
        .zip(weights)
        .map(|(&u, &w)| w * estimate.evaluate(u))
        .sum();
    estimate.norm_sq() - 2.0 * cross / sample.len() as f64
}

/// Penalty of the density contrasts: `κ Φ₀² δ̄ D_m / n`, or
/// `κ δ̄ 2^p (r + 1 + ln^{2.5}(r + 1)) / n` for dyadic polynomials under
/// the practical correction. `delta_mean` (δ̄) is 1 for `g` and
/// `(1/n) Σ δ_i` for `ψ`. Without `cfg.phi0_sq` the model's own `Φ₀²` is
/// used.
pub fn penalty_density(model: &BasisModel, n: usize, cfg: &PenaltyConfig, delta_mean: f64) -> f64 {
    let shape = match dyadic_shape(model, cfg.practical_correction) {
        Some(s) => s,
        None => cfg.phi0_sq.unwrap_or_else(|| model.phi0_sq()) * model.dimension() as f64,
    };
    cfg.kappa * delta_mean * shape / n as f64
}

/// `2^p (r + 1 + ln^{2.5}(r + 1))` for dyadic polynomials when the
/// practical correction is on.
pub(crate) fn dyadic_shape(model: &BasisModel, practical_correction: bool) -> Option<f64> {
    match *model {
        BasisModel::DyadicPiecewisePoly { level, degree } if practical_correction => {
            let r1 = (degree + 1) as f64;
            Some((1u64 << level) as f64 * (r1 + r1.ln().powf(2.5)))
        }
        _ => None,
    }
}

/// Outcome of penalized model selection.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub estimate: ProjectionEstimate,
    /// Contrast `γ_n(t̂_m) = −Σ â_λ²` of the winner.
    pub contrast: f64,
    pub penalty: f64,
}

impl Selection {
    pub fn criterion(&self) -> f64 {
        self.contrast + self.penalty
    }
}

/// Minimizes `−Σ â_λ² + pen(m)` over `collection`. Ties go to the smaller
/// dimension, then to the earlier model in `(partition, degree)` order.
pub fn select_model(
    sample: &ObservationSample,
    collection: &[BasisModel],
    cfg: &PenaltyConfig,
    target: Target,
) -> Result<Selection> {
    cfg.validate()?;
    let n = sample.len();
    if collection.is_empty() {
        return Err(Error::EmptyCollection { n });
    }
    let weights = target.weights(sample);
    let scale = target.penalty_scale(sample);
    let cfg = PenaltyConfig {
        phi0_sq: Some(cfg.phi0_sq.unwrap_or_else(|| {
            collection
                .iter()
                .map(BasisModel::phi0_sq)
                .fold(0.0, f64::max)
        })),
        ..*cfg
    };
    let mut best: Option<Selection> = None;
    let mut ordered: Vec<&BasisModel> = collection.iter().collect();
    ordered.sort_by_key(|m| (m.dimension(), m.order_key()));
    for model in ordered {
        let coeffs = empirical_coefficients(sample, model, &weights);
        let contrast = -coeffs.iter().map(|c| c * c).sum::<f64>();
        let penalty = penalty_density(model, n, &cfg, scale);
        let better = best
            .as_ref()
            .is_none_or(|b| contrast + penalty < b.criterion());
        if better {
            best = Some(Selection {
                estimate: ProjectionEstimate {
                    model: *model,
                    coeffs,
                    target,
                },
                contrast,
                penalty,
            });
        }
    }
    best.ok_or(Error::EmptyCollection { n })
}

fn estimate(
    sample: &ObservationSample,
    family: BasisFamily,
    cfg: &PenaltyConfig,
    target: Target,
) -> Result<Selection> {
    let collection = build_collection(family, sample.len(), cfg.cap)?;
    let cfg = PenaltyConfig {
        phi0_sq: Some(cfg.phi0_sq.unwrap_or_else(|| family.phi0_sq())),
        ..*cfg
    };
    select_model(sample, &collection, &cfg, target)
}

/// Adaptive estimate of the examination-time density `g`.
pub fn estimate_g(
    sample: &ObservationSample,
    family: BasisFamily,
    cfg: &PenaltyConfig,
) -> Result<Selection> {
    estimate(sample, family, cfg, Target::G)
}

/// Adaptive estimate of `ψ = F g` with the penalty scaled by `(1/n) Σ δ_i`.
pub fn estimate_psi(
    sample: &ObservationSample,
    family: BasisFamily,
    cfg: &PenaltyConfig,
) -> Result<Selection> {
    estimate(sample, family, cfg, Target::Psi)
}
