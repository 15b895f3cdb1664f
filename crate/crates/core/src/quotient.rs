//! The quotient estimator `F̃ = clamp(ψ̃ / g̃, 0, 1)`.

use crate::bases::BasisFamily;
use crate::cdf::{CdfEstimate, CdfKind, Method, ModelChoice};
use crate::error::Result;
use crate::projection::{estimate_g, estimate_psi, PenaltyConfig, ProjectionEstimate, Selection};
use crate::sample::ObservationSample;

/// `clamp(psi / g, 0, 1)`. When `g` is exactly zero the ratio is taken as
/// `+∞`, `−∞` or 0 following the sign of `psi`. Not monotone in general.
pub fn quotient_value(psi: f64, g: f64) -> f64 {
    let ratio = if g != 0.0 {
        psi / g
    } else if psi > 0.0 {
        f64::INFINITY
    } else if psi < 0.0 {
        f64::NEG_INFINITY
    } else {
        0.0
    };
    if ratio.is_nan() {
        0.0
    } else {
        ratio.clamp(0.0, 1.0)
    }
}

pub fn quotient_cdf(psi: ProjectionEstimate, g: ProjectionEstimate) -> CdfEstimate {
    CdfEstimate {
        method: Method::Quotient,
        kind: CdfKind::Quotient { psi, g },
        choices: Vec::new(),
    }
}

fn choice(role: &'static str, sel: &Selection) -> ModelChoice {
    ModelChoice {
        role,
        model: sel.estimate.model,
        contrast: sel.contrast,
        penalty: sel.penalty,
    }
}

/// Selects `ψ̃` and `g̃` independently over `family` and forms the quotient.
pub fn estimate_f_quotient(
    sample: &ObservationSample,
    family: BasisFamily,
    cfg: &PenaltyConfig,
) -> Result<CdfEstimate> {
    let psi = estimate_psi(sample, family, cfg)?;
    let g = estimate_g(sample, family, cfg)?;
    let choices = vec![choice("psi", &psi), choice("g", &g)];
    let mut est = quotient_cdf(psi.estimate, g.estimate);
    est.choices = choices;
    Ok(est)
}
