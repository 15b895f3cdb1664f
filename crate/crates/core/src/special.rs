//! Special functions and samplers used by the simulation models.

use rand::Rng;
use rand_distr::{Beta, Distribution, Exp};

use crate::error::{Error, Result};

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "I_x(a, b) needs x in [0, 1], got {x}"
        )));
    }
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!(
            "I_x(a, b) needs positive shapes, got a = {a}, b = {b}"
        )));
    }
    statrs::function::beta::checked_beta_reg(a, b, x).map_err(|e| Error::Domain(e.to_string()))
}

pub fn beta_sampler<R: Rng + ?Sized>(alpha: f64, beta: f64, rng: &mut R) -> Result<f64> {
    let dist = Beta::new(alpha, beta).map_err(|e| Error::Domain(e.to_string()))?;
    Ok(dist.sample(rng))
}

pub fn exponential_sampler<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> Result<f64> {
    let dist = Exp::new(rate).map_err(|e| Error::Domain(e.to_string()))?;
    Ok(dist.sample(rng))
}
