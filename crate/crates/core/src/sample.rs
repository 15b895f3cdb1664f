//! Current-status observations `(U_i, δ_i)`.

use crate::error::{Error, Result};

/// A current-status sample: examination times `u` and indicators `delta`,
/// where `delta[i] = 1` iff the unobserved lifetime was at most `u[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSample {
    u: Vec<f64>,
    delta: Vec<u8>,
}

impl ObservationSample {
    pub fn new(u: Vec<f64>, delta: Vec<u8>) -> Result<Self> {
        if u.len() != delta.len() {
            return Err(Error::InvalidSample(format!(
                "{} examination times but {} indicators",
                u.len(),
                delta.len()
            )));
        }
        if u.is_empty() {
            return Err(Error::InvalidSample("sample is empty".into()));
        }
        if let Some(i) = delta.iter().position(|&d| d > 1) {
            return Err(Error::InvalidSample(format!(
                "indicator {} at position {i} is not 0 or 1",
                delta[i]
            )));
        }
        if let Some(i) = u.iter().position(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidSample(format!(
                "examination time {} at position {i} is not a finite non-negative real",
                u[i]
            )));
        }
        Ok(Self { u, delta })
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    /// Always false: construction rejects empty samples.
    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn delta(&self) -> &[u8] {
        &self.delta
    }

    /// Indicators as reals, the weights of the sub-density contrast.
    pub fn delta_weights(&self) -> Vec<f64> {
        self.delta.iter().map(|&d| f64::from(d)).collect()
    }

    /// `(1/n) Σ δ_i`.
    pub fn delta_mean(&self) -> f64 {
        self.count_ones() as f64 / self.len() as f64
    }

    pub fn count_ones(&self) -> usize {
        self.delta.iter().filter(|&&d| d == 1).count()
    }

    /// Indicators reordered by increasing examination time. Ties keep their
    /// original relative order (stable sort on `(u, index)`).
    pub fn sorted(&self) -> (Vec<f64>, Vec<u8>) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.u[a].total_cmp(&self.u[b]));
        let u = order.iter().map(|&i| self.u[i]).collect();
        let d = order.iter().map(|&i| self.delta[i]).collect();
        (u, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_mismatched_lengths() {
        assert!(ObservationSample::new(vec![0.1, 0.2], vec![1]).is_err());
    }

    #[test]
    fn rejects_bad_indicator_and_negative_time() {
        assert!(ObservationSample::new(vec![0.1], vec![2]).is_err());
        assert!(ObservationSample::new(vec![-0.1], vec![0]).is_err());
        assert!(ObservationSample::new(vec![], vec![]).is_err());
    }

    #[test]
    fn sorting_is_stable_on_ties() {
        let s = ObservationSample::new(vec![0.5, 0.2, 0.5, 0.1], vec![1, 0, 0, 1]).unwrap();
        let (u, d) = s.sorted();
        assert_eq!(u, vec![0.1, 0.2, 0.5, 0.5]);
        assert_eq!(d, vec![1, 0, 1, 0]);
    }
}
