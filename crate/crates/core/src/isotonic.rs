//! Benchmark step estimators: the NPMLE (max-min formula and its
//! pool-adjacent-violators equivalent) and the fixed-partition histogram
//! estimator.
//!
//! Block means are formed as `(number of ones) / (block length)` from
//! integer counts in both NPMLE routes, so they agree bit for bit.

use std::cmp::Ordering;

use crate::sample::ObservationSample;

#[derive(Debug, Clone, PartialEq)]
pub enum StepCdf {
    /// Right-continuous steps at sorted `knots`; 0 left of the first knot.
    Knots { knots: Vec<f64>, values: Vec<f64> },
    /// One value per cell of the regular partition of [0, 1]; `x` falls in
    /// cell `min(floor(x D), D − 1)`. Values outside [0, 1] are 0.
    RegularBins { values: Vec<f64> },
}

impl StepCdf {
    pub fn values(&self) -> &[f64] {
        match self {
            StepCdf::Knots { values, .. } | StepCdf::RegularBins { values } => values,
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match self {
            StepCdf::Knots { knots, values } => {
                let idx = knots.partition_point(|&k| k <= x);
                if idx == 0 {
                    0.0
                } else {
                    values[idx - 1]
                }
            }
            StepCdf::RegularBins { values } => {
                if !(0.0..=1.0).contains(&x) {
                    return 0.0;
                }
                values[bin_index(x, values.len())]
            }
        }
    }
}

fn bin_index(x: f64, bins: usize) -> usize {
    ((x * bins as f64).floor() as usize).min(bins - 1)
}

fn mean(ones: usize, len: usize) -> f64 {
    ones as f64 / len as f64
}

/// `F̂(U_(i)) = max_{j ≤ i} min_{k ≥ i} mean(δ_(j..=k))`, in `O(n²)`.
pub fn npmle_maxmin(sample: &ObservationSample) -> StepCdf {
    let (knots, delta) = sample.sorted();
    let n = delta.len();
    let mut prefix = vec![0usize; n + 1];
    for (i, &d) in delta.iter().enumerate() {
        prefix[i + 1] = prefix[i] + usize::from(d);
    }
    let mut values = vec![f64::NEG_INFINITY; n];
    let mut suffix_min = vec![0.0; n];
    for j in 0..n {
        // suffix_min[i] = min_{k ≥ i} mean(j..=k), for i ≥ j.
        let mut running = f64::INFINITY;
        for k in (j..n).rev() {
            running = running.min(mean(prefix[k + 1] - prefix[j], k - j + 1));
            suffix_min[k] = running;
        }
        for i in j..n {
            if suffix_min[i] > values[i] {
                values[i] = suffix_min[i];
            }
        }
    }
    StepCdf::Knots { knots, values }
}

/// Isotonic least-squares fit of the time-ordered indicators by pooling
/// adjacent violators. Returns the fitted values and block boundaries as
/// half-open index ranges.
pub fn pava_blocks(delta: &[u8]) -> Vec<(usize, usize, usize)> {
    // (start, len, ones)
    let mut blocks: Vec<(usize, usize, usize)> = Vec::with_capacity(delta.len());
    for (i, &d) in delta.iter().enumerate() {
        let mut cur = (i, 1usize, usize::from(d));
        while let Some(&prev) = blocks.last() {
            // prev.ones / prev.len > cur.ones / cur.len, compared exactly.
            if (prev.2 * cur.1).cmp(&(cur.2 * prev.1)) == Ordering::Greater {
                blocks.pop();
                cur = (prev.0, prev.1 + cur.1, prev.2 + cur.2);
            } else {
                break;
            }
        }
        blocks.push(cur);
    }
    blocks
}

pub fn npmle_pava(sample: &ObservationSample) -> StepCdf {
    let (knots, delta) = sample.sorted();
    let mut values = Vec::with_capacity(delta.len());
    for (_, len, ones) in pava_blocks(&delta) {
        let v = mean(ones, len);
        values.extend(std::iter::repeat_n(v, len));
    }
    StepCdf::Knots { knots, values }
}

/// Mean of `δ` over each of the `bins` regular cells of [0, 1]; 0 on empty
/// cells. Observations outside [0, 1] are ignored.
pub fn birge_histogram(sample: &ObservationSample, bins: usize) -> StepCdf {
    assert!(bins >= 1, "at least one bin");
    let mut count = vec![0usize; bins];
    let mut ones = vec![0usize; bins];
    for (&u, &d) in sample.u().iter().zip(sample.delta()) {
        if !(0.0..=1.0).contains(&u) {
            continue;
        }
        let j = bin_index(u, bins);
        count[j] += 1;
        ones[j] += usize::from(d);
    }
    let values = count
        .iter()
        .zip(&ones)
        .map(|(&c, &o)| if c == 0 { 0.0 } else { mean(o, c) })
        .collect();
    StepCdf::RegularBins { values }
}
