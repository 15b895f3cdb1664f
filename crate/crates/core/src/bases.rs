//! Orthonormal families on [0, 1]: trigonometric, regular and dyadic
//! piecewise polynomials (piecewise Legendre), and Haar wavelets.
//!
//! Every basis function vanishes outside [0, 1]. Piecewise families assign
//! a point `x` to piece `min(floor(x * pieces), pieces - 1)`, so the right
//! endpoint 1 belongs to the last piece.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest polynomial degree used by default.
pub const DEFAULT_MAX_DEGREE: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisFamily {
    /// `1, √2 cos(2πjx), √2 sin(2πjx)` for `j = 1..=m`.
    Trig,
    /// Legendre pieces on a regular partition into `m` intervals.
    PiecewisePoly { max_degree: usize },
    /// Legendre pieces on the dyadic partition into `2^p` intervals.
    DyadicPiecewisePoly { max_degree: usize },
    /// Haar father wavelet plus mother wavelets up to level `p - 1`.
    Haar,
}

impl BasisFamily {
    pub fn name(&self) -> &'static str {
        match self {
            BasisFamily::Trig => "trig",
            BasisFamily::PiecewisePoly { .. } => "poly",
            BasisFamily::DyadicPiecewisePoly { .. } => "dyadic",
            BasisFamily::Haar => "haar",
        }
    }

    /// Collection-wide `Φ₀²`: 2 for trig, `2 r_max + 1` for polynomial
    /// families, 1 for Haar.
    pub fn phi0_sq(&self) -> f64 {
        match *self {
            BasisFamily::Trig => 2.0,
            BasisFamily::PiecewisePoly { max_degree }
            | BasisFamily::DyadicPiecewisePoly { max_degree } => (2 * max_degree + 1) as f64,
            BasisFamily::Haar => 1.0,
        }
    }

    pub fn with_max_degree(self, max_degree: usize) -> Self {
        match self {
            BasisFamily::PiecewisePoly { .. } => BasisFamily::PiecewisePoly { max_degree },
            BasisFamily::DyadicPiecewisePoly { .. } => {
                BasisFamily::DyadicPiecewisePoly { max_degree }
            }
            other => other,
        }
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisFamily {
    type Err = Error;

    /// Polynomial families parse with [`DEFAULT_MAX_DEGREE`].
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trig" | "t" => Ok(BasisFamily::Trig),
            "poly" | "p" => Ok(BasisFamily::PiecewisePoly {
                max_degree: DEFAULT_MAX_DEGREE,
            }),
            "dyadic" | "dp" => Ok(BasisFamily::DyadicPiecewisePoly {
                max_degree: DEFAULT_MAX_DEGREE,
            }),
            "haar" | "w" => Ok(BasisFamily::Haar),
            other => Err(Error::InvalidConfig(format!(
                "unknown basis family '{other}'"
            ))),
        }
    }
}

/// One member `S_m` of a collection, identified by its family index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisModel {
    Trig { m: usize },
    PiecewisePoly { pieces: usize, degree: usize },
    DyadicPiecewisePoly { level: u32, degree: usize },
    Haar { level: u32 },
}

impl BasisModel {
    pub fn trig(m: usize) -> Self {
        assert!(m >= 1, "trigonometric models start at m = 1");
        BasisModel::Trig { m }
    }

    pub fn piecewise(pieces: usize, degree: usize) -> Self {
        assert!(pieces >= 1, "at least one piece");
        BasisModel::PiecewisePoly { pieces, degree }
    }

    pub fn dyadic(level: u32, degree: usize) -> Self {
        BasisModel::DyadicPiecewisePoly { level, degree }
    }

    pub fn haar(level: u32) -> Self {
        BasisModel::Haar { level }
    }

    /// `D_m`.
    pub fn dimension(&self) -> usize {
        match *self {
            BasisModel::Trig { m } => 2 * m + 1,
            BasisModel::PiecewisePoly { pieces, degree } => (degree + 1) * pieces,
            BasisModel::DyadicPiecewisePoly { level, degree } => (degree + 1) << level,
            BasisModel::Haar { level } => 1 << level,
        }
    }

    pub fn family(&self) -> BasisFamily {
        match *self {
            BasisModel::Trig { .. } => BasisFamily::Trig,
            BasisModel::PiecewisePoly { degree, .. } => {
                BasisFamily::PiecewisePoly { max_degree: degree }
            }
            BasisModel::DyadicPiecewisePoly { degree, .. } => {
                BasisFamily::DyadicPiecewisePoly { max_degree: degree }
            }
            BasisModel::Haar { .. } => BasisFamily::Haar,
        }
    }

    /// Polynomial degree `r`; 0 for Haar, `None` for trigonometric models.
    pub fn degree(&self) -> Option<usize> {
        match *self {
            BasisModel::Trig { .. } => None,
            BasisModel::PiecewisePoly { degree, .. }
            | BasisModel::DyadicPiecewisePoly { degree, .. } => Some(degree),
            BasisModel::Haar { .. } => Some(0),
        }
    }

    /// Dyadic level `p` for dyadic families.
    pub fn level(&self) -> Option<u32> {
        match *self {
            BasisModel::DyadicPiecewisePoly { level, .. } | BasisModel::Haar { level } => {
                Some(level)
            }
            _ => None,
        }
    }

    /// Number of cells of the underlying partition (1 for trigonometric).
    pub fn pieces(&self) -> usize {
        match *self {
            BasisModel::Trig { .. } => 1,
            BasisModel::PiecewisePoly { pieces, .. } => pieces,
            BasisModel::DyadicPiecewisePoly { level, .. } | BasisModel::Haar { level } => {
                1 << level
            }
        }
    }

    /// Norm-connection constant `Φ₀` of this model alone, with
    /// `‖Σ φ_λ²‖_∞ ≤ Φ₀² D_m`. A collection mixing degrees uses the
    /// largest one, see [`BasisFamily::phi0_sq`].
    pub fn phi0(&self) -> f64 {
        self.phi0_sq().sqrt()
    }

    pub fn phi0_sq(&self) -> f64 {
        match *self {
            BasisModel::Trig { .. } => 2.0,
            BasisModel::PiecewisePoly { degree, .. }
            | BasisModel::DyadicPiecewisePoly { degree, .. } => (2 * degree + 1) as f64,
            BasisModel::Haar { .. } => 1.0,
        }
    }

    /// Secondary ordering key used to break ties between models of equal
    /// dimension: the partition index first, then the degree.
    pub(crate) fn order_key(&self) -> (usize, usize) {
        match *self {
            BasisModel::Trig { m } => (m, 0),
            BasisModel::PiecewisePoly { pieces, degree } => (pieces, degree),
            BasisModel::DyadicPiecewisePoly { level, degree } => (level as usize, degree),
            BasisModel::Haar { level } => (level as usize, 0),
        }
    }

    /// Partition breakpoints `0 = x_0 < … < x_K = 1`; `[0, 1]` for trig.
    pub fn breakpoints(&self) -> Vec<f64> {
        let k = self.pieces();
        (0..=k).map(|j| j as f64 / k as f64).collect()
    }

    /// Writes `φ_λ(x)` for every `λ` into `out` (length `D_m`).
    pub fn evaluate_into(&self, x: f64, out: &mut [f64]) {
        assert_eq!(
            out.len(),
            self.dimension(),
            "output buffer has wrong length"
        );
        out.fill(0.0);
        if !(0.0..=1.0).contains(&x) {
            return;
        }
        match *self {
            BasisModel::Trig { m } => {
                out[0] = 1.0;
                for j in 1..=m {
                    let (s, c) = (2.0 * PI * j as f64 * x).sin_cos();
                    out[2 * j - 1] = SQRT_2 * c;
                    out[2 * j] = SQRT_2 * s;
                }
            }
            BasisModel::PiecewisePoly { pieces, degree } => {
                let (cell, t) = locate(x, pieces);
                legendre_normalized(t, pieces, &mut out[cell * (degree + 1)..][..degree + 1]);
            }
            BasisModel::DyadicPiecewisePoly { level, degree } => {
                let pieces = 1usize << level;
                let (cell, t) = locate(x, pieces);
                legendre_normalized(t, pieces, &mut out[cell * (degree + 1)..][..degree + 1]);
            }
            BasisModel::Haar { level } => {
                let (cell, _) = locate(x, 1 << level);
                out[0] = 1.0;
                for j in 0..level {
                    // Position of x at level j, and which half of that support.
                    let k = cell >> (level - j);
                    let upper = (cell >> (level - j - 1)) & 1 == 1;
                    let amp = f64::from(1u32 << j).sqrt();
                    out[(1usize << j) + k] = if upper { -amp } else { amp };
                }
            }
        }
    }

    /// `(φ_λ(x))_λ`; all zeros for `x` outside [0, 1].
    pub fn evaluate(&self, x: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension()];
        self.evaluate_into(x, &mut out);
        out
    }

    /// `Σ_λ coeffs_λ φ_λ(x)`, touching only the functions that can be
    /// non-zero at `x`.
    pub fn combine(&self, coeffs: &[f64], x: f64) -> f64 {
        assert_eq!(
            coeffs.len(),
            self.dimension(),
            "coefficient list has wrong length"
        );
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        match *self {
            BasisModel::PiecewisePoly { pieces, degree } => {
                piece_combine(coeffs, x, pieces, degree)
            }
            BasisModel::DyadicPiecewisePoly { level, degree } => {
                piece_combine(coeffs, x, 1 << level, degree)
            }
            _ => {
                let mut buf = vec![0.0; self.dimension()];
                self.evaluate_into(x, &mut buf);
                buf.iter().zip(coeffs).map(|(p, c)| p * c).sum()
            }
        }
    }
}

impl fmt::Display for BasisModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisModel::Trig { m } => write!(f, "trig(m={m}, D={})", self.dimension()),
            BasisModel::PiecewisePoly { pieces, degree } => {
                write!(
                    f,
                    "poly(pieces={pieces}, r={degree}, D={})",
                    self.dimension()
                )
            }
            BasisModel::DyadicPiecewisePoly { level, degree } => {
                write!(f, "dyadic(p={level}, r={degree}, D={})", self.dimension())
            }
            BasisModel::Haar { level } => write!(f, "haar(p={level}, D={})", self.dimension()),
        }
    }
}

/// Piece index of `x ∈ [0, 1]` and its local coordinate in [-1, 1].
fn locate(x: f64, pieces: usize) -> (usize, f64) {
    let scaled = x * pieces as f64;
    let cell = (scaled.floor() as usize).min(pieces - 1);
    (cell, 2.0 * (scaled - cell as f64) - 1.0)
}

/// `√(m(2k+1)) Q_k(t)` for `k = 0..out.len()`, with `Q_k` from the
/// three-term recurrence.
fn legendre_normalized(t: f64, pieces: usize, out: &mut [f64]) {
    let m = pieces as f64;
    let (mut q0, mut q1) = (1.0, t);
    for (k, slot) in out.iter_mut().enumerate() {
        let q = match k {
            0 => 1.0,
            1 => t,
            _ => {
                let kf = k as f64;
                let q2 = ((2.0 * kf - 1.0) * t * q1 - (kf - 1.0) * q0) / kf;
                q0 = q1;
                q1 = q2;
                q2
            }
        };
        *slot = (m * (2 * k + 1) as f64).sqrt() * q;
    }
}

fn piece_combine(coeffs: &[f64], x: f64, pieces: usize, degree: usize) -> f64 {
    let (cell, t) = locate(x, pieces);
    let local = &coeffs[cell * (degree + 1)..][..degree + 1];
    let mut stack = [0.0; 16];
    let mut heap;
    let vals: &mut [f64] = if degree < stack.len() {
        &mut stack[..=degree]
    } else {
        heap = vec![0.0; degree + 1];
        &mut heap
    };
    legendre_normalized(t, pieces, vals);
    vals.iter().zip(local).map(|(p, c)| p * c).sum()
}

/// Dimension cap applied when building a collection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CapRule {
    /// `D_m ≤ n / ln²(n)`.
    LogSquared,
    /// `D_m ≤ √n`.
    SqrtN,
    /// `D_m ≤ √n / ln(n)`, the trigonometric cap of the regression estimator.
    SqrtOverLog,
    /// Trigonometric index range `m ≤ ⌊n/2⌋ − 1`, i.e. `D_m ≤ 2(⌊n/2⌋ − 1) + 1`.
    TrigIndex,
    /// Explicit upper bound on `D_m`.
    Fixed(usize),
}

impl CapRule {
    /// Largest admissible `D_m` for sample size `n`; never above `n`.
    pub fn max_dimension(&self, n: usize) -> usize {
        let nf = n as f64;
        let cap = match *self {
            CapRule::LogSquared => floor_cap(nf / nf.ln().powi(2)),
            CapRule::SqrtN => floor_cap(nf.sqrt()),
            CapRule::SqrtOverLog => floor_cap(nf.sqrt() / nf.ln()),
            CapRule::TrigIndex => (n / 2).checked_sub(1).map_or(0, |m| 2 * m + 1),
            CapRule::Fixed(d) => d,
        };
        cap.min(n)
    }

    /// Cap used by the mean-square estimator for `family`.
    pub fn regression_default(family: BasisFamily) -> Self {
        match family {
            BasisFamily::Trig => CapRule::SqrtOverLog,
            _ => CapRule::LogSquared,
        }
    }
}

fn floor_cap(v: f64) -> usize {
    if v.is_finite() && v > 0.0 {
        v.floor() as usize
    } else {
        0
    }
}

/// All models of `family` with `D_m ≤ cap.max_dimension(n)`, sorted by
/// dimension, then partition index, then degree.
pub fn build_collection(family: BasisFamily, n: usize, cap: CapRule) -> Result<Vec<BasisModel>> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "collections need n >= 2, got {n}"
        )));
    }
    let dmax = cap.max_dimension(n);
    let mut models = Vec::new();
    match family {
        BasisFamily::Trig => {
            models.extend(
                (1..)
                    .map(BasisModel::trig)
                    .take_while(|m| m.dimension() <= dmax),
            );
        }
        BasisFamily::PiecewisePoly { max_degree } => {
            for r in 0..=max_degree {
                models.extend(
                    (1..)
                        .map(|k| BasisModel::piecewise(k, r))
                        .take_while(|m| m.dimension() <= dmax),
                );
            }
        }
        BasisFamily::DyadicPiecewisePoly { max_degree } => {
            for r in 0..=max_degree {
                models.extend(
                    (0..usize::BITS - 1)
                        .map(|p| BasisModel::dyadic(p, r))
                        .take_while(|m| m.dimension() <= dmax),
                );
            }
        }
        BasisFamily::Haar => {
            models.extend(
                (0..usize::BITS - 1)
                    .map(BasisModel::haar)
                    .take_while(|m| m.dimension() <= dmax),
            );
        }
    }
    if models.is_empty() {
        return Err(Error::EmptyCollection { n });
    }
    models.sort_by_key(|m| (m.dimension(), m.order_key()));
    Ok(models)
}
