#![allow(dead_code)]

use curstat::bases::{BasisModel, DEFAULT_MAX_DEGREE};
use curstat::quadrature::GaussLegendre;

/// Composite Gauss-Legendre nodes aligned with the model's breakpoints,
/// at least `min_nodes` in total.
pub fn quadrature_for(model: &BasisModel, min_nodes: usize) -> Vec<(f64, f64)> {
    const ORDER: usize = 20;
    let bp = model.breakpoints();
    let panels = bp.len() - 1;
    let per_panel = min_nodes.div_ceil(panels * ORDER).max(1);
    GaussLegendre::new(ORDER).composite_points(&bp, per_panel)
}

/// Largest entry of `|G − I|`, with `G` the quadrature Gram matrix.
pub fn gram_residual(model: &BasisModel) -> f64 {
    let d = model.dimension();
    let mut gram = vec![0.0; d * d];
    let mut phi = vec![0.0; d];
    for (x, w) in quadrature_for(model, 2048) {
        model.evaluate_into(x, &mut phi);
        for i in 0..d {
            if phi[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                gram[i * d + j] += w * phi[i] * phi[j];
            }
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[i * d + j] - target).abs());
        }
    }
    worst
}

/// Every model of every family with `D_m ≤ dmax` (polynomial degrees up to
/// the default maximum).
pub fn all_models(dmax: usize) -> Vec<BasisModel> {
    let mut out = Vec::new();
    out.extend(
        (1..)
            .map(BasisModel::trig)
            .take_while(|m| m.dimension() <= dmax),
    );
    for r in 0..=DEFAULT_MAX_DEGREE {
        out.extend(
            (1..)
                .map(|k| BasisModel::piecewise(k, r))
                .take_while(|m| m.dimension() <= dmax),
        );
        out.extend(
            (0..)
                .map(|p| BasisModel::dyadic(p, r))
                .take_while(|m| m.dimension() <= dmax),
        );
    }
    out.extend(
        (0..)
            .map(BasisModel::haar)
            .take_while(|m| m.dimension() <= dmax),
    );
    out
}

/// `max_x Σ_λ φ_λ(x)²` over `points` evenly spaced points of [0, 1].
pub fn max_kernel_diagonal(model: &BasisModel, points: usize) -> f64 {
    let mut phi = vec![0.0; model.dimension()];
    (0..points)
        .map(|k| {
            model.evaluate_into(k as f64 / (points - 1) as f64, &mut phi);
            phi.iter().map(|v| v * v).sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// `∫_0^1 (f − g)²` by composite quadrature on `breakpoints`.
pub fn l2_distance_sq<F: Fn(f64) -> f64, G: Fn(f64) -> f64>(
    f: F,
    g: G,
    breakpoints: &[f64],
) -> f64 {
    GaussLegendre::new(20)
        .composite_points(breakpoints, 4)
        .into_iter()
        .map(|(x, w)| w * (f(x) - g(x)).powi(2))
        .sum()
}

/// `F̂(U_(i)) = max_{j ≤ i} min_{k ≥ i} mean(δ_(j..=k))` by direct triple loop.
pub fn brute_force_maxmin(sorted_delta: &[u8]) -> Vec<f64> {
    let n = sorted_delta.len();
    (0..n)
        .map(|i| {
            let mut best = f64::NEG_INFINITY;
            for j in 0..=i {
                let mut inner = f64::INFINITY;
                for k in i..n {
                    let ones: usize = sorted_delta[j..=k].iter().map(|&d| usize::from(d)).sum();
                    inner = inner.min(ones as f64 / (k - j + 1) as f64);
                }
                best = best.max(inner);
            }
            best
        })
        .collect()
}
