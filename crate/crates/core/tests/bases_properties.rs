mod common;

use curstat::bases::BasisModel;
use proptest::prelude::*;

use common::{all_models, gram_residual, max_kernel_diagonal, quadrature_for};

#[test]
fn gram_matrices_are_identity() {
    for model in all_models(64) {
        let r = gram_residual(&model);
        assert!(r < 1e-8, "{model}: Gram residual {r:e}");
    }
}

#[test]
fn norm_connection_holds_on_grid() {
    for model in all_models(64) {
        let bound = model.phi0_sq() * model.dimension() as f64;
        let max = max_kernel_diagonal(&model, 10_000);
        assert!(max <= bound * (1.0 + 1e-10), "{model}: {max} > {bound}");
    }
}

#[test]
fn trig_and_haar_nest_as_prefixes() {
    for x in (0..=400).map(|k| k as f64 / 400.0) {
        for m in 1..8 {
            let small = BasisModel::trig(m).evaluate(x);
            let big = BasisModel::trig(m + 3).evaluate(x);
            assert_eq!(small[..], big[..small.len()]);
        }
        for p in 0..6 {
            let small = BasisModel::haar(p).evaluate(x);
            let big = BasisModel::haar(p + 1).evaluate(x);
            assert_eq!(small[..], big[..small.len()]);
        }
    }
}

#[test]
fn dyadic_models_nest_as_spaces() {
    // Each function of (p, r) equals its projection onto (p + 1, r).
    for r in 0..4 {
        for p in 0..4 {
            let coarse = BasisModel::dyadic(p, r);
            let fine = BasisModel::dyadic(p + 1, r);
            let nodes = quadrature_for(&fine, 2048);
            for lambda in 0..coarse.dimension() {
                let f = |x: f64| coarse.evaluate(x)[lambda];
                let coeffs: Vec<f64> = (0..fine.dimension())
                    .map(|mu| {
                        nodes
                            .iter()
                            .map(|&(x, w)| w * f(x) * fine.evaluate(x)[mu])
                            .sum()
                    })
                    .collect();
                for &(x, _) in nodes.iter().step_by(7) {
                    let back = fine.combine(&coeffs, x);
                    assert!((back - f(x)).abs() < 1e-9, "{coarse} λ={lambda} at {x}");
                }
            }
        }
    }
}

fn any_model() -> impl Strategy<Value = BasisModel> {
    prop_oneof![
        (1usize..20).prop_map(BasisModel::trig),
        (1usize..12, 0usize..10).prop_map(|(k, r)| BasisModel::piecewise(k, r)),
        (0u32..5, 0usize..10).prop_map(|(p, r)| BasisModel::dyadic(p, r)),
        (0u32..7).prop_map(BasisModel::haar),
    ]
}

proptest! {
    #[test]
    fn vanishes_outside_unit_interval(model in any_model(), below in 1e-9f64..5.0, above in 1e-9f64..5.0) {
        prop_assert!(model.evaluate(-below).iter().all(|&v| v == 0.0));
        prop_assert!(model.evaluate(1.0 + above).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn combine_agrees_with_dense_evaluation(model in any_model(), x in 0.0f64..=1.0, seed in 0u64..1000) {
        let coeffs: Vec<f64> = (0..model.dimension())
            .map(|i| ((i as u64 * 7919 + seed) % 97) as f64 / 48.5 - 1.0)
            .collect();
        let dense: f64 = model.evaluate(x).iter().zip(&coeffs).map(|(a, b)| a * b).sum();
        prop_assert!((dense - model.combine(&coeffs, x)).abs() < 1e-9);
    }
}
