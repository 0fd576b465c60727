mod common;

use common::{min_eigenvalue, weighted_incidence};
use disthyp::objective::QuadraticFamily;
use disthyp::qsim::{run_ansatz, train, AnsatzParams, Statevector, TrainConfig, ZzOperator};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params(n: usize, pairs: usize, layers: usize, seed: u64) -> AnsatzParams {
    AnsatzParams::random(layers, n, pairs, 1.5, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn layers_preserve_the_norm((h, _) in weighted_incidence(8, 5, 4), layers in 1usize..4, seed in any::<u64>()) {
        let cost = ZzOperator::from_hypergraph(&h);
        let a = params(h.n_vertices(), cost.len(), layers, seed);
        let mut s = Statevector::plus(h.n_vertices()).unwrap();
        for l in 0..layers {
            s.apply_cost_layer(&a.gammas[l], &cost).unwrap();
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
            s.apply_mixer_layer(&a.betas[l]).unwrap();
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
        }
        // The layer-by-layer full simulation and the ansatz agree.
        let ansatz = run_ansatz(&a, &cost).unwrap();
        for (x, y) in ansatz.amplitudes().iter().zip(s.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn correlations_form_a_valid_autocorrelation((h, _) in weighted_incidence(8, 5, 4), seed in any::<u64>()) {
        let cost = ZzOperator::from_hypergraph(&h);
        let q = run_ansatz(&params(h.n_vertices(), cost.len(), 2, seed), &cost).unwrap().autocorrelation();
        let m = q.matrix();
        prop_assert!((0..m.nrows()).all(|i| m[(i, i)] == 1.0));
        prop_assert!(m.iter().all(|v| v.abs() <= 1.0));
        prop_assert!(min_eigenvalue(m) >= -1e-8);
    }

    #[test]
    fn output_state_is_flip_symmetric((h, _) in weighted_incidence(7, 5, 4), seed in any::<u64>()) {
        let cost = ZzOperator::from_hypergraph(&h);
        let s = run_ansatz(&params(h.n_vertices(), cost.len(), 3, seed), &cost).unwrap();
        let amps = s.amplitudes();
        let all = amps.len() - 1;
        for (x, a) in amps.iter().enumerate() {
            prop_assert!((a - amps[all ^ x]).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn best_so_far_is_monotone_and_runs_repeat((h, p) in weighted_incidence(6, 4, 4), seed in any::<u64>(), gei in any::<bool>()) {
        let fam = if gei {
            QuadraticFamily::greatest_expected_imbalance(&h, &p)
        } else {
            QuadraticFamily::total_variance(&h, &p)
        }
        .unwrap();
        let cost = ZzOperator::from_family(&fam);
        let cfg = TrainConfig { max_iters: 40, seed, ..TrainConfig::default() };
        let a = train(&fam, &cost, 2, &cfg).unwrap();
        let losses: Vec<f64> = a.best_trace.iter().map(|&o| fam.loss(o)).collect();
        prop_assert!(losses.windows(2).all(|w| w[1] <= w[0]));
        let b = train(&fam, &cost, 2, &cfg).unwrap();
        prop_assert_eq!(a.trace, b.trace);
        prop_assert_eq!(a.params, b.params);
    }
}
