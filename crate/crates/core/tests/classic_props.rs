mod common;

use common::{min_eigenvalue, unit_hypergraph, weighted_incidence};
use disthyp::classic::{exact_minimax, rounding_autocorrelation, sample_hyperplane, solve_sdp, GameCertificate, GameConfig};
use disthyp::hypercore::uniform_incidence;
use disthyp::objective::{autocorrelation_of, QuadraticFamily, SpinDistribution};
use disthyp::spins::spins_from_index;
use proptest::prelude::*;

const EPS: f64 = 1e-6;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn relaxation_bounds_exact_bounds_rounding((h, p) in weighted_incidence(6, 5, 4)) {
        let fam = QuadraticFamily::greatest_expected_imbalance(&h, &p).unwrap();
        let sdp = solve_sdp(&fam, 1e-8).unwrap();
        let exact = exact_minimax(&fam, &GameConfig::with_eps(EPS)).unwrap();
        let rounded = fam.evaluate(rounding_autocorrelation(sdp.point.matrix()).unwrap().matrix()).unwrap().objective;
        prop_assert!(sdp.value <= exact.value() + EPS, "sdp {} exact {}", sdp.value, exact.value());
        prop_assert!(exact.dual_value <= rounded + EPS, "exact {} rounded {}", exact.dual_value, rounded);
        prop_assert!(exact.gap <= EPS);
    }

    #[test]
    fn relaxation_point_is_in_the_elliptope((h, p) in weighted_incidence(7, 5, 4), tv in any::<bool>()) {
        let fam = if tv {
            QuadraticFamily::total_variance(&h, &p)
        } else {
            QuadraticFamily::least_expected_variance(&h, &p)
        }
        .unwrap();
        let a = solve_sdp(&fam, 1e-8).unwrap().point.matrix().clone();
        prop_assert!((0..a.nrows()).all(|i| (a[(i, i)] - 1.0).abs() <= 1e-9));
        prop_assert!(min_eigenvalue(&a) >= -1e-8);
    }

    #[test]
    fn sampled_rounding_matches_the_closed_form((h, p) in weighted_incidence(6, 5, 4), seed in any::<u64>()) {
        let fam = QuadraticFamily::total_variance(&h, &p).unwrap();
        let point = solve_sdp(&fam, 1e-8).unwrap().point;
        let closed = rounding_autocorrelation(point.matrix()).unwrap();
        let n_samples = 20_000;
        let sampled = autocorrelation_of(&sample_hyperplane(point.factor(), n_samples, seed).unwrap());
        let worst = (closed.matrix() - sampled.matrix()).abs().max();
        prop_assert!(worst <= 4.0 / (n_samples as f64).sqrt(), "deviation {worst}");
    }

    #[test]
    fn certificates_recompute_their_values((h, p) in weighted_incidence(6, 5, 4), raw in prop::collection::vec((any::<usize>(), 0.1f64..1.0), 1..6), lam in prop::collection::vec(0.0f64..1.0, 5)) {
        let n = h.n_vertices();
        let fam = QuadraticFamily::greatest_expected_imbalance(&h, &p).unwrap();
        let mut support: Vec<(Vec<i8>, f64)> = Vec::new();
        for (idx, w) in raw {
            let x = spins_from_index(idx % (1 << n), n);
            match support.iter_mut().find(|(y, _)| *y == x) {
                Some(s) => s.1 += w,
                None => support.push((x, w)),
            }
        }
        let total: f64 = support.iter().map(|s| s.1).sum();
        let primal = SpinDistribution::new(n, support.into_iter().map(|(x, w)| (x, w / total)).collect()).unwrap();
        let mut dual: Vec<f64> = lam[..fam.len()].iter().map(|l| l + 1e-3).collect();
        let s: f64 = dual.iter().sum();
        dual.iter_mut().for_each(|l| *l /= s);
        let cert = GameCertificate::from_strategies(&fam, primal.clone(), dual).unwrap();
        let direct = fam.evaluate(autocorrelation_of(&primal).matrix()).unwrap().objective;
        prop_assert!((cert.primal_value - direct).abs() <= 1e-9);
        prop_assert!(cert.primal_value - cert.dual_value >= -1e-9);
        prop_assert!(cert.verify(&fam).is_ok());
    }

    #[test]
    fn lev_and_gei_optima_are_complementary(h in unit_hypergraph(6, 5, 4)) {
        let p = uniform_incidence(&h);
        let cfg = GameConfig::with_eps(EPS);
        let gei = exact_minimax(&QuadraticFamily::greatest_expected_imbalance(&h, &p).unwrap(), &cfg).unwrap();
        let lev = exact_minimax(&QuadraticFamily::least_expected_variance(&h, &p).unwrap(), &cfg).unwrap();
        prop_assert!((lev.value() - (1.0 - gei.value())).abs() <= 4.0 * EPS);
    }
}
