mod common;

use common::{all_spins, unit_hypergraph, weighted_incidence};
use disthyp::classic::brute_force_max_quadratic;
use disthyp::hypercore::uniform_incidence;
use disthyp::objective::{autocorrelation_of, smooth_max, QuadraticFamily, SpinDistribution};
use disthyp::spins::spins_from_index;
use nalgebra::DMatrix;
use proptest::prelude::*;

/// A distribution on up to `k` distinct spin vectors with positive weights.
fn distribution(n: usize, raw: &[(usize, f64)]) -> SpinDistribution {
    let mut support: Vec<(Vec<i8>, f64)> = Vec::new();
    for &(idx, w) in raw {
        let x = spins_from_index(idx % (1 << n), n);
        if let Some(entry) = support.iter_mut().find(|(y, _)| *y == x) {
            entry.1 += w;
        } else {
            support.push((x, w));
        }
    }
    let total: f64 = support.iter().map(|s| s.1).sum();
    SpinDistribution::new(n, support.into_iter().map(|(x, w)| (x, w / total)).collect()).unwrap()
}

fn raw_support() -> impl Strategy<Value = Vec<(usize, f64)>> {
    prop::collection::vec((any::<usize>(), 0.05f64..1.0), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimax_dominates_maximin_dominates_zero((h, p) in weighted_incidence(8, 6, 5), raw in raw_support()) {
        let q = autocorrelation_of(&distribution(h.n_vertices(), &raw)).into_matrix();
        for imbalance in [true, false] {
            let members: Vec<(DMatrix<f64>, f64)> = disthyp::hypercore::edge_quadratics(&p)
                .iter()
                .zip(h.weights())
                .map(|(e, &w)| {
                    let m = if imbalance { e.imbalance_dense(h.n_vertices()) } else { e.variance_dense(h.n_vertices()) };
                    (m, w)
                })
                .collect();
            let max = QuadraticFamily::new(members.clone(), disthyp::objective::Aggregation::Minimax).unwrap();
            let min = QuadraticFamily::new(members, disthyp::objective::Aggregation::Maximin).unwrap();
            let (hi, lo) = (max.evaluate(&q).unwrap().objective, min.evaluate(&q).unwrap().objective);
            prop_assert!(hi >= lo - 1e-12 && lo >= -1e-12);
        }
    }

    #[test]
    fn gei_complements_lev(h in unit_hypergraph(8, 6, 5), raw in raw_support()) {
        let p = uniform_incidence(&h);
        let q = autocorrelation_of(&distribution(h.n_vertices(), &raw)).into_matrix();
        let gei = QuadraticFamily::greatest_expected_imbalance(&h, &p).unwrap().evaluate(&q).unwrap().objective;
        let lev = QuadraticFamily::least_expected_variance(&h, &p).unwrap().evaluate(&q).unwrap().objective;
        prop_assert!((gei - (1.0 - lev)).abs() <= 1e-12);
    }

    #[test]
    fn total_variance_is_linear_in_q(
        (h, p) in weighted_incidence(8, 6, 5),
        a in raw_support(),
        b in raw_support(),
        t in 0.0f64..1.0,
    ) {
        let n = h.n_vertices();
        let fam = QuadraticFamily::total_variance(&h, &p).unwrap();
        let qa = autocorrelation_of(&distribution(n, &a)).into_matrix();
        let qb = autocorrelation_of(&distribution(n, &b)).into_matrix();
        let mixed = &qa * t + &qb * (1.0 - t);
        let lhs = fam.evaluate(&mixed).unwrap().objective;
        let rhs = t * fam.evaluate(&qa).unwrap().objective + (1.0 - t) * fam.evaluate(&qb).unwrap().objective;
        prop_assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn total_variance_optimum_is_a_point_mass((h, p) in weighted_incidence(10, 6, 5), raw in raw_support()) {
        let n = h.n_vertices();
        let fam = QuadraticFamily::total_variance(&h, &p).unwrap();
        let best_point = all_spins(n)
            .map(|x| fam.evaluate(autocorrelation_of(&SpinDistribution::point_mass(x).unwrap()).matrix()).unwrap().objective)
            .fold(f64::NEG_INFINITY, f64::max);
        let mixed = fam.evaluate(autocorrelation_of(&distribution(n, &raw)).matrix()).unwrap().objective;
        prop_assert!(mixed <= best_point + 1e-12);
        let (brute, _) = brute_force_max_quadratic(&fam.combined_matrix().unwrap()).unwrap();
        prop_assert!((brute - best_point).abs() <= 1e-10);
    }

    #[test]
    fn smooth_max_is_close_at_low_temperature(values in prop::collection::vec(-10.0f64..10.0, 1..20)) {
        let tau = 1e-3;
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let gap = smooth_max(&values, tau).unwrap() - max;
        prop_assert!(gap >= -1e-12 && gap <= tau * (values.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn flipped_distribution_has_the_same_autocorrelation(n in 1usize..8, raw in raw_support()) {
        let d = distribution(n, &raw);
        prop_assert_eq!(autocorrelation_of(&d), autocorrelation_of(&d.flipped()));
    }
}
