#![no_main]

use disthyp::hypercore::{parse_incidence, Hypergraph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let h = Hypergraph::unweighted(5, vec![vec![0, 1, 2], vec![1, 3], vec![0, 2, 3, 4]]).unwrap();
    if let Ok(p) = parse_incidence(data, &h) {
        for e in 0..p.n_edges() {
            let total: f64 = p.column(e).iter().map(|(_, s)| s).sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }
});
