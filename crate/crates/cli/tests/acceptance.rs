//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. `ACCEPTANCE_ONLY=3,7` runs a subset.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use disthyp::classic::{
    brute_force_max_quadratic, exact_minimax, rounding_autocorrelation, solve_sdp, GameCertificate, GameConfig,
};
use disthyp::gen::{karloff_clique_hypergraph, KarloffSpec};
use disthyp::hypercore::io::parse_instance_json;
use disthyp::hypercore::{uniform_incidence, AggregateQuadratics, Graph, Hypergraph, StochasticIncidence};
use disthyp::objective::{Aggregation, QuadraticFamily};
use disthyp::qsim::{objective_gradient, run_ansatz, train_seeds, AnsatzParams, TrainConfig, ZzOperator};
use disthyp::spins::{quadratic_form, spins_from_index};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned tolerances and budgets.
const KARLOFF_GEN_BUDGET: Duration = Duration::from_secs(1);
const KARLOFF_EXACT_TOL: f64 = 1e-3;
const KARLOFF_GAP_TOL: f64 = 1e-3;
const KARLOFF_EXACT_BUDGET: Duration = Duration::from_secs(5 * 60);
const QAOA_GEI_TARGET: f64 = 0.02;
const QAOA_SEEDS: [u64; 5] = [0, 1, 2, 3, 4];
/// Both QAOA runs together; minutes-scale.
const QAOA_BUDGET: Duration = Duration::from_secs(30 * 60);
const GRAPH_IDENTITY_TOL: f64 = 1e-10;
const GRAPH_SDP_TOL: f64 = 1e-9;
const GRAPH_A_TOL: f64 = 1e-6;
const GW_RATIO: f64 = 0.87856;
const GW_CLOSED_FORM_TOL: f64 = 1e-6;
const GRADIENT_REL_TOL: f64 = 1e-4;
const FD_STEP: f64 = 1e-5;
const ORDERING_SLACK: f64 = 1e-6;
const ORACLE_TOL: f64 = 1e-6;
const IDENTITY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-8;
const ARCSIN_TOL: f64 = 1e-12;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_disthyp")
}

fn disthyp(args: &[&str]) -> Result<(), String> {
    let out = Command::new(bin())
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .map_err(err)?;
    ensure(out.status.success(), || {
        format!("disthyp {} failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr))
    })
}

fn karloff() -> Hypergraph {
    karloff_clique_hypergraph(&KarloffSpec { m: 6, t: 3, b: 1 }).expect("karloff instance")
}

fn rounded_objective(fam: &QuadraticFamily) -> Result<(f64, f64), String> {
    let sol = solve_sdp(fam, 1e-7).map_err(err)?;
    let q = rounding_autocorrelation(sol.point.matrix()).map_err(err)?;
    Ok((sol.value, fam.evaluate(q.matrix()).map_err(err)?.objective))
}

fn c1_karloff_counts() -> Check {
    let dir = tempfile::tempdir().map_err(err)?;
    let out = dir.path().to_str().unwrap();
    let start = Instant::now();
    disthyp(&["gen", "karloff-cliques", "--m", "6", "--t", "3", "--b", "1", "--out", out])?;
    let elapsed = start.elapsed();
    let text = std::fs::read_to_string(dir.path().join("karloff_m6_t3_b1.json")).map_err(err)?;
    let h = parse_instance_json(&text).map_err(err)?;
    ensure(h.n_vertices() == 20, || format!("{} vertices", h.n_vertices()))?;
    ensure(h.n_edges() == 30, || format!("{} edges", h.n_edges()))?;
    ensure(h.edges().iter().all(|e| e.len() == 4), || "an edge is not of size 4".into())?;
    ensure(elapsed < KARLOFF_GEN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("20 vertices, 30 edges of size 4 in {:.3} s", elapsed.as_secs_f64()))
}

fn c2_karloff_exact() -> Check {
    let h = karloff();
    let fam = QuadraticFamily::greatest_expected_imbalance(&h, &uniform_incidence(&h)).map_err(err)?;
    let start = Instant::now();
    let cert = exact_minimax(&fam, &GameConfig::default()).map_err(err)?;
    let elapsed = start.elapsed();
    ensure(cert.primal_value.abs() <= KARLOFF_EXACT_TOL, || format!("value {}", cert.primal_value))?;
    ensure(cert.gap <= KARLOFF_GAP_TOL, || format!("gap {}", cert.gap))?;
    ensure(elapsed < KARLOFF_EXACT_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "value {:.2e}, gap {:.2e}, {} rounds, {:.1} s",
        cert.primal_value,
        cert.gap,
        cert.rounds,
        elapsed.as_secs_f64()
    ))
}

fn c3_karloff_qaoa() -> Check {
    let h = karloff();
    let p = uniform_incidence(&h);
    let cfg = TrainConfig::default();
    let start = Instant::now();

    let gei = QuadraticFamily::greatest_expected_imbalance(&h, &p).map_err(err)?;
    let (_, gei_rounded) = rounded_objective(&gei)?;
    let cost = ZzOperator::from_family(&gei);
    let (reports, best) = train_seeds(&gei, &cost, 3, &cfg, &QAOA_SEEDS).map_err(err)?;
    let gei_qaoa = reports[best].objective;

    let tv = QuadraticFamily::total_variance(&h, &p).map_err(err)?;
    let (_, tv_rounded) = rounded_objective(&tv)?;
    let cost = ZzOperator::from_family(&tv);
    let (reports, best) = train_seeds(&tv, &cost, 2, &cfg, &QAOA_SEEDS).map_err(err)?;
    let tv_qaoa = reports[best].objective;
    let elapsed = start.elapsed();

    let detail = format!(
        "GEI p=3 {gei_qaoa:.3e} (rounded SDP {gei_rounded:.5}), TV p=2 {tv_qaoa:.4} (rounded SDP {tv_rounded:.4}), {:.0} s",
        elapsed.as_secs_f64()
    );
    ensure(gei_qaoa <= QAOA_GEI_TARGET && gei_qaoa < gei_rounded, || detail.clone())?;
    ensure(tv_qaoa >= tv_rounded, || detail.clone())?;
    ensure(elapsed < QAOA_BUDGET, || detail.clone())?;
    Ok(detail)
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let n = rng.random_range(3..=12);
        let density = rng.random_range(0.2..0.8);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::unweighted(n, &edges).expect("valid graph");
        }
    }
}

fn c4_graph_reduction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_form: f64 = 0.0;
    let mut worst_a: f64 = 0.0;
    for _ in 0..50 {
        let g = random_graph(&mut rng);
        let n = g.n_vertices();
        let h = g.to_hypergraph().map_err(err)?;
        let p = uniform_incidence(&h);
        let variance = AggregateQuadratics::new(&h, &p).variance;
        let quarter_l = g.laplacian() * 0.25;
        for i in 0..1usize << n {
            let x = spins_from_index(i, n);
            worst_form = worst_form.max((quadratic_form(&variance, &x) - quadratic_form(&quarter_l, &x)).abs());
        }
        let tv = QuadraticFamily::total_variance(&h, &p).map_err(err)?;
        let gw = QuadraticFamily::new(vec![(quarter_l, 1.0)], Aggregation::Sum).map_err(err)?;
        let a_tv = solve_sdp(&tv, GRAPH_SDP_TOL).map_err(err)?;
        let a_gw = solve_sdp(&gw, GRAPH_SDP_TOL).map_err(err)?;
        worst_a = worst_a.max((a_tv.point.matrix() - a_gw.point.matrix()).amax());
        let q_tv = rounding_autocorrelation(a_tv.point.matrix()).map_err(err)?;
        let q_gw = rounding_autocorrelation(a_gw.point.matrix()).map_err(err)?;
        worst_a = worst_a.max((q_tv.matrix() - q_gw.matrix()).amax());
    }
    let detail = format!("max form error {worst_form:.1e}, max A/Q difference {worst_a:.1e}");
    ensure(worst_form <= GRAPH_IDENTITY_TOL && worst_a <= GRAPH_A_TOL, || detail.clone())?;
    Ok(detail)
}

fn c5_gw_cycle() -> Check {
    let edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let g = Graph::unweighted(5, &edges).map_err(err)?;
    let h = g.to_hypergraph().map_err(err)?;
    let fam = QuadraticFamily::total_variance(&h, &uniform_incidence(&h)).map_err(err)?;
    let sol = solve_sdp(&fam, 1e-10).map_err(err)?;
    let a = sol.point.matrix();
    let closed_form: f64 = edges.iter().map(|&(u, v)| a[(u, v)].acos() / PI).sum();
    let q = rounding_autocorrelation(a).map_err(err)?;
    let pipeline = fam.evaluate(q.matrix()).map_err(err)?.objective;
    let (cut, _) = brute_force_max_quadratic(&(g.laplacian() * 0.25)).map_err(err)?;
    let detail = format!("closed form {closed_form:.6}, pipeline {pipeline:.6}, brute-force cut {cut}");
    ensure((cut - 4.0).abs() < 1e-12, || detail.clone())?;
    ensure(closed_form >= GW_RATIO * cut, || detail.clone())?;
    ensure((closed_form - pipeline).abs() <= GW_CLOSED_FORM_TOL, || detail.clone())?;
    Ok(detail)
}

/// `m` distinct random edges (fewer if the draws keep colliding), so every
/// weight is one.
fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Hypergraph {
    for _ in 0..100 {
        let h = random_edges(rng, n, m);
        if h.n_edges() == m {
            return h;
        }
    }
    random_edges(rng, n, 1)
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Hypergraph {
    let edges = (0..m)
        .map(|_| {
            let size = rng.random_range(2..=n.min(4));
            let mut vs: Vec<usize> = (0..n).collect();
            for i in 0..size {
                let j = rng.random_range(i..n);
                vs.swap(i, j);
            }
            vs.truncate(size);
            vs
        })
        .collect();
    Hypergraph::unweighted(n, edges).expect("valid hypergraph")
}

fn random_incidence(rng: &mut ChaCha8Rng, h: &Hypergraph) -> StochasticIncidence {
    let shares: Vec<Vec<f64>> = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|_| rng.random_range(0.2..1.0)).collect())
        .collect();
    StochasticIncidence::from_shares(h, &shares).expect("positive shares")
}

fn c6_gradients() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let n = rng.random_range(2..=6);
        let layers = rng.random_range(1..=3);
        let m = rng.random_range(1..=4);
        let h = random_hypergraph(&mut rng, n, m);
        let inc = random_incidence(&mut rng, &h);
        let fam = if k % 2 == 0 {
            QuadraticFamily::greatest_expected_imbalance(&h, &inc)
        } else {
            QuadraticFamily::total_variance(&h, &inc)
        }
        .map_err(err)?;
        let cost = ZzOperator::from_family(&fam);
        let params = AnsatzParams::random(layers, n, cost.len(), 1.0, &mut rng);
        let tau = 0.1;
        let adjoint = objective_gradient(&params, &fam, &cost, tau).map_err(err)?.gradient;
        let flat = params.flatten();
        let loss = |v: &[f64]| -> Result<f64, String> {
            let p = AnsatzParams::from_flat(layers, n, cost.len(), v).map_err(err)?;
            Ok(objective_gradient(&p, &fam, &cost, tau).map_err(err)?.loss)
        };
        let mut fd = Vec::with_capacity(flat.len());
        for i in 0..flat.len() {
            let mut up = flat.clone();
            let mut down = flat.clone();
            up[i] += FD_STEP;
            down[i] -= FD_STEP;
            fd.push((loss(&up)? - loss(&down)?) / (2.0 * FD_STEP));
        }
        let diff: f64 = adjoint.iter().zip(&fd).map(|(a, f)| (a - f).powi(2)).sum::<f64>().sqrt();
        let scale: f64 = fd.iter().map(|f| f * f).sum::<f64>().sqrt().max(1e-8);
        worst = worst.max(diff / scale);
    }
    ensure(worst <= GRADIENT_REL_TOL, || format!("worst relative error {worst:.2e}"))?;
    Ok(format!("20 configurations, worst relative error {worst:.2e}"))
}

fn csv_records(path: &Path) -> Result<Vec<BTreeMap<String, String>>, String> {
    let mut r = csv::Reader::from_path(path).map_err(err)?;
    r.deserialize().map(|row| row.map_err(err)).collect()
}

fn num(row: &BTreeMap<String, String>, key: &str) -> Result<f64, String> {
    row.get(key)
        .ok_or_else(|| format!("missing column {key}"))?
        .parse()
        .map_err(|_| format!("column {key} is not a number: {:?}", row[key]))
}

fn cli(args: &[&str]) -> Result<Vec<PathBuf>, String> {
    use clap::Parser;
    let cli = disthyp_cli::Cli::try_parse_from(std::iter::once("disthyp").chain(args.iter().copied())).map_err(err)?;
    disthyp_cli::run(cli).map_err(err)
}

fn c7_solver_ordering() -> Check {
    let dir = tempfile::tempdir().map_err(err)?;
    let inst = dir.path().join("instances");
    let out = dir.path().join("out");
    let inst_s = inst.to_str().unwrap();
    for (mu, seed) in [("3", "300"), ("4", "400"), ("5", "500")] {
        cli(&["gen", "poisson", "--n", "12", "--m", "16", "--mu", mu, "--seed", seed, "--count", "10", "--out", inst_s])?;
    }
    cli(&["compare", "--dir", inst_s, "--exact-eps", "1e-7", "--out", out.to_str().unwrap()])?;
    let rows = csv_records(&out.join("compare.csv"))?;
    ensure(rows.len() == 90, || format!("{} compare rows, expected 30 instances × 3 problems", rows.len()))?;
    let mut violations = Vec::new();
    let mut wins: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for row in &rows {
        let (relax, exact, rounded, qaoa) = (num(row, "sdp_bound")?, num(row, "exact")?, num(row, "sdp")?, num(row, "qaoa")?);
        let problem = row["problem"].clone();
        // Orient every problem as a minimisation.
        let s = if problem == "gei" { 1.0 } else { -1.0 };
        let chain = [("relaxation ≤ exact", relax, exact), ("exact ≤ rounded", exact, rounded), ("exact ≤ qaoa", exact, qaoa)];
        for (what, lo, hi) in chain {
            if s * lo > s * hi + ORDERING_SLACK {
                violations.push(format!("{} {problem}: {what} fails ({lo} vs {hi})", row["instance"]));
            }
        }
        let w = wins.entry(problem).or_default();
        w.0 += usize::from(row["qaoa_wins"] == "true");
        w.1 += 1;
    }
    ensure(out.join("compare_summary.json").exists(), || "no win-rate summary".into())?;
    let soft: Vec<String> = wins.iter().map(|(p, (w, t))| format!("{p} {w}/{t}")).collect();
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("90 chains hold; QAOA beats rounding (soft): {}", soft.join(", ")))
}

/// Payoff `G[i][x] = ⟨Mᵢ, x xᵀ⟩` over half the cube (the other half mirrors it).
fn payoff(fam: &QuadraticFamily) -> Vec<Vec<f64>> {
    let n = fam.dim();
    let xs: Vec<Vec<i8>> = (0..1usize << (n - 1)).map(|i| spins_from_index(i, n)).collect();
    fam.members().iter().map(|m| xs.iter().map(|x| quadratic_form(m, x)).collect()).collect()
}

/// Certificate inequalities checked against the full payoff matrix.
fn verify_against_payoff(fam: &QuadraticFamily, cert: &GameCertificate, g: &[Vec<f64>]) -> Result<f64, String> {
    let n = fam.dim();
    let mut primal_scores = vec![0.0; g.len()];
    for (x, prob) in cert.primal.support() {
        let canon: Vec<i8> = if x[n - 1] == 1 { x.clone() } else { x.iter().map(|s| -s).collect() };
        let idx = disthyp::spins::index_of(&canon);
        for (i, row) in g.iter().enumerate() {
            primal_scores[i] += prob * row[idx];
        }
    }
    let minimises = fam.minimises();
    let primal = if minimises {
        primal_scores.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    } else {
        primal_scores.iter().copied().fold(f64::INFINITY, f64::min)
    };
    let mixed: Vec<f64> = (0..g[0].len()).map(|x| g.iter().zip(&cert.dual).map(|(row, l)| l * row[x]).sum()).collect();
    let dual = if minimises {
        mixed.iter().copied().fold(f64::INFINITY, f64::min)
    } else {
        mixed.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    };
    ensure((primal - cert.primal_value).abs() <= ORACLE_TOL, || format!("primal {primal} vs {}", cert.primal_value))?;
    ensure((dual - cert.dual_value).abs() <= ORACLE_TOL, || format!("dual {dual} vs {}", cert.dual_value))?;
    let gap = if minimises { primal - dual } else { dual - primal };
    ensure(gap <= ORACLE_TOL, || format!("exhaustive gap {gap}"))?;
    Ok(primal)
}

/// Exact game value of a two-member family: the optimum of the piecewise
/// linear envelope over the member weight lies at an endpoint or a crossing
/// of two lines.
fn breakpoint_value(fam: &QuadraticFamily, g: &[Vec<f64>]) -> f64 {
    let minimises = fam.minimises();
    let envelope = |l: f64| {
        let vals = g[0].iter().zip(&g[1]).map(|(a, b)| l * a + (1.0 - l) * b);
        if minimises {
            vals.fold(f64::INFINITY, f64::min)
        } else {
            vals.fold(f64::NEG_INFINITY, f64::max)
        }
    };
    let mut candidates = vec![0.0, 1.0];
    let lines: Vec<(f64, f64)> = g[0].iter().zip(&g[1]).map(|(a, b)| (a - b, *b)).collect();
    for (i, &(s1, c1)) in lines.iter().enumerate() {
        for &(s2, c2) in &lines[i + 1..] {
            if (s1 - s2).abs() > 1e-14 {
                let l = (c2 - c1) / (s1 - s2);
                if (0.0..=1.0).contains(&l) {
                    candidates.push(l);
                }
            }
        }
    }
    let vals = candidates.into_iter().map(envelope);
    if minimises {
        vals.fold(f64::NEG_INFINITY, f64::max)
    } else {
        vals.fold(f64::INFINITY, f64::min)
    }
}

fn c8_exact_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cfg = GameConfig::with_eps(1e-7);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for k in 0..40 {
        let n = rng.random_range(3..=8);
        let m = if k < 16 { 2 } else { rng.random_range(3..=8) };
        let h = random_hypergraph(&mut rng, n, m);
        let inc = if k % 3 == 0 { uniform_incidence(&h) } else { random_incidence(&mut rng, &h) };
        let fam = if k % 2 == 0 {
            QuadraticFamily::greatest_expected_imbalance(&h, &inc)
        } else {
            QuadraticFamily::least_expected_variance(&h, &inc)
        }
        .map_err(err)?;
        let cert = exact_minimax(&fam, &cfg).map_err(err)?;
        let g = payoff(&fam);
        let value = verify_against_payoff(&fam, &cert, &g).map_err(|e| format!("instance {k}: {e}"))?;
        if fam.len() == 2 {
            let oracle = breakpoint_value(&fam, &g);
            worst = worst.max((oracle - value).abs());
            ensure((oracle - value).abs() <= ORACLE_TOL, || format!("instance {k}: {value} vs breakpoint {oracle}"))?;
        }
        count += 1;
    }
    Ok(format!("{count} families verified exhaustively; worst two-member deviation {worst:.1e}"))
}

fn c9_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst, mut worst_gei): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let n = rng.random_range(2..=8);
        let m = rng.random_range(1..=6);
        let h = random_hypergraph(&mut rng, n, m);
        let inc = random_incidence(&mut rng, &h);
        for q in disthyp::hypercore::edge_quadratics(&inc) {
            let sum = q.imbalance_dense(n) + q.variance_dense(n);
            for i in 0..1usize << n {
                let x = spins_from_index(i, n);
                worst = worst.max((quadratic_form(&sum, &x) - 1.0).abs());
            }
        }
        let uniform = uniform_incidence(&h);
        let gei = QuadraticFamily::greatest_expected_imbalance(&h, &uniform).map_err(err)?;
        let lev = QuadraticFamily::least_expected_variance(&h, &uniform).map_err(err)?;
        let cost = ZzOperator::from_family(&gei);
        let params = AnsatzParams::random(2, n, cost.len(), 1.0, &mut rng);
        let state = run_ansatz(&params, &cost).map_err(err)?;
        let q = state.autocorrelation();
        let qm = q.matrix();
        let g = gei.evaluate(qm).map_err(err)?.objective;
        let l = lev.evaluate(qm).map_err(err)?.objective;
        worst_gei = worst_gei.max((g - (1.0 - l)).abs());
        ensure((0..n).all(|i| qm[(i, i)] == 1.0), || "Q diagonal is not one".into())?;
        ensure(qm.iter().all(|v| v.abs() <= 1.0), || "Q entry outside [-1, 1]".into())?;
        let min_eig = qm.clone().symmetric_eigen().eigenvalues.min();
        ensure(min_eig >= -PSD_TOL, || format!("Q eigenvalue {min_eig}"))?;
    }
    ensure(worst <= IDENTITY_TOL && worst_gei <= IDENTITY_TOL, || {
        format!("per-edge identity error {worst:.1e}, GEI/LEV error {worst_gei:.1e}")
    })?;
    let a = DMatrix::from_fn(3, 3, |i, j| if i == j { 1.0 } else { 0.5 });
    let q = rounding_autocorrelation(&a).map_err(err)?;
    let off = q.matrix()[(0, 1)];
    ensure((off - 1.0 / 3.0).abs() <= ARCSIN_TOL, || format!("arcsin case gives {off}"))?;
    Ok(format!("per-edge error {worst:.1e}, GEI/LEV error {worst_gei:.1e}; arcsin(1/2) case {off:.15}"))
}

fn run_all_commands(root: &Path) -> Result<(), String> {
    let s = |p: PathBuf| p.to_str().unwrap().to_string();
    let inst = s(root.join("instances"));
    let out = s(root.join("out"));
    disthyp(&["gen", "poisson", "--n", "8", "--m", "10", "--mu", "3", "--seed", "11", "--count", "2", "--out", &inst])?;
    disthyp(&["gen", "karloff-cliques", "--m", "6", "--t", "3", "--b", "1", "--out", &s(root.join("karloff"))])?;
    let first = s(root.join("instances/poisson_n8_m10_mu3_s11.json"));
    let second = s(root.join("instances/poisson_n8_m10_mu3_s12.json"));
    for solver in ["qaoa", "sdp", "exact"] {
        disthyp(&["solve", "--instance", &first, "--problem", "gei", "--solver", solver, "--p", "2", "--restarts", "2", "--out", &out])?;
    }
    disthyp(&["solve", "--instance", &first, "--problem", "total_variance", "--solver", "brute", "--out", &out])?;
    disthyp(&[
        "pareto", "--instance", &first, "--instance2", &second, "--solvers", "qaoa,sdp,exact", "--alpha-count", "3", "--p", "1",
        "--warm-start", "--out", &out,
    ])?;
    disthyp(&["sweep-layers", "--instance", &first, "--problem", "lev", "--max-p", "2", "--out", &out])?;
    disthyp(&["compare", "--dir", &inst, "--max-iters", "60", "--out", &out])?;
    Ok(())
}

fn files(root: &Path) -> Result<BTreeMap<PathBuf, Vec<u8>>, String> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).map_err(err)? {
            let path = entry.map_err(err)?.path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_path_buf();
                out.insert(rel, std::fs::read(&path).map_err(err)?);
            }
        }
    }
    Ok(out)
}

fn c10_reproducibility() -> Check {
    let a = tempfile::tempdir().map_err(err)?;
    let b = tempfile::tempdir().map_err(err)?;
    run_all_commands(a.path())?;
    run_all_commands(b.path())?;
    let (fa, fb) = (files(a.path())?, files(b.path())?);
    ensure(fa.keys().eq(fb.keys()), || "the runs wrote different file sets".into())?;
    let plots = fa.keys().filter(|p| p.extension().is_some_and(|e| e == "csv" || e == "svg")).count();
    let differing: Vec<String> = fa.iter().filter(|(k, v)| fb[*k] != **v).map(|(k, _)| k.display().to_string()).collect();
    ensure(plots >= 8, || format!("only {plots} CSV/SVG outputs"))?;
    ensure(differing.is_empty(), || format!("differing outputs: {}", differing.join(", ")))?;
    Ok(format!("{} files ({plots} CSV/SVG) byte-identical across reruns", fa.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check); 10] = [
        (1, "Karloff pipeline counts", c1_karloff_counts),
        (2, "Karloff GEI optimum", c2_karloff_exact),
        (3, "Karloff QAOA", c3_karloff_qaoa),
        (4, "graph reduction", c4_graph_reduction),
        (5, "GW sanity on the 5-cycle", c5_gw_cycle),
        (6, "gradient correctness", c6_gradients),
        (7, "solver ordering", c7_solver_ordering),
        (8, "exact-solver oracle equivalence", c8_exact_oracle),
        (9, "identity suite", c9_identities),
        (10, "reproducibility", c10_reproducibility),
    ];
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|s| s.trim().parse().ok()).collect());
    let mut failed = 0;
    for (id, name, f) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
