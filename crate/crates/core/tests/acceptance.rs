//! Shipping checklist: twelve end-to-end criteria, run sequentially, one
//! PASS/FAIL line each. The process exits nonzero if any criterion fails.
//!
//! Runs without the libtest harness so the per-criterion lines are always
//! printed, in order, with timings.

use std::cell::OnceCell;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use wasym::assignment::{brute_force_assignment, solve_assignment, CostMatrix};
use wasym::bootstrap::{bootstrap_reflection_estimate, observed_cost_range, BootstrapConfig};
use wasym::bounds::{
    compare_symmetrization_bounds_generator, nemirovski_bounds, BoundConfig, BoundReport,
    CorrectionEstimator,
};
use wasym::metric::MetricKind;
use wasym::rng::{stream_seed, Rng};
use wasym::simgen::{gen_gauss_mixture, gen_rademacher, gen_shifted_beta, GeneratorKind};
use wasym::symtest::{mardia_skewness_test, permutation_symmetry_test, SymTestConfig};
use wasym::wasserstein::{
    empirical_wasserstein, sorted_1d_wasserstein, PointCloud, WassersteinOrder,
};

type Check = Result<String, String>;

struct Tally {
    passed: usize,
    failed: usize,
}

fn run_criterion(tally: &mut Tally, number: usize, name: &str, f: impl FnOnce() -> Check) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err("panicked (see message above)".to_string()));
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            tally.passed += 1;
            println!("criterion {number:2} ({name}): PASS [{elapsed:.1}s] {detail}");
        }
        Err(detail) => {
            tally.failed += 1;
            println!("criterion {number:2} ({name}): FAIL [{elapsed:.1}s] {detail}");
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget_s: u64) -> Result<(), String> {
    check(elapsed.as_secs() < budget_s, || {
        format!("runtime {:.1}s exceeded the {budget_s}s budget", elapsed.as_secs_f64())
    })
}

fn main() {
    let mut tally = Tally { passed: 0, failed: 0 };
    let bound_grids: OnceCell<Result<BoundGrids, String>> = OnceCell::new();
    let power_rows: OnceCell<Result<Vec<PowerRow>, String>> = OnceCell::new();

    run_criterion(&mut tally, 1, "assignment exactness", criterion_assignment_exact);
    run_criterion(&mut tally, 2, "1-D transport oracle", criterion_sorted_oracle);
    run_criterion(&mut tally, 3, "order property", criterion_order_property);
    run_criterion(&mut tally, 4, "empirical upward bias", criterion_upward_bias);
    run_criterion(&mut tally, 5, "bound comparison at n=256", || {
        criterion_bound_comparison(bound_grids.get_or_init(compute_bound_grids))
    });
    run_criterion(&mut tally, 6, "correction decay", || {
        criterion_correction_decay(bound_grids.get_or_init(compute_bound_grids))
    });
    run_criterion(&mut tally, 7, "null calibration", criterion_null_calibration);
    run_criterion(&mut tally, 8, "permutation test power", || {
        criterion_power(power_rows.get_or_init(compute_power_rows))
    });
    run_criterion(&mut tally, 9, "Mardia baseline", || {
        criterion_mardia(power_rows.get_or_init(compute_power_rows))
    });
    run_criterion(&mut tally, 10, "bootstrap variance", criterion_bootstrap_variance);
    run_criterion(&mut tally, 11, "l-infinity bound comparison", criterion_nemirovski);
    run_criterion(&mut tally, 12, "CLI determinism", criterion_cli_determinism);

    println!("acceptance: {}/{} criteria passed", tally.passed, tally.passed + tally.failed);
    if tally.failed > 0 {
        std::process::exit(1);
    }
}

/// 1000 random dense instances, m in 2..=8: the polynomial solver matches
/// exhaustive enumeration exactly. Budget 10s.
fn criterion_assignment_exact() -> Check {
    let start = Instant::now();
    let mut rng = Rng::new(101);
    let instances = 1000;
    let mut worst: f64 = 0.0;
    for i in 0..instances {
        let m = 2 + (i % 7);
        let cost = CostMatrix::from_fn(m, |_, _| rng.next_f64()).map_err(|e| e.to_string())?;
        let fast = solve_assignment(&cost);
        let brute = brute_force_assignment(&cost).map_err(|e| e.to_string())?;
        let gap = (fast.total_cost - brute.total_cost).abs();
        worst = worst.max(gap);
        check(gap <= 1e-9, || {
            format!("instance {i} (m = {m}): solver {} vs oracle {}", fast.total_cost, brute.total_cost)
        })?;
    }
    within(start.elapsed(), 10)?;
    Ok(format!("{instances}/{instances} instances matched; worst gap {worst:.2e}"))
}

/// 500 random 1-D pairs, m <= 64: the matching solver agrees with the
/// sorting shortcut for p in {1, 2}. Budget 10s.
fn criterion_sorted_oracle() -> Check {
    let start = Instant::now();
    let mut rng = Rng::new(202);
    let pairs = 500;
    let mut worst: f64 = 0.0;
    for i in 0..pairs {
        let m = 2 + rng.next_below(63) as usize;
        let xs: Vec<f64> = (0..m).map(|_| rng.next_normal()).collect();
        let ys: Vec<f64> = (0..m).map(|_| rng.next_normal()).collect();
        let p = if i % 2 == 0 { WassersteinOrder::W1 } else { WassersteinOrder::W2 };
        let x = PointCloud::from_rows(&xs.iter().map(|&v| vec![v]).collect::<Vec<_>>())
            .map_err(|e| e.to_string())?;
        let y = PointCloud::from_rows(&ys.iter().map(|&v| vec![v]).collect::<Vec<_>>())
            .map_err(|e| e.to_string())?;
        let solved = empirical_wasserstein(&x, &y, p, MetricKind::L1).map_err(|e| e.to_string())?;
        let sorted = sorted_1d_wasserstein(&xs, &ys, p).map_err(|e| e.to_string())?;
        let gap = (solved - sorted).abs();
        worst = worst.max(gap);
        check(gap <= 1e-9, || format!("pair {i} (m = {m}): {solved} vs {sorted}"))?;
    }
    within(start.elapsed(), 10)?;
    Ok(format!("{pairs}/{pairs} pairs matched; worst gap {worst:.2e}"))
}

/// W1 <= W2 + 1e-12 on 200 random cloud pairs across all three metrics.
fn criterion_order_property() -> Check {
    let mut rng = Rng::new(303);
    let pairs = 200;
    for i in 0..pairs {
        let d = 1 + (i % 3);
        let m = 2 + rng.next_below(10) as usize;
        let metric = [MetricKind::L1, MetricKind::L2, MetricKind::Linf][i % 3];
        let draw = |rng: &mut Rng| -> Result<PointCloud, String> {
            let rows: Vec<Vec<f64>> =
                (0..m).map(|_| (0..d).map(|_| rng.next_normal()).collect()).collect();
            PointCloud::from_rows(&rows).map_err(|e| e.to_string())
        };
        let x = draw(&mut rng)?;
        let y = draw(&mut rng)?;
        let w1 = empirical_wasserstein(&x, &y, WassersteinOrder::W1, metric)
            .map_err(|e| e.to_string())?;
        let w2 = empirical_wasserstein(&x, &y, WassersteinOrder::W2, metric)
            .map_err(|e| e.to_string())?;
        check(w1 <= w2 + 1e-12, || {
            format!("pair {i} ({metric}, m = {m}, d = {d}): W1 = {w1} > W2 = {w2}")
        })?;
    }
    Ok(format!("W1 <= W2 + 1e-12 on {pairs}/{pairs} pairs"))
}

/// The empirical distance overshoots the population value: for mu =
/// uniform{0,1} and nu = uniform{0,-1} (true W1 = 1), the mean of
/// W1(mu_8, nu_8) over 2000 draws is >= 1 - 3 se. Budget 30s.
fn criterion_upward_bias() -> Check {
    let start = Instant::now();
    let mut rng = Rng::new(404);
    let (m, draws) = (8usize, 2000usize);
    let mut values = Vec::with_capacity(draws);
    for _ in 0..draws {
        let xs: Vec<Vec<f64>> = (0..m).map(|_| vec![rng.next_below(2) as f64]).collect();
        let ys: Vec<Vec<f64>> = (0..m).map(|_| vec![-(rng.next_below(2) as f64)]).collect();
        let x = PointCloud::from_rows(&xs).map_err(|e| e.to_string())?;
        let y = PointCloud::from_rows(&ys).map_err(|e| e.to_string())?;
        values.push(
            empirical_wasserstein(&x, &y, WassersteinOrder::W1, MetricKind::L1)
                .map_err(|e| e.to_string())?,
        );
    }
    let mean = values.iter().sum::<f64>() / draws as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (draws - 1) as f64;
    let se = (var / draws as f64).sqrt();
    check(mean >= 1.0 - 3.0 * se, || {
        format!("mean {mean:.4} < 1 - 3 se (se = {se:.4})")
    })?;
    within(start.elapsed(), 30)?;
    Ok(format!("mean W1 = {mean:.4} >= 1 - 3 se (se = {se:.4})"))
}

const N_GRID: [usize; 8] = [2, 4, 8, 16, 32, 64, 128, 256];
const BOUND_REPS: usize = 2000;

struct BoundGrids {
    rademacher_l1: Vec<(usize, BoundReport)>,
    mixture_l2: Vec<(usize, BoundReport)>,
    elapsed: Duration,
}

fn bound_grid(kind: GeneratorKind, metric: MetricKind, seed: u64) -> Result<Vec<(usize, BoundReport)>, String> {
    N_GRID
        .iter()
        .enumerate()
        .map(|(gi, &n)| {
            let cfg = BoundConfig {
                metric,
                p: WassersteinOrder::W2,
                estimator: CorrectionEstimator::SplitHalf,
                num_sign_draws: 100,
                correction_reps: 1,
                bootstrap_m: None,
                seed: stream_seed(seed, &[gi as u64]),
            };
            compare_symmetrization_bounds_generator(kind, n, 2, BOUND_REPS, &cfg)
                .map(|rep| (n, rep))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn compute_bound_grids() -> Result<BoundGrids, String> {
    let start = Instant::now();
    Ok(BoundGrids {
        rademacher_l1: bound_grid(GeneratorKind::Rademacher { p: 0.5 }, MetricKind::L1, 5001)?,
        mixture_l2: bound_grid(GeneratorKind::GaussMixture, MetricKind::L2, 5002)?,
        elapsed: start.elapsed(),
    })
}

/// At n = 256 with 2000 replications, for both the 2-D symmetric
/// Rademacher (l1) and the Gaussian mixture (l2): the corrected bound is
/// sharper, and both bounds hold at Monte Carlo scale. Budget 5min.
fn criterion_bound_comparison(grids: &Result<BoundGrids, String>) -> Check {
    let grids = grids.as_ref().map_err(|e| e.clone())?;
    let mut details = Vec::new();
    for (label, grid) in [("rademacher/l1", &grids.rademacher_l1), ("mixture/l2", &grids.mixture_l2)] {
        let (n, rep) = grid.last().expect("grid is nonempty");
        check(*n == 256, || format!("{label}: expected terminal n = 256, got {n}"))?;
        check(rep.new_bound < rep.old_bound, || {
            format!("{label}: new {} !< old {}", rep.new_bound, rep.old_bound)
        })?;
        check(rep.lhs <= rep.new_bound + 3.0 * rep.mc_std_error, || {
            format!("{label}: lhs {} > new {} + 3 mc ({})", rep.lhs, rep.new_bound, rep.mc_std_error)
        })?;
        check(rep.lhs <= rep.old_bound + 3.0 * rep.mc_std_error, || {
            format!("{label}: lhs {} > old {} + 3 mc ({})", rep.lhs, rep.old_bound, rep.mc_std_error)
        })?;
        details.push(format!(
            "{label}: lhs {:.3} <= new {:.3} < old {:.3}",
            rep.lhs, rep.new_bound, rep.old_bound
        ));
    }
    within(grids.elapsed, 300)?;
    Ok(details.join("; "))
}

/// The correction term of the symmetric mixture decays across the grid:
/// least-squares slope of log C_n vs log n <= -0.4, and C_256 < C_16.
fn criterion_correction_decay(grids: &Result<BoundGrids, String>) -> Check {
    let grids = grids.as_ref().map_err(|e| e.clone())?;
    let grid = &grids.mixture_l2;
    let points: Vec<(f64, f64)> = grid
        .iter()
        .map(|(n, rep)| ((*n as f64).ln(), rep.c_n.ln()))
        .collect();
    let k = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / k;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / k;
    let cov = points.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum::<f64>();
    let var = points.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum::<f64>();
    let slope = cov / var;

    let c_16 = grid.iter().find(|(n, _)| *n == 16).expect("grid has n = 16").1.c_n;
    let c_256 = grid.iter().find(|(n, _)| *n == 256).expect("grid has n = 256").1.c_n;
    check(c_256 < c_16, || format!("C_256 = {c_256:.4} !< C_16 = {c_16:.4}"))?;
    check(slope <= -0.4, || {
        format!("log-log slope {slope:.4} > -0.4 (C_16 = {c_16:.4}, C_256 = {c_256:.4})")
    })?;
    Ok(format!("slope {slope:.4} <= -0.4; C_256 = {c_256:.4} < C_16 = {c_16:.4}"))
}

/// Under the symmetric null (5-D Rademacher(1/2), n = 100), the rejection
/// rate of the permutation test at level 0.05 over 300 simulations stays
/// within [0.02, 0.09]. Budget 10min.
fn criterion_null_calibration() -> Check {
    let start = Instant::now();
    let sims = 300usize;
    let mut rejections = 0usize;
    for s in 0..sims as u64 {
        let data = gen_rademacher(100, 5, 0.5, stream_seed(707, &[s, 0]))
            .map_err(|e| e.to_string())?;
        let mut cfg = SymTestConfig::new(stream_seed(707, &[s, 1]));
        cfg.m_perms = 200;
        let report = permutation_symmetry_test(&data, &cfg).map_err(|e| e.to_string())?;
        rejections += (report.p_value <= 0.05) as usize;
    }
    let rate = rejections as f64 / sims as f64;
    check((0.02..=0.09).contains(&rate), || {
        format!("null rejection rate {rate:.3} outside [0.02, 0.09]")
    })?;
    within(start.elapsed(), 600)?;
    Ok(format!("null rejection rate {rate:.3} in [0.02, 0.09] ({sims} sims)"))
}

struct PowerRow {
    p: f64,
    perm: f64,
    mardia: f64,
}

/// Power of both tests over p in {0.5, 0.6, 0.7, 0.8} at n = 100, d = 5,
/// 200 simulations per point (l1, W1, level 0.05).
fn compute_power_rows() -> Result<Vec<PowerRow>, String> {
    let sims = 200usize;
    [0.5, 0.6, 0.7, 0.8]
        .iter()
        .enumerate()
        .map(|(gi, &p)| {
            let mut perm_rejections = 0usize;
            let mut mardia_rejections = 0usize;
            for s in 0..sims as u64 {
                let data = gen_rademacher(100, 5, p, stream_seed(808, &[gi as u64, s, 0]))
                    .map_err(|e| e.to_string())?;
                let mut cfg = SymTestConfig::new(stream_seed(808, &[gi as u64, s, 1]));
                cfg.m_perms = 200;
                let report = permutation_symmetry_test(&data, &cfg).map_err(|e| e.to_string())?;
                perm_rejections += (report.p_value <= 0.05) as usize;
                let mardia = mardia_skewness_test(&data).map_err(|e| e.to_string())?;
                mardia_rejections += (mardia.p_value <= 0.05) as usize;
            }
            Ok(PowerRow {
                p,
                perm: perm_rejections as f64 / sims as f64,
                mardia: mardia_rejections as f64 / sims as f64,
            })
        })
        .collect()
}

/// Power >= 0.8 at p = 0.8 and nondecreasing (within 0.05) across the
/// asymmetry grid.
fn criterion_power(rows: &Result<Vec<PowerRow>, String>) -> Check {
    let rows = rows.as_ref().map_err(|e| e.clone())?;
    let last = rows.last().expect("grid is nonempty");
    check(last.perm >= 0.8, || format!("power at p = 0.8 is {:.3} < 0.8", last.perm))?;
    for pair in rows.windows(2) {
        check(pair[1].perm >= pair[0].perm - 0.05, || {
            format!(
                "power not nondecreasing: {:.3} at p = {} vs {:.3} at p = {}",
                pair[1].perm, pair[1].p, pair[0].perm, pair[0].p
            )
        })?;
    }
    let summary: Vec<String> = rows.iter().map(|r| format!("{}:{:.3}", r.p, r.perm)).collect();
    Ok(format!("power {{{}}}, nondecreasing within 0.05", summary.join(", ")))
}

/// Mardia's test has 35 degrees of freedom at k = 5, a zero statistic on
/// antipodal 1-D data, and no more power than the permutation test
/// (+0.05) on the same data.
fn criterion_mardia(rows: &Result<Vec<PowerRow>, String>) -> Check {
    let sample = gen_rademacher(40, 5, 0.5, 1).map_err(|e| e.to_string())?;
    let df = mardia_skewness_test(&sample).map_err(|e| e.to_string())?.df;
    check(df == 35, || format!("df = {df} at k = 5, expected 35"))?;

    let antipodal = PointCloud::from_rows(&[vec![-2.5], vec![2.5], vec![-1.0], vec![1.0]])
        .map_err(|e| e.to_string())?;
    let stat = mardia_skewness_test(&antipodal).map_err(|e| e.to_string())?.statistic;
    check(stat.abs() < 1e-10, || format!("antipodal statistic {stat} != 0"))?;

    let rows = rows.as_ref().map_err(|e| e.clone())?;
    let last = rows.last().expect("grid is nonempty");
    check(last.mardia <= last.perm + 0.05, || {
        format!("Mardia power {:.3} > permutation power {:.3} + 0.05", last.mardia, last.perm)
    })?;
    Ok(format!(
        "df = 35; antipodal statistic {stat:.1e}; Mardia {:.3} <= permutation {:.3} + 0.05",
        last.mardia, last.perm
    ))
}

/// Bootstrap spread obeys the bounded-differences bound C^2/(2m) (factor
/// 1.5) on fixed mixture data, and shrinks as m grows (factor 1.2).
fn criterion_bootstrap_variance() -> Check {
    let x = gen_gauss_mixture(64, 2, 1010).map_err(|e| e.to_string())?;
    let c = observed_cost_range(&x, MetricKind::L2);
    let variance_at = |m: usize| -> Result<f64, String> {
        let cfg = BootstrapConfig {
            m,
            r: 200,
            p: WassersteinOrder::W2,
            metric: MetricKind::L2,
            seed: stream_seed(1010, &[m as u64]),
        };
        Ok(bootstrap_reflection_estimate(&x, &cfg).map_err(|e| e.to_string())?.empirical_variance)
    };
    let var16 = variance_at(16)?;
    let var32 = variance_at(32)?;
    let var64 = variance_at(64)?;
    let cap = 1.5 * c * c / (2.0 * 32.0);
    check(var32 <= cap, || {
        format!("variance at m = 32 ({var32:.4}) exceeds 1.5 C^2/(2m) = {cap:.4} (C = {c:.3})")
    })?;
    check(var64 <= 1.2 * var16, || {
        format!("variance at m = 64 ({var64:.4}) > 1.2 x variance at m = 16 ({var16:.4})")
    })?;
    Ok(format!(
        "var(32) = {var32:.4} <= {cap:.4}; var(64) = {var64:.4} <= 1.2 var(16) = {:.4}",
        1.2 * var16
    ))
}

/// Shifted Beta(0.5, 1) in d = 25 at n = 10, 2000 replications, W2 via a
/// size-5 bootstrap: the corrected l-infinity bound beats the classical
/// one, and neither undershoots the estimated lhs.
fn criterion_nemirovski() -> Check {
    let (n, d, alpha, w2_m, reps) = (10usize, 25usize, 0.5f64, 5usize, 2000usize);
    let mut clouds = Vec::with_capacity(reps);
    let mut w2_sum = 0.0;
    for j in 0..reps as u64 {
        let x = gen_shifted_beta(n, d, alpha, stream_seed(1111, &[j, 0]))
            .map_err(|e| e.to_string())?;
        let cfg = BootstrapConfig {
            m: w2_m,
            r: 1,
            p: WassersteinOrder::W2,
            metric: MetricKind::Linf,
            seed: stream_seed(1111, &[j, 1]),
        };
        w2_sum += bootstrap_reflection_estimate(&x, &cfg).map_err(|e| e.to_string())?.mean;
        clouds.push(x);
    }
    let w2 = w2_sum / reps as f64;
    let rep = nemirovski_bounds(&clouds, w2).map_err(|e| e.to_string())?;
    check(rep.new_bound < rep.old_bound, || {
        format!("new {} !< old {}", rep.new_bound, rep.old_bound)
    })?;
    let floor = rep.lhs - 3.0 * rep.mc_std_error;
    check(rep.old_bound >= floor, || {
        format!("old bound {} < lhs - 3 mc = {floor}", rep.old_bound)
    })?;
    check(rep.new_bound >= floor, || {
        format!("new bound {} < lhs - 3 mc = {floor}", rep.new_bound)
    })?;
    Ok(format!(
        "lhs {:.4} <= new {:.4} < old {:.4} (W2 = {w2:.3})",
        rep.lhs, rep.new_bound, rep.old_bound
    ))
}

/// Every stochastic subcommand emits byte-identical output on rerun and
/// across worker counts.
fn criterion_cli_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_wasym");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cloud = dir.path().join("cloud.csv");
    let cloud_str = cloud.to_str().expect("temp path is UTF-8");

    let seed_cloud = Command::new(bin)
        .args(["gen", "--kind", "mixture", "--n", "24", "--d", "2", "--seed", "9", "--out", cloud_str])
        .output()
        .map_err(|e| e.to_string())?;
    check(seed_cloud.status.success(), || "gen --out failed".to_string())?;

    let invocations: Vec<Vec<&str>> = vec![
        vec!["gen", "--kind", "mixture", "--n", "20", "--d", "3", "--seed", "9"],
        vec!["gen", "--kind", "beta", "--alpha", "0.5", "--n", "10", "--d", "4", "--seed", "3"],
        vec!["dist", "--x", cloud_str, "--y", cloud_str, "--p", "2", "--metric", "l2"],
        vec!["symtest", "--input", cloud_str, "--r", "2", "--m-perms", "50", "--seed", "3"],
        vec!["bound", "--generator", "rademacher", "--n-grid", "8,16", "--reps", "5", "--metric", "l1", "--seed", "4"],
        vec!["bound", "--input", cloud_str, "--estimator", "bootstrap", "--seed", "4"],
        vec!["power", "--p-grid", "0.5,0.8", "--n", "16", "--d", "2", "--sims", "5", "--m-perms", "40", "--with-mardia", "--seed", "6"],
        vec!["nemirovski", "--d-grid", "5", "--alpha-grid", "0.5", "--reps", "10", "--seed", "7"],
    ];
    for args in &invocations {
        let run = |extra: &[&str]| -> Result<Vec<u8>, String> {
            let out = Command::new(bin).args(args).args(extra).output().map_err(|e| e.to_string())?;
            check(out.status.success(), || {
                format!("`{}` exited with {:?}: {}", args.join(" "), out.status.code(), String::from_utf8_lossy(&out.stderr))
            })?;
            Ok(out.stdout)
        };
        let first = run(&[])?;
        let second = run(&[])?;
        check(first == second, || format!("`{}` differs between reruns", args.join(" ")))?;
        let serial = run(&["--workers", "1"])?;
        let parallel = run(&["--workers", "3"])?;
        check(serial == parallel, || {
            format!("`{}` differs between 1 and 3 workers", args.join(" "))
        })?;
        check(first == serial, || {
            format!("`{}` differs between default and pinned workers", args.join(" "))
        })?;
    }
    Ok(format!(
        "{} invocations byte-identical across reruns and worker counts",
        invocations.len()
    ))
}
