//! Acceptance suite. Every criterion runs at its stated tolerance and prints
//! one line; the process fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use rvb_core::algebra::{cg_general, e_lambda, rational_to_f64, row_lambda_range, HalfInteger};
use rvb_core::collapse::{brute_force_sector_weights, ensemble_observable, mixed_state_ensemble, Observable};
use rvb_core::emission::{
    approx_peak_location, emission_probability, extrapolate_thermo, fitted_decay_rate, spinon_stats, EmissionDistribution,
};
use rvb_core::spin::{collapsed_state, product_state, project_sector, row_schmidt, rvb_state, SystemShape};
use rvb_core::stats::{chi_square_critical, log_log_slope};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn shapes_up_to(max_mu: u32) -> Vec<SystemShape> {
    (1..=max_mu)
        .flat_map(|mu| (0..=mu).map(move |m| SystemShape::new(m, mu - m).unwrap()))
        .collect()
}

fn collapse_is_rvb() -> Verdict {
    let (mut tuples, mut worst, mut bad) = (0, 0.0f64, Vec::new());
    for shape in shapes_up_to(12) {
        for p in shape.photon_counts() {
            tuples += 1;
            let a = collapsed_state(shape, i64::from(p)).unwrap();
            let b = rvb_state(shape, i64::from(p)).unwrap();
            let dev = a.max_abs_diff(&b);
            worst = worst.max(dev);
            if dev > 1e-9 {
                bad.push(format!("(M={}, N={}, p={p})", shape.m(), shape.n()));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{tuples} tuples with M+N <= 12, max same-sign deviation {worst:.1e}, failing {bad:?}"),
    )
}

fn coefficient_identity() -> Verdict {
    let h = HalfInteger::from_twice;
    let (mut tuples, mut worst, mut bad) = (0, 0.0f64, Vec::new());
    let mut signs = std::collections::BTreeMap::new();
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            if m + n == 0 {
                continue;
            }
            let shape = SystemShape::new(m, n).unwrap();
            for p in shape.photon_counts() {
                tuples += 1;
                let p = i64::from(p);
                let schmidt = row_schmidt(&collapsed_state(shape, p).unwrap()).unwrap();
                let mut sign = 0i8;
                for lambda in row_lambda_range(m, n, p) {
                    let closed = e_lambda(m, n, p, lambda).unwrap();
                    let dev = (schmidt.get(lambda).unwrap() - closed.to_f64()).abs();
                    worst = worst.max(dev);
                    let (mi, ni) = (i64::from(m), i64::from(n));
                    let cg = cg_general(h(mi), h(mi - 2 * lambda), h(ni), h(2 * (lambda - p) - ni), h(ni - mi + 2 * p), h(mi - ni - 2 * p))
                        .unwrap();
                    let consistent = if closed.is_zero() {
                        cg.is_zero()
                    } else {
                        let s = closed.signum() * cg.signum();
                        let ok = closed.abs() == cg.abs() && (sign == 0 || sign == s);
                        sign = s;
                        ok
                    };
                    if dev > 1e-9 || !consistent {
                        bad.push(format!("(M={m}, N={n}, p={p}, lambda={lambda})"));
                    }
                }
                *signs.entry(sign).or_insert(0) += 1;
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{tuples} tuples with M, N <= 8, max Schmidt deviation {worst:.1e}, recorded signs {signs:?}, failing {bad:?}"),
    )
}

fn triple_agreement() -> Verdict {
    let (mut checks, mut worst, mut bad) = (0, 0.0f64, Vec::new());
    for shape in shapes_up_to(14) {
        let dense = brute_force_sector_weights(shape).unwrap();
        let initial = product_state(shape).unwrap();
        for p in shape.photon_counts() {
            checks += 1;
            let spin = shape.sector_spin(p);
            let exact = rational_to_f64(&emission_probability(shape.m(), shape.n(), i64::from(p)).unwrap());
            let lowdin = project_sector(&initial, spin).unwrap().norm_sqr();
            let brute = dense.iter().find(|(s, _)| *s == spin).unwrap().1;
            let dev = (exact - lowdin).abs().max((exact - brute).abs()).max((lowdin - brute).abs());
            worst = worst.max(dev);
            if dev > 1e-9 {
                bad.push(format!("(M={}, N={}, p={p})", shape.m(), shape.n()));
            }
        }
    }
    verdict(bad.is_empty(), format!("{checks} sectors with M+N <= 14, max pairwise deviation {worst:.1e}, failing {bad:?}"))
}

fn closed_form_endpoints() -> Verdict {
    // Pascal's triangle as the binomial oracle
    let mut pascal: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32)]];
    for row in 1..=400usize {
        let prev = &pascal[row - 1];
        let mut next = vec![BigUint::from(1u32); row + 1];
        for k in 1..row {
            next[k] = &prev[k - 1] + &prev[k];
        }
        pascal.push(next);
    }
    let mut bad = Vec::new();
    let mut checks = 0;
    for m in 0..=200u32 {
        for n in 0..=200u32 {
            if m + n == 0 {
                continue;
            }
            checks += 1;
            let top = emission_probability(m, n, i64::from(m)).unwrap();
            let want = BigRational::new(BigInt::from(1), BigInt::from(pascal[(m + n) as usize][m as usize].clone()));
            if top != want {
                bad.push(format!("P(M) at (M={m}, N={n})"));
            }
            if m <= n {
                checks += 1;
                let zero = emission_probability(m, n, 0).unwrap();
                if zero != BigRational::new(BigInt::from(n - m + 1), BigInt::from(n + 1)) {
                    bad.push(format!("P(0) at (M={m}, N={n})"));
                }
            }
        }
    }
    let sizes: Vec<u32> = (1..=10).map(|k| 50 * k).collect();
    let rates: Vec<f64> = sizes
        .iter()
        .map(|&m| {
            let p = emission_probability(m, m, i64::from(m)).unwrap();
            -log2(&p) / (2.0 * f64::from(m))
        })
        .collect();
    let in_band = (0.9..=1.1).contains(&rates[0]);
    let approaching = rates.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs());
    if !in_band || !approaching {
        bad.push(format!("-log2 P(M)/(2M) sequence {rates:?}"));
    }
    verdict(
        bad.is_empty(),
        format!(
            "{checks} exact endpoint identities for M, N <= 200; -log2 P_(M,M)(M)/(2M) = {:.4} at M=50, {:.4} at M=500, monotone {approaching}; failing {bad:?}",
            rates[0],
            rates[9]
        ),
    )
}

fn log2(r: &BigRational) -> f64 {
    fn log2_int(x: &BigInt) -> f64 {
        let shift = x.bits().saturating_sub(60);
        ((x >> shift).to_string().parse::<f64>().unwrap()).log2() + shift as f64
    }
    log2_int(r.numer()) - log2_int(r.denom())
}

fn exact_normalization() -> Verdict {
    let grid = [0u32, 1, 2, 3, 5, 10, 25, 50, 100, 200, 300, 400, 499, 500];
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checks = 0;
    for &m in &grid {
        for &n in &grid {
            if m + n == 0 {
                continue;
            }
            checks += 1;
            let dist = EmissionDistribution::new(m, n).unwrap();
            // sum the individually reduced probabilities, not the shared-denominator weights
            let total: BigRational = dist.probabilities().into_iter().map(|(_, p)| p).sum();
            if total != BigRational::from_integer(BigInt::from(1)) {
                bad.push(format!("(M={m}, N={n})"));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!("{checks} grid pairs with M, N <= 500 sum to exactly 1 in {:.1}s; failing {bad:?}", elapsed.as_secs_f64()),
    )
}

fn moments(m: u32, alpha: Ratio<u64>) -> (f64, f64) {
    let n = rvb_core::emission::whole_bottom_row(m, alpha).unwrap();
    let dist = EmissionDistribution::new(m, n).unwrap();
    (
        rational_to_f64(&dist.mean_gamma_exact().unwrap()),
        rational_to_f64(&dist.variance_gamma_exact().unwrap()),
    )
}

fn phase_transition_scaling() -> Verdict {
    let sizes = [100u32, 200, 400, 800];
    let xs: Vec<f64> = sizes.iter().map(|&m| f64::from(m)).collect();
    let series = |alpha: Ratio<u64>| -> Vec<(f64, f64)> { sizes.iter().map(|&m| moments(m, alpha)).collect() };
    let one = series(Ratio::from_integer(1));
    let two = series(Ratio::from_integer(2));
    let half = series(Ratio::new(1, 2));
    let var_slope = |s: &[(f64, f64)]| log_log_slope(&xs, &s.iter().map(|v| v.1).collect::<Vec<_>>());
    let mean_slope = log_log_slope(&xs, &one.iter().map(|v| v.0).collect::<Vec<_>>());
    let (v1, v2, vh) = (var_slope(&one), var_slope(&two), var_slope(&half));
    let mut ok = (v1 + 1.0).abs() <= 0.15 && (mean_slope + 0.5).abs() <= 0.1 && (v2 + 2.0).abs() <= 0.15 && (vh + 2.0).abs() <= 0.15;
    let mut limits = Vec::new();
    for (alpha, tol) in [(Ratio::new(1, 4), 0.02), (Ratio::new(1, 2), 0.02), (Ratio::new(3, 2), 0.02), (Ratio::from_integer(2), 0.02), (Ratio::from_integer(1), 0.05)] {
        let a = *alpha.numer() as f64 / *alpha.denom() as f64;
        let mean = moments(800, alpha).0;
        let limit = extrapolate_thermo(a).unwrap();
        ok &= (mean - limit).abs() <= tol;
        limits.push(format!("alpha={a}: {mean:.4} vs {limit}"));
    }
    verdict(
        ok,
        format!(
            "alpha=1 Var slope {v1:.3}, mean slope {mean_slope:.3}; Var slope {v2:.3} at alpha=2, {vh:.3} at alpha=0.5; M=800 means {}",
            limits.join(", ")
        ),
    )
}

fn asymptotic_regimes() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for m in [50u32, 100, 200] {
        let mode = EmissionDistribution::new(m, m).unwrap().mode();
        let got = f64::from(mode) / f64::from(m);
        let want = approx_peak_location(m).unwrap();
        let pass = (got - want).abs() <= 2.0 / f64::from(m) + 1e-12;
        ok &= pass;
        parts.push(format!("argmax M={m}: {got:.4} vs {want:.4} [{}]", mark(pass)));
    }

    let m = 400u32;
    let rate = fitted_decay_rate(m, 2 * m, 10).unwrap();
    let want = f64::from(m);
    let pass = (rate - want).abs() <= 0.15 * want;
    ok &= pass;
    parts.push(format!("alpha=2 decay {rate:.1} vs M(alpha-1) = {want} +-15% [{}]", mark(pass)));

    let n = m / 2;
    let dist = EmissionDistribution::new(m, n).unwrap();
    let zero_below = dist.p_min() == m - n && (0..m - n).all(|p| dist.probability(p).is_none()) && dist.probability(m - n).is_some();
    ok &= zero_below;
    parts.push(format!("alpha=0.5 zero below gamma_c [{}]", mark(zero_below)));
    let rate = fitted_decay_rate(m, n, 10).unwrap();
    let want = 3.0 * f64::from(m) * 0.5;
    let pass = (rate - want).abs() <= 0.25 * want;
    ok &= pass;
    parts.push(format!("alpha=0.5 decay {rate:.1} vs 3M(1-alpha) = {want} +-25% [{}]", mark(pass)));
    verdict(ok, parts.join("; "))
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

fn spinon_statistics() -> Verdict {
    let (mut worst, mut bad) = (0.0f64, Vec::new());
    let mut shapes = 0;
    for shape in shapes_up_to(14) {
        if shape.m() == 0 {
            continue;
        }
        shapes += 1;
        let ensemble = mixed_state_ensemble(shape).unwrap();
        let q_bar = ensemble_observable(&ensemble, Observable::UnpairedCount).unwrap();
        let q_sq: f64 = ensemble
            .outcomes
            .iter()
            .map(|o| {
                let q = shape.unpaired(o.p) as f64;
                o.probability * q * q
            })
            .sum();
        let q_var = q_sq - q_bar * q_bar;
        let stats = spinon_stats(shape.m(), shape.n()).unwrap();
        let dev = (q_bar - stats.q_bar).abs().max((q_var - stats.q_var).abs());
        worst = worst.max(dev);
        let parity = (i64::from(shape.n()) - i64::from(shape.m())).rem_euclid(2);
        let same_parity = ensemble.unpaired_counts().iter().all(|q| q.rem_euclid(2) == parity);
        if dev > 1e-9 || !same_parity {
            bad.push(format!("(M={}, N={})", shape.m(), shape.n()));
        }
    }
    let r100 = spinon_stats(100, 100).unwrap().ratio;
    let r400 = spinon_stats(400, 400).unwrap().ratio;
    let ordered = r400 < r100 && r100 < 1.0;
    verdict(
        bad.is_empty() && ordered,
        format!(
            "{shapes} ensembles with M+N <= 14, max q-statistic deviation {worst:.1e}, parity held; mean/var ratio at alpha=1: {r100:.4} (M=100), {r400:.4} (M=400); failing {bad:?}"
        ),
    )
}

fn rvb(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rvb"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("rvb binary runs")
}

fn sampler_statistics() -> Verdict {
    let critical = chi_square_critical(2, 0.999);
    let critical_1 = chi_square_critical(1, 0.999);
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, n, crit) in [(2u32, 2u32, critical), (1, 1, critical_1)] {
        let shape = SystemShape::new(m, n).unwrap();
        let report = rvb::commands::run_sampler(shape, 1_000_000, 2024).unwrap();
        let pass = report.chi_square < crit;
        ok &= pass;
        parts.push(format!("({m},{n}) chi2 {:.3} < {crit:.3} with {} dof [{}]", report.chi_square, report.dof, mark(pass)));
    }
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("sample{k}.json"));
        let out = rvb(&["sample", "--m", "2", "--n", "2", "--shots", "1000000", "--seed", "7", "--format", "json", "--out", path.to_str().unwrap()]);
        ok &= out.status.success();
        files.push(std::fs::read(&path).unwrap_or_default());
    }
    let identical = !files[0].is_empty() && files[0] == files[1];
    ok &= identical;
    parts.push(format!("seed 7 reports byte-identical [{}]", mark(identical)));
    verdict(ok, parts.join("; "))
}

fn cli_gate_and_determinism() -> Verdict {
    let start = Instant::now();
    let out = rvb(&["verify"]);
    let elapsed = start.elapsed();
    let verify_ok = out.status.code() == Some(0) && elapsed < Duration::from_secs(300);
    let runs: [&[&str]; 5] = [
        &["collapse", "--m", "3", "--n", "4", "--p", "1"],
        &["dist", "--m", "100", "--alpha", "0.5"],
        &["sweep", "--m", "50,100", "--alpha-min", "0", "--alpha-max", "2", "--steps", "9"],
        &["sample", "--m", "4", "--n", "5", "--shots", "200000", "--seed", "11"],
        &["verify", "--max-mu", "6"],
    ];
    let mut differing = Vec::new();
    let mut documents = 0;
    for args in runs {
        for format in ["csv", "json"] {
            if args[0] == "verify" && format == "csv" {
                continue;
            }
            let mut full: Vec<&str> = args.to_vec();
            if args[0] != "verify" {
                full.extend(["--format", format]);
            }
            let a = rvb(&full);
            let b = rvb(&full);
            documents += 1;
            if !a.status.success() || a.stdout.is_empty() || a.stdout != b.stdout {
                differing.push(full.join(" "));
            }
        }
    }
    verdict(
        verify_ok && differing.is_empty(),
        format!(
            "default verify exit {:?} in {:.1}s; {documents} documents byte-identical across runs; differing {differing:?}",
            out.status.code(),
            elapsed.as_secs_f64()
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 10] = [
        ("collapsed state equals RVB state", collapse_is_rvb),
        ("row coefficients match closed form and coupling coefficients", coefficient_identity),
        ("three routes to sector weights agree", triple_agreement),
        ("closed-form endpoints", closed_form_endpoints),
        ("exact normalization", exact_normalization),
        ("phase-transition scaling", phase_transition_scaling),
        ("asymptotic regimes", asymptotic_regimes),
        ("ensemble spinon statistics", spinon_statistics),
        ("sampler statistics", sampler_statistics),
        ("verify gate and output determinism", cli_gate_and_determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        if !v.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} [{name}] ({:.1}s): {}",
            k + 1,
            if v.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
