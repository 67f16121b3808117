//! The `verify` subcommand: cross-checks between independent routes to the
//! same quantities, collected into a JSON report.

use anyhow::bail;
use num_rational::{BigRational, Ratio};
use rayon::prelude::*;
use rvb_core::algebra::{binomial_exact, cg_general, e_lambda, rational_to_f64, row_lambda_range, HalfInteger, SqrtRational};
use rvb_core::collapse::{brute_force_sector_weights, ORACLE_MAX_SITES};
use rvb_core::emission::{approx_peak_location, extrapolate_thermo, EmissionDistribution};
use rvb_core::spin::{collapsed_state, product_state, project_sector, row_schmidt, rvb_state, states_equal_up_to_phase, PhaseComparison, SystemShape};
use rvb_core::stats::log_log_slope;
use serde::Serialize;

use crate::args::Fault;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub max_mu: u32,
    pub tolerance: f64,
    pub fault: Option<Fault>,
}

impl VerifyConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.max_mu == 0 || self.max_mu > ORACLE_MAX_SITES {
            bail!(
                "capacity: --max-mu {} outside 1..={ORACLE_MAX_SITES}, the dense oracle limit",
                self.max_mu
            );
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            bail!("--tolerance must be a positive number");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageReport {
    pub name: &'static str,
    pub checks: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_mu: u32,
    pub tolerance: f64,
    pub passed: bool,
    pub stages: Vec<StageReport>,
}

fn stage(name: &'static str, results: Vec<Option<String>>) -> StageReport {
    let checks = results.len();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    StageReport {
        name,
        checks,
        passed: failures.is_empty(),
        failures,
    }
}

/// Every `(M, N, p)` with `1 <= M + N <= max_mu`.
fn tuples(max_mu: u32) -> Vec<(SystemShape, u32)> {
    let mut out = Vec::new();
    for mu in 1..=max_mu {
        for m in 0..=mu {
            let shape = SystemShape::new(m, mu - m).expect("mu >= 1");
            out.extend(shape.photon_counts().map(|p| (shape, p)));
        }
    }
    out
}

fn label(shape: SystemShape, p: u32) -> String {
    format!("M={} N={} p={p}", shape.m(), shape.n())
}

fn closed_form(m: u32, n: u32, p: i64, lambda: i64, fault: Option<Fault>) -> rvb_core::Result<SqrtRational> {
    let e = e_lambda(m, n, p, lambda)?;
    Ok(match fault {
        Some(Fault::ELambdaSign) if lambda == p => -e,
        _ => e,
    })
}

fn collapse_equals_rvb(cfg: &VerifyConfig) -> StageReport {
    let results = tuples(cfg.max_mu)
        .par_iter()
        .map(|&(shape, p)| {
            let collapsed = match collapsed_state(shape, i64::from(p)) {
                Ok(s) => s,
                Err(e) => return Some(format!("{}: collapsed_state failed: {e}", label(shape, p))),
            };
            let rvb = match rvb_state(shape, i64::from(p)) {
                Ok(s) => s,
                Err(e) => return Some(format!("{}: rvb_state failed: {e}", label(shape, p))),
            };
            match states_equal_up_to_phase(&collapsed, &rvb, cfg.tolerance) {
                PhaseComparison::EqualSameSign => None,
                PhaseComparison::EqualOppositeSign => Some(format!("{}: opposite global sign", label(shape, p))),
                PhaseComparison::NotEqual => Some(format!(
                    "{}: max amplitude deviation {:e}",
                    label(shape, p),
                    collapsed.max_abs_diff(&rvb)
                )),
            }
        })
        .collect();
    stage("collapse_equals_rvb", results)
}

fn e_lambda_vs_row_schmidt(cfg: &VerifyConfig) -> StageReport {
    let results = tuples(cfg.max_mu)
        .par_iter()
        .map(|&(shape, p)| {
            let (m, n, p64) = (shape.m(), shape.n(), i64::from(p));
            let schmidt = collapsed_state(shape, p64).and_then(|s| row_schmidt(&s));
            let schmidt = match schmidt {
                Ok(s) => s,
                Err(e) => return Some(format!("{}: row_schmidt failed: {e}", label(shape, p))),
            };
            for lambda in row_lambda_range(m, n, p64) {
                let want = match closed_form(m, n, p64, lambda, cfg.fault) {
                    Ok(e) => e.to_f64(),
                    Err(e) => return Some(format!("e_lambda {} lambda={lambda}: {e}", label(shape, p))),
                };
                let got = schmidt.get(lambda).unwrap_or(0.0);
                if (got - want).abs() > cfg.tolerance {
                    return Some(format!("e_lambda {} lambda={lambda}: closed form {want} vs state {got}", label(shape, p)));
                }
            }
            None
        })
        .collect();
    stage("e_lambda_vs_row_schmidt", results)
}

fn e_lambda_vs_clebsch_gordan(cfg: &VerifyConfig) -> StageReport {
    let h = HalfInteger::from_twice;
    let results = tuples(cfg.max_mu)
        .par_iter()
        .map(|&(shape, p)| {
            let (m, n, p) = (i64::from(shape.m()), i64::from(shape.n()), i64::from(p));
            for lambda in row_lambda_range(shape.m(), shape.n(), p) {
                let closed = closed_form(shape.m(), shape.n(), p, lambda, cfg.fault);
                let cg = cg_general(h(m), h(m - 2 * lambda), h(n), h(2 * (lambda - p) - n), h(n - m + 2 * p), h(m - n - 2 * p));
                match (closed, cg) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => {
                        let show = |r: rvb_core::Result<SqrtRational>| r.map_or_else(|e| e.to_string(), |v| v.to_string());
                        return Some(format!(
                            "e_lambda M={m} N={n} p={p} lambda={lambda}: closed form {} vs coupling coefficient {}",
                            show(a),
                            show(b)
                        ));
                    }
                }
            }
            None
        })
        .collect();
    stage("e_lambda_vs_clebsch_gordan", results)
}

fn sector_weights(cfg: &VerifyConfig) -> StageReport {
    let shapes: Vec<SystemShape> = (1..=cfg.max_mu)
        .flat_map(|mu| (0..=mu).map(move |m| SystemShape::new(m, mu - m).expect("mu >= 1")))
        .collect();
    let results = shapes
        .par_iter()
        .map(|&shape| {
            let run = || -> rvb_core::Result<Option<String>> {
                let dist = EmissionDistribution::new(shape.m(), shape.n())?;
                let dense = brute_force_sector_weights(shape)?;
                let initial = product_state(shape)?;
                for p in shape.photon_counts() {
                    let spin = shape.sector_spin(p);
                    let exact = rational_to_f64(&dist.probability(p).expect("valid p"));
                    let lowdin = project_sector(&initial, spin)?.norm_sqr();
                    let brute = dense.iter().find(|(s, _)| *s == spin).map_or(0.0, |w| w.1);
                    if (exact - lowdin).abs() > cfg.tolerance || (exact - brute).abs() > cfg.tolerance {
                        return Ok(Some(format!(
                            "{}: closed form {exact}, projector {lowdin}, eigendecomposition {brute}",
                            label(shape, p)
                        )));
                    }
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(format!("M={} N={}: {e}", shape.m(), shape.n())))
        })
        .collect();
    stage("sector_weights", results)
}

/// Spot grid for the exact identities, up to `M, N = 500`.
pub const NORMALIZATION_GRID: [u32; 10] = [0, 1, 2, 3, 7, 20, 64, 150, 333, 500];

fn normalization(_: &VerifyConfig) -> StageReport {
    let pairs: Vec<(u32, u32)> = NORMALIZATION_GRID
        .iter()
        .flat_map(|&m| NORMALIZATION_GRID.iter().map(move |&n| (m, n)))
        .filter(|&(m, n)| m + n > 0)
        .collect();
    let results = pairs
        .par_iter()
        .map(|&(m, n)| {
            let dist = match EmissionDistribution::new(m, n) {
                Ok(d) => d,
                Err(e) => return Some(format!("M={m} N={n}: {e}")),
            };
            if !dist.is_normalized() {
                return Some(format!("M={m} N={n}: probabilities sum to {}", dist.total()));
            }
            let top = BigRational::new(1.into(), binomial_exact(u64::from(m + n), i64::from(m)).into());
            if dist.probability(m) != Some(top) {
                return Some(format!("M={m} N={n}: P(M) differs from 1/C(N+M, M)"));
            }
            if m <= n {
                let zero = BigRational::new((n - m + 1).into(), (n + 1).into());
                if dist.probability(0) != Some(zero) {
                    return Some(format!("M={m} N={n}: P(0) differs from (N-M+1)/(N+1)"));
                }
            }
            None
        })
        .collect();
    stage("normalization", results)
}

/// Sizes used for the scaling-law fits.
pub const SCALING_SIZES: [u32; 4] = [100, 200, 400, 800];

fn moments(m: u32, alpha: Ratio<u64>) -> anyhow::Result<(f64, f64)> {
    let n = rvb_core::emission::whole_bottom_row(m, alpha)?;
    let dist = EmissionDistribution::new(m, n)?;
    Ok((rational_to_f64(&dist.mean_gamma_exact()?), rational_to_f64(&dist.variance_gamma_exact()?)))
}

fn scaling(_: &VerifyConfig) -> StageReport {
    let alphas = [Ratio::new(1, 4), Ratio::new(1, 2), Ratio::from_integer(1), Ratio::new(3, 2), Ratio::from_integer(2)];
    let jobs: Vec<(u32, Ratio<u64>)> = alphas
        .iter()
        .flat_map(|&a| SCALING_SIZES.iter().map(move |&m| (m, a)))
        .collect();
    let computed: Vec<anyhow::Result<(f64, f64)>> = jobs.par_iter().map(|&(m, a)| moments(m, a)).collect();
    let mut table = std::collections::HashMap::new();
    for (job, result) in jobs.iter().zip(computed) {
        match result {
            Ok(v) => {
                table.insert(*job, v);
            }
            Err(e) => return stage("scaling", vec![Some(format!("M={} alpha={}: {e}", job.0, job.1))]),
        }
    }
    let sizes: Vec<f64> = SCALING_SIZES.iter().map(|&m| f64::from(m)).collect();
    let series = |a: Ratio<u64>, pick: fn(&(f64, f64)) -> f64| -> Vec<f64> {
        SCALING_SIZES.iter().map(|&m| pick(&table[&(m, a)])).collect()
    };
    let slope_check = |what: &str, a: Ratio<u64>, pick: fn(&(f64, f64)) -> f64, want: f64, tol: f64| {
        let slope = log_log_slope(&sizes, &series(a, pick));
        ((slope - want).abs() > tol).then(|| format!("{what} at alpha={a}: log-log slope {slope:.4}, expected {want} +- {tol}"))
    };
    let mut results = vec![
        slope_check("Var(gamma)", Ratio::from_integer(1), |v| v.1, -1.0, 0.15),
        slope_check("mean gamma", Ratio::from_integer(1), |v| v.0, -0.5, 0.1),
        slope_check("Var(gamma)", Ratio::from_integer(2), |v| v.1, -2.0, 0.15),
        slope_check("Var(gamma)", Ratio::new(1, 2), |v| v.1, -2.0, 0.15),
    ];
    for a in alphas {
        let limit = extrapolate_thermo(*a.numer() as f64 / *a.denom() as f64).expect("alpha >= 0");
        let tol = if a == Ratio::from_integer(1) { 0.05 } else { 0.02 };
        let mean = table[&(800, a)].0;
        results.push(((mean - limit).abs() > tol).then(|| format!("mean gamma at alpha={a}, M=800: {mean:.4} vs limit {limit} +- {tol}")));
    }
    for m in [50u32, 100, 200] {
        let peak = EmissionDistribution::new(m, m).map(|d| d.mode());
        let check = match (peak, approx_peak_location(m)) {
            (Ok(mode), Ok(expected)) => {
                let got = f64::from(mode) / f64::from(m);
                ((got - expected).abs() > 2.0 / f64::from(m) + 1e-12)
                    .then(|| format!("peak at alpha=1, M={m}: gamma {got:.4} vs {expected:.4} +- 2/M"))
            }
            (a, b) => Some(format!("peak at alpha=1, M={m}: {:?} {:?}", a.err(), b.err())),
        };
        results.push(check);
    }
    stage("scaling", results)
}

pub fn run_verification(cfg: &VerifyConfig) -> anyhow::Result<VerifyReport> {
    cfg.validate()?;
    let runners: [fn(&VerifyConfig) -> StageReport; 6] = [
        collapse_equals_rvb,
        e_lambda_vs_row_schmidt,
        e_lambda_vs_clebsch_gordan,
        sector_weights,
        normalization,
        scaling,
    ];
    let stages: Vec<StageReport> = runners.iter().map(|run| run(cfg)).collect();
    Ok(VerifyReport {
        max_mu: cfg.max_mu,
        tolerance: cfg.tolerance,
        passed: stages.iter().all(|s| s.passed),
        stages,
    })
}
