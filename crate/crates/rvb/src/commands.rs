//! The data-producing subcommands. Each returns the finished document bytes.

use anyhow::{bail, Context};
use num_rational::{BigRational, Ratio};
use rayon::prelude::*;
use rvb_core::algebra::{rational_to_f64, HalfInteger};
use rvb_core::collapse::{CollapseSampler, SampleReport};
use rvb_core::emission::{sweep_point, whole_bottom_row, EmissionDistribution, SweepPoint};
use rvb_core::spin::{collapsed_state, SystemShape};
use serde_json::{json, Value};

use crate::args::{CollapseArgs, DistArgs, Format, SampleArgs, SweepArgs};
use crate::output::{fixed, json_document, json_number, ratio_string, ratio_to_f64, rational_string, CsvText, Meta};

pub fn collapse(args: &CollapseArgs) -> anyhow::Result<Vec<u8>> {
    let shape = SystemShape::new(args.m, args.n)?;
    let p = shape.check_photon_count(args.p)?;
    let state = collapsed_state(shape, args.p)?;
    let spin = shape.sector_spin(p);
    let m_tot = shape.initial_m() - HalfInteger::from_int(i64::from(p));
    let unpaired = shape.unpaired(p);
    let norm = state.norm();
    let precision = args.output.precision;
    let cutoff = 10f64.powi(-(precision as i32));
    let amplitudes: Vec<(String, f64)> = state
        .nonzero()
        .filter(|(_, a)| a.abs() > cutoff)
        .map(|(b, a)| (b.bitstring(shape.mu()), a))
        .collect();

    match args.output.format {
        Format::Csv => {
            let mut csv = CsvText::default();
            csv.comment(format_args!("M={} N={} p={p}", args.m, args.n));
            csv.comment(format_args!("S_tot={spin} m_tot={m_tot} unpaired={unpaired} norm={}", fixed(norm, precision)));
            csv.row(["basis", "amplitude"]);
            for (basis, a) in &amplitudes {
                csv.row([format!("\"{basis}\""), signed(*a, precision)]);
            }
            Ok(csv.into_bytes())
        }
        Format::Json => {
            let rows: Vec<Value> = amplitudes
                .iter()
                .map(|(basis, a)| json!({ "basis": basis, "amplitude": a }))
                .collect();
            let data = json!({
                "M": args.m,
                "N": args.n,
                "p": p,
                "S_tot": spin.to_string(),
                "m_tot": m_tot.to_string(),
                "unpaired": unpaired,
                "norm": norm,
                "amplitudes": rows,
            });
            json_document(&Meta::new("collapse", None), data)
        }
    }
}

fn signed(x: f64, precision: u32) -> String {
    let s = fixed(x, precision);
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

pub fn dist(args: &DistArgs) -> anyhow::Result<Vec<u8>> {
    if args.m == 0 {
        bail!("dist needs M >= 1 (gamma = p/M)");
    }
    let n = match (args.n, args.alpha) {
        (Some(n), _) => n,
        (None, Some(alpha)) => whole_bottom_row(args.m, alpha)?,
        (None, None) => bail!("one of --n or --alpha is required"),
    };
    let dist = EmissionDistribution::new(args.m, n)?;
    let scale = if args.density { BigRational::from_integer(args.m.into()) } else { BigRational::from_integer(1.into()) };
    let rows: Vec<(u32, Ratio<u64>, BigRational)> = (0..=args.m)
        .map(|p| {
            let prob = dist.probability(p).unwrap_or_else(|| BigRational::from_integer(0.into()));
            (p, Ratio::new(u64::from(p), u64::from(args.m)), prob * &scale)
        })
        .collect();
    let precision = args.output.precision;

    match args.output.format {
        Format::Csv => {
            let mut csv = CsvText::default();
            csv.row(["p", "gamma", "prob_exact", "prob_float"]);
            for (p, gamma, prob) in &rows {
                csv.row([
                    p.to_string(),
                    fixed(ratio_to_f64(*gamma), precision),
                    rational_string(prob),
                    fixed(rational_to_f64(prob), precision),
                ]);
            }
            Ok(csv.into_bytes())
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(p, gamma, prob)| {
                    json!({
                        "p": p,
                        "gamma": ratio_string(*gamma),
                        "prob_exact": rational_string(prob),
                        "prob_float": rational_to_f64(prob),
                    })
                })
                .collect();
            let data = json!({ "M": args.m, "N": n, "density": args.density, "rows": rows });
            json_document(&Meta::new("dist", None), data)
        }
    }
}

/// Grid points `(M, alpha)` in output order, and one message per adjustment.
pub type SweepGrid = (Vec<(u32, Ratio<u64>)>, Vec<String>);

/// The evenly spaced alpha grid, snapped per `M` to whole bottom rows.
pub fn sweep_grid(args: &SweepArgs) -> anyhow::Result<SweepGrid> {
    if args.steps == 0 {
        bail!("--steps must be at least 1");
    }
    if args.alpha_min > args.alpha_max {
        bail!("--alpha-min {} exceeds --alpha-max {}", args.alpha_min, args.alpha_max);
    }
    if let Some(0) = args.m.iter().find(|&&m| m == 0) {
        bail!("sweep needs M >= 1 (gamma = p/M)");
    }
    let span = args.alpha_max - args.alpha_min;
    let grid: Vec<Ratio<u64>> = if args.steps == 1 {
        vec![args.alpha_min]
    } else {
        let last = u64::from(args.steps - 1);
        (0..=last).map(|k| args.alpha_min + span * Ratio::new(k, last)).collect()
    };

    let mut points = Vec::new();
    let mut warnings = Vec::new();
    for &m in &args.m {
        let mut seen = std::collections::HashSet::new();
        for &alpha in &grid {
            let bottom = alpha * Ratio::from_integer(u64::from(m));
            let snapped = if bottom.is_integer() {
                alpha
            } else {
                let n = bottom.round().to_integer();
                let snapped = Ratio::new(n, u64::from(m));
                warnings.push(format!(
                    "alpha = {} gives N = {} for M = {m}; snapped to alpha = {} (N = {n})",
                    ratio_string(alpha),
                    ratio_string(bottom),
                    ratio_string(snapped)
                ));
                snapped
            };
            if seen.insert(snapped) {
                points.push((m, snapped));
            } else {
                warnings.push(format!(
                    "alpha = {} repeats for M = {m} after snapping; dropped",
                    ratio_string(snapped)
                ));
            }
        }
    }
    if points.is_empty() {
        bail!("the alpha grid is empty");
    }
    Ok((points, warnings))
}

pub fn sweep(args: &SweepArgs) -> anyhow::Result<Vec<u8>> {
    let (points, warnings) = sweep_grid(args)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let rows: Vec<SweepPoint> = points
        .par_iter()
        .map(|&(m, alpha)| sweep_point(m, alpha).with_context(|| format!("M = {m}, alpha = {alpha}")))
        .collect::<anyhow::Result<_>>()?;
    let precision = args.output.precision;

    match args.output.format {
        Format::Csv => {
            let mut csv = CsvText::default();
            csv.row(["alpha", "M", "gamma_bar", "M_var_gamma", "q_bar", "q_var", "mean_var_ratio"]);
            for r in &rows {
                csv.row([
                    fixed(ratio_to_f64(r.alpha), precision),
                    r.m.to_string(),
                    fixed(r.gamma_bar, precision),
                    fixed(f64::from(r.m) * r.gamma_var, precision),
                    fixed(r.q_bar, precision),
                    fixed(r.q_var, precision),
                    fixed(r.mean_var_ratio, precision),
                ]);
            }
            Ok(csv.into_bytes())
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "alpha": ratio_string(r.alpha),
                        "M": r.m,
                        "N": r.n,
                        "gamma_bar": r.gamma_bar,
                        "M_var_gamma": f64::from(r.m) * r.gamma_var,
                        "q_bar": r.q_bar,
                        "q_var": r.q_var,
                        "mean_var_ratio": json_number(r.mean_var_ratio),
                    })
                })
                .collect();
            json_document(&Meta::new("sweep", None), json!({ "rows": rows, "warnings": warnings }))
        }
    }
}

/// Draws all shards in parallel; the merged histogram does not depend on
/// scheduling.
pub fn run_sampler(shape: SystemShape, shots: u64, seed: u64) -> anyhow::Result<SampleReport> {
    if shots == 0 {
        bail!("--shots must be at least 1");
    }
    let sampler = CollapseSampler::new(shape)?;
    let counts = (0..CollapseSampler::shard_count(shots))
        .into_par_iter()
        .map(|shard| sampler.sample_shard(seed, shard, shots))
        .reduce(
            || vec![0; sampler.probabilities().len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(sampler.report(shots, seed, counts))
}

pub fn sample(args: &SampleArgs) -> anyhow::Result<Vec<u8>> {
    let shape = SystemShape::new(args.m, args.n)?;
    let report = run_sampler(shape, args.shots, args.seed)?;
    let dist = EmissionDistribution::new(args.m, args.n)?;
    let precision = args.output.precision;

    match args.output.format {
        Format::Csv => {
            let mut csv = CsvText::default();
            csv.comment(format_args!("M={} N={} shots={} seed={}", args.m, args.n, report.shots, report.seed));
            csv.comment(format_args!(
                "chi_square={} dof={} p_value_bound={}",
                fixed(report.chi_square, precision),
                report.dof,
                fixed(report.p_value_bound, precision)
            ));
            csv.row(["p", "count", "probability"]);
            for (p, count) in report.histogram() {
                let prob = dist.probability(p).map_or(0.0, |r| rational_to_f64(&r));
                csv.row([p.to_string(), count.to_string(), fixed(prob, precision)]);
            }
            Ok(csv.into_bytes())
        }
        Format::Json => {
            let counts: Vec<Value> = report
                .histogram()
                .map(|(p, count)| {
                    let prob = dist.probability(p).unwrap_or_else(|| BigRational::from_integer(0.into()));
                    json!({ "p": p, "count": count, "probability": rational_string(&prob) })
                })
                .collect();
            let data = json!({
                "M": args.m,
                "N": args.n,
                "shots": report.shots,
                "seed": report.seed,
                "counts": counts,
                "chi_square": report.chi_square,
                "dof": report.dof,
                "p_value_bound": report.p_value_bound,
            });
            json_document(&Meta::new("sample", Some(args.seed)), data)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::OutputArgs;

    fn out() -> OutputArgs {
        OutputArgs {
            format: Format::Csv,
            out: None,
            precision: 12,
        }
    }

    fn sweep_args(m: Vec<u32>, lo: Ratio<u64>, hi: Ratio<u64>, steps: u32) -> SweepArgs {
        SweepArgs {
            m,
            alpha_min: lo,
            alpha_max: hi,
            steps,
            output: out(),
        }
    }

    #[test]
    fn singlet_listing() {
        let args = CollapseArgs { m: 1, n: 1, p: 0, output: out() };
        let text = String::from_utf8(collapse(&args).unwrap()).unwrap();
        assert!(text.ends_with("basis,amplitude\n\"10\",+0.707106781187\n\"01\",-0.707106781187\n"), "{text}");
        assert!(text.contains("S_tot=0 m_tot=0 unpaired=0"));
    }

    #[test]
    fn grid_snapping() {
        let (points, warnings) = sweep_grid(&sweep_args(vec![4], Ratio::from_integer(0), Ratio::from_integer(1), 3)).unwrap();
        assert_eq!(points, [(4, Ratio::from_integer(0)), (4, Ratio::new(1, 2)), (4, Ratio::from_integer(1))]);
        assert!(warnings.is_empty());
        let (points, warnings) = sweep_grid(&sweep_args(vec![3], Ratio::from_integer(0), Ratio::from_integer(1), 5)).unwrap();
        assert_eq!(points.len(), 4);
        assert_eq!(warnings.len(), 4);
        assert!(sweep_grid(&sweep_args(vec![3], Ratio::from_integer(1), Ratio::from_integer(0), 2)).is_err());
        assert!(sweep_grid(&sweep_args(vec![3], Ratio::from_integer(0), Ratio::from_integer(1), 0)).is_err());
    }

    #[test]
    fn parallel_sampler_matches_sequential() {
        let shape = SystemShape::new(2, 3).unwrap();
        let shots = 3 * rvb_core::collapse::SHARD_SIZE + 17;
        let ours = run_sampler(shape, shots, 5).unwrap();
        let theirs = rvb_core::collapse::sample_collapse(shape, shots, 5).unwrap();
        assert_eq!(ours, theirs);
    }
}
