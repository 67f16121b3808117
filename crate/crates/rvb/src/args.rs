use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

#[derive(Debug, Parser)]
#[command(name = "rvb", version, about = "Photon-counting collapse of two-row spin registers into RVB states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the spin state left after detecting p photons.
    Collapse(CollapseArgs),
    /// Exact photon-count distribution for one register.
    Dist(DistArgs),
    /// Emission moments across a grid of imbalances alpha = N/M.
    Sweep(SweepArgs),
    /// Monte Carlo photon counts with a chi-square test against the exact law.
    Sample(SampleArgs),
    /// Run the consistency checks and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file, replaced atomically. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Decimal digits for floating-point columns.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, required_unless_present = "alpha", conflicts_with = "alpha")]
    pub n: Option<u32>,
    /// Imbalance N/M as a decimal or a fraction; alpha * M must be whole.
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: Option<Ratio<u64>>,
    /// Report M * P(p), a density in gamma = p/M with unit area.
    #[arg(long)]
    pub density: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// One or more top-row sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<u32>,
    #[arg(long, value_parser = parse_alpha)]
    pub alpha_min: Ratio<u64>,
    #[arg(long, value_parser = parse_alpha)]
    pub alpha_max: Ratio<u64>,
    /// Number of evenly spaced grid points, endpoints included.
    #[arg(long)]
    pub steps: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest register size mu = M + N to check.
    #[arg(long, default_value_t = 12)]
    pub max_mu: u32,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Report file, replaced atomically. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

/// Deliberate corruptions used to check that verification can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Flip the sign of the first row-Schmidt closed-form coefficient.
    ELambdaSign,
}

/// Parses `"3/4"`, `"0.75"` or `"2"` exactly.
pub fn parse_alpha(text: &str) -> Result<Ratio<u64>, String> {
    let bad = || format!("invalid alpha {text:?}: expected a non-negative decimal or fraction");
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if (int.is_empty() && frac.is_empty()) || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: u64 = digits.parse().map_err(|_| bad())?;
    let den = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    Ok(Ratio::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_forms() {
        assert_eq!(parse_alpha("0.5").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_alpha("1.0").unwrap(), Ratio::from_integer(1));
        assert_eq!(parse_alpha("2").unwrap(), Ratio::from_integer(2));
        assert_eq!(parse_alpha("3/9").unwrap(), Ratio::new(1, 3));
        assert_eq!(parse_alpha(".25").unwrap(), Ratio::new(1, 4));
        for bad in ["", ".", "-1", "1/0", "abc", "1e3", "0.5.5"] {
            assert!(parse_alpha(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn command_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
