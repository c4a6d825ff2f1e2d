//! `potts-atlas`: exact boundary-condition tables for the Potts model on
//! random planar maps.

mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use potts_atlas_core::classify::Series;
use potts_atlas_core::duality::Model;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "potts-atlas", version, about = "Exact boundary-condition atlas for the q-state Potts model on random planar maps")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Allowed q = 2(1 + cos nπ/m) for coprime 0 < n < m <= max-m.
    AllowedQ {
        #[arg(long)]
        max_m: u64,
    },
    /// Boundary values p with exact branch termination.
    AllowedP {
        #[command(flatten)]
        param: ParamArgs,
        /// Include values outside the physical range 0 < p <= q.
        #[arg(long)]
        all: bool,
    },
    /// Sheet coefficients for one series member.
    Coeffs {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long)]
        series: Series,
        #[arg(long = "M", allow_negative_numbers = true)]
        big_m: i64,
        /// Label range `LO..HI` (inclusive); defaults to the termination range.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<LabelRange>,
    },
    /// Discriminant degree and critical exponents.
    Exponents {
        #[command(flatten)]
        param: ParamArgs,
    },
    /// Exhaustive search for integer boundary values p = target.
    Scan {
        #[arg(long)]
        max_m: u64,
        #[arg(long, allow_negative_numbers = true)]
        target: i64,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "POTTS_ATLAS_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Run the exact test on every value instead of float-prefiltered ones.
        #[arg(long)]
        no_prefilter: bool,
    },
    /// Word algebra and Kramers-Wannier duality.
    Duality {
        #[command(subcommand)]
        command: DualityCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum DualityCommand {
    /// List allowed words, or verify the expansion on every spin string.
    Words {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Dual temperature and coupling rescaling.
    Beta {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Cubic coupling to rescale.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        g: f64,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Ising,
    Potts3,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Ising => Model::Ising,
            ModelArg::Potts3 => Model::Potts3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelRange {
    pub lo: i64,
    pub hi: i64,
}

impl std::str::FromStr for LabelRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected LO..HI, got {s:?}");
        let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Ok(LabelRange { lo, hi })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            if let Err(e) = report.render(cli.format, &mut out).and_then(|_| out.flush()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_ranges_parse() {
        assert_eq!("-3..4".parse(), Ok(LabelRange { lo: -3, hi: 4 }));
        assert!("3".parse::<LabelRange>().is_err());
        assert!("a..b".parse::<LabelRange>().is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
