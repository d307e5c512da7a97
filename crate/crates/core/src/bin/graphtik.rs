use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphtik::harness::commands::{self, Output};
use graphtik::harness::{ExampleId, ExperimentConfig, ForwardMethod, SynthesisMode, TestFunction};
use graphtik::penalty::PenaltyKind;
use graphtik::{Error, Result};

/// Graph-Laplacian discretization and Tikhonov deblurring experiments.
#[derive(Parser)]
#[command(name = "graphtik", version)]
struct Cli {
    /// JSON experiment config; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Also write the report as JSON.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of a discretization against the continuous spectrum.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        method: Option<String>,
    },
    /// Forward error max_i |(K f)_i − K[f](x_i)| for both discretizations.
    ApproxError {
        #[command(flatten)]
        common: Common,
        #[arg(long = "f")]
        f: Option<u8>,
    },
    /// Restore one test function with the oracle α sweep.
    Deblur {
        #[command(flatten)]
        common: Common,
        #[arg(long = "f")]
        f: Option<u8>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        penalty: Option<String>,
        #[arg(long)]
        r_frac: Option<f64>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        alpha_max: Option<f64>,
        #[arg(long)]
        alpha_min: Option<f64>,
        #[arg(long)]
        alpha_count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// quadrature or analytic
        #[arg(long)]
        synthesis: Option<String>,
    },
    /// Recompute one of the seven tables.
    Table {
        #[arg(long)]
        id: u8,
        /// Comma-separated seeds; defaults to 0..19.
        #[arg(long)]
        seeds: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Data behind one of the three figures.
    Figure {
        #[arg(long)]
        id: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    example: Option<u8>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config_error(e: impl std::fmt::Display) -> Error {
    Error::Config(e.to_string())
}

fn load_base(path: Option<&PathBuf>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => ExperimentConfig::from_json(&std::fs::read_to_string(p).map_err(|e| config_error(format!("{}: {e}", p.display())))?),
        None => Ok(ExperimentConfig::default()),
    }
}

fn apply_common(c: &mut ExperimentConfig, common: &Common) -> Result<()> {
    if let Some(e) = common.example {
        c.example = ExampleId::try_from(e).map_err(config_error)?;
    }
    if let Some(n) = common.n {
        c.n = n;
    }
    Ok(())
}

fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|e| config_error(format!("seed '{s}': {e}"))))
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    let mut c = load_base(cli.config.as_ref())?;
    let (output, out): (Output, Option<PathBuf>) = match cli.command {
        Command::Spectrum { common, method } => {
            apply_common(&mut c, &common)?;
            if let Some(m) = method {
                c.method = m.parse::<ForwardMethod>()?;
            }
            c.validate()?;
            (commands::spectrum(&c)?, common.out)
        }
        Command::ApproxError { common, f } => {
            apply_common(&mut c, &common)?;
            if let Some(f) = f {
                c.test_function = TestFunction::try_from(f).map_err(config_error)?;
            }
            c.validate()?;
            (commands::approx_error(&c)?, common.out)
        }
        Command::Deblur {
            common,
            f,
            eps,
            method,
            penalty,
            r_frac,
            sigma,
            alpha_max,
            alpha_min,
            alpha_count,
            seed,
            synthesis,
        } => {
            apply_common(&mut c, &common)?;
            if let Some(f) = f {
                c.test_function = TestFunction::try_from(f).map_err(config_error)?;
            }
            if let Some(m) = method {
                c.method = m.parse()?;
            }
            if let Some(p) = penalty {
                c.penalty = p.parse::<PenaltyKind>()?;
            }
            if let Some(s) = synthesis {
                c.synthesis = serde_json::from_value::<SynthesisMode>(serde_json::Value::String(s)).map_err(config_error)?;
            }
            c.epsilon = eps.unwrap_or(c.epsilon);
            c.r_fraction = r_frac.unwrap_or(c.r_fraction);
            c.sigma = sigma.unwrap_or(c.sigma);
            c.alpha_grid.max = alpha_max.unwrap_or(c.alpha_grid.max);
            c.alpha_grid.min = alpha_min.unwrap_or(c.alpha_grid.min);
            c.alpha_grid.count = alpha_count.unwrap_or(c.alpha_grid.count);
            if let Some(s) = seed {
                c.seeds = vec![s];
            }
            c.validate()?;
            (commands::deblur(&c)?, common.out)
        }
        Command::Table { id, seeds, out } => {
            let seeds = match seeds {
                Some(s) => parse_seeds(&s)?,
                None if cli.config.is_some() => c.seeds.clone(),
                None => (0..20).collect(),
            };
            (commands::table(id, &seeds, &c)?, out)
        }
        Command::Figure { id, out } => (commands::figure(id, &c)?, out),
    };
    eprintln!("{}", output.summary);
    output.write(out.as_deref(), cli.json.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
