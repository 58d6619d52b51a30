use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hilbext_cli::commands;
use hilbext_cli::{CliError, Format, Options, Report, Scenario};

#[derive(Parser)]
#[command(name = "hilbext", version, about = "Build and check Hilbert C*-extensions by finite abelian dual actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override every residual tolerance
    #[arg(long, global = true, env = "HILBEXT_TOLERANCE")]
    tolerance: Option<f64>,
    /// Random elements per sampled suite
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Write the report and any exports into this directory
    #[arg(long, global = true)]
    export: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock times (reports are then no longer reproducible)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the outer action, the cocycle identities, γ and permutators
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Build the extension and report its structure
    Construct {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Compute H²(X, Tᵐ) for a finite abelian group
    Cohomology {
        /// Cyclic orders, e.g. 2,2
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<usize>,
        /// trivial, swap, or per-generator permutations like 1,0;1,0
        #[arg(long, default_value = "trivial")]
        action: String,
        /// Number of circle factors in the center
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Sort a scenario's central cocycles into cohomology classes
    Classify {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Build or test an A-module isomorphism between two scenarios
    Iso {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// 1-cochain Z with ω₁ = ∂Z·ω₂
        #[arg(long, conflicts_with = "images")]
        z: Option<PathBuf>,
        /// Images Φ(U_χ) in the target, for extracting Z
        #[arg(long)]
        images: Option<PathBuf>,
    },
    /// Compare the norm routes on an element or on random samples
    Norm {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        element: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    let opts = Options {
        seed: c.seed,
        tolerance: c.tolerance,
        samples: c.samples,
        export: c.export.clone(),
        format: c.format,
        timings: c.timings,
    };
    match &cli.command {
        Command::Validate { scenario } => commands::validate(&Scenario::load(scenario)?, &opts),
        Command::Construct { scenario } => commands::construct(&Scenario::load(scenario)?, &opts),
        Command::Cohomology { group, action, m } => commands::cohomology(group, action, *m, &opts),
        Command::Classify { scenario } => commands::classify(&Scenario::load(scenario)?, &opts),
        Command::Iso {
            scenario,
            target,
            z,
            images,
        } => commands::iso(
            &Scenario::load(scenario)?,
            &Scenario::load(target)?,
            z.as_deref(),
            images.as_deref(),
            &opts,
        ),
        Command::Norm { scenario, element } => {
            commands::norm(&Scenario::load(scenario)?, element.as_deref(), &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.common.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("hilbext: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
