use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use equivariant_szego::harness::config::{parse_int_list, parse_point, parse_weights};
use equivariant_szego::harness::{run, write_csv, Experiment, ExperimentConfig};
use equivariant_szego::torus::IrrepLabel;
use equivariant_szego::Result;

#[derive(Parser)]
#[command(name = "szego-harness", about = "Compare exact equivariant Szegő kernels with their predicted asymptotics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// On-diagonal scaling at a zero-level point
    Diagonal(Overrides),
    /// Near-diagonal scaling in a Heisenberg chart
    Offdiag(Overrides),
    /// Near-diagonal scaling with the first point moved by the group and fiber actions
    Translated(Overrides),
    /// Exponential decay away from the zero level
    Decay(Overrides),
    /// Vanishing at levels where the isotype does not occur
    Selection(Overrides),
    /// Weight-sum against quadrature on random configurations
    Crosscheck(Overrides),
    /// Gaussian orbit integral against quadrature
    Gaussian(Overrides),
    /// Stationary point and Hessian of the model phase
    Phase(Overrides),
}

#[derive(Args)]
struct Overrides {
    /// TOML experiment configuration
    #[arg(long)]
    config: PathBuf,
    /// Comma-separated k schedule
    #[arg(long)]
    k: Option<String>,
    /// Comma-separated irrep weights
    #[arg(long, allow_hyphen_values = true)]
    irrep: Option<String>,
    /// Weight rows, e.g. "-1,1" or "1,0,-1;0,1,-1"
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
    /// Comma-separated complex coordinates, e.g. "0.6+0j,0.8j"
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// CSV output path
    #[arg(long)]
    out: Option<PathBuf>,
}

fn configure(experiment: Experiment, o: &Overrides) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::load(&o.config)?;
    config.experiment = experiment;
    if let Some(k) = &o.k {
        config.k_schedule = parse_int_list(k)?;
    }
    if let Some(w) = &o.weights {
        config.weights = parse_weights(w)?;
    }
    if let Some(pi) = &o.irrep {
        config.irrep = IrrepLabel::new(parse_int_list(pi)?);
    }
    if let Some(p) = &o.point {
        config.point = parse_point(p)?;
    }
    if let Some(out) = &o.out {
        config.output_path = Some(out.clone());
    }
    config.normalized()
}

fn execute(experiment: Experiment, o: &Overrides) -> Result<bool> {
    let config = configure(experiment, o)?;
    let report = run(&config)?;
    println!("{report}");
    if let Some(path) = &config.output_path {
        write_csv(path, &report.rows)?;
        println!("wrote {}", path.display());
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (experiment, overrides) = match &cli.command {
        Command::Diagonal(o) => (Experiment::Diagonal, o),
        Command::Offdiag(o) => (Experiment::Offdiag, o),
        Command::Translated(o) => (Experiment::Translated, o),
        Command::Decay(o) => (Experiment::Decay, o),
        Command::Selection(o) => (Experiment::Selection, o),
        Command::Crosscheck(o) => (Experiment::Crosscheck, o),
        Command::Gaussian(o) => (Experiment::Gaussian, o),
        Command::Phase(o) => (Experiment::Phase, o),
    };
    match execute(experiment, overrides) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
