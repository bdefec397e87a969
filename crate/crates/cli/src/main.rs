use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wavop::opalgebra::HamiltonianSpec;
use wavop_cli::artifacts::{fmt_f64, write_file};
use wavop_cli::{
    chaos_demo, execute_scenario, heisenberg_print, ChaosOptions, CliError, CliResult, Observable,
    ScenarioConfig,
};

#[derive(Parser)]
#[command(name = "wavop", version, about = "Wavefunction evolution by operator methods")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the methods named in a scenario config.
    Run { config: PathBuf },
    /// Like `run`, but the config must name exactly two methods.
    Compare { config: PathBuf },
    /// Print the Heisenberg-picture Taylor series of q or p.
    Heisenberg {
        #[arg(long, value_enum)]
        hamiltonian: Kind,
        #[arg(long, value_enum, default_value = "q")]
        op: Observable,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long)]
        force: Option<f64>,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
    /// Split a centred packet on the inverted oscillator.
    ChaosDemo {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        width: f64,
        #[arg(long)]
        tmax: f64,
        #[arg(long, default_value_t = 31)]
        samples: usize,
        #[arg(long, default_value_t = 4096)]
        max_points: usize,
        /// Directory for density.csv, observables.csv and report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Free,
    ConstantForce,
    Harmonic,
    InvertedHarmonic,
}

fn read_config(path: &Path) -> CliResult<ScenarioConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    ScenarioConfig::from_json(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn required(name: &str, value: Option<f64>) -> CliResult<f64> {
    value.ok_or_else(|| CliError::at(name, "required for this Hamiltonian"))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run { config } => scenario(&config, false),
        Command::Compare { config } => scenario(&config, true),
        Command::Heisenberg {
            hamiltonian,
            op,
            order,
            mass,
            force,
            omega,
            lambda,
            hbar,
        } => {
            let h = match hamiltonian {
                Kind::Free => HamiltonianSpec::free(mass, hbar),
                Kind::ConstantForce => HamiltonianSpec::constant_force(mass, required("force", force)?, hbar),
                Kind::Harmonic => HamiltonianSpec::harmonic(mass, required("omega", omega)?, hbar),
                Kind::InvertedHarmonic => {
                    HamiltonianSpec::inverted_harmonic(mass, required("lambda", lambda)?, hbar)
                }
            }
            .map_err(|e| CliError::at("hamiltonian", e))?;
            print!("{}", heisenberg_print(&h, op, order)?);
            Ok(())
        }
        Command::ChaosDemo {
            lambda,
            width,
            tmax,
            samples,
            max_points,
            out,
        } => {
            let mut options = ChaosOptions::new(lambda, width, tmax, samples);
            options.max_points = max_points;
            let run = chaos_demo(options)?;
            for s in &run.report.samples {
                println!(
                    "t={} left={} right={} asymmetry={} bimodal={}",
                    fmt_f64(s.t),
                    fmt_f64(s.left_mass),
                    fmt_f64(s.right_mass),
                    fmt_f64(s.asymmetry),
                    s.bimodal
                );
            }
            match run.report.bimodal_at {
                Some(t) => println!("bimodal from t={}", fmt_f64(t)),
                None => println!("density stayed unimodal up to t={}", fmt_f64(tmax)),
            }
            for w in &run.artifacts.metadata.warnings {
                println!("warning: {}", w.message);
            }
            if let Some(dir) = out {
                write_file(&dir.join("density.csv"), &run.artifacts.density_csv())?;
                write_file(&dir.join("observables.csv"), &run.artifacts.observables_csv())?;
                write_file(&dir.join("report.json"), &run.report.to_json())?;
            }
            Ok(())
        }
    }
}

fn scenario(path: &Path, require_two: bool) -> CliResult<()> {
    let config = read_config(path)?;
    if require_two && config.methods.len() != 2 {
        return Err(CliError::at("methods", "compare needs exactly two methods"));
    }
    let outputs = config.outputs.clone();
    let artifacts = execute_scenario(config)?;
    for line in artifacts.summary_lines() {
        println!("{line}");
    }
    artifacts.write_outputs(&outputs)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wavop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
