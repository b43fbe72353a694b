use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcapulse::PulseMode;
use qcapulse_cli::commands::{self, Builder, RotationKind, SweepParams, VerifyParams};
use qcapulse_cli::CliError;

#[derive(Parser)]
#[command(name = "qcapulse", version, about = "Compile and verify pulse schedules on a line of coupled cells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuilderArg {
    Cnot,
    Icnot,
    Memory,
    Zrot,
    Zzrot,
    Decoupled,
}

#[derive(Clone, Copy, ValueEnum)]
enum PulsesArg {
    Ideal,
    Physical,
}

#[derive(Clone, Copy, ValueEnum)]
enum RotationArg {
    X,
    Z,
    Zz,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a JSON schedule file to its unitary, written as CSV.
    Compile {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a sequence, compile it and compare with its target.
    Verify {
        #[arg(long, value_enum)]
        builder: BuilderArg,
        #[arg(long, default_value_t = 2)]
        cells: usize,
        /// Coupling energy of every bond.
        #[arg(long, default_value_t = 1.0)]
        coupling: f64,
        #[arg(long, default_value_t = 1)]
        control: usize,
        #[arg(long, default_value_t = 1.0)]
        t_memory: f64,
        #[arg(long, value_enum, default_value = "ideal")]
        pulses: PulsesArg,
        #[arg(long, default_value_t = 50.0)]
        gamma_max: f64,
        /// Pulse the cells of each layer one after another.
        #[arg(long)]
        sequential: bool,
        /// Rotated cell, or the first active cell for decoupled operations.
        #[arg(long, default_value_t = 1)]
        site: usize,
        #[arg(long, default_value_t = 1)]
        bond: usize,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
        angle: f64,
        #[arg(long, value_enum, default_value = "zz")]
        rotation: RotationArg,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Error of a finite pi pulse across a range of amplitudes.
    Sweep {
        #[arg(long, default_value_t = 10)]
        cells: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Amplitudes relative to the coupling, as lo:hi:count.
        #[arg(long, default_value = "10:50:41")]
        gamma: String,
        #[arg(long)]
        out: PathBuf,
        /// Also write an SVG plot here.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// One coupling for every bond, or a comma-separated list per bond.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        couplings: Vec<f64>,
        /// Pulsed cell.
        #[arg(long, default_value_t = 1)]
        target: usize,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Compile { input, out } => commands::compile(&input, &out)?,
        Command::Verify {
            builder,
            cells,
            coupling,
            control,
            t_memory,
            pulses,
            gamma_max,
            sequential,
            site,
            bond,
            angle,
            rotation,
            tolerance,
        } => {
            let params = VerifyParams {
                builder: match builder {
                    BuilderArg::Cnot => Builder::Cnot,
                    BuilderArg::Icnot => Builder::Icnot,
                    BuilderArg::Memory => Builder::Memory,
                    BuilderArg::Zrot => Builder::Zrot,
                    BuilderArg::Zzrot => Builder::Zzrot,
                    BuilderArg::Decoupled => Builder::Decoupled,
                },
                cells,
                coupling,
                control,
                t_memory,
                pulses: match pulses {
                    PulsesArg::Ideal => PulseMode::Ideal,
                    PulsesArg::Physical => PulseMode::Physical { gamma_max },
                },
                sequential,
                site,
                bond,
                angle,
                rotation: match rotation {
                    RotationArg::X => RotationKind::X,
                    RotationArg::Z => RotationKind::Z,
                    RotationArg::Zz => RotationKind::Zz,
                },
                tolerance,
            };
            let report = commands::verify(&params)?;
            println!("{}", serde_json::to_string(&report).expect("finite report"));
            if !report.pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Sweep {
            cells,
            epsilon,
            gamma,
            out,
            plot,
            couplings,
            target,
        } => {
            let params = SweepParams {
                cells,
                epsilon,
                gammas: commands::parse_gamma_range(&gamma)?,
                couplings,
                target,
            };
            let result = commands::sweep(&params)?;
            commands::write_sweep(&result, &out, plot.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qcapulse: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
