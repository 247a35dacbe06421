use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use huygens_cli::config::Format;
use huygens_cli::probe::{run_probe, ProbeRequest};
use huygens_cli::{emit, load_config, network, output, sweep, verify, CliError};

#[derive(Parser)]
#[command(
    name = "huygens",
    version,
    about = "Timelike signalling between detectors in FRW universes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep R or T_iB and tabulate the signal and capacity.
    Sweep { config: PathBuf },
    /// Compare the closed form with the quadrature oracle on random geometries.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long = "per-case", default_value_t = 3)]
        per_case: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Receiver lattice inside the sender's light cone, slice by slice.
    Network { config: PathBuf },
    /// Evaluate the commutator at a pair of events or over two windows.
    Probe {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long = "eta-p")]
        eta_p: f64,
        #[arg(long = "R", alias = "r")]
        r: f64,
        /// Integrate over windows [eta, eta + width] and [eta-p, eta-p + width].
        #[arg(long)]
        windowed: bool,
        #[arg(long, default_value_t = 1.0)]
        width: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep { config } => {
            let cfg = load_config(&config)?;
            if !cfg.cosmology.is_matter() {
                eprintln!(
                    "warning: alpha = {} has no closed form; using the mode sum (slow)",
                    cfg.cosmology.alpha()
                );
            }
            let rows = sweep::run_sweep(&cfg)?;
            let text = match cfg.format {
                Format::Csv => output::sweep_csv(&rows),
                Format::Json => output::sweep_json(&rows),
            };
            emit(cfg.output.as_deref(), &text)?;
            let failed = rows.iter().filter(|r| r.result.is_err()).count();
            if failed > 0 {
                return Err(CliError::Failed(format!(
                    "{failed} of {} sweep points failed",
                    rows.len()
                )));
            }
            Ok(())
        }
        Command::Verify {
            seed,
            per_case,
            tol,
        } => {
            let report = verify::run_verify(seed, per_case, tol)?;
            let mut text = String::new();
            for (i, e) in report.entries.iter().enumerate() {
                text.push_str(&format!(
                    "{:>3} case {} A=[{:.6e}, {:.6e}] B=[{:.6e}, {:.6e}] R={:.6e} closed={:.16e} oracle={:.16e} dev={:.3e} {}\n",
                    i + 1,
                    e.case,
                    e.window_a.eta_i(),
                    e.window_a.eta_f(),
                    e.window_b.eta_i(),
                    e.window_b.eta_f(),
                    e.r,
                    e.closed_form,
                    e.oracle,
                    e.deviation,
                    if e.pass { "PASS" } else { "FAIL" }
                ));
            }
            let passed = report.entries.iter().filter(|e| e.pass).count();
            text.push_str(&format!(
                "{passed}/{} geometries pass at tol {tol:e} (max deviation {:.3e})\n",
                report.entries.len(),
                report.max_deviation()
            ));
            emit(None, &text)?;
            if report.all_pass() {
                Ok(())
            } else {
                Err(CliError::Failed(format!(
                    "{} geometries failed",
                    report.entries.len() - passed
                )))
            }
        }
        Command::Network { config } => {
            let cfg = load_config(&config)?;
            let slices = network::run_network(&cfg)?;
            let text = match cfg.format {
                Format::Csv => output::network_csv(&slices),
                Format::Json => output::network_json(&slices),
            };
            emit(cfg.output.as_deref(), &text)
        }
        Command::Probe {
            alpha,
            eta,
            eta_p,
            r,
            windowed,
            width,
            tol,
        } => {
            let text = run_probe(&ProbeRequest {
                alpha,
                eta,
                eta_p,
                r,
                window: windowed.then_some(width),
                tol,
            })?;
            emit(None, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are validation errors; --help/--version succeed.
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
