use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diter_core::cases::{builtin_cases, load_case};
use diter_core::report::{cancellation_report, DEFAULT_POINT};
use diter_core::SchemeKind;

use diter::error::{CliError, Result};
use diter::experiment::{load_custom, run_experiment, run_problem, CustomInput, RunConfig, SequenceChoice};
use diter::output::{self, float};
use diter::verify::verify_case;

/// Power iteration, Jacobi and Gauss-Seidel as fluid diffusion.
#[derive(Parser, Debug)]
#[command(name = "diter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the schemes on a built-in case (case1..case4).
    Case {
        name: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the schemes on a MatrixMarket file.
    Custom {
        #[arg(long)]
        matrix: PathBuf,
        /// Read the matrix as Q of a PageRank problem with this damping factor.
        #[arg(long)]
        damping: Option<f64>,
        /// Constant term B for Jacobi and affine Gauss-Seidel.
        #[arg(long)]
        b: Option<PathBuf>,
        /// Initial vector for PI and linear Gauss-Seidel (default: uniform).
        #[arg(long)]
        x0: Option<PathBuf>,
        /// Output file prefix (default: matrix file stem).
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check every scheme against its diffusion form, step by step.
    Verify {
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value_t = 50)]
        steps: u64,
        /// Also write <case>_equivalence.csv here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split the lost fluid into cancellation and contraction.
    CancelReport {
        #[arg(long)]
        case: String,
        #[arg(long)]
        scheme: SchemeKind,
        #[arg(long, default_value_t = 50)]
        steps: u64,
        /// Trace point (1 = initial residual) whose producing step is reported.
        #[arg(long, default_value_t = DEFAULT_POINT)]
        point: usize,
        /// Also write the per-step trace as <case>_<scheme>_cancel.csv here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Comma-separated subset of pi,jac,gsl,gsa.
    #[arg(long, value_delimiter = ',')]
    schemes: Option<Vec<SchemeKind>>,
    /// Reported iterations (sweeps for Gauss-Seidel).
    #[arg(long, default_value_t = 1000)]
    iters: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// round-robin, or a 1-based list such as 5,4,3,2,1 replayed cyclically.
    #[arg(long, default_value = "round-robin")]
    seq: SequenceChoice,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Coordinate updates per reported Gauss-Seidel iteration (default: N).
    #[arg(long)]
    sample_every: Option<usize>,
}

impl RunArgs {
    fn config(&self, fallback: &[SchemeKind]) -> RunConfig {
        RunConfig {
            schemes: self.schemes.clone().unwrap_or_else(|| fallback.to_vec()),
            sequence: self.seq.clone(),
            iterations: self.iters,
            tol: self.tol,
            output_dir: self.out.clone(),
            sample_every: self.sample_every,
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Case { name, run } => {
            let case = load_case(&name)?;
            let outcome = run_experiment(&case, &run.config(&SchemeKind::ALL))?;
            for t in &outcome.traces {
                println!("{}\t{}\t{}", t.scheme.label(), t.steps, float(t.residual));
            }
            outcome.check_converged()
        }
        Command::Custom {
            matrix,
            damping,
            b,
            x0,
            name,
            run,
        } => {
            let input = CustomInput {
                matrix,
                damping,
                b,
                x0,
                name,
            };
            let (name, problem) = load_custom(&input)?;
            let usable: Vec<SchemeKind> = SchemeKind::ALL.into_iter().filter(|k| problem.supports(*k)).collect();
            let outcome = run_problem(&name, &problem, &run.config(&usable))?;
            for t in &outcome.traces {
                println!("{}\t{}\t{}", t.scheme.label(), t.steps, float(t.residual));
            }
            outcome.check_converged()
        }
        Command::Verify { case, steps, out } => {
            let cases = match case {
                Some(name) => vec![load_case(&name)?],
                None => builtin_cases(),
            };
            println!("case,{}", output::EQUIVALENCE_HEADER.join(","));
            for case in cases {
                let reports = verify_case(&case, steps)?;
                for r in &reports {
                    println!("{},{},{},{}", case.name, r.scheme.label(), r.steps, float(r.worst()));
                    if r.worst() > 1e-10 {
                        log::warn!("{} {}: discrepancy {:e}", case.name, r.scheme, r.worst());
                    }
                }
                if let Some(dir) = &out {
                    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
                    output::write_equivalence(&dir.join(format!("{}_equivalence.csv", case.name)), &reports)?;
                }
            }
            Ok(())
        }
        Command::CancelReport {
            case,
            scheme,
            steps,
            point,
            out,
        } => {
            let case = load_case(&case)?;
            let summary = cancellation_report(&case, scheme, steps, point)?;
            let fraction = |f: Option<f64>| f.map_or_else(|| "0/0".to_string(), float);
            println!(
                "case\t{}\nscheme\t{}\nsteps\t{}",
                case.name,
                scheme.label(),
                summary.steps
            );
            println!(
                "cumulative\tcancelled={}\tcontracted={}\tfraction={}",
                float(summary.cumulative_cancelled),
                float(summary.cumulative_contracted),
                fraction(summary.cumulative_fraction())
            );
            println!(
                "point {}\tcancelled={}\tcontracted={}\tfraction={}",
                point,
                float(summary.point_cancelled),
                float(summary.point_contracted),
                fraction(summary.point_fraction())
            );
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
                let path = dir.join(format!("{}_{}_cancel.csv", case.name, scheme.short_name()));
                output::write_trace(&path, &summary.per_step)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
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
