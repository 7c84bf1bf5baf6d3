//! Running the four schemes on a problem and writing their traces.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use diter_core::cases::CaseDefinition;
use diter_core::diffusion::{downsample, DiffusionRun, StoppingRule, TraceRecord};
use diter_core::{
    to_diffusion, DenseVector, DiffusionEquivalent, PageRank, SchemeKind, SchemeSpec, SparseColumnMatrix,
    UpdateSequence,
};
use log::info;

use crate::error::{CliError, Result};
use crate::{gnuplot, mtx, output, vecfile};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SequenceChoice {
    #[default]
    RoundRobin,
    /// 1-based coordinates, replayed cyclically.
    Explicit(Vec<usize>),
}

impl FromStr for SequenceChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("round-robin") || s.eq_ignore_ascii_case("rr") {
            return Ok(SequenceChoice::RoundRobin);
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad coordinate '{t}' in sequence"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(SequenceChoice::Explicit)
    }
}

impl SequenceChoice {
    pub fn build(&self, dim: usize) -> Result<UpdateSequence> {
        let seq = match self {
            SequenceChoice::RoundRobin => UpdateSequence::round_robin(dim),
            SequenceChoice::Explicit(list) => UpdateSequence::explicit_one_based(dim, list),
        };
        seq.map_err(|e| CliError::Usage(format!("--seq: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub schemes: Vec<SchemeKind>,
    pub sequence: SequenceChoice,
    /// Reported iterations: VLU steps, or blocks of `sample_every` CLU steps.
    pub iterations: u64,
    pub tol: f64,
    pub output_dir: PathBuf,
    /// CLU steps per reported iteration; the dimension when unset.
    pub sample_every: Option<usize>,
}

impl RunConfig {
    pub fn new(output_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            schemes: SchemeKind::ALL.to_vec(),
            sequence: SequenceChoice::RoundRobin,
            iterations: 1000,
            tol: StoppingRule::DEFAULT_TOLERANCE,
            output_dir: output_dir.into(),
            sample_every: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schemes.is_empty() {
            return Err(CliError::Usage("no schemes selected".into()));
        }
        if self.iterations == 0 {
            return Err(CliError::Usage("--iters must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.sample_every == Some(0) {
            return Err(CliError::Usage("--sample-every must be at least 1".into()));
        }
        Ok(())
    }
}

/// What the schemes are run on.
#[derive(Debug, Clone)]
pub enum Problem {
    /// PageRank on `Q`, run in decomposed form; `x0` seeds PI and GSl.
    PageRank { pagerank: PageRank, x0: DenseVector },
    /// `X = PX` from `x0`, and `X = PX + B` from zero when `b` is given.
    FixedPoint {
        p: SparseColumnMatrix,
        b: Option<DenseVector>,
        x0: DenseVector,
    },
}

impl Problem {
    pub fn pagerank(pagerank: PageRank) -> Self {
        let x0 = DenseVector::uniform(pagerank.dim());
        Problem::PageRank { pagerank, x0 }
    }

    pub fn dim(&self) -> usize {
        match self {
            Problem::PageRank { pagerank, .. } => pagerank.dim(),
            Problem::FixedPoint { p, .. } => p.dim(),
        }
    }

    pub fn supports(&self, kind: SchemeKind) -> bool {
        match self {
            Problem::PageRank { .. } => true,
            Problem::FixedPoint { b, .. } => !kind.is_affine() || b.is_some(),
        }
    }

    pub fn equivalent(&self, kind: SchemeKind, seq: &UpdateSequence) -> Result<DiffusionEquivalent> {
        match self {
            Problem::PageRank { pagerank, x0 } => Ok(pagerank.diffusion_for(kind, seq, x0)?),
            Problem::FixedPoint { p, b, x0 } => {
                let spec = SchemeSpec::new(
                    kind,
                    p.clone(),
                    if kind.is_affine() { b.clone() } else { None },
                    (!kind.is_affine()).then(|| x0.clone()),
                    kind.is_coordinate_level().then(|| seq.clone()),
                )?;
                Ok(to_diffusion(&spec)?)
            }
        }
    }
}

/// One scheme's run, already downsampled to reported iterations.
#[derive(Debug, Clone)]
pub struct SchemeTrace {
    pub scheme: SchemeKind,
    pub trace: Vec<TraceRecord>,
    pub steps: u64,
    pub residual: f64,
    pub converged: bool,
}

/// Runs one scheme without touching the file system.
pub fn simulate(problem: &Problem, kind: SchemeKind, cfg: &RunConfig) -> Result<(SchemeTrace, DiffusionRun)> {
    let seq = cfg.sequence.build(problem.dim())?;
    let eq = problem.equivalent(kind, &seq)?;
    let every = if kind.is_coordinate_level() {
        cfg.sample_every.unwrap_or(problem.dim())
    } else {
        1
    };
    let stop = StoppingRule::tolerance(cfg.tol)
        .with_max_steps(cfg.iterations.saturating_mul(every as u64))
        .with_check_interval(every as u64);
    let run = eq.run(stop)?;
    let scheme_trace = SchemeTrace {
        scheme: kind,
        trace: downsample(run.trace(), every),
        steps: run.state.step(),
        residual: run.state.residual(),
        converged: run.converged(),
    };
    Ok((scheme_trace, run))
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub name: String,
    pub traces: Vec<SchemeTrace>,
    pub csv_paths: Vec<PathBuf>,
    pub plot_path: PathBuf,
    pub tol: f64,
}

impl ExperimentOutcome {
    /// The first scheme that hit its step cap above tolerance, as an error.
    pub fn check_converged(&self) -> Result<()> {
        match self.traces.iter().find(|t| !t.converged) {
            Some(t) => Err(CliError::NotConverged {
                scheme: t.scheme,
                steps: t.steps,
                residual: t.residual,
                tol: self.tol,
            }),
            None => Ok(()),
        }
    }
}

pub fn trace_path(dir: &Path, name: &str, kind: SchemeKind) -> PathBuf {
    dir.join(format!("{name}_{}.csv", kind.short_name()))
}

/// Runs every configured scheme on `problem` and writes `<name>_<scheme>.csv`
/// plus `<name>_plot.gp` into the output directory.
pub fn run_problem(name: &str, problem: &Problem, cfg: &RunConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    if let Some(k) = cfg.schemes.iter().find(|k| !problem.supports(**k)) {
        return Err(CliError::Usage(format!("{k} needs a constant term (--b)")));
    }
    fs::create_dir_all(&cfg.output_dir).map_err(|e| CliError::io(&cfg.output_dir, e))?;

    let mut traces = Vec::new();
    let mut csv_paths = Vec::new();
    for &kind in &cfg.schemes {
        let (trace, _) = simulate(problem, kind, cfg)?;
        let path = trace_path(&cfg.output_dir, name, kind);
        output::write_trace(&path, &trace.trace)?;
        info!(
            "{kind}: {} steps, residual {:e} -> {}",
            trace.steps,
            trace.residual,
            path.display()
        );
        traces.push(trace);
        csv_paths.push(path);
    }

    let plot_path = cfg.output_dir.join(format!("{name}_plot.gp"));
    fs::write(&plot_path, gnuplot::plot_script(name, &cfg.schemes)).map_err(|e| CliError::io(&plot_path, e))?;
    Ok(ExperimentOutcome {
        name: name.to_string(),
        traces,
        csv_paths,
        plot_path,
        tol: cfg.tol,
    })
}

pub fn run_experiment(case: &CaseDefinition, cfg: &RunConfig) -> Result<ExperimentOutcome> {
    run_problem(case.name, &Problem::pagerank(case.pagerank()?), cfg)
}

/// File inputs for a user-supplied problem.
#[derive(Debug, Clone, Default)]
pub struct CustomInput {
    pub matrix: PathBuf,
    /// Treat the matrix as `Q` of a PageRank problem with this damping.
    pub damping: Option<f64>,
    pub b: Option<PathBuf>,
    pub x0: Option<PathBuf>,
    /// Output prefix; the matrix file stem when unset.
    pub name: Option<String>,
}

pub fn load_custom(input: &CustomInput) -> Result<(String, Problem)> {
    let m = mtx::read_matrix(&input.matrix)?;
    let n = m.dim();
    let load = |path: &PathBuf| -> Result<DenseVector> {
        let v = vecfile::read_vector(path)?;
        if v.len() != n {
            return Err(CliError::Input {
                context: path.display().to_string(),
                source: diter_core::Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                },
            });
        }
        Ok(v)
    };
    let b = input.b.as_ref().map(load).transpose()?;
    let x0 = input
        .x0
        .as_ref()
        .map(load)
        .transpose()?
        .unwrap_or_else(|| DenseVector::uniform(n));

    let problem = match input.damping {
        Some(d) => {
            if b.is_some() {
                return Err(CliError::Usage("--b cannot be combined with --damping".into()));
            }
            Problem::PageRank {
                pagerank: PageRank::new(m, d)?,
                x0,
            }
        }
        None => Problem::FixedPoint { p: m, b, x0 },
    };
    let name = match &input.name {
        Some(name) => name.clone(),
        None => input
            .matrix
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into()),
    };
    Ok((name, problem))
}

pub fn run_custom(input: &CustomInput, cfg: &RunConfig) -> Result<ExperimentOutcome> {
    let (name, problem) = load_custom(input)?;
    run_problem(&name, &problem, cfg)
}
