//! CSV export of traces and equivalence reports.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use diter_core::diffusion::TraceRecord;
use diter_core::EquivalenceReport;

use crate::error::{CliError, Result};

pub const TRACE_HEADER: [&str; 4] = ["step", "residual_l1", "cancelled", "contracted"];
pub const EQUIVALENCE_HEADER: [&str; 3] = ["scheme", "steps", "max_discrepancy"];

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_trace_to<W: Write>(out: W, trace: &[TraceRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for r in trace {
        w.write_record([
            r.step.to_string(),
            float(r.residual_l1),
            float(r.cancelled),
            float(r.contracted),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace(path: &Path, trace: &[TraceRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    write_trace_to(file, trace).map_err(|e| CliError::Csv {
        path: path.into(),
        source: e,
    })
}

pub fn write_equivalence_to<W: Write>(out: W, reports: &[EquivalenceReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EQUIVALENCE_HEADER)?;
    for r in reports {
        w.write_record([r.scheme.label().to_string(), r.steps.to_string(), float(r.worst())])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_equivalence(path: &Path, reports: &[EquivalenceReport]) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    write_equivalence_to(file, reports).map_err(|e| CliError::Csv {
        path: path.into(),
        source: e,
    })
}

/// Reads a trace CSV back. Used by tests and by anyone post-processing runs.
pub fn read_trace<R: io::Read>(input: R) -> csv::Result<Vec<TraceRecord>> {
    let mut r = csv::Reader::from_reader(input);
    r.records()
        .map(|rec| {
            let rec = rec?;
            let num = |k: usize| rec[k].parse::<f64>().unwrap_or(f64::NAN);
            Ok(TraceRecord {
                step: rec[0].parse().unwrap_or(u64::MAX),
                residual_l1: num(1),
                cancelled: num(2),
                contracted: num(3),
            })
        })
        .collect()
}
