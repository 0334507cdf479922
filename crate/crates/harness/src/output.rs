//! CSV and JSON emission. CSV columns for convergence runs are fixed:
//! `t,error,space,norm_route,monotone,slope,floor`.

use std::io::Write;

use crate::error::HarnessResult;
use crate::experiments::{ConvergenceReport, EquivalenceReport};

pub const CONVERGENCE_COLUMNS: [&str; 7] = ["t", "error", "space", "norm_route", "monotone", "slope", "floor"];

pub fn convergence_csv(report: &ConvergenceReport, out: impl Write) -> HarnessResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CONVERGENCE_COLUMNS)?;
    let slope = report.slope.map(|s| s.to_string()).unwrap_or_default();
    for r in &report.records {
        w.write_record([
            r.t.to_string(),
            r.error.to_string(),
            r.space.clone(),
            report.norm_route.clone(),
            report.monotone.to_string(),
            slope.clone(),
            report.floor.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn equivalence_csv(report: &EquivalenceReport, out: impl Write) -> HarnessResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pair", "min", "max", "bracket", "fine_bracket", "stability", "drift"])?;
    for r in &report.ratios {
        w.write_record([
            r.pair.clone(),
            r.min.to_string(),
            r.max.to_string(),
            r.bracket.to_string(),
            r.fine_bracket.to_string(),
            r.stability.to_string(),
            r.drift.to_string(),
        ])?;
    }
    w.write_record([
        "liouville/sobolev".to_string(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        report.liouville_sobolev_deviation.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

pub fn json(value: &serde_json::Value, mut out: impl Write) -> HarnessResult<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| crate::error::HarnessError::Runtime(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}
