use std::time::Instant;

use log::{debug, info};

use chowcalc_core::chowcalc::{
    chc1_divisor, chc1_smooth_2resolution, chc1_surface, chc1_variety, ChowError, DegreeValue, Rule,
};
use chowcalc_core::dualcomplex::export_dot;

use crate::config::{Config, Input, SCHEMA_VERSION};
use crate::error::CliError;
use crate::report::{CheckJson, DegreeRow, Report, Status};

fn rows<'a>(values: impl Iterator<Item = (&'a i64, &'a DegreeValue)>) -> Vec<DegreeRow> {
    let mut rows: Vec<DegreeRow> = values.map(|(&m, v)| DegreeRow::new(m, v)).collect();
    rows.sort_by_key(|r| std::cmp::Reverse(r.m));
    rows
}

/// Runs the computation for a validated config. A hypothesis failure is a
/// report with status `HypothesisFailed` and the E2 page, not an error.
pub fn run(config: &Config) -> Result<Report, CliError> {
    let start = Instant::now();
    let input = config.to_input()?;
    let d = config.dimension as i64;
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        mode: config.mode.as_str().into(),
        dimension: config.dimension,
        status: Status::Ok,
        path: None,
        target: if matches!(input, Input::Divisor(_)) { "CHC^1(E,m)" } else { "CHC^1(X,m)" }.into(),
        table: Vec::new(),
        divisor_table: Vec::new(),
        outside_range: vec![
            format!("m >= 2: 0 ({})", Rule::VanishesAboveOne),
            format!("m < {}: 0 ({})", 1 - d, Rule::VanishesBelowDimension),
        ],
        checklist: Vec::new(),
        caveats: Vec::new(),
        sequences: Vec::new(),
        e2_page: Vec::new(),
        failure: None,
        timing: None,
    };
    info!("running {} mode, dimension {d}", report.mode);

    let outcome = match &input {
        Input::Divisor(data) => chc1_divisor(data).map(|r| {
            report.table = rows(r.values.iter());
            report.set_sequences(&r.report);
            report.set_e2(&r.abutment.e2);
        }),
        Input::Variety { data, pic_resolution, restriction } | Input::Surface { data, pic_resolution, restriction } => {
            let result = if matches!(input, Input::Variety { .. }) {
                chc1_variety(data, pic_resolution, restriction)
            } else {
                chc1_surface(data, pic_resolution, restriction)
            };
            result.map(|r| {
                report.table = rows(r.values.iter());
                report.divisor_table = rows(r.divisor.values.iter());
                report.set_sequences(&r.report);
                report.set_e2(&r.divisor.abutment.e2);
            })
        }
        Input::SmoothTwoStep(s) => chc1_smooth_2resolution(s).map(|r| {
            let mut table = rows(r.values.iter());
            for m in (1 - d..-1).rev() {
                table.push(DegreeRow::forced_zero(m, Rule::VanishesSmoothPieces));
            }
            table.retain(|row| row.m >= 1 - d);
            report.table = table;
            report.set_sequences(&r.report);
        }),
    };
    match outcome {
        Ok(()) => {}
        Err(ChowError::HypothesisFailed(f)) => {
            debug!("hypotheses failed: {}", f.reason);
            report.status = Status::HypothesisFailed;
            report.failure = Some(f.reason.clone());
            report.checklist = f
                .checklist
                .iter()
                .map(|c| CheckJson { name: c.name.into(), holds: c.holds })
                .collect();
            report.set_e2(&f.e2);
        }
        Err(e) => return Err(CliError::from_core(e)),
    }
    report.timing = Some(start.elapsed());
    Ok(report)
}

/// DOT description of the dual complex, when the mode has one.
pub fn dot(config: &Config) -> Result<Option<String>, CliError> {
    Ok(config.to_input()?.gamma().map(export_dot))
}
