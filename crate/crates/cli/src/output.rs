//! Text formats: CSV with 12 significant digits in scientific notation, LF
//! line endings.

use heplus_core::PurityTrace;

use crate::error::CliError;

pub const TRACE_HEADER: &str = "t_seconds,purity";

/// `1.23456789012e-5` style, 12 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn trace_csv(trace: &PurityTrace) -> String {
    let mut out = String::with_capacity(32 * (trace.times_s.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for (t, p) in trace.times_s.iter().zip(&trace.purity) {
        out.push_str(&sci(*t));
        out.push(',');
        out.push_str(&sci(*p));
        out.push('\n');
    }
    out
}

/// Reads back a trace CSV as (t, purity) rows.
pub fn parse_trace_csv(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(TRACE_HEADER) => {}
        other => return Err(CliError::Config(format!("unexpected trace header {other:?}"))),
    }
    lines
        .map(|line| {
            let (t, p) = line
                .split_once(',')
                .ok_or_else(|| CliError::Config(format!("bad row '{line}'")))?;
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| CliError::Config(format!("bad number '{s}': {e}")))
            };
            Ok((parse(t)?, parse(p)?))
        })
        .collect()
}
