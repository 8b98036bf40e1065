use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use paracalc::experiments::ReportRow;

use crate::CliError;

pub const HEADER: [&str; 8] = [
    "experiment",
    "seed",
    "params",
    "metric",
    "measured",
    "expected",
    "tolerance",
    "pass",
];

/// Prefix of the first line of every report; the only line that varies
/// between identical runs.
pub const TIMESTAMP_PREFIX: &str = "# generated at unix time ";

/// `v` with 12 significant digits, in the style of C's `%.12g`.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp).max(0) as usize, v);
        trim_zeros(&fixed)
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Timestamp line, header and rows.
pub fn write_report(out: impl Write, rows: &[ReportRow]) -> Result<(), CliError> {
    let mut out = out;
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    writeln!(out, "{TIMESTAMP_PREFIX}{now}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            r.seed.map_or("all".into(), |s| s.to_string()),
            r.params.clone(),
            r.metric.clone(),
            format_float(r.measured),
            format_float(r.expected),
            format_float(r.tolerance),
            r.pass().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
