//! Output formatting: the stable CSV schema and file/stdout sinks.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use relspin::inference::InfoGainReport;

/// The fixed data-CSV header shared by `sweep-j` and `compute`.
pub const DATA_CSV_HEADER: &str =
    "scenario,j,label,P_lambda,I_lambda,I_avg,i,stderr,estimator,samples_or_nodes,seed";

/// 12 significant digits, scientific.
pub fn fmt_sig12(value: f64) -> String {
    if value == 0.0 {
        "0".to_string()
    } else {
        format!("{:.11e}", value)
    }
}

/// Minimal decimal form of a j value ("0.5", "2", "25").
pub fn fmt_j(report: &InfoGainReport) -> String {
    let value = report.j.map(|j| j.value()).unwrap_or(0.5);
    format!("{value}")
}

/// One aggregate row per report: label `all`, per-outcome cells empty,
/// stderr = standard error of the per-spin gain.
pub fn sweep_csv_row(report: &InfoGainReport) -> String {
    format!(
        "{},{},all,,,{},{},{},{},{},{}",
        report.scenario,
        fmt_j(report),
        fmt_sig12(report.i_avg),
        fmt_sig12(report.per_spin),
        fmt_sig12(report.per_spin_stderr),
        report.estimator.method,
        report.estimator.samples_or_nodes,
        report.estimator.seed,
    )
}

/// One row per outcome label, carrying the aggregate columns unchanged;
/// stderr = standard error of that label's I_λ.
pub fn report_csv_rows(report: &InfoGainReport) -> Vec<String> {
    report
        .labels
        .iter()
        .enumerate()
        .map(|(k, label)| {
            format!(
                "{},{},{},{},{},{},{},{},{},{},{}",
                report.scenario,
                fmt_j(report),
                label,
                fmt_sig12(report.p[k]),
                fmt_sig12(report.i_lambda[k]),
                fmt_sig12(report.i_avg),
                fmt_sig12(report.per_spin),
                fmt_sig12(report.i_lambda_stderr[k]),
                report.estimator.method,
                report.estimator.samples_or_nodes,
                report.estimator.seed,
            )
        })
        .collect()
}

/// Write to --out or stdout.
pub fn emit(out: &Option<PathBuf>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_has_twelve_digits() {
        assert_eq!(fmt_sig12(0.25), "2.50000000000e-1");
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(-1.0 / 3.0), "-3.33333333333e-1");
    }

    #[test]
    fn header_matches_schema() {
        assert_eq!(DATA_CSV_HEADER.split(',').count(), 11);
    }
}
