//! `compute`: evaluate one scenario and print the full report.

use std::path::PathBuf;

use clap::Args;
use relspin::inference::info_gain;
use relspin::HalfInteger;

use crate::args::{parse_half_integer, EstimatorFlags, FormatArg, ScenarioArg};
use crate::error::CliError;
use crate::output::{emit, report_csv_rows, DATA_CSV_HEADER};

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// Encoding scenario
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,

    /// Spin j for the spin-j scenarios (e.g. 5/2 or 2.5)
    #[arg(long, value_parser = parse_half_integer)]
    pub j: Option<HalfInteger>,

    #[command(flatten)]
    pub estimator: EstimatorFlags,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Output path (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &ComputeArgs) -> Result<i32, CliError> {
    let scenario = args.scenario.resolve(args.j).map_err(CliError::Usage)?;
    let cfg = args.estimator.resolve(scenario);
    let report = info_gain(scenario, &cfg)?;

    let content = match args.format {
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        FormatArg::Csv => {
            let mut lines = vec![DATA_CSV_HEADER.to_string()];
            lines.extend(report_csv_rows(&report));
            lines.join("\n") + "\n"
        }
    };
    emit(&args.out, &content)?;
    Ok(0)
}
