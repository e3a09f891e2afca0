//! `reproduce`: recompute the headline quantities and compare each against
//! its reference values.
//!
//! Every row carries two references: `nominal`, the coarse two-digit value
//! quoted for the quantity, and `reference`, the high-precision derived
//! value this crate's oracles converge to. Pass/fail is judged against
//! `reference` (nominal values are rounded and, for two quantities, known to
//! disagree with the derivation beyond rounding; the `note` column says so).

use std::f64::consts::LN_2;
use std::path::PathBuf;

use clap::Args;
use relspin::inference::{info_gain, pair_info_gain, EstimatorConfig};
use relspin::protocols::Scenario;
use relspin::HalfInteger;
use serde::Serialize;

use crate::args::FormatArg;
use crate::error::CliError;
use crate::output::{emit, fmt_sig12};

/// Exact closed forms the quadrature and Monte Carlo estimates are held to.
pub fn singlet_gain() -> f64 {
    1.0 - 1.0 / (2.0 * LN_2)
}

pub fn pair_gain_half() -> f64 {
    2.0 - 0.75 * 3f64.log2() - 1.0 / (2.0 * LN_2)
}

/// Converged per-spin gains at j = 50 (quadrature, stable to ~1e-6).
const A_SPINJ_50_PER_SPIN: f64 = 0.135597;
const B_SPINJ_50_PER_SPIN: f64 = 0.105590;

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    pub quantity: String,
    pub nominal: f64,
    pub reference: f64,
    pub computed: f64,
    pub stderr: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ComparisonRow {
    fn new(
        quantity: impl Into<String>,
        nominal: f64,
        reference: f64,
        computed: f64,
        stderr: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            quantity: quantity.into(),
            nominal,
            reference,
            computed,
            stderr,
            tolerance,
            pass: (computed - reference).abs() <= tolerance,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Monte Carlo samples for the sampled rows
    #[arg(long, default_value_t = 2_000_000)]
    pub samples: u64,

    /// Per-axis nodes for the 3-D quadrature references
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,

    /// Random seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    pub workers: usize,

    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Output path (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn build_rows(args: &ReproduceArgs) -> Result<Vec<ComparisonRow>, CliError> {
    let quad = EstimatorConfig { workers: args.workers, ..EstimatorConfig::quadrature_3d(args.nodes) };
    let quad1d = EstimatorConfig::quadrature_1d(128);
    let mc = EstimatorConfig {
        workers: args.workers,
        ..EstimatorConfig::monte_carlo(args.samples, args.seed)
    };

    let aq_quad = info_gain(Scenario::AQubits, &quad)?;
    let aq_mc = info_gain(Scenario::AQubits, &mc)?;
    let bq = info_gain(Scenario::BQubits, &quad1d)?;
    let j2 = HalfInteger::from_twice(4);
    let spin2 = info_gain(Scenario::ASpinJ(j2), &quad)?;
    let j50 = HalfInteger::from_twice(100);
    let spin50 = info_gain(Scenario::ASpinJ(j50), &quad)?;
    let b50 = info_gain(Scenario::BSpinJ(j50), &quad1d)?;
    let pair_half = pair_info_gain(HalfInteger::HALF, 64)?;

    let three_sigma = |stderr: f64| 3.0 * stderr;
    let mut rows = Vec::new();

    // three-qubit outcome marginals, quadrature vs the exact values
    for (k, (label, want)) in
        [("1/2'", 0.25), ("1/2", 0.25), ("3/2", 0.5)].into_iter().enumerate()
    {
        rows.push(ComparisonRow::new(
            format!("P[{label}] a-qubits"),
            want,
            want,
            aq_quad.p[k],
            aq_quad.p_stderr[k],
            1e-6,
        ));
    }

    // three-qubit gains, Monte Carlo vs derived references
    let references = [
        ("I[1/2'] a-qubits", 0.27, singlet_gain()),
        ("I[1/2] a-qubits", 0.24, aq_quad.i_lambda[1]),
        ("I[3/2] a-qubits", 0.07, aq_quad.i_lambda[2]),
    ];
    for (k, (name, nominal, reference)) in references.into_iter().enumerate() {
        rows.push(ComparisonRow::new(
            name,
            nominal,
            reference,
            aq_mc.i_lambda[k],
            aq_mc.i_lambda_stderr[k],
            three_sigma(aq_mc.i_lambda_stderr[k]),
        ));
    }
    rows.push(ComparisonRow::new(
        "I_avg a-qubits",
        0.17,
        aq_quad.i_avg,
        aq_mc.i_avg,
        aq_mc.i_avg_stderr,
        three_sigma(aq_mc.i_avg_stderr),
    ));
    rows.push(ComparisonRow::new(
        "i a-qubits",
        0.056,
        aq_quad.per_spin,
        aq_mc.per_spin,
        aq_mc.per_spin_stderr,
        three_sigma(aq_mc.per_spin_stderr),
    ));

    // disjoint qubit pairs: quadrature vs closed forms
    rows.push(
        ComparisonRow::new(
            "I_pair b-qubits",
            0.08,
            pair_gain_half(),
            pair_half.gain,
            pair_half.error,
            1e-8,
        )
        .with_note("nominal 0.08 disagrees with the closed form 0.089931 beyond rounding"),
    );
    rows.push(
        ComparisonRow::new(
            "I_avg b-qubits",
            0.24,
            3.0 * pair_gain_half(),
            bq.i_avg,
            bq.i_avg_stderr,
            1e-8,
        )
        .with_note("nominal is 3 x 0.08; derived value is 0.269792"),
    );
    rows.push(ComparisonRow::new(
        "i b-qubits",
        0.04,
        pair_gain_half() / 2.0,
        bq.per_spin,
        bq.per_spin_stderr,
        1e-8,
    ));

    // spin-j outcome marginals at j = 2: (1/4, (2j-1)/(8j+4), 1/4, (2j+3)/(8j+4))
    let jv = 2.0;
    let marginals = [
        ("j'", 0.25),
        ("j-1", (2.0 * jv - 1.0) / (8.0 * jv + 4.0)),
        ("j", 0.25),
        ("j+1", (2.0 * jv + 3.0) / (8.0 * jv + 4.0)),
    ];
    for (k, (label, want)) in marginals.into_iter().enumerate() {
        rows.push(ComparisonRow::new(
            format!("P[{label}] a-spinj j=2"),
            want,
            want,
            spin2.p[k],
            spin2.p_stderr[k],
            1e-6,
        ));
    }

    // large-j per-spin endpoints
    rows.push(
        ComparisonRow::new(
            "i a-spinj j=50",
            0.18,
            A_SPINJ_50_PER_SPIN,
            spin50.per_spin,
            spin50.per_spin_stderr,
            1e-3,
        )
        .with_note(
            "nominal 0.18 = 0.55/3 assumes all four outcome gains reach 2*(1-1/(2 ln 2)); \
             the singlet-branch gain is j-independent at 0.2787, capping i at 0.1393",
        ),
    );
    rows.push(ComparisonRow::new(
        "i b-spinj j=50",
        0.10,
        B_SPINJ_50_PER_SPIN,
        b50.per_spin,
        b50.per_spin_stderr,
        1e-3,
    ));

    Ok(rows)
}

pub fn run(args: &ReproduceArgs) -> Result<i32, CliError> {
    let rows = build_rows(args)?;
    let all_pass = rows.iter().all(|r| r.pass);

    let content = match args.format {
        None => render_table(&rows),
        Some(FormatArg::Json) => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
        Some(FormatArg::Csv) => {
            let mut lines =
                vec!["quantity,nominal,reference,computed,stderr,tolerance,status,note".to_string()];
            for r in &rows {
                lines.push(format!(
                    "{},{},{},{},{},{},{},{}",
                    r.quantity,
                    r.nominal,
                    fmt_sig12(r.reference),
                    fmt_sig12(r.computed),
                    fmt_sig12(r.stderr),
                    fmt_sig12(r.tolerance),
                    if r.pass { "pass" } else { "FAIL" },
                    r.note.as_deref().unwrap_or(""),
                ));
            }
            lines.join("\n") + "\n"
        }
    };
    emit(&args.out, &content)?;
    Ok(if all_pass { 0 } else { 1 })
}

fn render_table(rows: &[ComparisonRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<22} {:>8} {:>14} {:>14} {:>10} {:>9}  {}\n",
        "quantity", "nominal", "reference", "computed", "stderr", "tol", "status"
    ));
    let mut notes = Vec::new();
    for r in rows {
        out.push_str(&format!(
            "{:<22} {:>8} {:>14.9} {:>14.9} {:>10.2e} {:>9.1e}  {}{}\n",
            r.quantity,
            r.nominal,
            r.reference,
            r.computed,
            r.stderr,
            r.tolerance,
            if r.pass { "pass" } else { "FAIL" },
            if r.note.is_some() { " *" } else { "" },
        ));
        if let Some(note) = &r.note {
            notes.push(format!("  * {}: {note}", r.quantity));
        }
    }
    if !notes.is_empty() {
        out.push('\n');
        out.push_str(&notes.join("\n"));
        out.push('\n');
    }
    out
}
