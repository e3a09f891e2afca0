//! Shared flag types and config resolution.

use clap::{Args, ValueEnum};
use relspin::inference::{
    EstimatorConfig, EstimatorMethod, DEFAULT_MC_SAMPLES, DEFAULT_QUAD1D_NODES,
    DEFAULT_QUAD3D_NODES,
};
use relspin::protocols::Scenario;
use relspin::HalfInteger;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    AQubits,
    BQubits,
    ASpinj,
    BSpinj,
}

impl ScenarioArg {
    /// Resolve to a scenario; the spin-j variants require --j.
    pub fn resolve(self, j: Option<HalfInteger>) -> Result<Scenario, String> {
        match (self, j) {
            (ScenarioArg::AQubits, None) => Ok(Scenario::AQubits),
            (ScenarioArg::BQubits, None) => Ok(Scenario::BQubits),
            (ScenarioArg::AQubits | ScenarioArg::BQubits, Some(_)) => {
                Err("--j applies only to the spin-j scenarios".into())
            }
            (ScenarioArg::ASpinj, Some(j)) => Ok(Scenario::ASpinJ(j)),
            (ScenarioArg::BSpinj, Some(j)) => Ok(Scenario::BSpinJ(j)),
            (ScenarioArg::ASpinj | ScenarioArg::BSpinj, None) => {
                Err("scenario needs --j (a half-integer, e.g. 5/2 or 2.5)".into())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Mc,
    Quad1d,
    Quad3d,
}

impl From<EstimatorArg> for EstimatorMethod {
    fn from(value: EstimatorArg) -> Self {
        match value {
            EstimatorArg::Mc => EstimatorMethod::MonteCarlo,
            EstimatorArg::Quad1d => EstimatorMethod::Quadrature1D,
            EstimatorArg::Quad3d => EstimatorMethod::Quadrature3D,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Geometric,
}

pub fn parse_half_integer(s: &str) -> Result<HalfInteger, String> {
    s.parse::<HalfInteger>().map_err(|e| e.to_string())
}

/// Estimator flags shared by compute and sweep-j.
#[derive(Args, Clone, Debug)]
pub struct EstimatorFlags {
    /// Estimation method (default: mc for method A, quad1d for method B)
    #[arg(long, value_enum)]
    pub estimator: Option<EstimatorArg>,

    /// Monte Carlo sample count
    #[arg(long)]
    pub samples: Option<u64>,

    /// Quadrature nodes (per axis for quad3d, starting count for quad1d)
    #[arg(long)]
    pub nodes: Option<usize>,

    /// Random seed for Monte Carlo estimation
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for Monte Carlo batches (0 = all cores); results do
    /// not depend on this
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

impl EstimatorFlags {
    /// Resolve against a scenario's defaults: MC 2×10⁶ samples for the
    /// three-spin scenarios, 256-node 1-D quadrature for the pair ones.
    pub fn resolve(&self, scenario: Scenario) -> EstimatorConfig {
        let method = self
            .estimator
            .map(EstimatorMethod::from)
            .unwrap_or(if scenario.is_method_a() {
                EstimatorMethod::MonteCarlo
            } else {
                EstimatorMethod::Quadrature1D
            });
        let nodes = self.nodes.unwrap_or(match method {
            EstimatorMethod::Quadrature1D => DEFAULT_QUAD1D_NODES,
            _ => DEFAULT_QUAD3D_NODES,
        });
        EstimatorConfig {
            method,
            samples: self.samples.unwrap_or(DEFAULT_MC_SAMPLES),
            nodes,
            seed: self.seed,
            workers: self.workers,
        }
    }
}
