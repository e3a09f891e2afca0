//! Bayesian information-gain estimation.
//!
//! For a scenario with likelihoods L_λ(c) and prior π over the encoded
//! cosines c, the per-outcome information gain is the prior-to-posterior
//! KL divergence in bits,
//!
//! ```text
//!   I_λ = ∫ P(c|λ) log₂[P(c|λ)/π(c)] dc,     P(c|λ) = L_λ(c) π(c) / P(λ),
//! ```
//!
//! and the average gain is I_avg = Σ_λ P(λ) I_λ. Substituting the posterior
//! into the KL integral collapses it to a prior expectation:
//!
//! ```text
//!   I_λ   = E_π[(L_λ/P(λ)) · log₂(L_λ/P(λ))]
//!   I_avg = E_π[Σ_λ L_λ · log₂(L_λ/P(λ))]
//! ```
//!
//! — the mutual information between outcome and angles. The estimators below
//! evaluate these prior-expectation forms; the algebraic identity with the
//! posterior-KL form is unit-tested on a discrete toy model, and against a
//! direct posterior integration for the three-qubit scenario. Conventions:
//! logarithms are base 2 (bits), 0·log 0 := 0, and likelihoods below 1e-300
//! are treated as exact zeros.
//!
//! Monte Carlo runs are split into fixed-size sample batches, each driven by
//! its own counter-derived ChaCha stream; batch partial sums are reduced in
//! batch order no matter how many workers run, so a (seed, samples) pair
//! fixes the output bit for bit. Standard errors come from the batch-mean
//! scatter.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::half::HalfInteger;
use crate::prior::{sample_direction, sample_pair_cosine, PriorModel};
use crate::protocols::Scenario;
use crate::quadrature::{
    integrate_to_convergence, prior_expectation_correlated_vec, prior_expectation_cube_vec,
};

pub const DEFAULT_MC_SAMPLES: u64 = 2_000_000;
pub const DEFAULT_QUAD1D_NODES: usize = 256;
pub const DEFAULT_QUAD3D_NODES: usize = 64;

/// Likelihoods below this are treated as exact zeros inside logarithms.
pub const LIKELIHOOD_FLOOR: f64 = 1e-300;

/// 1-D node-doubling targets: converged when a doubling moves the result by
/// less than `PAIR_QUAD_TOL`; failing `PAIR_QUAD_FAIL` flags non-convergence.
pub const PAIR_QUAD_TOL: f64 = 1e-9;
pub const PAIR_QUAD_FAIL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EstimatorMethod {
    MonteCarlo,
    Quadrature1D,
    Quadrature3D,
}

impl EstimatorMethod {
    pub fn name(self) -> &'static str {
        match self {
            EstimatorMethod::MonteCarlo => "mc",
            EstimatorMethod::Quadrature1D => "quad1d",
            EstimatorMethod::Quadrature3D => "quad3d",
        }
    }
}

/// How to estimate: method, budget, seed, and worker count (0 = default
/// thread pool). Fixed-order reduction is always on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub method: EstimatorMethod,
    pub samples: u64,
    pub nodes: usize,
    pub seed: u64,
    pub workers: usize,
}

impl EstimatorConfig {
    pub fn monte_carlo(samples: u64, seed: u64) -> Self {
        Self { method: EstimatorMethod::MonteCarlo, samples, nodes: DEFAULT_QUAD3D_NODES, seed, workers: 0 }
    }

    pub fn quadrature_1d(nodes: usize) -> Self {
        Self { method: EstimatorMethod::Quadrature1D, samples: 0, nodes, seed: 0, workers: 0 }
    }

    pub fn quadrature_3d(nodes: usize) -> Self {
        Self { method: EstimatorMethod::Quadrature3D, samples: 0, nodes, seed: 0, workers: 0 }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self.method {
            EstimatorMethod::MonteCarlo if self.samples < 1 => {
                Err(Error::InvalidEstimator("Monte Carlo needs at least 1 sample".into()))
            }
            EstimatorMethod::Quadrature1D | EstimatorMethod::Quadrature3D if self.nodes < 8 => {
                Err(Error::InvalidEstimator("quadrature needs at least 8 nodes".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Descriptive metadata carried by every estimate. Worker count is absent
/// on purpose: estimates are worker-count independent, and so must be the
/// serialized report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorMeta {
    pub method: String,
    pub samples_or_nodes: u64,
    pub seed: u64,
    pub batches: u64,
}

/// Prior-averaged outcome probabilities with error estimates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutcomeEstimate {
    pub labels: Vec<String>,
    pub p: Vec<f64>,
    pub stderr: Vec<f64>,
    pub estimator: EstimatorMeta,
}

/// Full information-gain report for one scenario.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InfoGainReport {
    pub scenario: String,
    pub j: Option<HalfInteger>,
    pub spin_count: usize,
    pub labels: Vec<String>,
    /// Outcome marginals P(λ).
    pub p: Vec<f64>,
    pub p_stderr: Vec<f64>,
    /// Per-outcome gains I_λ in bits.
    pub i_lambda: Vec<f64>,
    pub i_lambda_stderr: Vec<f64>,
    /// I_avg = Σ_λ P(λ) I_λ, bits.
    pub i_avg: f64,
    pub i_avg_stderr: f64,
    /// i = I_avg / N, bits per transmitted spin.
    pub per_spin: f64,
    pub per_spin_stderr: f64,
    /// Method-B quadrature runs record the additive per-pair decomposition.
    pub pair_gains: Option<Vec<f64>>,
    pub estimator: EstimatorMeta,
}

impl InfoGainReport {
    /// Internal-consistency checks every estimator path must satisfy.
    pub fn validate(&self) -> Result<(), Error> {
        for (name, value) in [("I_avg", self.i_avg), ("i", self.per_spin)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { context: name.to_string(), value });
            }
        }
        let p_sum: f64 = self.p.iter().sum();
        if (p_sum - 1.0).abs() > 1e-6 {
            return Err(Error::InvariantViolation {
                what: "outcome marginals summing to 1".into(),
                residual: (p_sum - 1.0).abs(),
            });
        }
        let weighted: f64 = self.p.iter().zip(&self.i_lambda).map(|(p, i)| p * i).sum();
        let budget = 1e-9 + 3.0 * self.i_avg_stderr.max(0.0);
        if (weighted - self.i_avg).abs() > budget {
            return Err(Error::InvariantViolation {
                what: "I_avg = Σ P(λ) I_λ".into(),
                residual: (weighted - self.i_avg).abs(),
            });
        }
        for (k, &i) in self.i_lambda.iter().enumerate() {
            if !i.is_finite() {
                return Err(Error::NonFinite { context: format!("I_{}", self.labels[k]), value: i });
            }
            let slack = 1e-9 + 3.0 * self.i_lambda_stderr[k].max(0.0);
            if i < -slack {
                return Err(Error::InvariantViolation {
                    what: format!("non-negative gain I_{}", self.labels[k]),
                    residual: i,
                });
            }
        }
        let cap = (self.labels.len() as f64).log2() + 1e-9 + 3.0 * self.i_avg_stderr;
        if self.i_avg > cap {
            return Err(Error::InvariantViolation {
                what: "I_avg ≤ log₂(outcomes)".into(),
                residual: self.i_avg - cap,
            });
        }
        Ok(())
    }
}

#[inline]
fn xlog2x(p: f64) -> f64 {
    if p < LIKELIHOOD_FLOOR {
        0.0
    } else {
        p * p.log2()
    }
}

#[inline]
fn safe_log2(p: f64) -> f64 {
    if p < LIKELIHOOD_FLOOR {
        0.0
    } else {
        p.log2()
    }
}

// ---------------------------------------------------------------------------
// Monte Carlo machinery
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct BatchSums {
    n: u64,
    /// Σ L_λ per outcome.
    s1: Vec<f64>,
    /// Σ L_λ log₂ L_λ per outcome.
    s2: Vec<f64>,
}

/// Deterministic batch layout: depends only on the sample count.
fn batch_layout(samples: u64) -> Vec<u64> {
    let batches = (samples / 1024).clamp(2, 512).min(samples.max(1));
    let base = samples / batches;
    let rem = samples % batches;
    (0..batches).map(|b| base + u64::from(b < rem)).collect()
}

fn run_with_workers<T: Send>(workers: usize, op: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        op()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool")
            .install(op)
    }
}

fn mc_batches(scenario: Scenario, cfg: &EstimatorConfig) -> Vec<BatchSums> {
    let evaluator = scenario.evaluator();
    let outcomes = evaluator.outcome_count();
    let prior = PriorModel::haar_product(cfg.seed);
    let layout = batch_layout(cfg.samples);
    let method_a = scenario.is_method_a();

    run_with_workers(cfg.workers, || {
        layout
            .par_iter()
            .enumerate()
            .map(|(batch, &n)| {
                let mut rng = prior.rng(batch as u64);
                let mut sums =
                    BatchSums { n, s1: vec![0.0; outcomes], s2: vec![0.0; outcomes] };
                let mut likelihoods = vec![0.0; outcomes];
                for _ in 0..n {
                    let (x, y, z) = if method_a {
                        let dirs = [
                            sample_direction(&mut rng),
                            sample_direction(&mut rng),
                            sample_direction(&mut rng),
                        ];
                        let c = scenario
                            .cosines_from_directions(&dirs)
                            .expect("method-A cosines");
                        (c.x, c.y, c.z)
                    } else {
                        (
                            sample_pair_cosine(&mut rng),
                            sample_pair_cosine(&mut rng),
                            sample_pair_cosine(&mut rng),
                        )
                    };
                    evaluator.probabilities_into(x, y, z, &mut likelihoods);
                    for (k, &l) in likelihoods.iter().enumerate() {
                        sums.s1[k] += l;
                        sums.s2[k] += xlog2x(l);
                    }
                }
                sums
            })
            .collect()
    })
}

/// Pool batch sums and derive estimates plus batch-mean standard errors.
fn finalize_mc(
    scenario: Scenario,
    batches: &[BatchSums],
    meta: EstimatorMeta,
) -> InfoGainReport {
    let labels = scenario.outcome_labels();
    let outcomes = labels.len();
    let total: u64 = batches.iter().map(|b| b.n).sum();
    let n = total as f64;

    let mut s1 = vec![0.0; outcomes];
    let mut s2 = vec![0.0; outcomes];
    for b in batches {
        for k in 0..outcomes {
            s1[k] += b.s1[k];
            s2[k] += b.s2[k];
        }
    }

    let p: Vec<f64> = s1.iter().map(|s| s / n).collect();
    let log2p: Vec<f64> = p.iter().map(|&v| safe_log2(v)).collect();
    let i_lambda: Vec<f64> = (0..outcomes)
        .map(|k| if s1[k] > 0.0 { s2[k] / s1[k] - log2p[k] } else { 0.0 })
        .collect();
    let i_avg: f64 = (0..outcomes).map(|k| s2[k] / n - p[k] * log2p[k]).sum();

    // batch-mean scatter: E[n_b (mean_b − mean)²] estimates the per-sample
    // variance, weighting uneven batch sizes correctly
    let b_count = batches.len();
    let scatter = |means: &dyn Fn(&BatchSums) -> f64, pooled: f64| -> f64 {
        if b_count < 2 {
            return 0.0;
        }
        let ss: f64 =
            batches.iter().map(|b| b.n as f64 * (means(b) - pooled).powi(2)).sum();
        (ss / (b_count as f64 - 1.0) / n).sqrt()
    };

    let p_stderr: Vec<f64> = (0..outcomes)
        .map(|k| scatter(&|b: &BatchSums| b.s1[k] / b.n as f64, p[k]))
        .collect();
    let i_avg_stderr = scatter(
        &|b: &BatchSums| {
            (0..outcomes)
                .map(|k| (b.s2[k] - b.s1[k] * log2p[k]) / b.n as f64)
                .sum::<f64>()
        },
        i_avg,
    );
    let i_lambda_stderr: Vec<f64> = (0..outcomes)
        .map(|k| {
            if p[k] <= 0.0 {
                return 0.0;
            }
            let pooled = p[k] * i_lambda[k];
            scatter(&|b: &BatchSums| (b.s2[k] - b.s1[k] * log2p[k]) / b.n as f64, pooled) / p[k]
        })
        .collect();

    let spins = scenario.spin_count() as f64;
    InfoGainReport {
        scenario: scenario.name().to_string(),
        j: scenario.j(),
        spin_count: scenario.spin_count(),
        labels,
        p,
        p_stderr,
        i_lambda: i_lambda.clone(),
        i_lambda_stderr,
        i_avg,
        i_avg_stderr,
        per_spin: i_avg / spins,
        per_spin_stderr: i_avg_stderr / spins,
        pair_gains: None,
        estimator: meta,
    }
}

fn mc_meta(cfg: &EstimatorConfig) -> EstimatorMeta {
    EstimatorMeta {
        method: EstimatorMethod::MonteCarlo.name().to_string(),
        samples_or_nodes: cfg.samples,
        seed: cfg.seed,
        batches: batch_layout(cfg.samples).len() as u64,
    }
}

// ---------------------------------------------------------------------------
// Quadrature paths
// ---------------------------------------------------------------------------

/// Prior expectations of the likelihood vector and of L log₂ L, at a given
/// per-axis node count.
fn quad3d_moments(scenario: Scenario, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let evaluator = scenario.evaluator();
    let outcomes = evaluator.outcome_count();
    let integrand = |x: f64, y: f64, z: f64, out: &mut [f64]| {
        let (first, second) = out.split_at_mut(outcomes);
        evaluator.probabilities_into(x, y, z, first);
        for k in 0..outcomes {
            second[k] = xlog2x(first[k]);
        }
    };
    let stacked = if scenario.is_method_a() {
        prior_expectation_correlated_vec(nodes, 2 * outcomes, integrand)
    } else {
        prior_expectation_cube_vec(nodes, 2 * outcomes, integrand)
    };
    let (p, e2) = stacked.split_at(outcomes);
    (p.to_vec(), e2.to_vec())
}

fn quad3d_gain_from_moments(p: &[f64], e2: &[f64]) -> (Vec<f64>, f64) {
    let i_lambda: Vec<f64> = p
        .iter()
        .zip(e2)
        .map(|(&pk, &ek)| if pk > LIKELIHOOD_FLOOR { ek / pk - safe_log2(pk) } else { 0.0 })
        .collect();
    let i_avg = p.iter().zip(&i_lambda).map(|(pk, ik)| pk * ik).sum();
    (i_lambda, i_avg)
}

fn quad3d_info_gain(scenario: Scenario, cfg: &EstimatorConfig) -> InfoGainReport {
    let (p, e2) = quad3d_moments(scenario, cfg.nodes);
    let (coarse_p, coarse_e2) = quad3d_moments(scenario, cfg.nodes / 2);
    let (i_lambda, i_avg) = quad3d_gain_from_moments(&p, &e2);
    let (coarse_i_lambda, coarse_i_avg) = quad3d_gain_from_moments(&coarse_p, &coarse_e2);

    let spins = scenario.spin_count() as f64;
    InfoGainReport {
        scenario: scenario.name().to_string(),
        j: scenario.j(),
        spin_count: scenario.spin_count(),
        labels: scenario.outcome_labels(),
        p_stderr: p.iter().zip(&coarse_p).map(|(a, b)| (a - b).abs()).collect(),
        i_lambda_stderr: i_lambda
            .iter()
            .zip(&coarse_i_lambda)
            .map(|(a, b)| (a - b).abs())
            .collect(),
        p,
        i_lambda,
        i_avg,
        i_avg_stderr: (i_avg - coarse_i_avg).abs(),
        per_spin: i_avg / spins,
        per_spin_stderr: (i_avg - coarse_i_avg).abs() / spins,
        pair_gains: None,
        estimator: EstimatorMeta {
            method: EstimatorMethod::Quadrature3D.name().to_string(),
            samples_or_nodes: cfg.nodes as u64,
            seed: cfg.seed,
            batches: 0,
        },
    }
}

/// Converged 1-D quadrature estimate for one pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairGain {
    pub j: HalfInteger,
    /// (P_{j−1/2}, P_{j+1/2}).
    pub p: [f64; 2],
    /// Per-outcome gains in bits.
    pub i_lambda: [f64; 2],
    /// Average gain of this pair, bits.
    pub gain: f64,
    /// Largest node-doubling change among the converged integrals.
    pub error: f64,
    /// Node count the slowest integral converged at.
    pub nodes: usize,
}

/// Exact-likelihood 1-D Gauss-Legendre integration over cos β for one
/// (qubit, spin-j) pair, node-doubled from `start_nodes` until stable to
/// 1e-9 (hard failure past 1e-7).
pub fn pair_info_gain(j: HalfInteger, start_nodes: usize) -> Result<PairGain, Error> {
    if start_nodes < 16 {
        return Err(Error::InvalidEstimator("pair quadrature needs at least 16 nodes".into()));
    }
    let jv = j.value();
    let lower = move |u: f64| jv * (1.0 - u) / (2.0 * jv + 1.0);

    let mut error = 0.0f64;
    let mut nodes = 0usize;
    let mut track = |c: crate::quadrature::Converged| {
        error = error.max(c.error);
        nodes = nodes.max(c.nodes);
        c.value
    };

    let p_lower = track(integrate_to_convergence(
        |u| lower(u) / 2.0,
        -1.0,
        1.0,
        start_nodes,
        PAIR_QUAD_TOL,
        PAIR_QUAD_FAIL,
    )?);
    let p = [p_lower, 1.0 - p_lower];

    let mut i_lambda = [0.0; 2];
    for (slot, out) in i_lambda.iter_mut().enumerate() {
        let p_out = p[slot];
        let f = move |u: f64| {
            let l = if slot == 0 { lower(u) } else { 1.0 - lower(u) };
            let ratio = l / p_out;
            if ratio < LIKELIHOOD_FLOOR {
                0.0
            } else {
                ratio * ratio.log2() / 2.0
            }
        };
        *out = track(integrate_to_convergence(
            f,
            -1.0,
            1.0,
            start_nodes,
            PAIR_QUAD_TOL,
            PAIR_QUAD_FAIL,
        )?);
    }

    let gain = p[0] * i_lambda[0] + p[1] * i_lambda[1];
    Ok(PairGain { j, p, i_lambda, gain, error, nodes })
}

/// Method-B gain via per-pair 1-D quadrature and additivity. The joint
/// eight-outcome quantities follow exactly from the pair ones: product
/// marginals and summed per-outcome gains.
fn quad1d_info_gain(scenario: Scenario, cfg: &EstimatorConfig) -> Result<InfoGainReport, Error> {
    let pair_js = scenario.pair_spins()?;
    let pairs: Vec<PairGain> =
        pair_js.iter().map(|&j| pair_info_gain(j, cfg.nodes)).collect::<Result<_, _>>()?;

    let outcomes = 8;
    let mut p = Vec::with_capacity(outcomes);
    let mut i_lambda = Vec::with_capacity(outcomes);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                p.push(pairs[0].p[a] * pairs[1].p[b] * pairs[2].p[c]);
                i_lambda
                    .push(pairs[0].i_lambda[a] + pairs[1].i_lambda[b] + pairs[2].i_lambda[c]);
            }
        }
    }
    let i_avg: f64 = p.iter().zip(&i_lambda).map(|(pk, ik)| pk * ik).sum();
    let error: f64 = pairs.iter().map(|g| g.error).sum();

    let spins = scenario.spin_count() as f64;
    let report = InfoGainReport {
        scenario: scenario.name().to_string(),
        j: scenario.j(),
        spin_count: scenario.spin_count(),
        labels: scenario.outcome_labels(),
        p_stderr: vec![error; outcomes],
        i_lambda_stderr: vec![error; outcomes],
        p,
        i_lambda,
        i_avg,
        i_avg_stderr: error,
        per_spin: i_avg / spins,
        per_spin_stderr: error / spins,
        pair_gains: Some(pairs.iter().map(|g| g.gain).collect()),
        estimator: EstimatorMeta {
            method: EstimatorMethod::Quadrature1D.name().to_string(),
            samples_or_nodes: cfg.nodes as u64,
            seed: cfg.seed,
            batches: 0,
        },
    };
    Ok(report)
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Prior-averaged outcome probabilities P(λ).
pub fn outcome_probabilities(
    scenario: Scenario,
    cfg: &EstimatorConfig,
) -> Result<OutcomeEstimate, Error> {
    let report = info_gain(scenario, cfg)?;
    Ok(OutcomeEstimate {
        labels: report.labels,
        p: report.p,
        stderr: report.p_stderr,
        estimator: report.estimator,
    })
}

/// Full information-gain report for a scenario under the given estimator.
///
/// Estimator applicability: Monte Carlo covers every scenario; 3-D
/// quadrature covers every scenario (Gram-parametrized for method A, plain
/// cube for method B); 1-D quadrature applies to method B only, through the
/// additive pair decomposition.
pub fn info_gain(scenario: Scenario, cfg: &EstimatorConfig) -> Result<InfoGainReport, Error> {
    cfg.validate()?;
    let report = match (cfg.method, scenario.is_method_a()) {
        (EstimatorMethod::MonteCarlo, _) => {
            let batches = mc_batches(scenario, cfg);
            finalize_mc(scenario, &batches, mc_meta(cfg))
        }
        (EstimatorMethod::Quadrature3D, _) => quad3d_info_gain(scenario, cfg),
        (EstimatorMethod::Quadrature1D, false) => quad1d_info_gain(scenario, cfg)?,
        (EstimatorMethod::Quadrature1D, true) => {
            return Err(Error::EstimatorMismatch(format!(
                "1-D quadrature needs disjoint pairs; {} is a three-spin scenario",
                scenario.name()
            )));
        }
    };
    report.validate()?;
    Ok(report)
}

/// One row of the per-spin gain sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepPoint {
    pub j: HalfInteger,
    pub method_a: InfoGainReport,
    pub method_b: InfoGainReport,
}

/// Evaluate both methods across a j list. Under a quadrature config, method
/// A runs the 3-D rule and method B the 1-D pair rule; Monte Carlo runs both
/// as sampled.
pub fn sweep_j(j_values: &[HalfInteger], cfg: &EstimatorConfig) -> Result<Vec<SweepPoint>, Error> {
    let (cfg_a, cfg_b) = match cfg.method {
        EstimatorMethod::MonteCarlo => (*cfg, *cfg),
        _ => (
            EstimatorConfig { method: EstimatorMethod::Quadrature3D, ..*cfg },
            EstimatorConfig { method: EstimatorMethod::Quadrature1D, ..*cfg },
        ),
    };
    j_values
        .iter()
        .map(|&j| {
            Ok(SweepPoint {
                j,
                method_a: info_gain(Scenario::ASpinJ(j), &cfg_a)?,
                method_b: info_gain(Scenario::BSpinJ(j), &cfg_b)?,
            })
        })
        .collect()
}
