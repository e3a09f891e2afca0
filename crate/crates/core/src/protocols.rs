//! Encoding scenarios and their exact outcome likelihoods.
//!
//! Method A encodes the three angles in one three-spin system (two qubits
//! plus one spin-j particle, with the all-qubit case at j = 1/2); method B
//! uses three disjoint pairs, one angle each. Every likelihood is available
//! along two routes: a closed-form/coefficient path in the pairwise cosines,
//! and a state-construction path ⟨ψ|Π|ψ⟩ against the projector families of
//! [`crate::povm`]. The two must agree to 1e-10; tests and the verification
//! suite hold them to it.
//!
//! Angle bookkeeping: the cosine triple is always (x, y, z) =
//! (cos α, cos β, cos γ), but the *vector pairs* carrying those angles differ
//! per scenario and are fixed by [`Scenario::cosines_from_directions`]:
//! for `AQubits` α is the m̂–n̂ angle, β the m̂–r̂ angle, γ the n̂–r̂ angle;
//! for `ASpinJ` α is n̂–m̂, β is n̂–r̂, γ is m̂–r̂; for method B the pairs are
//! disjoint so (α, β, γ) are simply the three pair angles.

use serde::{Deserialize, Serialize};

use crate::cg::clebsch_gordan;
use crate::direction::Direction;
use crate::error::Error;
use crate::half::HalfInteger;
use crate::linalg::{tensor_states, StateVector};
use crate::povm::{self, coupled_projectors, pair_projectors, three_qubit_projectors};
use crate::spin::{coherent_state, qubit_state};

/// Tolerance extended to cosine range and Gram positivity checks.
pub const GRAM_TOL: f64 = 1e-12;

/// Tolerance on probability normalization.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// (cos α, cos β, cos γ). Realizability as the mutual angles of one
/// direction triple (positive-semidefinite Gram matrix) is *not* a
/// construction invariant — method B evaluates disjoint pairs where the
/// three cosines are independent — so the A-scenario likelihoods check it
/// explicitly via [`CosineTriple::require_realizable`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosineTriple {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl CosineTriple {
    /// Validates each component to [-1, 1] (clamping fp overshoot ≤ 1e-12).
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, Error> {
        Ok(Self { x: check_cosine(x)?, y: check_cosine(y)?, z: check_cosine(z)? })
    }

    /// det G = 1 + 2xyz − x² − y² − z² for the Gram matrix of pairwise
    /// cosines; non-negative exactly when some direction triple realizes
    /// these angles.
    pub fn gram_det(self) -> f64 {
        1.0 + 2.0 * self.x * self.y * self.z
            - self.x * self.x
            - self.y * self.y
            - self.z * self.z
    }

    pub fn is_realizable(self) -> bool {
        self.gram_det() >= -GRAM_TOL
    }

    pub fn require_realizable(self) -> Result<(), Error> {
        if self.is_realizable() {
            Ok(())
        } else {
            Err(Error::GramNotPositive { det: self.gram_det() })
        }
    }
}

fn check_cosine(value: f64) -> Result<f64, Error> {
    if value.abs() <= 1.0 {
        Ok(value)
    } else if value.abs() <= 1.0 + GRAM_TOL {
        Ok(value.clamp(-1.0, 1.0))
    } else {
        Err(Error::CosineOutOfRange(value))
    }
}

/// Which encoding method and spin content a run uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    /// One three-qubit system.
    AQubits,
    /// Three disjoint qubit pairs.
    BQubits,
    /// One system of two qubits and one spin-j.
    ASpinJ(HalfInteger),
    /// One qubit pair plus two (qubit, spin-j) pairs.
    BSpinJ(HalfInteger),
}

impl Scenario {
    /// Number of transmitted spins: 3 for method A, 6 for method B.
    pub fn spin_count(self) -> usize {
        match self {
            Scenario::AQubits | Scenario::ASpinJ(_) => 3,
            Scenario::BQubits | Scenario::BSpinJ(_) => 6,
        }
    }

    pub fn is_method_a(self) -> bool {
        matches!(self, Scenario::AQubits | Scenario::ASpinJ(_))
    }

    pub fn j(self) -> Option<HalfInteger> {
        match self {
            Scenario::ASpinJ(j) | Scenario::BSpinJ(j) => Some(j),
            _ => None,
        }
    }

    /// CLI/CSV name; the j value is reported separately.
    pub fn name(self) -> &'static str {
        match self {
            Scenario::AQubits => "a-qubits",
            Scenario::BQubits => "b-qubits",
            Scenario::ASpinJ(_) => "a-spinj",
            Scenario::BSpinJ(_) => "b-spinj",
        }
    }

    /// Outcome labels, aligned with the scenario's projector family.
    pub fn outcome_labels(self) -> Vec<String> {
        match self {
            Scenario::AQubits => {
                povm::labels::THREE_QUBIT.iter().map(|s| s.to_string()).collect()
            }
            Scenario::ASpinJ(_) => povm::labels::COUPLED.iter().map(|s| s.to_string()).collect(),
            Scenario::BQubits | Scenario::BSpinJ(_) => {
                let mut labels = Vec::with_capacity(8);
                for i in 0..2 {
                    for jk in 0..2 {
                        for k in 0..2 {
                            labels.push(format!("({i},{jk},{k})"));
                        }
                    }
                }
                labels
            }
        }
    }

    /// Spin-j content of the three pairs in a method-B scenario.
    pub fn pair_spins(self) -> Result<[HalfInteger; 3], Error> {
        match self {
            Scenario::BQubits => Ok([HalfInteger::HALF; 3]),
            Scenario::BSpinJ(j) => Ok([HalfInteger::HALF, j, j]),
            other => Err(Error::ScenarioMismatch(format!(
                "{} is not a method-B scenario",
                other.name()
            ))),
        }
    }

    /// Pairwise cosines (x, y, z) = (cos α, cos β, cos γ) of a direction
    /// triple under this scenario's angle assignment (method A only).
    pub fn cosines_from_directions(self, dirs: &[Direction; 3]) -> Result<CosineTriple, Error> {
        let [n, m, r] = *dirs;
        match self {
            Scenario::AQubits => CosineTriple::new(m.dot(n), m.dot(r), n.dot(r)),
            Scenario::ASpinJ(_) => CosineTriple::new(n.dot(m), n.dot(r), m.dot(r)),
            other => Err(Error::ScenarioMismatch(format!(
                "{} carries three disjoint pair angles, not a direction triple",
                other.name()
            ))),
        }
    }

    /// A cached likelihood evaluator (precomputes the coupling coefficients
    /// for spin-j scenarios); the hot path for estimators.
    pub fn evaluator(self) -> LikelihoodEvaluator {
        match self {
            Scenario::AQubits => LikelihoodEvaluator::AQubits,
            Scenario::ASpinJ(j) => LikelihoodEvaluator::ASpinJ(SpinJCouplings::new(j)),
            Scenario::BQubits | Scenario::BSpinJ(_) => LikelihoodEvaluator::BPairs {
                pair_js: self.pair_spins().expect("method B"),
            },
        }
    }
}

/// A likelihood vector over the scenario's outcome labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    labels: Vec<String>,
    probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    /// Clamps fp undershoot (≥ −1e−12) to 0 and enforces normalization to
    /// within 1e-10.
    pub fn new(labels: Vec<String>, probabilities: Vec<f64>) -> Result<Self, Error> {
        assert_eq!(labels.len(), probabilities.len());
        let mut clamped = Vec::with_capacity(probabilities.len());
        for &p in &probabilities {
            if !(-GRAM_TOL..=1.0 + GRAM_TOL).contains(&p) {
                return Err(Error::InvariantViolation {
                    what: "outcome probability in [0, 1]".to_string(),
                    residual: p,
                });
            }
            clamped.push(p.clamp(0.0, 1.0));
        }
        let sum: f64 = clamped.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvariantViolation {
                what: "outcome probabilities summing to 1".to_string(),
                residual: (sum - 1.0).abs(),
            });
        }
        Ok(Self { labels, probabilities: clamped })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability_of(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|k| self.probabilities[k])
    }

    pub fn max_abs_diff(&self, other: &OutcomeDistribution) -> f64 {
        assert_eq!(self.labels, other.labels, "comparing distributions with different labels");
        self.probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Squared Clebsch-Gordan weights g[J][m] = ⟨1,m; j,j | J, j+m⟩² coupling the
/// qubit-triplet component to each total spin, precomputed per j.
#[derive(Clone, Debug)]
pub struct SpinJCouplings {
    j: HalfInteger,
    /// rows: totals [j−1, j, j+1]; columns: m ∈ [+1, 0, −1]
    g: [[f64; 3]; 3],
}

impl SpinJCouplings {
    pub fn new(j: HalfInteger) -> Self {
        let one = HalfInteger::ONE;
        let jv = j.value();
        let totals = [j.minus_one(), Some(j), Some(j.plus_one())];
        let mut g = [[0.0; 3]; 3];
        for (row, total) in totals.into_iter().enumerate() {
            let Some(total) = total else { continue };
            for (col, m) in [1.0, 0.0, -1.0].into_iter().enumerate() {
                g[row][col] = clebsch_gordan(one, m, j, jv, total, jv + m).powi(2);
            }
        }
        Self { j, g }
    }

    pub fn j(&self) -> HalfInteger {
        self.j
    }

    /// (P_{j'}, P_{j−1}, P_j, P_{j+1}) as functions of the cosines only.
    ///
    /// With r̂ along z, the two-qubit reduced amplitudes couple to
    /// intermediate spin (0 or 1) with squared magnitudes that are low-order
    /// polynomials in (x, y, z); attaching |j, j⟩ distributes the triplet
    /// weight over the totals through g[J][m]. Distinct m land in distinct
    /// total-M sectors, so the squared amplitudes add with no cross terms.
    pub fn probabilities(&self, x: f64, y: f64, z: f64) -> [f64; 4] {
        let singlet = (1.0 - x) / 4.0;
        let c_plus = (1.0 + y) * (1.0 + z) / 4.0;
        let c_zero = (1.0 + x - 2.0 * y * z) / 4.0;
        let c_minus = (1.0 - y) * (1.0 - z) / 4.0;
        let triplet = [c_plus, c_zero, c_minus];
        let mut out = [singlet, 0.0, 0.0, 0.0];
        for row in 0..3 {
            out[row + 1] = (0..3).map(|col| triplet[col] * self.g[row][col]).sum();
        }
        out
    }
}

/// Cached per-scenario likelihood evaluation in the cosines; no realizability
/// checks (callers on the hot path guarantee their samples).
#[derive(Clone, Debug)]
pub enum LikelihoodEvaluator {
    AQubits,
    ASpinJ(SpinJCouplings),
    BPairs { pair_js: [HalfInteger; 3] },
}

impl LikelihoodEvaluator {
    pub fn outcome_count(&self) -> usize {
        match self {
            LikelihoodEvaluator::AQubits => 3,
            LikelihoodEvaluator::ASpinJ(_) => 4,
            LikelihoodEvaluator::BPairs { .. } => 8,
        }
    }

    /// Likelihood vector at (x, y, z), aligned with the scenario's labels.
    pub fn probabilities(&self, x: f64, y: f64, z: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.outcome_count()];
        self.probabilities_into(x, y, z, &mut out);
        out
    }

    /// Allocation-free variant for estimator loops.
    pub fn probabilities_into(&self, x: f64, y: f64, z: f64, out: &mut [f64]) {
        match self {
            LikelihoodEvaluator::AQubits => {
                out.copy_from_slice(&a_qubits_closed_form(x, y, z));
            }
            LikelihoodEvaluator::ASpinJ(couplings) => {
                out.copy_from_slice(&couplings.probabilities(x, y, z));
            }
            LikelihoodEvaluator::BPairs { pair_js } => {
                let p1 = pair_closed_form(pair_js[0], x);
                let p2 = pair_closed_form(pair_js[1], y);
                let p3 = pair_closed_form(pair_js[2], z);
                let mut slot = 0;
                for a in p1 {
                    for b in p2 {
                        for c in p3 {
                            out[slot] = a * b * c;
                            slot += 1;
                        }
                    }
                }
            }
        }
    }
}

/// (P_{1/2'}, P_{1/2}, P_{3/2}) — the Pauli-expansion closed forms.
fn a_qubits_closed_form(x: f64, y: f64, z: f64) -> [f64; 3] {
    let singlet = 0.25 - 0.25 * x;
    let quartet = 0.5 + (x + y + z) / 6.0;
    let doublet = 0.25 + x / 12.0 - y / 6.0 - z / 6.0;
    [singlet, doublet, quartet]
}

/// (P_{j−1/2}, P_{j+1/2}) = (j(1 − cos β)/(2j+1), complement).
fn pair_closed_form(j: HalfInteger, cos_beta: f64) -> [f64; 2] {
    let jv = j.value();
    let lower = jv * (1.0 - cos_beta) / (2.0 * jv + 1.0);
    [lower, 1.0 - lower]
}

/// Method-A encoded state |n̂⟩ ⊗ |m̂⟩ ⊗ |r̂_j⟩ (third factor a qubit for
/// `AQubits`). Method-B scenarios are rejected: their states are per-pair
/// products handled by the pair likelihoods.
pub fn encode_state(scenario: Scenario, dirs: &[Direction; 3]) -> Result<StateVector, Error> {
    let [n, m, r] = *dirs;
    let third = match scenario {
        Scenario::AQubits => qubit_state(r),
        Scenario::ASpinJ(j) => coherent_state(j, r),
        other => {
            return Err(Error::ScenarioMismatch(format!(
                "encode_state applies to method A; {} encodes per pair",
                other.name()
            )))
        }
    };
    tensor_states(&[qubit_state(n), qubit_state(m), third])
}

/// Closed-form likelihood for the three-qubit scenario.
pub fn likelihood_a_qubits(c: &CosineTriple) -> Result<OutcomeDistribution, Error> {
    c.require_realizable()?;
    OutcomeDistribution::new(
        Scenario::AQubits.outcome_labels(),
        a_qubits_closed_form(c.x, c.y, c.z).to_vec(),
    )
}

/// Coefficient-path likelihood for the (qubit, qubit, spin-j) scenario.
pub fn likelihood_a_spinj(j: HalfInteger, c: &CosineTriple) -> Result<OutcomeDistribution, Error> {
    c.require_realizable()?;
    OutcomeDistribution::new(
        Scenario::ASpinJ(j).outcome_labels(),
        SpinJCouplings::new(j).probabilities(c.x, c.y, c.z).to_vec(),
    )
}

/// Two-outcome pair likelihood at relative cosine cos β.
pub fn likelihood_b_pair(j: HalfInteger, cos_beta: f64) -> Result<OutcomeDistribution, Error> {
    let cos_beta = check_cosine(cos_beta)?;
    OutcomeDistribution::new(
        povm::labels::PAIR.iter().map(|s| s.to_string()).collect(),
        pair_closed_form(j, cos_beta).to_vec(),
    )
}

/// Joint eight-outcome likelihood of a method-B scenario: the product of the
/// three pair likelihoods.
pub fn likelihood_b(scenario: Scenario, c: &CosineTriple) -> Result<OutcomeDistribution, Error> {
    scenario.pair_spins()?;
    OutcomeDistribution::new(
        scenario.outcome_labels(),
        scenario.evaluator().probabilities(c.x, c.y, c.z),
    )
}

/// Dispatch on the scenario. Method A validates Gram realizability; method B
/// treats the cosines as three independent pair angles.
pub fn likelihood(scenario: Scenario, c: &CosineTriple) -> Result<OutcomeDistribution, Error> {
    match scenario {
        Scenario::AQubits => likelihood_a_qubits(c),
        Scenario::ASpinJ(j) => likelihood_a_spinj(j, c),
        Scenario::BQubits | Scenario::BSpinJ(_) => likelihood_b(scenario, c),
    }
}

/// The direction content of one encoded transmission.
#[derive(Clone, Copy, Debug)]
pub enum ScenarioDirections {
    /// Method A: (n̂, m̂, r̂).
    Triple([Direction; 3]),
    /// Method B: the two directions of each pair.
    Pairs([[Direction; 2]; 3]),
}

impl ScenarioDirections {
    pub fn rotated(&self, axis: Direction, angle: f64) -> Self {
        match self {
            ScenarioDirections::Triple(dirs) => {
                ScenarioDirections::Triple(dirs.map(|d| d.rotated(axis, angle)))
            }
            ScenarioDirections::Pairs(pairs) => {
                ScenarioDirections::Pairs(pairs.map(|pair| pair.map(|d| d.rotated(axis, angle))))
            }
        }
    }
}

/// State-construction likelihood ⟨ψ|Π_k|ψ⟩ from explicit directions — the
/// oracle route for every closed-form/coefficient path.
pub fn matrix_likelihood(
    scenario: Scenario,
    dirs: &ScenarioDirections,
) -> Result<OutcomeDistribution, Error> {
    match (scenario, dirs) {
        (Scenario::AQubits, ScenarioDirections::Triple(triple)) => {
            let state = encode_state(scenario, triple)?;
            OutcomeDistribution::new(
                scenario.outcome_labels(),
                three_qubit_projectors().probabilities(&state),
            )
        }
        (Scenario::ASpinJ(j), ScenarioDirections::Triple(triple)) => {
            let state = encode_state(scenario, triple)?;
            OutcomeDistribution::new(
                scenario.outcome_labels(),
                coupled_projectors(j).probabilities(&state),
            )
        }
        (Scenario::BQubits | Scenario::BSpinJ(_), ScenarioDirections::Pairs(pairs)) => {
            let pair_js = scenario.pair_spins()?;
            let mut per_pair = Vec::with_capacity(3);
            for (&j, pair) in pair_js.iter().zip(pairs) {
                let state = tensor_states(&[qubit_state(pair[0]), coherent_state(j, pair[1])])?;
                per_pair.push(pair_projectors(j).probabilities(&state));
            }
            let mut joint = Vec::with_capacity(8);
            for i in 0..2 {
                for jk in 0..2 {
                    for k in 0..2 {
                        joint.push(per_pair[0][i] * per_pair[1][jk] * per_pair[2][k]);
                    }
                }
            }
            OutcomeDistribution::new(scenario.outcome_labels(), joint)
        }
        (scenario, _) => Err(Error::ScenarioMismatch(format!(
            "direction content does not match scenario {}",
            scenario.name()
        ))),
    }
}

/// A direction triple realizing the cosines of a method-A scenario, in the
/// reporting gauge: r̂ = ẑ, m̂ in the x–z half-plane with non-negative x,
/// n̂ with azimuth in [0, π].
pub fn realize_directions(
    scenario: Scenario,
    c: &CosineTriple,
) -> Result<[Direction; 3], Error> {
    if !scenario.is_method_a() {
        return Err(Error::ScenarioMismatch(format!(
            "{} has no single realizing direction triple",
            scenario.name()
        )));
    }
    c.require_realizable()?;
    // cosine of each moving direction against r̂ = ẑ, per the scenario's
    // angle assignment; x is always the n̂–m̂ cosine.
    let (cos_n, cos_m) = match scenario {
        Scenario::AQubits => (c.z, c.y),
        _ => (c.y, c.z),
    };
    let sin_n = (1.0 - cos_n * cos_n).max(0.0).sqrt();
    let sin_m = (1.0 - cos_m * cos_m).max(0.0).sqrt();
    let denom = sin_n * sin_m;
    let cos_phi = if denom < 1e-14 {
        // a pole: the azimuth is immaterial (Gram forces x = cos_n · cos_m)
        1.0
    } else {
        ((c.x - cos_n * cos_m) / denom).clamp(-1.0, 1.0)
    };
    let phi = cos_phi.acos();
    let n = Direction::from_polar(cos_n.clamp(-1.0, 1.0).acos(), phi);
    let m = Direction::from_polar(cos_m.clamp(-1.0, 1.0).acos(), 0.0);
    Ok([n, m, Direction::Z])
}

/// Rotate every transmitted direction by the same rotation and return the
/// largest change in any outcome probability, measured along the matrix
/// route against the *fixed* projector family. Rotation invariance of the
/// measurement demands ≤ 1e-10.
pub fn rotation_invariance_check(
    scenario: Scenario,
    dirs: &ScenarioDirections,
    axis: Direction,
    angle: f64,
) -> Result<f64, Error> {
    let before = matrix_likelihood(scenario, dirs)?;
    let after = matrix_likelihood(scenario, &dirs.rotated(axis, angle))?;
    Ok(before.max_abs_diff(&after))
}
