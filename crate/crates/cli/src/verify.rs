//! `verify`: run the numerical invariant suites and print per-suite pass
//! counts. Exit 0 only if every check passes.

use clap::Args;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use relspin::cg::clebsch_gordan;
use relspin::direction::Direction;
use relspin::inference::pair_info_gain;
use relspin::linalg::tensor_states;
use relspin::povm::{
    coupled_projectors, pair_projectors, solve_appendix_system, spectral_total_spin_projectors,
    three_qubit_projectors, ProjectorSet, PROJECTOR_TOL,
};
use relspin::prior::sample_direction;
use relspin::protocols::{
    likelihood_a_qubits, likelihood_a_spinj, likelihood_b_pair, matrix_likelihood,
    rotation_invariance_check, Scenario, ScenarioDirections,
};
use relspin::spin::{coherent_state, collective_rotation, qubit_state};
use relspin::HalfInteger;

use crate::error::CliError;

/// Spins swept by the projector-algebra checks.
const J_SWEEP: [u32; 7] = [1, 2, 3, 4, 10, 20, 50];

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Random rotations per invariance check
    #[arg(long, default_value_t = 100)]
    pub rotations: usize,

    /// Random samples per oracle-equivalence check
    #[arg(long, default_value_t = 100)]
    pub trials: usize,

    /// Random seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

struct Suite {
    name: &'static str,
    passed: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self { name, passed: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(detail());
        }
    }

    fn check_tol(&mut self, what: &str, residual: f64, tol: f64) {
        self.check(residual <= tol, || format!("{what}: residual {residual:.3e} > {tol:.1e}"));
    }
}

fn h(twice: u32) -> HalfInteger {
    HalfInteger::from_twice(twice)
}

fn random_direction(rng: &mut impl Rng) -> Direction {
    sample_direction(rng)
}

fn projector_algebra() -> Suite {
    let mut suite = Suite::new("projector-algebra");
    let mut sets: Vec<(String, ProjectorSet)> =
        vec![("three-qubit".into(), three_qubit_projectors())];
    for tj in J_SWEEP {
        sets.push((format!("coupled j={}", h(tj)), coupled_projectors(h(tj))));
        sets.push((format!("pair j={}", h(tj)), pair_projectors(h(tj))));
    }
    for (name, set) in &sets {
        suite.check_tol(&format!("{name} completeness"), set.completeness_residual(), PROJECTOR_TOL);
        suite.check_tol(&format!("{name} orthogonality"), set.orthogonality_residual(), PROJECTOR_TOL);
        suite.check_tol(&format!("{name} idempotence"), set.idempotence_residual(), PROJECTOR_TOL);
        suite.check_tol(&format!("{name} hermiticity"), set.hermiticity_residual(), PROJECTOR_TOL);
        let integer_traces = set
            .trace_dimensions()
            .iter()
            .map(|t| (t - t.round()).abs())
            .fold(0.0, f64::max);
        suite.check_tol(&format!("{name} integer traces"), integer_traces, 1e-6);
    }
    suite
}

fn spectral_oracle() -> Suite {
    let mut suite = Suite::new("spectral-oracle");
    let spectral3 = spectral_total_spin_projectors(&[h(1); 3]).expect("three qubits");
    suite.check_tol(
        "three-qubit vs oracle",
        three_qubit_projectors().max_abs_diff(&spectral3),
        PROJECTOR_TOL,
    );
    for tj in J_SWEEP {
        let analytic = coupled_projectors(h(tj));
        let spectral = spectral_total_spin_projectors(&[h(1), h(1), h(tj)]).expect("triple");
        if tj == 1 {
            // the empty j−1 slot is analytic-only; oracle yields three labels
            let worst = [0usize, 2, 3]
                .into_iter()
                .zip(0..3)
                .map(|(a, s)| analytic.projector(a).max_abs_diff(spectral.projector(s)))
                .fold(0.0, f64::max);
            suite.check_tol("coupled j=1/2 vs oracle", worst, PROJECTOR_TOL);
        } else {
            suite.check_tol(
                &format!("coupled j={} vs oracle", h(tj)),
                analytic.max_abs_diff(&spectral),
                PROJECTOR_TOL,
            );
        }
        let pair = pair_projectors(h(tj));
        let pair_oracle = spectral_total_spin_projectors(&[h(1), h(tj)]).expect("pair");
        suite.check_tol(
            &format!("pair j={} vs oracle", h(tj)),
            pair.max_abs_diff(&pair_oracle),
            PROJECTOR_TOL,
        );
    }
    suite
}

fn appendix_system() -> Suite {
    let mut suite = Suite::new("appendix-system");
    match solve_appendix_system() {
        Err(e) => suite.check(false, || format!("solver failed: {e}")),
        Ok(solution) => {
            suite.check_tol(
                "solved set equals Pauli expansion",
                solution.set.max_abs_diff(&three_qubit_projectors()),
                1e-12,
            );
            let expect: [[f64; 4]; 3] = [
                [0.25, -0.25, 0.0, 0.0],
                [0.25, 1.0 / 12.0, -1.0 / 6.0, -1.0 / 6.0],
                [0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0],
            ];
            for (row, (got, want)) in solution.coefficients.iter().zip(expect).enumerate() {
                let worst =
                    got.iter().zip(want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max);
                suite.check_tol(
                    &format!("expansion coefficients of {}", solution.set.labels()[row]),
                    worst,
                    1e-12,
                );
            }
        }
    }
    suite
}

fn clebsch_gordan_suite() -> Suite {
    let mut suite = Suite::new("clebsch-gordan");
    let root_half = 1.0 / 2f64.sqrt();
    suite.check_tol(
        "singlet coefficient (+-)",
        (clebsch_gordan(h(1), 0.5, h(1), -0.5, h(0), 0.0) - root_half).abs(),
        1e-15,
    );
    suite.check_tol(
        "singlet coefficient (-+)",
        (clebsch_gordan(h(1), -0.5, h(1), 0.5, h(0), 0.0) + root_half).abs(),
        1e-15,
    );
    for tj in [1u32, 3, 10, 41, 200] {
        let j = h(tj);
        let top = j.value();
        suite.check_tol(
            &format!("stretched coefficient j={j}"),
            (clebsch_gordan(j, top, h(1), 0.5, j.plus_half(), top + 0.5) - 1.0).abs(),
            1e-12,
        );
        suite.check_tol(
            &format!("<j,j;1,0|j+1,j> at j={j}"),
            (clebsch_gordan(j, top, h(2), 0.0, j.plus_one(), top)
                - 1.0 / (top + 1.0).sqrt())
            .abs(),
            1e-12,
        );
    }
    // unitarity over totals at fixed (j1, j2, M)
    for (tj1, tj2) in [(1u32, 1u32), (2, 1), (3, 2), (20, 2), (60, 1)] {
        let (j1, j2) = (h(tj1), h(tj2));
        let tm = ((tj1 + tj2) % 2) as i64;
        let m_total = tm as f64 / 2.0;
        let pairs: Vec<(f64, f64)> = j1
            .twice_m_descending()
            .filter_map(|t1| {
                let t2 = tm - t1;
                (t2.abs() <= tj2 as i64 && (t2 + tj2 as i64) % 2 == 0)
                    .then(|| (t1 as f64 / 2.0, t2 as f64 / 2.0))
            })
            .collect();
        let totals: Vec<HalfInteger> = (tj1.abs_diff(tj2)..=tj1 + tj2)
            .step_by(2)
            .map(HalfInteger::from_twice)
            .collect();
        let mut worst = 0.0f64;
        for (i, &(m1, m2)) in pairs.iter().enumerate() {
            for (k, &(m1p, m2p)) in pairs.iter().enumerate() {
                let sum: f64 = totals
                    .iter()
                    .map(|&t| {
                        clebsch_gordan(j1, m1, j2, m2, t, m_total)
                            * clebsch_gordan(j1, m1p, j2, m2p, t, m_total)
                    })
                    .sum();
                worst = worst.max((sum - if i == k { 1.0 } else { 0.0 }).abs());
            }
        }
        suite.check_tol(&format!("unitarity j1={j1} j2={j2}"), worst, 1e-12);
    }
    suite
}

fn rotation_invariance(args: &VerifyArgs) -> Suite {
    let mut suite = Suite::new("rotation-invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ 0x5eed);

    let triple = ScenarioDirections::Triple([
        random_direction(&mut rng),
        random_direction(&mut rng),
        random_direction(&mut rng),
    ]);
    let pairs = ScenarioDirections::Pairs([
        [random_direction(&mut rng), random_direction(&mut rng)],
        [random_direction(&mut rng), random_direction(&mut rng)],
        [random_direction(&mut rng), random_direction(&mut rng)],
    ]);
    let scenarios = [
        (Scenario::AQubits, &triple),
        (Scenario::ASpinJ(h(6)), &triple),
        (Scenario::BSpinJ(h(4)), &pairs),
    ];
    let mut worst = [0.0f64; 3];
    for _ in 0..args.rotations {
        let axis = random_direction(&mut rng);
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        for (slot, (scenario, dirs)) in scenarios.iter().enumerate() {
            let dev = rotation_invariance_check(*scenario, dirs, axis, angle)
                .expect("invariance check");
            worst[slot] = worst[slot].max(dev);
        }
    }
    for (slot, (scenario, _)) in scenarios.iter().enumerate() {
        suite.check_tol(
            &format!("likelihood invariance {} ({} rotations)", scenario.name(), args.rotations),
            worst[slot],
            1e-10,
        );
    }

    // operator-level: projectors commute with collective rotations
    for tj in [1u32, 4, 10] {
        let set = coupled_projectors(h(tj));
        let mut worst = 0.0f64;
        for _ in 0..8 {
            let axis = random_direction(&mut rng);
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let rotation =
                collective_rotation(axis, angle, &[h(1), h(1), h(tj)]).expect("rotation");
            for (_, p) in set.iter() {
                let comm = &(p * &rotation) - &(&rotation * p);
                worst = worst.max(comm.max_abs());
            }
        }
        suite.check_tol(&format!("projector commutation j={}", h(tj)), worst, 1e-10);
    }
    suite
}

fn oracle_equivalence(args: &VerifyArgs) -> Suite {
    let mut suite = Suite::new("oracle-equivalence");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ 0x0acc1e5);

    // closed-form vs state-construction likelihoods
    let mut worst = 0.0f64;
    for _ in 0..args.trials {
        let dirs = [
            random_direction(&mut rng),
            random_direction(&mut rng),
            random_direction(&mut rng),
        ];
        let c = Scenario::AQubits.cosines_from_directions(&dirs).expect("cosines");
        let closed = likelihood_a_qubits(&c).expect("closed form");
        let matrix = matrix_likelihood(Scenario::AQubits, &ScenarioDirections::Triple(dirs))
            .expect("matrix route");
        worst = worst.max(closed.max_abs_diff(&matrix));
    }
    suite.check_tol("a-qubits closed vs matrix", worst, 1e-10);

    for tj in [2u32, 4, 7] {
        let scenario = Scenario::ASpinJ(h(tj));
        let mut worst = 0.0f64;
        for _ in 0..args.trials / 2 {
            let dirs = [
                random_direction(&mut rng),
                random_direction(&mut rng),
                random_direction(&mut rng),
            ];
            let c = scenario.cosines_from_directions(&dirs).expect("cosines");
            let fast = likelihood_a_spinj(h(tj), &c).expect("coupling route");
            let matrix = matrix_likelihood(scenario, &ScenarioDirections::Triple(dirs))
                .expect("matrix route");
            worst = worst.max(fast.max_abs_diff(&matrix));
        }
        suite.check_tol(&format!("a-spinj j={} couplings vs matrix", h(tj)), worst, 1e-10);
    }

    for tj in [1u32, 4, 10] {
        let mut worst = 0.0f64;
        for _ in 0..args.trials / 2 {
            let a = random_direction(&mut rng);
            let b = random_direction(&mut rng);
            let closed = likelihood_b_pair(h(tj), a.dot(b)).expect("pair closed form");
            let state =
                tensor_states(&[qubit_state(a), coherent_state(h(tj), b)]).expect("pair state");
            let probs = pair_projectors(h(tj)).probabilities(&state);
            worst = worst.max((closed.probabilities()[0] - probs[0]).abs());
        }
        suite.check_tol(&format!("pair j={} closed vs matrix", h(tj)), worst, 1e-10);
    }

    // j = 1/2 reduction of the coupled family
    let mut worst = 0.0f64;
    for _ in 0..args.trials {
        let dirs = [
            random_direction(&mut rng),
            random_direction(&mut rng),
            random_direction(&mut rng),
        ];
        let c = Scenario::ASpinJ(h(1)).cosines_from_directions(&dirs).expect("cosines");
        let reduced = likelihood_a_spinj(h(1), &c).expect("spin-j route");
        let qubits = likelihood_a_qubits(&c).expect("qubit route");
        for (label_r, label_q) in [("j'", "1/2'"), ("j", "1/2"), ("j+1", "3/2")] {
            worst = worst.max(
                (reduced.probability_of(label_r).unwrap()
                    - qubits.probability_of(label_q).unwrap())
                .abs(),
            );
        }
        worst = worst.max(reduced.probability_of("j-1").unwrap());
    }
    suite.check_tol("a-spinj reduction at j=1/2", worst, 1e-10);

    // singlet-branch law P(j') = (1 − cos α)/4 independent of j
    let mut worst = 0.0f64;
    for tj in [2u32, 6, 18] {
        for _ in 0..args.trials / 4 {
            let dirs = [
                random_direction(&mut rng),
                random_direction(&mut rng),
                random_direction(&mut rng),
            ];
            let state = tensor_states(&[
                qubit_state(dirs[0]),
                qubit_state(dirs[1]),
                coherent_state(h(tj), dirs[2]),
            ])
            .expect("state");
            let prob = coupled_projectors(h(tj)).projector(0).expectation(&state).re;
            worst = worst.max((prob - (1.0 - dirs[0].dot(dirs[1])) / 4.0).abs());
        }
    }
    suite.check_tol("singlet-branch law", worst, 1e-10);

    // coherent-state overlap law |⟨ẑ|n̂⟩|² = ((1+cos θ)/2)^(2j), j ≤ 3
    let mut worst = 0.0f64;
    for tj in 1..=6u32 {
        for _ in 0..args.trials / 4 {
            let dir = random_direction(&mut rng);
            let overlap = coherent_state(h(tj), Direction::Z)
                .inner_product(&coherent_state(h(tj), dir))
                .norm_sqr();
            let law = ((1.0 + dir.dot(Direction::Z)) / 2.0).powi(tj as i32);
            worst = worst.max((overlap - law).abs());
        }
    }
    suite.check_tol("coherent overlap law (j <= 3)", worst, 1e-10);

    // pair-gain quadrature against its closed form at j = 1/2
    match pair_info_gain(HalfInteger::HALF, 64) {
        Err(e) => suite.check(false, || format!("pair quadrature failed: {e}")),
        Ok(gain) => {
            let closed = 2.0 - 0.75 * 3f64.log2() - 1.0 / (2.0 * std::f64::consts::LN_2);
            suite.check_tol("pair gain vs closed form", (gain.gain - closed).abs(), 1e-8);
        }
    }
    suite
}

pub fn run(args: &VerifyArgs) -> Result<i32, CliError> {
    let suites = [
        projector_algebra(),
        spectral_oracle(),
        appendix_system(),
        clebsch_gordan_suite(),
        rotation_invariance(args),
        oracle_equivalence(args),
    ];
    let mut all_ok = true;
    for suite in &suites {
        let total = suite.passed + suite.failures.len();
        if suite.failures.is_empty() {
            println!("{:<20} {:>3}/{:<3} ok", suite.name, suite.passed, total);
        } else {
            all_ok = false;
            println!("{:<20} {:>3}/{:<3} FAILED", suite.name, suite.passed, total);
            for failure in &suite.failures {
                println!("    {failure}");
            }
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}
