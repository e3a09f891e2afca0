//! Dev helper: cross-verify the spin-j information gain along independent routes.
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use relspin::inference::{info_gain, EstimatorConfig};
use relspin::povm::coupled_projectors;
use relspin::prior::sample_direction;
use relspin::protocols::{encode_state, Scenario};
use relspin::quadrature::prior_expectation_correlated;
use relspin::HalfInteger;

fn main() {
    // Route 1: quad3d with the CG fast path (production path)
    let j10 = HalfInteger::from_f64(10.0).unwrap();
    let quad = info_gain(Scenario::ASpinJ(j10), &EstimatorConfig::quadrature_3d(64)).unwrap();
    println!("j=10 quad3d : I_avg={:.6} i={:.6}", quad.i_avg, quad.per_spin);

    // Route 2: MC with the CG fast path
    let mc = info_gain(Scenario::ASpinJ(j10), &EstimatorConfig::monte_carlo(400_000, 5)).unwrap();
    println!("j=10 mc     : I_avg={:.6}±{:.6} i={:.6}", mc.i_avg, mc.i_avg_stderr, mc.per_spin);

    // Route 3: fully independent — explicit states against the projector
    // family, Monte Carlo over directions, no CG anywhere
    let set = coupled_projectors(j10);
    let p = &quad.p;
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let n = 60_000;
    let mut acc = 0.0;
    for _ in 0..n {
        let dirs = [
            sample_direction(&mut rng),
            sample_direction(&mut rng),
            sample_direction(&mut rng),
        ];
        let state = encode_state(Scenario::ASpinJ(j10), &dirs).unwrap();
        for (k, prob) in set.probabilities(&state).into_iter().enumerate() {
            if prob > 1e-300 {
                acc += prob * (prob / p[k]).log2();
            }
        }
    }
    println!("j=10 matrix : I_avg={:.6} (60k samples)", acc / n as f64);

    // j = 50 with MC as a second route
    let j50 = HalfInteger::from_f64(50.0).unwrap();
    let mc50 = info_gain(Scenario::ASpinJ(j50), &EstimatorConfig::monte_carlo(2_000_000, 9)).unwrap();
    println!("j=50 mc     : I_avg={:.6}±{:.6} i={:.6}", mc50.i_avg, mc50.i_avg_stderr, mc50.per_spin);
    println!("j=50 I_l    : {:?}", mc50.i_lambda);

    // limiting likelihoods: gains of the j → ∞ measurement
    let limit_terms: Vec<(&str, Box<dyn Fn(f64, f64, f64) -> f64>)> = vec![
        ("j'  ", Box::new(|x: f64, _: f64, _: f64| (1.0 - x) / 4.0)),
        ("j-1 ", Box::new(|_: f64, y: f64, z: f64| (1.0 - y) * (1.0 - z) / 4.0)),
        ("j   ", Box::new(|x: f64, y: f64, z: f64| (1.0 + x - 2.0 * y * z) / 4.0)),
        ("j+1 ", Box::new(|_: f64, y: f64, z: f64| (1.0 + y) * (1.0 + z) / 4.0)),
    ];
    let mut i_inf = 0.0;
    for (name, l) in &limit_terms {
        let p_lim = prior_expectation_correlated(96, |x, y, z| l(x, y, z));
        let gain = prior_expectation_correlated(96, |x, y, z| {
            let v = l(x, y, z) / p_lim;
            if v > 1e-300 { v * v.log2() } else { 0.0 }
        });
        i_inf += p_lim * gain;
        println!("limit {name}: P={p_lim:.6} I={gain:.9}");
    }
    println!("limit I_avg = {:.9}, i_A(inf) = {:.9}", i_inf, i_inf / 3.0);
    println!("2*(1-1/(2ln2)) = {:.9}", 2.0 * (1.0 - 1.0 / (2.0 * std::f64::consts::LN_2)));
}
