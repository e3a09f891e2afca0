//! Dev helper: print converged derived-oracle values.
use relspin::inference::{info_gain, pair_info_gain, EstimatorConfig};
use relspin::protocols::Scenario;
use relspin::HalfInteger;

fn main() {
    for nodes in [48usize, 64, 96, 128, 160] {
        let r = info_gain(Scenario::AQubits, &EstimatorConfig::quadrature_3d(nodes)).unwrap();
        println!(
            "A_QUBITS n={nodes}: I_avg={:.12} i={:.12} I=[{:.10}, {:.10}, {:.10}]",
            r.i_avg, r.per_spin, r.i_lambda[0], r.i_lambda[1], r.i_lambda[2]
        );
    }
    let j50 = HalfInteger::from_f64(50.0).unwrap();
    for nodes in [48usize, 64, 96, 128] {
        let r = info_gain(Scenario::ASpinJ(j50), &EstimatorConfig::quadrature_3d(nodes)).unwrap();
        println!("A_SPINJ(50) n={nodes}: I_avg={:.12} i={:.12} I_l={:?}", r.i_avg, r.per_spin, r.i_lambda);
    }
    let pair50 = pair_info_gain(j50, 256).unwrap();
    let pair_half = pair_info_gain(HalfInteger::HALF, 256).unwrap();
    let i_b50 = (pair_half.gain + 2.0 * pair50.gain) / 6.0;
    println!("pair(1/2)={:.12} pair(50)={:.12} i_B(50)={:.12}", pair_half.gain, pair50.gain, i_b50);
    println!("closed pair(1/2)={:.12}", 2.0 - 0.75f64 * 3f64.log2() - 1.0 / (2.0 * std::f64::consts::LN_2));
    println!("singlet gain    ={:.12}", 1.0 - 1.0 / (2.0 * std::f64::consts::LN_2));
    for tj in [1u32, 2, 4, 10, 20, 50, 100] {
        let j = HalfInteger::from_twice(tj);
        let a = info_gain(Scenario::ASpinJ(j), &EstimatorConfig::quadrature_3d(64)).unwrap();
        let b = info_gain(Scenario::BSpinJ(j), &EstimatorConfig::quadrature_1d(128)).unwrap();
        println!("j={}: i_A={:.9} i_B={:.9}", j, a.per_spin, b.per_spin);
    }
}
