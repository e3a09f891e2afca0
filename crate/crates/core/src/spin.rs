//! Angular-momentum operators, SU(2) coherent states, and rotations for
//! arbitrary spin j.
//!
//! Basis convention everywhere: |j, m⟩ with m descending from j to −j, so the
//! stretched state |j, j⟩ is index 0.

use num_complex::Complex;

use crate::cg::ln_fact;
use crate::direction::Direction;
use crate::error::Error;
use crate::half::HalfInteger;
use crate::linalg::{tensor_operators, Complex64, ComplexMatrix, StateVector};

/// The three spin components for one value of j.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
}

impl SpinOperators {
    /// J⃗ · n̂.
    pub fn dot(&self, axis: Direction) -> ComplexMatrix {
        let [nx, ny, nz] = axis.components();
        &(&self.x.scale(nx) + &self.y.scale(ny)) + &self.z.scale(nz)
    }

    /// Jx² + Jy² + Jz².
    pub fn squared(&self) -> ComplexMatrix {
        &(&(&self.x * &self.x) + &(&self.y * &self.y)) + &(&self.z * &self.z)
    }
}

/// Standard angular-momentum matrices in the descending |j, m⟩ basis;
/// Jz is diagonal. j = 0 yields 1×1 zero matrices.
pub fn spin_operators(j: HalfInteger) -> SpinOperators {
    let dim = j.dimension();
    let tj = j.twice() as i64;
    let mut z = ComplexMatrix::zeros(dim, dim);
    let mut plus = ComplexMatrix::zeros(dim, dim);
    for (a, tm) in j.twice_m_descending().enumerate() {
        z.set(a, a, Complex::new(tm as f64 / 2.0, 0.0));
        if a > 0 {
            // J₊|j, m⟩ = √(j(j+1) − m(m+1)) |j, m+1⟩; index a ↦ a−1.
            let ladder = ((tj * (tj + 2) - tm * (tm + 2)) as f64 / 4.0).sqrt();
            plus.set(a - 1, a, Complex::new(ladder, 0.0));
        }
    }
    let minus = plus.adjoint();
    let x = (&plus + &minus).scale(0.5);
    let y = (&plus - &minus).scale_complex(Complex::new(0.0, -0.5));
    SpinOperators { x, y, z }
}

/// SU(2) coherent state: the eigenstate of J⃗·n̂ with the maximum eigenvalue j.
///
/// In the descending basis (index a holds m = j − a, with (θ, φ) the polar
/// angles of n̂):
///
/// ```text
///   ⟨j, j−a | n̂⟩ = √C(2j, a) · cos(θ/2)^(2j−a) · sin(θ/2)^a · e^(i a φ)
/// ```
///
/// The global phase is fixed so the |j, j⟩ amplitude is real and
/// non-negative; for n̂ = −ẑ (where that amplitude vanishes) the |j, −j⟩
/// amplitude is real positive because the pole carries φ = 0.
pub fn coherent_state(j: HalfInteger, dir: Direction) -> StateVector {
    let (theta, phi) = dir.polar_angles();
    let tj = j.twice() as i64;
    let (half_cos, half_sin) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let amplitudes: Vec<Complex64> = (0..=tj)
        .map(|a| {
            let log_binom = ln_fact(tj) - ln_fact(a) - ln_fact(tj - a);
            let mag = (0.5 * log_binom).exp()
                * half_cos.powi((tj - a) as i32)
                * half_sin.powi(a as i32);
            Complex::from_polar(mag, a as f64 * phi)
        })
        .collect();
    StateVector::from_amplitudes(amplitudes)
}

/// Qubit pointing along n̂: `coherent_state` at j = 1/2 (the σ⃗·n̂ eigenvector
/// with positive eigenvalue).
pub fn qubit_state(dir: Direction) -> StateVector {
    coherent_state(HalfInteger::HALF, dir)
}

/// The Pauli matrices (σx, σy, σz).
pub fn pauli_matrices() -> [ComplexMatrix; 3] {
    let ops = spin_operators(HalfInteger::HALF);
    [ops.x.scale(2.0), ops.y.scale(2.0), ops.z.scale(2.0)]
}

/// exp(−i·angle·J⃗·axis) for a single spin j, via the eigendecomposition of
/// the Hermitian generator.
pub fn rotation_operator(j: HalfInteger, axis: Direction, angle: f64) -> ComplexMatrix {
    let generator = spin_operators(j).dot(axis);
    let eig = generator.hermitian_eigen();
    let dim = j.dimension();
    let mut result = ComplexMatrix::zeros(dim, dim);
    for k in 0..dim {
        let phase = Complex::from_polar(1.0, -angle * eig.eigenvalues[k]);
        result = &result + &eig.eigenvectors.column(k).projector().scale_complex(phase);
    }
    result
}

/// The same rotation applied to every factor: R(axis, angle) = ⊗ᵢ Rⱼᵢ.
pub fn collective_rotation(
    axis: Direction,
    angle: f64,
    spins: &[HalfInteger],
) -> Result<ComplexMatrix, Error> {
    let factors: Vec<ComplexMatrix> =
        spins.iter().map(|&j| rotation_operator(j, axis, angle)).collect();
    tensor_operators(&factors)
}

/// `op` acting on tensor factor `position`, identity elsewhere.
pub fn embed_at(
    spins: &[HalfInteger],
    position: usize,
    op: &ComplexMatrix,
) -> Result<ComplexMatrix, Error> {
    let factors: Vec<ComplexMatrix> = spins
        .iter()
        .enumerate()
        .map(|(f, &j)| {
            if f == position {
                op.clone()
            } else {
                ComplexMatrix::identity(j.dimension())
            }
        })
        .collect();
    tensor_operators(&factors)
}

/// (Σ_{f ∈ subset} J⃗_f)² on the full tensor-product space.
pub fn subset_spin_squared(
    spins: &[HalfInteger],
    subset: &[usize],
) -> Result<ComplexMatrix, Error> {
    let dim: usize = spins.iter().map(|j| j.dimension()).product();
    let per_spin: Vec<SpinOperators> = spins.iter().map(|&j| spin_operators(j)).collect();
    let mut total = ComplexMatrix::zeros(dim, dim);
    for component in 0..3 {
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for &f in subset {
            let op = match component {
                0 => &per_spin[f].x,
                1 => &per_spin[f].y,
                _ => &per_spin[f].z,
            };
            sum = &sum + &embed_at(spins, f, op)?;
        }
        total = &total + &(&sum * &sum);
    }
    Ok(total)
}

/// J⃗_total · J⃗_total on the full tensor-product space.
pub fn total_spin_squared(spins: &[HalfInteger]) -> Result<ComplexMatrix, Error> {
    let all: Vec<usize> = (0..spins.len()).collect();
    subset_spin_squared(spins, &all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{C_ONE, C_ZERO};

    fn j(twice: u32) -> HalfInteger {
        HalfInteger::from_twice(twice)
    }

    #[test]
    fn defining_representation() {
        let ops = spin_operators(j(1));
        let [sx, sy, sz] = pauli_matrices();
        assert!(ops.x.max_abs_diff(&sx.scale(0.5)) < 1e-15);
        assert!(ops.y.max_abs_diff(&sy.scale(0.5)) < 1e-15);
        assert!(ops.z.max_abs_diff(&sz.scale(0.5)) < 1e-15);
        assert_eq!(ops.z.get(0, 0).re, 0.5);
        assert_eq!(ops.z.get(1, 1).re, -0.5);
    }

    #[test]
    fn spin_one_jz_diagonal() {
        let ops = spin_operators(j(2));
        for (a, want) in [1.0, 0.0, -1.0].into_iter().enumerate() {
            assert_eq!(ops.z.get(a, a).re, want);
        }
    }

    #[test]
    fn casimir_identity() {
        for tj in [0u32, 1, 2, 5, 24, 100] {
            let jj = j(tj);
            let sq = spin_operators(jj).squared();
            let expect = ComplexMatrix::identity(jj.dimension()).scale(jj.casimir());
            assert!(sq.max_abs_diff(&expect) < 1e-12, "2j = {tj}");
        }
    }

    #[test]
    fn commutators() {
        for tj in [1u32, 2, 7, 100] {
            let ops = spin_operators(j(tj));
            let comm = &(&ops.x * &ops.y) - &(&ops.y * &ops.x);
            let expect = ops.z.scale_complex(Complex::new(0.0, 1.0));
            assert!(comm.max_abs_diff(&expect) < 1e-12, "2j = {tj}");
        }
    }

    #[test]
    fn coherent_state_along_z_is_stretched() {
        for tj in [1u32, 2, 5] {
            let state = coherent_state(j(tj), Direction::Z);
            assert_eq!(state.amplitude(0), C_ONE);
            for a in 1..state.dim() {
                assert_eq!(state.amplitude(a), C_ZERO);
            }
        }
    }

    #[test]
    fn qubit_amplitudes() {
        let state = qubit_state(Direction::from_polar(1.1, 0.7));
        assert!((state.amplitude(0).re - (0.55f64).cos()).abs() < 1e-15);
        let expected = Complex::from_polar((0.55f64).sin(), 0.7);
        assert!((state.amplitude(1) - expected).norm() < 1e-15);

        assert!((qubit_state(Direction::X).amplitude(0).re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((qubit_state(Direction::X).amplitude(1).re - 1.0 / 2f64.sqrt()).abs() < 1e-15);

        let down = qubit_state(Direction::MINUS_Z);
        assert!(down.amplitude(0).norm() < 1e-15);
        assert!((down.amplitude(1) - C_ONE).norm() < 1e-15);
    }

    #[test]
    fn coherent_state_is_top_eigenvector() {
        let dir = Direction::new(0.3, -0.8, 0.52).unwrap();
        for tj in [1u32, 2, 7] {
            let jj = j(tj);
            let state = coherent_state(jj, dir);
            assert!((state.norm() - 1.0).abs() < 1e-14);
            let jdotn = spin_operators(jj).dot(dir);
            let applied = jdotn.apply(&state);
            let scaled = StateVector::from_amplitudes(
                state.amplitudes().iter().map(|a| a * jj.value()).collect(),
            );
            let err: f64 = applied
                .amplitudes()
                .iter()
                .zip(scaled.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-13, "2j = {tj}: {err}");
        }
    }

    #[test]
    fn overlap_law_against_rotation_oracle() {
        // |⟨ẑ_j|n̂_j⟩|² = ((1+cos θ)/2)^(2j), cross-checked against rotating
        // the stretched state with the exponential-map operator.
        for tj in [1u32, 2, 3, 4, 5, 6] {
            let jj = j(tj);
            let top = StateVector::basis_state(jj.dimension(), 0);
            for &theta in &[0.0, 0.4, 1.3, 2.2, 3.0] {
                let dir = Direction::from_polar(theta, 0.9);
                let overlap = top.inner_product(&coherent_state(jj, dir)).norm_sqr();
                let law = ((1.0 + theta.cos()) / 2.0).powi(tj as i32);
                assert!((overlap - law).abs() < 1e-12, "2j = {tj}, θ = {theta}");

                // oracle: R(ŷ, θ) then R(ẑ, φ) applied to |j, j⟩
                let rot = &rotation_operator(jj, Direction::Z, 0.9)
                    * &rotation_operator(jj, Direction::Y, theta);
                let rotated = rot.apply(&top);
                let oracle = top.inner_product(&rotated).norm_sqr();
                assert!((overlap - oracle).abs() < 1e-12, "2j = {tj}, θ = {theta}");
            }
        }
    }

    #[test]
    fn coherent_state_commutes_with_rotation_up_to_phase() {
        let jj = j(3);
        let dir = Direction::new(0.2, 0.5, -0.4).unwrap();
        let axis = Direction::new(-1.0, 0.3, 0.9).unwrap();
        let angle = 1.234;
        let rotated_dir = dir.rotated(axis, angle);
        let direct = coherent_state(jj, rotated_dir).projector();
        let via_operator =
            rotation_operator(jj, axis, angle).apply(&coherent_state(jj, dir)).projector();
        assert!(direct.max_abs_diff(&via_operator) < 1e-12);
    }

    #[test]
    fn collective_rotation_identity_and_spinor_sign() {
        let id = collective_rotation(Direction::X, 0.0, &[j(1), j(2)]).unwrap();
        assert!(id.max_abs_diff(&ComplexMatrix::identity(6)) < 1e-14);

        let full_turn =
            collective_rotation(Direction::new(1.0, 1.0, 0.0).unwrap(), std::f64::consts::TAU, &[j(1)])
                .unwrap();
        assert!(full_turn.max_abs_diff(&ComplexMatrix::identity(2).scale(-1.0)) < 1e-12);
    }

    #[test]
    fn collective_rotation_is_unitary() {
        let axis = Direction::new(0.7, -0.2, 0.4).unwrap();
        let rot = collective_rotation(axis, 2.31, &[j(1), j(1), j(5)]).unwrap();
        let product = &rot.adjoint() * &rot;
        assert!(product.max_abs_diff(&ComplexMatrix::identity(24)) <= 1e-12);
        assert!(collective_rotation(axis, 1.0, &[]).is_err());
    }

    #[test]
    fn total_spin_squared_of_two_qubits() {
        // singlet/triplet eigenvalues 0 and 2
        let sq = total_spin_squared(&[j(1), j(1)]).unwrap();
        let eig = sq.hermitian_eigen();
        let mut values = eig.eigenvalues.clone();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((values[0] - 0.0).abs() < 1e-13);
        for v in &values[1..] {
            assert!((v - 2.0).abs() < 1e-13);
        }
    }
}
