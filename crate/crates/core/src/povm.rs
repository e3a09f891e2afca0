//! Labeled total-spin projector families.
//!
//! Every scenario's measurement is a projective POVM onto total-spin
//! subspaces, refined by the intermediate coupling of the two qubits where a
//! bare total-spin value is degenerate (the two J = j subspaces of
//! 1/2 ⊗ 1/2 ⊗ j). Each family is constructed analytically — Pauli
//! expansions, the singlet projector, polynomial filtering of J⃗·J⃗ — and
//! independently by the spectral oracle [`spectral_total_spin_projectors`],
//! which diagonalizes the commuting pair (J⃗₁₂², J⃗_tot²) directly.

use num_complex::Complex;

use crate::error::Error;
use crate::half::HalfInteger;
use crate::linalg::{ComplexMatrix, StateVector, C_ZERO};
use crate::spin::{embed_at, pauli_matrices, spin_operators, subset_spin_squared, total_spin_squared};

/// Default tolerance for projector-algebra invariants.
pub const PROJECTOR_TOL: f64 = 1e-10;

/// Tolerance for matching spectral eigenvalues to J(J+1); far above machine
/// noise and far below the minimal gap between consecutive J(J+1) values.
pub const EIGENVALUE_CLUSTER_TOL: f64 = 1e-8;

/// Canonical label sets, ordered as the corresponding constructors order
/// their projectors.
pub mod labels {
    /// `coupled_projectors`: singlet branch first, then ascending total spin.
    pub const COUPLED: [&str; 4] = ["j'", "j-1", "j", "j+1"];
    /// `three_qubit_projectors`.
    pub const THREE_QUBIT: [&str; 3] = ["1/2'", "1/2", "3/2"];
    /// `pair_projectors`.
    pub const PAIR: [&str; 2] = ["j-1/2", "j+1/2"];
}

/// A complete family of mutually orthogonal projectors with outcome labels.
#[derive(Clone, Debug)]
pub struct ProjectorSet {
    labels: Vec<String>,
    projectors: Vec<ComplexMatrix>,
}

impl ProjectorSet {
    pub fn new(labels: Vec<String>, projectors: Vec<ComplexMatrix>) -> Self {
        assert_eq!(labels.len(), projectors.len());
        Self { labels, projectors }
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].rows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn projector(&self, index: usize) -> &ComplexMatrix {
        &self.projectors[index]
    }

    pub fn by_label(&self, label: &str) -> Option<&ComplexMatrix> {
        self.labels.iter().position(|l| l == label).map(|k| &self.projectors[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ComplexMatrix)> {
        self.labels.iter().map(String::as_str).zip(self.projectors.iter())
    }

    /// Outcome probabilities ⟨ψ|Π_k|ψ⟩ for a pure state.
    pub fn probabilities(&self, state: &StateVector) -> Vec<f64> {
        self.projectors.iter().map(|p| p.expectation(state).re).collect()
    }

    /// max |ΣΠ − I|.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim(), self.dim());
        for p in &self.projectors {
            sum = &sum + p;
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }

    /// max over a ≠ b of |Π_a Π_b|.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, pa) in self.projectors.iter().enumerate() {
            for (b, pb) in self.projectors.iter().enumerate() {
                if a != b {
                    worst = worst.max((pa * pb).max_abs());
                }
            }
        }
        worst
    }

    /// max |Π² − Π|.
    pub fn idempotence_residual(&self) -> f64 {
        self.projectors
            .iter()
            .map(|p| (&(p * p) - p).max_abs())
            .fold(0.0, f64::max)
    }

    /// max |Π − Π†|.
    pub fn hermiticity_residual(&self) -> f64 {
        self.projectors.iter().map(|p| p.hermiticity_error()).fold(0.0, f64::max)
    }

    /// Real parts of the traces (subspace dimensions).
    pub fn trace_dimensions(&self) -> Vec<f64> {
        self.projectors.iter().map(|p| p.trace().re).collect()
    }

    /// Check every ProjectorSet invariant at tolerance `tol`; traces must sit
    /// on integers.
    pub fn validate(&self, tol: f64) -> Result<(), Error> {
        let checks = [
            ("completeness", self.completeness_residual()),
            ("orthogonality", self.orthogonality_residual()),
            ("idempotence", self.idempotence_residual()),
            ("hermiticity", self.hermiticity_residual()),
        ];
        for (what, residual) in checks {
            if residual > tol {
                return Err(Error::InvariantViolation { what: what.to_string(), residual });
            }
        }
        for (label, p) in self.iter() {
            let trace = p.trace();
            let residual = (trace.re - trace.re.round()).abs().max(trace.im.abs());
            if residual > 1e-6 {
                return Err(Error::InvariantViolation {
                    what: format!("integer trace of {label}"),
                    residual,
                });
            }
        }
        Ok(())
    }

    /// Element-wise max-abs difference with another family (same order).
    pub fn max_abs_diff(&self, other: &ProjectorSet) -> f64 {
        assert_eq!(self.len(), other.len(), "comparing projector sets of different sizes");
        self.projectors
            .iter()
            .zip(&other.projectors)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// |ψ−⟩ = (|01⟩ − |10⟩)/√2 in the two-qubit product basis.
pub fn singlet_state() -> StateVector {
    let r = Complex::new(1.0 / 2f64.sqrt(), 0.0);
    StateVector::from_amplitudes(vec![C_ZERO, r, -r, C_ZERO])
}

/// σ⃗ᵃ · σ⃗ᵇ = Σᵢ σᵢ⁽ᵃ⁾ σᵢ⁽ᵇ⁾ on an n-qubit space.
fn pauli_dot_pauli(n_qubits: usize, a: usize, b: usize) -> ComplexMatrix {
    let spins = vec![HalfInteger::HALF; n_qubits];
    let paulis = pauli_matrices();
    let dim = 1 << n_qubits;
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for sigma in &paulis {
        let at_a = embed_at(&spins, a, sigma).expect("non-empty spin list");
        let at_b = embed_at(&spins, b, sigma).expect("non-empty spin list");
        sum = &sum + &(&at_a * &at_b);
    }
    sum
}

/// The three-qubit total-spin family {Π_{1/2'}, Π_{1/2}, Π_{3/2}} from its
/// Pauli expansion:
///
/// ```text
///   Π_{1/2'} = (I − σ⃗₁·σ⃗₂) / 4
///   Π_{3/2}  = I/2 + (σ⃗₁·σ⃗₂ + σ⃗₂·σ⃗₃ + σ⃗₁·σ⃗₃) / 6
///   Π_{1/2}  = I − Π_{3/2} − Π_{1/2'}
/// ```
pub fn three_qubit_projectors() -> ProjectorSet {
    let identity = ComplexMatrix::identity(8);
    let s12 = pauli_dot_pauli(3, 0, 1);
    let s23 = pauli_dot_pauli(3, 1, 2);
    let s13 = pauli_dot_pauli(3, 0, 2);

    let singlet = (&identity - &s12).scale(0.25);
    let quartet = &identity.scale(0.5) + &(&(&s12 + &s23) + &s13).scale(1.0 / 6.0);
    let doublet = &(&identity - &quartet) - &singlet;

    ProjectorSet::new(
        labels::THREE_QUBIT.iter().map(|s| s.to_string()).collect(),
        vec![singlet, doublet, quartet],
    )
}

/// Total spins reachable on the qubit-triplet branch of 1/2 ⊗ 1/2 ⊗ j,
/// ascending: {j−1, j, j+1} with j−1 absent at j = 1/2.
fn triplet_totals(j: HalfInteger) -> Vec<HalfInteger> {
    let mut totals = Vec::new();
    if let Some(lower) = j.minus_one() {
        totals.push(lower);
    }
    totals.push(j);
    totals.push(j.plus_one());
    totals
}

/// The four-outcome family {Π_{j'}, Π_{j−1}, Π_j, Π_{j+1}} on
/// 1/2 ⊗ 1/2 ⊗ j.
///
/// Π_{j'} projects on the singlet intermediate coupling of the two qubits,
/// |ψ−⟩⟨ψ−| ⊗ I. The triplet-branch totals come from polynomial filtering of
/// J⃗·J⃗: on that branch the operator has eigenvalues J(J+1) for
/// J ∈ {j−1, j, j+1} only, so the Lagrange polynomial through the other
/// eigenvalues isolates each subspace. At j = 1/2 the j−1 subspace is empty
/// and its slot carries the zero matrix, keeping the four-outcome schema
/// uniform across a j sweep.
pub fn coupled_projectors(j: HalfInteger) -> ProjectorSet {
    assert!(j >= HalfInteger::HALF, "coupled_projectors needs j ≥ 1/2");
    let spins = [HalfInteger::HALF, HalfInteger::HALF, j];
    let dim = 4 * j.dimension();
    let identity = ComplexMatrix::identity(dim);

    let singlet_branch = singlet_state().projector().kron(&ComplexMatrix::identity(j.dimension()));
    let triplet_branch = &identity - &singlet_branch;

    let jsq = total_spin_squared(&spins).expect("non-empty spin list");
    let totals = triplet_totals(j);

    let mut by_total = Vec::with_capacity(totals.len());
    for &total in &totals {
        let mut poly = ComplexMatrix::identity(dim);
        for &other in &totals {
            if other != total {
                let factor =
                    (&jsq - &identity.scale(other.casimir())).scale(1.0 / (total.casimir() - other.casimir()));
                poly = &poly * &factor;
            }
        }
        let projector = &poly * &triplet_branch;
        // commuting Hermitian product; symmetrize away the fp residue
        by_total.push((&projector + &projector.adjoint()).scale(0.5));
    }

    let mut projectors = vec![singlet_branch];
    if j == HalfInteger::HALF {
        projectors.push(ComplexMatrix::zeros(dim, dim));
    }
    projectors.extend(by_total);

    ProjectorSet::new(labels::COUPLED.iter().map(|s| s.to_string()).collect(), projectors)
}

/// The two-outcome family {Π_{j−1/2}, Π_{j+1/2}} on 1/2 ⊗ j:
/// Π_{j−1/2} = (j·I − σ⃗·J⃗)/(2j+1), its complement for the upper branch.
pub fn pair_projectors(j: HalfInteger) -> ProjectorSet {
    assert!(j >= HalfInteger::HALF, "pair_projectors needs j ≥ 1/2");
    let spins = [HalfInteger::HALF, j];
    let dim = 2 * j.dimension();
    let identity = ComplexMatrix::identity(dim);

    let paulis = pauli_matrices();
    let jops = spin_operators(j);
    let mut sigma_dot_j = ComplexMatrix::zeros(dim, dim);
    for (sigma, jop) in paulis.iter().zip([&jops.x, &jops.y, &jops.z]) {
        let left = embed_at(&spins, 0, sigma).expect("non-empty spin list");
        let right = embed_at(&spins, 1, jop).expect("non-empty spin list");
        sigma_dot_j = &sigma_dot_j + &(&left * &right);
    }

    let lower = (&identity.scale(j.value()) - &sigma_dot_j).scale(1.0 / (2.0 * j.value() + 1.0));
    let upper = &identity - &lower;

    ProjectorSet::new(
        labels::PAIR.iter().map(|s| s.to_string()).collect(),
        vec![lower, upper],
    )
}

/// The three-qubit family together with its expansion coefficients in the
/// operator basis {I, σ⃗₁·σ⃗₂, σ⃗₂·σ⃗₃, σ⃗₁·σ⃗₃}.
#[derive(Clone, Debug)]
pub struct AppendixSolution {
    pub set: ProjectorSet,
    /// One coefficient quadruple per projector, aligned with `set.labels()`.
    pub coefficients: Vec<[f64; 4]>,
}

/// Recover Π_{1/2} and Π_{3/2} from the two operator equations
///
/// ```text
///   Π_{1/2'} + Π_{1/2} + Π_{3/2} = I
///   (3/4)Π_{1/2'} + (3/4)Π_{1/2} + (15/4)Π_{3/2} = J⃗·J⃗
/// ```
///
/// given only Π_{1/2'} = |ψ−⟩⟨ψ−| ⊗ I and the total-spin operator. A
/// singular 2×2 scalar system is a hard failure: it can only mean the
/// J⃗·J⃗ construction is broken.
pub fn solve_appendix_system() -> Result<AppendixSolution, Error> {
    let identity = ComplexMatrix::identity(8);
    let singlet = singlet_state().projector().kron(&ComplexMatrix::identity(2));
    let jsq = total_spin_squared(&[HalfInteger::HALF; 3])?;

    let eigenvalue = |j: HalfInteger| j.casimir();
    let a = [
        [1.0, 1.0],
        [eigenvalue(HalfInteger::HALF), eigenvalue(HalfInteger::from_twice(3))],
    ];
    let rhs = [
        &identity - &singlet,
        &jsq - &singlet.scale(eigenvalue(HalfInteger::HALF)),
    ];

    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det.abs() < 1e-12 {
        return Err(Error::SingularSystem { det });
    }
    let doublet = &rhs[0].scale(a[1][1] / det) - &rhs[1].scale(a[0][1] / det);
    let quartet = &rhs[1].scale(a[0][0] / det) - &rhs[0].scale(a[1][0] / det);

    let basis = [
        ComplexMatrix::identity(8),
        pauli_dot_pauli(3, 0, 1),
        pauli_dot_pauli(3, 1, 2),
        pauli_dot_pauli(3, 0, 2),
    ];
    let projectors = vec![singlet, doublet, quartet];
    let coefficients = projectors
        .iter()
        .map(|p| {
            let mut coeffs = [0.0; 4];
            for (c, b) in coeffs.iter_mut().zip(&basis) {
                // the basis is Hilbert-Schmidt orthogonal
                *c = b.hs_inner(p).re / b.hs_inner(b).re;
            }
            coeffs
        })
        .collect();

    Ok(AppendixSolution {
        set: ProjectorSet::new(
            labels::THREE_QUBIT.iter().map(|s| s.to_string()).collect(),
            projectors,
        ),
        coefficients,
    })
}

/// Spectral oracle: simultaneous diagonalization of the commuting pair
/// (J⃗₁₂², J⃗_tot²) for three spins, or of J⃗_tot² alone for two.
///
/// Eigenvalues are clustered on the J(J+1) grid at
/// [`EIGENVALUE_CLUSTER_TOL`]; a cluster off the grid is a hard failure.
/// Projectors come back in canonical order — for three spins the singlet
/// intermediate branch first (its total spin printed with a prime), then the
/// triplet branch ascending in total spin; for two spins ascending total
/// spin. Labels carry the numeric total, e.g. `["5/2'", "3/2", "5/2", "7/2"]`.
pub fn spectral_total_spin_projectors(spins: &[HalfInteger]) -> Result<ProjectorSet, Error> {
    match spins.len() {
        2 => spectral_pair(spins),
        3 => {
            assert!(
                spins[0] == HalfInteger::HALF && spins[1] == HalfInteger::HALF,
                "three-spin configurations couple two leading qubits to the third spin"
            );
            spectral_triple(spins)
        }
        n => panic!("spectral oracle supports 2 or 3 spins, got {n}"),
    }
}

fn spectral_pair(spins: &[HalfInteger]) -> Result<ProjectorSet, Error> {
    let parity = (spins[0].twice() + spins[1].twice()) % 2;
    let jsq = total_spin_squared(spins)?;
    let eig = jsq.hermitian_eigen();
    let clusters = cluster_on_casimir_grid(&eig.eigenvalues, parity)?;

    let mut labels = Vec::new();
    let mut projectors = Vec::new();
    for (total, indices) in clusters {
        labels.push(total.to_string());
        let basis = eig.eigenvectors.columns(&indices);
        projectors.push(&basis * &basis.adjoint());
    }
    Ok(ProjectorSet::new(labels, projectors))
}

fn spectral_triple(spins: &[HalfInteger]) -> Result<ProjectorSet, Error> {
    let parity = (spins.iter().map(|j| j.twice()).sum::<u32>()) % 2;
    let jsq = total_spin_squared(spins)?;
    let pair_sq = subset_spin_squared(spins, &[0, 1])?;
    let eig = jsq.hermitian_eigen();
    let clusters = cluster_on_casimir_grid(&eig.eigenvalues, parity)?;

    // (intermediate qubit-pair spin, total spin) -> projector
    let mut singlet_branch: Vec<(HalfInteger, ComplexMatrix)> = Vec::new();
    let mut triplet_branch: Vec<(HalfInteger, ComplexMatrix)> = Vec::new();
    for (total, indices) in clusters {
        let basis = eig.eigenvectors.columns(&indices);
        // restrict J₁₂² to this total-spin eigenspace and split it there
        let restricted = &(&basis.adjoint() * &pair_sq) * &basis;
        let sub = restricted.hermitian_eigen();
        let sub_clusters = cluster_on_casimir_grid(&sub.eigenvalues, 0)?;
        for (intermediate, sub_indices) in sub_clusters {
            let vectors = &basis * &sub.eigenvectors.columns(&sub_indices);
            let projector = &vectors * &vectors.adjoint();
            match intermediate.twice() {
                0 => singlet_branch.push((total, projector)),
                2 => triplet_branch.push((total, projector)),
                other => {
                    return Err(Error::EigenvalueCluster {
                        value: other as f64 / 2.0,
                        tol: EIGENVALUE_CLUSTER_TOL,
                    })
                }
            }
        }
    }

    let mut labels = Vec::new();
    let mut projectors = Vec::new();
    for (total, p) in singlet_branch {
        labels.push(format!("{total}'"));
        projectors.push(p);
    }
    triplet_branch.sort_by_key(|(total, _)| *total);
    for (total, p) in triplet_branch {
        labels.push(total.to_string());
        projectors.push(p);
    }
    Ok(ProjectorSet::new(labels, projectors))
}

/// Group eigenvalues (ascending, as returned by the solver) by matching each
/// to J(J+1) on the half-integer grid with the stated parity of 2J.
fn cluster_on_casimir_grid(
    eigenvalues: &[f64],
    twice_j_parity: u32,
) -> Result<Vec<(HalfInteger, Vec<usize>)>, Error> {
    let mut clusters: Vec<(HalfInteger, Vec<usize>)> = Vec::new();
    for (index, &value) in eigenvalues.iter().enumerate() {
        let clamped = value.max(0.0);
        let twice_j = (2.0 * (-0.5 + (0.25 + clamped).sqrt())).round();
        if twice_j < 0.0 || twice_j as u32 % 2 != twice_j_parity % 2 {
            return Err(Error::EigenvalueCluster { value, tol: EIGENVALUE_CLUSTER_TOL });
        }
        let j = HalfInteger::from_twice(twice_j as u32);
        if (value - j.casimir()).abs() > EIGENVALUE_CLUSTER_TOL {
            return Err(Error::EigenvalueCluster { value, tol: EIGENVALUE_CLUSTER_TOL });
        }
        match clusters.iter_mut().find(|(total, _)| *total == j) {
            Some((_, indices)) => indices.push(index),
            None => clusters.push((j, vec![index])),
        }
    }
    clusters.sort_by_key(|(total, _)| *total);
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::Direction;
    use crate::linalg::tensor_states;
    use crate::spin::{coherent_state, collective_rotation, qubit_state};

    fn j(twice: u32) -> HalfInteger {
        HalfInteger::from_twice(twice)
    }

    #[test]
    fn three_qubit_invariants_and_traces() {
        let set = three_qubit_projectors();
        set.validate(PROJECTOR_TOL).unwrap();
        let traces = set.trace_dimensions();
        assert!((traces[0] - 2.0).abs() < 1e-12);
        assert!((traces[1] - 2.0).abs() < 1e-12);
        assert!((traces[2] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn three_qubit_singlet_is_psi_minus_tensor_identity() {
        let set = three_qubit_projectors();
        let direct = singlet_state().projector().kron(&ComplexMatrix::identity(2));
        assert!(set.projector(0).max_abs_diff(&direct) < 1e-14);
    }

    #[test]
    fn three_qubit_matches_spectral_oracle() {
        let analytic = three_qubit_projectors();
        let spectral = spectral_total_spin_projectors(&[j(1), j(1), j(1)]).unwrap();
        assert_eq!(spectral.labels(), &["1/2'", "1/2", "3/2"]);
        assert!(analytic.max_abs_diff(&spectral) < PROJECTOR_TOL);
    }

    #[test]
    fn coupled_invariants_and_traces() {
        for tj in [1u32, 2, 3, 4, 10, 20, 50] {
            let jj = j(tj);
            let set = coupled_projectors(jj);
            set.validate(PROJECTOR_TOL).unwrap();
            let d = jj.dimension() as f64;
            let expect = [d, d - 2.0, d, d + 2.0];
            for (got, want) in set.trace_dimensions().into_iter().zip(expect) {
                assert!((got - want.max(0.0)).abs() < 1e-9, "2j = {tj}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn coupled_at_half_reduces_to_three_qubits() {
        let coupled = coupled_projectors(j(1));
        let three = three_qubit_projectors();
        assert!(coupled.projector(0).max_abs_diff(three.projector(0)) < 1e-10);
        assert_eq!(coupled.projector(1).max_abs(), 0.0);
        assert!(coupled.projector(2).max_abs_diff(three.projector(1)) < 1e-10);
        assert!(coupled.projector(3).max_abs_diff(three.projector(2)) < 1e-10);
    }

    #[test]
    fn coupled_matches_spectral_oracle() {
        for tj in [2u32, 3, 5, 10] {
            let jj = j(tj);
            let analytic = coupled_projectors(jj);
            let spectral = spectral_total_spin_projectors(&[j(1), j(1), jj]).unwrap();
            assert_eq!(spectral.len(), 4);
            assert!(
                analytic.projector(0).max_abs_diff(spectral.projector(0)) < PROJECTOR_TOL,
                "2j = {tj} singlet branch"
            );
            for k in 1..4 {
                assert!(
                    analytic.projector(k).max_abs_diff(spectral.projector(k)) < PROJECTOR_TOL,
                    "2j = {tj} slot {k}"
                );
            }
        }
    }

    #[test]
    fn pair_invariants_and_oracle() {
        for tj in [1u32, 2, 3, 10] {
            let jj = j(tj);
            let set = pair_projectors(jj);
            set.validate(PROJECTOR_TOL).unwrap();
            let traces = set.trace_dimensions();
            assert!((traces[0] - jj.twice() as f64).abs() < 1e-10);
            assert!((traces[1] - (jj.twice() + 2) as f64).abs() < 1e-10);

            let spectral = spectral_total_spin_projectors(&[j(1), jj]).unwrap();
            assert!(set.max_abs_diff(&spectral) < PROJECTOR_TOL, "2j = {tj}");
        }
    }

    #[test]
    fn pair_at_half_lower_branch_is_singlet() {
        let set = pair_projectors(j(1));
        assert!(set.projector(0).max_abs_diff(&singlet_state().projector()) < 1e-14);
        let spectral = spectral_total_spin_projectors(&[j(1), j(1)]).unwrap();
        assert_eq!(spectral.labels(), &["0", "1"]);
        let traces = spectral.trace_dimensions();
        assert!((traces[0] - 1.0).abs() < 1e-10 && (traces[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn appendix_system_reproduces_pauli_expansion() {
        let solution = solve_appendix_system().unwrap();
        assert!(solution.set.max_abs_diff(&three_qubit_projectors()) < 1e-12);

        let expect: [[f64; 4]; 3] = [
            [0.25, -0.25, 0.0, 0.0],
            [0.25, 1.0 / 12.0, -1.0 / 6.0, -1.0 / 6.0],
            [0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0],
        ];
        for (got, want) in solution.coefficients.iter().zip(expect) {
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn projectors_commute_with_collective_rotations() {
        let axis = Direction::new(0.4, -0.9, 0.2).unwrap();
        let angle = 0.77;
        for tj in [1u32, 3, 5] {
            let jj = j(tj);
            let rotation = collective_rotation(axis, angle, &[j(1), j(1), jj]).unwrap();
            let set = coupled_projectors(jj);
            for (label, p) in set.iter() {
                let commutator = &(p * &rotation) - &(&rotation * p);
                assert!(commutator.max_abs() < 1e-10, "2j = {tj}, label {label}");
            }
        }
    }

    #[test]
    fn singlet_branch_probability_is_quarter_of_one_minus_cosine() {
        // ⟨Π_{j'}⟩ on |n̂⟩⊗|m̂⟩⊗|r̂_j⟩ = (1 − n̂·m̂)/4, independent of j and r̂
        let n = Direction::new(0.3, 0.4, -0.7).unwrap();
        let m = Direction::new(-0.5, 0.1, 0.6).unwrap();
        let r = Direction::new(0.9, -0.2, 0.1).unwrap();
        let expect = (1.0 - n.dot(m)) / 4.0;
        for tj in [1u32, 2, 5, 9] {
            let jj = j(tj);
            let state =
                tensor_states(&[qubit_state(n), qubit_state(m), coherent_state(jj, r)]).unwrap();
            let prob = coupled_projectors(jj).projector(0).expectation(&state).re;
            assert!((prob - expect).abs() < 1e-12, "2j = {tj}");
        }
    }
}
