//! Dense complex vectors and matrices for states and operators.
//!
//! Thin domain wrappers over `nalgebra`; everything protocol-level speaks
//! [`StateVector`] / [`ComplexMatrix`] so dimension checks and conventions
//! (basis order, Hermiticity tolerances) live in one place.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::Error;

pub type Complex64 = Complex<f64>;

pub const C_ZERO: Complex64 = Complex::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex::new(1.0, 0.0);
pub const C_I: Complex64 = Complex::new(0.0, 1.0);

/// Max-abs deviation below which an asserted Hermitian matrix is accepted.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Max norm deviation below which a state vector is accepted as unit.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// A pure state: dense complex amplitudes in a fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    inner: DVector<Complex64>,
}

impl StateVector {
    /// A unit-norm state. Fails if the amplitudes are not normalized to
    /// within [`UNIT_NORM_TOL`].
    pub fn unit(amplitudes: Vec<Complex64>) -> Result<Self, Error> {
        let v = Self::from_amplitudes(amplitudes);
        let err = (v.norm() - 1.0).abs();
        if err > UNIT_NORM_TOL {
            return Err(Error::DimensionMismatch(format!(
                "state vector norm deviates from 1 by {err:.3e}"
            )));
        }
        Ok(v)
    }

    /// Raw amplitudes, no normalization check (for intermediates).
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        Self { inner: DVector::from_vec(amplitudes) }
    }

    /// Computational basis vector e_index.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut inner = DVector::from_element(dim, C_ZERO);
        inner[index] = C_ONE;
        Self { inner }
    }

    pub fn dim(&self) -> usize {
        self.inner.len()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.inner[index]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.inner.as_slice()
    }

    pub fn norm(&self) -> f64 {
        self.inner.norm()
    }

    /// ⟨self|other⟩ (conjugate-linear in `self`).
    pub fn inner_product(&self, other: &StateVector) -> Complex64 {
        self.inner.dotc(&other.inner)
    }

    /// |self⟩⟨self|.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| self.inner[i] * self.inner[j].conj())
    }

    /// Kronecker product |self⟩ ⊗ |other⟩.
    pub fn kron(&self, other: &StateVector) -> StateVector {
        let kron = self.inner.kronecker(&other.inner);
        StateVector { inner: DVector::from_column_slice(kron.as_slice()) }
    }

    pub(crate) fn inner(&self) -> &DVector<Complex64> {
        &self.inner
    }
}

/// Kronecker product of one or more states, left-to-right factor order.
pub fn tensor_states(factors: &[StateVector]) -> Result<StateVector, Error> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyTensorProduct)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.kron(f)))
}

/// Kronecker product of one or more operators, left-to-right factor order.
pub fn tensor_operators(factors: &[ComplexMatrix]) -> Result<ComplexMatrix, Error> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyTensorProduct)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.kron(f)))
}

/// A dense complex matrix (operators, projectors, rotations).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { inner: DMatrix::from_element(rows, cols, C_ZERO) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { inner: DMatrix::identity(dim, dim) }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        Self { inner: DMatrix::from_fn(rows, cols, f) }
    }

    /// Row-major construction helper.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[Complex64]) -> Self {
        Self { inner: DMatrix::from_row_slice(rows, cols, entries) }
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.inner[(row, col)] = value;
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self { inner: &self.inner * Complex::new(factor, 0.0) }
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        Self { inner: &self.inner * factor }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { inner: self.inner.adjoint() }
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    /// Hilbert-Schmidt inner product tr(self† · other).
    pub fn hs_inner(&self, other: &ComplexMatrix) -> Complex64 {
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        Self { inner: self.inner.kronecker(&other.inner) }
    }

    /// Apply to a state: M|v⟩.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        StateVector { inner: &self.inner * v.inner() }
    }

    /// ⟨v|M|v⟩.
    pub fn expectation(&self, v: &StateVector) -> Complex64 {
        v.inner().dotc(&(&self.inner * v.inner()))
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows(), self.cols()),
            (other.rows(), other.cols()),
            "max_abs_diff on mismatched shapes"
        );
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-abs deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
    ///
    /// Asserts Hermiticity to [`HERMITICITY_TOL`] (scaled by the matrix
    /// magnitude) before delegating to the dense symmetric solver.
    pub fn hermitian_eigen(&self) -> HermitianEigen {
        let scale = self.max_abs().max(1.0);
        assert!(
            self.hermiticity_error() <= HERMITICITY_TOL * scale,
            "hermitian_eigen on a non-Hermitian matrix (deviation {:.3e})",
            self.hermiticity_error()
        );
        let eig = self.inner.clone().symmetric_eigen();
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        HermitianEigen { eigenvalues, eigenvectors: ComplexMatrix { inner: eigenvectors } }
    }

    /// Column as a state vector.
    pub fn column(&self, col: usize) -> StateVector {
        StateVector { inner: self.inner.column(col).into_owned() }
    }

    /// Submatrix assembled from the given columns, in the given order.
    pub fn columns(&self, indices: &[usize]) -> ComplexMatrix {
        ComplexMatrix {
            inner: DMatrix::from_fn(self.rows(), indices.len(), |r, c| {
                self.inner[(r, indices[c])]
            }),
        }
    }
}

/// Result of a Hermitian eigendecomposition: real eigenvalues in ascending
/// order, orthonormal eigenvectors as matching columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner + &rhs.inner }
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner - &rhs.inner }
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner * &rhs.inner }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex::new(re, im)
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = tensor_operators(&[i2.clone(), i2]).unwrap();
        assert_eq!(i4.max_abs_diff(&ComplexMatrix::identity(4)), 0.0);
    }

    #[test]
    fn tensor_of_basis_states() {
        let z = StateVector::basis_state(2, 0);
        let t = tensor_states(&[z.clone(), z]).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.amplitude(0), C_ONE);
        for k in 1..4 {
            assert_eq!(t.amplitude(k), C_ZERO);
        }
    }

    #[test]
    fn tensor_rejects_empty() {
        assert!(tensor_states(&[]).is_err());
        assert!(tensor_operators(&[]).is_err());
    }

    #[test]
    fn sigma_z_kron_sigma_z_diagonal() {
        let sz = ComplexMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), C_ZERO, C_ZERO, c(-1.0, 0.0)]);
        let zz = sz.kron(&sz);
        let diag: Vec<f64> = (0..4).map(|k| zz.get(k, k).re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn unit_constructor_enforces_norm() {
        assert!(StateVector::unit(vec![c(0.6, 0.0), c(0.0, 0.8)]).is_ok());
        assert!(StateVector::unit(vec![c(0.6, 0.0), c(0.0, 0.9)]).is_err());
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, -0.7), c(0.0, 0.7), c(-0.5, 0.0)],
        );
        let eig = m.hermitian_eigen();
        assert!(eig.eigenvalues[0] <= eig.eigenvalues[1]);
        let mut recon = ComplexMatrix::zeros(2, 2);
        for k in 0..2 {
            let v = eig.eigenvectors.column(k);
            recon = &recon + &v.projector().scale(eig.eigenvalues[k]);
        }
        assert!(m.max_abs_diff(&recon) < 1e-12);
    }

    #[test]
    fn expectation_matches_inner_product() {
        let v = StateVector::unit(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), C_ZERO, C_ZERO, c(3.0, 0.0)]);
        let e = m.expectation(&v);
        assert!((e.re - (0.36 * 2.0 + 0.64 * 3.0)).abs() < 1e-14);
        assert!(e.im.abs() < 1e-14);
    }
}
