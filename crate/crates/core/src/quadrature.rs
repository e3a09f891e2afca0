//! Gauss-Legendre quadrature: 1-D rules with node-doubling convergence and
//! tensor-product 3-D rules over the prior parametrizations.

use std::f64::consts::PI;

use crate::error::Error;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the Legendre polynomial roots; accurate to machine
    /// precision for the node counts used here (≤ 2^15).
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess for the i-th root (descending order).
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_and_derivative(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        Self { nodes, weights }
    }

    /// ∫ₐᵇ f(x) dx.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Outcome of a node doubling loop.
#[derive(Clone, Copy, Debug)]
pub struct Converged {
    pub value: f64,
    /// |last doubling change|, the reported error estimate.
    pub error: f64,
    pub nodes: usize,
}

/// Integrate on [a, b], doubling the node count from `start_nodes` until the
/// result changes by less than `tol`. Errors out (with the last change as a
/// non-convergence diagnostic) if the change still exceeds `fail_tol` at the
/// node cap.
pub fn integrate_to_convergence(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    start_nodes: usize,
    tol: f64,
    fail_tol: f64,
) -> Result<Converged, Error> {
    let mut n = start_nodes.max(8);
    let mut prev = GaussLegendre::new(n).integrate(a, b, &f);
    let mut change = f64::INFINITY;
    while n < (1 << 15) {
        n *= 2;
        let next = GaussLegendre::new(n).integrate(a, b, &f);
        change = (next - prev).abs();
        prev = next;
        if change <= tol {
            return Ok(Converged { value: prev, error: change, nodes: n });
        }
    }
    if change <= fail_tol {
        Ok(Converged { value: prev, error: change, nodes: n })
    } else {
        Err(Error::QuadratureNotConverged { nodes: n, change })
    }
}

/// Expectation over the relative-angle prior of three shared directions.
///
/// The prior density on the pairwise cosines (x, y, z) is 1/(4π √det G),
/// singular on the realizability boundary. Parametrizing z = xy +
/// √((1-x²)(1-y²)) cos φ with x, y uniform on [-1,1] and φ uniform on [0, π]
/// absorbs the density into the volume element, leaving a smooth integrand.
pub fn prior_expectation_correlated(n: usize, f: impl Fn(f64, f64, f64) -> f64) -> f64 {
    let rule = GaussLegendre::new(n);
    let phi_rule = GaussLegendre::new(n);
    let mut total = 0.0;
    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        let sx = (1.0 - x * x).max(0.0).sqrt();
        for (&y, &wy) in rule.nodes.iter().zip(&rule.weights) {
            let s = sx * (1.0 - y * y).max(0.0).sqrt();
            let mut inner = 0.0;
            for (&t, &wp) in phi_rule.nodes.iter().zip(&phi_rule.weights) {
                let phi = 0.5 * PI * (t + 1.0);
                let z = (x * y + s * phi.cos()).clamp(-1.0, 1.0);
                inner += wp * f(x, y, z);
            }
            // x, y carry weight 1/2 each; φ spans [0, π] with density 1/π.
            total += wx * wy * inner * (0.5 * PI) / (2.0 * 2.0 * PI);
        }
    }
    total
}

/// Vector-valued variant of [`prior_expectation_correlated`]: `f` writes the
/// integrand components for one node into the scratch slice.
pub fn prior_expectation_correlated_vec(
    n: usize,
    dim: usize,
    f: impl Fn(f64, f64, f64, &mut [f64]),
) -> Vec<f64> {
    let rule = GaussLegendre::new(n);
    let mut total = vec![0.0; dim];
    let mut scratch = vec![0.0; dim];
    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        let sx = (1.0 - x * x).max(0.0).sqrt();
        for (&y, &wy) in rule.nodes.iter().zip(&rule.weights) {
            let s = sx * (1.0 - y * y).max(0.0).sqrt();
            for (&t, &wp) in rule.nodes.iter().zip(&rule.weights) {
                let phi = 0.5 * PI * (t + 1.0);
                let z = (x * y + s * phi.cos()).clamp(-1.0, 1.0);
                f(x, y, z, &mut scratch);
                let weight = wx * wy * wp / 8.0;
                for (acc, v) in total.iter_mut().zip(&scratch) {
                    *acc += weight * v;
                }
            }
        }
    }
    total
}

/// Vector-valued variant of [`prior_expectation_cube`].
pub fn prior_expectation_cube_vec(
    n: usize,
    dim: usize,
    f: impl Fn(f64, f64, f64, &mut [f64]),
) -> Vec<f64> {
    let rule = GaussLegendre::new(n);
    let mut total = vec![0.0; dim];
    let mut scratch = vec![0.0; dim];
    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        for (&y, &wy) in rule.nodes.iter().zip(&rule.weights) {
            for (&z, &wz) in rule.nodes.iter().zip(&rule.weights) {
                f(x, y, z, &mut scratch);
                let weight = wx * wy * wz / 8.0;
                for (acc, v) in total.iter_mut().zip(&scratch) {
                    *acc += weight * v;
                }
            }
        }
    }
    total
}

/// Expectation over three independent uniform cosines on [-1, 1]³ (the prior
/// of three disjoint pairs).
pub fn prior_expectation_cube(n: usize, f: impl Fn(f64, f64, f64) -> f64) -> f64 {
    let rule = GaussLegendre::new(n);
    let mut total = 0.0;
    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        for (&y, &wy) in rule.nodes.iter().zip(&rule.weights) {
            let mut inner = 0.0;
            for (&z, &wz) in rule.nodes.iter().zip(&rule.weights) {
                inner += wz * f(x, y, z);
            }
            total += wx * wy * inner;
        }
    }
    total / 8.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        // degree 15 is exact for 8 nodes
        let got = rule.integrate(-1.0, 1.0, |x| x.powi(14));
        assert!((got - 2.0 / 15.0).abs() < 1e-14);
        let got = rule.integrate(0.0, 2.0, |x| 3.0 * x * x);
        assert!((got - 8.0).abs() < 1e-13);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 5, 64, 257] {
            let rule = GaussLegendre::new(n);
            let sum: f64 = rule.weights.iter().sum();
            assert!((sum - 2.0).abs() < 1e-12, "n = {n}: {sum}");
        }
    }

    #[test]
    fn converges_on_endpoint_log_singularity() {
        // ∫₀² u log₂ u du = 2 - 1/ln 2
        let exact = 2.0 - 1.0 / std::f64::consts::LN_2;
        let got = integrate_to_convergence(|u| u * u.max(1e-300).log2(), 0.0, 2.0, 32, 1e-10, 1e-7)
            .unwrap();
        assert!((got.value - exact).abs() < 1e-9, "error {:.3e}", (got.value - exact).abs());
    }

    #[test]
    fn correlated_prior_normalizes_and_is_symmetric() {
        let one = prior_expectation_correlated(24, |_, _, _| 1.0);
        assert!((one - 1.0).abs() < 1e-12);
        // each cosine marginal is uniform: E[x^2] = E[z^2] = 1/3
        let ex2 = prior_expectation_correlated(32, |x, _, _| x * x);
        let ez2 = prior_expectation_correlated(32, |_, _, z| z * z);
        assert!((ex2 - 1.0 / 3.0).abs() < 1e-10);
        assert!((ez2 - 1.0 / 3.0).abs() < 1e-10);
        // E[xy z] is the lowest joint moment that sees the correlation:
        // E[z | x, y] = xy, so E[xyz] = E[x²]E[y²] = 1/9.
        let exyz = prior_expectation_correlated(32, |x, y, z| x * y * z);
        assert!((exyz - 1.0 / 9.0).abs() < 1e-10);
    }

    #[test]
    fn cube_prior_moments() {
        let one = prior_expectation_cube(16, |_, _, _| 1.0);
        assert!((one - 1.0).abs() < 1e-13);
        let exyz = prior_expectation_cube(16, |x, y, z| x * y * z);
        assert!(exyz.abs() < 1e-13);
        let ex2y2 = prior_expectation_cube(16, |x, y, _| x * x * y * y);
        assert!((ex2y2 - 1.0 / 9.0).abs() < 1e-13);
    }
}
