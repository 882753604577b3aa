//! Gauss quadrature for the zonal measures `sin^{d-1} θ dθ`, i.e. the
//! weight `(1-x^2)^{λ-1/2}` on `[-1, 1]` (Gauss–Jacobi with `α = β = λ - 1/2`).

use nalgebra::{DMatrix, SymmetricEigen};

use crate::closedform::gamma::signed_log_gamma;
use crate::geometry::Signature;

use super::gegenbauer::index_for_dimension;

/// Nodes and weights of the `n`-point rule for `(1-x^2)^{λ-1/2}` via
/// Golub–Welsch on the monic Gegenbauer recurrence.
pub fn gauss_gegenbauer(n: usize, lambda: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let kf = k as f64;
        let beta = if k == 1 {
            1.0 / (2.0 * (1.0 + lambda))
        } else {
            kf * (kf + 2.0 * lambda - 1.0) / (4.0 * (kf + lambda) * (kf + lambda - 1.0))
        };
        jacobi[(k, k - 1)] = beta.sqrt();
        jacobi[(k - 1, k)] = beta.sqrt();
    }
    let lg = |x: f64| signed_log_gamma(x).expect("positive argument").log_magnitude;
    let total_mass = (0.5 * std::f64::consts::PI.ln() + lg(lambda + 0.5) - lg(lambda + 1.0)).exp();

    let eigen = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = eigen
        .eigenvalues
        .iter()
        .zip(eigen.eigenvectors.row(0).iter())
        .map(|(&x, &v)| (x, total_mass * v * v))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // The rule is symmetric about 0; enforce it exactly.
    for i in 0..n / 2 {
        let x = 0.5 * (pairs[n - 1 - i].0 - pairs[i].0);
        let w = 0.5 * (pairs[n - 1 - i].1 + pairs[i].1);
        pairs[i] = (-x, w);
        pairs[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    pairs.into_iter().unzip()
}

/// Tensor-product grid in `(cos τ, cos ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub sig: Signature,
    pub x_nodes: Vec<f64>,
    pub x_weights: Vec<f64>,
    pub y_nodes: Vec<f64>,
    pub y_weights: Vec<f64>,
}

impl QuadratureGrid {
    /// Grid with `degree + 4` nodes per axis.
    pub fn new(sig: Signature, degree_j: usize, degree_k: usize) -> Self {
        Self::with_nodes(sig, degree_j + 4, degree_k + 4)
    }

    pub fn with_nodes(sig: Signature, nx: usize, ny: usize) -> Self {
        let (x_nodes, x_weights) = gauss_gegenbauer(nx, index_for_dimension(sig.p()));
        let (y_nodes, y_weights) = gauss_gegenbauer(ny, index_for_dimension(sig.q()));
        Self {
            sig,
            x_nodes,
            x_weights,
            y_nodes,
            y_weights,
        }
    }

    pub fn nx(&self) -> usize {
        self.x_nodes.len()
    }

    pub fn ny(&self) -> usize {
        self.y_nodes.len()
    }

    /// Highest polynomial degree integrated exactly along each axis.
    pub fn exact_degree(&self) -> (usize, usize) {
        (2 * self.nx() - 1, 2 * self.ny() - 1)
    }
}
