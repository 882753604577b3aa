//! Gegenbauer polynomials `C_j^λ` for half-integer `λ = (d-1)/2`, with the
//! Chebyshev polynomials `T_j` standing in at `λ = 0`.

use std::f64::consts::PI;

use crate::closedform::gamma::signed_log_gamma;

/// Index `λ = (d-1)/2` of the zonal harmonics on `S^d`.
pub fn index_for_dimension(d: u32) -> f64 {
    (f64::from(d) - 1.0) / 2.0
}

/// Coefficients `(a_j, b_j)` of `x G_j = a_j G_{j+1} + b_j G_{j-1}`.
pub fn recurrence(lambda: f64, j: usize) -> (f64, f64) {
    let jf = j as f64;
    if lambda == 0.0 {
        return match j {
            0 => (1.0, 0.0),
            _ => (0.5, 0.5),
        };
    }
    let up = (jf + 1.0) / (2.0 * (jf + lambda));
    let down = if j == 0 {
        0.0
    } else {
        (jf + 2.0 * lambda - 1.0) / (2.0 * (jf + lambda))
    };
    (up, down)
}

/// Multiply a coefficient series by `x`; the degree grows by one.
pub fn mult_by_cos(lambda: f64, coeffs: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; coeffs.len() + 1];
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let (up, down) = recurrence(lambda, j);
        out[j + 1] += up * c;
        if j > 0 {
            out[j - 1] += down * c;
        }
    }
    out
}

/// `G_0(x), ..., G_degree(x)`.
pub fn values(lambda: f64, degree: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(degree + 1);
    out.push(1.0);
    if degree == 0 {
        return out;
    }
    out.push(if lambda == 0.0 { x } else { 2.0 * lambda * x });
    for n in 2..=degree {
        let nf = n as f64;
        let next = if lambda == 0.0 {
            2.0 * x * out[n - 1] - out[n - 2]
        } else {
            (2.0 * (nf + lambda - 1.0) * x * out[n - 1] - (nf + 2.0 * lambda - 2.0) * out[n - 2]) / nf
        };
        out.push(next);
    }
    out
}

/// `G_j'(x)` for `j = 0..=degree`, from `d/dx C_j^λ = 2λ C_{j-1}^{λ+1}`
/// and `d/dx T_j = j U_{j-1}`.
pub fn derivatives(lambda: f64, degree: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; degree + 1];
    if degree == 0 {
        return out;
    }
    let raised = values(lambda + 1.0, degree - 1, x);
    for j in 1..=degree {
        out[j] = if lambda == 0.0 {
            j as f64 * raised[j - 1]
        } else {
            2.0 * lambda * raised[j - 1]
        };
    }
    out
}

/// `∫ G_j(x)^2 (1-x^2)^{λ-1/2} dx`:
/// `π 2^{1-2λ} Γ(j+2λ) / (j! (j+λ) Γ(λ)^2)`, and `π`, `π/2` for Chebyshev.
pub fn norm(lambda: f64, j: usize) -> f64 {
    if lambda == 0.0 {
        return if j == 0 { PI } else { PI / 2.0 };
    }
    let jf = j as f64;
    let lg = |x: f64| signed_log_gamma(x).expect("positive argument").log_magnitude;
    (PI.ln() + (1.0 - 2.0 * lambda) * 2f64.ln() + lg(jf + 2.0 * lambda)
        - lg(jf + 1.0)
        - (jf + lambda).ln()
        - 2.0 * lg(lambda))
    .exp()
}
