//! Signed log-gamma with exact pole handling.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::leading::{LeadingTerm, SignedLogValue};

/// Absolute distance to a nonpositive integer below which `x` counts as a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi x)` with exact argument reduction, accurate near the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let series = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64));
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

/// `log|Γ(x)|` and the sign of `Γ(x)`.
pub fn signed_log_gamma(x: f64) -> Result<SignedLogValue> {
    if !x.is_finite() {
        return Err(Error::PoleAtGamma { x });
    }
    if x <= 0.0 && (x - x.round()).abs() <= POLE_TOLERANCE {
        return Err(Error::PoleAtGamma { x });
    }
    if x > 0.5 {
        return Ok(SignedLogValue {
            log_magnitude: ln_gamma_lanczos(x),
            sign: 1,
        });
    }
    // Γ(x) Γ(1-x) = π / sin(πx)
    let s = sin_pi(x);
    Ok(SignedLogValue {
        log_magnitude: PI.ln() - s.abs().ln() - ln_gamma_lanczos(1.0 - x),
        sign: if s > 0.0 { 1 } else { -1 },
    })
}

/// `Γ(x)` as a plain float; overflows for large arguments.
pub fn gamma(x: f64) -> Result<f64> {
    signed_log_gamma(x).map(SignedLogValue::value)
}

/// A gamma-function argument that moves with a perturbation parameter `t`
/// as `value + slope * t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaArgument {
    pub value: f64,
    /// `4 * value` when that is known to be an exact integer.
    pub quarters: Option<i64>,
    pub slope: f64,
}

impl GammaArgument {
    /// `Some(m)` when the argument sits on the pole at `-m`.
    pub fn pole_index(&self) -> Option<u64> {
        match self.quarters {
            Some(q) if q <= 0 && q % 4 == 0 => Some((-q / 4) as u64),
            Some(_) => None,
            None => {
                let m = self.value.round();
                (m <= 0.0 && (self.value - m).abs() <= POLE_TOLERANCE).then_some((-m) as u64)
            }
        }
    }

    /// Leading term of `Γ(value + slope * t)`.
    ///
    /// At the pole `-m`, `Γ(-m + s t) ≈ (-1)^m / (m! s t)`.
    pub fn leading(&self) -> Result<LeadingTerm> {
        match self.pole_index() {
            None => Ok(LeadingTerm {
                coeff: signed_log_gamma(self.value)?,
                order: 0,
            }),
            Some(_) if self.slope == 0.0 => Err(Error::PoleAtGamma { x: self.value }),
            Some(m) => {
                let log_factorial = ln_gamma_lanczos(m as f64 + 1.0);
                let sign = if m % 2 == 0 { 1 } else { -1 } * if self.slope > 0.0 { 1 } else { -1 };
                Ok(LeadingTerm {
                    coeff: SignedLogValue {
                        log_magnitude: -log_factorial - self.slope.abs().ln(),
                        sign,
                    },
                    order: -1,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // log|Γ(x)| and sign, computed with mpmath at 40 digits.
    #[allow(clippy::excessive_precision)]
    const ORACLE: [(f64, f64, i8); 10] = [
        (0.5, 0.572_364_942_924_700_087_07, 1),
        (-1.5, 0.860_047_015_376_481_014_51, 1),
        (0.1, 2.252_712_651_734_205_959_9, 1),
        (2.5, 0.284_682_870_472_919_159_63, 1),
        (10.3, 13.482_036_786_138_356_971, 1),
        (-0.3, 1.464_840_050_857_602_507, -1),
        (-2.7, -0.071_407_085_315_645_885_809, -1),
        (37.25, 96.619_884_588_278_101_179, 1),
        (1e-3, 6.907_178_885_383_853_682_5, 1),
        (-5.5, -4.517_832_174_007_741_354_4, 1),
    ];

    #[test]
    fn matches_high_precision_oracle() {
        for (x, log_mag, sign) in ORACLE {
            let g = signed_log_gamma(x).unwrap();
            assert_eq!(g.sign, sign, "sign at {x}");
            let tol = 2e-15 * log_mag.abs().max(1.0) * 4.0;
            assert!(
                (g.log_magnitude - log_mag).abs() <= tol,
                "x={x}: {} vs {log_mag}",
                g.log_magnitude
            );
        }
    }

    #[test]
    fn gamma_one_and_half() {
        let g = signed_log_gamma(1.0).unwrap();
        assert!(g.log_magnitude.abs() < 1e-15 && g.sign == 1);
        let g = signed_log_gamma(-1.5).unwrap();
        let expected = (4.0 * PI.sqrt() / 3.0).ln();
        assert!((g.log_magnitude - expected).abs() < 1e-14);
    }

    #[test]
    fn poles_are_rejected() {
        for x in [0.0, -1.0, -7.0, -3.0 + 1e-13] {
            assert!(matches!(signed_log_gamma(x), Err(Error::PoleAtGamma { .. })));
        }
    }

    #[test]
    fn recurrence_oracle_for_negative_arguments() {
        // Γ(x) = Γ(x+2) / (x(x+1))
        for x in [-0.75, -1.25, -2.6, -4.1, -9.9] {
            let lhs = gamma(x).unwrap();
            let rhs = gamma(x + 2.0).unwrap() / (x * (x + 1.0));
            assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs(), "{x}");
        }
    }

    #[test]
    fn sin_pi_is_exact_near_integers() {
        let h = 2f64.powi(-21);
        for m in 0..12 {
            let s = sin_pi(-(m as f64) + h);
            let expected = if m % 2 == 0 { 1.0 } else { -1.0 } * (PI * h).sin();
            assert!((s - expected).abs() <= 1e-15 * expected.abs());
        }
    }

    #[test]
    fn pole_leading_term_matches_numeric_blowup() {
        for (m, slope) in [(0u64, 0.5), (1, -0.5), (3, 0.5)] {
            let arg = GammaArgument {
                value: -(m as f64),
                quarters: Some(-4 * m as i64),
                slope,
            };
            let lead = arg.leading().unwrap();
            assert_eq!(lead.order, -1);
            let t = 1e-7;
            let numeric = gamma(-(m as f64) + slope * t).unwrap() * t;
            assert!((lead.coeff.value() - numeric).abs() <= 1e-5 * numeric.abs());
        }
    }
}
