//! Leading terms of meromorphic quantities.
//!
//! Near a singular spectral order the intertwinor eigenvalues behave like
//! `c * t^m` in a perturbation parameter `t`. [`LeadingTerm`] carries `c` in
//! signed-log form together with the order `m`, so poles and zeros can be
//! multiplied through without ever forming `0 * inf`.

use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

/// `sign * exp(log_magnitude)`; `sign == 0` is an exact zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignedLogValue {
    pub log_magnitude: f64,
    pub sign: i8,
}

impl SignedLogValue {
    pub const ONE: SignedLogValue = SignedLogValue {
        log_magnitude: 0.0,
        sign: 1,
    };

    pub const ZERO: SignedLogValue = SignedLogValue {
        log_magnitude: f64::NEG_INFINITY,
        sign: 0,
    };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                log_magnitude: x.abs().ln(),
                sign: if x > 0.0 { 1 } else { -1 },
            }
        }
    }

    pub fn value(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_magnitude.exp()
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero");
        Self {
            log_magnitude: -self.log_magnitude,
            sign: self.sign,
        }
    }
}

impl Mul for SignedLogValue {
    type Output = SignedLogValue;
    fn mul(self, rhs: SignedLogValue) -> SignedLogValue {
        if self.sign == 0 || rhs.sign == 0 {
            return SignedLogValue::ZERO;
        }
        SignedLogValue {
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
            sign: self.sign * rhs.sign,
        }
    }
}

impl Div for SignedLogValue {
    type Output = SignedLogValue;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: SignedLogValue) -> SignedLogValue {
        self * rhs.recip()
    }
}

/// Finite value or pole, the two states a spectral entry can be in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralValue {
    Finite(f64),
    Pole,
}

impl SpectralValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            SpectralValue::Finite(x) => Some(x),
            SpectralValue::Pole => None,
        }
    }

    pub fn is_pole(self) -> bool {
        matches!(self, SpectralValue::Pole)
    }
}

/// `coeff * t^order` as `t -> 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadingTerm {
    pub coeff: SignedLogValue,
    pub order: i32,
}

impl LeadingTerm {
    pub const ONE: LeadingTerm = LeadingTerm {
        coeff: SignedLogValue::ONE,
        order: 0,
    };

    pub fn regular(x: f64) -> Self {
        Self {
            coeff: SignedLogValue::from_f64(x),
            order: 0,
        }
    }

    /// Leading term of the affine function `value + slope * t`.
    pub fn affine(value: f64, slope: f64, is_zero: bool) -> Self {
        if is_zero {
            Self {
                coeff: SignedLogValue::from_f64(slope),
                order: 1,
            }
        } else {
            Self::regular(value)
        }
    }

    pub fn recip(self) -> Self {
        Self {
            coeff: self.coeff.recip(),
            order: -self.order,
        }
    }

    /// The limit `t -> 0`.
    pub fn evaluate(self) -> SpectralValue {
        match self.order {
            o if o > 0 => SpectralValue::Finite(0.0),
            o if o < 0 => SpectralValue::Pole,
            _ => SpectralValue::Finite(self.coeff.value()),
        }
    }

    /// Relative distance between the coefficients of two terms of equal order.
    pub fn relative_gap(self, other: LeadingTerm) -> Option<f64> {
        if self.order != other.order {
            return None;
        }
        match (self.coeff.sign, other.coeff.sign) {
            (0, 0) => Some(0.0),
            (a, b) if a == b => Some((self.coeff.log_magnitude - other.coeff.log_magnitude).exp_m1().abs()),
            _ => Some(2.0),
        }
    }
}

impl Mul for LeadingTerm {
    type Output = LeadingTerm;
    fn mul(self, rhs: LeadingTerm) -> LeadingTerm {
        LeadingTerm {
            coeff: self.coeff * rhs.coeff,
            order: self.order + rhs.order,
        }
    }
}

impl Div for LeadingTerm {
    type Output = LeadingTerm;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: LeadingTerm) -> LeadingTerm {
        self * rhs.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_log_roundtrip() {
        for x in [1.0, -2.5, 1e-30, -7e40] {
            let v = SignedLogValue::from_f64(x).value();
            // exp(ln|x|) carries |ln x| ulps of relative error
            assert!((v - x).abs() <= 1e-13 * x.abs());
        }
        assert_eq!(SignedLogValue::from_f64(0.0).value(), 0.0);
    }

    #[test]
    fn pole_times_zero_is_finite() {
        let pole = LeadingTerm::affine(0.0, -2.0, true).recip();
        let zero = LeadingTerm::affine(0.0, 4.0, true);
        assert!(pole.evaluate().is_pole());
        assert_eq!(zero.evaluate(), SpectralValue::Finite(0.0));
        assert_eq!((pole * zero).evaluate(), SpectralValue::Finite(-2.0));
    }
}
