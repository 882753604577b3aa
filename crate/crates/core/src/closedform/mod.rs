//! Closed forms for the intertwinor eigenvalues: the eight-factor gamma
//! ratio `Z_ε(r; j, k)`, the factorized polynomial at positive integer `r`
//! and the conformal Laplacian at `r = 1`.
//!
//! Gamma arguments are half-integer translates of `±r/2`; they are formed
//! in exact quarter units whenever `2r` is an integer so that poles are
//! detected exactly.

pub mod gamma;

use crate::error::{Error, Result};
use crate::geometry::{HalfInt, KType, Signature};
use crate::leading::{LeadingTerm, SignedLogValue, SpectralValue};
use crate::spectrum::{Continuation, SpectralOrder};

pub use gamma::{signed_log_gamma, GammaArgument};

/// Largest `j + k` scanned when looking for a probe K-type.
pub const PROBE_RANGE: u32 = 16;

/// Step used by the limit convention; a power of two keeps `r ± h` exact.
pub const LIMIT_STEP: f64 = 1.0 / 1_048_576.0;

/// Gamma arguments of the closed form, split into the K-dependent pair
/// `(K ± J + 1 ± r)/2` and the parity constants `(c ∓ r)/2`.
#[derive(Debug, Clone, Copy)]
pub struct GammaArguments {
    pub kpart_numerator: [GammaArgument; 2],
    pub kpart_denominator: [GammaArgument; 2],
    pub constant_numerator: [GammaArgument; 2],
    pub constant_denominator: [GammaArgument; 2],
}

fn argument(x: HalfInt, sign: f64, r: f64, r_doubled: Option<i64>, slope: f64) -> GammaArgument {
    GammaArgument {
        value: (x.value() + sign * r) / 2.0,
        quarters: r_doubled.map(|d| x.doubled() + sign as i64 * d),
        slope,
    }
}

/// Arguments at a raw order value (used off the lattice of exact orders too).
fn gamma_arguments_at(
    sig: Signature,
    r: f64,
    r_doubled: Option<i64>,
    v: KType,
    continuation: Continuation,
) -> GammaArguments {
    let j2 = sig.shifted_j(v);
    let k2 = sig.shifted_k(v);
    let one = HalfInt::from_int(1);
    let x_plus = k2 + j2 + one;
    let x_minus = k2 - j2 + one;
    let eps = HalfInt::from_int(i64::from(v.parity()));
    let p = i64::from(sig.p());
    let q = i64::from(sig.q());
    // ε - (p-q)/2 + 1 and ε + (p+q)/2
    let c1 = eps + HalfInt::from_doubled(q - p) + one;
    let c2 = eps + HalfInt::from_doubled(p + q);

    let (num_slope, den_slope, const_num_slope, const_den_slope) = match continuation {
        Continuation::Order => (0.5, -0.5, -0.5, 0.5),
        Continuation::Lattice => (0.5, 0.5, 0.0, 0.0),
    };
    GammaArguments {
        kpart_numerator: [
            argument(x_plus, 1.0, r, r_doubled, num_slope),
            argument(x_minus, 1.0, r, r_doubled, num_slope),
        ],
        kpart_denominator: [
            argument(x_plus, -1.0, r, r_doubled, den_slope),
            argument(x_minus, -1.0, r, r_doubled, den_slope),
        ],
        constant_numerator: [
            argument(c1, -1.0, r, r_doubled, const_num_slope),
            argument(c2, -1.0, r, r_doubled, const_num_slope),
        ],
        constant_denominator: [
            argument(c1, 1.0, r, r_doubled, const_den_slope),
            argument(c2, 1.0, r, r_doubled, const_den_slope),
        ],
    }
}

pub fn gamma_arguments(sig: Signature, r: SpectralOrder, v: KType, continuation: Continuation) -> GammaArguments {
    gamma_arguments_at(sig, r.value(), r.doubled(), v, continuation)
}

fn ratio_leading(numerator: &[GammaArgument], denominator: &[GammaArgument]) -> Result<LeadingTerm> {
    let mut acc = LeadingTerm::ONE;
    for a in numerator {
        acc = acc * a.leading()?;
    }
    for a in denominator {
        acc = acc / a.leading()?;
    }
    Ok(acc)
}

/// Leading term of the K-dependent gamma factors
/// `Γ((K+J+1+r)/2) Γ((K-J+1+r)/2) / Γ((K+J+1-r)/2) Γ((K-J+1-r)/2)`.
pub fn kpart_leading(sig: Signature, r: SpectralOrder, v: KType, continuation: Continuation) -> Result<LeadingTerm> {
    if r.is_zero() {
        return Ok(LeadingTerm::ONE);
    }
    let args = gamma_arguments(sig, r, v, continuation);
    ratio_leading(&args.kpart_numerator, &args.kpart_denominator)
}

/// Leading term (in `r`) of the four K-independent factors of parity `ε`.
pub fn constant_leading(sig: Signature, r: SpectralOrder, parity: u8) -> Result<LeadingTerm> {
    if r.is_zero() {
        return Ok(LeadingTerm::ONE);
    }
    let args = gamma_arguments(sig, r, KType::base(parity % 2), Continuation::Order);
    ratio_leading(&args.constant_numerator, &args.constant_denominator)
}

/// Leading term in `r` of the full gamma ratio `Z_ε(r; j, k)`.
pub fn z_leading(sig: Signature, r: SpectralOrder, v: KType) -> Result<LeadingTerm> {
    if r.is_zero() {
        return Ok(LeadingTerm::ONE);
    }
    let args = gamma_arguments(sig, r, v, Continuation::Order);
    Ok(ratio_leading(&args.kpart_numerator, &args.kpart_denominator)?
        * ratio_leading(&args.constant_numerator, &args.constant_denominator)?)
}

/// Plain evaluation of the eight-factor ratio at a real order; any pole is an error.
pub fn z_gamma_direct(sig: Signature, r: f64, v: KType) -> Result<f64> {
    let args = gamma_arguments_at(sig, r, None, v, Continuation::Order);
    let mut acc = SignedLogValue::ONE;
    for a in args.kpart_numerator.iter().chain(&args.constant_numerator) {
        acc = acc * signed_log_gamma(a.value)?;
    }
    for a in args.kpart_denominator.iter().chain(&args.constant_denominator) {
        acc = acc / signed_log_gamma(a.value)?;
    }
    Ok(acc.value())
}

fn first_pole_argument(sig: Signature, r: SpectralOrder, v: KType) -> f64 {
    let args = gamma_arguments(sig, r, v, Continuation::Order);
    args.kpart_numerator
        .iter()
        .chain(&args.constant_numerator)
        .chain(&args.kpart_denominator)
        .chain(&args.constant_denominator)
        .find(|a| a.pole_index().is_some())
        .map_or(f64::NAN, |a| a.value)
}

/// Eigenvalue of `A_{2r}` on `V(j,k)`.
///
/// Positive integer `r` dispatches to `parity_constant * factorized_eigenvalue`;
/// other orders evaluate the gamma ratio, resolving matched pole pairs by
/// their limit in `r`.
pub fn z_spectral(sig: Signature, r: SpectralOrder, v: KType) -> Result<f64> {
    if r.is_zero() {
        return Ok(1.0);
    }
    if let Some(order) = r.as_positive_integer() {
        let constant = parity_constant(sig, order, v.parity())?;
        return Ok(constant.value * factorized_eigenvalue(sig, order, v));
    }
    match z_leading(sig, r, v)?.evaluate() {
        SpectralValue::Finite(x) => Ok(x),
        SpectralValue::Pole => Err(Error::PoleAtKType {
            at: v,
            argument: first_pole_argument(sig, r, v),
        }),
    }
}

/// `Z(r, v) / Z(r, base)` as a leading term, with the parity constants cancelled.
pub fn normalized_leading(
    sig: Signature,
    r: SpectralOrder,
    v: KType,
    base: KType,
    continuation: Continuation,
) -> Result<LeadingTerm> {
    Ok(kpart_leading(sig, r, v, continuation)? / kpart_leading(sig, r, base, continuation)?)
}

/// `4^r` times the factorized eigenvalue, exactly:
/// `∏_{m<r} (2K+2J+2-2r+4m)(2K-2J+2-2r+4m)`.
pub fn factorized_scaled(sig: Signature, r: u32, v: KType) -> i128 {
    let j2 = i128::from(sig.shifted_j(v).doubled());
    let k2 = i128::from(sig.shifted_k(v).doubled());
    let r = i128::from(r);
    (0..r)
        .map(|m| (k2 + j2 + 2 - 2 * r + 4 * m) * (k2 - j2 + 2 - 2 * r + 4 * m))
        .product()
}

/// Eigenvalue on `V(j,k)` of `(C+B-r+1)···(C+B+r-1)·(C-B-r+1)···(C-B+r-1)`
/// with `B = J`, `C = K` and steps of two.
pub fn factorized_eigenvalue(sig: Signature, r: u32, v: KType) -> f64 {
    factorized_scaled(sig, r, v) as f64 / 4f64.powi(r as i32)
}

/// `4 x` the conformal Laplacian eigenvalue
/// `k(q-1+k) - j(p-1+j) + ((q-1)^2 - (p-1)^2)/4`.
pub fn conformal_laplacian_quarters(sig: Signature, v: KType) -> i64 {
    use crate::geometry::{laplacian_eigenvalue, Sphere};
    let p = i64::from(sig.p());
    let q = i64::from(sig.q());
    4 * (laplacian_eigenvalue(sig, Sphere::Second, v.k) - laplacian_eigenvalue(sig, Sphere::First, v.j))
        + (q - 1) * (q - 1)
        - (p - 1) * (p - 1)
}

pub fn conformal_laplacian_eigenvalue(sig: Signature, v: KType) -> f64 {
    conformal_laplacian_quarters(sig, v) as f64 / 4.0
}

/// How a parity constant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantConvention {
    /// Quotient of finite values at the probe.
    Direct,
    /// `lim h^m Z(r+h) / F` at the probe, `m` the pole order of the constant factors.
    Limit { pole_order: i32 },
}

/// `Z / F` on a parity class at positive integer `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityConstant {
    pub value: f64,
    pub probe: KType,
    pub convention: ConstantConvention,
}

fn probes(parity: u8) -> impl Iterator<Item = KType> {
    (0..=2 * PROBE_RANGE).flat_map(move |s| {
        (0..=s.min(PROBE_RANGE))
            .filter(move |j| s - j <= PROBE_RANGE)
            .map(move |j| KType::new(j, s - j))
            .filter(move |v| v.parity() == parity)
    })
}

fn kpart_is_regular(sig: Signature, r: SpectralOrder, v: KType) -> bool {
    let args = gamma_arguments(sig, r, v, Continuation::Order);
    args.kpart_numerator
        .iter()
        .chain(&args.kpart_denominator)
        .all(|a| a.pole_index().is_none())
}

/// Symmetric limit `lim_{h->0} h^m Z(r0 + h, v)` with one Richardson step.
pub fn richardson_limit(sig: Signature, r0: f64, v: KType, pole_order: i32) -> Result<f64> {
    let g = |h: f64| -> Result<f64> { Ok(h.powi(pole_order) * z_gamma_direct(sig, r0 + h, v)?) };
    let symmetric = |h: f64| -> Result<f64> { Ok(0.5 * (g(h)? + g(-h)?)) };
    let coarse = symmetric(LIMIT_STEP)?;
    let fine = symmetric(0.5 * LIMIT_STEP)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// The constant relating the gamma ratio to the factorized polynomial on
/// the parity class `ε` at positive integer order `r`.
pub fn parity_constant(sig: Signature, r: u32, parity: u8) -> Result<ParityConstant> {
    let parity = parity % 2;
    let order = SpectralOrder::integer(i64::from(r));
    let regular = |v: &KType| factorized_scaled(sig, r, *v) != 0 && kpart_is_regular(sig, order, *v);

    for v in probes(parity).filter(regular) {
        if let Ok(z) = z_gamma_direct(sig, f64::from(r), v) {
            if z != 0.0 && z.is_finite() {
                return Ok(ParityConstant {
                    value: z / factorized_eigenvalue(sig, r, v),
                    probe: v,
                    convention: ConstantConvention::Direct,
                });
            }
        }
    }

    // Constant factors are singular: every probe is a pole (or zero) of Z.
    let pole_order = -constant_leading(sig, order, parity)?.order;
    let probe = probes(parity).find(regular).ok_or(Error::NoProbeAvailable { parity })?;
    let limit = richardson_limit(sig, f64::from(r), probe, pole_order)?;
    if !limit.is_finite() || limit == 0.0 {
        return Err(Error::NoProbeAvailable { parity });
    }
    Ok(ParityConstant {
        value: limit / factorized_eigenvalue(sig, r, probe),
        probe,
        convention: ConstantConvention::Limit { pole_order },
    })
}

/// `Z(r, v) Z(-r, v)` from the gamma ratio; identically one where both are finite.
pub fn inversion_check(sig: Signature, r: SpectralOrder, v: KType) -> Result<f64> {
    let forward = z_leading(sig, r, v)?;
    let backward = z_leading(sig, r.negated(), v)?;
    if forward.order != 0 || backward.order != 0 {
        let bad = if forward.order != 0 { r } else { r.negated() };
        return Err(Error::PoleAtKType {
            at: v,
            argument: first_pole_argument(sig, bad, v),
        });
    }
    Ok((forward * backward).coeff.value())
}
