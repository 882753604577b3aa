//! Verification harness: each check returns a flat [`VerificationReport`].

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closedform::{
    conformal_laplacian_quarters, constant_leading, factorized_eigenvalue, factorized_scaled, gamma_arguments,
    inversion_check, normalized_leading, parity_constant, richardson_limit, z_gamma_direct, z_leading, z_spectral,
};
use crate::error::{Error, Result};
use crate::geometry::{scalar_curvature, KType, Quadrant, Signature};
use crate::leading::SpectralValue;
use crate::spectrum::{
    parity_class, recursion_spectrum, transition_ratio, Continuation, RecursionOptions, SpectralOrder,
};
use crate::zonal::{apply_t_numeric, evaluate, QuadratureGrid, ZonalFunction};

/// Tolerances used when the caller does not override them.
pub mod tolerance {
    pub const METHOD_AGREEMENT: f64 = 1e-10;
    pub const TRANSITION_LAW: f64 = 1e-10;
    pub const FACTORIZATION: f64 = 1e-10;
    pub const LEMMA1: f64 = 1e-8;
    pub const INTERTWINING: f64 = 1e-9;
    pub const INVERSION: f64 = 1e-12;
    pub const LOOP: f64 = 1e-12;
    pub const ROUNDTRIP: f64 = 1e-12;
    pub const NORMS: f64 = 1e-11;
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub p: u32,
    pub q: u32,
    pub r: Option<f64>,
    pub jmax: u32,
    pub kmax: u32,
    pub max_residual: f64,
    pub worst_location: Option<String>,
    pub tolerance: f64,
    pub pass: bool,
    /// Entries left out because a value was singular.
    pub skipped: usize,
    pub seed: Option<u64>,
}

impl VerificationReport {
    fn new(check: &str, sig: Signature, r: Option<f64>, jmax: u32, kmax: u32, tolerance: f64) -> Self {
        Self {
            check: check.to_owned(),
            p: sig.p(),
            q: sig.q(),
            r,
            jmax,
            kmax,
            max_residual: 0.0,
            worst_location: None,
            tolerance,
            pass: true,
            skipped: 0,
            seed: None,
        }
    }

    fn record(&mut self, residual: f64, at: impl FnOnce() -> String) {
        // NaN counts as a failure.
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = residual;
            self.worst_location = Some(at());
        }
    }

    /// Fold `other` into `self`, keeping the worst residual.
    pub fn absorb(&mut self, other: VerificationReport) {
        if other.max_residual.is_nan() || other.max_residual > self.max_residual {
            self.max_residual = other.max_residual;
            self.worst_location = other.worst_location;
            self.jmax = other.jmax;
            self.kmax = other.kmax;
        }
        self.skipped += other.skipped;
        self.pass &= other.pass;
    }

    fn finish(mut self) -> Self {
        self.pass = self.max_residual <= self.tolerance;
        self
    }
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn scaled_residual(diff: f64, norm: f64) -> f64 {
    if norm > 0.0 {
        diff / norm
    } else {
        diff
    }
}

/// Sweep of `count` zonal functions with coefficients uniform in `[-1, 1]` and
/// degrees drawn from `1..=max_degree`.
pub fn random_family(sig: Signature, count: usize, max_degree: usize, seed: u64) -> Vec<ZonalFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let jmax = rng.random_range(1..=max_degree);
            let kmax = rng.random_range(1..=max_degree);
            ZonalFunction::random(sig, jmax, kmax, &mut rng)
        })
        .collect()
}

/// Number of gamma poles among the numerator minus the denominator of the
/// K-dependent factors, counted directly on the doubled lattice.
fn kpart_pole_balance(sig: Signature, r: SpectralOrder, v: KType) -> i32 {
    let j2 = sig.shifted_j(v).doubled();
    let k2 = sig.shifted_k(v).doubled();
    let is_pole = |doubled_x: i64, sign: f64| -> bool {
        match r.doubled() {
            Some(r2) => {
                let quarters = doubled_x + sign as i64 * r2;
                quarters <= 0 && quarters % 4 == 0
            }
            None => {
                let arg = (doubled_x as f64 / 2.0 + sign * r.value()) / 2.0;
                arg <= 0.5 && (arg - arg.round()).abs() <= 1e-12
            }
        }
    };
    [k2 + j2 + 2, k2 - j2 + 2]
        .into_iter()
        .map(|x| i32::from(is_pole(x, 1.0)) - i32::from(is_pole(x, -1.0)))
        .sum()
}

/// K-types where the base-normalized eigenvalue is predicted to be a pole.
pub fn predicted_singular_set(sig: Signature, r: SpectralOrder, parity: u8, jmax: u32, kmax: u32) -> BTreeSet<KType> {
    if r.is_zero() {
        return BTreeSet::new();
    }
    let base = kpart_pole_balance(sig, r, KType::base(parity));
    parity_class(parity, jmax, kmax)
        .filter(|&v| kpart_pole_balance(sig, r, v) > base)
        .collect()
}

/// Recursion against base-normalized gamma ratio on both parity classes;
/// at positive integer `r` also against the factorized polynomial.
pub fn check_method_agreement(
    sig: Signature,
    r: SpectralOrder,
    jmax: u32,
    kmax: u32,
    tol: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("method-agreement", sig, Some(r.value()), jmax, kmax, tol);
    let continuation = r.default_continuation();
    for parity in 0..2u8 {
        let table = recursion_spectrum(sig, r, jmax, kmax, parity, &RecursionOptions::default())?;
        let predicted = predicted_singular_set(sig, r, parity, jmax, kmax);
        let mut observed = BTreeSet::new();
        let factorized_base = r
            .as_positive_integer()
            .map(|n| (n, factorized_scaled(sig, n, table.base)));

        for v in parity_class(parity, jmax, kmax) {
            let rec = table.value(v).expect("class is complete");
            let closed = normalized_leading(sig, r, v, table.base, continuation)?.evaluate();
            match (rec, closed) {
                (SpectralValue::Pole, SpectralValue::Pole) => {
                    observed.insert(v);
                }
                (SpectralValue::Finite(a), SpectralValue::Finite(b)) => {
                    report.record(relative(a, b), || format!("{v} recursion vs closed form"));
                    if let Some((n, base)) = factorized_base.filter(|(_, base)| *base != 0) {
                        let poly = factorized_scaled(sig, n, v) as f64 / base as f64;
                        report.record(relative(a, poly), || format!("{v} recursion vs factorized"));
                        let dispatched = z_spectral(sig, r, v)? / z_spectral(sig, r, table.base)?;
                        report.record(relative(dispatched, poly), || format!("{v} z_spectral vs factorized"));
                    }
                }
                _ => report.record(f64::INFINITY, || {
                    format!("{v}: recursion {rec:?}, closed form {closed:?}")
                }),
            }
        }
        if observed != predicted {
            let diff: Vec<_> = observed
                .symmetric_difference(&predicted)
                .map(ToString::to_string)
                .collect();
            report.record(f64::INFINITY, || format!("singular set mismatch at {}", diff.join(" ")));
        }
        report.skipped += observed.len();
    }
    Ok(report.finish())
}

/// `Z(β)/Z(α)` against the transition matrix on every edge inside the box.
pub fn check_transition_law(
    sig: Signature,
    r: SpectralOrder,
    jmax: u32,
    kmax: u32,
    tol: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("transition-law", sig, Some(r.value()), jmax, kmax, tol);
    for j in 0..=jmax {
        for k in 0..=kmax {
            let alpha = KType::new(j, k);
            let za = z_leading(sig, r, alpha)?;
            for d in Quadrant::ALL {
                let Some(beta) = alpha.step(d).filter(|b| b.j <= jmax && b.k <= kmax) else {
                    continue;
                };
                let zb = z_leading(sig, r, beta)?;
                let ratio = transition_ratio(sig, alpha, d, r);
                // Constant factors cancel in the quotient; a singular edge must
                // show up as a zero or a zero denominator of the transition ratio.
                let quotient = zb / za;
                match (quotient.order.signum(), ratio) {
                    (0, Ok(t)) => report.record(relative(quotient.coeff.value(), t), || format!("{alpha} -> {beta}")),
                    (1, Ok(t)) if t.abs() <= 1e-12 => report.skipped += 1,
                    (-1, Err(Error::ZeroDenominator { .. })) => report.skipped += 1,
                    (_, ratio) => report.record(f64::INFINITY, || {
                        format!("{alpha} -> {beta}: quotient order {}, ratio {ratio:?}", quotient.order)
                    }),
                }
            }
        }
    }
    Ok(report.finish())
}

/// Gamma ratio over factorized polynomial at integer order: one constant per
/// parity class (raw gamma route at pole-free K-types; limit convention
/// where the constant factors are singular).
pub fn check_factorization(sig: Signature, order: u32, jmax: u32, kmax: u32, tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("factorization", sig, Some(f64::from(order)), jmax, kmax, tol);
    let r = SpectralOrder::integer(i64::from(order));
    for parity in 0..2u8 {
        let constant = parity_constant(sig, order, parity)?;
        let pole_order = -constant_leading(sig, r, parity)?.order;
        for v in parity_class(parity, jmax, kmax) {
            let args = gamma_arguments(sig, r, v, Continuation::Order);
            let regular = args
                .kpart_numerator
                .iter()
                .chain(&args.kpart_denominator)
                .all(|a| a.pole_index().is_none());
            let poly = factorized_eigenvalue(sig, order, v);
            if !regular || poly == 0.0 {
                report.skipped += 1;
                continue;
            }
            let z = if pole_order == 0 {
                z_gamma_direct(sig, f64::from(order), v)?
            } else {
                richardson_limit(sig, f64::from(order), v, pole_order)?
            };
            report.record(relative(z / poly, constant.value), || format!("{v} parity {parity}"));
            let dispatched = z_spectral(sig, r, v)? / poly;
            report.record(relative(dispatched, constant.value), || format!("{v} dispatched"));
        }
    }
    Ok(report.finish())
}

/// `factorized(r=1) = conformal Laplacian` exactly, plus the curvature identity.
pub fn check_conformal_laplacian(sig: Signature, jmax: u32, kmax: u32) -> VerificationReport {
    let mut report = VerificationReport::new("conformal-laplacian", sig, Some(1.0), jmax, kmax, 0.0);
    for j in 0..=jmax {
        for k in 0..=kmax {
            let v = KType::new(j, k);
            let lhs = factorized_scaled(sig, 1, v);
            let rhs = i128::from(conformal_laplacian_quarters(sig, v));
            report.record((lhs - rhs).unsigned_abs() as f64 / 4.0, || v.to_string());
        }
    }
    // (n-2)/(4(n-1)) Scal = ((q-1)^2 - (p-1)^2)/4, cross-multiplied.
    let n = i64::from(sig.n());
    let (p, q) = (i64::from(sig.p()), i64::from(sig.q()));
    let lhs = (n - 2) * scalar_curvature(sig);
    let rhs = (n - 1) * ((q - 1) * (q - 1) - (p - 1) * (p - 1));
    report.record((lhs - rhs).unsigned_abs() as f64, || {
        "scalar curvature identity".to_owned()
    });
    report.finish()
}

/// `Z(r) Z(-r) = 1` wherever both are finite.
pub fn check_inversion(sig: Signature, r: SpectralOrder, jmax: u32, kmax: u32, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new("inversion", sig, Some(r.value()), jmax, kmax, tol);
    for j in 0..=jmax {
        for k in 0..=kmax {
            let v = KType::new(j, k);
            match inversion_check(sig, r, v) {
                Ok(x) => report.record((x - 1.0).abs(), || v.to_string()),
                Err(_) => report.skipped += 1,
            }
        }
    }
    report.finish()
}

/// Every closed walk of length `<= max_len` inside the box has transition
/// product one. Walks through singular edges are skipped.
pub fn check_loop_consistency(
    sig: Signature,
    r: SpectralOrder,
    jmax: u32,
    kmax: u32,
    max_len: usize,
    tol: f64,
) -> VerificationReport {
    let mut report = VerificationReport::new("loop-consistency", sig, Some(r.value()), jmax, kmax, tol);
    let mut walk = Vec::with_capacity(max_len);

    #[allow(clippy::too_many_arguments)]
    fn extend(
        sig: Signature,
        r: SpectralOrder,
        bounds: (u32, u32),
        start: KType,
        at: KType,
        product: f64,
        remaining: usize,
        walk: &mut Vec<Quadrant>,
        report: &mut VerificationReport,
    ) {
        if at == start && !walk.is_empty() {
            report.record((product - 1.0).abs(), || {
                let steps: Vec<_> = walk.iter().map(|d| d.symbol()).collect();
                format!("{start} [{}]", steps.join(" "))
            });
        }
        if remaining == 0 {
            return;
        }
        for d in Quadrant::ALL {
            let Some(next) = at.step(d).filter(|w| w.j <= bounds.0 && w.k <= bounds.1) else {
                continue;
            };
            let distance = next.j.abs_diff(start.j).max(next.k.abs_diff(start.k)) as usize;
            if distance > remaining - 1 {
                continue;
            }
            match transition_ratio(sig, at, d, r) {
                Ok(t) => {
                    walk.push(d);
                    extend(sig, r, bounds, start, next, product * t, remaining - 1, walk, report);
                    walk.pop();
                }
                Err(_) => report.skipped += 1,
            }
        }
    }

    for j in 0..=jmax {
        for k in 0..=kmax {
            let start = KType::new(j, k);
            extend(sig, r, (jmax, kmax), start, start, 1.0, max_len, &mut walk, &mut report);
        }
    }
    report.finish()
}

/// The commutator route for `T` against direct differentiation.
pub fn check_lemma1(f: &ZonalFunction, grid: &QuadratureGrid, tol: f64) -> Result<VerificationReport> {
    let sig = f.sig();
    let mut report = VerificationReport::new("lemma1", sig, None, f.jmax() as u32, f.kmax() as u32, tol);
    let numeric = apply_t_numeric(f, grid)?;
    let lemma = evaluate(&f.apply_t_via_lemma(), grid);
    let norm = f.sup_norm();
    for i in 0..numeric.nx {
        for l in 0..numeric.ny {
            let diff = (numeric.get(i, l) - lemma.get(i, l)).abs();
            report.record(scaled_residual(diff, norm), || {
                format!("node (cos τ = {:.6}, cos ρ = {:.6})", grid.x_nodes[i], grid.y_nodes[l])
            });
        }
    }
    Ok(report.finish())
}

/// Eigenvalues of `A_{2r}` on every K-type of the box, renormalized on each
/// parity class to the most singular order and to unit sup-norm.
pub fn intertwinor_multipliers(sig: Signature, r: SpectralOrder, jmax: u32, kmax: u32) -> Result<ZonalFunction> {
    let mut a = ZonalFunction::zeros(sig, jmax as usize, kmax as usize);
    for parity in 0..2u8 {
        let class: Vec<KType> = parity_class(parity, jmax, kmax).collect();
        let values: Vec<f64> = if r.is_zero() {
            vec![1.0; class.len()]
        } else if let Some(n) = r.as_positive_integer() {
            let c = parity_constant(sig, n, parity)?.value;
            class.iter().map(|&v| c * factorized_eigenvalue(sig, n, v)).collect()
        } else {
            let terms = class
                .iter()
                .map(|&v| z_leading(sig, r, v))
                .collect::<Result<Vec<_>>>()?;
            let most_singular = terms.iter().map(|t| t.order).min().unwrap_or(0);
            terms
                .iter()
                .map(|t| if t.order == most_singular { t.coeff.value() } else { 0.0 })
                .collect()
        };
        let scale = values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (v, x) in class.iter().zip(values) {
            a.set(v.j as usize, v.k as usize, if scale > 0.0 { x / scale } else { x });
        }
    }
    Ok(a)
}

/// `A(T + (n/2 - r)ϖ) f` against `(T + (n/2 + r)ϖ) A f` in coefficient space.
pub fn check_intertwining(sig: Signature, r: SpectralOrder, f: &ZonalFunction, tol: f64) -> Result<VerificationReport> {
    if f.sig() != sig {
        return Err(Error::ShapeMismatch(format!(
            "function lives on {}, not {sig}",
            f.sig()
        )));
    }
    let mut report = VerificationReport::new(
        "intertwining",
        sig,
        Some(r.value()),
        f.jmax() as u32,
        f.kmax() as u32,
        tol,
    );
    // Scale A over the effective degree of f so that zero padding changes nothing.
    let support = f.support(0.0);
    let jeff = support.iter().map(|v| v.j).max().unwrap_or(0);
    let keff = support.iter().map(|v| v.k).max().unwrap_or(0);
    let multipliers = intertwinor_multipliers(sig, r, jeff + 1, keff + 1)?;
    let apply_a = |g: &ZonalFunction| g.map_diagonal(|v| multipliers.get(v.j as usize, v.k as usize));
    let half_n = f64::from(sig.n()) / 2.0;

    let lhs = apply_a(
        &f.apply_t_via_lemma()
            .add(&f.multiply_by_varpi().scale(half_n - r.value())),
    );
    let af = apply_a(f);
    let rhs = af
        .apply_t_via_lemma()
        .add(&af.multiply_by_varpi().scale(half_n + r.value()));

    let norm = f.sup_norm();
    for (v, d) in lhs.sub(&rhs).iter() {
        report.record(scaled_residual(d.abs(), norm), || v.to_string());
    }
    Ok(report.finish())
}

/// `project ∘ evaluate` on random coefficients, and quadrature norms of the
/// basis against the closed-form Gegenbauer norms.
pub fn check_quadrature(
    sig: Signature,
    degree: usize,
    seed: u64,
    tol: f64,
    norm_tol: f64,
) -> Result<[VerificationReport; 2]> {
    use crate::zonal::{gegenbauer, project};

    let d = degree as u32;
    let mut roundtrip = VerificationReport::new("quadrature-roundtrip", sig, None, d, d, tol);
    roundtrip.seed = Some(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = ZonalFunction::random(sig, degree, degree, &mut rng);
    let grid = QuadratureGrid::new(sig, degree, degree);
    let back = project(&evaluate(&f, &grid), &grid, degree, degree)?;
    for (v, x) in back.sub(&f).iter() {
        roundtrip.record(scaled_residual(x.abs(), f.sup_norm()), || v.to_string());
    }

    let mut norms = VerificationReport::new("gegenbauer-norms", sig, None, d, d, norm_tol);
    for (dim, nodes, weights) in [
        (sig.p(), &grid.x_nodes, &grid.x_weights),
        (sig.q(), &grid.y_nodes, &grid.y_weights),
    ] {
        let lambda = gegenbauer::index_for_dimension(dim);
        for j in 0..=degree {
            let quad: f64 = nodes
                .iter()
                .zip(weights)
                .map(|(&x, w)| w * gegenbauer::values(lambda, degree, x)[j].powi(2))
                .sum();
            norms.record(relative(quad, gegenbauer::norm(lambda, j)), || {
                format!("S^{dim} degree {j}")
            });
        }
    }
    Ok([roundtrip.finish(), norms.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn order(r: f64) -> SpectralOrder {
        SpectralOrder::new(r).unwrap()
    }

    #[test]
    fn identity_intertwines_trivially() {
        let f = random_family(sig(2, 3), 1, 6, 9).pop().unwrap();
        let report = check_intertwining(sig(2, 3), order(0.0), &f, 1e-15).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn constant_function_single_edge() {
        for (p, q) in [(1, 1), (2, 3), (4, 2)] {
            let f = ZonalFunction::basis(sig(p, q), 0, 0);
            let report = check_intertwining(sig(p, q), order(0.37), &f, 1e-12).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }

    #[test]
    fn random_intertwining_circle_times_three_sphere() {
        let s = sig(1, 3);
        let f = ZonalFunction::random(s, 8, 8, &mut ChaCha8Rng::seed_from_u64(4));
        let report = check_intertwining(s, order(0.37), &f, 1e-9).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn residual_ignores_truncation_margin() {
        let s = sig(3, 2);
        let f = ZonalFunction::random(s, 5, 4, &mut ChaCha8Rng::seed_from_u64(2));
        let padded = f.resized(10, 8);
        let a = check_intertwining(s, order(2.25), &f, 1.0).unwrap();
        let b = check_intertwining(s, order(2.25), &padded, 1.0).unwrap();
        assert!((a.max_residual - b.max_residual).abs() < 1e-15, "{a:?} {b:?}");
    }

    #[test]
    fn wrong_order_breaks_intertwining() {
        let s = sig(2, 3);
        let f = ZonalFunction::random(s, 5, 5, &mut ChaCha8Rng::seed_from_u64(8));
        let a = intertwinor_multipliers(s, order(0.37), 6, 6).unwrap();
        let apply_a = |g: &ZonalFunction| g.map_diagonal(|v| a.get(v.j as usize, v.k as usize));
        let half_n = 2.5;
        // Same A, relation written for r = 0.5.
        let lhs = apply_a(&f.apply_t_via_lemma().add(&f.multiply_by_varpi().scale(half_n - 0.5)));
        let af = apply_a(&f);
        let rhs = af.apply_t_via_lemma().add(&af.multiply_by_varpi().scale(half_n + 0.5));
        assert!(lhs.sub(&rhs).sup_norm() > 1e-3);
    }

    #[test]
    fn lemma1_on_first_harmonic() {
        // (p+q) ϖ φ + 2 T φ = N(ϖ φ) - ϖ N φ for φ = φ_{10}
        let s = sig(2, 2);
        let phi = ZonalFunction::basis(s, 1, 0);
        let lhs = phi
            .multiply_by_varpi()
            .scale(4.0)
            .add(&phi.apply_t_via_lemma().scale(2.0));
        let rhs = phi
            .multiply_by_varpi()
            .apply_n()
            .sub(&phi.apply_n().multiply_by_varpi());
        assert!(lhs.sub(&rhs).sup_norm() < 1e-15);
        let grid = QuadratureGrid::new(s, 2, 2);
        assert!(check_lemma1(&phi, &grid, 1e-12).unwrap().pass);
        let zero = ZonalFunction::zeros(s, 2, 2);
        let report = check_lemma1(&zero, &QuadratureGrid::new(s, 3, 3), 1e-14).unwrap();
        assert_eq!(report.max_residual, 0.0);
    }

    #[test]
    fn method_agreement_examples() {
        let report = check_method_agreement(sig(3, 2), order(2.25), 12, 12, 1e-10).unwrap();
        assert!(report.pass, "{report:?}");
        let report = check_method_agreement(sig(1, 2), order(1.5), 8, 8, 1e-10).unwrap();
        assert!(report.pass && report.skipped > 0, "{report:?}");
        let report = check_method_agreement(sig(2, 2), order(1.0), 8, 8, 1e-10).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn singular_set_for_circle_times_plane() {
        // p = 1, q = 2, r = 3/2: the even base is in the kernel, so every other even type is a pole.
        let set = predicted_singular_set(sig(1, 2), order(1.5), 0, 4, 4);
        let class: BTreeSet<_> = parity_class(0, 4, 4).filter(|v| *v != KType::new(0, 0)).collect();
        assert_eq!(set, class);
        assert!(predicted_singular_set(sig(2, 2), order(1.5), 0, 6, 6).is_empty());
    }

    #[test]
    fn conformal_laplacian_exact() {
        for (p, q) in [(1, 3), (2, 5), (4, 4)] {
            let report = check_conformal_laplacian(sig(p, q), 10, 10);
            assert!(report.pass && report.max_residual == 0.0, "{report:?}");
        }
    }

    #[test]
    fn kernel_of_integer_order_is_predicted() {
        // F(v) = 0 exactly when some factor K ± J + 1 - r + 2m vanishes.
        let s = sig(1, 3);
        for r in 1..=3u32 {
            for j in 0..10 {
                for k in 0..10 {
                    let v = KType::new(j, k);
                    let (jj, kk) = (f64::from(j), f64::from(k) + 1.0);
                    let predicted = (0..r).any(|m| {
                        let shift = 1.0 - f64::from(r) + 2.0 * f64::from(m);
                        kk + jj + shift == 0.0 || kk - jj + shift == 0.0
                    });
                    assert_eq!(factorized_scaled(s, r, v) == 0, predicted, "{v} r={r}");
                }
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = random_family(sig(2, 2), 3, 8, 42);
        let b = random_family(sig(2, 2), 3, 8, 42);
        assert_eq!(a, b);
    }
}
