//! Spectrum generating recursion on the K-type lattice.
//!
//! Compressing the intertwining relation from `α` to a neighbor `β` leaves
//! the numerical law `(½N|^β_α + r) μ_α = (½N|^β_α − r) μ_β`. Propagating it
//! from the normalization base fixes every eigenvalue of the parity class;
//! every further incoming edge is a consistency check.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{half_gap, neighbors, HalfInt, KType, Quadrant, Signature};
use crate::leading::{LeadingTerm, SpectralValue};

/// Absolute tolerance for zero-denominator detection when `r` is not a half-integer.
pub const ZERO_DENOMINATOR_TOLERANCE: f64 = 1e-12;

/// Default relative tolerance for path consistency.
pub const PATH_TOLERANCE: f64 = 1e-10;

/// Half the operator order: `A_{2r}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "f64", try_from = "f64")]
pub struct SpectralOrder {
    value: f64,
    doubled: Option<i64>,
}

impl SpectralOrder {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidOrder(format!("r must be finite (got {r})")));
        }
        let twice = 2.0 * r;
        let doubled = (twice.fract() == 0.0 && twice.abs() < 1e15).then_some(twice as i64);
        Ok(Self { value: r, doubled })
    }

    pub fn integer(r: i64) -> Self {
        Self {
            value: r as f64,
            doubled: Some(2 * r),
        }
    }

    pub const fn value(&self) -> f64 {
        self.value
    }

    /// `2r` when it is an exact integer.
    pub const fn doubled(&self) -> Option<i64> {
        self.doubled
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0.0
    }

    /// True exactly for `r ∈ {1, 2, 3, ...}`.
    pub fn is_integer(&self) -> bool {
        matches!(self.doubled, Some(d) if d > 0 && d % 2 == 0)
    }

    pub fn as_positive_integer(&self) -> Option<u32> {
        self.is_integer()
            .then(|| self.doubled.and_then(|d| u32::try_from(d / 2).ok()))
            .flatten()
    }

    pub fn negated(&self) -> Self {
        Self {
            value: -self.value,
            doubled: self.doubled.map(|d| -d),
        }
    }

    /// Continuation used through singular edges unless overridden.
    pub fn default_continuation(&self) -> Continuation {
        if self.is_integer() {
            Continuation::Lattice
        } else {
            Continuation::Order
        }
    }

    /// Whether the half-integer `a` equals `r` (exactly when possible).
    pub fn coincides(&self, a: HalfInt) -> bool {
        match self.doubled {
            Some(d) => a.doubled() == d,
            None => (a.value() - self.value).abs() <= ZERO_DENOMINATOR_TOLERANCE,
        }
    }
}

impl From<SpectralOrder> for f64 {
    fn from(r: SpectralOrder) -> f64 {
        r.value
    }
}

impl TryFrom<f64> for SpectralOrder {
    type Error = Error;
    fn try_from(r: f64) -> Result<Self> {
        Self::new(r)
    }
}

impl fmt::Display for SpectralOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// How a singular point is approached when resolving `0/0` and `c/0`.
///
/// `Order` perturbs `r`; `Lattice` shifts `K -> K + t` at fixed `r`, which is
/// the continuation under which the gamma ratio becomes the polynomial of
/// the differential operator at integer `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Continuation {
    Order,
    Lattice,
}

/// `μ_β / μ_α` along the arrow `direction` out of `alpha`.
pub fn transition_ratio(sig: Signature, alpha: KType, direction: Quadrant, r: SpectralOrder) -> Result<f64> {
    let beta = alpha
        .step(direction)
        .ok_or(Error::NoSuchNeighbor { from: alpha, direction })?;
    if r.is_zero() {
        return Ok(1.0);
    }
    let a = half_gap(sig, alpha, direction);
    if r.coincides(a) {
        return Err(Error::ZeroDenominator { from: alpha, to: beta });
    }
    Ok((a.value() + r.value()) / (a.value() - r.value()))
}

/// Leading term of the transition ratio under a continuation.
pub fn transition_leading(
    sig: Signature,
    alpha: KType,
    direction: Quadrant,
    r: SpectralOrder,
    continuation: Continuation,
) -> Result<LeadingTerm> {
    if alpha.step(direction).is_none() {
        return Err(Error::NoSuchNeighbor { from: alpha, direction });
    }
    if r.is_zero() {
        return Ok(LeadingTerm::ONE);
    }
    let a = half_gap(sig, alpha, direction);
    let (num_slope, den_slope) = match continuation {
        Continuation::Order => (1.0, -1.0),
        Continuation::Lattice => {
            let sk = f64::from(direction.signs().1);
            (sk, sk)
        }
    };
    let numerator = LeadingTerm::affine(a.value() + r.value(), num_slope, r.negated().coincides(a));
    let denominator = LeadingTerm::affine(a.value() - r.value(), den_slope, r.coincides(a));
    Ok(numerator / denominator)
}

/// Product of transition ratios around a closed walk.
pub fn loop_consistency(sig: Signature, r: SpectralOrder, walk: &[Quadrant], start: KType) -> Result<f64> {
    let mut at = start;
    let mut product = 1.0;
    for &d in walk {
        product *= transition_ratio(sig, at, d, r)?;
        at = at.step(d).expect("checked by transition_ratio");
    }
    if at != start {
        return Err(Error::ShapeMismatch(format!("walk from {start} ends at {at}")));
    }
    Ok(product)
}

/// Which route produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Recursion,
    ClosedForm,
    Factorized,
}

/// What the recursion does on an edge with `½N|^β_α = r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularEdges {
    /// Abort with [`Error::ZeroDenominator`].
    Fail,
    /// Carry leading terms through the edge.
    Continue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionOptions {
    pub tolerance: f64,
    pub singular_edges: SingularEdges,
    pub traversal: Traversal,
    /// `None` picks [`SpectralOrder::default_continuation`].
    pub continuation: Option<Continuation>,
}

impl Default for RecursionOptions {
    fn default() -> Self {
        Self {
            tolerance: PATH_TOLERANCE,
            singular_edges: SingularEdges::Continue,
            traversal: Traversal::BreadthFirst,
            continuation: None,
        }
    }
}

/// Eigenvalues of the intertwinor on one parity class, as leading terms
/// relative to the base type.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub sig: Signature,
    pub r: SpectralOrder,
    pub parity: u8,
    pub jmax: u32,
    pub kmax: u32,
    pub base: KType,
    pub method: Method,
    pub entries: BTreeMap<KType, LeadingTerm>,
}

impl SpectrumTable {
    pub fn leading(&self, v: KType) -> Option<LeadingTerm> {
        self.entries.get(&v).copied()
    }

    /// Value relative to the base (zero, finite, or pole).
    pub fn value(&self, v: KType) -> Option<SpectralValue> {
        let base = self.entries.get(&self.base)?;
        self.entries.get(&v).map(|x| (*x / *base).evaluate())
    }

    /// The most singular order present in the table.
    pub fn min_order(&self) -> i32 {
        self.entries.values().map(|x| x.order).min().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// K-types of the given parity inside `j <= jmax, k <= kmax`, ordered by `(j, k)`.
pub fn parity_class(parity: u8, jmax: u32, kmax: u32) -> impl Iterator<Item = KType> {
    (0..=jmax)
        .flat_map(move |j| (0..=kmax).map(move |k| KType::new(j, k)))
        .filter(move |v| v.parity() == parity)
}

fn in_bounds(v: KType, jmax: u32, kmax: u32) -> bool {
    v.j <= jmax && v.k <= kmax
}

/// Propagate eigenvalues from the parity base over the bounded lattice.
pub fn recursion_spectrum(
    sig: Signature,
    r: SpectralOrder,
    jmax: u32,
    kmax: u32,
    parity: u8,
    options: &RecursionOptions,
) -> Result<SpectrumTable> {
    let parity = parity % 2;
    let base = KType::base(parity);
    if !in_bounds(base, jmax, kmax) {
        return Err(Error::BaseOutOfRange { base });
    }
    let continuation = options.continuation.unwrap_or_else(|| r.default_continuation());

    let mut entries = BTreeMap::new();
    entries.insert(base, LeadingTerm::ONE);
    let mut pending = VecDeque::from([base]);

    while let Some(alpha) = match options.traversal {
        Traversal::BreadthFirst => pending.pop_front(),
        Traversal::DepthFirst => pending.pop_back(),
    } {
        let mu_alpha = entries[&alpha];
        for (beta, direction) in neighbors(alpha) {
            if !in_bounds(beta, jmax, kmax) {
                continue;
            }
            if options.singular_edges == SingularEdges::Fail
                && !r.is_zero()
                && r.coincides(half_gap(sig, alpha, direction))
            {
                return Err(Error::ZeroDenominator { from: alpha, to: beta });
            }
            let predicted = mu_alpha * transition_leading(sig, alpha, direction, r, continuation)?;
            match entries.get(&beta) {
                None => {
                    entries.insert(beta, predicted);
                    pending.push_back(beta);
                }
                Some(&stored) => {
                    let gap = stored.relative_gap(predicted).unwrap_or(f64::INFINITY);
                    if gap > options.tolerance {
                        return Err(Error::PathInconsistency {
                            at: beta,
                            discrepancy: gap,
                            tolerance: options.tolerance,
                        });
                    }
                }
            }
        }
    }

    if let Some(missing) = parity_class(parity, jmax, kmax).find(|v| !entries.contains_key(v)) {
        return Err(Error::Disconnected { at: missing });
    }

    Ok(SpectrumTable {
        sig,
        r,
        parity,
        jmax,
        kmax,
        base,
        method: Method::Recursion,
        entries,
    })
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
    fn spectral_order_flags() {
        assert!(order(2.0).is_integer());
        assert!(!order(0.0).is_integer());
        assert!(!order(-1.0).is_integer());
        assert!(!order(1.5).is_integer());
        assert_eq!(order(1.5).doubled(), Some(3));
        assert_eq!(order(0.37).doubled(), None);
        assert_eq!(order(3.0).as_positive_integer(), Some(3));
        assert!(SpectralOrder::new(f64::NAN).is_err());
    }

    #[test]
    fn ratio_examples() {
        let r = order(0.3);
        let got = transition_ratio(sig(1, 1), KType::new(0, 0), Quadrant::PlusPlus, r).unwrap();
        assert!((got - 1.3 / 0.7).abs() < 1e-15);

        for d in Quadrant::ALL {
            assert_eq!(
                transition_ratio(sig(2, 3), KType::new(3, 3), d, order(0.0)).unwrap(),
                1.0
            );
        }

        let got = transition_ratio(sig(1, 3), KType::new(1, 1), Quadrant::MinusPlus, order(0.37)).unwrap();
        assert!((got - 2.37 / 1.63).abs() < 1e-15);
    }

    #[test]
    fn zero_denominator_is_reported_with_edge() {
        // p = q = 1 at (0,0): J + K + 1 = 1.
        let err = transition_ratio(sig(1, 1), KType::new(0, 0), Quadrant::PlusPlus, order(1.0)).unwrap_err();
        assert_eq!(
            err,
            Error::ZeroDenominator {
                from: KType::new(0, 0),
                to: KType::new(1, 1)
            }
        );
        let err = transition_ratio(sig(1, 1), KType::new(0, 0), Quadrant::MinusPlus, order(0.5)).unwrap_err();
        assert!(matches!(err, Error::NoSuchNeighbor { .. }));
    }

    #[test]
    fn recursion_single_edge() {
        let t = recursion_spectrum(sig(1, 1), order(0.5), 3, 3, 0, &RecursionOptions::default()).unwrap();
        assert_eq!(t.value(KType::new(0, 0)), Some(SpectralValue::Finite(1.0)));
        let mu = t.value(KType::new(1, 1)).unwrap().finite().unwrap();
        assert!((mu - 3.0).abs() < 1e-14);
    }

    #[test]
    fn recursion_paths_agree_with_brute_force_products() {
        let s = sig(1, 3);
        let r = order(0.37);
        let t = recursion_spectrum(s, r, 4, 4, 0, &RecursionOptions::default()).unwrap();
        let via = |path: &[Quadrant]| {
            let mut at = KType::new(0, 0);
            let mut mu = 1.0;
            for &d in path {
                let a = half_gap(s, at, d).value();
                mu *= (a + 0.37) / (a - 0.37);
                at = at.step(d).unwrap();
            }
            (at, mu)
        };
        let (at1, mu1) = via(&[Quadrant::PlusPlus, Quadrant::PlusPlus]);
        let (at2, mu2) = via(&[
            Quadrant::PlusPlus,
            Quadrant::MinusPlus,
            Quadrant::PlusMinus,
            Quadrant::PlusPlus,
            Quadrant::MinusMinus,
            Quadrant::PlusPlus,
        ]);
        assert_eq!(at1, KType::new(2, 2));
        assert_eq!(at2, KType::new(2, 2));
        assert!((mu1 - mu2).abs() <= 1e-12 * mu1.abs());
        let table = t.value(KType::new(2, 2)).unwrap().finite().unwrap();
        assert!((table - mu1).abs() <= 1e-12 * mu1.abs());
    }

    #[test]
    fn odd_base_is_one_zero() {
        let t = recursion_spectrum(sig(2, 3), order(0.37), 3, 3, 1, &RecursionOptions::default()).unwrap();
        assert_eq!(t.base, KType::new(1, 0));
        assert!(t.entries.keys().all(|v| v.parity() == 1));
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn strict_mode_reports_singular_edge() {
        let opts = RecursionOptions {
            singular_edges: SingularEdges::Fail,
            ..Default::default()
        };
        let err = recursion_spectrum(sig(1, 2), order(1.5), 4, 4, 0, &opts).unwrap_err();
        assert!(matches!(err, Error::ZeroDenominator { from, .. } if from == KType::new(0, 0)));
        let t = recursion_spectrum(sig(1, 2), order(1.5), 4, 4, 0, &RecursionOptions::default()).unwrap();
        assert!(t.value(KType::new(1, 1)).unwrap().is_pole());
    }

    #[test]
    fn disconnected_box_is_an_error() {
        let err = recursion_spectrum(sig(2, 2), order(0.37), 0, 2, 0, &RecursionOptions::default()).unwrap_err();
        assert_eq!(err, Error::Disconnected { at: KType::new(0, 2) });
        let err = recursion_spectrum(sig(2, 2), order(0.37), 0, 2, 1, &RecursionOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BaseOutOfRange { .. }));
    }

    #[test]
    fn loops() {
        let s = sig(2, 2);
        let r = order(0.37);
        assert_eq!(loop_consistency(s, r, &[], KType::new(0, 0)).unwrap(), 1.0);
        let walk = [
            Quadrant::PlusPlus,
            Quadrant::MinusPlus,
            Quadrant::MinusMinus,
            Quadrant::PlusMinus,
        ];
        let walk_start = KType::new(1, 1);
        let p = loop_consistency(s, r, &walk, walk_start).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        let via_02 = [
            Quadrant::PlusPlus,
            Quadrant::MinusPlus,
            Quadrant::PlusMinus,
            Quadrant::MinusMinus,
        ];
        let p = loop_consistency(s, r, &via_02, KType::new(0, 0)).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        let there_and_back = [Quadrant::PlusPlus, Quadrant::MinusMinus];
        let p = loop_consistency(s, r, &there_and_back, KType::new(0, 0)).unwrap();
        assert!((p - 1.0).abs() < 1e-15);
        assert!(loop_consistency(s, r, &[Quadrant::PlusPlus], KType::new(0, 0)).is_err());
    }
}
