//! Signature of `S^p x S^q`, the K-type lattice `V(j,k) = E(j) ⊗ F(k)` and
//! the Laplacian eigenvalue bookkeeping the spectrum generating recursion
//! runs on.
//!
//! Shifted parameters `J = j + (p-1)/2` and `K = k + (q-1)/2` are
//! half-integers and are carried as [`HalfInt`] (the doubled value) so that
//! pole and zero-denominator detection stays exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_doubled(doubled: i64) -> Self {
        Self(doubled)
    }

    pub const fn from_int(value: i64) -> Self {
        Self(2 * value)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Sphere dimensions `(p, q)` of `S^p x S^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    p: u32,
    q: u32,
}

impl Signature {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidSignature(format!("p must be >= 1 (got {p})")));
        }
        if q < 1 {
            return Err(Error::InvalidSignature(format!("q must be >= 1 (got {q})")));
        }
        Ok(Self { p, q })
    }

    pub const fn p(&self) -> u32 {
        self.p
    }

    pub const fn q(&self) -> u32 {
        self.q
    }

    /// Total dimension `n = p + q`.
    pub const fn n(&self) -> u32 {
        self.p + self.q
    }

    pub const fn dimension(&self, sphere: Sphere) -> u32 {
        match sphere {
            Sphere::First => self.p,
            Sphere::Second => self.q,
        }
    }

    /// `J = j + (p-1)/2`.
    pub fn shifted_j(&self, v: KType) -> HalfInt {
        HalfInt::from_doubled(2 * i64::from(v.j) + i64::from(self.p) - 1)
    }

    /// `K = k + (q-1)/2`.
    pub fn shifted_k(&self, v: KType) -> HalfInt {
        HalfInt::from_doubled(2 * i64::from(v.k) + i64::from(self.q) - 1)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S^{} x S^{}", self.p, self.q)
    }
}

/// Selects one factor of the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sphere {
    First,
    Second,
}

/// Lattice point `V(j,k)`: harmonic order `j` on `S^p` and `k` on `S^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KType {
    pub j: u32,
    pub k: u32,
}

impl KType {
    pub const fn new(j: u32, k: u32) -> Self {
        Self { j, k }
    }

    /// `(j + k) mod 2`.
    pub const fn parity(&self) -> u8 {
        ((self.j + self.k) % 2) as u8
    }

    /// Normalization base of the parity class: `V(0,0)` for even, `V(1,0)` for odd.
    pub const fn base(parity: u8) -> Self {
        if parity == 0 {
            Self::new(0, 0)
        } else {
            Self::new(1, 0)
        }
    }

    pub fn step(&self, direction: Quadrant) -> Option<KType> {
        let (dj, dk) = direction.signs();
        let j = self.j.checked_add_signed(dj)?;
        let k = self.k.checked_add_signed(dk)?;
        Some(KType::new(j, k))
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})", self.j, self.k)
    }
}

/// The four arrows out of a K-type under multiplication by the conformal
/// factor; the first sign moves `j`, the second moves `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [
        Quadrant::MinusMinus,
        Quadrant::MinusPlus,
        Quadrant::PlusMinus,
        Quadrant::PlusPlus,
    ];

    pub const fn signs(self) -> (i32, i32) {
        match self {
            Quadrant::PlusPlus => (1, 1),
            Quadrant::PlusMinus => (1, -1),
            Quadrant::MinusPlus => (-1, 1),
            Quadrant::MinusMinus => (-1, -1),
        }
    }

    pub const fn reverse(self) -> Quadrant {
        match self {
            Quadrant::PlusPlus => Quadrant::MinusMinus,
            Quadrant::PlusMinus => Quadrant::MinusPlus,
            Quadrant::MinusPlus => Quadrant::PlusMinus,
            Quadrant::MinusMinus => Quadrant::PlusPlus,
        }
    }

    pub const fn symbol(self) -> &'static str {
        match self {
            Quadrant::PlusPlus => "++",
            Quadrant::PlusMinus => "+-",
            Quadrant::MinusPlus => "-+",
            Quadrant::MinusMinus => "--",
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<Quadrant> {
        Quadrant::ALL.into_iter().find(|d| d.symbol() == symbol)
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Eigenvalue `m(d-1+m)` of the Laplacian of `S^d` on harmonics of order `m`.
pub fn laplacian_eigenvalue(sig: Signature, sphere: Sphere, order: u32) -> i64 {
    let d = i64::from(sig.dimension(sphere));
    let m = i64::from(order);
    m * (d - 1 + m)
}

/// Eigenvalue of the Riemannian Bochner Laplacian `N` on `V(j,k)`.
pub fn bochner_eigenvalue(sig: Signature, v: KType) -> i64 {
    laplacian_eigenvalue(sig, Sphere::First, v.j) + laplacian_eigenvalue(sig, Sphere::Second, v.k)
}

/// `N|^β_α = N_β - N_α`.
pub fn n_difference(sig: Signature, alpha: KType, beta: KType) -> i64 {
    bochner_eigenvalue(sig, beta) - bochner_eigenvalue(sig, alpha)
}

/// Half the Laplacian gap along an arrow, `s_j J + s_k K + 1`, read off the
/// direction tag instead of subtracting eigenvalues.
pub fn half_gap(sig: Signature, alpha: KType, direction: Quadrant) -> HalfInt {
    let (sj, sk) = direction.signs();
    let j2 = sig.shifted_j(alpha).doubled();
    let k2 = sig.shifted_k(alpha).doubled();
    HalfInt::from_doubled(i64::from(sj) * j2 + i64::from(sk) * k2 + 2)
}

/// The admissible arrows out of `v`, pruned at the lattice boundary.
pub fn neighbors(v: KType) -> Vec<(KType, Quadrant)> {
    Quadrant::ALL
        .into_iter()
        .filter_map(|d| v.step(d).map(|w| (w, d)))
        .collect()
}

/// Scalar curvature of `S^p x S^q` with metric `-g_{S^p} + g_{S^q}`.
pub fn scalar_curvature(sig: Signature) -> i64 {
    let p = i64::from(sig.p);
    let q = i64::from(sig.q);
    q * (q - 1) - p * (p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn laplacian_lists() {
        assert_eq!(laplacian_eigenvalue(sig(3, 1), Sphere::First, 0), 0);
        assert_eq!(laplacian_eigenvalue(sig(3, 1), Sphere::First, 1), 3);
        assert_eq!(laplacian_eigenvalue(sig(1, 3), Sphere::Second, 2), 8);
    }

    #[test]
    fn bochner_sums() {
        assert_eq!(bochner_eigenvalue(sig(1, 3), KType::new(0, 0)), 0);
        assert_eq!(bochner_eigenvalue(sig(1, 3), KType::new(2, 1)), 7);
        assert_eq!(bochner_eigenvalue(sig(2, 2), KType::new(1, 1)), 4);
    }

    #[test]
    fn n_difference_examples() {
        let a = KType::new(3, 2);
        assert_eq!(n_difference(sig(2, 3), a, a), 0);
        assert_eq!(n_difference(sig(1, 1), KType::new(0, 0), KType::new(1, 1)), 2);
        let s = sig(1, 3);
        let alpha = KType::new(1, 1);
        assert_eq!(n_difference(s, alpha, KType::new(0, 2)), 4);
        assert_eq!(2 * half_gap(s, alpha, Quadrant::MinusPlus).value() as i64, 4);
    }

    #[test]
    fn neighbor_examples() {
        assert_eq!(
            neighbors(KType::new(0, 0)),
            vec![(KType::new(1, 1), Quadrant::PlusPlus)]
        );
        let mut n: Vec<_> = neighbors(KType::new(1, 0)).into_iter().map(|x| x.0).collect();
        n.sort();
        assert_eq!(n, vec![KType::new(0, 1), KType::new(2, 1)]);
        let mut n: Vec<_> = neighbors(KType::new(2, 3)).into_iter().map(|x| x.0).collect();
        n.sort();
        assert_eq!(
            n,
            vec![KType::new(1, 2), KType::new(1, 4), KType::new(3, 2), KType::new(3, 4)]
        );
    }

    #[test]
    fn curvature_examples() {
        assert_eq!(scalar_curvature(sig(1, 1)), 0);
        assert_eq!(scalar_curvature(sig(1, 3)), 6);
        assert_eq!(scalar_curvature(sig(3, 3)), 0);
        // (n-2)/(4(n-1)) * Scal at n = 4 equals ((q-1)^2 - (p-1)^2)/4 = 1.
        assert_eq!(2 * scalar_curvature(sig(1, 3)), 4 * 3);
    }

    #[test]
    fn rejects_zero_dimension() {
        let err = Signature::new(0, 2).unwrap_err();
        assert!(err.to_string().contains("p must be >= 1"));
        assert!(Signature::new(2, 0).is_err());
    }

    #[test]
    fn shifted_parameters() {
        let s = sig(2, 3);
        let v = KType::new(1, 0);
        assert_eq!(s.shifted_j(v).value(), 1.5);
        assert_eq!(s.shifted_k(v).value(), 1.0);
        assert_eq!(s.shifted_j(v).to_string(), "3/2");
    }
}
