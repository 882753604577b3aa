//! Zonal functions on `S^p x S^q`: functions of the azimuthal angles
//! `(τ, ρ)` only, expanded as
//! `f = Σ c[j][k] G_j^{λp}(cos τ) G_k^{λq}(cos ρ)`.
//!
//! Every operator in the intertwining relation (the Bochner Laplacian `N`,
//! multiplication by `ϖ = cos τ cos ρ` and the conformal field
//! `T = cos ρ sin τ ∂_τ + cos τ sin ρ ∂_ρ`) preserves this sector, and the
//! basis element `(j,k)` is the zonal line of `V(j,k)`.

pub mod gegenbauer;
pub mod quadrature;

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{bochner_eigenvalue, KType, Signature};

use gegenbauer::index_for_dimension;
pub use quadrature::QuadratureGrid;

/// Dense coefficient array over the tensor-product zonal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalFunction {
    sig: Signature,
    jmax: usize,
    kmax: usize,
    coeffs: Vec<f64>,
}

impl ZonalFunction {
    pub fn zeros(sig: Signature, jmax: usize, kmax: usize) -> Self {
        Self {
            sig,
            jmax,
            kmax,
            coeffs: vec![0.0; (jmax + 1) * (kmax + 1)],
        }
    }

    /// `coeffs` in row-major `(j, k)` order.
    pub fn from_coeffs(sig: Signature, jmax: usize, kmax: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != (jmax + 1) * (kmax + 1) {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for a {}x{} array",
                coeffs.len(),
                jmax + 1,
                kmax + 1
            )));
        }
        Ok(Self {
            sig,
            jmax,
            kmax,
            coeffs,
        })
    }

    /// The zonal harmonic of `V(j,k)`.
    pub fn basis(sig: Signature, j: usize, k: usize) -> Self {
        let mut f = Self::zeros(sig, j, k);
        f.set(j, k, 1.0);
        f
    }

    /// Coefficients uniform in `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(sig: Signature, jmax: usize, kmax: usize, rng: &mut R) -> Self {
        let coeffs = (0..(jmax + 1) * (kmax + 1))
            .map(|_| rng.random_range(-1.0..=1.0))
            .collect();
        Self {
            sig,
            jmax,
            kmax,
            coeffs,
        }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Zero outside the stored range.
    pub fn get(&self, j: usize, k: usize) -> f64 {
        if j <= self.jmax && k <= self.kmax {
            self.coeffs[j * (self.kmax + 1) + k]
        } else {
            0.0
        }
    }

    pub fn set(&mut self, j: usize, k: usize, value: f64) {
        self.coeffs[j * (self.kmax + 1) + k] = value;
    }

    /// `(K-type, coefficient)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (KType, f64)> + '_ {
        let width = self.kmax + 1;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (KType::new((i / width) as u32, (i % width) as u32), c))
    }

    /// K-types carrying a coefficient above `threshold` in magnitude.
    pub fn support(&self, threshold: f64) -> Vec<KType> {
        self.iter()
            .filter(|(_, c)| c.abs() > threshold)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Copy into a larger (or equal) coefficient box.
    pub fn resized(&self, jmax: usize, kmax: usize) -> Self {
        let mut out = Self::zeros(self.sig, jmax, kmax);
        for j in 0..=self.jmax.min(jmax) {
            for k in 0..=self.kmax.min(kmax) {
                out.set(j, k, self.get(j, k));
            }
        }
        out
    }

    fn zip_with(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let jmax = self.jmax.max(other.jmax);
        let kmax = self.kmax.max(other.kmax);
        let mut out = Self::zeros(self.sig, jmax, kmax);
        for j in 0..=jmax {
            for k in 0..=kmax {
                out.set(j, k, op(self.get(j, k), other.get(j, k)));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_diagonal(|_| s)
    }

    /// `c[j][k] -> m(j,k) c[j][k]`.
    pub fn map_diagonal(&self, mut multiplier: impl FnMut(KType) -> f64) -> Self {
        let mut out = self.clone();
        let width = self.kmax + 1;
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c *= multiplier(KType::new((i / width) as u32, (i % width) as u32));
        }
        out
    }

    /// The part of `f` on K-types with `j + k ≡ parity (mod 2)`.
    pub fn parity_component(&self, parity: u8) -> Self {
        self.map_diagonal(|v| if v.parity() == parity % 2 { 1.0 } else { 0.0 })
    }

    /// `ϖ f` with `ϖ = cos τ cos ρ`.
    pub fn multiply_by_varpi(&self) -> Self {
        let lp = index_for_dimension(self.sig.p());
        let lq = index_for_dimension(self.sig.q());
        let mut out = Self::zeros(self.sig, self.jmax + 1, self.kmax + 1);
        for j in 0..=self.jmax {
            for k in 0..=self.kmax {
                let c = self.get(j, k);
                if c == 0.0 {
                    continue;
                }
                let (ja, jb) = gegenbauer::recurrence(lp, j);
                let (ka, kb) = gegenbauer::recurrence(lq, k);
                let mut bump = |jj: usize, kk: usize, w: f64| {
                    let i = jj * (self.kmax + 2) + kk;
                    out.coeffs[i] += w * c;
                };
                bump(j + 1, k + 1, ja * ka);
                if k > 0 {
                    bump(j + 1, k - 1, ja * kb);
                }
                if j > 0 {
                    bump(j - 1, k + 1, jb * ka);
                    if k > 0 {
                        bump(j - 1, k - 1, jb * kb);
                    }
                }
            }
        }
        out
    }

    /// Bochner Laplacian, diagonal with eigenvalue `j(p-1+j) + k(q-1+k)`.
    pub fn apply_n(&self) -> Self {
        let sig = self.sig;
        self.map_diagonal(|v| bochner_eigenvalue(sig, v) as f64)
    }

    /// `T f = ½[N, ϖ] f - (n/2) ϖ f`.
    pub fn apply_t_via_lemma(&self) -> Self {
        let varpi_f = self.multiply_by_varpi();
        let commutator = varpi_f.apply_n().sub(&self.apply_n().multiply_by_varpi());
        commutator.scale(0.5).sub(&varpi_f.scale(f64::from(self.sig.n()) / 2.0))
    }
}

/// Values on a [`QuadratureGrid`], row-major in `(x node, y node)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples {
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl GridSamples {
    pub fn get(&self, i: usize, l: usize) -> f64 {
        self.values[i * self.ny + l]
    }

    pub fn max_abs_diff(&self, other: &GridSamples) -> f64 {
        assert_eq!((self.nx, self.ny), (other.nx, other.ny), "sample grids differ");
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

struct BasisTables {
    gx: Vec<Vec<f64>>,
    gy: Vec<Vec<f64>>,
}

fn basis_tables(grid: &QuadratureGrid, jmax: usize, kmax: usize) -> BasisTables {
    let lp = index_for_dimension(grid.sig.p());
    let lq = index_for_dimension(grid.sig.q());
    BasisTables {
        gx: grid.x_nodes.iter().map(|&x| gegenbauer::values(lp, jmax, x)).collect(),
        gy: grid.y_nodes.iter().map(|&y| gegenbauer::values(lq, kmax, y)).collect(),
    }
}

fn synthesize(coeffs: &ZonalFunction, gx: &[Vec<f64>], gy: &[Vec<f64>]) -> GridSamples {
    let (nx, ny) = (gx.len(), gy.len());
    let mut values = Vec::with_capacity(nx * ny);
    for row in gx {
        for col in gy {
            let mut acc = 0.0;
            for (j, gj) in row.iter().enumerate().take(coeffs.jmax + 1) {
                let inner: f64 = (0..=coeffs.kmax).map(|k| coeffs.get(j, k) * col[k]).sum();
                acc += gj * inner;
            }
            values.push(acc);
        }
    }
    GridSamples { nx, ny, values }
}

/// Point values of `f` on the grid.
pub fn evaluate(f: &ZonalFunction, grid: &QuadratureGrid) -> GridSamples {
    let tables = basis_tables(grid, f.jmax, f.kmax);
    synthesize(f, &tables.gx, &tables.gy)
}

/// Coefficients up to `(jmax, kmax)` by Gauss quadrature against the basis.
pub fn project(samples: &GridSamples, grid: &QuadratureGrid, jmax: usize, kmax: usize) -> Result<ZonalFunction> {
    if samples.nx != grid.nx() || samples.ny != grid.ny() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} samples on a {}x{} grid",
            samples.nx,
            samples.ny,
            grid.nx(),
            grid.ny()
        )));
    }
    for (needed, available) in [(jmax + 1, grid.nx()), (kmax + 1, grid.ny())] {
        if available < needed {
            return Err(Error::GridTooCoarse { needed, available });
        }
    }
    let lp = index_for_dimension(grid.sig.p());
    let lq = index_for_dimension(grid.sig.q());
    let tables = basis_tables(grid, jmax, kmax);
    let mut out = ZonalFunction::zeros(grid.sig, jmax, kmax);
    for j in 0..=jmax {
        for k in 0..=kmax {
            let mut acc = 0.0;
            for (i, wx) in grid.x_weights.iter().enumerate() {
                let inner: f64 = grid
                    .y_weights
                    .iter()
                    .enumerate()
                    .map(|(l, wy)| wy * samples.get(i, l) * tables.gy[l][k])
                    .sum();
                acc += wx * tables.gx[i][j] * inner;
            }
            out.set(j, k, acc / (gegenbauer::norm(lp, j) * gegenbauer::norm(lq, k)));
        }
    }
    Ok(out)
}

/// `T f` evaluated pointwise from the derivative identities:
/// `T f = -y (1-x^2) ∂_x f - x (1-y^2) ∂_y f` with `x = cos τ`, `y = cos ρ`.
pub fn apply_t_numeric(f: &ZonalFunction, grid: &QuadratureGrid) -> Result<GridSamples> {
    for (needed, available) in [(f.jmax + 2, grid.nx()), (f.kmax + 2, grid.ny())] {
        if available < needed {
            return Err(Error::GridTooCoarse { needed, available });
        }
    }
    let lp = index_for_dimension(grid.sig.p());
    let lq = index_for_dimension(grid.sig.q());
    let tables = basis_tables(grid, f.jmax, f.kmax);
    let dx: Vec<Vec<f64>> = grid
        .x_nodes
        .iter()
        .map(|&x| gegenbauer::derivatives(lp, f.jmax, x))
        .collect();
    let dy: Vec<Vec<f64>> = grid
        .y_nodes
        .iter()
        .map(|&y| gegenbauer::derivatives(lq, f.kmax, y))
        .collect();
    let df_dx = synthesize(f, &dx, &tables.gy);
    let df_dy = synthesize(f, &tables.gx, &dy);

    let mut values = Vec::with_capacity(grid.nx() * grid.ny());
    for (i, &x) in grid.x_nodes.iter().enumerate() {
        for (l, &y) in grid.y_nodes.iter().enumerate() {
            values.push(-y * (1.0 - x * x) * df_dx.get(i, l) - x * (1.0 - y * y) * df_dy.get(i, l));
        }
    }
    Ok(GridSamples {
        nx: grid.nx(),
        ny: grid.ny(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn varpi_on_constant_lands_in_one_one() {
        for (p, q) in [(1, 1), (2, 3), (4, 1)] {
            let out = ZonalFunction::basis(sig(p, q), 0, 0).multiply_by_varpi();
            assert_eq!(out.support(1e-14), vec![KType::new(1, 1)]);
        }
    }

    #[test]
    fn varpi_squared_on_torus() {
        let out = ZonalFunction::basis(sig(1, 1), 1, 1).multiply_by_varpi();
        for (v, c) in out.iter() {
            let expected = if v.j % 2 == 0 && v.k % 2 == 0 { 0.25 } else { 0.0 };
            assert_eq!(c, expected, "{v}");
        }
    }

    #[test]
    fn varpi_preserves_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = ZonalFunction::random(sig(2, 3), 5, 5, &mut rng).parity_component(1);
        let out = f.multiply_by_varpi();
        assert!(out.support(1e-15).iter().all(|v| v.parity() == 1));
    }

    #[test]
    fn n_is_diagonal() {
        let s = sig(2, 3);
        assert_eq!(ZonalFunction::basis(s, 0, 0).apply_n().sup_norm(), 0.0);
        assert_eq!(ZonalFunction::basis(s, 1, 2).apply_n().get(1, 2), 10.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = ZonalFunction::random(s, 4, 4, &mut rng);
        let g = ZonalFunction::random(s, 4, 4, &mut rng);
        let lhs = f.add(&g).apply_n();
        let rhs = f.apply_n().add(&g.apply_n());
        assert!(lhs.sub(&rhs).sup_norm() < 1e-13);
    }

    #[test]
    fn t_kills_constants() {
        for (p, q) in [(1, 1), (2, 2), (3, 1), (1, 4)] {
            let s = sig(p, q);
            let t = ZonalFunction::basis(s, 0, 0).apply_t_via_lemma();
            assert!(t.sup_norm() < 1e-15);
            let grid = QuadratureGrid::new(s, 2, 2);
            let numeric = apply_t_numeric(&ZonalFunction::basis(s, 0, 0), &grid).unwrap();
            assert!(numeric.values.iter().all(|v| v.abs() < 1e-15));
        }
    }

    #[test]
    fn t_of_cos_tau_on_circle_factor() {
        // p = 1: φ_{10} = cos τ and T(cos τ) = -cos ρ sin^2 τ.
        let s = sig(1, 2);
        let grid = QuadratureGrid::new(s, 3, 3);
        let t = apply_t_numeric(&ZonalFunction::basis(s, 1, 0), &grid).unwrap();
        for (i, &x) in grid.x_nodes.iter().enumerate() {
            for (l, &y) in grid.y_nodes.iter().enumerate() {
                assert!((t.get(i, l) + y * (1.0 - x * x)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn lemma_and_numeric_t_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, q) in [(1, 1), (2, 2), (1, 3), (3, 2)] {
            let s = sig(p, q);
            let f = ZonalFunction::random(s, 6, 5, &mut rng);
            let grid = QuadratureGrid::new(s, 7, 6);
            let numeric = apply_t_numeric(&f, &grid).unwrap();
            let lemma = evaluate(&f.apply_t_via_lemma(), &grid);
            assert!(numeric.max_abs_diff(&lemma) < 1e-10);
        }
    }

    #[test]
    fn projection_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = sig(2, 3);
        let f = ZonalFunction::random(s, 8, 8, &mut rng);
        let grid = QuadratureGrid::new(s, 8, 8);
        let samples = evaluate(&f, &grid);
        let back = project(&samples, &grid, 8, 8).unwrap();
        assert!(back.sub(&f).sup_norm() < 1e-12);
        let again = evaluate(&back, &grid);
        assert!(again.max_abs_diff(&samples) < 1e-12 * samples.values.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    }

    #[test]
    fn basis_projects_to_delta() {
        let s = sig(3, 1);
        let grid = QuadratureGrid::new(s, 4, 4);
        let samples = evaluate(&ZonalFunction::basis(s, 2, 3), &grid);
        let c = project(&samples, &grid, 4, 4).unwrap();
        for (v, x) in c.iter() {
            let expected = if v == KType::new(2, 3) { 1.0 } else { 0.0 };
            assert!((x - expected).abs() < 1e-13, "{v}");
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let s = sig(2, 2);
        let grid = QuadratureGrid::with_nodes(s, 3, 3);
        let samples = GridSamples {
            nx: 3,
            ny: 3,
            values: vec![0.0; 9],
        };
        assert!(matches!(
            project(&samples, &grid, 5, 2),
            Err(Error::GridTooCoarse { .. })
        ));
        assert!(matches!(
            apply_t_numeric(&ZonalFunction::zeros(s, 2, 2), &grid),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn shape_checks() {
        assert!(ZonalFunction::from_coeffs(sig(1, 1), 1, 1, vec![0.0; 3]).is_err());
    }
}
