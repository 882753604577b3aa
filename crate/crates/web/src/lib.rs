//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Poles are reported as `NaN` so they survive the trip into a `Float64Array`.

use intertwine::closedform::normalized_leading;
use intertwine::spectrum::{parity_class, recursion_spectrum, RecursionOptions};
use intertwine::verify::check_intertwining;
use intertwine::zonal::ZonalFunction;
use intertwine::{KType, Signature, SpectralOrder, SpectralValue};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wasm_bindgen::prelude::*;

fn finite_or_nan(v: SpectralValue) -> f64 {
    v.finite().unwrap_or(f64::NAN)
}

/// Base-normalized eigenvalues on `(jmax+1) × (kmax+1)`, row-major in `j`.
/// Entries outside the parity class are `NaN`.
pub fn spectrum_grid(p: u32, q: u32, r: f64, jmax: u32, kmax: u32, parity: u8) -> intertwine::Result<Vec<f64>> {
    let sig = Signature::new(p, q)?;
    let r = SpectralOrder::new(r)?;
    let table = recursion_spectrum(sig, r, jmax, kmax, parity, &RecursionOptions::default())?;
    let width = kmax as usize + 1;
    let mut grid = vec![f64::NAN; (jmax as usize + 1) * width];
    for v in parity_class(parity, jmax, kmax) {
        grid[v.j as usize * width + v.k as usize] = table.value(v).map_or(f64::NAN, finite_or_nan);
    }
    Ok(grid)
}

/// `μ(j, k) / μ(base)` sampled at `samples` evenly spaced orders in `[r_min, r_max]`.
pub fn eigenvalue_curve(
    p: u32,
    q: u32,
    j: u32,
    k: u32,
    r_min: f64,
    r_max: f64,
    samples: usize,
) -> intertwine::Result<Vec<f64>> {
    let sig = Signature::new(p, q)?;
    let v = KType::new(j, k);
    let base = KType::base(v.parity());
    let step = if samples > 1 {
        (r_max - r_min) / (samples - 1) as f64
    } else {
        0.0
    };
    (0..samples)
        .map(|i| {
            let r = SpectralOrder::new(r_min + step * i as f64)?;
            Ok(finite_or_nan(
                normalized_leading(sig, r, v, base, r.default_continuation())?.evaluate(),
            ))
        })
        .collect()
}

/// Relative residual of the intertwining relation on a random function of the given degree.
pub fn intertwining_residual(p: u32, q: u32, r: f64, degree: usize, seed: u64) -> intertwine::Result<f64> {
    let sig = Signature::new(p, q)?;
    let f = ZonalFunction::random(sig, degree, degree, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok(check_intertwining(sig, SpectralOrder::new(r)?, &f, f64::INFINITY)?.max_residual)
}

fn js(e: intertwine::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = spectrumGrid)]
pub fn spectrum_grid_js(p: u32, q: u32, r: f64, jmax: u32, kmax: u32, parity: u8) -> Result<Vec<f64>, JsError> {
    spectrum_grid(p, q, r, jmax, kmax, parity).map_err(js)
}

#[wasm_bindgen(js_name = eigenvalueCurve)]
pub fn eigenvalue_curve_js(
    p: u32,
    q: u32,
    j: u32,
    k: u32,
    r_min: f64,
    r_max: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    eigenvalue_curve(p, q, j, k, r_min, r_max, samples).map_err(js)
}

#[wasm_bindgen(js_name = intertwiningResidual)]
pub fn intertwining_residual_js(p: u32, q: u32, r: f64, degree: usize, seed: u64) -> Result<f64, JsError> {
    intertwining_residual(p, q, r, degree, seed).map_err(js)
}
