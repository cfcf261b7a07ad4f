//! WebAssembly bindings for the static demo page in `www/`.
//!
//! The `*_impl` functions hold the logic and are what native tests call;
//! the exported wrappers only convert errors into JS exceptions.

use std::f64::consts::PI;

use hecke_signs::angles::angle;
use hecke_signs::equidist::{ks_statistic, weyl_orbit, weyl_orbit_stats};
use hecke_signs::measures::{epsilon_interval_union, st_cdf, st_measure};
use hecke_signs::newforms::{build_table, NewformSpec};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Keeps the in-browser table build under a second or so.
pub const MAX_DEMO_LIMIT: u64 = 200_000;
pub const MAX_ORBIT_POINTS: u64 = 200_000;

/// Flattened endpoints `[a₀, b₀, a₁, b₁, …]` of `I_ε` (or `I'_ε`) followed by its Sato-Tate measure.
pub fn sign_union_impl(nu: u32, epsilon: f64, primed: bool) -> Result<Vec<f64>, String> {
    let union = epsilon_interval_union(nu, epsilon, primed).map_err(|e| e.to_string())?;
    let mut out: Vec<f64> = union.parts().iter().flat_map(|&(a, b)| [a, b]).collect();
    out.push(st_measure(&union));
    Ok(out)
}

/// Interleaved orbit points `[x₁, y₁, x₂, y₂, …]` of `({νθ₁/2π}, {νθ₂/2π})`.
pub fn weyl_points_impl(theta1: f64, theta2: f64, n: u64) -> Result<Vec<f64>, String> {
    if n == 0 || n > MAX_ORBIT_POINTS {
        return Err(format!("number of points must be in 1..={MAX_ORBIT_POINTS}"));
    }
    Ok(weyl_orbit(theta1, theta2).take(n as usize).flat_map(|(a, b)| [a, b]).collect())
}

pub fn weyl_discrepancy_impl(theta1: f64, theta2: f64, n: u64) -> Result<f64, String> {
    weyl_orbit_stats(theta1, theta2, n, &[]).map(|s| s.discrepancy).map_err(|e| e.to_string())
}

/// Histogram of `θ_p` for a preset form against Sato-Tate cell masses, as JSON
/// `{form, primes, observed, expected, ks}`.
pub fn angle_histogram_impl(form: &str, limit: u64, bins: usize) -> Result<String, String> {
    if limit > MAX_DEMO_LIMIT {
        return Err(format!("limit must be at most {MAX_DEMO_LIMIT}"));
    }
    if bins == 0 || bins > 200 {
        return Err("bins must be in 1..=200".into());
    }
    let spec = NewformSpec::preset(form).map_err(|e| e.to_string())?;
    let table = build_table(&spec, limit).map_err(|e| e.to_string())?;
    let thetas =
        table.entries().iter().map(|e| angle(e.lambda)).collect::<Result<Vec<f64>, _>>().map_err(|e| e.to_string())?;
    let w = PI / bins as f64;
    let mut observed = vec![0u64; bins];
    for &t in &thetas {
        observed[((t / w) as usize).min(bins - 1)] += 1;
    }
    let expected: Vec<f64> = (0..bins)
        .map(|i| {
            let hi = st_cdf(((i + 1) as f64 * w).min(PI)).unwrap_or(1.0);
            (hi - st_cdf(i as f64 * w).unwrap_or(0.0)) * thetas.len() as f64
        })
        .collect();
    Ok(json!({
        "form": table.label(),
        "primes": thetas.len(),
        "observed": observed,
        "expected": expected,
        "ks": ks_statistic(&thetas),
    })
    .to_string())
}

/// `[a₀, b₀, …, measure]` for the sign union of `sin((ν+1)θ)` shrunk by `ε`.
#[wasm_bindgen(js_name = signUnion)]
pub fn sign_union(nu: u32, epsilon: f64, primed: bool) -> Result<Vec<f64>, JsError> {
    sign_union_impl(nu, epsilon, primed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = weylPoints)]
pub fn weyl_points(theta1: f64, theta2: f64, n: u32) -> Result<Vec<f64>, JsError> {
    weyl_points_impl(theta1, theta2, n as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = weylDiscrepancy)]
pub fn weyl_discrepancy(theta1: f64, theta2: f64, n: u32) -> Result<f64, JsError> {
    weyl_discrepancy_impl(theta1, theta2, n as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = angleHistogram)]
pub fn angle_histogram(form: &str, limit: u32, bins: u32) -> Result<String, JsError> {
    angle_histogram_impl(form, limit as u64, bins as usize).map_err(|e| JsError::new(&e))
}
