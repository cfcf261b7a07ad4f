//! Closed forms for the Sato-Tate measure `(2/π) sin²θ dθ` on `[0, π]`, its
//! product with itself, the sign-interval unions of `sin((ν+1)θ)`, and the
//! Lebesgue measure of `{u ∈ [0,1) : sin 2πu ∈ [a, b]}`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};

/// Finite union of disjoint open subintervals of `[0, π]`, sorted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalUnion {
    parts: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn new(parts: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &parts {
            if !(0.0 <= a && a < b && b <= PI) {
                return Err(Error::InvalidArgument(format!("interval ({a}, {b}) is not inside [0, pi]")));
            }
        }
        if parts.windows(2).any(|w| w[0].1 > w[1].0) {
            return Err(Error::InvalidArgument("intervals must be sorted and disjoint".into()));
        }
        Ok(Self { parts })
    }

    pub fn full() -> Self {
        Self { parts: vec![(0.0, PI)] }
    }

    pub fn parts(&self) -> &[(f64, f64)] {
        &self.parts
    }

    /// Membership in the open union.
    pub fn contains(&self, theta: f64) -> bool {
        // Parts are sorted: find the last part starting below theta.
        let idx = self.parts.partition_point(|&(a, _)| a < theta);
        idx > 0 && theta < self.parts[idx - 1].1
    }

    /// Total length.
    pub fn length(&self) -> f64 {
        self.parts.iter().map(|(a, b)| b - a).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=PI).contains(&theta) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("angle {theta} is outside [0, pi]")))
    }
}

/// Distribution function of the Sato-Tate measure, `(θ − sin θ cos θ)/π`.
pub fn st_cdf(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(cdf_unchecked(theta))
}

fn cdf_unchecked(theta: f64) -> f64 {
    (theta - theta.sin() * theta.cos()) / PI
}

/// Sato-Tate density `(2/π) sin²θ`.
pub fn st_density(theta: f64) -> f64 {
    let s = theta.sin();
    2.0 / PI * s * s
}

/// Sato-Tate mass of a union.
pub fn st_measure(union: &IntervalUnion) -> f64 {
    union.parts.iter().map(|&(a, b)| cdf_unchecked(b) - cdf_unchecked(a)).sum()
}

/// Midpoint-rule integral of the density over `union`, with `panels`
/// panels shared among the parts in proportion to their length.
pub fn st_measure_quadrature(union: &IntervalUnion, panels: usize) -> f64 {
    let len = union.length();
    union
        .parts()
        .iter()
        .map(|&(a, b)| {
            let n = ((panels as f64 * (b - a) / len).ceil() as usize).max(1);
            let h = (b - a) / n as f64;
            (0..n).map(|i| st_density(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
        })
        .sum()
}

/// Mass of the rectangle `U1 × U2` under the product measure.
pub fn product_measure(u1: &IntervalUnion, u2: &IntervalUnion) -> f64 {
    st_measure(u1) * st_measure(u2)
}

/// The θ-set where `sin((ν+1)θ)` has the given sign, for odd `ν`:
/// `⋃_{j=1}^{(ν+1)/2} (2(j−1)π/(ν+1), (2j−1)π/(ν+1))` for positive, and
/// `⋃ ((2j−1)π/(ν+1), 2jπ/(ν+1))` for negative.
pub fn sign_interval_union(nu: u32, sign: Sign) -> Result<IntervalUnion> {
    epsilon_interval_union(nu, 0.0, sign == Sign::Negative)
}

/// The θ-set where `sin((ν+1)θ) > ε` (or `< −ε` when `primed`), for odd `ν`:
/// each sign interval shrunk by `arcsin(ε)/(ν+1)` at both ends.
pub fn epsilon_interval_union(nu: u32, epsilon: f64, primed: bool) -> Result<IntervalUnion> {
    if nu.is_multiple_of(2) {
        return Err(Error::EvenNu(nu));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in [0, 1), got {epsilon}")));
    }
    let m = nu as f64 + 1.0;
    let shift = epsilon.asin();
    let offset = if primed { 1.0 } else { 0.0 };
    let parts = (1..=nu.div_ceil(2))
        .map(|j| {
            let j = j as f64;
            let a = ((2.0 * j - 2.0 + offset) * PI + shift) / m;
            let b = ((2.0 * j - 1.0 + offset) * PI - shift) / m;
            (a, b.min(PI))
        })
        .collect();
    IntervalUnion::new(parts)
}

/// Lebesgue measure of `{u ∈ [0, 1) : sin(2πu) ∈ [a, b]}`.
///
/// Sums the preimage lengths over the four monotone branches of `sin` on one
/// period: `[0, π/2]` and `[3π/2, 2π]` rising, `[π/2, 3π/2]` falling (split at `π`).
pub fn sin_box_measure(a: f64, b: f64) -> Result<f64> {
    if !(-1.0 <= a && a <= b && b <= 1.0) {
        return Err(Error::InvalidArgument(format!("need -1 <= a <= b <= 1, got [{a}, {b}]")));
    }
    let clip = |lo: f64, hi: f64| {
        let (l, h) = (a.max(lo), b.min(hi));
        (l <= h).then_some((l, h))
    };
    let mut total = 0.0;
    // Rising through [0, 1] on φ ∈ [0, π/2]: φ = asin s.
    if let Some((l, h)) = clip(0.0, 1.0) {
        total += h.asin() - l.asin();
    }
    // Falling through [1, 0] on φ ∈ [π/2, π]: φ = π − asin s.
    if let Some((l, h)) = clip(0.0, 1.0) {
        total += (PI - l.asin()) - (PI - h.asin());
    }
    // Falling through [0, −1] on φ ∈ [π, 3π/2]: φ = π − asin s.
    if let Some((l, h)) = clip(-1.0, 0.0) {
        total += (PI - l.asin()) - (PI - h.asin());
    }
    // Rising through [−1, 0] on φ ∈ [3π/2, 2π]: φ = 2π + asin s.
    if let Some((l, h)) = clip(-1.0, 0.0) {
        total += (2.0 * PI + h.asin()) - (2.0 * PI + l.asin());
    }
    Ok(total / (2.0 * PI))
}

/// Inverse of [`st_cdf`] on `[0, 1]`, by safeguarded Newton iteration.
pub fn st_inverse_cdf(u: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::InvalidArgument(format!("probability {u} outside [0, 1]")));
    }
    let (mut lo, mut hi) = (0.0, PI);
    let mut theta = FRAC_PI_2;
    for _ in 0..100 {
        let f = cdf_unchecked(theta) - u;
        if f > 0.0 {
            hi = theta;
        } else {
            lo = theta;
        }
        let d = st_density(theta);
        let mut next = if d > 0.0 { theta - f / d } else { f64::NAN };
        if (next - theta).abs() <= 1e-15 * PI {
            return Ok(next.clamp(0.0, PI));
        }
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        theta = next;
    }
    Ok(theta)
}
