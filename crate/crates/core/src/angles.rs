//! Sato-Tate angles `θ_p ∈ [0, π]` with `λ(p) = 2 cos θ_p`, and a
//! finite-height screen for rational relations among angles.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::newforms::EigenvalueTable;

/// Inputs within this distance of ±2 are clamped before `arccos`.
pub const CLAMP_TOLERANCE: f64 = 1e-12;
/// Default height of the relation screen.
pub const DEFAULT_HEIGHT: u32 = 1_000;
/// Default residual tolerance of the relation screen.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Largest height the exhaustive screen accepts.
pub const MAX_HEIGHT: u32 = 10_000;

/// `θ = arccos(λ/2)`.
pub fn angle(lambda_p: f64) -> Result<f64> {
    if !lambda_p.is_finite() || lambda_p.abs() > 2.0 + CLAMP_TOLERANCE {
        return Err(Error::EigenvalueOutOfRange(lambda_p));
    }
    Ok((lambda_p.clamp(-2.0, 2.0) / 2.0).acos())
}

/// Angles of a form at consecutive good primes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleSequence {
    pub label: String,
    pub entries: Vec<(u64, f64)>,
}

impl AngleSequence {
    pub fn from_table(table: &EigenvalueTable) -> Result<Self> {
        let entries = table.entries().iter().map(|e| angle(e.lambda).map(|t| (e.p, t))).collect::<Result<_>>()?;
        Ok(Self { label: table.label().to_string(), entries })
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|&(_, t)| t)
    }

    pub fn get(&self, p: u64) -> Option<f64> {
        self.entries.binary_search_by_key(&p, |&(q, _)| q).ok().map(|i| self.entries[i].1)
    }
}

/// `m·θ₁/2π + n·θ₂/2π ≈ c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub m: i64,
    pub n: i64,
    pub c: i64,
}

/// `θ/π ≈ numerator/denominator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rational {
    pub numerator: i64,
    pub denominator: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub height: u32,
    pub tolerance: f64,
    pub found: bool,
    /// Lowest-height relation under the tolerance, when one exists.
    pub relation: Option<Relation>,
    /// Residual of `relation` when found, otherwise the smallest residual
    /// seen over the whole search box.
    pub residual: f64,
    /// The pair attaining the smallest residual over the whole box.
    pub closest: Relation,
    /// Single-angle screens: `θᵢ/π` close to a rational with denominator ≤ height.
    pub rational: [Option<Rational>; 2],
}

impl RelationReport {
    pub fn summary(&self) -> String {
        match self.relation {
            Some(r) => format!(
                "relation found: {}*t1/2pi + {}*t2/2pi = {} (residual {:e}, height {}, tolerance {:e})",
                r.m, r.n, r.c, self.residual, self.height, self.tolerance
            ),
            None => format!(
                "no relation up to height {}, tolerance {:e} (closest residual {:e})",
                self.height, self.tolerance, self.residual
            ),
        }
    }
}

/// Smallest `q ≤ height` with `q·θ/π` within `tol` of an integer.
pub fn rational_screen(theta: f64, height: u32, tol: f64) -> Option<Rational> {
    let x = theta / PI;
    (1..=height as u64).find_map(|q| {
        let r = q as f64 * x;
        let c = r.round();
        ((r - c).abs() < tol).then_some(Rational { numerator: c as i64, denominator: q })
    })
}

/// Exhaustive search over `|m|, |n| ≤ height`, `(m, n) ≠ (0, 0)`.
///
/// Each pair is normalized so its first nonzero entry is positive. Among
/// pairs with residual below `tol` the one of smallest height `max(|m|,|n|)`
/// is reported, ties going to the smaller residual.
pub fn relation_search(theta1: f64, theta2: f64, height: u32, tol: f64) -> Result<RelationReport> {
    for t in [theta1, theta2] {
        if !(t > 0.0 && t < PI) {
            return Err(Error::InvalidArgument(format!("angle {t} is not in (0, pi)")));
        }
    }
    if height == 0 || height > MAX_HEIGHT {
        return Err(Error::InvalidArgument(format!("height must be in 1..={MAX_HEIGHT}, got {height}")));
    }
    let (a, b) = (theta1 / (2.0 * PI), theta2 / (2.0 * PI));
    let h = height as i64;
    let mut best: Option<(i64, f64, Relation)> = None;
    let mut closest = (f64::INFINITY, Relation { m: 0, n: 1, c: 0 });
    for m in 0..=h {
        let ma = m as f64 * a;
        let n_start = if m == 0 { 1 } else { -h };
        for n in n_start..=h {
            let r = ma + n as f64 * b;
            let c = r.round();
            let res = (r - c).abs();
            let rel = Relation { m, n, c: c as i64 };
            if res < closest.0 {
                closest = (res, rel);
            }
            if res < tol {
                let ht = m.max(n.abs());
                let better = match best {
                    None => true,
                    Some((bh, bres, _)) => ht < bh || (ht == bh && res < bres),
                };
                if better {
                    best = Some((ht, res, rel));
                }
            }
        }
    }
    let rational = [rational_screen(theta1, height, tol), rational_screen(theta2, height, tol)];
    Ok(match best {
        Some((_, res, rel)) => RelationReport {
            height,
            tolerance: tol,
            found: true,
            relation: Some(rel),
            residual: res,
            closest: closest.1,
            rational,
        },
        None => RelationReport {
            height,
            tolerance: tol,
            found: false,
            relation: None,
            residual: closest.0,
            closest: closest.1,
            rational,
        },
    })
}
