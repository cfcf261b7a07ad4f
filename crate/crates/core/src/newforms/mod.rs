//! Normalized Hecke eigenvalues `λ(n) = a(n) / n^{(k−1)/2}` of concrete newforms.
//!
//! Three sources are supported: the discriminant form Δ (from its
//! q-expansion), weight-2 forms attached to elliptic curves (from point
//! counts), and tables of `p,a_p` imported from a file.

mod cache;
mod curve;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub use cache::{read_table_file, spec_from_table_file, write_table_file, CoefficientCache, CACHE_DIR_ENV};
pub use curve::{count_affine_brute, ec_ap, ec_ap_scan, EllipticCurve};

use crate::arith::PrimeSieve;
use crate::error::{Error, Result};
use crate::qseries::{eta_power_24_delta, DELTA_TABLE_BOUND};

/// Where the Fourier coefficients of a form come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Source {
    EtaProductDelta,
    EllipticCurve(EllipticCurve),
    ExplicitTable(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewformSpec {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    pub source: Source,
    /// User assertion that the form has no complex multiplication.
    pub cm_free: bool,
}

impl NewformSpec {
    pub fn new(label: impl Into<String>, weight: u32, level: u64, source: Source, cm_free: bool) -> Result<Self> {
        let spec = Self { label: label.into(), weight, level, source, cm_free };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weight < 2 || !self.weight.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("weight must be even and >= 2, got {}", self.weight)));
        }
        if self.level == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        if self.label.is_empty() || self.label.contains([',', '\n', ' ', '/']) {
            return Err(Error::InvalidArgument(format!("invalid label {:?}", self.label)));
        }
        match self.source {
            Source::EtaProductDelta if (self.weight, self.level) != (12, 1) => {
                Err(Error::InvalidArgument("the eta-product source is Delta: weight 12, level 1".into()))
            }
            Source::EllipticCurve(_) if self.weight != 2 => {
                Err(Error::InvalidArgument("elliptic-curve sources have weight 2".into()))
            }
            _ => Ok(()),
        }
    }

    /// Ramanujan's Δ, weight 12 and level 1.
    pub fn delta() -> Self {
        Self { label: "delta".into(), weight: 12, level: 1, source: Source::EtaProductDelta, cm_free: true }
    }

    /// The weight-2 newform of the conductor-11 curve `[0,−1,1,−10,−20]`.
    pub fn ec11() -> Self {
        Self {
            label: "ec11".into(),
            weight: 2,
            level: 11,
            source: Source::EllipticCurve(EllipticCurve::CONDUCTOR_11),
            cm_free: true,
        }
    }

    /// The weight-2 newform of the conductor-37 curve `[0,0,1,−1,0]`.
    pub fn ec37() -> Self {
        Self {
            label: "ec37".into(),
            weight: 2,
            level: 37,
            source: Source::EllipticCurve(EllipticCurve::CONDUCTOR_37),
            cm_free: true,
        }
    }

    pub fn preset(label: &str) -> Result<Self> {
        match label {
            "delta" => Ok(Self::delta()),
            "ec11" => Ok(Self::ec11()),
            "ec37" => Ok(Self::ec37()),
            other => Err(Error::UnknownForm(other.to_string())),
        }
    }

    pub fn preset_labels() -> &'static [&'static str] {
        &["delta", "ec11", "ec37"]
    }

    /// `(k − 1) / 2`, the exponent removed by normalization.
    pub fn normalizing_exponent(&self) -> f64 {
        (self.weight as f64 - 1.0) / 2.0
    }
}

/// One good prime of a table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeEigenvalue {
    pub p: u64,
    pub ap: i128,
    pub lambda: f64,
}

/// `λ(p)` for every prime `p ≤ bound` not dividing the level.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueTable {
    spec: NewformSpec,
    bound: u64,
    entries: Vec<PrimeEigenvalue>,
}

/// `a / p^{(k−1)/2}`.
pub fn normalize(ap: i128, p: u64, weight: u32) -> f64 {
    ap as f64 / (p as f64).powf((weight as f64 - 1.0) / 2.0)
}

/// `|a_p| ≤ 2 p^{(k−1)/2}`.
pub fn check_deligne(label: &str, p: u64, ap: i128, weight: u32, lambda: f64) -> Result<()> {
    // Exact a_p² ≤ 4 p^{k−1} whenever it fits, otherwise the float bound.
    let exact = (p as i128)
        .checked_pow(weight - 1)
        .and_then(|pk| pk.checked_mul(4))
        .and_then(|bound| ap.checked_mul(ap).map(|sq| sq <= bound));
    let ok = exact.unwrap_or(lambda.abs() <= 2.0 + 1e-12);
    if ok {
        Ok(())
    } else {
        Err(Error::DeligneViolation { label: label.to_string(), p, lambda })
    }
}

impl EigenvalueTable {
    /// Assembles a table from integer `a_p`, normalizing and checking the
    /// Deligne bound at every prime. Primes dividing the level are dropped.
    pub fn from_integer_coefficients(
        spec: NewformSpec,
        bound: u64,
        coefficients: impl IntoIterator<Item = (u64, i128)>,
    ) -> Result<Self> {
        spec.validate()?;
        let mut entries = Vec::new();
        for (p, ap) in coefficients {
            if p > bound || spec.level.is_multiple_of(p) {
                continue;
            }
            let lambda = normalize(ap, p, spec.weight);
            check_deligne(&spec.label, p, ap, spec.weight, lambda)?;
            entries.push(PrimeEigenvalue { p, ap, lambda });
        }
        entries.sort_by_key(|e| e.p);
        if entries.windows(2).any(|w| w[0].p == w[1].p) {
            return Err(Error::InvalidArgument(format!("{}: duplicate prime in table", spec.label)));
        }
        Ok(Self { spec, bound, entries })
    }

    pub fn spec(&self) -> &NewformSpec {
        &self.spec
    }

    pub fn label(&self) -> &str {
        &self.spec.label
    }

    pub fn level(&self) -> u64 {
        self.spec.level
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn entries(&self) -> &[PrimeEigenvalue] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: u64) -> Result<&PrimeEigenvalue> {
        if self.spec.level.is_multiple_of(p) {
            return Err(Error::RamifiedPrime { p, level: self.spec.level, label: self.spec.label.clone() });
        }
        self.entries.binary_search_by_key(&p, |e| e.p).map(|i| &self.entries[i]).map_err(|_| Error::NotInTable {
            label: self.spec.label.clone(),
            p,
            bound: self.bound,
        })
    }

    pub fn lambda(&self, p: u64) -> Result<f64> {
        self.get(p).map(|e| e.lambda)
    }

    /// `λ(p^ν)` by the normalized Hecke recurrence.
    pub fn lambda_prime_power(&self, p: u64, nu: u32) -> Result<f64> {
        Ok(hecke_recurrence(self.lambda(p)?, nu))
    }
}

/// `λ(p^ν)` from `λ(p)` via `λ(p^{ν+1}) = λ(p)λ(p^ν) − λ(p^{ν−1})`, `λ(1) = 1`.
pub fn hecke_recurrence(lambda_p: f64, nu: u32) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..nu {
        (prev, cur) = (cur, lambda_p * cur - prev);
    }
    cur
}

/// All of `λ(p^0), …, λ(p^ν)` by the recurrence.
pub fn hecke_recurrence_all(lambda_p: f64, nu: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(nu as usize + 1);
    let (mut prev, mut cur) = (0.0, 1.0);
    out.push(cur);
    for _ in 0..nu {
        (prev, cur) = (cur, lambda_p * cur - prev);
        out.push(cur);
    }
    out
}

/// `sin((ν+1)θ) / sin θ`, the closed form of `λ(p^ν)` for `θ ∈ (0, π)`.
///
/// At `θ = 0` and `θ = π` the limits `ν + 1` and `(−1)^ν (ν + 1)` are returned.
pub fn sin_quotient(theta: f64, nu: u32) -> f64 {
    let s = theta.sin();
    if theta == 0.0 {
        return nu as f64 + 1.0;
    }
    if theta == std::f64::consts::PI {
        return if nu.is_multiple_of(2) { nu as f64 + 1.0 } else { -(nu as f64 + 1.0) };
    }
    ((nu as f64 + 1.0) * theta).sin() / s
}

/// Builds the table of a form for all primes `p ≤ prime_limit` with `p ∤ N`.
pub fn build_table(spec: &NewformSpec, prime_limit: u64) -> Result<EigenvalueTable> {
    spec.validate()?;
    if prime_limit < 2 {
        return EigenvalueTable::from_integer_coefficients(spec.clone(), prime_limit, std::iter::empty());
    }
    let sieve = PrimeSieve::new(prime_limit)?;
    let primes: Vec<u64> = sieve.primes().filter(|p| !spec.level.is_multiple_of(*p)).collect();
    match &spec.source {
        Source::EtaProductDelta => {
            if prime_limit > DELTA_TABLE_BOUND as u64 {
                return Err(Error::SourceExhausted {
                    label: spec.label.clone(),
                    requested: prime_limit,
                    available: DELTA_TABLE_BOUND as u64,
                });
            }
            let tau = eta_power_24_delta(prime_limit as usize)?;
            let coeffs = primes.iter().map(|&p| (p, tau.coeff(p as usize)));
            EigenvalueTable::from_integer_coefficients(spec.clone(), prime_limit, coeffs)
        }
        Source::EllipticCurve(curve) => {
            let aps = curve_traces(curve, &primes)?;
            let coeffs = primes.iter().zip(aps).map(|(&p, ap)| (p, ap as i128));
            EigenvalueTable::from_integer_coefficients(spec.clone(), prime_limit, coeffs)
        }
        Source::ExplicitTable(path) => {
            let file = read_table_file(path)?;
            let available: std::collections::BTreeMap<u64, i128> = file.rows.into_iter().collect();
            let max = available.keys().next_back().copied().unwrap_or(0);
            let mut coeffs = Vec::with_capacity(primes.len());
            for &p in &primes {
                match available.get(&p) {
                    Some(&ap) => coeffs.push((p, ap)),
                    None => {
                        return Err(Error::SourceExhausted {
                            label: spec.label.clone(),
                            requested: prime_limit,
                            available: max.min(p.saturating_sub(1)),
                        })
                    }
                }
            }
            EigenvalueTable::from_integer_coefficients(spec.clone(), prime_limit, coeffs)
        }
    }
}

#[cfg(feature = "parallel")]
fn curve_traces(curve: &EllipticCurve, primes: &[u64]) -> Result<Vec<i64>> {
    use rayon::prelude::*;
    // collect() keeps ascending-prime order.
    primes.par_iter().with_min_len(16).map(|&p| ec_ap(curve, p)).collect()
}

#[cfg(not(feature = "parallel"))]
fn curve_traces(curve: &EllipticCurve, primes: &[u64]) -> Result<Vec<i64>> {
    primes.iter().map(|&p| ec_ap(curve, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// τ(n) by direct expansion of `q ∏ (1 − q^n)^24`, independent of qseries.
    fn tau_oracle(bound: usize) -> Vec<i128> {
        let mut c = vec![0i128; bound];
        c[0] = 1;
        for n in 1..bound {
            for _ in 0..24 {
                for i in (n..bound).rev() {
                    c[i] -= c[i - n];
                }
            }
        }
        let mut tau = vec![0i128; bound + 1];
        tau[1..].copy_from_slice(&c);
        tau
    }

    #[test]
    fn delta_table_small() {
        let tau = tau_oracle(10);
        let table = build_table(&NewformSpec::delta(), 10).unwrap();
        let ps: Vec<u64> = table.entries().iter().map(|e| e.p).collect();
        assert_eq!(ps, vec![2, 3, 5, 7]);
        for e in table.entries() {
            assert_eq!(e.ap, tau[e.p as usize]);
            assert_eq!(e.lambda, tau[e.p as usize] as f64 / (e.p as f64).powf(5.5));
        }
        assert_eq!(table.entries().iter().map(|e| e.ap).collect::<Vec<_>>(), vec![-24, 252, 4830, -16744]);
    }

    #[test]
    fn curve_table_small() {
        let table = build_table(&NewformSpec::ec11(), 10).unwrap();
        let e11 = EllipticCurve::CONDUCTOR_11;
        for e in table.entries() {
            let brute = e.p as i64 + 1 - (count_affine_brute(&e11, e.p) as i64 + 1);
            assert_eq!(e.ap, brute as i128);
            assert_eq!(e.lambda, brute as f64 / (e.p as f64).sqrt());
        }
        assert_eq!(table.len(), 4);
        assert!(matches!(table.lambda(11), Err(Error::RamifiedPrime { .. })));
        let t13 = build_table(&NewformSpec::ec11(), 13).unwrap();
        assert!(t13.get(11).is_err());
        assert!(t13.get(13).is_ok());
    }

    #[test]
    fn empty_for_tiny_limit() {
        for spec in [NewformSpec::delta(), NewformSpec::ec11(), NewformSpec::ec37()] {
            assert!(build_table(&spec, 1).unwrap().is_empty());
        }
    }

    #[test]
    fn delta_source_exhaustion() {
        let err = build_table(&NewformSpec::delta(), DELTA_TABLE_BOUND as u64 + 1).unwrap_err();
        assert!(matches!(err, Error::SourceExhausted { .. }));
    }

    #[test]
    fn spec_validation() {
        assert!(NewformSpec::new("x", 3, 1, Source::EtaProductDelta, true).is_err());
        assert!(NewformSpec::new("x", 12, 2, Source::EtaProductDelta, true).is_err());
        assert!(NewformSpec::new("x", 4, 11, Source::EllipticCurve(EllipticCurve::CONDUCTOR_11), true).is_err());
        assert!(NewformSpec::new("x", 2, 0, Source::EllipticCurve(EllipticCurve::CONDUCTOR_11), true).is_err());
        assert!(NewformSpec::new("ok", 12, 1, Source::EtaProductDelta, true).is_ok());
        assert!(matches!(NewformSpec::preset("nope"), Err(Error::UnknownForm(_))));
    }

    #[test]
    fn deligne_violation_is_hard_error() {
        let spec = NewformSpec::new("bad", 2, 1, Source::ExplicitTable("unused".into()), false).unwrap();
        let err = EigenvalueTable::from_integer_coefficients(spec, 10, [(2, 3)]).unwrap_err();
        assert!(matches!(err, Error::DeligneViolation { p: 2, .. }));
    }

    #[test]
    fn recurrence_edge_cases() {
        assert_eq!(hecke_recurrence(0.7, 0), 1.0);
        assert_eq!(hecke_recurrence(0.0, 2), -1.0);
        assert_eq!(hecke_recurrence(2.0, 5), 6.0);
        assert_eq!(sin_quotient(0.0, 4), 5.0);
        assert_eq!(sin_quotient(std::f64::consts::PI, 3), -4.0);
        let all = hecke_recurrence_all(0.3, 6);
        for (nu, v) in all.iter().enumerate() {
            assert_eq!(*v, hecke_recurrence(0.3, nu as u32));
        }
    }

    #[test]
    fn delta_p2_nu3_two_paths() {
        let table = build_table(&NewformSpec::delta(), 10).unwrap();
        let lam = table.lambda(2).unwrap();
        let theta = (lam / 2.0).acos();
        let rec = table.lambda_prime_power(2, 3).unwrap();
        // λ(p³) = λ³ − 2λ written out.
        assert!((rec - (lam * lam * lam - 2.0 * lam)).abs() < 1e-12);
        assert!((rec - sin_quotient(theta, 3)).abs() < 1e-9);
    }

    #[test]
    fn recurrence_matches_trigonometric_form() {
        for spec in [NewformSpec::delta(), NewformSpec::ec11(), NewformSpec::ec37()] {
            let table = build_table(&spec, 2_000).unwrap();
            for e in table.entries() {
                let theta = (e.lambda / 2.0).acos();
                if theta.sin().abs() <= 1e-12 {
                    continue;
                }
                for (nu, rec) in hecke_recurrence_all(e.lambda, 200).into_iter().enumerate() {
                    let trig = sin_quotient(theta, nu as u32);
                    assert!((rec - trig).abs() <= 1e-9 * rec.abs().max(1.0), "{} p={} nu={nu}", spec.label, e.p);
                    assert!(rec.abs() <= nu as f64 + 1.0 + 1e-9);
                }
            }
        }
    }
}
