//! Half-integral weight coefficients through the Shimura relations.
//!
//! A form of weight `k + 1/2` on `Γ₀(4N)` with character `χ` and its lift
//! of weight `2k` are tied by
//! `A_t(n) = Σ_{d|n} χ_{t,N}(d) d^{k−1} a(t n²/d²)`, with
//! `χ_{t,N}(d) = χ(d)·((−1)^k N² t / d)`. Half-integral coefficients here are
//! synthesized from the eigenvalues of the lift, normalized by `a(t) = 1`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Debug;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::angles::angle;
use crate::arith::{divisors, gcd, is_squarefree, kronecker, mobius};
use crate::equidist::{classify, excluded_primes, SignClass, SignCounts, SignDensityReport};
use crate::error::{Error, Result};
use crate::measures::{epsilon_interval_union, product_measure};
use crate::newforms::{hecke_recurrence, EigenvalueTable, NewformSpec};

/// Values of `halfint_normalized` below this are not used to judge the sign predicate.
pub const SIGN_AGREEMENT_FLOOR: f64 = 1e-10;
/// Largest `4N` accepted for an explicit character table (validation is quadratic).
pub const MAX_TABLE_MODULUS: u64 = 40_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterKind {
    Trivial,
    Table,
    Kronecker,
}

/// A real Dirichlet character modulo `4N`, stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub kind: CharacterKind,
    pub modulus: u64,
    /// Fundamental discriminant for the Kronecker kind.
    pub discriminant: Option<i64>,
    values: Vec<i8>,
}

fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

impl Character {
    pub fn trivial(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("character modulus must be positive".into()));
        }
        let values = (0..modulus).map(|r| (gcd(r, modulus) == 1) as i8).collect();
        Ok(Self { kind: CharacterKind::Trivial, modulus, discriminant: None, values })
    }

    /// `d ↦ (D/d)` on units mod `modulus`, zero elsewhere; `D` must be a
    /// fundamental discriminant dividing the modulus.
    pub fn kronecker(discriminant: i64, modulus: u64) -> Result<Self> {
        if modulus == 0
            || !is_fundamental_discriminant(discriminant)
            || !modulus.is_multiple_of(discriminant.unsigned_abs())
        {
            return Err(Error::InvalidArgument(format!(
                "{discriminant} is not a fundamental discriminant dividing {modulus}"
            )));
        }
        let values =
            (0..modulus).map(|r| if gcd(r, modulus) == 1 { kronecker(discriminant, r as i64) } else { 0 }).collect();
        Ok(Self { kind: CharacterKind::Kronecker, modulus, discriminant: Some(discriminant), values })
    }

    /// Validates that `values` is a real character mod `values.len()`.
    pub fn from_table(values: Vec<i8>) -> Result<Self> {
        let modulus = values.len() as u64;
        if modulus == 0 || modulus > MAX_TABLE_MODULUS {
            return Err(Error::InvalidArgument(format!("character table length must be in 1..={MAX_TABLE_MODULUS}")));
        }
        for (r, &v) in values.iter().enumerate() {
            let unit = gcd(r as u64, modulus) == 1;
            if !matches!(v, -1..=1) || (v == 0) == unit {
                return Err(Error::InvalidArgument(format!(
                    "character value {v} at residue {r} (must be ±1 on units mod {modulus} and 0 elsewhere)"
                )));
            }
        }
        let units: Vec<u64> = (1..modulus).filter(|&r| gcd(r, modulus) == 1).collect();
        for &a in &units {
            for &b in &units {
                if values[(a * b % modulus) as usize] != values[a as usize] * values[b as usize] {
                    return Err(Error::InvalidArgument(format!("table is not multiplicative at {a}·{b}")));
                }
            }
        }
        if modulus > 1 && values[1] != 1 {
            return Err(Error::InvalidArgument("character must send 1 to 1".into()));
        }
        Ok(Self { kind: CharacterKind::Table, modulus, discriminant: None, values })
    }

    pub fn value(&self, d: u64) -> i8 {
        self.values[(d % self.modulus) as usize]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }
}

/// Data of a half-integral weight `k + 1/2` form of level `4N` and its lift.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfIntegralSpec {
    pub label: String,
    pub k: u32,
    pub level: u64,
    pub t: u64,
    pub chi: Character,
    /// Weight `2k` eigenform whose eigenvalues feed the synthesis.
    pub underlying: NewformSpec,
}

impl HalfIntegralSpec {
    pub fn new(
        label: impl Into<String>,
        k: u32,
        level: u64,
        t: u64,
        chi: Character,
        underlying: NewformSpec,
    ) -> Result<Self> {
        let spec = Self { label: label.into(), k, level, t, chi, underlying };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.k == 0 {
            return bad("k must be positive".into());
        }
        if self.level == 0 || self.level.is_multiple_of(2) || !is_squarefree(self.level) {
            return bad(format!("N = {} must be odd and squarefree", self.level));
        }
        if self.t == 0 || !is_squarefree(self.t) {
            return bad(format!("t = {} must be squarefree", self.t));
        }
        if self.chi.modulus != 4 * self.level {
            return bad(format!("character modulus {} is not 4N = {}", self.chi.modulus, 4 * self.level));
        }
        if self.underlying.weight != 2 * self.k {
            return bad(format!(
                "lift {} has weight {}, expected 2k = {}",
                self.underlying.label,
                self.underlying.weight,
                2 * self.k
            ));
        }
        Ok(())
    }

    /// `k = 6`, `N = 1`, `t = 1`, trivial character mod 4, lifting to Δ.
    pub fn delta_half() -> Self {
        Self::new("delta-half", 6, 1, 1, Character::trivial(4).expect("modulus 4"), NewformSpec::delta())
            .expect("valid preset")
    }

    /// `k = 1`, `N = 11`, `t = 1`, trivial character mod 44, lifting to the conductor-11 form.
    pub fn ec11_half() -> Self {
        Self::new("ec11-half", 1, 11, 1, Character::trivial(44).expect("modulus 44"), NewformSpec::ec11())
            .expect("valid preset")
    }

    pub fn preset(label: &str) -> Result<Self> {
        match label {
            "delta-half" => Ok(Self::delta_half()),
            "ec11-half" => Ok(Self::ec11_half()),
            other => Err(Error::UnknownForm(other.to_string())),
        }
    }

    pub fn preset_labels() -> &'static [&'static str] {
        &["delta-half", "ec11-half"]
    }

    /// Preset label, or a path to a JSON spec file.
    pub fn resolve(name: &str) -> Result<Self> {
        match Self::preset(name) {
            Ok(spec) => Ok(spec),
            Err(_) if Path::new(name).is_file() => Self::from_json_file(Path::new(name)),
            Err(e) => Err(e),
        }
    }

    /// Parses `{k, N, t, chi: {kind, values?, discriminant?}, underlying}`.
    pub fn from_json(label: &str, text: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text)?;
        let modulus = 4 * file.n;
        let chi = match file.chi {
            CharacterFile::Trivial => Character::trivial(modulus)?,
            CharacterFile::Table { values } => Character::from_table(values)?,
            CharacterFile::Kronecker { discriminant } => Character::kronecker(discriminant, modulus)?,
        };
        Self::new(label, file.k, file.n, file.t, chi, NewformSpec::preset(&file.underlying)?)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "custom".into());
        Self::from_json(&label, &std::fs::read_to_string(path)?)
    }

    /// Primes excluded from experiments: those dividing `2N`.
    pub fn is_excluded(&self, p: u64) -> bool {
        p == 2 || self.level.is_multiple_of(p)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    k: u32,
    #[serde(rename = "N")]
    n: u64,
    t: u64,
    chi: CharacterFile,
    underlying: String,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum CharacterFile {
    Trivial,
    Table { values: Vec<i8> },
    Kronecker { discriminant: i64 },
}

/// `χ_{t,N}(d) = χ(d)·((−1)^k N² t / d)`.
pub fn chi_tn(spec: &HalfIntegralSpec, d: u64) -> i8 {
    let c = spec.chi.value(d);
    if c == 0 {
        return 0;
    }
    let sign: i128 = if spec.k.is_multiple_of(2) { 1 } else { -1 };
    let disc = sign * (spec.level as i128).pow(2) * spec.t as i128;
    let disc = i64::try_from(disc).expect("N and t are small enough for the discriminant to fit");
    c * kronecker(disc, d as i64)
}

/// Scalar type of a coefficient series: exact `i128` or `f64`.
pub trait Coefficient: Copy + PartialEq + Debug {
    const ZERO: Self;
    /// `self + sign·d^exp·x`.
    fn add_term(self, sign: i8, d: u64, exp: u32, x: Self) -> Result<Self>;
}

impl Coefficient for i128 {
    const ZERO: Self = 0;

    fn add_term(self, sign: i8, d: u64, exp: u32, x: Self) -> Result<Self> {
        (d as i128)
            .checked_pow(exp)
            .and_then(|w| w.checked_mul(sign as i128))
            .and_then(|w| w.checked_mul(x))
            .and_then(|w| self.checked_add(w))
            .ok_or(Error::Overflow("Shimura divisor sum"))
    }
}

impl Coefficient for f64 {
    const ZERO: Self = 0.0;

    fn add_term(self, sign: i8, d: u64, exp: u32, x: Self) -> Result<Self> {
        Ok(self + sign as f64 * (d as f64).powi(exp as i32) * x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `n ↦ A_t(n)`, coefficients of the lift.
    Forward,
    /// `n ↦ a(t n²)`, half-integral coefficients.
    HalfInt,
}

/// Finitely supported `n ↦ value` for `1 ≤ n ≤ bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSeries<T> {
    pub flavor: Flavor,
    bound: u64,
    values: BTreeMap<u64, T>,
}

impl<T: Coefficient> CoefficientSeries<T> {
    pub fn new(flavor: Flavor, bound: u64) -> Self {
        Self { flavor, bound, values: BTreeMap::new() }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn insert(&mut self, n: u64, value: T) -> Result<()> {
        if n == 0 || n > self.bound {
            return Err(Error::InvalidArgument(format!("index {n} outside 1..={}", self.bound)));
        }
        self.values.insert(n, value);
        Ok(())
    }

    pub fn get(&self, n: u64) -> Result<T> {
        self.values.get(&n).copied().ok_or(Error::MissingCoefficient(n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, T)> + '_ {
        self.values.iter().map(|(&n, &v)| (n, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl CoefficientSeries<i128> {
    pub fn to_f64(&self) -> CoefficientSeries<f64> {
        CoefficientSeries {
            flavor: self.flavor,
            bound: self.bound,
            values: self.values.iter().map(|(&n, &v)| (n, v as f64)).collect(),
        }
    }
}

fn expect_flavor<T>(series: &CoefficientSeries<T>, flavor: Flavor) -> Result<()> {
    if series.flavor != flavor {
        return Err(Error::InvalidArgument(format!("expected a {flavor:?} series, got {:?}", series.flavor)));
    }
    Ok(())
}

/// `A_t(n) = Σ_{d|n} χ_{t,N}(d) d^{k−1} a(t (n/d)²)`.
pub fn shimura_forward<T: Coefficient>(spec: &HalfIntegralSpec, a: &CoefficientSeries<T>, n: u64) -> Result<T> {
    expect_flavor(a, Flavor::HalfInt)?;
    divisors(n).into_iter().try_fold(T::ZERO, |acc, d| {
        let c = chi_tn(spec, d);
        if c == 0 {
            return Ok(acc);
        }
        acc.add_term(c, d, spec.k - 1, a.get(n / d)?)
    })
}

/// `a(t n²) = Σ_{d|n} μ(d) χ_{t,N}(d) d^{k−1} A_t(n/d)`.
pub fn mobius_inverse<T: Coefficient>(spec: &HalfIntegralSpec, big_a: &CoefficientSeries<T>, n: u64) -> Result<T> {
    expect_flavor(big_a, Flavor::Forward)?;
    divisors(n).into_iter().try_fold(T::ZERO, |acc, d| {
        let c = mobius(d) * chi_tn(spec, d);
        if c == 0 {
            return Ok(acc);
        }
        acc.add_term(c, d, spec.k - 1, big_a.get(n / d)?)
    })
}

/// Applies [`shimura_forward`] at every index of `a`.
pub fn forward_series<T: Coefficient>(
    spec: &HalfIntegralSpec,
    a: &CoefficientSeries<T>,
) -> Result<CoefficientSeries<T>> {
    let mut out = CoefficientSeries::new(Flavor::Forward, a.bound);
    for (n, _) in a.iter() {
        out.insert(n, shimura_forward(spec, a, n)?)?;
    }
    Ok(out)
}

/// Applies [`mobius_inverse`] at every index of `big_a`.
pub fn inverse_series<T: Coefficient>(
    spec: &HalfIntegralSpec,
    big_a: &CoefficientSeries<T>,
) -> Result<CoefficientSeries<T>> {
    let mut out = CoefficientSeries::new(Flavor::HalfInt, big_a.bound);
    for (n, _) in big_a.iter() {
        out.insert(n, mobius_inverse(spec, big_a, n)?)?;
    }
    Ok(out)
}

fn check_table(spec: &HalfIntegralSpec, table: &EigenvalueTable) -> Result<()> {
    if table.spec().weight != 2 * spec.k {
        return Err(Error::InvalidArgument(format!(
            "table {} has weight {}, the lift of {} needs weight {}",
            table.label(),
            table.spec().weight,
            spec.label,
            2 * spec.k
        )));
    }
    Ok(())
}

fn check_prime(spec: &HalfIntegralSpec, table: &EigenvalueTable, p: u64) -> Result<f64> {
    check_table(spec, table)?;
    if spec.is_excluded(p) {
        return Err(Error::RamifiedPrime { p, level: 2 * spec.level, label: spec.label.clone() });
    }
    table.lambda(p)
}

/// Lift coefficients `A(p^j)`, `0 ≤ j ≤ ν`, from the integer recurrence
/// `A(p^{j+1}) = a_p A(p^j) − p^{2k−1} A(p^{j−1})`.
pub fn lift_prime_power_series(table: &EigenvalueTable, p: u64, nu: u32) -> Result<CoefficientSeries<i128>> {
    let ap = table.get(p)?.ap;
    let bound = (p as i128).checked_pow(nu).ok_or(Error::Overflow("p^nu"))?;
    let bound = u64::try_from(bound).map_err(|_| Error::Overflow("p^nu"))?;
    let pk = (p as i128).checked_pow(table.spec().weight - 1).ok_or(Error::Overflow("p^(2k-1)"))?;
    let mut series = CoefficientSeries::new(Flavor::Forward, bound);
    let (mut prev, mut cur, mut pj) = (0i128, 1i128, 1u64);
    series.insert(1, 1)?;
    for _ in 0..nu {
        let next = ap
            .checked_mul(cur)
            .zip(pk.checked_mul(prev))
            .and_then(|(x, y)| x.checked_sub(y))
            .ok_or(Error::Overflow("lift coefficient"))?;
        (prev, cur) = (cur, next);
        pj *= p;
        series.insert(pj, cur)?;
    }
    Ok(series)
}

/// `a(t p^{2ν}) / p^{ν(k−1/2)} = λ(p^ν) − χ_{t,N}(p)/√p · λ(p^{ν−1})`.
pub fn halfint_normalized(spec: &HalfIntegralSpec, table: &EigenvalueTable, p: u64, nu: u32) -> Result<f64> {
    let lambda = check_prime(spec, table, p)?;
    if nu == 0 {
        return Err(Error::InvalidArgument("nu must be positive".into()));
    }
    let c = chi_tn(spec, p) as f64;
    Ok(hecke_recurrence(lambda, nu) - c / (p as f64).sqrt() * hecke_recurrence(lambda, nu - 1))
}

/// Same quantity through the Möbius inversion of the integer lift series.
pub fn halfint_normalized_by_inversion(
    spec: &HalfIntegralSpec,
    table: &EigenvalueTable,
    p: u64,
    nu: u32,
) -> Result<f64> {
    check_prime(spec, table, p)?;
    let series = lift_prime_power_series(table, p, nu)?;
    let n = series.bound();
    let value = mobius_inverse(spec, &series, n)?;
    Ok(value as f64 / (p as f64).powf(nu as f64 * (spec.k as f64 - 0.5)))
}

/// Sign of `a(t p^{2ν})` from `sin((ν+1)θ) − (χ_{t,N}(p)/√p)·sin(νθ)`.
pub fn halfint_sign(spec: &HalfIntegralSpec, table: &EigenvalueTable, p: u64, nu: u32) -> Result<SignClass> {
    let theta = angle(check_prime(spec, table, p)?)?;
    if theta == 0.0 || theta == PI {
        return Err(Error::DegenerateAngle(theta));
    }
    let c = chi_tn(spec, p) as f64;
    let diff = ((nu + 1) as f64 * theta).sin() - c / (p as f64).sqrt() * (nu as f64 * theta).sin();
    Ok(classify(diff))
}

/// A half-integral form together with the table of its lift.
#[derive(Clone, Copy, Debug)]
pub struct HalfIntForm<'a> {
    pub spec: &'a HalfIntegralSpec,
    pub table: &'a EigenvalueTable,
}

impl<'a> HalfIntForm<'a> {
    pub fn new(spec: &'a HalfIntegralSpec, table: &'a EigenvalueTable) -> Result<Self> {
        check_table(spec, table)?;
        Ok(Self { spec, table })
    }
}

/// Primes `p ≤ X` with `p ∤ 2N₁N₂` and `p` good for both lifts.
fn shared_good_primes(f1: HalfIntForm, f2: HalfIntForm, limit: u64) -> Result<Vec<u64>> {
    for t in [f1.table, f2.table] {
        if t.bound() < limit {
            return Err(Error::NotInTable { label: t.label().to_string(), p: limit, bound: t.bound() });
        }
    }
    let bad = |p: u64| {
        f1.spec.is_excluded(p)
            || f2.spec.is_excluded(p)
            || f1.table.level().is_multiple_of(p)
            || f2.table.level().is_multiple_of(p)
    };
    Ok(f1.table.entries().iter().map(|e| e.p).take_while(|&p| p <= limit).filter(|&p| !bad(p)).collect())
}

fn excluded_for(f1: HalfIntForm, f2: HalfIntForm, limit: u64) -> Vec<u64> {
    let level = 2 * f1.spec.level * f2.spec.level * f1.table.level() * f2.table.level();
    excluded_primes(level, limit)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfIntDensityReport {
    pub nu: u32,
    pub report: SignDensityReport,
    pub excluded: Vec<u64>,
}

/// Signs of `a₁(tp^{2ν}) a₂(tp^{2ν})` over primes `p ≤ X`, `p ∤ 2N₁N₂`, for odd `ν`.
pub fn halfint_sign_density(f1: HalfIntForm, f2: HalfIntForm, nu: u32, limit: u64) -> Result<HalfIntDensityReport> {
    if nu.is_multiple_of(2) {
        return Err(Error::EvenNu(nu));
    }
    let mut counts = SignCounts::default();
    for p in shared_good_primes(f1, f2, limit)? {
        let v = halfint_normalized(f1.spec, f1.table, p, nu)? * halfint_normalized(f2.spec, f2.table, p, nu)?;
        counts.add(classify(v));
    }
    Ok(HalfIntDensityReport {
        nu,
        report: SignDensityReport::new(limit, counts),
        excluded: excluded_for(f1, f2, limit),
    })
}

/// Primes `p > 1/ε²` with both angles in `I_ε` (or both in `I'_ε`), all of
/// which should land in the positive class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContainmentWitness {
    pub epsilon: f64,
    pub nu: u32,
    pub limit: u64,
    /// `S(I_ε, I_ε)(X)` and `S(I'_ε, I'_ε)(X)` over `1/ε² < p ≤ X`.
    pub in_i: u64,
    pub in_i_prime: u64,
    pub counterexamples: Vec<u64>,
    /// `μ⊗²(I_ε×I_ε) + μ⊗²(I'_ε×I'_ε)`, the limiting lower bound on the positive density.
    pub measure_lower_bound: f64,
    pub positive_count: u64,
    /// `π(1/ε²)`.
    pub small_primes: u64,
    /// `π_{>0}(X) + π(1/ε²) ≥ S + S'`.
    pub counting_bound_holds: bool,
}

pub fn epsilon_containment(
    f1: HalfIntForm,
    f2: HalfIntForm,
    nu: u32,
    epsilon: f64,
    limit: u64,
) -> Result<ContainmentWitness> {
    let i_eps = epsilon_interval_union(nu, epsilon, false)?;
    let i_eps_prime = epsilon_interval_union(nu, epsilon, true)?;
    let cutoff = 1.0 / (epsilon * epsilon);
    let (mut in_i, mut in_i_prime, mut positive, mut small) = (0u64, 0u64, 0u64, 0u64);
    let mut counterexamples = Vec::new();
    for p in shared_good_primes(f1, f2, limit)? {
        let v = halfint_normalized(f1.spec, f1.table, p, nu)? * halfint_normalized(f2.spec, f2.table, p, nu)?;
        let is_positive = classify(v) == SignClass::Positive;
        positive += is_positive as u64;
        if (p as f64) <= cutoff {
            small += 1;
            continue;
        }
        let t1 = angle(f1.table.lambda(p)?)?;
        let t2 = angle(f2.table.lambda(p)?)?;
        let a = i_eps.contains(t1) && i_eps.contains(t2);
        let b = i_eps_prime.contains(t1) && i_eps_prime.contains(t2);
        in_i += a as u64;
        in_i_prime += b as u64;
        if (a || b) && !is_positive {
            counterexamples.push(p);
        }
    }
    Ok(ContainmentWitness {
        epsilon,
        nu,
        limit,
        in_i,
        in_i_prime,
        counterexamples,
        measure_lower_bound: product_measure(&i_eps, &i_eps) + product_measure(&i_eps_prime, &i_eps_prime),
        positive_count: positive,
        small_primes: small,
        counting_bound_holds: positive + small >= in_i + in_i_prime,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignAgreement {
    pub draws: u64,
    /// Draws with `|halfint_normalized| ≥ 1e−10` that were compared.
    pub compared: u64,
    pub mismatches: Vec<(u64, u32)>,
}

/// Compares [`halfint_sign`] with the sign of [`halfint_normalized`] on random `(p, ν)`.
pub fn sign_agreement(form: HalfIntForm, limit: u64, max_nu: u32, draws: u64, seed: u64) -> Result<SignAgreement> {
    let primes: Vec<u64> = form
        .table
        .entries()
        .iter()
        .map(|e| e.p)
        .take_while(|&p| p <= limit)
        .filter(|&p| !form.spec.is_excluded(p))
        .collect();
    if primes.is_empty() || max_nu == 0 {
        return Err(Error::InvalidArgument("no primes or exponents to draw from".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut compared, mut mismatches) = (0u64, Vec::new());
    for _ in 0..draws {
        let p = primes[rng.gen_range(0..primes.len())];
        let nu = rng.gen_range(1..=max_nu);
        let value = halfint_normalized(form.spec, form.table, p, nu)?;
        if value.abs() < SIGN_AGREEMENT_FLOOR {
            continue;
        }
        compared += 1;
        let predicted = halfint_sign(form.spec, form.table, p, nu)?;
        if predicted != classify(value) {
            mismatches.push((p, nu));
        }
    }
    Ok(SignAgreement { draws, compared, mismatches })
}

/// Random valid spec with `k ≤ 6` and `N, t < 50`, for round-trip checks.
/// The lift is an unbuilt explicit-table placeholder of weight `2k`.
pub fn random_spec(rng: &mut impl Rng) -> HalfIntegralSpec {
    loop {
        let k = rng.gen_range(1..=6);
        let level = 2 * rng.gen_range(0..25) + 1;
        let t = rng.gen_range(1..50);
        if !is_squarefree(level) || !is_squarefree(t) {
            continue;
        }
        let modulus = 4 * level;
        let chi = match rng.gen_range(0..3) {
            0 => Character::trivial(modulus),
            1 => Character::kronecker(-4, modulus),
            _ => {
                let ds: Vec<i64> = (-(modulus as i64)..=modulus as i64)
                    .filter(|&d| d != 0 && is_fundamental_discriminant(d) && modulus % d.unsigned_abs() == 0)
                    .collect();
                Character::kronecker(ds[rng.gen_range(0..ds.len())], modulus)
            }
        }
        .expect("valid character");
        let lift = NewformSpec::new(
            "placeholder",
            2 * k,
            level,
            crate::newforms::Source::ExplicitTable("placeholder.csv".into()),
            true,
        )
        .expect("valid placeholder");
        return HalfIntegralSpec::new(format!("random-k{k}-N{level}-t{t}"), k, level, t, chi, lift)
            .expect("valid spec");
    }
}

/// Random half-integral series `n ↦ a(tn²)` with `a(t) = 1` and `|a| ≤ 10⁶`.
pub fn random_series(rng: &mut impl Rng, bound: u64) -> CoefficientSeries<i128> {
    let mut series = CoefficientSeries::new(Flavor::HalfInt, bound);
    for n in 1..=bound {
        let v = if n == 1 { 1 } else { rng.gen_range(-1_000_000..=1_000_000) };
        series.insert(n, v).expect("in range");
    }
    series
}
