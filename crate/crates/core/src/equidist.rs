//! Empirical experiments: sign classes of `λ₁(p^ν)λ₂(p^ν)` along `ν` at a
//! fixed prime and along primes at a fixed `ν`, Weyl orbits of the angle
//! pair modulo one, and goodness of fit of angle pairs against the product
//! Sato-Tate measure.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::angles::{angle, rational_screen};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::measures::{sin_box_measure, st_cdf, st_inverse_cdf, IntervalUnion};
use crate::newforms::{hecke_recurrence, hecke_recurrence_all, sin_quotient, EigenvalueTable};

/// Values with magnitude below this are counted in the zero class.
pub const ZERO_THRESHOLD: f64 = 1e-12;
/// Side of the grid of anchored boxes used for the discrepancy estimate.
pub const DISCREPANCY_GRID: usize = 64;
/// Relative tolerance between the recurrence and the closed form of `λ(p^ν)`.
pub const PATH_TOLERANCE: f64 = 1e-9;
/// Largest `ν` at which the two evaluation paths are compared.
pub const PATH_CHECK_NU: u32 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    Positive,
    Negative,
    Zero,
}

pub fn classify(value: f64) -> SignClass {
    if value.abs() < ZERO_THRESHOLD {
        SignClass::Zero
    } else if value > 0.0 {
        SignClass::Positive
    } else {
        SignClass::Negative
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct SignCounts {
    pub positive: u64,
    pub negative: u64,
    pub zero: u64,
}

impl SignCounts {
    pub fn add(&mut self, class: SignClass) {
        match class {
            SignClass::Positive => self.positive += 1,
            SignClass::Negative => self.negative += 1,
            SignClass::Zero => self.zero += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.positive + self.negative + self.zero
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Densities {
    pub positive: f64,
    pub negative: f64,
    pub zero: f64,
    pub nonnegative: f64,
    pub nonpositive: f64,
}

/// Counts and densities of the sign classes over a range of `ν` or of primes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignDensityReport {
    /// `x` (terms `ν ≤ x`) or `X` (primes `p ≤ X`).
    pub range: u64,
    pub counts: SignCounts,
    /// Number of terms classified: `x`, or the primes `p ≤ X` not dividing the level.
    pub denominator: u64,
    pub densities: Densities,
    /// Densities among the nonzero terms only.
    pub nonzero_densities: Option<Densities>,
}

impl SignDensityReport {
    pub fn new(range: u64, counts: SignCounts) -> Self {
        let denominator = counts.total();
        let d = |n: u64, over: u64| if over == 0 { 0.0 } else { n as f64 / over as f64 };
        let densities = Densities {
            positive: d(counts.positive, denominator),
            negative: d(counts.negative, denominator),
            zero: d(counts.zero, denominator),
            nonnegative: d(counts.positive + counts.zero, denominator),
            nonpositive: d(counts.negative + counts.zero, denominator),
        };
        let nonzero = counts.positive + counts.negative;
        let nonzero_densities = (nonzero > 0).then(|| Densities {
            positive: d(counts.positive, nonzero),
            negative: d(counts.negative, nonzero),
            zero: 0.0,
            nonnegative: d(counts.positive, nonzero),
            nonpositive: d(counts.negative, nonzero),
        });
        Self { range, counts, denominator, densities, nonzero_densities }
    }
}

fn nondegenerate_angle(table: &EigenvalueTable, p: u64) -> Result<f64> {
    let theta = angle(table.lambda(p)?)?;
    if theta == 0.0 || theta == PI {
        return Err(Error::DegenerateAngle(theta));
    }
    Ok(theta)
}

/// Largest relative gap between the recurrence and `sin((ν+1)θ)/sin θ` over `ν ≤ max_nu`.
pub fn path_deviation(lambda_p: f64, max_nu: u32) -> f64 {
    let theta = (lambda_p.clamp(-2.0, 2.0) / 2.0).acos();
    hecke_recurrence_all(lambda_p, max_nu)
        .into_iter()
        .enumerate()
        .map(|(nu, rec)| (rec - sin_quotient(theta, nu as u32)).abs() / rec.abs().max(1.0))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NuSignReport {
    pub p: u64,
    pub theta: [f64; 2],
    pub report: SignDensityReport,
    /// Largest relative gap between the two evaluation paths of `λᵢ(p^ν)`, `ν ≤ 200`.
    pub path_deviation: f64,
}

/// Signs of `λ₁(p^ν)λ₂(p^ν)` for `1 ≤ ν ≤ x` at a fixed prime `p`.
///
/// Each factor is evaluated as `sin((ν+1)θ)/sin θ`.
pub fn sign_product_proportion_nu(t1: &EigenvalueTable, t2: &EigenvalueTable, p: u64, x: u64) -> Result<NuSignReport> {
    if x == 0 {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    let th1 = nondegenerate_angle(t1, p)?;
    let th2 = nondegenerate_angle(t2, p)?;
    let path_deviation = path_deviation(t1.lambda(p)?, PATH_CHECK_NU).max(path_deviation(t2.lambda(p)?, PATH_CHECK_NU));
    if path_deviation > PATH_TOLERANCE {
        return Err(Error::InvalidArgument(format!(
            "recurrence and closed form disagree at p = {p} (relative gap {path_deviation:e})"
        )));
    }
    let (s1, s2) = (th1.sin(), th2.sin());
    let mut counts = SignCounts::default();
    for nu in 1..=x {
        let k = (nu + 1) as f64;
        let v = ((k * th1).sin() / s1) * ((k * th2).sin() / s2);
        counts.add(classify(v));
    }
    Ok(NuSignReport { p, theta: [th1, th2], report: SignDensityReport::new(x, counts), path_deviation })
}

fn shared_primes<'a>(
    t1: &'a EigenvalueTable,
    t2: &'a EigenvalueTable,
    limit: u64,
) -> Result<Vec<(u64, &'a crate::newforms::PrimeEigenvalue, &'a crate::newforms::PrimeEigenvalue)>> {
    for t in [t1, t2] {
        if t.bound() < limit {
            return Err(Error::NotInTable { label: t.label().to_string(), p: limit, bound: t.bound() });
        }
    }
    let mut out = Vec::new();
    for e1 in t1.entries().iter().take_while(|e| e.p <= limit) {
        if t2.level().is_multiple_of(e1.p) {
            continue;
        }
        out.push((e1.p, e1, t2.get(e1.p)?));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeSignReport {
    pub nu: u32,
    pub report: SignDensityReport,
    /// Primes `p ≤ X` dividing `N₁N₂`, excluded from every class.
    pub excluded: Vec<u64>,
    /// For `ν = 1`: primes where the float classification disagrees with
    /// `sign(a₁(p))·sign(a₂(p))` computed on the integers.
    pub integer_mismatches: Option<u64>,
}

/// Signs of `λ₁(p^ν)λ₂(p^ν)` over primes `p ≤ X`, `p ∤ N₁N₂`, for odd `ν`.
pub fn prime_sign_density(t1: &EigenvalueTable, t2: &EigenvalueTable, nu: u32, limit: u64) -> Result<PrimeSignReport> {
    if nu.is_multiple_of(2) {
        return Err(Error::EvenNu(nu));
    }
    let primes = shared_primes(t1, t2, limit)?;
    let mut counts = SignCounts::default();
    let mut mismatches = 0u64;
    for &(_, e1, e2) in &primes {
        let class = classify(hecke_recurrence(e1.lambda, nu) * hecke_recurrence(e2.lambda, nu));
        counts.add(class);
        if nu == 1 {
            let exact = match e1.ap.signum() * e2.ap.signum() {
                1 => SignClass::Positive,
                -1 => SignClass::Negative,
                _ => SignClass::Zero,
            };
            mismatches += (exact != class) as u64;
        }
    }
    let excluded = excluded_primes(t1.level() * t2.level(), limit);
    Ok(PrimeSignReport {
        nu,
        report: SignDensityReport::new(limit, counts),
        excluded,
        integer_mismatches: (nu == 1).then_some(mismatches),
    })
}

pub(crate) fn excluded_primes(level: u64, limit: u64) -> Vec<u64> {
    crate::arith::factorize(level).into_iter().map(|(p, _)| p).filter(|&p| p <= limit).collect()
}

/// `B × B` histogram of angle pairs with expected counts from the product measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairHistogram {
    pub bins: usize,
    /// Row-major: `counts[i * bins + j]` holds `θ₁` in bin `i`, `θ₂` in bin `j`.
    pub counts: Vec<u64>,
    pub total: u64,
    pub expected: Vec<f64>,
}

impl PairHistogram {
    pub fn from_angles(pairs: &[(f64, f64)], bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidArgument("need at least one bin".into()));
        }
        let bin = |t: f64| ((t / PI * bins as f64) as usize).min(bins - 1);
        let mut counts = vec![0u64; bins * bins];
        for &(a, b) in pairs {
            counts[bin(a) * bins + bin(b)] += 1;
        }
        let total = pairs.len() as u64;
        let edges: Vec<f64> = (0..=bins).map(|i| i as f64 * PI / bins as f64).collect();
        let mass: Vec<f64> =
            edges.windows(2).map(|w| st_cdf(w[1].min(PI)).unwrap_or(1.0) - st_cdf(w[0]).unwrap_or(0.0)).collect();
        let expected = (0..bins * bins).map(|c| total as f64 * mass[c / bins] * mass[c % bins]).collect();
        Ok(Self { bins, counts, total, expected })
    }

    /// Pearson's statistic `Σ (O − E)² / E`.
    pub fn chi_square(&self) -> f64 {
        self.counts
            .iter()
            .zip(&self.expected)
            .filter(|(_, &e)| e > 0.0)
            .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
            .sum()
    }

    /// `|O − E| / E` per cell.
    pub fn relative_deviations(&self) -> Vec<f64> {
        self.counts
            .iter()
            .zip(&self.expected)
            .map(|(&o, &e)| if e > 0.0 { (o as f64 - e).abs() / e } else { 0.0 })
            .collect()
    }

    /// CSV with header `i,j,observed,expected`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,observed,expected\n");
        for (c, (&o, &e)) in self.counts.iter().zip(&self.expected).enumerate() {
            out.push_str(&format!("{},{},{},{}\n", c / self.bins, c % self.bins, o, e));
        }
        out
    }
}

/// Kolmogorov-Smirnov distance between a sample of angles and the Sato-Tate law.
pub fn ks_statistic(samples: &[f64]) -> f64 {
    let mut xs: Vec<f64> = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &t)| {
            let f = st_cdf(t.clamp(0.0, PI)).unwrap_or(0.0);
            (f - i as f64 / n).max((i as f64 + 1.0) / n - f)
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairStReport {
    pub limit: u64,
    pub histogram: PairHistogram,
    pub chi_square: f64,
    pub ks: [f64; 2],
    pub max_relative_deviation: f64,
    pub min_expected: f64,
}

pub fn pair_st_from_angles(pairs: &[(f64, f64)], bins: usize, limit: u64) -> Result<PairStReport> {
    let histogram = PairHistogram::from_angles(pairs, bins)?;
    let first: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let second: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let max_relative_deviation = histogram.relative_deviations().into_iter().fold(0.0, f64::max);
    let min_expected = histogram.expected.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(PairStReport {
        limit,
        chi_square: histogram.chi_square(),
        ks: [ks_statistic(&first), ks_statistic(&second)],
        max_relative_deviation,
        min_expected,
        histogram,
    })
}

/// Histogram, chi-square and marginal KS distances of `(θ₁(p), θ₂(p))`, `p ≤ X`, `p ∤ N₁N₂`.
pub fn pair_st_gof(t1: &EigenvalueTable, t2: &EigenvalueTable, limit: u64, bins: usize) -> Result<PairStReport> {
    let pairs = shared_primes(t1, t2, limit)?
        .into_iter()
        .map(|(_, e1, e2)| Ok((angle(e1.lambda)?, angle(e2.lambda)?)))
        .collect::<Result<Vec<_>>>()?;
    pair_st_from_angles(&pairs, bins, limit)
}

/// Independent angle pairs drawn from the product Sato-Tate measure by
/// inverse-CDF sampling.
pub fn synthetic_pairs(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            let v: f64 = rng.gen();
            (st_inverse_cdf(u).expect("u in [0,1)"), st_inverse_cdf(v).expect("v in [0,1)"))
        })
        .collect()
}

/// Closed box `[u1, v1] × [u2, v2] ⊆ [0, 1]²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitBox {
    pub u1: f64,
    pub v1: f64,
    pub u2: f64,
    pub v2: f64,
}

impl UnitBox {
    pub fn new(u1: f64, v1: f64, u2: f64, v2: f64) -> Result<Self> {
        let ok = |a: f64, b: f64| (0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b) && a <= b;
        if !(ok(u1, v1) && ok(u2, v2)) {
            return Err(Error::InvalidArgument(format!("box [{u1},{v1}]x[{u2},{v2}] is not inside the unit square")));
        }
        Ok(Self { u1, v1, u2, v2 })
    }

    pub fn unit() -> Self {
        Self { u1: 0.0, v1: 1.0, u2: 0.0, v2: 1.0 }
    }

    pub fn contains(&self, a: f64, b: f64) -> bool {
        self.u1 <= a && a <= self.v1 && self.u2 <= b && b <= self.v2
    }

    pub fn area(&self) -> f64 {
        (self.v1 - self.u1) * (self.v2 - self.u2)
    }
}

/// `({νθ₁/2π}, {νθ₂/2π})` for `ν = 1, 2, …`.
pub fn weyl_orbit(theta1: f64, theta2: f64) -> impl Iterator<Item = (f64, f64)> {
    let (a, b) = (theta1 / (2.0 * PI), theta2 / (2.0 * PI));
    (1u64..).map(move |nu| ((nu as f64 * a).rem_euclid(1.0), (nu as f64 * b).rem_euclid(1.0)))
}

/// Fraction of `ν ≤ x` whose orbit point lies in `bx`.
pub fn weyl_box_proportion(theta1: f64, theta2: f64, bx: &UnitBox, x: u64) -> Result<f64> {
    if x == 0 {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    let hits = weyl_orbit(theta1, theta2).take(x as usize).filter(|&(a, b)| bx.contains(a, b)).count();
    Ok(hits as f64 / x as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxCount {
    pub unit_box: UnitBox,
    pub count: u64,
    pub proportion: f64,
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylOrbitStats {
    pub theta: [f64; 2],
    pub x: u64,
    pub boxes: Vec<BoxCount>,
    /// `max |count/x − area|` over the anchored boxes `[0, i/64) × [0, j/64)`.
    pub discrepancy: f64,
}

pub fn weyl_orbit_stats(theta1: f64, theta2: f64, x: u64, boxes: &[UnitBox]) -> Result<WeylOrbitStats> {
    if x == 0 {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    let g = DISCREPANCY_GRID;
    let mut grid = vec![0u64; g * g];
    let mut counts = vec![0u64; boxes.len()];
    for (a, b) in weyl_orbit(theta1, theta2).take(x as usize) {
        let i = ((a * g as f64) as usize).min(g - 1);
        let j = ((b * g as f64) as usize).min(g - 1);
        grid[i * g + j] += 1;
        for (c, bx) in counts.iter_mut().zip(boxes) {
            *c += bx.contains(a, b) as u64;
        }
    }
    // prefix[i][j] = points in [0, i/g) × [0, j/g).
    let mut prefix = vec![0u64; (g + 1) * (g + 1)];
    for i in 0..g {
        for j in 0..g {
            prefix[(i + 1) * (g + 1) + j + 1] =
                grid[i * g + j] + prefix[i * (g + 1) + j + 1] + prefix[(i + 1) * (g + 1) + j] - prefix[i * (g + 1) + j];
        }
    }
    let mut discrepancy: f64 = 0.0;
    for i in 1..=g {
        for j in 1..=g {
            let area = (i * j) as f64 / (g * g) as f64;
            let frac = prefix[i * (g + 1) + j] as f64 / x as f64;
            discrepancy = discrepancy.max((frac - area).abs());
        }
    }
    let boxes = boxes
        .iter()
        .zip(counts)
        .map(|(bx, count)| BoxCount { unit_box: *bx, count, proportion: count as f64 / x as f64, area: bx.area() })
        .collect();
    Ok(WeylOrbitStats { theta: [theta1, theta2], x, boxes, discrepancy })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SinBoxCheck {
    pub empirical: f64,
    pub predicted: f64,
    /// Period of `ν ↦ sin(νθᵢ)` when `θᵢ/2π` is (screened as) rational.
    pub periods: [Option<u64>; 2],
}

/// Fraction of `2 ≤ ν ≤ x+1` with `(sin νθ₁, sin νθ₂) ∈ [a, b]²`, against
/// the equidistributed prediction `sin_box_measure(a, b)²`.
pub fn sin_box_proportion_check(theta1: f64, theta2: f64, a: f64, b: f64, x: u64) -> Result<SinBoxCheck> {
    let predicted = sin_box_measure(a, b)?.powi(2);
    if x == 0 {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    let inside = |s: f64| a <= s && s <= b;
    let hits = (2..=x + 1)
        .filter(|&nu| {
            let k = nu as f64;
            inside((k * theta1).sin()) && inside((k * theta2).sin())
        })
        .count();
    let period = |theta: f64| {
        let folded = theta.rem_euclid(2.0 * PI);
        if folded == 0.0 {
            return Some(1);
        }
        let r = rational_screen(folded, crate::angles::DEFAULT_HEIGHT, crate::angles::DEFAULT_TOLERANCE)?;
        // θ/2π = numerator / (2·denominator) in lowest terms.
        let (num, den) = (r.numerator.unsigned_abs(), 2 * r.denominator);
        Some(den / gcd(num, den))
    };
    Ok(SinBoxCheck { empirical: hits as f64 / x as f64, predicted, periods: [period(theta1), period(theta2)] })
}

/// Primes whose angle pair lands in `u1 × u2`.
pub fn count_in_rectangle(pairs: &[(f64, f64)], u1: &IntervalUnion, u2: &IntervalUnion) -> u64 {
    pairs.iter().filter(|(a, b)| u1.contains(*a) && u2.contains(*b)).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::relation_search;
    use crate::measures::{product_measure, sign_interval_union, Sign};
    use crate::newforms::{build_table, NewformSpec};
    use std::sync::OnceLock;

    fn tables() -> &'static (EigenvalueTable, EigenvalueTable) {
        static T: OnceLock<(EigenvalueTable, EigenvalueTable)> = OnceLock::new();
        T.get_or_init(|| {
            (build_table(&NewformSpec::delta(), 100_000).unwrap(), build_table(&NewformSpec::ec11(), 100_000).unwrap())
        })
    }

    #[test]
    fn report_partitions_range() {
        let r = SignDensityReport::new(10, SignCounts { positive: 5, negative: 3, zero: 2 });
        assert_eq!(r.denominator, 10);
        let d = r.densities;
        assert!((d.positive + d.negative + d.zero - 1.0).abs() <= 1e-15);
        assert_eq!(d.nonnegative, 0.7);
        let nz = r.nonzero_densities.unwrap();
        assert_eq!(nz.positive, 5.0 / 8.0);
    }

    #[test]
    fn full_box_and_degenerate_orbit() {
        assert_eq!(weyl_box_proportion(1.0, 2.0, &UnitBox::unit(), 1_000).unwrap(), 1.0);
        let corner = UnitBox::new(0.0, 0.1, 0.0, 0.1).unwrap();
        let away = UnitBox::new(0.2, 0.3, 0.0, 1.0).unwrap();
        assert_eq!(weyl_box_proportion(0.0, 0.0, &corner, 500).unwrap(), 1.0);
        assert_eq!(weyl_box_proportion(0.0, 0.0, &away, 500).unwrap(), 0.0);
        assert!(UnitBox::new(0.5, 0.4, 0.0, 1.0).is_err());
        assert!(UnitBox::new(0.0, 1.1, 0.0, 1.0).is_err());
    }

    #[test]
    fn identical_tables_never_negative() {
        let (d, _) = tables();
        let r = sign_product_proportion_nu(d, d, 5, 10_000).unwrap();
        assert_eq!(r.report.counts.negative, 0);
        for nu in [1, 3, 5] {
            assert_eq!(prime_sign_density(d, d, nu, 10_000).unwrap().report.counts.negative, 0);
        }
    }

    #[test]
    fn nu_experiment_delta_conductor_11() {
        let (d, e) = tables();
        let r = sign_product_proportion_nu(d, e, 5, 1_000_000).unwrap();
        assert!(r.path_deviation <= PATH_TOLERANCE);
        assert_eq!(r.report.denominator, 1_000_000);
        assert!((r.report.densities.positive - 0.5).abs() < 0.02, "{:?}", r.report.densities);
        // No zero terms here, so both normalizations coincide.
        assert_eq!(r.report.counts.zero, 0);
        assert_eq!(r.report.nonzero_densities.unwrap().positive, r.report.densities.positive);

        let bx = UnitBox::new(0.0, 0.5, 0.0, 0.5).unwrap();
        let w = weyl_box_proportion(r.theta[0], r.theta[1], &bx, 1_000_000).unwrap();
        assert!((w - 0.25).abs() < 0.01, "{w}");

        let screen = relation_search(r.theta[0], r.theta[1], 100, 1e-9).unwrap();
        assert!(!screen.found);
        let s = sin_box_proportion_check(r.theta[0], r.theta[1], 0.0, 1.0, 1_000_000).unwrap();
        assert_eq!(s.predicted, 0.25);
        assert!((s.empirical - 0.25).abs() < 0.02);
        assert_eq!(s.periods, [None, None]);
    }

    #[test]
    fn degenerate_and_ramified_rejected() {
        let (d, e) = tables();
        assert!(matches!(sign_product_proportion_nu(d, e, 11, 10), Err(Error::RamifiedPrime { .. })));
        assert!(matches!(prime_sign_density(d, e, 2, 100), Err(Error::EvenNu(2))));
        assert!(prime_sign_density(d, e, 1, 200_000).is_err());
    }

    #[test]
    fn prime_density_delta_conductor_11() {
        let (d, e) = tables();
        let r = prime_sign_density(d, e, 1, 100_000).unwrap();
        assert_eq!(r.integer_mismatches, Some(0));
        assert_eq!(r.excluded, vec![11]);
        assert_eq!(r.report.denominator, 9_592 - 1);
        assert!((r.report.densities.positive - 0.5).abs() < 0.03);
        assert!(r.report.densities.zero <= 0.01);
        let c = r.report.counts;
        assert_eq!((c.positive + c.zero) + c.negative, r.report.denominator);
    }

    #[test]
    fn pair_histogram_basics() {
        let pairs = synthetic_pairs(1_000, 7);
        let h = PairHistogram::from_angles(&pairs, 1).unwrap();
        assert_eq!(h.counts, vec![1_000]);
        assert_eq!(h.chi_square(), 0.0);
        let h8 = PairHistogram::from_angles(&pairs, 8).unwrap();
        assert_eq!(h8.counts.iter().sum::<u64>(), h8.total);
        assert!((h8.expected.iter().sum::<f64>() - h8.total as f64).abs() < 1e-9);
        assert!(h8.to_csv().starts_with("i,j,observed,expected\n0,0,"));
        assert_eq!(h8.to_csv().lines().count(), 65);
    }

    #[test]
    fn synthetic_sampler_calibration() {
        let small = synthetic_pairs(1_000, 42);
        let large = synthetic_pairs(100_000, 42);
        assert_eq!(&large[..1_000], &small[..]);
        let r = pair_st_from_angles(&large, 8, 0).unwrap();
        assert!(r.ks[0] <= 0.01 && r.ks[1] <= 0.01, "{:?}", r.ks);
        let coarse = pair_st_from_angles(&small, 8, 0).unwrap();
        assert!(coarse.ks[0] > r.ks[0]);
    }

    #[test]
    fn rectangle_counts_follow_product_measure() {
        let pairs = synthetic_pairs(100_000, 3);
        let pos = sign_interval_union(3, Sign::Positive).unwrap();
        let neg = sign_interval_union(3, Sign::Negative).unwrap();
        let frac = count_in_rectangle(&pairs, &pos, &neg) as f64 / pairs.len() as f64;
        assert!((frac - product_measure(&pos, &neg)).abs() < 0.01);
    }

    #[test]
    fn sin_box_full_and_periodic() {
        let full = sin_box_proportion_check(0.3, 1.7, -1.0, 1.0, 1_000).unwrap();
        assert_eq!((full.empirical, full.predicted), (1.0, 1.0));
        let rational = sin_box_proportion_check(PI / 3.0, 1.7, 0.0, 1.0, 600).unwrap();
        assert_eq!(rational.periods, [Some(6), None]);
        let quarter = sin_box_proportion_check(PI / 2.0, PI / 2.0, -1.0, 1.0, 10).unwrap();
        assert_eq!(quarter.periods, [Some(4), Some(4)]);
    }

    #[test]
    fn discrepancy_shrinks() {
        let (t1, t2) = (1.234_567, 2.345_678);
        let short = weyl_orbit_stats(t1, t2, 1_000, &[]).unwrap();
        let long = weyl_orbit_stats(t1, t2, 200_000, &[UnitBox::unit()]).unwrap();
        assert!(long.discrepancy < short.discrepancy);
        assert!(long.discrepancy < 0.01);
        assert_eq!(long.boxes[0].count, 200_000);
        for (a, b) in weyl_orbit(t1, t2).take(10_000) {
            assert!((0.0..1.0).contains(&a) && (0.0..1.0).contains(&b));
        }
    }
}
