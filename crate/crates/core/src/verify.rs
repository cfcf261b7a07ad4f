//! The acceptance experiments, runnable as library calls.
//!
//! Each `criterion_*` function measures one property and returns a
//! [`Report`] whose checks hold the thresholds from [`VerifyConfig`].

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::angles::relation_search;
use crate::arith::sieve;
use crate::equidist::{
    pair_st_from_angles, pair_st_gof, path_deviation, prime_sign_density, sign_product_proportion_nu,
    sin_box_proportion_check, synthetic_pairs, weyl_box_proportion, UnitBox,
};
use crate::error::Result;
use crate::halfint::{
    epsilon_containment, forward_series, halfint_normalized, halfint_normalized_by_inversion, halfint_sign_density,
    inverse_series, random_series, random_spec, sign_agreement, HalfIntForm, HalfIntegralSpec,
};
use crate::measures::{
    epsilon_interval_union, product_measure, sign_interval_union, st_measure, st_measure_quadrature, IntervalUnion,
    Sign,
};
use crate::newforms::{check_deligne, ec_ap_scan, EigenvalueTable, NewformSpec, Source};
use crate::qseries::eta_power_24_delta;
use crate::report::{sign_density_csv, summary_table, write_file, Check, Report};

/// Bounds, sample sizes and tolerances of the acceptance experiments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub seed: u64,
    pub delta_limit: u64,
    pub curve_limit: u64,
    pub round_trip_specs: u32,
    pub round_trip_bound: u64,
    pub identity_limit: u64,
    pub identity_max_nu: u32,
    pub identity_tolerance: f64,
    pub scan_samples: u32,
    pub measure_max_nu: u32,
    pub measure_tolerance: f64,
    pub quadrature_panels: usize,
    pub quadrature_tolerance: f64,
    pub nu_prime: u64,
    pub nu_x: u64,
    pub relation_height: u32,
    pub relation_tolerance: f64,
    pub nu_band: (f64, f64),
    pub prime_limit: u64,
    pub prime_nus: Vec<u32>,
    pub prime_band: (f64, f64),
    pub zero_density_max: f64,
    pub bins: usize,
    pub cell_deviation_max: f64,
    pub ks_max: f64,
    pub synthetic_samples: usize,
    pub synthetic_ks_max: f64,
    pub halfint_nus: Vec<u32>,
    pub halfint_band: (f64, f64),
    pub epsilons: Vec<f64>,
    pub sign_draws: u64,
    pub sign_max_nu: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            delta_limit: 100_000,
            curve_limit: 1_000_000,
            round_trip_specs: 100,
            round_trip_bound: 200,
            identity_limit: 10_000,
            identity_max_nu: 200,
            identity_tolerance: 1e-9,
            scan_samples: 100,
            measure_max_nu: 99,
            measure_tolerance: 1e-12,
            quadrature_panels: 1_000_000,
            quadrature_tolerance: 1e-9,
            nu_prime: 5,
            nu_x: 1_000_000,
            relation_height: 1_000,
            relation_tolerance: 1e-9,
            nu_band: (0.48, 0.52),
            prime_limit: 100_000,
            prime_nus: vec![1, 3, 5],
            prime_band: (0.47, 0.53),
            zero_density_max: 0.01,
            bins: 8,
            cell_deviation_max: 0.15,
            ks_max: 0.02,
            synthetic_samples: 100_000,
            synthetic_ks_max: 0.01,
            halfint_nus: vec![1, 3],
            halfint_band: (0.47, 0.53),
            epsilons: vec![0.5, 0.1, 0.01],
            sign_draws: 10_000,
            sign_max_nu: 50,
        }
    }
}

/// Eigenvalue tables of the three preset forms.
pub struct Tables {
    pub delta: EigenvalueTable,
    pub ec11: EigenvalueTable,
    pub ec37: EigenvalueTable,
}

impl Tables {
    pub fn load(
        cfg: &VerifyConfig,
        mut load: impl FnMut(&NewformSpec, u64) -> Result<EigenvalueTable>,
    ) -> Result<Self> {
        Ok(Self {
            delta: load(&NewformSpec::delta(), cfg.delta_limit)?,
            ec11: load(&NewformSpec::ec11(), cfg.curve_limit)?,
            ec37: load(&NewformSpec::ec37(), cfg.curve_limit)?,
        })
    }
}

/// Result of one criterion, with any extra files it produces.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub report: Report,
    pub artifacts: Vec<(String, String)>,
}

impl Outcome {
    fn new(id: u32, name: &'static str, report: Report, cfg: &VerifyConfig) -> Result<Self> {
        Ok(Self { id, name, report: report.with_config(cfg)?, artifacts: Vec::new() })
    }

    pub fn passed(&self) -> bool {
        self.report.passed
    }

    pub fn file_stem(&self) -> String {
        format!("criterion-{}-{}", self.id, self.name)
    }

    /// The failing checks, or a count of passing ones.
    pub fn detail(&self) -> String {
        let failed: Vec<String> = self
            .report
            .failed_checks()
            .map(|c| {
                let bound = match (c.lower, c.upper) {
                    (Some(l), Some(u)) => format!("[{l}, {u}]"),
                    (None, Some(u)) => format!("<= {u}"),
                    (Some(l), None) => format!(">= {l}"),
                    (None, None) => String::new(),
                };
                format!("{} = {} not {bound}", c.name, c.value)
            })
            .collect();
        if failed.is_empty() {
            format!("{} checks", self.report.checks.len())
        } else {
            failed.join("; ")
        }
    }
}

fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

/// Exact identities: multiplicativity of τ, the prime-power recurrence, and
/// the Shimura round trip on random specs.
pub fn criterion_1(cfg: &VerifyConfig) -> Result<Outcome> {
    let n_max = cfg.delta_limit as usize;
    let tau = eta_power_24_delta(n_max)?;
    let spf = smallest_prime_factors(n_max);
    let (mut mult_checked, mut mult_failures, mut overflows) = (0u64, 0u64, 0u64);
    for (n, &p) in spf.iter().enumerate().skip(2) {
        let p = p as usize;
        let (mut m, mut pe) = (n, 1);
        while m % p == 0 {
            m /= p;
            pe *= p;
        }
        if m == 1 {
            continue;
        }
        mult_checked += 1;
        match tau.coeff(pe).checked_mul(tau.coeff(m)) {
            Some(v) => mult_failures += (v != tau.coeff(n)) as u64,
            None => overflows += 1,
        }
    }
    let (mut rec_checked, mut rec_failures) = (0u64, 0u64);
    for p in (2..=n_max).filter(|&p| spf[p] as usize == p && p * p <= n_max) {
        let p11 = (p as i128).pow(11);
        let (mut prev, mut pe) = (1usize, p);
        while pe * p <= n_max {
            rec_checked += 1;
            let rhs = tau
                .coeff(p)
                .checked_mul(tau.coeff(pe))
                .zip(p11.checked_mul(tau.coeff(prev)))
                .and_then(|(a, b)| a.checked_sub(b));
            match rhs {
                Some(v) => rec_failures += (v != tau.coeff(pe * p)) as u64,
                None => overflows += 1,
            }
            (prev, pe) = (pe, pe * p);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut round_trip_failures = Vec::new();
    for _ in 0..cfg.round_trip_specs {
        let spec = random_spec(&mut rng);
        let a = random_series(&mut rng, cfg.round_trip_bound);
        if inverse_series(&spec, &forward_series(&spec, &a)?)? != a {
            round_trip_failures.push(spec.label.clone());
        }
    }
    let mut report = Report::new(
        "exact-arithmetic",
        json!({"limit": cfg.delta_limit, "specs": cfg.round_trip_specs, "bound": cfg.round_trip_bound, "seed": cfg.seed}),
        json!({
            "tau_2": tau.coeff(2).to_string(),
            "multiplicativity_checked": mult_checked,
            "multiplicativity_failures": mult_failures,
            "recurrence_checked": rec_checked,
            "recurrence_failures": rec_failures,
            "overflows": overflows,
            "round_trip_failures": round_trip_failures,
        }),
    )?;
    report
        .check(Check::zero("tau multiplicativity failures", mult_failures))
        .check(Check::zero("tau prime-power recurrence failures", rec_failures))
        .check(Check::zero("i128 overflows", overflows))
        .check(Check::zero("Shimura round-trip failures", round_trip_failures.len() as u64));
    Outcome::new(1, "exact-arithmetic", report, cfg)
}

/// Recurrence against `sin((ν+1)θ)/sin θ` for both forms of the main pair.
pub fn criterion_2(cfg: &VerifyConfig, tables: &Tables) -> Result<Outcome> {
    let mut worst = Vec::new();
    let mut report_checks = Vec::new();
    for table in [&tables.delta, &tables.ec11] {
        let (p, dev) = table
            .entries()
            .iter()
            .take_while(|e| e.p <= cfg.identity_limit)
            .map(|e| (e.p, path_deviation(e.lambda, cfg.identity_max_nu)))
            .fold((0, 0.0f64), |acc, x| if x.1 > acc.1 { x } else { acc });
        worst.push(json!({"form": table.label(), "worst_prime": p, "max_relative_deviation": dev}));
        report_checks.push(Check::at_most(
            format!("{} max relative deviation", table.label()),
            dev,
            cfg.identity_tolerance,
        ));
    }
    let mut report = Report::new(
        "identity-equivalence",
        json!({"limit": cfg.identity_limit, "max_nu": cfg.identity_max_nu}),
        json!({"forms": worst}),
    )?;
    report.tolerance("relative", cfg.identity_tolerance);
    for c in report_checks {
        report.check(c);
    }
    Outcome::new(2, "identity-equivalence", report, cfg)
}

/// Deligne bound at every tabulated prime, table completeness, and a
/// sample of the fast curve traces against the direct point count.
pub fn criterion_3(cfg: &VerifyConfig, tables: &Tables) -> Result<Outcome> {
    let limit = cfg.delta_limit.max(cfg.curve_limit);
    let primes = sieve(limit.max(2))?;
    let mut forms = Vec::new();
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x3);
    for table in [&tables.delta, &tables.ec11, &tables.ec37] {
        let spec = table.spec();
        let violations = table
            .entries()
            .iter()
            .filter(|e| e.lambda.abs() > 2.0 || check_deligne(&spec.label, e.p, e.ap, spec.weight, e.lambda).is_err())
            .count() as u64;
        let expected = primes.primes_up_to(table.bound()).filter(|&p| spec.level % p != 0).count();
        let max_lambda = table.entries().iter().map(|e| e.lambda.abs()).fold(0.0, f64::max);
        let mut scan_mismatches = Vec::new();
        let mut scanned = 0u32;
        if let Source::EllipticCurve(curve) = &spec.source {
            let upper: Vec<_> = table.entries().iter().filter(|e| e.p > table.bound() / 2).collect();
            for _ in 0..cfg.scan_samples.min(upper.len() as u32) {
                let e = upper[rng.gen_range(0..upper.len())];
                scanned += 1;
                if ec_ap_scan(curve, e.p)? as i128 != e.ap {
                    scan_mismatches.push(e.p);
                }
            }
        }
        forms.push(json!({
            "form": spec.label,
            "bound": table.bound(),
            "primes": table.len(),
            "expected_primes": expected,
            "max_abs_lambda": max_lambda,
            "violations": violations,
            "scan_samples": scanned,
            "scan_mismatches": scan_mismatches,
        }));
        checks.push(Check::zero(format!("{} Deligne violations", spec.label), violations));
        checks.push(Check::zero(
            format!("{} missing primes", spec.label),
            (expected as u64).saturating_sub(table.len() as u64),
        ));
        checks.push(Check::zero(format!("{} scan mismatches", spec.label), scan_mismatches.len() as u64));
    }
    let mut report = Report::new(
        "deligne-bound",
        json!({"delta_limit": cfg.delta_limit, "curve_limit": cfg.curve_limit, "scan_samples": cfg.scan_samples}),
        json!({"forms": forms}),
    )?;
    for c in checks {
        report.check(c);
    }
    Outcome::new(3, "deligne-bound", report, cfg)
}

/// Half mass of the sign unions, quarter mass of sign quadrants, and the
/// closed form against quadrature, for odd `ν ≤ 99`.
pub fn criterion_4(cfg: &VerifyConfig) -> Result<Outcome> {
    let (mut half_err, mut quad_err, mut eps_err, mut quadrature_err) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut nus = 0u32;
    for nu in (1..=cfg.measure_max_nu).step_by(2) {
        nus += 1;
        let pos = sign_interval_union(nu, Sign::Positive)?;
        let neg = sign_interval_union(nu, Sign::Negative)?;
        half_err = half_err.max((st_measure(&pos) - 0.5).abs()).max((st_measure(&neg) - 0.5).abs());
        for (a, b) in [(&pos, &pos), (&pos, &neg), (&neg, &pos), (&neg, &neg)] {
            quad_err = quad_err.max((product_measure(a, b) - 0.25).abs());
        }
        for primed in [false, true] {
            let u = epsilon_interval_union(nu, 0.0, primed)?;
            eps_err = eps_err.max((product_measure(&u, &u) - 0.25).abs());
        }
        for u in [&pos, &neg] {
            quadrature_err =
                quadrature_err.max((st_measure_quadrature(u, cfg.quadrature_panels) - st_measure(u)).abs());
        }
    }
    let full = IntervalUnion::full();
    quadrature_err = quadrature_err.max((st_measure_quadrature(&full, cfg.quadrature_panels) - 1.0).abs());
    let mut report = Report::new(
        "measure-identities",
        json!({"max_nu": cfg.measure_max_nu, "panels": cfg.quadrature_panels}),
        json!({
            "odd_nu_count": nus,
            "half_mass_error": half_err,
            "quadrant_error": quad_err,
            "epsilon_zero_error": eps_err,
            "quadrature_error": quadrature_err,
        }),
    )?;
    report
        .tolerance("closed_form", cfg.measure_tolerance)
        .tolerance("quadrature", cfg.quadrature_tolerance)
        .check(Check::at_most("st_measure(A>0) - 1/2", half_err, cfg.measure_tolerance))
        .check(Check::at_most("quadrant product measure - 1/4", quad_err, cfg.measure_tolerance))
        .check(Check::at_most("I x I and I' x I' measure - 1/4", eps_err, cfg.measure_tolerance))
        .check(Check::at_most("closed form vs quadrature", quadrature_err, cfg.quadrature_tolerance));
    Outcome::new(4, "measure-identities", report, cfg)
}

/// Signs of `λ₁(p^ν)λ₂(p^ν)` along `ν` at a fixed prime, with the independence screen.
pub fn criterion_5(cfg: &VerifyConfig, tables: &Tables) -> Result<Outcome> {
    let r = sign_product_proportion_nu(&tables.delta, &tables.ec11, cfg.nu_prime, cfg.nu_x)?;
    let screen = relation_search(r.theta[0], r.theta[1], cfg.relation_height, cfg.relation_tolerance)?;
    let quarter = UnitBox::new(0.0, 0.5, 0.0, 0.5)?;
    let weyl = weyl_box_proportion(r.theta[0], r.theta[1], &quarter, cfg.nu_x)?;
    let sin_box = sin_box_proportion_check(r.theta[0], r.theta[1], 0.0, 1.0, cfg.nu_x)?;
    let mut report = Report::new(
        "nu-sign-density",
        json!({"forms": ["delta", "ec11"], "p": cfg.nu_prime, "x": cfg.nu_x,
               "relation_height": cfg.relation_height, "relation_tolerance": cfg.relation_tolerance}),
        json!({
            "sign": r,
            "independence_screen": screen.summary(),
            "screen": screen,
            "weyl_quarter_box": weyl,
            "sin_box_positive_quadrant": sin_box,
        }),
    )?;
    report
        .tolerance("positive_band_low", cfg.nu_band.0)
        .tolerance("positive_band_high", cfg.nu_band.1)
        .check(Check::zero("relations found by screen", screen.found as u64))
        .check(Check::within("positive proportion", r.report.densities.positive, cfg.nu_band.0, cfg.nu_band.1));
    if let Some(nz) = r.report.nonzero_densities {
        report.check(Check::within("positive proportion among nonzero", nz.positive, cfg.nu_band.0, cfg.nu_band.1));
    }
    Outcome::new(5, "nu-sign-density", report, cfg)
}

/// Prime sign densities of `λ₁(p^ν)λ₂(p^ν)` for odd `ν`.
pub fn criterion_6(cfg: &VerifyConfig, tables: &Tables) -> Result<Outcome> {
    let mut runs = Vec::new();
    let mut checks = Vec::new();
    let mut artifacts = Vec::new();
    for &nu in &cfg.prime_nus {
        let r = prime_sign_density(&tables.delta, &tables.ec11, nu, cfg.prime_limit)?;
        let c = r.report.counts;
        let d = r.report.densities;
        let (lo, hi) = cfg.prime_band;
        checks.push(Check::within(format!("nu={nu} positive density"), d.positive, lo, hi));
        checks.push(Check::within(format!("nu={nu} negative density"), d.negative, lo, hi));
        checks.push(Check::at_most(format!("nu={nu} zero density"), d.zero, cfg.zero_density_max));
        let complement = (c.positive + c.zero + c.negative).abs_diff(r.report.denominator)
            + (c.negative + c.zero + c.positive).abs_diff(r.report.denominator);
        checks.push(Check::zero(format!("nu={nu} closed-class complement defect"), complement));
        if let Some(m) = r.integer_mismatches {
            checks.push(Check::zero(format!("nu={nu} float vs integer sign mismatches"), m));
        }
        artifacts.push((format!("prime-density-nu{nu}.csv"), sign_density_csv(&r.report)));
        runs.push(r);
    }
    let mut report = Report::new(
        "prime-sign-density",
        json!({"forms": ["delta", "ec11"], "limit": cfg.prime_limit, "nus": cfg.prime_nus}),
        json!({"runs": runs}),
    )?;
    report
        .tolerance("band_low", cfg.prime_band.0)
        .tolerance("band_high", cfg.prime_band.1)
        .tolerance("zero_density_max", cfg.zero_density_max);
    for c in checks {
        report.check(c);
    }
    let mut out = Outcome::new(6, "prime-sign-density", report, cfg)?;
    out.artifacts = artifacts;
    Ok(out)
}

/// Pair histogram against the product Sato-Tate measure, plus the sampler control.
pub fn criterion_7(cfg: &VerifyConfig, tables: &Tables) -> Result<Outcome> {
    let r = pair_st_gof(&tables.delta, &tables.ec11, cfg.prime_limit, cfg.bins)?;
    let synthetic = pair_st_from_angles(&synthetic_pairs(cfg.synthetic_samples, cfg.seed), cfg.bins, 0)?;
    // Exact product-measure samples of the same size, as a reference for the per-cell bound.
    let same_size = pair_st_from_angles(&synthetic_pairs(r.histogram.total as usize, cfg.seed), cfg.bins, 0)?;
    let deviations = r.histogram.relative_deviations();
    let cells_over = deviations.iter().filter(|&&d| d > cfg.cell_deviation_max).count();
    let mut report = Report::new(
        "pair-sato-tate",
        json!({"forms": ["delta", "ec11"], "limit": cfg.prime_limit, "bins": cfg.bins,
               "synthetic_samples": cfg.synthetic_samples, "seed": cfg.seed}),
        json!({
            "primes": r.histogram.total,
            "chi_square": r.chi_square,
            "degrees_of_freedom": cfg.bins * cfg.bins - 1,
            "ks": r.ks,
            "max_relative_deviation": r.max_relative_deviation,
            "cells_over_threshold": cells_over,
            "min_expected": r.min_expected,
            "synthetic_ks": synthetic.ks,
            "synthetic_chi_square": synthetic.chi_square,
            "same_size_synthetic_max_relative_deviation": same_size.max_relative_deviation,
            "same_size_synthetic_chi_square": same_size.chi_square,
        }),
    )?;
    report
        .tolerance("cell_relative_deviation", cfg.cell_deviation_max)
        .tolerance("ks", cfg.ks_max)
        .tolerance("synthetic_ks", cfg.synthetic_ks_max)
        .check(Check::at_most("max cell relative deviation", r.max_relative_deviation, cfg.cell_deviation_max))
        .check(Check::at_most("KS theta_1", r.ks[0], cfg.ks_max))
        .check(Check::at_most("KS theta_2", r.ks[1], cfg.ks_max))
        .check(Check::at_most("synthetic KS theta_1", synthetic.ks[0], cfg.synthetic_ks_max))
        .check(Check::at_most("synthetic KS theta_2", synthetic.ks[1], cfg.synthetic_ks_max));
    let mut out = Outcome::new(7, "pair-sato-tate", report, cfg)?;
    out.artifacts.push(("pair-histogram.csv".into(), r.histogram.to_csv()));
    Ok(out)
}

/// Sign densities of synthesized half-integral coefficients, `ε`-containment
/// witnesses and the sign predicate against direct evaluation.
pub fn criterion_8(cfg: &VerifyConfig, tables: &Tables) -> Result<Outcome> {
    let dh = HalfIntegralSpec::delta_half();
    let eh = HalfIntegralSpec::ec11_half();
    let f1 = HalfIntForm::new(&dh, &tables.delta)?;
    let f2 = HalfIntForm::new(&eh, &tables.ec11)?;
    let mut checks = Vec::new();
    let mut densities = Vec::new();
    let mut witnesses = Vec::new();
    for &nu in &cfg.halfint_nus {
        let r = halfint_sign_density(f1, f2, nu, cfg.prime_limit)?;
        checks.push(Check::within(
            format!("nu={nu} positive density"),
            r.report.densities.positive,
            cfg.halfint_band.0,
            cfg.halfint_band.1,
        ));
        densities.push(r);
        for &eps in &cfg.epsilons {
            let w = epsilon_containment(f1, f2, nu, eps, cfg.prime_limit)?;
            checks.push(Check::zero(
                format!("nu={nu} eps={eps} containment counterexamples"),
                w.counterexamples.len() as u64,
            ));
            checks.push(Check::zero(
                format!("nu={nu} eps={eps} counting bound failures"),
                !w.counting_bound_holds as u64,
            ));
            witnesses.push(w);
        }
    }
    let mut agreement = Vec::new();
    for (i, form) in [f1, f2].into_iter().enumerate() {
        let a = sign_agreement(form, cfg.prime_limit, cfg.sign_max_nu, cfg.sign_draws, cfg.seed + i as u64)?;
        checks.push(Check::zero(format!("{} sign predicate mismatches", form.spec.label), a.mismatches.len() as u64));
        agreement.push(json!({"form": form.spec.label, "result": a}));
    }
    // The closed-form prime-power relation against the integer Möbius path where the lift coefficients fit in i128.
    let (mut compared, mut worst) = (0u64, 0.0f64);
    for form in [f1, f2] {
        for e in form.table.entries().iter().take_while(|e| e.p < 100).filter(|e| !form.spec.is_excluded(e.p)) {
            for nu in 1..=3 {
                let direct = halfint_normalized(form.spec, form.table, e.p, nu)?;
                let inverted = halfint_normalized_by_inversion(form.spec, form.table, e.p, nu)?;
                worst = worst.max((direct - inverted).abs() / direct.abs().max(1.0));
                compared += 1;
            }
        }
    }
    checks.push(Check::at_most("normalized relation vs Mobius inversion", worst, 1e-9));
    let mut report = Report::new(
        "halfint-sign-density",
        json!({"forms": [dh.label, eh.label], "limit": cfg.prime_limit, "nus": cfg.halfint_nus,
               "epsilons": cfg.epsilons, "draws": cfg.sign_draws, "max_nu": cfg.sign_max_nu, "seed": cfg.seed}),
        json!({
            "densities": densities,
            "containment": witnesses,
            "sign_agreement": agreement,
            "inversion_compared": compared,
            "inversion_max_relative_deviation": worst,
        }),
    )?;
    report.tolerance("band_low", cfg.halfint_band.0).tolerance("band_high", cfg.halfint_band.1);
    for c in checks {
        report.check(c);
    }
    Outcome::new(8, "halfint-sign-density", report, cfg)
}

/// Runs criteria 1–8 in order.
pub fn run_all(cfg: &VerifyConfig, tables: &Tables) -> Result<Vec<Outcome>> {
    Ok(vec![
        criterion_1(cfg)?,
        criterion_2(cfg, tables)?,
        criterion_3(cfg, tables)?,
        criterion_4(cfg)?,
        criterion_5(cfg, tables)?,
        criterion_6(cfg, tables)?,
        criterion_7(cfg, tables)?,
        criterion_8(cfg, tables)?,
    ])
}

pub fn summary(outcomes: &[Outcome]) -> String {
    let rows: Vec<_> = outcomes.iter().map(|o| (o.file_stem(), o.passed(), o.detail())).collect();
    summary_table(&rows)
}

/// Writes one JSON report per criterion, the artifacts, and `summary.txt`.
pub fn write_outcomes(dir: &Path, outcomes: &[Outcome]) -> Result<()> {
    for o in outcomes {
        o.report.write_json(&dir.join(format!("{}.json", o.file_stem())))?;
        for (name, contents) in &o.artifacts {
            write_file(&dir.join(name), contents)?;
        }
    }
    write_file(&dir.join("summary.txt"), &summary(outcomes))
}
