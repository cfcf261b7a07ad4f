//! Pinned thresholds for the acceptance suite in `tests/acceptance.rs`.

use hecke_signs::verify::VerifyConfig;

/// The acceptance configuration, written out in full so that a change to the
/// library defaults cannot silently move a threshold.
pub fn pinned() -> VerifyConfig {
    VerifyConfig {
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
