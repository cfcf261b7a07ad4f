use hecke_signs_browser::{angle_histogram_impl, sign_union_impl, weyl_discrepancy_impl, weyl_points_impl};

#[test]
fn sign_union_endpoints_and_measure() {
    let v = sign_union_impl(1, 0.0, false).unwrap();
    assert_eq!(v.len(), 3);
    assert_eq!(v[0], 0.0);
    assert!((v[1] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert!((v[2] - 0.5).abs() < 1e-12);
    let shrunk = sign_union_impl(5, 0.5, true).unwrap();
    assert_eq!(shrunk.len(), 2 * 3 + 1);
    assert!(*shrunk.last().unwrap() < 0.5);
    assert!(sign_union_impl(2, 0.0, false).is_err());
}

#[test]
fn orbit_points_lie_in_unit_square() {
    let pts = weyl_points_impl(1.0, 2.0, 1000).unwrap();
    assert_eq!(pts.len(), 2000);
    assert!(pts.iter().all(|&x| (0.0..1.0).contains(&x)));
    assert!((pts[0] - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    assert!(weyl_points_impl(1.0, 2.0, 0).is_err());
    let d = weyl_discrepancy_impl(1.2179111140487648, 1.3452829208967654, 100_000).unwrap();
    assert!(d < 0.01);
}

#[test]
fn histogram_matches_sato_tate() {
    let v: serde_json::Value = serde_json::from_str(&angle_histogram_impl("ec11", 20_000, 10).unwrap()).unwrap();
    assert_eq!(v["form"], "ec11");
    let observed: Vec<u64> = serde_json::from_value(v["observed"].clone()).unwrap();
    let expected: Vec<f64> = serde_json::from_value(v["expected"].clone()).unwrap();
    assert_eq!(observed.iter().sum::<u64>(), v["primes"].as_u64().unwrap());
    assert!((expected.iter().sum::<f64>() - observed.iter().sum::<u64>() as f64).abs() < 1e-6);
    assert!(v["ks"].as_f64().unwrap() < 0.03);
    assert!(angle_histogram_impl("nope", 100, 10).is_err());
    assert!(angle_histogram_impl("ec11", 10_000_000, 10).is_err());
}
