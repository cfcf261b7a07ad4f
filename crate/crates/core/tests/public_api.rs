use std::f64::consts::PI;

use hecke_signs::angles::{angle, relation_search};
use hecke_signs::arith::{divisors, factorize, kronecker, mobius, sieve};
use hecke_signs::measures::{
    epsilon_interval_union, sign_interval_union, st_cdf, st_density, st_inverse_cdf, st_measure, Sign,
};
use hecke_signs::newforms::{build_table, ec_ap, hecke_recurrence, sin_quotient, EllipticCurve, NewformSpec};
use hecke_signs::qseries::{eta_power_24_delta, euler_product};
use proptest::prelude::*;

fn is_prime_trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Coefficients of q·∏(1−qⁿ)²(1−q¹¹ⁿ)², shifted so index n − 1 holds the q^n coefficient.
fn eta_11(bound: usize) -> Vec<i64> {
    let mut c = vec![0i64; bound];
    c[0] = 1;
    let mut times = |step: usize| {
        for i in (step..bound).rev() {
            c[i] -= c[i - step];
        }
    };
    for m in 1..bound {
        times(m);
        times(m);
        if 11 * m < bound {
            times(11 * m);
            times(11 * m);
        }
    }
    c
}

fn affine_points(curve: &EllipticCurve, p: u64) -> u64 {
    let p = p as i64;
    let m = |v: i64| v.rem_euclid(p);
    let mut count = 0;
    for x in 0..p {
        let rhs = m(m(m(x * x) * x) + curve.a2 * m(x * x) + curve.a4 * x + curve.a6);
        for y in 0..p {
            let lhs = m(m(y * y) + curve.a1 * m(x * y) + curve.a3 * y);
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn sieve_matches_trial_division() {
    let s = sieve(5000).unwrap();
    for n in 0..=5000 {
        assert_eq!(s.is_prime(n).unwrap(), is_prime_trial(n), "n = {n}");
    }
    assert_eq!(s.prime_pi(5000).unwrap(), (0..=5000).filter(|&n| is_prime_trial(n)).count() as u64);
}

#[test]
fn euler_product_is_pentagonal() {
    let bound = 3000;
    let e = euler_product(bound);
    let mut expected = vec![0i128; bound + 1];
    for k in 0i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let (a, b) = ((k * (3 * k - 1) / 2) as usize, (k * (3 * k + 1) / 2) as usize);
        if a > bound {
            break;
        }
        expected[a] = sign;
        if b <= bound {
            expected[b] = sign;
        }
    }
    for (n, &want) in expected.iter().enumerate() {
        assert_eq!(e.coeff(n), want, "n = {n}");
    }
}

#[test]
fn tau_satisfies_ramanujan_congruence_and_hecke_relations() {
    let bound = 2000;
    let delta = eta_power_24_delta(bound).unwrap();
    let tau = |n: usize| delta.coeff(n);
    assert_eq!(tau(1), 1);
    for n in 1..=bound as u64 {
        let sigma = divisors(n).iter().fold(0u64, |acc, &d| (acc + pow_mod(d, 11, 691)) % 691);
        assert_eq!(tau(n as usize).rem_euclid(691) as u64, sigma, "n = {n}");
    }
    for p in (2..=44u64).filter(|&p| is_prime_trial(p)) {
        let tp = tau(p as usize);
        assert_eq!(tau((p * p) as usize), tp * tp - (p as i128).pow(11), "p = {p}");
    }
    for (m, n) in [(2, 3), (3, 5), (4, 7), (5, 9), (8, 11), (16, 27), (25, 49)] {
        assert_eq!(tau(m * n), tau(m) * tau(n), "{m} x {n}");
    }
}

#[test]
fn ec11_table_matches_eta_product() {
    let bound = 3000;
    let eta = eta_11(bound + 1);
    let table = build_table(&NewformSpec::ec11(), bound as u64).unwrap();
    assert_eq!(table.len(), (2..=bound as u64).filter(|&p| is_prime_trial(p) && p != 11).count());
    for e in table.entries() {
        assert_eq!(e.ap, eta[e.p as usize - 1] as i128, "p = {}", e.p);
        assert!(e.lambda.abs() <= 2.0);
    }
}

#[test]
fn ec37_traces_match_point_count() {
    let curve = EllipticCurve::CONDUCTOR_37;
    for p in (3..400u64).filter(|&p| is_prime_trial(p) && p != 37) {
        assert_eq!(ec_ap(&curve, p).unwrap(), p as i64 - affine_points(&curve, p) as i64, "p = {p}");
    }
}

#[test]
fn odd_sign_unions_split_measure_evenly() {
    let panels = 200_000;
    for nu in [1u32, 3, 5, 11, 49] {
        let pos = sign_interval_union(nu, Sign::Positive).unwrap();
        let neg = sign_interval_union(nu, Sign::Negative).unwrap();
        assert!((st_measure(&pos) - 0.5).abs() < 1e-12);
        assert!((st_measure(&pos) + st_measure(&neg) - 1.0).abs() < 1e-12);
        let h = PI / panels as f64;
        let direct: f64 = (0..panels)
            .map(|i| (i as f64 + 0.5) * h)
            .filter(|&t| ((nu + 1) as f64 * t).sin() > 0.0)
            .map(|t| st_density(t) * h)
            .sum();
        assert!((direct - st_measure(&pos)).abs() < 1e-4, "nu = {nu}: {direct}");
    }
}

proptest! {
    #[test]
    fn kronecker_is_euler_criterion(a in -10_000i64..10_000, idx in 1usize..200) {
        let p = (3u64..).filter(|&n| is_prime_trial(n)).nth(idx).unwrap();
        let e = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
        let expected = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
        prop_assert_eq!(kronecker(a, p as i64), expected);
    }

    #[test]
    fn factorization_divisors_and_mobius_agree(n in 1u64..200_000) {
        let f = factorize(n);
        prop_assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        prop_assert!(f.iter().all(|&(p, _)| is_prime_trial(p)));
        let d = divisors(n);
        prop_assert_eq!(d.len() as u32, f.iter().map(|&(_, e)| e + 1).product::<u32>());
        prop_assert!(d.iter().all(|x| n % x == 0));
        let mu_sum: i64 = d.iter().map(|&x| mobius(x) as i64).sum();
        prop_assert_eq!(mu_sum, i64::from(n == 1));
    }

    #[test]
    fn recurrence_equals_sin_quotient(lambda in -1.999f64..1.999, nu in 0u32..200) {
        let a = hecke_recurrence(lambda, nu);
        let b = sin_quotient(angle(lambda).unwrap(), nu);
        prop_assert!((a - b).abs() / a.abs().max(1.0) < 1e-9, "{} vs {}", a, b);
        prop_assert!(a.abs() <= (nu + 1) as f64 + 1e-9);
    }

    #[test]
    fn inverse_cdf_inverts_cdf(u in 0.0f64..=1.0) {
        let theta = st_inverse_cdf(u).unwrap();
        prop_assert!((0.0..=PI).contains(&theta));
        prop_assert!((st_cdf(theta).unwrap() - u).abs() < 1e-10);
    }

    #[test]
    fn epsilon_unions_shrink(half in 0u32..30, e1 in 0.0f64..0.99, e2 in 0.0f64..0.99) {
        let nu = 2 * half + 1;
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        for primed in [false, true] {
            let wide = epsilon_interval_union(nu, lo, primed).unwrap();
            let narrow = epsilon_interval_union(nu, hi, primed).unwrap();
            prop_assert!(st_measure(&narrow) <= st_measure(&wide) + 1e-12);
            for &(a, b) in narrow.parts() {
                let mid = (a + b) / 2.0;
                prop_assert!(wide.contains(mid));
                let s = ((nu + 1) as f64 * mid).sin();
                let inside = if primed { s < -hi } else { s > hi };
                prop_assert!(inside || (s.abs() - hi).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn planted_relation_is_found(t in 0.1f64..3.0) {
        let (t1, t2) = (t, PI - t);
        let report = relation_search(t1, t2, 10, 1e-9).unwrap();
        prop_assert!(report.found);
        let r = report.relation.unwrap();
        let residual = (r.m as f64 * t1 / (2.0 * PI) + r.n as f64 * t2 / (2.0 * PI) - r.c as f64).abs();
        prop_assert!(residual < 1e-9);
        prop_assert!(r.m != 0 || r.n != 0);
    }
}
