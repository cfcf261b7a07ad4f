//! Weierstrass curves over `Z` and their Frobenius traces `a_p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticCurve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

impl EllipticCurve {
    pub const fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        Self { a1, a2, a3, a4, a6 }
    }

    /// Cremona 11a1, conductor 11.
    pub const CONDUCTOR_11: EllipticCurve = EllipticCurve::new(0, -1, 1, -10, -20);
    /// Cremona 37a1, conductor 37.
    pub const CONDUCTOR_37: EllipticCurve = EllipticCurve::new(0, 0, 1, -1, 0);

    fn b_invariants(&self) -> (i128, i128, i128, i128) {
        let (a1, a2, a3, a4, a6) =
            (self.a1 as i128, self.a2 as i128, self.a3 as i128, self.a4 as i128, self.a6 as i128);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    /// Discriminant of this Weierstrass model.
    pub fn discriminant(&self) -> i128 {
        let (b2, b4, b6, b8) = self.b_invariants();
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        self.discriminant() % p as i128 != 0
    }

    fn describe(&self) -> String {
        format!("[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

/// Primes below this are always counted by the linear scan.
const SCAN_THRESHOLD: u64 = 1_000;

/// Trace of Frobenius `a_p = p + 1 − #E(F_p)` at a prime of good reduction.
///
/// Small primes use [`ec_ap_scan`]. Larger primes determine `#E(F_p)` from
/// the orders of a few points by baby-step giant-step over the Hasse
/// interval; when those orders leave more than one candidate the linear
/// scan decides.
pub fn ec_ap(curve: &EllipticCurve, p: u64) -> Result<i64> {
    check_prime_arg(curve, p)?;
    if p < SCAN_THRESHOLD || p > u32::MAX as u64 {
        return ec_ap_scan(curve, p);
    }
    match ec_ap_bsgs(curve, p) {
        Some(ap) => Ok(ap),
        None => ec_ap_scan(curve, p),
    }
}

fn check_prime_arg(curve: &EllipticCurve, p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if !curve.has_good_reduction(p) {
        return Err(Error::BadReduction { p, curve: curve.describe() });
    }
    Ok(())
}

/// `a_p` by a full `O(p)` character sum.
///
/// For odd `p` the curve is rewritten as `(2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6`
/// and `a_p = −Σ_x (f(x)/p)`. The cubic is stepped by finite differences and
/// the Legendre symbol read from a table of squares. `p = 2` is counted by
/// enumeration.
pub fn ec_ap_scan(curve: &EllipticCurve, p: u64) -> Result<i64> {
    check_prime_arg(curve, p)?;
    if p == 2 {
        return Ok(2 - count_affine_brute(curve, 2) as i64);
    }
    if p > u32::MAX as u64 / 2 {
        return Err(Error::InvalidArgument(format!("prime {p} is too large for point counting")));
    }
    let (b2, b4, b6, _) = curve.b_invariants();
    let pm = p as i128;
    let m = |v: i128| v.rem_euclid(pm) as u32;
    // f(x) = 4x³ + b2x² + 2b4x + b6 and its forward differences at x = 0.
    let c3 = 4i128;
    let (c2, c1, c0) = (b2, 2 * b4, b6);
    let (mut f, mut df, mut ddf, dddf) = (m(c0), m(c3 + c2 + c1), m(6 * c3 + 2 * c2), m(6 * c3));

    let chi = legendre_table(p as u32);
    let p = p as u32;
    // The sum of two residues is below 2p < 2^32.
    let add = |a: u32, b: u32| {
        let s = a + b;
        s - (((s >= p) as u32) * p)
    };
    let mut sum: i64 = 0;
    for _ in 0..p {
        sum += chi[f as usize] as i64;
        f = add(f, df);
        df = add(df, ddf);
        ddf = add(ddf, dddf);
    }
    Ok(-sum)
}

/// `chi[r]` is the Legendre symbol `(r/p)` for `0 ≤ r < p`.
fn legendre_table(p: u32) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    let mut sq = 0u32;
    // (i+1)² = i² + 2i + 1, with 2i + 1 < p for i < (p − 1)/2.
    for i in 0..(p - 1) / 2 {
        sq += 2 * i + 1;
        if sq >= p {
            sq -= p;
        }
        chi[sq as usize] = 1;
    }
    chi
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i64) as u64
}

/// Square root of a quadratic residue by Tonelli-Shanks.
fn sqrt_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        return 0;
    }
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("nonresidue exists");
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Affine point on `Y² = X³ + aX + b` over `F_p`; `None` is the identity.
type Point = Option<(u64, u64)>;

struct ShortCurve {
    a: u64,
    b: u64,
    p: u64,
}

impl ShortCurve {
    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(self.a, x, p) + self.b) % p
    }

    fn neg(&self, pt: Point) -> Point {
        pt.map(|(x, y)| (x, (self.p - y) % self.p))
    }

    fn add(&self, u: Point, v: Point) -> Point {
        let p = self.p;
        let ((x1, y1), (x2, y2)) = match (u, v) {
            (None, w) | (w, None) => return w,
            (Some(a), Some(b)) => (a, b),
        };
        let slope = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return None;
            }
            let num = (3 * mul_mod(x1, x1, p) + self.a) % p;
            mul_mod(num, inv_mod(2 * y1 % p, p), p)
        } else {
            let num = (y2 + p - y1) % p;
            mul_mod(num, inv_mod((x2 + p - x1) % p, p), p)
        };
        let x3 = (mul_mod(slope, slope, p) + 2 * p - x1 - x2) % p;
        let y3 = (mul_mod(slope, (x1 + p - x3) % p, p) + p - y1) % p;
        Some((x3, y3))
    }

    fn mul(&self, mut k: u64, pt: Point) -> Point {
        let (mut acc, mut base) = (None, pt);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Every `M` in `[lo, hi]` with `M·P = O`.
    fn annihilators(&self, pt: Point, lo: u64, hi: u64) -> Vec<u64> {
        let width = hi - lo + 1;
        let m = (width as f64).sqrt().ceil() as u64;
        // Baby steps: −j·P for j < m.
        let mut baby: std::collections::HashMap<Point, Vec<u64>> = std::collections::HashMap::new();
        let mut jp = None;
        for j in 0..m {
            baby.entry(self.neg(jp)).or_default().push(j);
            jp = self.add(jp, pt);
        }
        let step = self.mul(m, pt);
        let mut giant = self.mul(lo, pt);
        let mut out = Vec::new();
        let mut base = lo;
        while base <= hi {
            if let Some(js) = baby.get(&giant) {
                out.extend(js.iter().map(|j| base + j).filter(|&n| n <= hi));
            }
            giant = self.add(giant, step);
            base += m;
        }
        out.sort_unstable();
        out
    }
}

/// `a_p` from point orders, or `None` when they do not pin `#E(F_p)` down.
fn ec_ap_bsgs(curve: &EllipticCurve, p: u64) -> Option<i64> {
    if p <= 3 {
        return None;
    }
    let (b2, b4, b6, _) = curve.b_invariants();
    let c4 = b2 * b2 - 24 * b4;
    let c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    let pm = p as i128;
    let short = ShortCurve { a: (-27 * c4).rem_euclid(pm) as u64, b: (-54 * c6).rem_euclid(pm) as u64, p };
    let half_width = (2.0 * (p as f64).sqrt()).floor() as u64;
    let (lo, hi) = (p + 1 - half_width, p + 1 + half_width);

    let mut candidates: Option<Vec<u64>> = None;
    let mut tried = 0;
    for x in 0..p {
        let r = short.rhs(x);
        if r != 0 && pow_mod(r, (p - 1) / 2, p) != 1 {
            continue;
        }
        let pt = Some((x, sqrt_mod(r, p)));
        let found = short.annihilators(pt, lo, hi);
        let next = match candidates {
            None => found,
            Some(prev) => prev.into_iter().filter(|n| found.binary_search(n).is_ok()).collect(),
        };
        if next.len() == 1 {
            return Some(p as i64 + 1 - next[0] as i64);
        }
        candidates = Some(next);
        tried += 1;
        if tried == 12 {
            return None;
        }
    }
    None
}

/// Number of affine solutions `(x, y) ∈ F_p²`, by enumeration.
pub fn count_affine_brute(curve: &EllipticCurve, p: u64) -> u64 {
    let pm = p as i128;
    let r = |v: i64| (v as i128).rem_euclid(pm);
    let (a1, a2, a3, a4, a6) = (r(curve.a1), r(curve.a2), r(curve.a3), r(curve.a4), r(curve.a6));
    let mut count = 0;
    for x in 0..pm {
        let rhs = (((x + a2) * x + a4) % pm * x + a6) % pm;
        for y in 0..pm {
            let lhs = (y * y + a1 * x * y + a3 * y) % pm;
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_ap(curve: &EllipticCurve, p: u64) -> i64 {
        p as i64 + 1 - (count_affine_brute(curve, p) as i64 + 1)
    }

    #[test]
    fn discriminants() {
        assert_eq!(EllipticCurve::CONDUCTOR_11.discriminant(), -161_051);
        assert_eq!(EllipticCurve::CONDUCTOR_37.discriminant(), 37);
    }

    #[test]
    fn small_traces_by_enumeration() {
        let e11 = EllipticCurve::CONDUCTOR_11;
        let e37 = EllipticCurve::CONDUCTOR_37;
        assert_eq!(brute_ap(&e11, 2), -2);
        assert_eq!(brute_ap(&e11, 3), -1);
        assert_eq!(brute_ap(&e37, 2), -2);
        assert_eq!(ec_ap(&e11, 2).unwrap(), -2);
        assert_eq!(ec_ap(&e11, 3).unwrap(), -1);
        assert_eq!(ec_ap(&e37, 2).unwrap(), -2);
    }

    #[test]
    fn linear_scan_matches_enumeration() {
        let curves = [EllipticCurve::CONDUCTOR_11, EllipticCurve::CONDUCTOR_37, EllipticCurve::new(1, -1, 1, -3, 4)];
        let primes = crate::arith::sieve(400).unwrap();
        for c in &curves {
            for p in primes.primes().filter(|&p| c.has_good_reduction(p)) {
                assert_eq!(ec_ap(c, p).unwrap(), brute_ap(c, p), "{c:?} p = {p}");
            }
        }
    }

    #[test]
    fn sqrt_mod_roundtrip() {
        for p in [1_009u64, 1_013, 65_537, 999_983] {
            for a in 1..200u64 {
                if pow_mod(a, (p - 1) / 2, p) == 1 {
                    let r = sqrt_mod(a, p);
                    assert_eq!(mul_mod(r, r, p), a);
                }
            }
        }
    }

    #[test]
    fn point_orders_match_linear_scan() {
        let curves = [EllipticCurve::CONDUCTOR_11, EllipticCurve::CONDUCTOR_37, EllipticCurve::new(1, -1, 1, -3, 4)];
        let primes = crate::arith::sieve(30_000).unwrap();
        for c in &curves {
            for p in primes.primes().filter(|&p| p > 3 && c.has_good_reduction(p)).step_by(3) {
                let scan = ec_ap_scan(c, p).unwrap();
                if let Some(fast) = ec_ap_bsgs(c, p) {
                    assert_eq!(fast, scan, "{c:?} p = {p}");
                }
                assert_eq!(ec_ap(c, p).unwrap(), scan);
            }
        }
    }

    #[test]
    fn bad_reduction_rejected() {
        let e11 = EllipticCurve::CONDUCTOR_11;
        assert!(matches!(ec_ap(&e11, 11), Err(Error::BadReduction { p: 11, .. })));
        assert!(matches!(ec_ap(&EllipticCurve::CONDUCTOR_37, 37), Err(Error::BadReduction { .. })));
    }
}
