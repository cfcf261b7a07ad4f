//! Integer and prime utilities: a bit-table sieve, factorization by trial
//! division, divisors, the Möbius function and the Kronecker symbol.

use crate::error::{Error, Result};

/// Sieve of Eratosthenes over `0..=limit`, stored one bit per integer.
#[derive(Clone, Debug)]
pub struct PrimeSieve {
    limit: u64,
    bits: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::SieveLimit(limit));
        }
        let words = (limit as usize) / 64 + 1;
        let mut bits = vec![u64::MAX; words];
        clear_bit(&mut bits, 0);
        clear_bit(&mut bits, 1);
        let mut p = 2u64;
        while p * p <= limit {
            if test_bit(&bits, p) {
                let mut m = p * p;
                while m <= limit {
                    clear_bit(&mut bits, m);
                    m += p;
                }
            }
            p += 1;
        }
        // Clear the padding past `limit` so counting never sees it.
        for n in (limit + 1)..(words as u64 * 64) {
            clear_bit(&mut bits, n);
        }
        Ok(Self { limit, bits })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n > self.limit {
            return Err(Error::OutsideSieve(n, self.limit));
        }
        Ok(test_bit(&self.bits, n))
    }

    /// Primes in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let base = w as u64 * 64;
            BitIter(word).map(move |b| base + b)
        })
    }

    pub fn primes_up_to(&self, x: u64) -> impl Iterator<Item = u64> + '_ {
        self.primes().take_while(move |&p| p <= x)
    }

    /// π(x) for x ≤ limit.
    pub fn prime_pi(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::OutsideSieve(x, self.limit));
        }
        let full = (x / 64) as usize;
        let mut count: u64 = self.bits[..full].iter().map(|w| w.count_ones() as u64).sum();
        let rem = x % 64;
        let mask = if rem == 63 { u64::MAX } else { (1u64 << (rem + 1)) - 1 };
        count += (self.bits[full] & mask).count_ones() as u64;
        Ok(count)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as u64;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

fn test_bit(bits: &[u64], n: u64) -> bool {
    bits[(n / 64) as usize] >> (n % 64) & 1 == 1
}

fn clear_bit(bits: &mut [u64], n: u64) {
    bits[(n / 64) as usize] &= !(1u64 << (n % 64));
}

/// Convenience wrapper over [`PrimeSieve::new`].
pub fn sieve(limit: u64) -> Result<PrimeSieve> {
    PrimeSieve::new(limit)
}

/// Prime factorization `n = ∏ p^e` by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        push(d, &mut n);
        d += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Möbius function μ(n) for n ≥ 1.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut sign = 1i8;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Kronecker symbol (a/n), extended to all integers.
///
/// Conventions:
/// * `(a/0)` is 1 when `a = ±1` and 0 otherwise;
/// * `(a/-1)` is -1 when `a < 0` and 1 otherwise, and `(a/n) = (a/-1)(a/|n|)` for `n < 0`;
/// * `(a/2)` is 0 for even `a`, 1 for `a ≡ ±1 (mod 8)` and -1 for `a ≡ ±3 (mod 8)`;
/// * on odd positive `n` it is the Jacobi symbol.
///
/// With these rules `(a/·)` is completely multiplicative for every fixed `a`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1i8;
    let mut n = n as i128;
    let a = a as i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(a.rem_euclid(n), n)
}

/// Jacobi symbol (a/n) for odd positive n and 0 ≤ a < n.
fn jacobi(mut a: i128, mut n: i128) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut result = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
        let mut r = 1u64;
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

    #[test]
    fn small_sieve() {
        let s = sieve(10).unwrap();
        assert_eq!(s.primes().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert!(matches!(sieve(1), Err(Error::SieveLimit(1))));
        assert!(s.is_prime(11).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let s = sieve(10_000).unwrap();
        for n in 0..=10_000 {
            assert_eq!(s.is_prime(n).unwrap(), trial_is_prime(n), "n = {n}");
        }
        let trial_count = (0..=100).filter(|&n| trial_is_prime(n)).count() as u64;
        assert_eq!(trial_count, 25);
        assert_eq!(s.prime_pi(100).unwrap(), trial_count);
        for x in [2, 63, 64, 127, 128, 9_999, 10_000] {
            let expect = (0..=x).filter(|&n| trial_is_prime(n)).count() as u64;
            assert_eq!(s.prime_pi(x).unwrap(), expect, "x = {x}");
        }
    }

    #[test]
    fn prime_pi_one_million() {
        // Cross-checked against the trial-division count above at small x and
        // an independent odd-only sieve here.
        let limit = 1_000_000usize;
        let mut composite = vec![false; limit / 2 + 1];
        let mut count = 1u64; // the prime 2
        for i in 1..=limit / 2 {
            let n = 2 * i + 1;
            if n > limit {
                break;
            }
            if !composite[i] {
                count += 1;
                let mut m = n * n;
                while m <= limit {
                    composite[m / 2] = true;
                    m += 2 * n;
                }
            }
        }
        assert_eq!(count, 78_498);
        assert_eq!(sieve(1_000_000).unwrap().prime_pi(1_000_000).unwrap(), count);
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(7), -1);
        assert_eq!(mobius(6), 1);
    }

    #[test]
    fn mobius_divisor_sum() {
        for n in 1..=2_000u64 {
            let s: i64 = divisors(n).into_iter().map(|d| mobius(d) as i64).sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 }, "n = {n}");
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(13), vec![1, 13]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        for n in 1..=500u64 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n), brute);
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(1, 7), 1);
        assert_eq!(kronecker(2, 15), 1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-1, 3), -1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(-3, -1), -1);
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(4, 2), 0);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        let s = sieve(1000).unwrap();
        for p in s.primes().filter(|&p| p > 2) {
            for a in -50i64..=50 {
                let r = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let euler = match r {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(kronecker(a, p as i64), euler, "a = {a}, p = {p}");
            }
        }
    }

    proptest! {
        #[test]
        fn kronecker_completely_multiplicative(a in -200i64..200, m in -300i64..300, n in -300i64..300) {
            prop_assume!(m != 0 && n != 0);
            prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
        }

        #[test]
        fn mobius_multiplicative(m in 1u64..5_000, n in 1u64..5_000) {
            prop_assume!(gcd(m, n) == 1);
            prop_assert_eq!(mobius(m * n), mobius(m) * mobius(n));
        }
    }
}
