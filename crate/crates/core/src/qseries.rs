//! Truncated power series in `q` with exact `i128` coefficients.
//!
//! All arithmetic is checked: an overflow is reported as
//! [`Error::Overflow`] rather than wrapping.

use crate::error::{Error, Result};

/// Default truncation order of the Ramanujan τ table.
pub const DELTA_TABLE_BOUND: usize = 100_000;

/// `Σ_{n ≤ bound} c_n q^n` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<i128>,
}

impl QSeries {
    pub fn zero(bound: usize) -> Self {
        Self { coeffs: vec![0; bound + 1] }
    }

    pub fn one(bound: usize) -> Self {
        let mut s = Self::zero(bound);
        s.coeffs[0] = 1;
        s
    }

    /// Builds a series from its leading coefficients, padding with zeros (or
    /// truncating) to `bound`.
    pub fn from_coeffs(mut coeffs: Vec<i128>, bound: usize) -> Self {
        coeffs.resize(bound + 1, 0);
        Self { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`; zero past the truncation order.
    pub fn coeff(&self, n: usize) -> i128 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    fn nonzero_terms(&self) -> Vec<(usize, i128)> {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
    }

    /// Cauchy product truncated at the common bound.
    ///
    /// The loop runs over the nonzero terms of the sparser factor, so
    /// multiplying by a lacunary series costs `O(bound · terms)`.
    pub fn multiply(&self, other: &QSeries) -> Result<QSeries> {
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch(self.bound(), other.bound()));
        }
        let a_terms = self.nonzero_terms();
        let b_terms = other.nonzero_terms();
        let (dense, sparse) = if a_terms.len() <= b_terms.len() { (other, a_terms) } else { (self, b_terms) };
        let bound = self.bound();
        let mut out = vec![0i128; bound + 1];
        for (j, b) in sparse {
            for (i, &a) in dense.coeffs[..=bound - j].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let term = a.checked_mul(b).ok_or(Error::Overflow("multiplying q-series"))?;
                let slot = &mut out[i + j];
                *slot = slot.checked_add(term).ok_or(Error::Overflow("multiplying q-series"))?;
            }
        }
        Ok(QSeries { coeffs: out })
    }

    /// `self^exp` by binary exponentiation in the truncated ring.
    pub fn pow(&self, mut exp: u32) -> Result<QSeries> {
        let mut result = QSeries::one(self.bound());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.multiply(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiplies by `q^shift`, dropping terms past the bound.
    pub fn shift(&self, shift: usize) -> QSeries {
        let bound = self.bound();
        let mut out = vec![0i128; bound + 1];
        if shift <= bound {
            out[shift..].copy_from_slice(&self.coeffs[..=bound - shift]);
        }
        QSeries { coeffs: out }
    }
}

/// `∏_{n≥1} (1 − q^n)` via Euler's pentagonal number theorem.
pub fn euler_product(bound: usize) -> QSeries {
    let mut s = QSeries::zero(bound);
    s.coeffs[0] = 1;
    for k in 1usize.. {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let g1 = k * (3 * k - 1) / 2;
        if g1 > bound {
            break;
        }
        s.coeffs[g1] += sign;
        let g2 = k * (3 * k + 1) / 2;
        if g2 <= bound {
            s.coeffs[g2] += sign;
        }
    }
    s
}

/// `∏_{n≥1} (1 − q^n)^3 = Σ_{k≥0} (−1)^k (2k+1) q^{k(k+1)/2}` (Jacobi).
pub fn euler_product_cubed(bound: usize) -> QSeries {
    let mut s = QSeries::zero(bound);
    for k in 0usize.. {
        let e = k * (k + 1) / 2;
        if e > bound {
            break;
        }
        let c = (2 * k + 1) as i128;
        s.coeffs[e] = if k % 2 == 0 { c } else { -c };
    }
    s
}

/// `Δ = q ∏ (1 − q^n)^24` truncated at `q^bound`; coefficient `n` is τ(n).
///
/// Computed as `q · (∏(1 − q^n)^3)^8`, multiplying a dense accumulator by
/// the lacunary cube seven times.
pub fn eta_power_24_delta(bound: usize) -> Result<QSeries> {
    if bound == 0 {
        return Err(Error::InvalidArgument("delta bound must be at least 1".into()));
    }
    let cube = euler_product_cubed(bound - 1);
    let mut acc = cube.clone();
    for _ in 0..7 {
        acc = acc.multiply(&cube)?;
    }
    let mut coeffs = Vec::with_capacity(bound + 1);
    coeffs.push(0);
    coeffs.extend_from_slice(acc.coeffs());
    Ok(QSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct expansion of `∏_{n ≤ bound} (1 − q^n)^e` by repeated
    /// multiplication with binomials, independent of `multiply`.
    fn naive_product_power(bound: usize, e: u32) -> Vec<i128> {
        let mut c = vec![0i128; bound + 1];
        c[0] = 1;
        for n in 1..=bound {
            for _ in 0..e {
                for i in (n..=bound).rev() {
                    c[i] -= c[i - n];
                }
            }
        }
        c
    }

    fn s(c: &[i128], bound: usize) -> QSeries {
        QSeries::from_coeffs(c.to_vec(), bound)
    }

    #[test]
    fn small_products() {
        let one_plus = s(&[1, 1], 4);
        let one_minus = s(&[1, -1], 4);
        assert_eq!(one_plus.multiply(&one_minus).unwrap(), s(&[1, 0, -1], 4));
        let geometric = s(&[1; 8], 7);
        assert_eq!(geometric.multiply(&s(&[1, -1], 7)).unwrap(), QSeries::one(7));
        assert!(matches!(one_plus.multiply(&QSeries::one(5)), Err(Error::BoundMismatch(4, 5))));
    }

    #[test]
    fn three_factor_product() {
        let mut acc = QSeries::one(3);
        for n in 1..=3 {
            let mut f = vec![0i128; n + 1];
            f[0] = 1;
            f[n] = -1;
            acc = acc.multiply(&s(&f, 3)).unwrap();
        }
        assert_eq!(acc.coeffs(), naive_product_power(3, 1).as_slice());
        assert_eq!(acc.coeffs(), &[1, -1, -1, 0]);
    }

    #[test]
    fn lacunary_identities() {
        let bound = 300;
        assert_eq!(euler_product(bound).coeffs(), naive_product_power(bound, 1).as_slice());
        assert_eq!(euler_product_cubed(bound).coeffs(), naive_product_power(bound, 3).as_slice());
        assert_eq!(euler_product(bound).pow(3).unwrap(), euler_product_cubed(bound));
    }

    #[test]
    fn delta_against_naive_expansion() {
        let bound = 120;
        let naive = naive_product_power(bound - 1, 24);
        let delta = eta_power_24_delta(bound).unwrap();
        for n in 1..=bound {
            assert_eq!(delta.coeff(n), naive[n - 1], "tau({n})");
        }
        // Binary exponentiation route agrees too.
        let via_pow = euler_product(bound).pow(24).unwrap().shift(1);
        assert_eq!(via_pow, delta);
    }

    #[test]
    fn tau_values() {
        let naive = naive_product_power(9, 24);
        let delta = eta_power_24_delta(10).unwrap();
        assert_eq!(delta.coeff(1), 1);
        assert_eq!(delta.coeff(2), naive[1]);
        assert_eq!(delta.coeff(2), -24);
        assert_eq!(delta.coeff(6), delta.coeff(2) * delta.coeff(3));
    }

    #[test]
    fn overflow_is_reported() {
        let big = s(&[i128::MAX / 2, 3], 2);
        assert!(matches!(big.multiply(&big), Err(Error::Overflow(_))));
    }

    #[test]
    fn tau_hecke_relations() {
        let bound = 2_000;
        let tau = eta_power_24_delta(bound).unwrap();
        let t = |n: usize| tau.coeff(n);
        for m in 1..=bound {
            for n in 1..=bound / m {
                if crate::arith::gcd(m as u64, n as u64) == 1 {
                    assert_eq!(t(m * n), t(m) * t(n), "tau({m}*{n})");
                }
            }
        }
        for p in [2usize, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
            assert_eq!(t(p * p), t(p) * t(p) - (p as i128).pow(11));
        }
    }
}
