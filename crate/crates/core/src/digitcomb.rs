//! Multinomial coefficients modulo a small prime via base-p digits, and the
//! wrap decomposition `2^t = deg*m + r`.

use crate::error::{Error, Result};

/// Largest prime accepted by [`multinomial_mod_p`]; digit binomials stay in `u64`.
pub const MAX_PRIME: u64 = 61;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_sum(n: u64, parts: &[u64]) -> Result<()> {
    let sum = parts.iter().try_fold(0u64, |acc, &k| acc.checked_add(k));
    match sum {
        Some(s) if s == n => Ok(()),
        Some(s) => Err(Error::PartitionMismatch { n, sum: s }),
        None => Err(Error::PartitionMismatch { n, sum: u64::MAX }),
    }
}

/// Exact binomial for `n < 64`.
fn small_binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `n! / (k_1! ... k_r!) mod p`, computed digit by digit in base `p`.
pub fn multinomial_mod_p(n: u64, parts: &[u64], p: u64) -> Result<u64> {
    check_sum(n, parts)?;
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::UnsupportedPrime(p));
    }
    let mut top = n;
    let mut rest: Vec<u64> = parts.to_vec();
    let mut acc = 1u64;
    while top > 0 || rest.iter().any(|&k| k > 0) {
        let a = top % p;
        let mut remaining = a;
        for k in rest.iter_mut() {
            let b = *k % p;
            if b > remaining {
                // the digit sums disagree: a carry, so p divides the coefficient
                return Ok(0);
            }
            acc = acc * (small_binomial(remaining, b) % p) % p;
            remaining -= b;
            *k /= p;
        }
        if remaining != 0 {
            return Ok(0);
        }
        top /= p;
    }
    Ok(acc)
}

/// Parity of the multinomial: odd iff the parts' binary digits partition `n`'s.
pub fn multinomial_odd(n: u64, parts: &[u64]) -> Result<bool> {
    check_sum(n, parts)?;
    let mut union = 0u64;
    for &k in parts {
        if union & k != 0 {
            return Ok(false);
        }
        union |= k;
    }
    Ok(union == n)
}

/// `2^t = deg*m + r` with `0 <= r < deg`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WrapParams {
    pub deg: u32,
    pub t: u32,
    pub m: u64,
    pub r: u64,
}

impl WrapParams {
    pub fn q(&self) -> u64 {
        1u64 << self.t
    }
}

pub fn wrap_params(deg: u32, t: u32) -> Result<WrapParams> {
    if t >= 63 {
        return Err(Error::UnsupportedDegree(t));
    }
    let q = 1u64 << t;
    if q <= deg as u64 || deg < 2 {
        return Err(Error::FieldTooSmall { deg, t });
    }
    let (m, r) = (q / deg as u64, q % deg as u64);
    let w = WrapParams { deg, t, m, r };
    if deg == 6 {
        // m has its binary digits on every other position
        debug_assert!(r == 2 || r == 4);
        let stride_mask = if t.is_multiple_of(2) { 0xAAAA_AAAA_AAAA_AAAA } else { 0x5555_5555_5555_5555 };
        debug_assert_eq!(m & !stride_mask, 0, "digit pattern of m for t = {t}");
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_mod_p(47, &[32, 8, 4, 2, 1], 2).unwrap(), 1);
        assert_eq!(multinomial_mod_p(2, &[1, 1], 2).unwrap(), 0);
        assert_eq!(multinomial_mod_p(4, &[1, 3], 3).unwrap(), 1);
        assert_eq!(
            multinomial_mod_p(4, &[1, 2], 3),
            Err(Error::PartitionMismatch { n: 4, sum: 3 })
        );
        assert_eq!(multinomial_mod_p(4, &[1, 3], 4), Err(Error::UnsupportedPrime(4)));
        assert_eq!(multinomial_mod_p(0, &[0, 0], 5).unwrap(), 1);
    }

    #[test]
    fn parity_examples() {
        for n in [0, 1, 17, 1000] {
            assert!(multinomial_odd(n, &[n, 0, 0]).unwrap());
        }
        assert!(multinomial_odd(47, &[32, 8, 4, 2, 1]).unwrap());
        assert!(!multinomial_odd(2, &[1, 1]).unwrap());
        assert!(multinomial_odd(3, &[1, 1]).is_err());
    }

    #[test]
    fn wrap_examples() {
        let w = wrap_params(6, 8).unwrap();
        assert_eq!((w.m, w.r), (42, 4));
        let w = wrap_params(6, 9).unwrap();
        assert_eq!((w.m, w.r), (85, 2));
        let w = wrap_params(7, 4).unwrap();
        assert_eq!((w.m, w.r), (2, 2));
        assert_eq!(wrap_params(6, 2), Err(Error::FieldTooSmall { deg: 6, t: 2 }));
        assert_eq!(wrap_params(7, 10).unwrap().m, 146);
        assert_eq!(wrap_params(7, 8).unwrap().m, 36);
    }

    #[test]
    fn wrap_residues() {
        for t in 3..40 {
            let w6 = wrap_params(6, t).unwrap();
            assert!(w6.r == 2 || w6.r == 4);
            let w7 = wrap_params(7, t).unwrap();
            assert_eq!(w7.r, [1, 2, 4][(t % 3) as usize]);
        }
    }

    #[test]
    fn wrap_digit_patterns() {
        // even t: m = 2 + 8 + ... + 2^(t-3); odd t: m = 1 + 4 + ... + 2^(t-3)
        for t in [6, 8, 10, 12] {
            let expect: u64 = (1..=t - 3).step_by(2).map(|i| 1u64 << i).sum();
            assert_eq!(wrap_params(6, t).unwrap().m, expect);
        }
        for t in [3, 5, 7, 9, 11, 13] {
            let expect: u64 = (0..=t - 3).step_by(2).map(|i| 1u64 << i).sum();
            assert_eq!(wrap_params(6, t).unwrap().m, expect);
        }
        // degree 7, t = 1 mod 3: m = 2 + 16 + ... + 2^(t-3)
        for t in [4, 7, 10, 13] {
            let expect: u64 = (1..=t - 3).step_by(3).map(|i| 1u64 << i).sum();
            assert_eq!(wrap_params(7, t).unwrap().m, expect);
        }
        // degree 7, t = 2 mod 3: m = 4 + 32 + ... + 2^(t-3)
        for t in [5, 8, 11, 14] {
            let expect: u64 = (2..=t - 3).step_by(3).map(|i| 1u64 << i).sum();
            assert_eq!(wrap_params(7, t).unwrap().m, expect);
        }
    }
}
