//! Smallest-prime-factor table, prime lists and the exact divisor-count sum.

use crate::{Error, Result};

/// Smallest-prime-factor table for all `2 <= i <= limit`.
///
/// Built by a linear sieve: each composite is crossed off exactly once by its
/// least prime factor, so construction is O(limit).  The table is immutable
/// after construction and can be shared freely across worker threads.
#[derive(Clone)]
pub struct SpfTable {
    limit: u64,
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `i`; requires `2 <= i <= limit`.
    pub fn spf(&self, i: u64) -> u64 {
        assert!(i >= 2 && i <= self.limit, "spf argument {i} out of range");
        self.spf[i as usize] as u64
    }

    /// Factorize `n <= limit` by repeated division by the table entry.
    pub fn factorize(&self, n: u64) -> super::Factorization {
        assert!(n >= 1 && n <= self.limit);
        let mut n = n;
        let mut pairs: Vec<(u128, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            pairs.push((p as u128, e));
        }
        super::Factorization::from_sorted(pairs)
    }
}

/// Build an [`SpfTable`] covering `2..=limit`.
pub fn sieve_spf(limit: u64) -> Result<SpfTable> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "sieve_spf requires limit >= 2, got {limit}"
        )));
    }
    if limit > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!(
            "sieve_spf limit {limit} exceeds the u32 table range"
        )));
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            if p > spf[i] {
                break;
            }
            let ip = i as u64 * p as u64;
            if ip > limit {
                break;
            }
            spf[ip as usize] = p;
        }
    }
    Ok(SpfTable { limit, spf })
}

/// Ascending list of all primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Exact `sum_{k <= n} tau(k)` by the hyperbola identity
/// `sum tau(k) = 2 * sum_{d <= sqrt(n)} floor(n/d) - floor(sqrt(n))^2`.
pub fn sum_tau(n: u64) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r * r > n {
        r -= 1;
    }
    let mut s = 0u128;
    for d in 1..=r {
        s += (n / d) as u128;
    }
    2 * s - (r as u128) * (r as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spf_small_values() {
        let t = sieve_spf(10).unwrap();
        assert_eq!(t.spf(9), 3);
        assert_eq!(t.spf(10), 2);
        assert_eq!(t.spf(7), 7);
    }

    #[test]
    fn spf_identity_case() {
        let t = sieve_spf(2).unwrap();
        assert_eq!(t.spf(2), 2);
    }

    #[test]
    fn spf_rejects_tiny_limit() {
        assert!(sieve_spf(1).is_err());
    }

    #[test]
    fn spf_matches_trial_division() {
        let t = sieve_spf(10_000_000).unwrap();
        // spot checks against plain trial division, including a large prime
        for i in [2u64, 4, 9, 977, 9999991, 9999992, 6_561_089] {
            let mut least = i;
            let mut d = 2u64;
            while d * d <= i {
                if i % d == 0 {
                    least = d;
                    break;
                }
                d += 1;
            }
            assert_eq!(t.spf(i), least, "i={i}");
        }
    }

    #[test]
    fn spf_table_factorizes() {
        let t = sieve_spf(50_000).unwrap();
        for n in 1u64..=50_000 {
            assert_eq!(t.factorize(n).value(), n as u128);
        }
    }

    #[test]
    fn primes_lists() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
    }

    #[test]
    fn sum_tau_matches_direct_count() {
        // direct divisor-count sieve as the independent route
        let n = 5000usize;
        let mut tau = vec![0u32; n + 1];
        for d in 1..=n {
            let mut k = d;
            while k <= n {
                tau[k] += 1;
                k += d;
            }
        }
        let direct: u128 = tau[1..].iter().map(|&t| t as u128).sum();
        assert_eq!(sum_tau(n as u64), direct);
        assert_eq!(sum_tau(0), 0);
        assert_eq!(sum_tau(1), 1);
    }
}
