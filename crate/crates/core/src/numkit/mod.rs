//! Exact integer substrate: sieves, factorization, divisor and multiplicative
//! functions, the Jacobi symbol and prime lists.
//!
//! Everything here is deterministic and exact.  Inputs are `u64`; values that
//! can exceed 64 bits (products of coordinates, divisors of quadratic forms)
//! are carried as `u128`.

mod factor;
mod jacobi;
mod sieve;

pub use factor::{factorize, factorize_wide, is_prime, is_prime_wide};
pub use jacobi::jacobi;
pub use sieve::{primes_up_to, sieve_spf, sum_tau, SpfTable};

use crate::{Error, Result};

/// Prime-exponent decomposition of a positive integer.
///
/// Primes are strictly increasing and every prime is certified by the
/// factorizer; the product of `prime^exponent` reconstructs the input exactly.
/// The empty list is the factorization of 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u128, u32)>,
}

impl Factorization {
    pub(crate) fn from_sorted(pairs: Vec<(u128, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(pairs.iter().all(|&(p, e)| p > 1 && e >= 1));
        Factorization { pairs }
    }

    /// The `(prime, exponent)` pairs, prime ascending.
    pub fn pairs(&self) -> &[(u128, u32)] {
        &self.pairs
    }

    /// Reconstruct the factored integer.
    pub fn value(&self) -> u128 {
        self.pairs
            .iter()
            .fold(1u128, |acc, &(p, e)| acc * p.pow(e))
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.pairs.len() as u32
    }

    /// Number of divisors.
    pub fn tau(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(_, e)| acc * (e as u64 + 1))
    }

    /// Number of ordered k-tuples multiplying to the value: multiplicative with
    /// `tau_k(p^e) = C(e + k - 1, k - 1)`.
    pub fn tau_k(&self, k: u64) -> u64 {
        assert!(k >= 1, "tau_k requires k >= 1");
        self.pairs.iter().fold(1u64, |acc, &(_, e)| {
            acc.checked_mul(binomial(e as u64 + k - 1, k - 1))
                .expect("tau_k overflow")
        })
    }

    /// Moebius function of the value: 0 unless squarefree, else (-1)^omega.
    pub fn mobius(&self) -> i32 {
        if self.pairs.iter().any(|&(_, e)| e >= 2) {
            0
        } else if self.pairs.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Euler totient of the value.
    pub fn totient(&self) -> u128 {
        self.pairs
            .iter()
            .fold(1u128, |acc, &(p, e)| acc * p.pow(e - 1) * (p - 1))
    }

    /// All divisors of the value, ascending.
    pub fn divisors(&self) -> Vec<u128> {
        let mut divs = vec![1u128];
        for &(p, e) in &self.pairs {
            let len = divs.len();
            let mut pe = 1u128;
            for _ in 0..e {
                pe *= p;
                for i in 0..len {
                    divs.push(divs[i] * pe);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Square the value in exponent space (the factorization of `value^2`).
    pub fn squared(&self) -> Factorization {
        Factorization {
            pairs: self.pairs.iter().map(|&(p, e)| (p, 2 * e)).collect(),
        }
    }

    /// Pointwise-merge with another factorization (factorization of the product).
    pub fn merged(&self, other: &Factorization) -> Factorization {
        let mut pairs = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() && j < other.pairs.len() {
            let (pa, ea) = self.pairs[i];
            let (pb, eb) = other.pairs[j];
            match pa.cmp(&pb) {
                std::cmp::Ordering::Less => {
                    pairs.push((pa, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    pairs.push((pb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    pairs.push((pa, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        pairs.extend_from_slice(&self.pairs[i..]);
        pairs.extend_from_slice(&other.pairs[j..]);
        Factorization { pairs }
    }

    /// Divide out `d` exactly.  `d`'s primes must all divide the value with at
    /// least the same exponent; panics otherwise (internal misuse).
    pub(crate) fn divided_exact(&self, d: u128) -> Factorization {
        let mut d = d;
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for &(p, e) in &self.pairs {
            let mut e = e;
            while d % p == 0 {
                d /= p;
                e = e.checked_sub(1).expect("divided_exact: exponent underflow");
            }
            if e > 0 {
                pairs.push((p, e));
            }
        }
        assert_eq!(d, 1, "divided_exact: divisor has a foreign prime factor");
        Factorization { pairs }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Divisors of `n`, ascending.
pub fn divisors(f: &Factorization) -> Vec<u128> {
    f.divisors()
}

/// Number of ordered k-tuples `(d_1, ..., d_k)` with `d_1 * ... * d_k = n`.
pub fn tau_k(k: u64, n: u64) -> u64 {
    assert!(k >= 1 && n >= 1, "tau_k requires k, n >= 1");
    factorize(n, None).tau_k(k)
}

/// Moebius function.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1);
    factorize(n, None).mobius()
}

/// Euler totient function; `totient(1) = 1`.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1);
    factorize(n, None).totient() as u64
}

/// Number of distinct prime factors of `n` congruent to `-1 mod m`.
pub fn omega_res(n: u64, m: u64) -> Result<u32> {
    if n < 1 || m < 2 {
        return Err(Error::InvalidArgument(format!(
            "omega_res requires n >= 1 and m >= 2, got n={n}, m={m}"
        )));
    }
    let target = (m - 1) as u128;
    Ok(factorize(n, None)
        .pairs()
        .iter()
        .filter(|&&(p, _)| p % m as u128 == target)
        .count() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_reconstructs() {
        for n in 1u64..=2000 {
            assert_eq!(factorize(n, None).value(), n as u128, "n={n}");
        }
    }

    #[test]
    fn divisors_of_small_values() {
        assert_eq!(factorize(1, None).divisors(), vec![1]);
        assert_eq!(factorize(12, None).divisors(), vec![1, 2, 3, 4, 6, 12]);
        // the f-candidates in a Type I enumeration with a = d = 1: 4*1*1+1 = 5
        assert_eq!(factorize(5, None).divisors(), vec![1, 5]);
    }

    #[test]
    fn tau_k_values() {
        assert_eq!(tau_k(2, 12), 6);
        assert_eq!(tau_k(3, 4), 6); // (1,1,4) x3 and (1,2,2) x3
        for n in [1u64, 7, 12, 360] {
            assert_eq!(tau_k(1, n), 1);
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(840), 192);
    }

    #[test]
    fn totient_supermultiplicative_on_products() {
        // phi(ad) >= phi(a) phi(d), the elementary estimate used by the
        // aggregate lower bounds.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let a = next() % 500 + 1;
            let d = next() % 500 + 1;
            assert!(totient(a * d) >= totient(a) * totient(d), "a={a} d={d}");
        }
    }

    #[test]
    fn omega_res_values() {
        assert_eq!(omega_res(21, 4).unwrap(), 2); // 3 and 7
        assert_eq!(omega_res(5, 4).unwrap(), 0);
        assert_eq!(omega_res(10, 3).unwrap(), 2); // 2 and 5 are -1 mod 3
        assert!(omega_res(10, 1).is_err());
    }

    #[test]
    fn divisor_count_matches_tau() {
        for n in 1u64..=100_000 {
            let f = factorize(n, None);
            assert_eq!(f.divisors().len() as u64, f.tau_k(2), "n={n}");
        }
    }

    #[test]
    fn multiplicative_on_coprime_pairs() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut done = 0;
        while done < 1000 {
            let a = next() % 100_000 + 1;
            let b = next() % 100_000 + 1;
            if gcd_u64(a, b) != 1 {
                continue;
            }
            done += 1;
            assert_eq!(mobius(a * b), mobius(a) * mobius(b));
            assert_eq!(totient(a * b), totient(a) * totient(b));
            assert_eq!(tau_k(3, a * b), tau_k(3, a) * tau_k(3, b));
        }
    }

    fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
}
