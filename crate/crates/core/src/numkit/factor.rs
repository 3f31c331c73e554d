//! Deterministic factorization: small-prime trial division, Miller-Rabin
//! certification, and Brent's cycle variant of the rho method for the rest.
//!
//! For operands below 2^64 the Miller-Rabin base set
//! {2,3,5,7,11,13,17,19,23,29,31,37} is a proven deterministic test.  Above
//! 2^64 the same bases plus a fixed extension set are used; the output is
//! still a deterministic function of the input.

use super::{Factorization, SpfTable};
use std::sync::OnceLock;

const MR_BASES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_EXTRA_WIDE: [u128; 8] = [41, 43, 47, 53, 59, 61, 67, 71];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        super::sieve::primes_up_to(4096)
            .into_iter()
            .map(|p| p as u32)
            .collect()
    })
}

fn mulmod64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod64(acc, b, m);
        }
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'bases: for &a in &MR_BASES_64 {
        let mut x = powmod64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn addmod128(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m <= u128::MAX: avoid the overflowing sum
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

fn mulmod128(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return ((a % m) * (b % m)) % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = addmod128(acc, a, m);
        }
        a = addmod128(a, a, m);
        b >>= 1;
    }
    acc
}

fn powmod128(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod128(acc, b, m);
        }
        b = mulmod128(b, b, m);
        e >>= 1;
    }
    acc
}

/// Miller-Rabin for `u128`; exact below 2^64, fixed extended base set above.
pub fn is_prime_wide(n: u128) -> bool {
    if n <= u64::MAX as u128 {
        return is_prime(n as u64);
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let bases = MR_BASES_64
        .iter()
        .map(|&b| b as u128)
        .chain(MR_EXTRA_WIDE.iter().copied());
    'bases: for a in bases {
        let mut x = powmod128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod128(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's variant of Pollard rho; `n` must be odd, composite, not a prime
/// power of a small prime.  Returns a non-trivial factor.
fn rho64(n: u64) -> u64 {
    debug_assert!(n > 1 && n % 2 == 1 && !is_prime(n));
    for c in 1u64.. {
        let f = |x: u64| (mulmod64(x, x, n) + c) % n;
        let (mut x, mut ys) = (2u64, 2u64);
        let mut y = 2u64;
        let mut d = 1u64;
        let mut q = 1u64;
        let mut r = 1u64;
        'outer: while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && d == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mulmod64(q, x.abs_diff(y), n);
                }
                d = gcd64(q, n);
                k += lim;
            }
            r *= 2;
            if r > 1 << 34 {
                break 'outer;
            }
        }
        if d == n {
            // backtrack one step at a time
            d = 1;
            while d == 1 {
                ys = f(ys);
                d = gcd64(x.abs_diff(ys), n);
            }
        }
        if d > 1 && d < n {
            return d;
        }
    }
    unreachable!()
}

fn rho128(n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return rho64(n as u64) as u128;
    }
    for c in 1u128.. {
        let f = |x: u128| addmod128(mulmod128(x, x, n), c, n);
        let (mut x, mut ys) = (2u128, 2u128);
        let mut y = 2u128;
        let mut d = 1u128;
        let mut q = 1u128;
        let mut r = 1u128;
        while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u128;
            while k < r && d == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mulmod128(q, x.abs_diff(y), n);
                }
                d = gcd128(q, n);
                k += lim;
            }
            r *= 2;
        }
        if d == n {
            d = 1;
            while d == 1 {
                ys = f(ys);
                d = gcd128(x.abs_diff(ys), n);
            }
        }
        if d > 1 && d < n {
            return d;
        }
    }
    unreachable!()
}

fn push_prime(pairs: &mut Vec<(u128, u32)>, p: u128, e: u32) {
    match pairs.iter_mut().find(|(q, _)| *q == p) {
        Some((_, ex)) => *ex += e,
        None => pairs.push((p, e)),
    }
}

fn factor_rec(n: u128, pairs: &mut Vec<(u128, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime_wide(n) {
        push_prime(pairs, n, 1);
        return;
    }
    let d = rho128(n);
    factor_rec(d, pairs);
    factor_rec(n / d, pairs);
}

fn factor_from(mut n: u128) -> Factorization {
    let mut pairs: Vec<(u128, u32)> = Vec::new();
    for &p in small_primes() {
        let p = p as u128;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
    }
    if n > 1 {
        let lim = *small_primes().last().unwrap() as u128;
        if n <= lim * lim {
            pairs.push((n, 1));
        } else {
            factor_rec(n, &mut pairs);
        }
    }
    pairs.sort_unstable_by_key(|&(p, _)| p);
    Factorization::from_sorted(pairs)
}

/// Factorize `n >= 1`; `factorize(1)` is the empty product.
///
/// Uses the table lookup when `n` is in range, otherwise trial division by
/// the small primes followed by rho with Miller-Rabin certification.  The
/// result is a deterministic function of `n`.
pub fn factorize(n: u64, table: Option<&SpfTable>) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    if let Some(t) = table {
        if n <= t.limit() {
            return t.factorize(n);
        }
    }
    factor_from(n as u128)
}

/// Factorize a double-width operand (divisor-driven enumeration produces
/// targets up to ~n^2).
pub fn factorize_wide(n: u128) -> Factorization {
    assert!(n >= 1, "factorize_wide requires n >= 1");
    factor_from(n)
}
