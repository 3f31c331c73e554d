//! Jacobi symbol by the binary reciprocity reduction.

use crate::{Error, Result};

/// Jacobi symbol `(a/n)` for odd `n >= 1`; `(a/1) = 1` for every `a`.
///
/// Fully multiplicative in both arguments and periodic in `a` modulo `n`.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "jacobi requires odd n >= 1, got {n}"
        )));
    }
    let mut n = n;
    // reduce a into [0, n)
    let mut a = (a.rem_euclid(n as i64)) as u64;
    let mut sign = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            // (2/n) = (-1)^((n^2-1)/8)
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        // reciprocity: both odd now
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        Ok(sign)
    } else {
        Ok(0)
    }
}
