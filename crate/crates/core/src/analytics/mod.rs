//! Divisor-sum experiments, aggregate solution counts, and prime-distribution
//! statistics.
//!
//! Raw values are exact integers; `normalized` divides a raw sum by the
//! predicted main term of its growth law (natural logarithm throughout) and
//! is only ever used for bounded-ratio checks, never for counting.

mod aggregate;
mod divisor_sums;
mod primes_ap;

pub use aggregate::{record_scan, sum_f1, sum_f2, sum_f_primes, Record};
pub use divisor_sums::{
    erdos_ratio, rho_poly, rho_vec, sum_tau3_ab, sum_tau_abcd, sum_tau_quadratic,
};
pub use primes_ap::{ap_discrepancy, bv_sum, li, li_series, tk_statistic};

use crate::{Error, Result};

/// A polynomial with non-negative integer coefficients, ascending order,
/// positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<u64>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<u64>) -> Result<IntPolynomial> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() || *coeffs.last().unwrap() == 0 {
            return Err(Error::InvalidArgument(
                "polynomial needs a positive leading coefficient".into(),
            ));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// x^2 + 1, the workhorse example.
    pub fn x_squared_plus_one() -> IntPolynomial {
        IntPolynomial {
            coeffs: vec![1, 0, 1],
        }
    }

    /// The identity polynomial x.
    pub fn x() -> IntPolynomial {
        IntPolynomial { coeffs: vec![0, 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Exact evaluation; None on 128-bit overflow.
    pub fn eval(&self, x: u64) -> Option<u128> {
        let mut acc = 0u128;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x as u128)?.checked_add(c as u128)?;
        }
        Some(acc)
    }

    /// Evaluation modulo m by Horner.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let m = m as u128;
        let x = x as u128 % m;
        let mut acc = 0u128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c as u128) % m;
        }
        acc as u64
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// An exact sum plus its normalization against the predicted main term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumReport {
    pub raw: u128,
    pub normalized: f64,
}

impl std::fmt::Display for SumReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "raw={} normalized={:.6}", self.raw, self.normalized)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{sum_tau, totient};

    #[test]
    fn polynomial_basics() {
        let p = IntPolynomial::x_squared_plus_one();
        assert_eq!(p.eval(3), Some(10));
        assert_eq!(p.eval_mod(3, 7), 3);
        assert_eq!(p.degree(), 2);
        assert!(IntPolynomial::new(vec![0, 0]).is_err());
        assert_eq!(format!("{p}"), "x^2 + 1");
    }

    #[test]
    fn tau_average_matches_log() {
        // Dirichlet: sum tau(n) = N ln N + (2 gamma - 1) N + O(sqrt N)
        let n = 1_000_000u64;
        let avg = sum_tau(n) as f64 / n as f64;
        assert!((avg - (n as f64).ln()).abs() <= 0.2, "avg={avg}");
    }

    #[test]
    fn totient_ratio_bounded_by_divisor_sum() {
        // q/phi(q) <= 3 sum_{d|q} 1/d; the products converge well below 3
        for q in 1u64..=10_000 {
            let lhs = q as f64 / totient(q) as f64;
            let rhs: f64 = crate::numkit::factorize(q, None)
                .divisors()
                .iter()
                .map(|&d| 1.0 / d as f64)
                .sum();
            assert!(lhs <= 3.0 * rhs, "q={q} lhs={lhs} rhs={rhs}");
        }
    }
}
