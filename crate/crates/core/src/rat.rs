//! Minimal exact non-negative rational type.
//!
//! Used wherever a residual unit-fraction test has to be exact: the oracle
//! enumerations and the k-term verification.  All operations reduce eagerly
//! and use checked 128-bit arithmetic; an overflow is reported, never wrapped.

use crate::{Error, Result};

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A reduced fraction `num/den` with `den >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rat {
    num: u128,
    den: u128,
}

impl Rat {
    pub fn new(num: u128, den: u128) -> Rat {
        assert!(den != 0, "zero denominator");
        if num == 0 {
            return Rat { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        Rat {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Rat {
        Rat { num: 0, den: 1 }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `1/d`.
    pub fn unit(d: u128) -> Rat {
        assert!(d != 0);
        Rat { num: 1, den: d }
    }

    pub fn checked_add(self, other: Rat) -> Result<Rat> {
        let g = gcd(self.den, other.den);
        let (da, db) = (self.den / g, other.den / g);
        // lcm = da * db * g; numerator = num_a * db + num_b * da
        let lhs = self.num.checked_mul(db);
        let rhs = other.num.checked_mul(da);
        let den = da.checked_mul(other.den);
        match (lhs, rhs, den) {
            (Some(l), Some(r), Some(d)) => match l.checked_add(r) {
                Some(n) => Ok(Rat::new(n, d)),
                None => Err(Error::Overflow("rational addition".into())),
            },
            _ => Err(Error::Overflow("rational addition".into())),
        }
    }

    /// `self - other`, requiring the result to be non-negative.
    pub fn checked_sub(self, other: Rat) -> Result<Rat> {
        let g = gcd(self.den, other.den);
        let (da, db) = (self.den / g, other.den / g);
        let lhs = self.num.checked_mul(db);
        let rhs = other.num.checked_mul(da);
        let den = da.checked_mul(other.den);
        match (lhs, rhs, den) {
            (Some(l), Some(r), Some(d)) => {
                if l < r {
                    Err(Error::Degenerate("negative rational difference".into()))
                } else {
                    Ok(Rat::new(l - r, d))
                }
            }
            _ => Err(Error::Overflow("rational subtraction".into())),
        }
    }
}

impl std::fmt::Display for Rat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact test that `sum_i 1/t_i == m/n`.
pub fn unit_sum_equals(ts: &[u128], m: u64, n: u64) -> Result<bool> {
    let mut acc = Rat::zero();
    for &t in ts {
        if t == 0 {
            return Ok(false);
        }
        acc = acc.checked_add(Rat::unit(t))?;
    }
    Ok(acc == Rat::new(m as u128, n as u128))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces() {
        assert_eq!(Rat::new(6, 4), Rat::new(3, 2));
        assert_eq!(Rat::new(0, 7), Rat::zero());
    }

    #[test]
    fn unit_sums() {
        assert!(unit_sum_equals(&[2, 3, 6], 1, 1).unwrap());
        assert!(unit_sum_equals(&[1, 2, 2], 4, 2).unwrap());
        assert!(unit_sum_equals(&[2, 5, 10], 4, 5).unwrap());
        assert!(!unit_sum_equals(&[2, 5, 11], 4, 5).unwrap());
    }

    #[test]
    fn shared_factors_keep_denominators_small() {
        // denominators of the k-term solutions share nearly all their factors;
        // eager reduction must keep the running denominator at their lcm
        let ts = [6u128 * 1_000_003, 10 * 1_000_003, 15 * 1_000_003];
        let mut acc = Rat::zero();
        for &t in &ts {
            acc = acc.checked_add(Rat::unit(t)).unwrap();
        }
        // 1/6p + 1/10p + 1/15p = 1/3p
        assert_eq!(acc, Rat::new(1, 3 * 1_000_003));
    }

    #[test]
    fn overflow_is_reported() {
        let big = u128::MAX / 2;
        let r = Rat::unit(big).checked_add(Rat::unit(big - 1));
        assert!(matches!(r, Err(Error::Overflow(_))));
    }
}
