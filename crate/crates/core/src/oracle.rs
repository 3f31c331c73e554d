//! Independent brute-force enumeration of m/n = 1/x + 1/y + 1/z, used as
//! ground truth for every counter in the crate.
//!
//! Two routes are implemented.  [`enumerate_scan`] sweeps the minimum
//! denominator x, scans y over the interval allowed by the remaining mass and
//! solves for z exactly in rationals; it is the slow, transparent reference.
//! [`enumerate_all`] replaces the y-scan with divisor enumeration: with
//! r = m/n - 1/x = p/q in lowest terms, the solutions of 1/y + 1/z = p/q
//! correspond to factorizations (py - q)(pz - q) = q^2, so y runs over
//! divisors u <= q of q^2 with u = -q mod p.  The two routes are checked
//! against each other in the test suite; everything downstream treats
//! `enumerate_all` as the oracle.

use crate::numkit::{factorize, sieve_spf, SpfTable};
use crate::rat::Rat;
use crate::sextuple::{gcd128, Solution, SolutionTag};
use crate::{Error, Result};

/// Default capacity bound for oracle enumeration.
pub const DEFAULT_ORACLE_LIMIT: u64 = 5000;

/// Exhaustive ordered solution list for one (m, n), with per-tag counts.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub m: u64,
    pub n: u64,
    pub triples: Vec<Solution>,
    pub f: u64,
    pub f_i: u64,
    pub f_ii: u64,
    pub other: u64,
}

impl SolutionSet {
    fn from_ordered(m: u64, n: u64, triples: Vec<Solution>) -> SolutionSet {
        let f = triples.len() as u64;
        let f_i = triples.iter().filter(|s| s.tag == SolutionTag::TypeI).count() as u64;
        let f_ii = triples.iter().filter(|s| s.tag == SolutionTag::TypeII).count() as u64;
        SolutionSet {
            m,
            n,
            other: f - f_i - f_ii,
            triples,
            f,
            f_i,
            f_ii,
        }
    }
}

fn classify(n: u64, x: u128, y: u128, z: u128) -> SolutionTag {
    let n = n as u128;
    if x % n == 0 && gcd128(n, y) == 1 && gcd128(n, z) == 1 {
        SolutionTag::TypeI
    } else if gcd128(n, x) == 1 && y % n == 0 && z % n == 0 {
        SolutionTag::TypeII
    } else {
        SolutionTag::Other
    }
}

/// Expand an unordered triple x <= y <= z into its distinct orderings.
fn ordered_expansions(x: u128, y: u128, z: u128) -> Vec<(u128, u128, u128)> {
    if x == y && y == z {
        vec![(x, y, z)]
    } else if x == y {
        vec![(x, y, z), (x, z, y), (z, x, y)]
    } else if y == z {
        vec![(x, y, z), (y, x, z), (y, z, x)]
    } else {
        vec![
            (x, y, z),
            (x, z, y),
            (y, x, z),
            (y, z, x),
            (z, x, y),
            (z, y, x),
        ]
    }
}

fn push_ordered(n: u64, x: u128, y: u128, z: u128, out: &mut Vec<Solution>) {
    for (a, b, c) in ordered_expansions(x, y, z) {
        out.push(Solution {
            n,
            x: a,
            y: b,
            z: c,
            tag: classify(n, a, b, c),
        });
    }
}

/// Unordered base triples (x <= y <= z) by the divisor route.
fn base_triples_divisor(m: u64, n: u64, table: &SpfTable) -> Vec<(u128, u128, u128)> {
    let mut out = Vec::new();
    let n_fact = factorize(n, Some(table));
    let x_hi = 3 * n / m;
    for x in n / m + 1..=x_hi {
        let p0 = (m as u128) * (x as u128) - n as u128;
        let q0 = (n as u128) * (x as u128);
        let g = gcd128(p0, q0);
        let (p, q) = (p0 / g, q0 / g);
        // factorization of q = n*x/g assembled from the parts
        let q_fact = n_fact.merged(&factorize(x, Some(table))).divided_exact(g);
        debug_assert_eq!(q_fact.value(), q);
        for u in q_fact.squared().divisors() {
            if u > q {
                break;
            }
            if (q + u) % p != 0 {
                continue;
            }
            let y = (q + u) / p;
            if y < x as u128 {
                continue;
            }
            let v = q * q / u;
            debug_assert_eq!((q + v) % p, 0);
            let z = (q + v) / p;
            out.push((x as u128, y, z));
        }
    }
    out
}

/// Enumerate every ordered solution of m/n = 1/x + 1/y + 1/z.
///
/// Capacity-limited to [`DEFAULT_ORACLE_LIMIT`]; use
/// [`enumerate_all_with_limit`] for explicit budgets.
pub fn enumerate_all(m: u64, n: u64) -> Result<SolutionSet> {
    enumerate_all_with_limit(m, n, DEFAULT_ORACLE_LIMIT)
}

/// Enumerate with an explicit capacity bound on n.
pub fn enumerate_all_with_limit(m: u64, n: u64, limit: u64) -> Result<SolutionSet> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "enumerate_all requires m, n >= 1, got m={m}, n={n}"
        )));
    }
    if n > limit {
        return Err(Error::Capacity(format!(
            "oracle enumeration capped at n <= {limit}, got {n}"
        )));
    }
    let table = sieve_spf(2.max(3 * n / m).max(n))?;
    let mut out = Vec::new();
    for (x, y, z) in base_triples_divisor(m, n, &table) {
        push_ordered(n, x, y, z, &mut out);
    }
    Ok(SolutionSet::from_ordered(m, n, out))
}

/// Reference route: scan y over the interval allowed by the remaining mass
/// and solve z exactly.  Slow; used to validate [`enumerate_all`].
pub fn enumerate_scan(m: u64, n: u64) -> Result<SolutionSet> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument("m, n >= 1 required".into()));
    }
    let mut out = Vec::new();
    for x in (n / m + 1)..=(3 * n / m) {
        let p0 = (m as u128) * (x as u128) - n as u128;
        let q0 = (n as u128) * (x as u128);
        let g = gcd128(p0, q0);
        let (p, q) = (p0 / g, q0 / g);
        let y_lo = (q / p + 1).max(x as u128);
        let y_hi = 2 * q / p;
        for y in y_lo..=y_hi {
            // 1/z = p/q - 1/y = (py - q)/(qy)
            let num = p * y - q;
            let den = q * y;
            if num > 0 && den % num == 0 {
                let z = den / num;
                debug_assert!(z >= y);
                push_ordered(n, x as u128, y, z, &mut out);
            }
        }
    }
    Ok(SolutionSet::from_ordered(m, n, out))
}

/// Ordered pair count g2(m, n) = #{(x, y): m/n = 1/x + 1/y}.
pub fn g2(m: u64, n: u64) -> u64 {
    assert!(m >= 1 && n >= 1);
    let mut count = 0u64;
    for x in (n / m + 1)..=(2 * n / m) {
        let num = (m as u128) * (x as u128) - n as u128;
        let den = (n as u128) * (x as u128);
        if den % num == 0 {
            let y = den / num;
            if y > x as u128 {
                count += 2;
            } else if y == x as u128 {
                count += 1;
            }
        }
    }
    count
}

/// Count ordered k-tuples (t_1, ..., t_k) with m/n = sum 1/t_i and
/// n | t_j for all j >= 2 (t_1 unrestricted, following the k-term
/// generation convention).
pub fn brute_type2_k(m: u64, k: u32, n: u64) -> Result<u64> {
    if k < 3 {
        return Err(Error::InvalidArgument("brute_type2_k requires k >= 3".into()));
    }
    if m <= k as u64 {
        return Err(Error::InvalidArgument(
            "brute_type2_k requires m > k (the greedy regime is excluded)".into(),
        ));
    }
    if k > 5 || (k >= 5 && n > 100) || n > 500 {
        return Err(Error::Capacity(format!(
            "brute_type2_k capped at k <= 5 and small n, got k={k}, n={n}"
        )));
    }
    let mut total = 0u64;
    // the divisible slots contribute at most (k-1)/n, so t_1 is pinned down
    let t1_lo = n / m + 1;
    let t1_hi = n / (m - k as u64 + 1);
    for t1 in t1_lo..=t1_hi {
        let target = Rat::new(m as u128, n as u128).checked_sub(Rat::unit(t1 as u128))?;
        if target.is_zero() {
            continue;
        }
        // sum_{j>=2} 1/s_j = n * target, where t_j = n s_j
        let scaled = Rat::new(target.num() * n as u128, target.den());
        let mut multiset = Vec::new();
        total += count_unit_multisets(scaled, k - 1, 1, &mut multiset)?;
    }
    Ok(total)
}

/// Count ordered r-tuples with reciprocal sum `target`, enumerating multisets
/// (ascending) and weighting each by its distinct permutations.
fn count_unit_multisets(target: Rat, r: u32, min_s: u128, path: &mut Vec<u128>) -> Result<u64> {
    if target.is_zero() {
        return Ok(0);
    }
    if r == 1 {
        // 1/s = p/q is solvable only for reduced p = 1
        if target.num() == 1 && target.den() >= min_s {
            path.push(target.den());
            let w = permutation_count(path);
            path.pop();
            return Ok(w);
        }
        return Ok(0);
    }
    let mut total = 0u64;
    let s_lo = (target.den() / target.num() + 1).max(min_s);
    let s_hi = (r as u128) * target.den() / target.num();
    for s in s_lo..=s_hi {
        let rest = target.checked_sub(Rat::unit(s))?;
        path.push(s);
        total += count_unit_multisets(rest, r - 1, s, path)?;
        path.pop();
    }
    Ok(total)
}

fn permutation_count(multiset: &[u128]) -> u64 {
    let mut fact = [1u64; 8];
    for i in 1..8 {
        fact[i] = fact[i - 1] * i as u64;
    }
    let mut total = fact[multiset.len()];
    let mut i = 0;
    while i < multiset.len() {
        let mut j = i;
        while j < multiset.len() && multiset[j] == multiset[i] {
            j += 1;
        }
        total /= fact[j - i];
        i = j;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_table_anchor() {
        let expected = [0u64, 3, 12, 10, 12, 39, 36, 46];
        for (i, &f) in expected.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(enumerate_all(4, n).unwrap().f, f, "f({n})");
        }
    }

    #[test]
    fn classification_anchor() {
        let s = enumerate_all(4, 3).unwrap();
        assert_eq!((s.f, s.f_i, s.f_ii, s.other), (12, 3, 1, 8));
        let s = enumerate_all(4, 2).unwrap();
        assert_eq!((s.f, s.f_i, s.f_ii), (3, 0, 1));
        let s = enumerate_all(4, 9).unwrap();
        assert_eq!((s.f_i, s.f_ii), (0, 0));
        let s = enumerate_all(4, 5).unwrap();
        assert_eq!((s.f_i, s.f_ii), (2, 2));
    }

    #[test]
    fn routes_agree() {
        for n in 1..=120 {
            let a = enumerate_all(4, n).unwrap();
            let b = enumerate_scan(4, n).unwrap();
            assert_eq!(a.f, b.f, "n={n}");
            assert_eq!((a.f_i, a.f_ii), (b.f_i, b.f_ii), "n={n}");
        }
        for (m, n) in [(3u64, 35u64), (5, 12), (5, 49), (6, 25), (8, 9)] {
            let a = enumerate_all(m, n).unwrap();
            let b = enumerate_scan(m, n).unwrap();
            assert_eq!(a.f, b.f, "m={m} n={n}");
        }
    }

    #[test]
    fn every_triple_satisfies_equation() {
        for n in [2u64, 3, 6, 7, 30, 97] {
            let s = enumerate_all(4, n).unwrap();
            for t in &s.triples {
                let lhs = Rat::unit(t.x)
                    .checked_add(Rat::unit(t.y))
                    .unwrap()
                    .checked_add(Rat::unit(t.z))
                    .unwrap();
                assert_eq!(lhs, Rat::new(4, n as u128));
            }
            assert_eq!(s.f, s.f_i + s.f_ii + s.other);
        }
    }

    #[test]
    fn capacity_enforced() {
        assert!(matches!(enumerate_all(4, 5001), Err(Error::Capacity(_))));
        assert!(enumerate_all_with_limit(4, 5001, 6000).is_ok());
    }

    #[test]
    fn g2_values() {
        assert_eq!(g2(4, 3), 2);
        assert_eq!(g2(2, 1), 1);
    }

    #[test]
    fn g2_crude_bound() {
        for n in 2..=500 {
            assert!(enumerate_all(4, n).unwrap().f >= g2(4, n), "n={n}");
        }
    }

    #[test]
    fn brute_type2_small() {
        // (1,2,2) is the only tuple for m=4, k=3, n=2
        assert_eq!(brute_type2_k(4, 3, 2).unwrap(), 1);
        // n=3: only the (1,6,6) pattern has both later slots divisible by 3
        assert_eq!(brute_type2_k(4, 3, 3).unwrap(), 1);
        // 5/2 needs 1/t1 >= 3/2: impossible
        assert_eq!(brute_type2_k(5, 3, 2).unwrap(), 0);
        // 5/3 = 1/1 + 1/3 + 1/3
        assert_eq!(brute_type2_k(5, 3, 3).unwrap(), 1);
        // 5/2 = 1/1 + 1/2 + 1/2 + ... over k=4: (1,2,2,2)
        assert_eq!(brute_type2_k(5, 4, 2).unwrap(), 1);
        assert!(brute_type2_k(4, 6, 2).is_err());
        assert!(brute_type2_k(4, 3, 501).is_err());
    }
}
