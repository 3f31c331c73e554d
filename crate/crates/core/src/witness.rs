//! Fast witness search: produce one verified solution of 4/n = 1/x + 1/y + 1/z
//! per n, or report that none was found within the search budget.
//!
//! Strategy, in order:
//! 1. composite n: scale a witness for its smallest prime factor p, since a
//!    solution for 4/p times m = n/p solves 4/n;
//! 2. otherwise scan small Type I data (a, d, f | 4a^2 d + 1 with
//!    4ad | n + f) and small Type II data (a, d, e with the three exact
//!    divisibilities of the second variety), in growing rings.
//!
//! The first ring is also used to count distinct cheap witnesses; range
//! verification stores the minimum of that count per shard as a crude
//! solvability margin.  Absence of a witness is only ever reported as
//! "not found", never as a proof of nonexistence.

use crate::numkit::{factorize_wide, SpfTable};
use crate::sextuple::{
    check_sigma1, check_sigma2, project1, project2, SextupleI, SextupleII, Solution,
};
use std::collections::HashSet;
use std::sync::OnceLock;

/// Witness plus the number of distinct solutions the first search ring saw.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub solution: Solution,
    pub cheap_count: u32,
}

const RING0: u64 = 6;
const RING_MAX: u64 = 1 << 22;

// divisor lists of 4a^2 d + 1 for the first ring, shared across calls
fn ring0_type1() -> &'static Vec<(u64, u64, Vec<u64>)> {
    static T: OnceLock<Vec<(u64, u64, Vec<u64>)>> = OnceLock::new();
    T.get_or_init(|| {
        let mut v = Vec::new();
        for a in 1..=RING0 {
            for d in 1..=RING0 {
                if a * d > RING0 {
                    continue;
                }
                let divs = factorize_wide((4 * a * a * d + 1) as u128)
                    .divisors()
                    .into_iter()
                    .map(|x| x as u64)
                    .collect();
                v.push((a, d, divs));
            }
        }
        v
    })
}

fn try_type1(n: u64, a: u64, d: u64, f: u64) -> Option<Solution> {
    let (n, a, d, f) = (n as u128, a as u128, d as u128, f as u128);
    let ad4 = 4 * a * d;
    if (n + f) % ad4 != 0 {
        return None;
    }
    let c = (n + f) / ad4;
    let e = (4 * a * a * d + 1) / f;
    let ce = c * e;
    if ce <= a {
        return None;
    }
    let s = SextupleI::new(a, ce - a, c, d, e, f);
    if !check_sigma1(n as u64, &s).is_empty() {
        return None;
    }
    project1(n as u64, &s).ok()
}

fn try_type2(n: u64, a: u64, d: u64, e: u64) -> Option<Solution> {
    let (n, a, d, e) = (n as u128, a as u128, d as u128, e as u128);
    let ad4 = 4 * a * d;
    let a2d4 = 4 * a * a * d;
    if (n + e) % ad4 != 0 || (n + a2d4) % e != 0 || (n + a2d4 + e) % (ad4 * e) != 0 {
        return None;
    }
    let b = (n + e) / ad4;
    let c = (n + a2d4 + e) / (ad4 * e);
    let f = (n + a2d4) / e;
    if b == 0 || c == 0 {
        return None;
    }
    let s = SextupleII::new(a, b, c, d, e, f);
    if !check_sigma2(n as u64, &s).is_empty() {
        return None;
    }
    project2(n as u64, &s).ok()
}

/// First-ring scan; returns every distinct solution it finds.
fn ring0_scan(n: u64) -> Vec<Solution> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (a, d, divs) in ring0_type1() {
        for &f in divs {
            if let Some(s) = try_type1(n, *a, *d, f) {
                if seen.insert((s.x, s.y, s.z)) {
                    out.push(s);
                }
            }
        }
    }
    for a in 1..=RING0 {
        for d in 1..=RING0 {
            if a * d > RING0 {
                continue;
            }
            for e in 1..=4 * RING0 {
                if let Some(s) = try_type2(n, a, d, e) {
                    if seen.insert((s.x, s.y, s.z)) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

/// Widening scan beyond the first ring; returns at the first hit.
fn ring_scan(n: u64, lo: u64, hi: u64) -> Option<Solution> {
    // Type I: ad in (lo, hi]
    for a in 1..=hi {
        if a * a > hi {
            break;
        }
        let d_lo = (lo / a + 1).max(a);
        for d in d_lo..=hi / a {
            // both orders (a,d) and (d,a) when entering a fresh ring
            for (aa, dd) in [(a, d), (d, a)] {
                for f in factorize_wide((4 * aa * aa * dd + 1) as u128).divisors() {
                    if let Some(s) = try_type1(n, aa, dd, f as u64) {
                        return Some(s);
                    }
                }
                for e in 1..=64u64 {
                    if let Some(s) = try_type2(n, aa, dd, e) {
                        return Some(s);
                    }
                }
                if aa == dd {
                    break;
                }
            }
        }
    }
    None
}

fn scale(sol: &Solution, n: u64, m: u128) -> Solution {
    Solution::new(n, sol.x * m, sol.y * m, sol.z * m)
        .expect("scaled witness must satisfy the equation")
}

/// Find a verified witness together with its cheap solvability margin.
pub fn witness_with_margin(n: u64, table: Option<&SpfTable>) -> Option<WitnessReport> {
    if n < 2 {
        return None;
    }
    // composite: reuse the smallest prime factor's witness (f(nm) >= f(n))
    let p = smallest_prime_factor(n, table);
    if p < n {
        let inner = witness_with_margin(p, table)?;
        return Some(WitnessReport {
            solution: scale(&inner.solution, n, (n / p) as u128),
            cheap_count: 1,
        });
    }
    let ring0 = ring0_scan(n);
    if !ring0.is_empty() {
        return Some(WitnessReport {
            solution: ring0[0],
            cheap_count: ring0.len().min(u32::MAX as usize) as u32,
        });
    }
    let mut lo = RING0 * RING0;
    let mut hi = lo * 4;
    while lo < RING_MAX {
        if let Some(s) = ring_scan(n, lo, hi) {
            return Some(WitnessReport {
                solution: s,
                cheap_count: 1,
            });
        }
        lo = hi;
        hi *= 4;
    }
    None
}

fn smallest_prime_factor(n: u64, table: Option<&SpfTable>) -> u64 {
    if let Some(t) = table {
        if n <= t.limit() {
            return t.spf(n);
        }
    }
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Find one verified solution of 4/n = 1/x + 1/y + 1/z, if the search
/// strategy locates one.  Returns `None` for n < 2.
pub fn has_solution(n: u64) -> Option<Solution> {
    witness_with_margin(n, None).map(|w| w.solution)
}
