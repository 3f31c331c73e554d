//! Six-coordinate parameterizations of Type I and Type II solutions.
//!
//! A Type I solution of 4/n = 1/x + 1/y + 1/z (n divides x, and y, z are
//! coprime to n) corresponds to an integer point (a,b,c,d,e,f) of a
//! three-dimensional variety cut out by nine redundant constraints; the
//! projection is (x,y,z) = (abdn, acd, bcd).  Type II solutions (n divides
//! y and z) use a sibling variety with projection (abd, acdn, bcdn).
//!
//! Constraint checking works on arbitrary candidate coordinates, projection
//! demands a valid point, and lifting inverts the projection by extracting
//! the maximal common factor d and splitting the coprime core pairwise.
//! Lift followed by projection is the identity; projection followed by lift
//! returns the canonical representative with gcd(a,b,c) = 1.

use crate::{Error, Result};

/// Integer point candidate for the Type I variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SextupleI {
    pub a: u128,
    pub b: u128,
    pub c: u128,
    pub d: u128,
    pub e: u128,
    pub f: u128,
}

/// Integer point candidate for the Type II variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SextupleII {
    pub a: u128,
    pub b: u128,
    pub c: u128,
    pub d: u128,
    pub e: u128,
    pub f: u128,
}

impl SextupleI {
    pub fn new(a: u128, b: u128, c: u128, d: u128, e: u128, f: u128) -> Self {
        SextupleI { a, b, c, d, e, f }
    }
}

impl SextupleII {
    pub fn new(a: u128, b: u128, c: u128, d: u128, e: u128, f: u128) -> Self {
        SextupleII { a, b, c, d, e, f }
    }
}

/// Divisibility pattern of a solution relative to n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionTag {
    TypeI,
    TypeII,
    Other,
}

/// An ordered solution (x,y,z) of 4/n = 1/x + 1/y + 1/z with its tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Solution {
    pub n: u64,
    pub x: u128,
    pub y: u128,
    pub z: u128,
    pub tag: SolutionTag,
}

pub(crate) fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact test of `4xyz == n(yz + xz + xy)` that cannot overflow: both sides
/// are compared modulo eight fixed 61-bit primes.  The sides are below
/// 4 * (2^128)^3 = 2^386 for any u128 inputs, and the prime product exceeds
/// 2^487, so equal residues everywhere force equal integers.
pub fn satisfies_unit_equation(n: u64, x: u128, y: u128, z: u128) -> bool {
    if x == 0 || y == 0 || z == 0 || n == 0 {
        return false;
    }
    // fast path while everything fits
    let small = |v: u128| v < (1u128 << 40);
    if small(x) && small(y) && small(z) {
        let lhs = 4 * x * y * z;
        let rhs = n as u128 * (y * z + x * z + x * y);
        return lhs == rhs;
    }
    const PRIMES: [u128; 8] = [
        2_305_843_009_213_693_951, // 2^61 - 1
        2_305_843_009_213_693_921,
        2_305_843_009_213_693_907,
        2_305_843_009_213_693_723,
        2_305_843_009_213_693_693,
        2_305_843_009_213_693_669,
        2_305_843_009_213_693_613,
        2_305_843_009_213_693_561,
    ];
    for p in PRIMES {
        let (xm, ym, zm, nm) = (x % p, y % p, z % p, n as u128 % p);
        let lhs = 4 * xm % p * ym % p * zm % p;
        let rhs = nm * ((ym * zm + xm * zm) % p + xm * ym % p) % p;
        if lhs % p != rhs % p {
            return false;
        }
    }
    true
}

fn classify(n: u64, x: u128, y: u128, z: u128) -> SolutionTag {
    let n = n as u128;
    let type1 = x % n == 0 && gcd128(n, y) == 1 && gcd128(n, z) == 1;
    let type2 = gcd128(n, x) == 1 && y % n == 0 && z % n == 0;
    if type1 {
        SolutionTag::TypeI
    } else if type2 {
        SolutionTag::TypeII
    } else {
        SolutionTag::Other
    }
}

impl Solution {
    /// Build a verified solution; rejects triples that fail the equation.
    pub fn new(n: u64, x: u128, y: u128, z: u128) -> Result<Solution> {
        if !satisfies_unit_equation(n, x, y, z) {
            return Err(Error::InvalidArgument(format!(
                "({x},{y},{z}) does not solve 4/{n}"
            )));
        }
        Ok(Solution {
            n,
            x,
            y,
            z,
            tag: classify(n, x, y, z),
        })
    }
}

// checked product helpers; `None` means the candidate is far outside any
// feasible coordinate range and the constraint is reported as violated
fn p2(a: u128, b: u128) -> Option<u128> {
    a.checked_mul(b)
}
fn p3(a: u128, b: u128, c: u128) -> Option<u128> {
    p2(a, b)?.checked_mul(c)
}
fn p4(a: u128, b: u128, c: u128, d: u128) -> Option<u128> {
    p3(a, b, c)?.checked_mul(d)
}

fn eq(lhs: Option<u128>, rhs: Option<u128>) -> bool {
    matches!((lhs, rhs), (Some(l), Some(r)) if l == r)
}

/// Check a candidate against the nine Type I constraints; returns the list of
/// violated constraint numbers (1..=9), empty when the point is on the variety.
pub fn check_sigma1(n: u64, s: &SextupleI) -> Vec<u8> {
    let SextupleI { a, b, c, d, e, f } = *s;
    let n = n as u128;
    let mut bad = Vec::new();
    let a2d = p3(a, a, d);
    let b2d = p3(b, b, d);
    // I-1: 4abd = ne + 1
    if !eq(p4(4, a, b, d), p2(n, e).and_then(|v| v.checked_add(1))) {
        bad.push(1);
    }
    // I-2: ce = a + b
    if !eq(p2(c, e), a.checked_add(b)) {
        bad.push(2);
    }
    // I-3: 4abcd = na + nb + c
    let rhs3 = p2(n, a)
        .and_then(|v| v.checked_add(p2(n, b)?))
        .and_then(|v| v.checked_add(c));
    if !eq(p4(4, a, b, c).and_then(|v| v.checked_mul(d)), rhs3) {
        bad.push(3);
    }
    // I-4: 4acde = ne + 4a^2 d + 1
    let rhs4 = p2(n, e)
        .and_then(|v| v.checked_add(p2(4, a2d?)?))
        .and_then(|v| v.checked_add(1));
    if !eq(p4(4, a, c, d).and_then(|v| v.checked_mul(e)), rhs4) {
        bad.push(4);
    }
    // I-5: 4bcde = ne + 4b^2 d + 1
    let rhs5 = p2(n, e)
        .and_then(|v| v.checked_add(p2(4, b2d?)?))
        .and_then(|v| v.checked_add(1));
    if !eq(p4(4, b, c, d).and_then(|v| v.checked_mul(e)), rhs5) {
        bad.push(5);
    }
    // I-6: 4acd = n + f
    if !eq(p4(4, a, c, d), n.checked_add(f)) {
        bad.push(6);
    }
    // I-7: ef = 4a^2 d + 1
    if !eq(p2(e, f), p2(4, a2d.unwrap_or(u128::MAX)).and_then(|v| v.checked_add(1))) {
        bad.push(7);
    }
    // I-8: bf = na + c
    if !eq(p2(b, f), p2(n, a).and_then(|v| v.checked_add(c))) {
        bad.push(8);
    }
    // I-9: n^2 + 4c^2 d = f (4bcd - n)
    let lhs9 = p2(n, n).and_then(|v| v.checked_add(p4(4, c, c, d)?));
    let rhs9 = p4(4, b, c, d)
        .and_then(|v| v.checked_sub(n))
        .and_then(|v| v.checked_mul(f));
    if !eq(lhs9, rhs9) {
        bad.push(9);
    }
    bad
}

/// Check a candidate against the nine Type II constraints.
pub fn check_sigma2(n: u64, s: &SextupleII) -> Vec<u8> {
    let SextupleII { a, b, c, d, e, f } = *s;
    let n = n as u128;
    let mut bad = Vec::new();
    let a2d = p3(a, a, d);
    let b2d = p3(b, b, d);
    // II-1: 4abd = n + e
    if !eq(p4(4, a, b, d), n.checked_add(e)) {
        bad.push(1);
    }
    // II-2: ce = a + b
    if !eq(p2(c, e), a.checked_add(b)) {
        bad.push(2);
    }
    // II-3: 4abcd = a + b + nc
    let rhs3 = a
        .checked_add(b)
        .and_then(|v| v.checked_add(p2(n, c)?));
    if !eq(p4(4, a, b, c).and_then(|v| v.checked_mul(d)), rhs3) {
        bad.push(3);
    }
    // II-4: 4acde = n + 4a^2 d + e
    let rhs4 = n
        .checked_add(p2(4, a2d.unwrap_or(u128::MAX)).unwrap_or(u128::MAX))
        .and_then(|v| v.checked_add(e));
    if !eq(p4(4, a, c, d).and_then(|v| v.checked_mul(e)), rhs4) {
        bad.push(4);
    }
    // II-5: 4bcde = n + 4b^2 d + e
    let rhs5 = n
        .checked_add(p2(4, b2d.unwrap_or(u128::MAX)).unwrap_or(u128::MAX))
        .and_then(|v| v.checked_add(e));
    if !eq(p4(4, b, c, d).and_then(|v| v.checked_mul(e)), rhs5) {
        bad.push(5);
    }
    // II-6: 4acd = f + 1
    if !eq(p4(4, a, c, d), f.checked_add(1)) {
        bad.push(6);
    }
    // II-7: ef = n + 4a^2 d
    if !eq(p2(e, f), n.checked_add(p2(4, a2d.unwrap_or(u128::MAX)).unwrap_or(u128::MAX))) {
        bad.push(7);
    }
    // II-8: bf = nc + a
    if !eq(p2(b, f), p2(n, c).and_then(|v| v.checked_add(a))) {
        bad.push(8);
    }
    // II-9: 4c^2 dn + 1 = f (4bcd - 1)
    let lhs9 = p4(4, c, c, d)
        .and_then(|v| v.checked_mul(n))
        .and_then(|v| v.checked_add(1));
    let rhs9 = p4(4, b, c, d)
        .and_then(|v| v.checked_sub(1))
        .and_then(|v| v.checked_mul(f));
    if !eq(lhs9, rhs9) {
        bad.push(9);
    }
    bad
}

/// Project a valid Type I point to its solution (abdn, acd, bcd).
pub fn project1(n: u64, s: &SextupleI) -> Result<Solution> {
    let bad = check_sigma1(n, s);
    if !bad.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "sextuple violates Type I constraints {bad:?}"
        )));
    }
    let x = s.a * s.b * s.d * n as u128;
    let y = s.a * s.c * s.d;
    let z = s.b * s.c * s.d;
    Solution::new(n, x, y, z)
}

/// Project a valid Type II point to its solution (abd, acdn, bcdn).
pub fn project2(n: u64, s: &SextupleII) -> Result<Solution> {
    let bad = check_sigma2(n, s);
    if !bad.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "sextuple violates Type II constraints {bad:?}"
        )));
    }
    let x = s.a * s.b * s.d;
    let y = s.a * s.c * s.d * n as u128;
    let z = s.b * s.c * s.d * n as u128;
    Solution::new(n, x, y, z)
}

/// Split a coprime triple (x', y', z') with the mutual divisibility pattern
/// into x' = ab, y' = ac, z' = bc.
fn split_pairwise(xp: u128, yp: u128, zp: u128) -> Option<(u128, u128, u128)> {
    let a = gcd128(xp, yp);
    let b = xp / a;
    let c = yp / a;
    if b.checked_mul(c)? == zp {
        Some((a, b, c))
    } else {
        None
    }
}

/// Lift a Type I solution to the canonical variety point (gcd(a,b,c) = 1,
/// abcd coprime to n).  Inverse of [`project1`] on Type I solutions.
pub fn lift1(n: u64, x: u128, y: u128, z: u128) -> Result<SextupleI> {
    if !satisfies_unit_equation(n, x, y, z) {
        return Err(Error::InvalidArgument(format!(
            "({x},{y},{z}) does not solve 4/{n}"
        )));
    }
    let nn = n as u128;
    if x % nn != 0 || gcd128(nn, y) != 1 || gcd128(nn, z) != 1 {
        return Err(Error::Classification(format!(
            "({x},{y},{z}) is not a Type I solution for n={n}"
        )));
    }
    let x0 = x / nn;
    let d = gcd128(gcd128(x0, y), z);
    let (xp, yp, zp) = (x0 / d, y / d, z / d);
    let (a, b, c) = split_pairwise(xp, yp, zp).ok_or_else(|| {
        Error::Classification("coprime core does not split as (ab, ac, bc)".into())
    })?;
    let apb = a + b;
    if apb % c != 0 {
        return Err(Error::Classification("c does not divide a + b".into()));
    }
    let e = apb / c;
    let acd4 = 4 * a * c * d;
    if acd4 <= nn {
        return Err(Error::Classification("4acd <= n in a Type I lift".into()));
    }
    let s = SextupleI::new(a, b, c, d, e, acd4 - nn);
    let bad = check_sigma1(n, &s);
    if !bad.is_empty() {
        return Err(Error::Classification(format!(
            "lifted point violates constraints {bad:?}"
        )));
    }
    Ok(s)
}

/// Lift a Type II solution to the canonical variety point.  Inverse of
/// [`project2`] on Type II solutions.
pub fn lift2(n: u64, x: u128, y: u128, z: u128) -> Result<SextupleII> {
    if !satisfies_unit_equation(n, x, y, z) {
        return Err(Error::InvalidArgument(format!(
            "({x},{y},{z}) does not solve 4/{n}"
        )));
    }
    let nn = n as u128;
    if gcd128(nn, x) != 1 || y % nn != 0 || z % nn != 0 {
        return Err(Error::Classification(format!(
            "({x},{y},{z}) is not a Type II solution for n={n}"
        )));
    }
    let (y0, z0) = (y / nn, z / nn);
    let d = gcd128(gcd128(x, y0), z0);
    let (xp, yp, zp) = (x / d, y0 / d, z0 / d);
    let (a, b, c) = split_pairwise(xp, yp, zp).ok_or_else(|| {
        Error::Classification("coprime core does not split as (ab, ac, bc)".into())
    })?;
    let apb = a + b;
    if apb % c != 0 {
        return Err(Error::Classification("c does not divide a + b".into()));
    }
    let e = apb / c;
    let s = SextupleII::new(a, b, c, d, e, 4 * a * c * d - 1);
    let bad = check_sigma2(n, &s);
    if !bad.is_empty() {
        return Err(Error::Classification(format!(
            "lifted point violates constraints {bad:?}"
        )));
    }
    Ok(s)
}

/// Reflection y <-> z on the Type I variety:
/// (a,b,c,d,e,f) -> (b,a,c,d,e,(n^2 + 4c^2 d)/f).
pub fn reflect1(n: u64, s: &SextupleI) -> SextupleI {
    let num = (n as u128) * (n as u128) + 4 * s.c * s.c * s.d;
    debug_assert_eq!(num % s.f, 0);
    SextupleI::new(s.b, s.a, s.c, s.d, s.e, num / s.f)
}

/// Reflection y <-> z on the Type II variety:
/// (a,b,c,d,e,f) -> (b,a,c,d,e,(4c^2 dn + 1)/f).
pub fn reflect2(n: u64, s: &SextupleII) -> SextupleII {
    let num = 4 * s.c * s.c * s.d * (n as u128) + 1;
    debug_assert_eq!(num % s.f, 0);
    SextupleII::new(s.b, s.a, s.c, s.d, s.e, num / s.f)
}

/// Dilation (a,b,c,d) -> (la, lb, lc, d/l^2); defined when l^2 divides d.
pub fn dilate1(s: &SextupleI, l: u128) -> Option<SextupleI> {
    if l == 0 || s.d % (l * l) != 0 {
        return None;
    }
    Some(SextupleI::new(
        s.a * l,
        s.b * l,
        s.c * l,
        s.d / (l * l),
        s.e,
        s.f,
    ))
}
