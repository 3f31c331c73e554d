//! Generation, exact verification and injective reconstruction of k-term
//! Type II solutions m/n = 1/t_1 + ... + 1/t_k with n dividing t_2, ..., t_k.
//!
//! Generator data is a tuple (x_I) indexed by the subsets I of {1..k} that
//! contain 2 and differ from {2} (there are 2^(k-1) - 1 of them), plus a
//! scalar e.  Writing P1 for the product of x_I over 1 not in I, P2 over
//! 1 in I, and s for the sum over j >= 3 of prod_{j not in I} x_I:
//!
//!   b  = e * P1 - s,       t_1 = b * P2,        n = m * t_1 - e,
//!   t_2 = n * prod x_I,    t_j = b * n * prod_{j in I} x_I.
//!
//! When w = prod_{I != {1,2}} x_I is squarefree the map is injective and can
//! be inverted: e = m t_1 - n, and each x_I is recovered from the exact
//! integers t_2 t_j / (n^2 t_1) by splitting off the maximal square part and
//! running an iterated-gcd cascade over subset families.
//!
//! Two x-boxes are supported for counting.  The lemma box uses the bound
//! x_I <= N^(1/2^(k+2)) with x_I > 1, which is empty below astronomically
//! large N; the scaled box uses x_I <= N^(1/2^(k-1)) with x_I >= 1, which
//! preserves the counting shape at desk scale.  Every tuple that is counted
//! is individually validated, so both boxes only ever count genuine,
//! distinct Type II solutions.

use crate::numkit::{factorize_wide, sieve_spf};
use crate::rat::Rat;
use crate::{Error, Result};

/// The index set: subsets of {1..k} containing 2, other than {2} itself,
/// as bitmasks (bit j-1 set iff j is in I), ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    pub k: u32,
    pub members: Vec<u32>,
}

/// Build the index set for k >= 3 (capped at k = 7: 63 coordinates).
pub fn index_set(k: u32) -> Result<IndexSet> {
    if !(3..=7).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "index_set requires 3 <= k <= 7, got {k}"
        )));
    }
    let mut members = Vec::new();
    for mask in 1u32..(1 << k) {
        if mask & 0b10 != 0 && mask != 0b10 {
            members.push(mask);
        }
    }
    members.sort_unstable();
    debug_assert_eq!(members.len(), (1usize << (k - 1)) - 1);
    Ok(IndexSet { k, members })
}

/// Which x-box bound applies during validated generation and counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiBound {
    /// x_I in (1, N^(1/2^(k+2))]: the asymptotic-lemma box.
    Lemma,
    /// x_I in [1, N^(1/2^(k-1))]: the desk-scale box.
    Scaled,
}

/// Generator data ((x_I), e) for a fixed (m, k) and budget N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenTuple {
    pub m: u64,
    pub k: u32,
    pub budget: u64,
    /// x values aligned with `index_set(k).members`.
    pub x: Vec<u64>,
    pub e: u64,
}

/// Largest b with b^r <= n.
fn int_root(n: u64, r: u32) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut b = (n as f64).powf(1.0 / r as f64).round() as u64;
    b = b.max(1);
    let pow = |b: u64| -> Option<u128> {
        let mut acc = 1u128;
        for _ in 0..r {
            acc = acc.checked_mul(b as u128)?;
            if acc > n as u128 {
                return Some(acc);
            }
        }
        Some(acc)
    };
    while pow(b).is_none_or(|p| p > n as u128) {
        b -= 1;
    }
    while pow(b + 1).is_some_and(|p| p <= n as u128) {
        b += 1;
    }
    b
}

fn is_squarefree(w: u128) -> bool {
    if w == 0 {
        return false;
    }
    factorize_wide(w).mobius() != 0
}

struct Products {
    all: u128,
    without_1: u128,
    with_1: u128,
    sub_sum: u128,
    w: u128,
}

fn products(idx: &IndexSet, x: &[u64]) -> Option<Products> {
    let mut all = 1u128;
    let mut without_1 = 1u128;
    let mut with_1 = 1u128;
    let mut w = 1u128;
    for (i, &mask) in idx.members.iter().enumerate() {
        let v = x[i] as u128;
        all = all.checked_mul(v)?;
        if mask & 1 == 0 {
            without_1 = without_1.checked_mul(v)?;
        } else {
            with_1 = with_1.checked_mul(v)?;
        }
        if mask != 0b11 {
            w = w.checked_mul(v)?;
        }
    }
    let mut sub_sum = 0u128;
    for j in 3..=idx.k {
        let bit = 1u32 << (j - 1);
        let mut p = 1u128;
        for (i, &mask) in idx.members.iter().enumerate() {
            if mask & bit == 0 {
                p = p.checked_mul(x[i] as u128)?;
            }
        }
        sub_sum = sub_sum.checked_add(p)?;
    }
    Some(Products {
        all,
        without_1,
        with_1,
        sub_sum,
        w,
    })
}

impl GenTuple {
    /// Structural validity plus (optionally) the box and interval bounds.
    pub fn validate(&self, bound: Option<XiBound>) -> Result<()> {
        let idx = index_set(self.k)?;
        if self.x.len() != idx.members.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} x-coordinates, got {}",
                idx.members.len(),
                self.x.len()
            )));
        }
        if self.e < 1 || self.x.iter().any(|&v| v < 1) {
            return Err(Error::InvalidArgument("coordinates must be >= 1".into()));
        }
        let p = products(&idx, &self.x)
            .ok_or_else(|| Error::Overflow("generator products".into()))?;
        if !is_squarefree(p.w) {
            return Err(Error::InvalidArgument(
                "product over I != {1,2} must be squarefree".into(),
            ));
        }
        if let Some(b) = bound {
            let (xi_min, xi_max) = match b {
                XiBound::Lemma => (2, int_root(self.budget, 1 << (self.k + 2))),
                XiBound::Scaled => (1, int_root(self.budget, 1 << (self.k - 1))),
            };
            if self.x.iter().any(|&v| v < xi_min || v > xi_max) {
                return Err(Error::InvalidArgument(format!(
                    "x out of box [{xi_min}, {xi_max}]"
                )));
            }
            let prod = p
                .all
                .checked_mul(self.e as u128)
                .ok_or_else(|| Error::Overflow("e * prod x".into()))?;
            let lo = (self.budget as u128).div_ceil(2 * self.m as u128);
            let hi = self.budget as u128 / self.m as u128;
            if prod < lo || prod > hi {
                return Err(Error::InvalidArgument(format!(
                    "e * prod x = {prod} outside [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// A generated solution: n and the k denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub n: u64,
    pub ts: Vec<u128>,
}

/// Run the generator.  With `bound = None` only structural validity is
/// demanded (hand examples and samplers); a bound additionally enforces the
/// box and interval constraints, which guarantee n <= budget.
pub fn generate(t: &GenTuple, bound: Option<XiBound>) -> Result<Generated> {
    t.validate(bound)?;
    let idx = index_set(t.k)?;
    let p = products(&idx, &t.x).ok_or_else(|| Error::Overflow("products".into()))?;
    let e128 = t.e as u128;
    let lead = e128
        .checked_mul(p.without_1)
        .ok_or_else(|| Error::Overflow("e * P1".into()))?;
    if lead <= p.sub_sum {
        return Err(Error::Degenerate(format!(
            "b = {lead} - {} is not positive",
            p.sub_sum
        )));
    }
    let b = lead - p.sub_sum;
    let t1 = b
        .checked_mul(p.with_1)
        .ok_or_else(|| Error::Overflow("t_1".into()))?;
    let mt1 = t1
        .checked_mul(t.m as u128)
        .ok_or_else(|| Error::Overflow("m * t_1".into()))?;
    if mt1 <= e128 {
        return Err(Error::Degenerate("n = m t_1 - e is not positive".into()));
    }
    let n128 = mt1 - e128;
    let n = u64::try_from(n128).map_err(|_| Error::Overflow("n exceeds u64".into()))?;
    if bound.is_some() && n > t.budget {
        return Err(Error::Degenerate(format!("n = {n} exceeds budget {}", t.budget)));
    }
    let mut ts = Vec::with_capacity(t.k as usize);
    ts.push(t1);
    ts.push(
        n128.checked_mul(p.all)
            .ok_or_else(|| Error::Overflow("t_2".into()))?,
    );
    for j in 3..=t.k {
        let bit = 1u32 << (j - 1);
        let mut prod = b
            .checked_mul(n128)
            .ok_or_else(|| Error::Overflow("t_j".into()))?;
        for (i, &mask) in idx.members.iter().enumerate() {
            if mask & bit != 0 {
                prod = prod
                    .checked_mul(t.x[i] as u128)
                    .ok_or_else(|| Error::Overflow("t_j".into()))?;
            }
        }
        ts.push(prod);
    }
    let out = Generated { n, ts };
    if !verify_mk(t.m, out.n, &out.ts)? {
        return Err(Error::Degenerate("generated tuple failed verification".into()));
    }
    Ok(out)
}

/// Exact check that m/n = sum 1/t_i with n | t_j for all j >= 2.
pub fn verify_mk(m: u64, n: u64, ts: &[u128]) -> Result<bool> {
    if n == 0 || m == 0 || ts.is_empty() || ts.contains(&0) {
        return Ok(false);
    }
    if ts[1..].iter().any(|&t| t % n as u128 != 0) {
        return Ok(false);
    }
    let mut acc = Rat::zero();
    for &t in ts {
        acc = acc.checked_add(Rat::unit(t))?;
    }
    Ok(acc == Rat::new(m as u128, n as u128))
}

fn exact_div(num: u128, den: u128) -> Result<u128> {
    if den == 0 || num % den != 0 {
        return Err(Error::Reconstruction(format!("{num} not divisible by {den}")));
    }
    Ok(num / den)
}

/// Split v into (s, w) with v = s^2 w and w squarefree.
fn square_split(v: u128) -> (u128, u128) {
    let mut s = 1u128;
    let mut w = 1u128;
    for &(p, e) in factorize_wide(v).pairs() {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            w *= p;
        }
    }
    (s, w)
}

/// Recover x_{prefix | {2} | S} for nonempty S in {3..k} from the per-j
/// products A_j = prod_{S containing j} x_S, by decreasing cardinality.
fn gcd_cascade(k: u32, a: &mut [u128]) -> Result<Vec<(u32, u128)>> {
    let js: Vec<u32> = (3..=k).collect();
    let mut subsets: Vec<u32> = (1u32..(1 << js.len())).collect();
    subsets.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    let mut out = Vec::new();
    for smask in subsets {
        let mut g = 0u128;
        for (bit, &j) in js.iter().enumerate() {
            if smask & (1 << bit) != 0 {
                g = crate::sextuple::gcd128(g, a[(j - 3) as usize]);
            }
        }
        for (bit, &j) in js.iter().enumerate() {
            if smask & (1 << bit) != 0 {
                a[(j - 3) as usize] = exact_div(a[(j - 3) as usize], g)?;
            }
        }
        // translate the subset-of-{3..k} mask to a subset-of-{1..k} mask
        let mut full = 0u32;
        for (bit, &j) in js.iter().enumerate() {
            if smask & (1 << bit) != 0 {
                full |= 1 << (j - 1);
            }
        }
        out.push((full, g));
    }
    Ok(out)
}

/// Invert the generator: recover ((x_I), e) from an ordered tuple.
///
/// Fails with a reconstruction error whenever the tuple is not the image of
/// any squarefree generator data; it never guesses.
pub fn reconstruct(m: u64, k: u32, ts: &[u128]) -> Result<(Vec<u64>, u64)> {
    let idx = index_set(k)?;
    if ts.len() != k as usize {
        return Err(Error::InvalidArgument(format!(
            "expected {k} denominators, got {}",
            ts.len()
        )));
    }
    // n from the exact sum
    let mut acc = Rat::zero();
    for &t in ts {
        acc = acc.checked_add(Rat::unit(t))?;
    }
    if acc.is_zero() || acc.num() > m as u128 * acc.den() {
        return Err(Error::Reconstruction("tuple sum is not of the form m/n".into()));
    }
    let n128 = exact_div(m as u128 * acc.den(), acc.num())?;
    let n = u64::try_from(n128).map_err(|_| Error::Overflow("n exceeds u64".into()))?;
    let mt1 = (m as u128)
        .checked_mul(ts[0])
        .ok_or_else(|| Error::Overflow("m t_1".into()))?;
    if mt1 <= n128 {
        return Err(Error::Reconstruction("m t_1 <= n".into()));
    }
    let e128 = mt1 - n128;
    let e = u64::try_from(e128).map_err(|_| Error::Overflow("e exceeds u64".into()))?;

    // R_j = t_2 t_j / (n^2 t_1) = A_j^2 B_j, computed overflow-free
    let t2_over_n = exact_div(ts[1], n128)?;
    let mut a_parts = Vec::new();
    let mut b_parts = Vec::new();
    for j in 3..=k {
        let tj_over_n = exact_div(ts[(j - 1) as usize], n128)?;
        let num = t2_over_n
            .checked_mul(tj_over_n)
            .ok_or_else(|| Error::Overflow("t_2 t_j / n^2".into()))?;
        let r = exact_div(num, ts[0])?;
        let (s, w) = square_split(r);
        debug_assert_eq!(s * s * w, r);
        a_parts.push(s);
        b_parts.push(w);
    }

    let mut x_of_mask: std::collections::HashMap<u32, u128> = std::collections::HashMap::new();
    // family with 1 not in I: I = {2} union S
    let mut a_cur = a_parts.clone();
    for (smask, val) in gcd_cascade(k, &mut a_cur)? {
        x_of_mask.insert(smask | 0b10, val);
    }
    if a_cur.iter().any(|&v| v != 1) {
        return Err(Error::Reconstruction("residue left in the coprime cascade".into()));
    }
    // family with 1 in I: C_j = B_j / prod_{1 not in I, j not in I} x_I
    let mut c_parts = Vec::new();
    for j in 3..=k {
        let bit = 1u32 << (j - 1);
        let mut denom = 1u128;
        for (&mask, &v) in &x_of_mask {
            if mask & 1 == 0 && mask & bit == 0 {
                denom = denom
                    .checked_mul(v)
                    .ok_or_else(|| Error::Overflow("cascade product".into()))?;
            }
        }
        c_parts.push(exact_div(b_parts[(j - 3) as usize], denom)?);
    }
    let mut c_cur = c_parts;
    for (smask, val) in gcd_cascade(k, &mut c_cur)? {
        x_of_mask.insert(smask | 0b11, val);
    }
    if c_cur.iter().any(|&v| v != 1) {
        return Err(Error::Reconstruction("residue left in the 1-in-I cascade".into()));
    }
    // x_{1,2} last, from t_2 = n * prod of all x
    let mut rest = 1u128;
    for (&mask, &v) in &x_of_mask {
        debug_assert_ne!(mask, 0b11);
        let _ = mask;
        rest = rest
            .checked_mul(v)
            .ok_or_else(|| Error::Overflow("product of recovered x".into()))?;
    }
    let x12 = exact_div(t2_over_n, rest)?;
    x_of_mask.insert(0b11, x12);

    let mut xs = Vec::with_capacity(idx.members.len());
    for &mask in &idx.members {
        let v = *x_of_mask
            .get(&mask)
            .ok_or_else(|| Error::Reconstruction(format!("missing x for mask {mask:#b}")))?;
        xs.push(u64::try_from(v).map_err(|_| Error::Overflow("x exceeds u64".into()))?);
    }
    // the inversion is only accepted if it regenerates the input exactly
    let regen = generate(
        &GenTuple {
            m,
            k,
            budget: u64::MAX,
            x: xs.clone(),
            e,
        },
        None,
    )?;
    if regen.n != n || regen.ts != ts {
        return Err(Error::Reconstruction("regenerated tuple differs".into()));
    }
    Ok((xs, e))
}

/// Result of a box-sweep count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenCount {
    pub count: u64,
    /// true when the sweep saw no valid (x, e) at all (budget too small)
    pub empty_range: bool,
}

/// Count generator tuples in the given box whose output is a valid distinct
/// Type II solution with n <= budget.
pub fn count_gen_bounded(m: u64, k: u32, budget: u64, bound: XiBound) -> Result<GenCount> {
    if m <= k as u64 || k < 3 {
        return Err(Error::InvalidArgument(format!(
            "count_gen requires m > k >= 3, got m={m}, k={k}"
        )));
    }
    let idx = index_set(k)?;
    let (xi_min, xi_max) = match bound {
        XiBound::Lemma => (2u64, int_root(budget, 1 << (k + 2))),
        XiBound::Scaled => (1u64, int_root(budget, 1 << (k - 1))),
    };
    // the box counts as active only once it admits a coordinate above 1
    if xi_max < 2 {
        return Ok(GenCount {
            count: 0,
            empty_range: true,
        });
    }
    // squarefree filter table for w; large w fall back to direct factorization
    let table = sieve_spf((budget / m).clamp(2, 1 << 22))?;
    let mut sweep = BoxSweep {
        idx: &idx,
        xi_min,
        xi_max,
        e_cap: budget as u128 / m as u128,
        m,
        budget,
        table,
        count: 0,
        seen_any: false,
    };
    let mut x = vec![xi_min; idx.members.len()];
    sweep.run(0, &mut x);
    Ok(GenCount {
        count: sweep.count,
        empty_range: !sweep.seen_any,
    })
}

/// Depth-first sweep over the x-box with running-product pruning.
struct BoxSweep<'a> {
    idx: &'a IndexSet,
    xi_min: u64,
    xi_max: u64,
    e_cap: u128,
    m: u64,
    budget: u64,
    table: crate::numkit::SpfTable,
    count: u64,
    seen_any: bool,
}

impl BoxSweep<'_> {
    fn run(&mut self, i: usize, x: &mut Vec<u64>) {
        if i == x.len() {
            self.visit_block(x);
            return;
        }
        for v in self.xi_min..=self.xi_max {
            x[i] = v;
            // prune on the running product
            let partial: u128 = x[..=i].iter().map(|&v| v as u128).product();
            if partial > self.e_cap {
                break;
            }
            self.run(i + 1, x);
        }
    }

    fn visit_block(&mut self, x: &[u64]) {
        let p = match products(self.idx, x) {
            Some(p) => p,
            None => return,
        };
        if p.all > self.e_cap {
            return;
        }
        let squarefree = if p.w <= self.table.limit() as u128 {
            self.table.factorize(p.w as u64).mobius() != 0
        } else {
            is_squarefree(p.w)
        };
        if !squarefree {
            return;
        }
        let lo0 = (self.budget as u128)
            .div_ceil(2 * self.m as u128)
            .div_ceil(p.all);
        let hi = self.e_cap / p.all;
        // b >= 1 and n >= 1 shrink the e-interval from below
        let lo_b = (p.sub_sum + 1).div_ceil(p.without_1);
        let mpp = self.m as u128 * p.all;
        let lo_n = (1 + self.m as u128 * p.sub_sum * p.with_1).div_ceil(mpp - 1);
        let lo = lo0.max(lo_b).max(lo_n).max(1);
        if hi >= lo {
            self.seen_any = true;
            self.count += (hi - lo + 1) as u64;
        }
    }
}

/// Desk-scale generator count (scaled box).
pub fn count_gen(m: u64, k: u32, budget: u64) -> Result<GenCount> {
    count_gen_bounded(m, k, budget, XiBound::Scaled)
}

/// Upper edge of the scaled x-box for the given budget.
pub fn scaled_box_max(k: u32, budget: u64) -> u64 {
    int_root(budget, 1 << (k - 1))
}

/// Deterministic sampler of structurally valid generator tuples.
///
/// The squarefree condition on w is built in rather than rejected into:
/// every coordinate starts at 1, each prime from a small pool is assigned to
/// at most one of the w-slots, and the exempt {1,2} coordinate is free.
pub fn sample_tuples(m: u64, k: u32, count: usize, seed: u64) -> Vec<GenTuple> {
    let idx = index_set(k).expect("k in range");
    let primes: &[u64] = match k {
        3 => &[2, 3, 5, 7],
        4 => &[2, 3, 5],
        _ => &[2, 3],
    };
    let mut state = seed ^ 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let coords = idx.members.len();
    let exempt = idx.members.iter().position(|&m| m == 0b11).unwrap();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut x = vec![1u64; coords];
        x[exempt] = next() % 10 + 1;
        for &q in primes {
            if next() % 2 == 0 {
                // place q in one w-slot (distinct primes keep w squarefree)
                let mut slot = next() as usize % coords;
                if slot == exempt {
                    slot = (slot + 1) % coords;
                }
                x[slot] *= q;
            }
        }
        let e = next() % 1000 + 1;
        let t = GenTuple {
            m,
            k,
            budget: u64::MAX,
            x,
            e,
        };
        if t.validate(None).is_ok() && generate(&t, None).is_ok() {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_sizes() {
        assert_eq!(
            index_set(3).unwrap().members,
            vec![0b011, 0b110, 0b111]
        );
        assert_eq!(index_set(4).unwrap().members.len(), 7);
        assert_eq!(index_set(5).unwrap().members.len(), 15);
        assert!(index_set(2).is_err());
    }

    #[test]
    fn hand_generation_k3() {
        // x = (1,1,1), e = 2 -> (1,2,2) for n = 2
        let t = GenTuple {
            m: 4,
            k: 3,
            budget: u64::MAX,
            x: vec![1, 1, 1],
            e: 2,
        };
        let g = generate(&t, None).unwrap();
        assert_eq!(g.n, 2);
        assert_eq!(g.ts, vec![1, 2, 2]);

        // e = 3 -> (2,5,10) for n = 5
        let t = GenTuple { e: 3, ..t };
        let g = generate(&t, None).unwrap();
        assert_eq!(g.n, 5);
        assert_eq!(g.ts, vec![2, 5, 10]);
    }

    #[test]
    fn hand_generation_k4() {
        let t = GenTuple {
            m: 5,
            k: 4,
            budget: u64::MAX,
            x: vec![1; 7],
            e: 3,
        };
        let g = generate(&t, None).unwrap();
        assert_eq!(g.n, 2);
        assert_eq!(g.ts, vec![1, 2, 2, 2]);
        assert!(verify_mk(5, 2, &g.ts).unwrap());
    }

    #[test]
    fn degenerate_b_is_reported() {
        let t = GenTuple {
            m: 4,
            k: 3,
            budget: u64::MAX,
            x: vec![1, 1, 1],
            e: 1,
        };
        // b = 1*1 - 1 = 0
        assert!(matches!(generate(&t, None), Err(Error::Degenerate(_))));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_mk(4, 2, &[1, 2, 2]).unwrap());
        assert!(verify_mk(4, 5, &[2, 5, 10]).unwrap());
        assert!(!verify_mk(4, 5, &[2, 5, 11]).unwrap());
        // t_1 need not be coprime to n under this convention
        assert!(verify_mk(4, 4, &[2, 4, 4]).unwrap());
        // sum right but t_2 not divisible by n
        assert!(!verify_mk(4, 4, &[4, 2, 4]).unwrap());
    }

    #[test]
    fn reconstruct_hand_example() {
        let (x, e) = reconstruct(4, 3, &[1, 2, 2]).unwrap();
        assert_eq!(x, vec![1, 1, 1]);
        assert_eq!(e, 2);
        let (x, e) = reconstruct(4, 3, &[2, 5, 10]).unwrap();
        assert_eq!(x, vec![1, 1, 1]);
        assert_eq!(e, 3);
    }

    #[test]
    fn reconstruct_round_trip_sampled() {
        for k in [3u32, 4, 5] {
            for t in sample_tuples(4 + k as u64 - 2, k, 60, 0xE5C0 + k as u64) {
                let g = generate(&t, None).unwrap();
                assert!(verify_mk(t.m, g.n, &g.ts).unwrap());
                let (x, e) = reconstruct(t.m, k, &g.ts)
                    .unwrap_or_else(|err| panic!("k={k} x={:?} e={}: {err}", t.x, t.e));
                assert_eq!(x, t.x, "k={k}");
                assert_eq!(e, t.e, "k={k}");
            }
        }
    }

    #[test]
    fn tampered_tuple_rejected() {
        // (1,2,2) with t_3 bumped by n
        let bad = [1u128, 2, 4];
        assert!(!verify_mk(4, 2, &bad).unwrap() || reconstruct(4, 3, &bad).is_err());
    }

    #[test]
    fn generated_tuples_are_distinct_exhaustively() {
        // injectivity at small budget: every (x, e) in the scaled box yields
        // a different solution, and their number matches count_gen
        let (m, k, budget) = (4u64, 3u32, 600u64);
        let bmax = scaled_box_max(k, budget);
        let mut seen = std::collections::HashSet::new();
        let mut total = 0u64;
        for x12 in 1..=bmax {
            for x23 in 1..=bmax {
                for x123 in 1..=bmax {
                    if !is_squarefree(x23 as u128 * x123 as u128) {
                        continue;
                    }
                    for e in 1..=budget {
                        let t = GenTuple {
                            m,
                            k,
                            budget,
                            x: vec![x12, x23, x123],
                            e,
                        };
                        if t.validate(Some(XiBound::Scaled)).is_err() {
                            continue;
                        }
                        if let Ok(g) = generate(&t, Some(XiBound::Scaled)) {
                            assert!(verify_mk(m, g.n, &g.ts).unwrap());
                            assert!(g.n <= budget);
                            assert!(seen.insert((g.n, g.ts)), "duplicate from {t:?}");
                            total += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(total, count_gen(m, k, budget).unwrap().count);
        assert!(total > 0);
    }

    #[test]
    fn count_gen_small() {
        let c = count_gen(4, 3, 10).unwrap();
        assert_eq!(c.count, 0);
        assert!(c.empty_range);
        let c = count_gen(4, 3, 10_000).unwrap();
        assert!(c.count > 0, "count = {}", c.count);
        assert!(!c.empty_range);
    }

    #[test]
    fn count_gen_requires_m_above_k() {
        assert!(count_gen(4, 4, 1000).is_err());
        assert!(count_gen(3, 3, 1000).is_err());
    }

    #[test]
    fn lemma_box_at_large_budget() {
        // smallest power of two where the strict box admits x = 2 and 3:
        // N = 2^56 gives N^(1/32) = 3.36
        let n = 1u64 << 56;
        let c = count_gen_bounded(4, 3, n, XiBound::Lemma).unwrap();
        assert!(c.count > 0);
        // every strict block has e >= N^(7/8) / (2m)
        let e_floor = ((n as f64).powf(7.0 / 8.0) / 8.0) as u128;
        let lo = (n as u128).div_ceil(8) / 27; // smallest admissible e over the box
        assert!(lo >= e_floor, "lo={lo} floor={e_floor}");
    }
}
