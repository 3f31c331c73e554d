//! Checkpointed parallel range verification.
//!
//! The range is cut into fixed-size shards consumed by a bounded worker pool
//! over a shared atomic cursor.  Workers share one immutable
//! smallest-prime-factor table; results are committed by a single writer in
//! ascending shard order, so the checkpoint byte stream is identical for any
//! worker count and across interrupted/resumed runs.

use crate::checkpoint::{self, Fnv, ShardRecord};
use esl_core::numkit::sieve_spf;
use esl_core::witness::witness_with_margin;
use esl_core::SpfTable;
use std::collections::{BTreeMap, HashMap};
use std::io;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

/// Default shard width.
pub const DEFAULT_SHARD: u64 = 1 << 16;

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    /// n in range with no witness found (verification failure candidates)
    pub failures: Vec<u64>,
    /// n < 2 in range: f(n) = 0 is expected there, reported but not a failure
    pub expected_exceptions: Vec<u64>,
    pub shards: Vec<ShardRecord>,
    /// shards skipped because the checkpoint already had them
    pub resumed: usize,
}

impl VerifyOutcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn min_f(&self) -> Option<u64> {
        self.shards.iter().map(|s| s.min_f).min()
    }
}

struct ShardResult {
    index: usize,
    record: ShardRecord,
    failures: Vec<u64>,
    exceptions: Vec<u64>,
}

fn run_shard(lo: u64, hi: u64, table: &SpfTable) -> (ShardRecord, Vec<u64>, Vec<u64>) {
    let mut hash = Fnv::new();
    let mut min_f = u64::MAX;
    let mut failures = Vec::new();
    let mut exceptions = Vec::new();
    let mut buf = [0u8; 24];
    for n in lo..=hi {
        let value: u64 = if n < 2 {
            exceptions.push(n);
            0
        } else {
            match witness_with_margin(n, Some(table)) {
                Some(w) => {
                    let v = w.cheap_count as u64;
                    if v < min_f {
                        min_f = v;
                    }
                    v
                }
                None => {
                    failures.push(n);
                    0
                }
            }
        };
        // decimal rendering of the per-n value, newline-terminated
        let mut k = buf.len();
        let mut v = value;
        loop {
            k -= 1;
            buf[k] = b'0' + (v % 10) as u8;
            v /= 10;
            if v == 0 {
                break;
            }
        }
        hash.update(&buf[k..]);
        hash.update(b"\n");
    }
    (
        ShardRecord {
            lo,
            hi,
            min_f: if min_f == u64::MAX { 0 } else { min_f },
            checksum: hash.value(),
        },
        failures,
        exceptions,
    )
}

/// Verify every n in [lo, hi] with `workers` threads, optionally resuming
/// from and appending to a checkpoint file.
pub fn verify_range(
    lo: u64,
    hi: u64,
    workers: usize,
    ckpt_path: Option<&Path>,
    shard_size: u64,
) -> io::Result<VerifyOutcome> {
    assert!(lo <= hi, "verify_range requires lo <= hi");
    let workers = workers.max(1);
    let shard_size = shard_size.max(1);

    // shard grid relative to the request
    let mut shards = Vec::new();
    let mut s = lo;
    while s <= hi {
        let e = hi.min(s + shard_size - 1);
        shards.push((s, e));
        if e == hi {
            break;
        }
        s = e + 1;
    }

    // resume: load completed shards that match the grid exactly
    let mut done: HashMap<(u64, u64), ShardRecord> = HashMap::new();
    let mut keep_bytes = 0u64;
    if let Some(path) = ckpt_path {
        let (records, consumed) = checkpoint::load(path)?;
        // only a prefix of in-order grid shards preserves byte identity
        let mut expect = shards.iter();
        let mut prefix_bytes = 0u64;
        let mut prefix = Vec::new();
        for rec in &records {
            match expect.next() {
                Some(&(slo, shi)) if rec.lo == slo && rec.hi == shi => {
                    prefix_bytes += rec.render().len() as u64;
                    prefix.push(*rec);
                }
                _ => break,
            }
        }
        let _ = consumed;
        keep_bytes = prefix_bytes;
        for rec in prefix {
            done.insert((rec.lo, rec.hi), rec);
        }
    }

    let table = sieve_spf(hi.clamp(2, 20_000_000))
        .map_err(|e| io::Error::other(e.to_string()))?;
    let cursor = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<ShardResult>();

    let mut outcome = VerifyOutcome {
        failures: Vec::new(),
        expected_exceptions: Vec::new(),
        shards: Vec::new(),
        resumed: done.len(),
    };

    std::thread::scope(|scope| -> io::Result<()> {
        for _ in 0..workers {
            let tx = tx.clone();
            let table = &table;
            let cursor = &cursor;
            let shards = &shards;
            let done = &done;
            scope.spawn(move || loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= shards.len() {
                    break;
                }
                let (slo, shi) = shards[i];
                if let Some(rec) = done.get(&(slo, shi)) {
                    let _ = tx.send(ShardResult {
                        index: i,
                        record: *rec,
                        failures: Vec::new(),
                        exceptions: Vec::new(),
                    });
                    continue;
                }
                let (record, failures, exceptions) = run_shard(slo, shi, table);
                let _ = tx.send(ShardResult {
                    index: i,
                    record,
                    failures,
                    exceptions,
                });
            });
        }
        drop(tx);

        // single writer, committing in shard order
        let mut file = match ckpt_path {
            Some(p) => Some(checkpoint::open_for_append(p, keep_bytes)?),
            None => None,
        };
        let mut pending: BTreeMap<usize, ShardResult> = BTreeMap::new();
        let mut next_index = 0usize;
        for res in rx {
            pending.insert(res.index, res);
            while let Some(res) = pending.remove(&next_index) {
                let fresh = !done.contains_key(&(res.record.lo, res.record.hi));
                if res.failures.is_empty() && fresh {
                    if let Some(f) = file.as_mut() {
                        checkpoint::append(f, &res.record)?;
                    }
                }
                outcome.failures.extend(res.failures);
                outcome.expected_exceptions.extend(res.exceptions);
                outcome.shards.push(res.record);
                next_index += 1;
            }
        }
        Ok(())
    })?;

    outcome.failures.sort_unstable();
    outcome.expected_exceptions.sort_unstable();
    Ok(outcome)
}
