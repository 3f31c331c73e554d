//! Append-only checkpoint files for resumable range verification.
//!
//! One shard per line, `lo hi done min_f checksum`, all decimal except the
//! checksum (16 hex digits of a 64-bit FNV-1a over the decimal renderings of
//! the per-n values in the shard, one per line).  Partial files are always
//! parseable: an interrupted trailing line is discarded on resume.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Incremental 64-bit FNV-1a.
#[derive(Debug, Clone, Copy)]
pub struct Fnv(u64);

impl Fnv {
    pub fn new() -> Fnv {
        Fnv(FNV_OFFSET)
    }

    pub fn update(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(FNV_PRIME);
        }
    }

    pub fn value(&self) -> u64 {
        self.0
    }
}

impl Default for Fnv {
    fn default() -> Self {
        Fnv::new()
    }
}

/// A completed shard record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShardRecord {
    pub lo: u64,
    pub hi: u64,
    pub min_f: u64,
    pub checksum: u64,
}

impl ShardRecord {
    pub fn render(&self) -> String {
        format!(
            "{} {} done {} {:016x}\n",
            self.lo, self.hi, self.min_f, self.checksum
        )
    }

    pub fn parse(line: &str) -> Option<ShardRecord> {
        let mut it = line.split_ascii_whitespace();
        let lo = it.next()?.parse().ok()?;
        let hi = it.next()?.parse().ok()?;
        if it.next()? != "done" {
            return None;
        }
        let min_f = it.next()?.parse().ok()?;
        let checksum = u64::from_str_radix(it.next()?, 16).ok()?;
        if it.next().is_some() {
            return None;
        }
        Some(ShardRecord {
            lo,
            hi,
            min_f,
            checksum,
        })
    }
}

/// Parse the complete lines of a checkpoint file; returns the records and the
/// byte offset of the end of the last complete line (for truncation).
pub fn load(path: &Path) -> io::Result<(Vec<ShardRecord>, u64)> {
    let data = match fs::read(path) {
        Ok(d) => d,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((Vec::new(), 0)),
        Err(e) => return Err(e),
    };
    let mut records = Vec::new();
    let mut consumed = 0usize;
    let mut start = 0usize;
    while let Some(rel) = data[start..].iter().position(|&b| b == b'\n') {
        let end = start + rel;
        match std::str::from_utf8(&data[start..end])
            .ok()
            .and_then(ShardRecord::parse)
        {
            Some(r) => {
                records.push(r);
                consumed = end + 1;
                start = end + 1;
            }
            None => break, // stop at the first malformed line
        }
    }
    Ok((records, consumed as u64))
}

/// Open a checkpoint for appending, truncating any incomplete trailing line
/// so the resumed file stays byte-identical with an uninterrupted run.
pub fn open_for_append(path: &Path, keep_bytes: u64) -> io::Result<fs::File> {
    use std::io::Seek;
    let mut f = fs::OpenOptions::new()
        .create(true)
        .write(true)
        .truncate(false)
        .open(path)?;
    f.set_len(keep_bytes)?;
    f.seek(io::SeekFrom::End(0))?;
    Ok(f)
}

/// Append one record and flush.
pub fn append(file: &mut fs::File, rec: &ShardRecord) -> io::Result<()> {
    file.write_all(rec.render().as_bytes())?;
    file.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_known_vector() {
        // FNV-1a("a") = 0xaf63dc4c8601ec8c
        let mut h = Fnv::new();
        h.update(b"a");
        assert_eq!(h.value(), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn record_round_trip() {
        let r = ShardRecord {
            lo: 2,
            hi: 65537,
            min_f: 1,
            checksum: 0xdeadbeef01020304,
        };
        let line = r.render();
        assert_eq!(line, "2 65537 done 1 deadbeef01020304\n");
        assert_eq!(ShardRecord::parse(line.trim_end()), Some(r));
        assert!(ShardRecord::parse("2 65537 pending 1 00").is_none());
    }

    #[test]
    fn load_ignores_partial_tail() {
        let dir = std::env::temp_dir().join("esl-ckpt-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("partial.ckpt");
        let full = ShardRecord {
            lo: 2,
            hi: 10,
            min_f: 1,
            checksum: 42,
        };
        fs::write(&path, format!("{}11 20 done", full.render())).unwrap();
        let (recs, consumed) = load(&path).unwrap();
        assert_eq!(recs, vec![full]);
        assert_eq!(consumed, full.render().len() as u64);
        fs::remove_file(&path).unwrap();
    }
}
