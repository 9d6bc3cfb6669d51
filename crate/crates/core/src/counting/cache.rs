//! On-disk persistence for [`CountTable`].
//!
//! Layout: magic `PFCC`, u16 version, then records each prefixed by a u32
//! byte length: family u8, d u16, n u32, k u32, sign u8, magnitude length
//! u32, little-endian magnitude bytes.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;

use super::CountTable;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"PFCC";
const VERSION: u16 = 1;
const FAMILY_PF: u8 = 1;

fn record(d: u32, n: u64, k: u64, v: &BigUint) -> Vec<u8> {
    let mag = v.to_bytes_le();
    let mut r = Vec::with_capacity(16 + mag.len());
    r.push(FAMILY_PF);
    r.extend_from_slice(&(d as u16).to_le_bytes());
    r.extend_from_slice(&(n as u32).to_le_bytes());
    r.extend_from_slice(&(k as u32).to_le_bytes());
    r.push(0);
    r.extend_from_slice(&(mag.len() as u32).to_le_bytes());
    r.extend_from_slice(&mag);
    r
}

pub(super) fn save(t: &CountTable, path: &Path) -> Result<()> {
    let (w, wk) = t.snapshot();
    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    let all = w
        .iter()
        .enumerate()
        .map(|(n, v)| ((n as u64, 0u64), v))
        .chain(wk.iter().map(|(k, v)| (*k, v)));
    for ((n, k), v) in all {
        let r = record(t.d(), n, k, v);
        buf.extend_from_slice(&(r.len() as u32).to_le_bytes());
        buf.extend_from_slice(&r);
    }
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| Error::Cache(e.to_string()))?;
    f.write_all(&buf).map_err(|e| Error::Cache(e.to_string()))?;
    fs::rename(&tmp, path).map_err(|e| Error::Cache(e.to_string()))
}

fn take<'a>(buf: &mut &'a [u8], n: usize) -> Result<&'a [u8]> {
    if buf.len() < n {
        return Err(Error::Cache("truncated cache file".into()));
    }
    let (a, b) = buf.split_at(n);
    *buf = b;
    Ok(a)
}

fn u32_at(b: &[u8]) -> u32 {
    u32::from_le_bytes([b[0], b[1], b[2], b[3]])
}

/// Loads records for this table's `d`; returns how many were absorbed.
/// A missing file is not an error.
pub(super) fn load(t: &CountTable, path: &Path) -> Result<usize> {
    let data = match fs::read(path) {
        Ok(d) => d,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(Error::Cache(e.to_string())),
    };
    let mut buf = data.as_slice();
    if take(&mut buf, 4)? != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let ver = take(&mut buf, 2)?;
    if u16::from_le_bytes([ver[0], ver[1]]) != VERSION {
        return Err(Error::Cache("unsupported cache version".into()));
    }
    let mut w: Vec<(u64, BigUint)> = Vec::new();
    let mut wk = Vec::new();
    while !buf.is_empty() {
        let len = u32_at(take(&mut buf, 4)?) as usize;
        let mut r = take(&mut buf, len)?;
        let head = take(&mut r, 16)?;
        let (family, d) = (head[0], u16::from_le_bytes([head[1], head[2]]) as u32);
        let n = u32_at(&head[3..7]) as u64;
        let k = u32_at(&head[7..11]) as u64;
        if head[11] != 0 {
            return Err(Error::Cache("negative count in cache".into()));
        }
        let mlen = u32_at(&head[12..16]) as usize;
        let v = BigUint::from_bytes_le(take(&mut r, mlen)?);
        if family != FAMILY_PF || d != t.d() {
            continue;
        }
        if k == 0 {
            w.push((n, v));
        } else {
            wk.push(((n, k), v));
        }
    }
    w.sort_by_key(|e| e.0);
    let count = w.len() + wk.len();
    let contiguous = w.iter().enumerate().all(|(i, e)| e.0 == i as u64);
    t.absorb(
        if contiguous {
            w.into_iter().map(|e| e.1).collect()
        } else {
            Vec::new()
        },
        wk,
    );
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let dir = std::env::temp_dir().join(format!("pfcc-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("counts.bin");
        let t = CountTable::new(3);
        t.w(30);
        t.wk(7, 5);
        t.save(&path).unwrap();
        let u = CountTable::new(3);
        assert_eq!(u.load(&path).unwrap(), 31 + 5);
        let (w, wk) = u.snapshot();
        assert_eq!(w.len(), 31);
        assert_eq!(wk.len(), 5);
        assert_eq!(u.wk(7, 5), super::super::pf_count(3, 7, 5));
        let other = CountTable::new(4);
        other.load(&path).unwrap();
        assert_eq!(other.snapshot().0.len(), 1);
        assert_eq!(u.load(&dir.join("missing.bin")).unwrap(), 0);
        fs::remove_dir_all(&dir).ok();
    }
}
