//! Digit packing and the on-disk node layout.
//!
//! Each input byte becomes `⌈log_q 256⌉` base-`q` digits, least significant
//! first. The digit stream is zero-padded to whole stripes of `p·k`
//! elements; stream index `s·pk + j·p + i` holds row `i` of systematic
//! column `j` in stripe `s`, stored at body offset `s·p + i` of that
//! column's chunk.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// Base-`q` digits needed to represent one byte.
pub fn digits_per_byte(q: u32) -> CliResult<usize> {
    if !(2..=256).contains(&q) {
        return Err(CliError::Usage(format!("chunks store one byte per element; field order {q} exceeds 256")));
    }
    let (mut n, mut cap) = (0, 1u32);
    while cap < 256 {
        cap *= q;
        n += 1;
    }
    Ok(n)
}

/// Expands bytes to digits and pads to a multiple of `stripe_len`.
pub fn expand(bytes: &[u8], q: u32, stripe_len: usize) -> CliResult<Vec<u8>> {
    let per = digits_per_byte(q)?;
    let mut out = Vec::with_capacity(bytes.len() * per + stripe_len);
    for &b in bytes {
        let mut v = b as u32;
        for _ in 0..per {
            out.push((v % q) as u8);
            v /= q;
        }
    }
    let stripes = out.len().div_ceil(stripe_len).max(1);
    out.resize(stripes * stripe_len, 0);
    Ok(out)
}

/// Inverse of [`expand`], keeping the first `len` bytes.
pub fn pack(digits: &[u8], q: u32, len: usize) -> CliResult<Vec<u8>> {
    let per = digits_per_byte(q)?;
    if digits.len() < len * per {
        return Err(CliError::Format(format!("{} digits cannot hold {len} bytes", digits.len())));
    }
    digits
        .chunks(per)
        .take(len)
        .map(|ds| {
            let v = ds.iter().rev().fold(0u32, |acc, &d| acc * q + d as u32);
            u8::try_from(v).map_err(|_| CliError::Format(format!("digits {ds:?} exceed a byte")))
        })
        .collect()
}

pub fn node_dir(root: &Path, idx: usize) -> PathBuf {
    root.join(format!("node_{idx}"))
}

pub fn failed_dir(root: &Path, idx: usize) -> PathBuf {
    root.join(format!("node_{idx}.failed"))
}

pub fn chunk_path(root: &Path, idx: usize) -> PathBuf {
    node_dir(root, idx).join("chunk")
}

pub fn manifest_path(root: &Path) -> PathBuf {
    root.join("manifest.txt")
}

/// Records the payload length, which padding otherwise hides.
pub fn write_manifest(root: &Path, len: u64) -> CliResult<()> {
    let path = manifest_path(root);
    fs::write(&path, format!("length = {len}\n")).map_err(|e| CliError::io(&path, e))
}

pub fn read_manifest(root: &Path) -> CliResult<u64> {
    let path = manifest_path(root);
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    text.trim()
        .strip_prefix("length = ")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| CliError::Format(format!("{}: expected `length = <bytes>`", path.display())))
}

/// Nodes of `[0, n)` without a live chunk file.
pub fn missing_nodes(root: &Path, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| !chunk_path(root, i).is_file()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_counts() {
        assert_eq!(digits_per_byte(3).unwrap(), 6);
        assert_eq!(digits_per_byte(7).unwrap(), 3);
        assert_eq!(digits_per_byte(16).unwrap(), 2);
        assert_eq!(digits_per_byte(256).unwrap(), 1);
        assert!(digits_per_byte(257).is_err());
    }

    #[test]
    fn one_byte_fills_one_stripe() {
        let d = expand(&[200], 3, 12).unwrap();
        assert_eq!(d.len(), 12);
        // 200 = 2·81 + 1·27 + 1·9 + 0·3 + 2
        assert_eq!(&d[..6], &[2, 0, 1, 1, 2, 0]);
        assert_eq!(pack(&d, 3, 1).unwrap(), vec![200]);
    }

    #[test]
    fn roundtrip_all_bytes() {
        let bytes: Vec<u8> = (0..=255).collect();
        for q in [2, 3, 5, 9, 13, 256] {
            let d = expand(&bytes, q, 27).unwrap();
            assert_eq!(d.len() % 27, 0);
            assert!(d.iter().all(|&x| (x as u32) < q));
            assert_eq!(pack(&d, q, bytes.len()).unwrap(), bytes);
        }
    }
}
