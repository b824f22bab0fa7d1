//! Chunk files: an 18-byte header followed by one byte per element.
//!
//! | offset | size | field |
//! |-------:|-----:|-------|
//! | 0 | 4 | magic `ZZAC` |
//! | 4 | 1 | format version |
//! | 5 | 2 | field order `q`, LE |
//! | 7 | 2 | column index, LE |
//! | 9 | 1 | 0 systematic, 1 parity |
//! | 10 | 4 | rows per stripe `p`, LE |
//! | 14 | 4 | stripe count, LE |

use thiserror::Error;

pub const MAGIC: &[u8; 4] = b"ZZAC";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    Systematic = 0,
    Parity = 1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChunkHeader {
    pub q: u16,
    pub column: u16,
    pub kind: ColumnType,
    pub p: u32,
    pub stripes: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeaderError {
    #[error("not a chunk file (bad magic)")]
    BadMagic,
    #[error("unsupported chunk version {0}")]
    Version(u8),
    #[error("unknown column type {0}")]
    ColumnType(u8),
    #[error("header truncated at {0} bytes")]
    Truncated(usize),
}

impl ChunkHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut b = [0u8; HEADER_LEN];
        b[..4].copy_from_slice(MAGIC);
        b[4] = VERSION;
        b[5..7].copy_from_slice(&self.q.to_le_bytes());
        b[7..9].copy_from_slice(&self.column.to_le_bytes());
        b[9] = self.kind as u8;
        b[10..14].copy_from_slice(&self.p.to_le_bytes());
        b[14..18].copy_from_slice(&self.stripes.to_le_bytes());
        b
    }

    pub fn from_bytes(b: &[u8]) -> Result<ChunkHeader, HeaderError> {
        if b.len() >= 4 && &b[..4] != MAGIC {
            return Err(HeaderError::BadMagic);
        }
        if b.len() < HEADER_LEN {
            return Err(HeaderError::Truncated(b.len()));
        }
        if b[4] != VERSION {
            return Err(HeaderError::Version(b[4]));
        }
        let kind = match b[9] {
            0 => ColumnType::Systematic,
            1 => ColumnType::Parity,
            t => return Err(HeaderError::ColumnType(t)),
        };
        let u16_at = |i: usize| u16::from_le_bytes([b[i], b[i + 1]]);
        let u32_at = |i: usize| u32::from_le_bytes([b[i], b[i + 1], b[i + 2], b[i + 3]]);
        Ok(ChunkHeader { q: u16_at(5), column: u16_at(7), kind, p: u32_at(10), stripes: u32_at(14) })
    }

    pub fn body_len(&self) -> u64 {
        self.p as u64 * self.stripes as u64
    }
}
