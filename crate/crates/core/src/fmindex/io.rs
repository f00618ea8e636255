//! Binary index format.
//!
//! ```text
//! "FSGI" | version: u8 | n: u64 | N: u64 | max_len: u64 | bwt: N bytes | dollar_map: n x u64
//! ```
//! Integers are little-endian and BWT symbols are ASCII (`$acgt`). Occurrence
//! checkpoints are rebuilt on load.

use std::io::{Read, Write};

use super::FmIndex;
use crate::alphabet::Symbol;
use crate::error::{FsgError, Result};

pub const MAGIC: &[u8; 4] = b"FSGI";
pub const FORMAT_VERSION: u8 = 1;

impl FmIndex {
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&[FORMAT_VERSION])?;
        w.write_all(&(self.n_reads() as u64).to_le_bytes())?;
        w.write_all(&(self.len() as u64).to_le_bytes())?;
        w.write_all(&(self.max_len() as u64).to_le_bytes())?;
        let ascii: Vec<u8> = self
            .bwt_codes()
            .iter()
            .map(|&c| Symbol::from_code(c).unwrap().to_ascii())
            .collect();
        w.write_all(&ascii)?;
        for &id in self.dollar_map() {
            w.write_all(&(id as u64).to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<FmIndex> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)
            .map_err(|_| FsgError::IndexFormat("truncated header".into()))?;
        if &magic != MAGIC {
            return Err(FsgError::IndexFormat("bad magic".into()));
        }
        let mut version = [0u8; 1];
        r.read_exact(&mut version)?;
        if version[0] != FORMAT_VERSION {
            return Err(FsgError::IndexFormat(format!(
                "unsupported version {}",
                version[0]
            )));
        }
        let n = read_u64(&mut r)? as usize;
        let total = read_u64(&mut r)? as usize;
        let max_len = read_u64(&mut r)? as usize;
        if n > total || total >= u32::MAX as usize {
            return Err(FsgError::IndexFormat("inconsistent sizes".into()));
        }

        let mut ascii = vec![0u8; total];
        r.read_exact(&mut ascii)
            .map_err(|_| FsgError::IndexFormat("truncated BWT".into()))?;
        let bwt = ascii
            .iter()
            .map(|&b| {
                Symbol::from_ascii(b)
                    .map(Symbol::code)
                    .ok_or_else(|| FsgError::IndexFormat(format!("invalid BWT symbol {b:#x}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        if bwt.iter().filter(|&&c| c == 0).count() != n {
            return Err(FsgError::IndexFormat(
                "sentinel count differs from n".into(),
            ));
        }

        let mut dollar_map = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for _ in 0..n {
            let id = read_u64(&mut r)? as usize;
            if id >= n || seen[id] {
                return Err(FsgError::IndexFormat(
                    "dollar map is not a permutation".into(),
                ));
            }
            seen[id] = true;
            dollar_map.push(id as u32);
        }
        Ok(FmIndex::from_parts(bwt, dollar_map, max_len))
    }

    /// True if `bytes` starts with the index magic.
    pub fn looks_like_index(bytes: &[u8]) -> bool {
        bytes.starts_with(MAGIC)
    }
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)
        .map_err(|_| FsgError::IndexFormat("truncated integer".into()))?;
    Ok(u64::from_le_bytes(buf))
}
