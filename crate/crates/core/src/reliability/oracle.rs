//! Exhaustive nearest-codeword decoding for tiny codes.

use crate::error::{check_len, Error, Result};
use crate::gf::Gf;
use crate::grs::GrsCode;

/// Largest q^k the oracle will enumerate.
pub const ORACLE_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleDecision {
    /// A single codeword attains the minimum distance.
    Unique { codeword: Vec<Gf>, distance: usize },
    /// `count` codewords tie at `distance`.
    Tie { distance: usize, count: usize },
}

impl OracleDecision {
    pub fn distance(&self) -> usize {
        match self {
            OracleDecision::Unique { distance, .. } | OracleDecision::Tie { distance, .. } => {
                *distance
            }
        }
    }
}

pub fn nearest_codeword_oracle(code: &GrsCode, block: &[Gf]) -> Result<OracleDecision> {
    check_len(code.n(), block.len())?;
    let size = (code.field().order() as u64).checked_pow(code.k() as u32);
    if size.is_none_or(|s| s > ORACLE_LIMIT) {
        return Err(Error::SizeGuard(format!(
            "q^k = {}^{} exceeds the oracle limit 2^20",
            code.field().order(),
            code.k()
        )));
    }
    let mut best = usize::MAX;
    let mut count = 0usize;
    let mut winner = Vec::new();
    code.for_each_codeword(|c| {
        let d = c.iter().zip(block).filter(|(a, b)| a != b).count();
        if d < best {
            best = d;
            count = 1;
            winner = c.to_vec();
        } else if d == best {
            count += 1;
        }
    });
    Ok(if count == 1 {
        OracleDecision::Unique {
            codeword: winner,
            distance: best,
        }
    } else {
        OracleDecision::Tie {
            distance: best,
            count,
        }
    })
}
