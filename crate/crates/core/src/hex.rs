//! Hex block format: ⌈b/4⌉ hex digits per symbol, concatenated without
//! separators, in block (column-major) order.

use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

pub fn digits_per_symbol(f: &Field) -> usize {
    (f.bits() as usize).div_ceil(4)
}

pub fn encode_block(block: &[Gf], f: &Field) -> String {
    let w = digits_per_symbol(f);
    block
        .iter()
        .map(|s| format!("{:0w$x}", s.0, w = w))
        .collect()
}

/// Whitespace is ignored; an optional `0x` prefix is accepted.
pub fn decode_block(text: &str, f: &Field) -> Result<Vec<Gf>> {
    let clean: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let clean = clean.strip_prefix("0x").unwrap_or(&clean);
    let w = digits_per_symbol(f);
    if !clean.is_ascii() || !clean.len().is_multiple_of(w) {
        return Err(Error::Parse(format!(
            "hex block length {} is not a multiple of {w} digits",
            clean.len()
        )));
    }
    (0..clean.len() / w)
        .map(|i| {
            let chunk = &clean[i * w..(i + 1) * w];
            let v = u32::from_str_radix(chunk, 16)
                .map_err(|e| Error::Parse(format!("bad hex symbol {chunk:?}: {e}")))?;
            f.elem(v)
        })
        .collect()
}
