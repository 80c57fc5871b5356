//! Decoding the URS code as a plain GRS code of length N.

use super::erasure::{column_erasure_locator, whole_columns};
use crate::error::{config, Result};
use crate::gf::Gf;
use crate::grs::{decode_syndrome, DecodeOptions, DecodeOutcome, DecoderId, ErasureSet, Syndrome};
use crate::urs::UrsCode;

/// Errors-and-erasures decoding of the big code out to ⌊(N-K-f)/2⌋ errors.
/// `erasures` are big-code symbol positions.
pub fn decode_direct(urs: &UrsCode, block: &[Gf], erasures: &ErasureSet) -> Result<DecodeOutcome> {
    let s = urs.syndrome(block)?;
    direct_from_syndrome(urs, &s, erasures)
}

pub fn direct_from_syndrome(
    urs: &UrsCode,
    s: &Syndrome,
    erasures: &ErasureSet,
) -> Result<DecodeOutcome> {
    let r = urs.redundancy();
    if erasures.len() > r {
        return config(format!("{} erasures exceed redundancy {r}", erasures.len()));
    }
    let t = (r - erasures.len()) / 2;
    // whole-column erasures have a sparse closed-form locator
    let hint = whole_columns(urs, erasures).map(|cols| column_erasure_locator(urs, &cols));
    let mut out = decode_syndrome(
        urs.big_code(),
        s,
        t,
        erasures,
        hint.as_ref(),
        &DecodeOptions::default(),
    )?;
    out.decoder = DecoderId::Direct;
    out.column_width = urs.ell();
    out.touched_columns = out.errors.keys().map(|&p| urs.column_of(p)).collect();
    Ok(out)
}
