//! Single-column correction from the full unraveling with one inversion.

use std::collections::BTreeMap;

use crate::error::{config, Result};
use crate::gf::Gf;
use crate::grs::{DecodeOutcome, DecoderId, Failure, Syndrome};
use crate::urs::{Unraveling, UrsCode};

pub fn decode_fast_chipkill(urs: &UrsCode, block: &[Gf]) -> Result<DecodeOutcome> {
    let view = urs.full_view();
    let s = urs.syndrome(block)?;
    let rows = view.row_syndromes(&s)?;
    chipkill_from_rows(view, &rows)
}

/// Rows with redundancy >= 2 locate the column as c_1/c_0 and must agree;
/// redundancy-1 rows only supply their magnitude c_0.
pub fn chipkill_from_rows(view: &Unraveling, rows: &[Syndrome]) -> Result<DecodeOutcome> {
    let width = view.width();
    let id = DecoderId::FastChipkill;
    let codes = view.row_codes();
    if codes.iter().any(|c| c.redundancy() == 0) {
        return config("fast chipkill needs every row to have redundancy at least 1");
    }
    if !codes.iter().any(|c| c.redundancy() >= 2) {
        return config("fast chipkill needs a row of redundancy at least 2");
    }
    if rows.iter().all(|s| s.is_zero()) {
        return Ok(DecodeOutcome::no_error(id, width));
    }
    let f = view.field();
    let locating = || rows.iter().filter(|s| s.len() >= 2);
    let Some(reference) = locating().find(|s| !s.is_zero()) else {
        return Ok(DecodeOutcome::uncorrectable(id, width, Failure::Unlocated));
    };
    let c0 = reference.0[0];
    if c0.is_zero() {
        return Ok(DecodeOutcome::uncorrectable(
            id,
            width,
            Failure::Inconsistent,
        ));
    }
    let alpha = f.mul(reference.0[1], f.inv(c0)?);
    let Some(col) = view.group_labels().iter().position(|&l| l == alpha) else {
        return Ok(DecodeOutcome::uncorrectable(
            id,
            width,
            Failure::BadLocation,
        ));
    };
    // σ_{h,m} = σ_{h,0}·α^m for every locating row
    for s in locating() {
        let mut expect = s.0[0];
        for &v in &s.0[1..] {
            expect = f.mul(expect, alpha);
            if v != expect {
                return Ok(DecodeOutcome::uncorrectable(
                    id,
                    width,
                    Failure::Inconsistent,
                ));
            }
        }
    }
    let per_row: Vec<BTreeMap<usize, Gf>> = rows
        .iter()
        .map(|s| {
            let mut m = BTreeMap::new();
            if !s.0[0].is_zero() {
                m.insert(col, s.0[0]);
            }
            m
        })
        .collect();
    let errors = view.reravel_errors(&per_row);
    Ok(DecodeOutcome::corrected_with_columns(
        id,
        width,
        errors,
        [col].into_iter().collect(),
    ))
}
