//! Independent decoding of the unraveled rows with a shared column budget.

use std::collections::BTreeSet;

use crate::error::{config, Result};
use crate::gf::Gf;
use crate::grs::{
    decode_syndrome, DecodeOptions, DecodeOutcome, DecodeStatus, DecoderId, ErasureSet, Failure,
    Syndrome,
};
use crate::urs::{Unraveling, UrsCode};

/// Default column budget ⌊(N-K-ℓ'f)/(2ℓ')⌋ for a view of width ℓ' with f
/// erased view columns.
pub fn independent_budget(redundancy: usize, width: usize, erased: usize) -> usize {
    redundancy.saturating_sub(width * erased) / (2 * width)
}

/// Unravel to `ell_eff` rows, decode each with erased view columns as
/// erasures, merge, and reject if too many columns are touched.
pub fn decode_independent(
    urs: &UrsCode,
    block: &[Gf],
    ell_eff: usize,
    erasures: &ErasureSet,
) -> Result<DecodeOutcome> {
    let view = urs.view(ell_eff)?;
    let s = urs.syndrome(block)?;
    let rows = view.row_syndromes(&s)?;
    independent_from_rows(&view, &rows, erasures, None)
}

/// `erasures` are big-code positions; each marks its whole view column.
pub fn independent_from_rows(
    view: &Unraveling,
    rows: &[Syndrome],
    erasures: &ErasureSet,
    budget: Option<usize>,
) -> Result<DecodeOutcome> {
    let width = view.width();
    let id = DecoderId::Independent { ell: width };
    erasures.check_range(view.big_len())?;
    let erased: ErasureSet = erasures.iter().map(|p| view.group_of(p)).collect();
    let f = erased.len();
    let min_r = view
        .row_codes()
        .iter()
        .map(|c| c.redundancy())
        .min()
        .unwrap_or(0);
    if f > min_r {
        return config(format!("{f} erased columns exceed row redundancy {min_r}"));
    }
    let redundancy: usize = view.row_codes().iter().map(|c| c.redundancy()).sum();
    let budget = budget.unwrap_or_else(|| independent_budget(redundancy, width, f));
    if rows.iter().all(|s| s.is_zero()) {
        return Ok(DecodeOutcome::no_error(id, width));
    }
    let mut per_row = Vec::with_capacity(width);
    for (code, s) in view.row_codes().iter().zip(rows) {
        let t = (code.redundancy() - f) / 2;
        let o = decode_syndrome(code, s, t, &erased, None, &DecodeOptions::default())?;
        if o.status == DecodeStatus::Uncorrectable {
            return Ok(DecodeOutcome::uncorrectable(
                id,
                width,
                o.failure.unwrap_or(Failure::KeyEquation),
            ));
        }
        per_row.push(o.errors);
    }
    let touched: BTreeSet<usize> = per_row.iter().flat_map(|e| e.keys().copied()).collect();
    if touched.iter().filter(|&&g| !erased.contains(g)).count() > budget {
        return Ok(DecodeOutcome::uncorrectable(
            id,
            width,
            Failure::ColumnBudget,
        ));
    }
    let errors = view.reravel_errors(&per_row);
    Ok(DecodeOutcome::corrected_with_columns(
        id, width, errors, touched,
    ))
}
