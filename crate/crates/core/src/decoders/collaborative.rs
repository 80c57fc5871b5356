//! Collaborative decoding: one shared column locator for all rows.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::gf::{Gf, Matrix, Poly, Solution};
use crate::grs::{error_magnitudes, find_roots, DecodeOutcome, DecoderId, Failure, Syndrome};
use crate::urs::{Unraveling, UrsCode};

/// ⌊(N-K)/(ℓ+1)⌋, the column count up to which the stacked system is
/// expected to pin down a unique locator.
pub fn collaborative_limit(redundancy: usize, width: usize) -> usize {
    redundancy / (width + 1)
}

pub fn decode_collaborative(urs: &UrsCode, block: &[Gf], ell_eff: usize) -> Result<DecodeOutcome> {
    let view = urs.view(ell_eff)?;
    let s = urs.syndrome(block)?;
    let rows = view.row_syndromes(&s)?;
    Ok(collaborative_from_rows(&view, &rows, None))
}

/// Tries e = 1, 2, ... columns. The first e whose stacked key equations
/// Σ_{t=1..e} Λ̄_t·s_{h,j-t} = s_{h,j} are consistent decides the outcome.
pub fn collaborative_from_rows(
    view: &Unraveling,
    rows: &[Syndrome],
    max_errors: Option<usize>,
) -> DecodeOutcome {
    let width = view.width();
    let id = DecoderId::Collaborative { ell: width };
    if rows.iter().all(|s| s.is_zero()) {
        return DecodeOutcome::no_error(id, width);
    }
    let codes = view.row_codes();
    let redundancy: usize = codes.iter().map(|c| c.redundancy()).sum();
    let min_r = codes.iter().map(|c| c.redundancy()).min().unwrap_or(0);
    let e_max = max_errors
        .unwrap_or_else(|| collaborative_limit(redundancy, width))
        .min(min_r);
    let f = view.field();
    for e in 1..=e_max {
        let mut eqs: Vec<(Vec<Gf>, Gf)> = Vec::new();
        for s in rows {
            for j in e..s.len() {
                eqs.push(((1..=e).map(|t| s.0[j - t]).collect(), s.0[j]));
            }
        }
        let a = Matrix::from_fn(eqs.len(), e, |r, c| eqs[r].0[c]);
        let b: Vec<Gf> = eqs.iter().map(|q| q.1).collect();
        let lambda = match a.solve(&b, f) {
            Solution::Inconsistent => continue,
            Solution::Underdetermined { .. } => {
                return DecodeOutcome::uncorrectable(id, width, Failure::NotUnique)
            }
            Solution::Unique(v) => v,
        };
        let mut coeffs = vec![Gf::ONE];
        coeffs.extend(lambda);
        let forward = Poly::from_coeffs(coeffs).reversed(e);
        let roots = find_roots(&codes[0], &forward);
        if roots.len() != e {
            return DecodeOutcome::uncorrectable(id, width, Failure::NoSplit);
        }
        let mut per_row = Vec::with_capacity(width);
        for (code, s) in codes.iter().zip(rows) {
            let Ok(mags) = error_magnitudes(code, &s.0, &roots) else {
                return DecodeOutcome::uncorrectable(id, width, Failure::Residual);
            };
            if code.syndrome_of_errors(&mags) != *s {
                return DecodeOutcome::uncorrectable(id, width, Failure::Residual);
            }
            per_row.push(
                mags.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect::<BTreeMap<_, _>>(),
            );
        }
        let touched = per_row.iter().flat_map(|m| m.keys().copied()).collect();
        let errors = view.reravel_errors(&per_row);
        return DecodeOutcome::corrected_with_columns(id, width, errors, touched);
    }
    DecodeOutcome::uncorrectable(id, width, Failure::KeyEquation)
}
