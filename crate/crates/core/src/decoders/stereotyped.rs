//! Device-plus-one-symbol decoding with the locator (G(x) - α)(x - β).

use crate::error::{config, Result};
use crate::gf::{Gf, Matrix, Solution};
use crate::grs::{error_magnitudes, DecodeOutcome, DecoderId, ErrorVector, Failure, Syndrome};
use crate::urs::UrsCode;

pub fn decode_stereotyped_plus_one(urs: &UrsCode, block: &[Gf]) -> Result<DecodeOutcome> {
    let s = urs.syndrome(block)?;
    stereotyped_from_syndrome(urs, &s)
}

/// Expanding Λ = xG - βG - αx + γ, the forward key equations
/// Σ_u Λ_u·σ_{s+u} = 0 are linear in (β, α, γ). A unique solution with
/// γ = αβ names the device and the extra symbol.
pub fn stereotyped_from_syndrome(urs: &UrsCode, s: &Syndrome) -> Result<DecodeOutcome> {
    let ell = urs.ell();
    let r = urs.redundancy();
    let id = DecoderId::StereotypedPlusOne;
    if r < ell + 4 {
        return config(format!(
            "device-plus-one decoding needs N-K >= ℓ+4 = {}",
            ell + 4
        ));
    }
    if s.is_zero() {
        return Ok(DecodeOutcome::no_error(id, ell));
    }
    let f = urs.field();
    let g = urs.map().poly();
    let sig = &s.0;
    let dot_g = |start: usize| -> Gf { (0..=ell).map(|u| f.mul(g.coeff(u), sig[start + u])).sum() };
    let eqs = r - ell - 1;
    let a = Matrix::from_fn(eqs, 3, |row, c| match c {
        0 => dot_g(row),
        1 => sig[row + 1],
        _ => sig[row],
    });
    let b: Vec<Gf> = (0..eqs).map(|row| dot_g(row + 1)).collect();
    let (beta, alpha, gamma) = match a.solve(&b, f) {
        Solution::Unique(v) => (v[0], v[1], v[2]),
        Solution::Inconsistent => {
            return Ok(DecodeOutcome::uncorrectable(id, ell, Failure::KeyEquation))
        }
        Solution::Underdetermined { .. } => {
            return Ok(DecodeOutcome::uncorrectable(id, ell, Failure::NotUnique))
        }
    };
    if f.mul(alpha, beta) != gamma {
        return Ok(DecodeOutcome::uncorrectable(id, ell, Failure::Inconsistent));
    }
    let Some(col) = urs.column_labels().iter().position(|&l| l == alpha) else {
        return Ok(DecodeOutcome::uncorrectable(id, ell, Failure::BadLocation));
    };
    let Some(extra) = urs.big_code().position_of(beta) else {
        return Ok(DecodeOutcome::uncorrectable(id, ell, Failure::BadLocation));
    };
    if urs.column_of(extra) == col {
        return Ok(DecodeOutcome::uncorrectable(id, ell, Failure::BadLocation));
    }
    let mut positions: Vec<usize> = urs.column_positions(col).collect();
    positions.push(extra);
    positions.sort_unstable();
    let mags = error_magnitudes(urs.big_code(), sig, &positions)?;
    if urs.big_code().syndrome_of_errors(&mags) != *s {
        return Ok(DecodeOutcome::uncorrectable(id, ell, Failure::Residual));
    }
    let errors: ErrorVector = mags.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    Ok(DecodeOutcome::corrected(id, ell, errors))
}
