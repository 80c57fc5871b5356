//! Column erasures via the sparse per-column locator x^ℓ·(G(1/x) - α_i).

use std::collections::BTreeSet;

use crate::error::{config, Result};
use crate::gf::{Gf, Poly};
use crate::grs::{ErasureSet, Syndrome};
use crate::urs::UrsCode;

/// Forney syndrome T = Γ̄·σ mod x^(N-K) for erased columns, with Γ̄ itself.
///
/// The leading ℓ·|erased| entries of `values` carry no information; the
/// rest feed an errors-only decoder with that much less redundancy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForneySyndrome {
    pub locator: Poly,
    pub values: Vec<Gf>,
    pub erased_symbols: usize,
}

impl ForneySyndrome {
    /// The part of T usable for locating the remaining errors.
    pub fn effective(&self) -> &[Gf] {
        &self.values[self.erased_symbols..]
    }
}

/// ∏ over columns of x^ℓ·(G(1/x) - α_i) = ∏_j (1 - β_ij·x).
pub fn column_erasure_locator(urs: &UrsCode, columns: &BTreeSet<usize>) -> Poly {
    let f = urs.field();
    let ell = urs.ell();
    let g = urs.map().poly();
    columns.iter().fold(Poly::one(), |acc, &i| {
        let shifted = g.add(&Poly::constant(urs.column_labels()[i]));
        acc.mul(&shifted.reversed(ell), f)
    })
}

pub fn erase_column_syndrome(
    urs: &UrsCode,
    syndrome: &Syndrome,
    erased_columns: &BTreeSet<usize>,
) -> Result<ForneySyndrome> {
    let r = urs.redundancy();
    let erased_symbols = erased_columns.len() * urs.ell();
    if erased_symbols > r {
        return config(format!(
            "erasing {erased_symbols} symbols exceeds redundancy {r}"
        ));
    }
    if let Some(&bad) = erased_columns.iter().find(|&&i| i >= urs.n()) {
        return config(format!("column {bad} out of range"));
    }
    let locator = column_erasure_locator(urs, erased_columns);
    let t = locator.mul_trunc(&syndrome.as_poly(), r, urs.field());
    Ok(ForneySyndrome {
        locator,
        values: (0..r).map(|i| t.coeff(i)).collect(),
        erased_symbols,
    })
}

/// Big-code positions of the given columns.
pub fn column_erasures(urs: &UrsCode, columns: impl IntoIterator<Item = usize>) -> ErasureSet {
    columns
        .into_iter()
        .flat_map(|i| urs.column_positions(i))
        .collect()
}

/// The columns making up `erasures` if it is a nonempty union of whole columns.
pub(crate) fn whole_columns(urs: &UrsCode, erasures: &ErasureSet) -> Option<BTreeSet<usize>> {
    if erasures.is_empty() {
        return None;
    }
    let cols: BTreeSet<usize> = erasures.iter().map(|p| urs.column_of(p)).collect();
    (cols.len() * urs.ell() == erasures.len()).then_some(cols)
}
