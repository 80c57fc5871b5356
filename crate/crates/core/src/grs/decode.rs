//! Bounded-distance errors-and-erasures decoding of GRS codes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::code::{GrsCode, Syndrome};
use super::keyeq::berlekamp_massey;
use crate::error::{Error, Result};
use crate::gf::{Field, Gf, Matrix, Poly, Solution};

/// Sparse error vector: symbol position → error magnitude.
pub type ErrorVector = BTreeMap<usize, Gf>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    NoError,
    Corrected,
    Uncorrectable,
}

/// Why a decoder gave up.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Failure {
    /// No locator of admissible degree satisfies the key equation.
    KeyEquation,
    /// The locator does not split into distinct roots over the labels.
    NoSplit,
    /// A located error falls on a declared erasure.
    ErasedRoot,
    /// Subtracting the recovered magnitudes leaves a nonzero syndrome.
    Residual,
    /// The correction touches more columns than the budget allows.
    ColumnBudget,
    /// The beyond-bound system has more than one solution.
    NotUnique,
    /// A computed location is not a label of the code.
    BadLocation,
    /// Errors are visible only in rows that cannot locate them.
    Unlocated,
    /// Row syndromes disagree with a single-column error.
    Inconsistent,
    /// Rejected by the caller's acceptance policy.
    Rejected,
}

/// Which algorithm produced an outcome.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecoderId {
    Bounded,
    Direct,
    Independent { ell: usize },
    Collaborative { ell: usize },
    FastChipkill,
    StereotypedPlusOne,
}

impl fmt::Display for DecoderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderId::Bounded => write!(f, "bounded"),
            DecoderId::Direct => write!(f, "direct"),
            DecoderId::Independent { ell } => write!(f, "independent(ell={ell})"),
            DecoderId::Collaborative { ell } => write!(f, "collaborative(ell={ell})"),
            DecoderId::FastChipkill => write!(f, "fast-chipkill"),
            DecoderId::StereotypedPlusOne => write!(f, "stereotyped-plus-one"),
        }
    }
}

mod error_vec_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        pos: usize,
        mag: Gf,
    }

    pub fn serialize<S: Serializer>(v: &ErrorVector, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = v.iter().map(|(&pos, &mag)| Entry { pos, mag }).collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<ErrorVector, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.pos, e.mag)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    /// Present (nonempty) iff `status` is `Corrected`.
    #[serde(with = "error_vec_serde")]
    pub errors: ErrorVector,
    /// Columns touched by `errors`, in units of `column_width` symbols.
    pub touched_columns: BTreeSet<usize>,
    pub column_width: usize,
    pub decoder: DecoderId,
    /// Cascade stage that produced this outcome.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stage: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure: Option<Failure>,
}

impl DecodeOutcome {
    pub fn no_error(decoder: DecoderId, column_width: usize) -> DecodeOutcome {
        DecodeOutcome {
            status: DecodeStatus::NoError,
            errors: ErrorVector::new(),
            touched_columns: BTreeSet::new(),
            column_width,
            decoder,
            stage: None,
            failure: None,
        }
    }

    pub fn uncorrectable(
        decoder: DecoderId,
        column_width: usize,
        failure: Failure,
    ) -> DecodeOutcome {
        DecodeOutcome {
            status: DecodeStatus::Uncorrectable,
            failure: Some(failure),
            ..DecodeOutcome::no_error(decoder, column_width)
        }
    }

    /// Corrected outcome with columns taken as contiguous runs of `column_width` symbols.
    pub fn corrected(
        decoder: DecoderId,
        column_width: usize,
        errors: ErrorVector,
    ) -> DecodeOutcome {
        let touched = errors.keys().map(|p| p / column_width).collect();
        DecodeOutcome::corrected_with_columns(decoder, column_width, errors, touched)
    }

    pub fn corrected_with_columns(
        decoder: DecoderId,
        column_width: usize,
        errors: ErrorVector,
        touched_columns: BTreeSet<usize>,
    ) -> DecodeOutcome {
        if errors.is_empty() {
            return DecodeOutcome::no_error(decoder, column_width);
        }
        DecodeOutcome {
            status: DecodeStatus::Corrected,
            errors,
            touched_columns,
            column_width,
            decoder,
            stage: None,
            failure: None,
        }
    }

    pub fn is_uncorrectable(&self) -> bool {
        self.status == DecodeStatus::Uncorrectable
    }

    /// The block with the error vector removed.
    pub fn apply(&self, block: &[Gf]) -> Vec<Gf> {
        let mut out = block.to_vec();
        for (&p, &v) in &self.errors {
            out[p] -= v;
        }
        out
    }
}

/// Symbol (or column) indices declared erased.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErasureSet(BTreeSet<usize>);

impl ErasureSet {
    pub fn none() -> ErasureSet {
        ErasureSet::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn check_range(&self, limit: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i >= limit) {
            Some(i) => Err(Error::Config(format!(
                "erasure index {i} out of range 0..{limit}"
            ))),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for ErasureSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> ErasureSet {
        ErasureSet(iter.into_iter().collect())
    }
}

/// Hook for rejecting corrections the channel model considers implausible.
pub type AcceptFn = fn(&ErrorVector) -> bool;

#[derive(Clone, Copy, Debug, Default)]
pub struct DecodeOptions {
    /// Use Forney's formula for magnitudes when no error sits on label 0.
    pub forney: bool,
    pub accept: Option<AcceptFn>,
}

/// Positions whose labels are roots of the forward locator Λ.
pub fn find_roots(code: &GrsCode, locator: &Poly) -> Vec<usize> {
    let f = code.field();
    code.labels()
        .iter()
        .enumerate()
        .filter(|(_, &a)| locator.eval(a, f).is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Erasure locator ∏(1 - x·α_i) over the given positions.
pub fn erasure_locator(code: &GrsCode, positions: impl IntoIterator<Item = usize>) -> Poly {
    let f = code.field();
    positions.into_iter().fold(Poly::one(), |acc, p| {
        acc.mul(&Poly::from_coeffs(vec![Gf::ONE, code.labels()[p]]), f)
    })
}

/// Magnitudes at known positions by solving the restricted syndrome system
/// Σ_j v_j·m_j·α_j^m = σ_m for m < |positions|.
pub fn error_magnitudes(
    code: &GrsCode,
    syndrome: &[Gf],
    positions: &[usize],
) -> Result<ErrorVector> {
    let e = positions.len();
    if e > syndrome.len() {
        return Err(Error::Domain(format!(
            "{e} unknown magnitudes but only {} syndromes",
            syndrome.len()
        )));
    }
    let f = code.field();
    let s = code.syndrome_matrix();
    let a = Matrix::from_fn(e, e, |m, j| s.get(m, positions[j]));
    match a.solve(&syndrome[..e], f) {
        Solution::Unique(v) => Ok(positions.iter().copied().zip(v).collect()),
        _ => Err(Error::Domain(
            "singular magnitude system (repeated labels?)".into(),
        )),
    }
}

/// Forney's formula v_i·m_i = α_i·Ω(α_i⁻¹) / Λ̄'(α_i⁻¹).
///
/// `locator` is the full reversed locator over `positions` with Λ̄(0) = 1.
/// Returns `None` when a position has label 0.
pub fn forney_magnitudes(
    code: &GrsCode,
    locator: &Poly,
    evaluator: &Poly,
    positions: &[usize],
) -> Option<ErrorVector> {
    let f = code.field();
    let deriv = locator.derivative();
    let mut out = ErrorVector::new();
    for &p in positions {
        let a = code.labels()[p];
        let x = f.inv(a).ok()?;
        let d = deriv.eval(x, f);
        let y = f.mul(a, f.div(evaluator.eval(x, f), d).ok()?);
        out.insert(p, f.div(y, code.multipliers()[p]).ok()?);
    }
    Some(out)
}

fn syndrome_residual_is_zero(code: &GrsCode, syndrome: &[Gf], errors: &ErrorVector) -> bool {
    code.syndrome_of_errors(errors).0 == syndrome
}

/// Decode from a precomputed syndrome. `erasure_locator`, when given, must
/// equal ∏(1 - x·α_i) over `erasures`; callers with sparse closed forms pass it in.
pub fn decode_syndrome(
    code: &GrsCode,
    syndrome: &Syndrome,
    t_max: usize,
    erasures: &ErasureSet,
    erasure_locator_hint: Option<&Poly>,
    opts: &DecodeOptions,
) -> Result<DecodeOutcome> {
    let r = code.redundancy();
    let id = DecoderId::Bounded;
    if 2 * t_max + erasures.len() > r {
        return Err(Error::Config(format!(
            "2·t_max + erasures = {} exceeds redundancy {r}",
            2 * t_max + erasures.len()
        )));
    }
    erasures.check_range(code.n())?;
    if syndrome.len() != r {
        return Err(Error::Length {
            expected: r,
            got: syndrome.len(),
        });
    }
    if syndrome.is_zero() {
        return Ok(DecodeOutcome::no_error(id, 1));
    }
    let f = code.field();
    let owned;
    let gamma = match erasure_locator_hint {
        Some(g) => g,
        None => {
            owned = erasure_locator(code, erasures.iter());
            &owned
        }
    };
    let sigma = syndrome.as_poly();
    let forney_syn = gamma.mul_trunc(&sigma, r, f);
    let seq: Vec<Gf> = (erasures.len()..r).map(|i| forney_syn.coeff(i)).collect();
    let (lambda, len) = berlekamp_massey(&seq, f);
    if len > t_max || 2 * len > seq.len() {
        return Ok(DecodeOutcome::uncorrectable(id, 1, Failure::KeyEquation));
    }
    let lambda = lambda.scale(f.inv(lambda.coeff(0)).expect("nonzero"), f);
    let roots = find_roots(code, &lambda.reversed(len));
    if roots.len() != len {
        return Ok(DecodeOutcome::uncorrectable(id, 1, Failure::NoSplit));
    }
    if roots.iter().any(|&p| erasures.contains(p)) {
        return Ok(DecodeOutcome::uncorrectable(id, 1, Failure::ErasedRoot));
    }
    let mut positions: Vec<usize> = roots.iter().copied().chain(erasures.iter()).collect();
    positions.sort_unstable();

    let zero_label = positions.iter().any(|&p| code.labels()[p].is_zero());
    let mags = if opts.forney && !zero_label {
        let full = lambda.mul(gamma, f);
        let omega = full.mul_trunc(&sigma, r, f);
        forney_magnitudes(code, &full, &omega, &positions)
            .ok_or_else(|| Error::Domain("Forney evaluation failed".into()))?
    } else {
        error_magnitudes(code, &syndrome.0, &positions)?
    };
    if !syndrome_residual_is_zero(code, &syndrome.0, &mags) {
        return Ok(DecodeOutcome::uncorrectable(id, 1, Failure::Residual));
    }
    if roots.iter().any(|p| mags[p].is_zero()) {
        return Ok(DecodeOutcome::uncorrectable(id, 1, Failure::Residual));
    }
    let errors: ErrorVector = mags.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    if let Some(accept) = opts.accept {
        if !accept(&errors) {
            return Ok(DecodeOutcome::uncorrectable(id, 1, Failure::Rejected));
        }
    }
    Ok(DecodeOutcome::corrected(id, 1, errors))
}

/// Errors-and-erasures decoding: corrects up to `t_max` errors plus the
/// declared erasures whenever 2·t_max + |erasures| <= n-k.
pub fn decode_bounded(
    code: &GrsCode,
    block: &[Gf],
    t_max: usize,
    erasures: &ErasureSet,
) -> Result<DecodeOutcome> {
    decode_bounded_with(code, block, t_max, erasures, &DecodeOptions::default())
}

pub fn decode_bounded_with(
    code: &GrsCode,
    block: &[Gf],
    t_max: usize,
    erasures: &ErasureSet,
    opts: &DecodeOptions,
) -> Result<DecodeOutcome> {
    let s = code.syndrome(block)?;
    decode_syndrome(code, &s, t_max, erasures, None, opts)
}

/// The unique-decoding radius left after `erasures`.
pub fn max_errors(code: &GrsCode, erasures: usize) -> usize {
    code.redundancy().saturating_sub(erasures) / 2
}

#[allow(dead_code)]
fn assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<Field>();
    check::<GrsCode>();
}
