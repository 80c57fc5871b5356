//! Dense (uniformly random syndrome) miscorrection rate: the fraction of
//! syndromes some configured decoder would accept.

use serde::{Deserialize, Serialize};

use super::analytics::{binomial, lift, pow_int, Scalar};
use crate::error::{config, Result};
use crate::urs::UrsCode;

/// Code parameters the count depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseShape {
    pub q: u64,
    pub big_n: usize,
    pub big_k: usize,
    pub ell: usize,
    /// Rows of the full unraveling with redundancy 1.
    pub parity_rows: usize,
}

impl DenseShape {
    pub fn of(urs: &UrsCode) -> DenseShape {
        DenseShape {
            q: urs.field().order() as u64,
            big_n: urs.big_n(),
            big_k: urs.big_k(),
            ell: urs.ell(),
            parity_rows: urs
                .row_codes()
                .iter()
                .filter(|c| c.redundancy() == 1)
                .count(),
        }
    }

    pub fn redundancy(&self) -> usize {
        self.big_n - self.big_k
    }

    pub fn devices(&self) -> usize {
        self.big_n / self.ell
    }
}

/// Within-bound decoder whose accepted patterns are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WithinBound {
    /// Up to `t` symbol errors anywhere.
    Symbols { t: usize },
    /// Up to `budget` columns of `width` symbols, aligned inside devices.
    Columns { width: usize, budget: usize },
}

impl WithinBound {
    fn max_weight(&self) -> usize {
        match *self {
            WithinBound::Symbols { t } => t,
            WithinBound::Columns { width, budget } => width * budget,
        }
    }

    fn unit(&self) -> (usize, usize) {
        match *self {
            WithinBound::Symbols { t } => (1, t),
            WithinBound::Columns { width, budget } => (width, budget),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChipkillTerm {
    /// Single-device patterns fast chipkill actually corrects.
    Exact,
    /// Every single-device pattern, (N/ℓ)(q^ℓ - 1).
    Floor,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseDecoders {
    pub within: Option<WithinBound>,
    pub chipkill: Option<ChipkillTerm>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseRate<P> {
    /// Accepted patterns, including the zero pattern.
    pub decodable: P,
    /// decodable / q^(N-K).
    pub rate: P,
    /// True when distinct counted patterns are guaranteed distinct syndromes,
    /// so `decodable` equals the number of accepted syndromes.
    pub exact: bool,
}

/// Σ_{e<=budget} C(units, e)(q^width - 1)^e, zero pattern included.
fn within_count<P: Scalar>(shape: &DenseShape, w: WithinBound) -> P {
    let (width, budget) = w.unit();
    let units = shape.big_n / width;
    let per: P = pow_int::<P>(shape.q, width) - P::one();
    (0..=budget.min(units)).fold(P::zero(), |acc, e| {
        let mut term = binomial::<P>(units, e);
        for _ in 0..e {
            term = term * per.clone();
        }
        acc + term
    })
}

/// Nonzero single-device patterns the term accepts, per device.
fn chipkill_per_device<P: Scalar>(shape: &DenseShape, c: ChipkillTerm) -> P {
    match c {
        ChipkillTerm::Exact => {
            pow_int::<P>(shape.q, shape.ell) - pow_int::<P>(shape.q, shape.parity_rows)
        }
        ChipkillTerm::Floor => pow_int::<P>(shape.q, shape.ell) - P::one(),
    }
}

/// Nonzero single-device patterns accepted by both decoders, per device.
///
/// A device splits into m = ℓ/s sub-columns of s symbols. Patterns with
/// nonzero support on exactly j sub-columns number (q^s - 1)^j; those fast
/// chipkill rejects are the ones whose locating-row components vanish, a
/// kernel of a Vandermonde system in ℓ - p unknowns. Inclusion-exclusion on
/// the support gives their count F_j.
fn overlap_per_device<P: Scalar>(shape: &DenseShape, w: WithinBound, c: ChipkillTerm) -> Result<P> {
    let (s, budget) = w.unit();
    if !shape.ell.is_multiple_of(s) {
        return config(format!("column width {s} does not divide ℓ={}", shape.ell));
    }
    let m = shape.ell / s;
    let locating = shape.ell - shape.parity_rows;
    let per: P = pow_int::<P>(shape.q, s) - P::one();
    let mut total = P::zero();
    for j in 1..=budget.min(m) {
        let mut all = P::one();
        for _ in 0..j {
            all = all * per.clone();
        }
        let failing = match c {
            ChipkillTerm::Floor => P::zero(),
            ChipkillTerm::Exact => {
                let mut plus = P::zero();
                let mut minus = P::zero();
                for i in 0..=j {
                    let dim = (i * s).saturating_sub(locating);
                    let term = binomial::<P>(j, i) * pow_int::<P>(shape.q, dim);
                    if (j - i) % 2 == 0 {
                        plus = plus + term;
                    } else {
                        minus = minus + term;
                    }
                }
                plus - minus
            }
        };
        total = total + binomial::<P>(m, j) * (all - failing);
    }
    Ok(total)
}

/// Fraction of the q^(N-K) syndromes accepted by the configured decoders.
pub fn dense_miscorrection_rate<P: Scalar>(
    shape: &DenseShape,
    dec: &DenseDecoders,
) -> Result<DenseRate<P>> {
    let r = shape.redundancy();
    let d = r + 1;
    if dec.within.is_none() && dec.chipkill.is_none() {
        return config("no decoder configured");
    }
    let mut decodable = P::one();
    let mut exact = true;
    if let Some(w) = dec.within {
        if 2 * w.max_weight() > r {
            return config(format!(
                "within-bound decoder weight {} exceeds (N-K)/2",
                w.max_weight()
            ));
        }
        decodable = decodable + within_count::<P>(shape, w) - P::one();
    }
    if let Some(c) = dec.chipkill {
        let devs: P = lift(shape.devices() as u64);
        decodable = decodable + devs.clone() * chipkill_per_device::<P>(shape, c);
        if c == ChipkillTerm::Floor && 2 * shape.ell >= d {
            exact = false;
        }
        if let Some(w) = dec.within {
            decodable = decodable - devs * overlap_per_device::<P>(shape, w, c)?;
            if w.max_weight() + shape.ell >= d {
                exact = false;
            }
        }
    }
    let rate = decodable.clone() / pow_int::<P>(shape.q, r);
    Ok(DenseRate {
        decodable,
        rate,
        exact,
    })
}
