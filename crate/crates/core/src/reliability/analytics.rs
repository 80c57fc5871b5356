//! Closed-form reliability quantities, generic over the probability scalar.
//!
//! Instantiate with `f64` for speed or `BigRational` for exact values.

use num_traits::{FromPrimitive, Num};

use crate::error::{config, Result};

/// Scalars the analytics can be evaluated in.
pub trait Scalar: Num + FromPrimitive + Clone + PartialOrd {}

impl<T: Num + FromPrimitive + Clone + PartialOrd> Scalar for T {}

pub(crate) fn lift<P: Scalar>(v: u64) -> P {
    P::from_u64(v).expect("every scalar type represents small integers")
}

/// base^e, by repeated multiplication so rationals stay exact.
pub fn pow_int<P: Scalar>(base: u64, e: usize) -> P {
    let b: P = lift(base);
    let mut acc = P::one();
    let mut sq = b;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq.clone();
        }
        e >>= 1;
        if e > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// C(n, k).
pub fn binomial<P: Scalar>(n: usize, k: usize) -> P {
    if k > n {
        return P::zero();
    }
    let k = k.min(n - k);
    let mut acc = P::one();
    for i in 0..k {
        acc = acc * lift::<P>((n - i) as u64) / lift::<P>((i + 1) as u64);
    }
    acc
}

fn check_shape(n_big: usize, k_big: usize, ell: usize) -> Result<usize> {
    if ell == 0 || k_big >= n_big {
        return config(format!("invalid shape N={n_big}, K={k_big}, ℓ={ell}"));
    }
    Ok(n_big - k_big)
}

/// Probability that fast chipkill fails on a uniform nonzero single-column
/// error: (q^-(N-K-ℓ) - q^-ℓ) / (1 - q^-ℓ).
pub fn bb_failure_rate<P: Scalar>(q: u64, n_big: usize, k_big: usize, ell: usize) -> Result<P> {
    let r = check_shape(n_big, k_big, ell)?;
    if r <= ell {
        return config(format!("need N-K > ℓ (N-K={r}, ℓ={ell})"));
    }
    let one = P::one();
    let x = one.clone() / pow_int::<P>(q, r - ell);
    let y = one.clone() / pow_int::<P>(q, ell);
    Ok((x - y.clone()) / (one - y))
}

/// Upper bound (N/ℓ)·q^-(N-K-ℓ) on fast-chipkill miscorrection for uniform
/// multi-column errors.
pub fn bb_miscorrection_bound<P: Scalar>(
    q: u64,
    n_big: usize,
    k_big: usize,
    ell: usize,
) -> Result<P> {
    let r = check_shape(n_big, k_big, ell)?;
    if r <= ell {
        return config(format!("need N-K > ℓ (N-K={r}, ℓ={ell})"));
    }
    Ok(lift::<P>((n_big / ell) as u64) / pow_int::<P>(q, r - ell))
}

/// Fewest corrupted symbols in one column that can make fast chipkill fail.
pub fn failure_weight(n_big: usize, k_big: usize, ell: usize) -> usize {
    (n_big - k_big + 1).saturating_sub(ell)
}

/// ⌊(N-K)/(ℓ+1)⌋.
pub fn collaborative_radius(n_big: usize, k_big: usize, ell: usize) -> usize {
    (n_big - k_big) / (ell + 1)
}

/// ⌊n·(1 - (k/n)^(ℓ/(ℓ+1)))⌋, the power-decoding radius. Analytics only.
pub fn power_radius(n: usize, k: usize, ell: usize) -> usize {
    let rate = k as f64 / n as f64;
    let r = n as f64 * (1.0 - rate.powf(ell as f64 / (ell as f64 + 1.0)));
    // guard against 4.999999 when the exact value is an integer
    (r + 1e-9).floor() as usize
}

/// Lossy conversion for display.
pub trait ToF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64 for f64 {
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl ToF64 for num_rational::BigRational {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
