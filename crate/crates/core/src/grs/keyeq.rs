//! Key-equation solving with the inversionless Berlekamp-Massey algorithm.

use crate::gf::{Field, Gf, Poly};

/// Solution of Ω ≡ Λ̄·σ (mod x^len) with deg Ω < e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyEquation {
    /// Reversed locator Λ̄ = ∏(1 - x·α_i), normalized so Λ̄(0) = 1.
    pub locator: Poly,
    /// Error evaluator Ω.
    pub evaluator: Poly,
    /// Error count e, the LFSR length. May exceed `deg locator` when a label is zero.
    pub errors: usize,
}

impl KeyEquation {
    /// Forward locator Λ(x) = x^e · Λ̄(1/x), monic of degree e.
    pub fn forward_locator(&self) -> Poly {
        self.locator.reversed(self.errors)
    }
}

/// Shortest LFSR generating `seq`: returns the unnormalized connection
/// polynomial and its length.
pub fn berlekamp_massey(seq: &[Gf], f: &Field) -> (Poly, usize) {
    let mut lambda = Poly::one();
    let mut prev = Poly::one();
    let mut len = 0usize;
    let mut gamma = Gf::ONE;
    for r in 0..seq.len() {
        let delta: Gf = (0..lambda.coeffs().len().min(r + 1))
            .map(|i| f.mul(lambda.coeff(i), seq[r - i]))
            .sum();
        let next = lambda.scale(gamma, f).add(&prev.shift(1).scale(delta, f));
        if !delta.is_zero() && 2 * len <= r {
            prev = lambda;
            len = r + 1 - len;
            gamma = delta;
        } else {
            prev = prev.shift(1);
        }
        lambda = next;
    }
    (lambda, len)
}

/// Minimal-degree solution of the key equation for `syndrome`, or `None`
/// when the shortest LFSR is longer than `t_max`.
pub fn solve_key_equation(syndrome: &[Gf], t_max: usize, f: &Field) -> Option<KeyEquation> {
    let (lambda, len) = berlekamp_massey(syndrome, f);
    if len > t_max || 2 * len > syndrome.len() {
        return None;
    }
    let norm = f
        .inv(lambda.coeff(0))
        .expect("BM connection polynomial has nonzero constant");
    let locator = lambda.scale(norm, f);
    let evaluator = locator.mul_trunc(&Poly::from_coeffs(syndrome.to_vec()), syndrome.len(), f);
    if evaluator.degree().is_some_and(|d| d >= len) {
        return None;
    }
    Some(KeyEquation {
        locator,
        evaluator,
        errors: len,
    })
}
