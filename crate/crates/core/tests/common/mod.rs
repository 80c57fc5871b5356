#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use urs_core::gf::{Field, Gf};
use urs_core::grs::ErrorVector;
use urs_core::urs::UrsCode;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero(f: &Field, rng: &mut impl Rng) -> Gf {
    Gf(rng.gen_range(1..f.order()) as u16)
}

pub fn any(f: &Field, rng: &mut impl Rng) -> Gf {
    Gf(rng.gen_range(0..f.order()) as u16)
}

pub fn random_codeword(urs: &UrsCode, rng: &mut impl Rng) -> Vec<Gf> {
    let data: Vec<Gf> = (0..urs.big_k()).map(|_| any(urs.field(), rng)).collect();
    urs.encode_systematic(&data).unwrap()
}

/// `count` distinct indices below `n`.
pub fn distinct(n: usize, count: usize, rng: &mut impl Rng) -> Vec<usize> {
    rand::seq::index::sample(rng, n, count).into_vec()
}

/// Uniform nonzero error confined to each group of `groups`.
pub fn group_errors(f: &Field, groups: &[Vec<usize>], rng: &mut impl Rng) -> ErrorVector {
    let mut e = ErrorVector::new();
    for g in groups {
        loop {
            let vals: Vec<Gf> = g.iter().map(|_| any(f, rng)).collect();
            if vals.iter().any(|v| !v.is_zero()) {
                for (&p, v) in g.iter().zip(vals) {
                    if !v.is_zero() {
                        e.insert(p, v);
                    }
                }
                break;
            }
        }
    }
    e
}

/// Every value of a random-symbol error is nonzero.
pub fn symbol_errors(f: &Field, positions: &[usize], rng: &mut impl Rng) -> ErrorVector {
    positions.iter().map(|&p| (p, nonzero(f, rng))).collect()
}

pub fn apply(block: &[Gf], e: &ErrorVector) -> Vec<Gf> {
    let mut b = block.to_vec();
    for (&p, &v) in e {
        b[p] += v;
    }
    b
}
