use std::sync::OnceLock;

use proptest::collection::{btree_map, vec};
use proptest::prelude::*;
use urs_core::decoders::{CascadeDecoder, DecodePolicy};
use urs_core::gf::{Field, Gf, Poly};
use urs_core::grs::{decode_bounded, DecodeStatus, ErasureSet, ErrorVector};
use urs_core::presets::ddr5;
use urs_core::urs::{subspace_poly, UrsCode};

fn meta8() -> &'static UrsCode {
    static C: OnceLock<UrsCode> = OnceLock::new();
    C.get_or_init(|| ddr5(1).unwrap())
}

fn byte() -> impl Strategy<Value = Gf> {
    (0u16..256).prop_map(Gf)
}

fn nonzero_byte() -> impl Strategy<Value = Gf> {
    (1u16..256).prop_map(Gf)
}

fn poly() -> impl Strategy<Value = Poly> {
    vec(byte(), 0..12).prop_map(Poly::from_coeffs)
}

fn errors(max: usize) -> impl Strategy<Value = ErrorVector> {
    btree_map(0usize..80, nonzero_byte(), 1..=max)
}

fn apply(block: &[Gf], e: &ErrorVector) -> Vec<Gf> {
    let mut b = block.to_vec();
    for (&p, &v) in e {
        b[p] += v;
    }
    b
}

proptest! {
    #[test]
    fn field_axioms(a in byte(), b in byte(), c in byte()) {
        let f = Field::gf256();
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
        }
    }

    #[test]
    fn poly_degrees_and_division(a in poly(), b in poly()) {
        let f = Field::gf256();
        let p = a.mul(&b, &f);
        match (a.degree(), b.degree()) {
            (Some(x), Some(y)) => prop_assert_eq!(p.degree(), Some(x + y)),
            _ => prop_assert!(p.is_zero()),
        }
        if !b.is_zero() {
            let (q, r) = a.div_rem(&b, &f).unwrap();
            prop_assert_eq!(q.mul(&b, &f).add(&r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }

    #[test]
    fn subspace_polynomials_are_additive(bits in 1usize..5, x in byte(), y in byte(), seed in 0u64..1000) {
        let f = Field::gf256();
        let basis: Vec<Gf> = (0..bits).map(|i| Gf(1 << ((i + seed as usize) % 8))).collect();
        let g = subspace_poly(&basis, &f).unwrap();
        prop_assert_eq!(g.eval(x + y, &f), g.eval(x, &f) + g.eval(y, &f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encoding_lands_in_kernel(data in vec(byte(), 65)) {
        let c = meta8();
        prop_assert!(c.syndrome(&c.encode_systematic(&data).unwrap()).unwrap().is_zero());
        prop_assert!(c.syndrome(&c.encode_recursive(&data).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn unravel_round_trip(block in vec(byte(), 80)) {
        let c = meta8();
        prop_assert_eq!(c.reravel(&c.unravel(&block).unwrap()).unwrap(), block.clone());
        let v = c.full_view();
        let s = c.syndrome(&block).unwrap();
        prop_assert_eq!(v.row_syndromes(&s).unwrap(), v.row_syndromes_direct(&block).unwrap());
    }

    #[test]
    fn within_bound_errors_are_corrected(data in vec(byte(), 65), e in errors(7)) {
        let c = meta8();
        let w = c.encode_systematic(&data).unwrap();
        let o = decode_bounded(c.big_code(), &apply(&w, &e), 7, &ErasureSet::none()).unwrap();
        prop_assert_eq!(o.status, DecodeStatus::Corrected);
        prop_assert_eq!(o.errors, e);
    }

    #[test]
    fn beyond_bound_is_never_a_non_codeword(e in btree_map(0usize..80, nonzero_byte(), 8..=20)) {
        let c = meta8();
        let b = apply(&[Gf::ZERO; 80], &e);
        let o = decode_bounded(c.big_code(), &b, 7, &ErasureSet::none()).unwrap();
        if o.status == DecodeStatus::Corrected {
            prop_assert!(o.errors.len() <= 7);
            prop_assert!(c.big_code().is_codeword(&o.apply(&b)).unwrap());
        }
    }

    #[test]
    fn cascade_output_is_a_codeword(data in vec(byte(), 65), e in errors(24)) {
        static D: OnceLock<CascadeDecoder> = OnceLock::new();
        let c = meta8();
        let dec = D.get_or_init(|| CascadeDecoder::new(c, &DecodePolicy::default()).unwrap());
        let w = c.encode_systematic(&data).unwrap();
        let b = apply(&w, &e);
        let o = dec.decode(&b, &ErasureSet::none()).unwrap();
        match o.status {
            DecodeStatus::Corrected => prop_assert!(c.syndrome(&o.apply(&b)).unwrap().is_zero()),
            DecodeStatus::NoError => prop_assert!(false, "a nonzero error left a zero syndrome"),
            DecodeStatus::Uncorrectable => {}
        }
    }
}
