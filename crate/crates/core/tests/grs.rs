mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use rand::Rng;
use urs_core::gf::{Field, Gf, Poly};
use urs_core::grs::*;
use urs_core::presets::ddr5;
use urs_core::reliability::{nearest_codeword_oracle, OracleDecision};

fn toy() -> GrsCode {
    GrsCode::with_sequential_labels(&Field::gf16(), 8, 4).unwrap()
}

/// Every error pattern of weight exactly `w` on `n` positions over GF(16).
fn patterns(n: usize, w: usize, mut visit: impl FnMut(&ErrorVector)) {
    fn rec(
        n: usize,
        w: usize,
        start: usize,
        cur: &mut ErrorVector,
        visit: &mut dyn FnMut(&ErrorVector),
    ) {
        if cur.len() == w {
            visit(cur);
            return;
        }
        for p in start..n {
            for v in 1..16 {
                cur.insert(p, Gf(v));
                rec(n, w, p + 1, cur, visit);
            }
            cur.remove(&p);
        }
    }
    rec(n, w, 0, &mut ErrorVector::new(), &mut visit);
}

fn block_of(n: usize, e: &ErrorVector) -> Vec<Gf> {
    apply(&vec![Gf::ZERO; n], e)
}

#[test]
fn make_grs_examples() {
    let f = Field::gf16();
    let labels: Vec<Gf> = (0..8).map(Gf).collect();
    let c = GrsCode::new(
        &f,
        8,
        4,
        labels,
        Some(vec![Gf::ONE; 8]),
        Some(vec![4, 5, 6, 7]),
    )
    .unwrap();
    assert_eq!(c, toy());
    let m = ddr5(1).unwrap();
    assert_eq!((m.big_code().n(), m.big_code().k()), (80, 65));
}

#[test]
fn kernel_property_exhaustive() {
    let c = toy();
    let mut count = 0;
    c.for_each_codeword(|w| {
        assert!(c.is_codeword(w).unwrap());
        count += 1;
    });
    assert_eq!(count, 65536);
    assert_eq!(
        c.encode_systematic(&[Gf::ZERO; 4]).unwrap(),
        vec![Gf::ZERO; 8]
    );
}

#[test]
fn basis_codewords_are_far_apart() {
    let c = toy();
    let rows = c.generator_rows();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let d = rows[i].iter().zip(&rows[j]).filter(|(a, b)| a != b).count();
            assert!(d >= 5);
        }
    }
}

#[test]
fn key_equation_recovers_locator_exhaustively() {
    let c = toy();
    let f = c.field().clone();
    for w in 0..=2 {
        patterns(8, w, |e| {
            let s = c.syndrome_of_errors(e);
            let k = solve_key_equation(&s.0, 2, &f).unwrap();
            let expect = e.keys().fold(Poly::one(), |acc, &p| {
                acc.mul(&Poly::from_coeffs(vec![Gf::ONE, c.labels()[p]]), &f)
            });
            assert_eq!(k.locator, expect);
            assert_eq!(k.errors, w);
        });
    }
    let single = c.syndrome_of_errors(&[(3usize, Gf(7))].into_iter().collect::<ErrorVector>());
    let k = solve_key_equation(&single.0, 2, &f).unwrap();
    assert_eq!(k.locator, Poly::from_coeffs(vec![Gf::ONE, Gf(3)]));
}

#[test]
fn roots_on_metadata_code() {
    let code = ddr5(1).unwrap().big_code().clone();
    let f = code.field().clone();
    let mut r = rng(20);
    assert!(find_roots(&code, &Poly::one()).is_empty());
    assert_eq!(
        find_roots(&code, &Poly::from_roots(&[code.labels()[3]], &f)),
        vec![3]
    );
    for _ in 0..100 {
        let pos = distinct(80, 3, &mut r);
        let e = symbol_errors(&f, &pos, &mut r);
        let k = solve_key_equation(&code.syndrome_of_errors(&e).0, 7, &f).unwrap();
        let roots: BTreeSet<usize> = find_roots(&code, &k.forward_locator())
            .into_iter()
            .collect();
        assert_eq!(roots, pos.into_iter().collect());
    }
}

#[test]
fn two_error_magnitudes_match_oracle() {
    let c = toy();
    let mut checked = 0;
    patterns(8, 2, |e| {
        if checked % 7 != 0 {
            checked += 1;
            return;
        }
        checked += 1;
        let pos: Vec<usize> = e.keys().copied().collect();
        let s = c.syndrome_of_errors(e);
        assert_eq!(&error_magnitudes(&c, &s.0, &pos).unwrap(), e);
        match nearest_codeword_oracle(&c, &block_of(8, e)).unwrap() {
            OracleDecision::Unique { codeword, distance } => {
                assert_eq!(distance, 2);
                assert_eq!(codeword, vec![Gf::ZERO; 8]);
            }
            t => panic!("unexpected {t:?}"),
        }
    });
}

#[test]
fn single_error_magnitude_is_first_syndrome() {
    let c = toy();
    let e: ErrorVector = [(6, Gf(11))].into_iter().collect();
    let s = c.syndrome_of_errors(&e);
    assert_eq!(error_magnitudes(&c, &s.0, &[6]).unwrap()[&6], s.0[0]);
}

#[test]
fn forney_matches_linear_solve() {
    let code = ddr5(1).unwrap().big_code().clone();
    let f = code.field().clone();
    let mut r = rng(21);
    let fy = DecodeOptions {
        forney: true,
        accept: None,
    };
    for _ in 0..10_000 {
        let pos = distinct(80, 3, &mut r);
        let e = symbol_errors(&f, &pos, &mut r);
        let b = block_of(80, &e);
        let lin = decode_bounded(&code, &b, 7, &ErasureSet::none()).unwrap();
        assert_eq!(lin.errors, e);
        assert_eq!(
            decode_bounded_with(&code, &b, 7, &ErasureSet::none(), &fy).unwrap(),
            lin
        );
    }
}

#[test]
fn within_bound_exhaustive() {
    let c = toy();
    for w in 0..=2 {
        patterns(8, w, |e| {
            let o = decode_bounded(&c, &block_of(8, e), 2, &ErasureSet::none()).unwrap();
            assert_eq!(&o.errors, e);
            let expect = if w == 0 {
                DecodeStatus::NoError
            } else {
                DecodeStatus::Corrected
            };
            assert_eq!(o.status, expect);
        });
    }
}

#[test]
fn beyond_bound_miscorrections_match_decodable_set() {
    let c = toy();
    let mut decodable: HashSet<Vec<Gf>> = HashSet::new();
    for w in 0..=2 {
        patterns(8, w, |e| {
            decodable.insert(c.syndrome_of_errors(e).0);
        });
    }
    let (mut predicted, mut mis, mut total) = (0u64, 0u64, 0u64);
    patterns(8, 3, |e| {
        total += 1;
        predicted += decodable.contains(&c.syndrome_of_errors(e).0) as u64;
        let o = decode_bounded(&c, &block_of(8, e), 2, &ErasureSet::none()).unwrap();
        match o.status {
            DecodeStatus::Corrected => {
                assert_ne!(&o.errors, e);
                mis += 1;
            }
            DecodeStatus::Uncorrectable => {}
            DecodeStatus::NoError => panic!("weight-3 pattern cannot be a codeword"),
        }
    });
    assert_eq!(total, 56 * 3375);
    assert_eq!(mis, predicted);
    assert!(mis > 0);
}

#[test]
fn full_device_by_erasures() {
    let urs = ddr5(0).unwrap();
    let code = urs.big_code();
    let mut r = rng(22);
    for dev in 0..10 {
        let w = random_codeword(&urs, &mut r);
        let pos: Vec<usize> = urs.column_positions(dev).collect();
        let e = symbol_errors(code.field(), &pos, &mut r);
        let er: ErasureSet = pos.iter().copied().collect();
        let o = decode_bounded(code, &apply(&w, &e), 0, &er).unwrap();
        assert_eq!(o.errors, e);
    }
}

#[test]
fn erased_position_cannot_be_a_root() {
    let c = toy();
    let e: ErrorVector = [(1, Gf(3)), (5, Gf(9))].into_iter().collect();
    let er: ErasureSet = [1, 2].into_iter().collect();
    let o = decode_bounded(&c, &block_of(8, &e), 1, &er).unwrap();
    assert_eq!(o.errors, e);
}

#[test]
fn min_distance_and_shortening() {
    let c = toy();
    assert_eq!(c.min_distance_bruteforce().unwrap(), 5);
    let s = c.shorten(&[0]).unwrap();
    assert_eq!((s.n(), s.k()), (7, 3));
    assert_eq!(s.min_distance_bruteforce().unwrap(), 5);
    assert_eq!(c.shorten(&[]).unwrap(), c);
    assert!(c.shorten(&[6]).is_err());
    let s2 = c.shorten(&[1, 2]).unwrap();
    assert!(s2.min_distance_bruteforce().unwrap() >= 5);
    let big = ddr5(1)
        .unwrap()
        .big_code()
        .shorten(&(0..8).collect::<Vec<_>>())
        .unwrap();
    assert_eq!((big.n(), big.k()), (72, 57));
    let huge = ddr5(1).unwrap();
    assert!(huge.big_code().min_distance_bruteforce().is_err());
}

#[test]
fn label_affine_equivalence() {
    let f = Field::gf16();
    let base: Vec<Gf> = (0..6).map(Gf).collect();
    let set_of = |labels: Vec<Gf>| {
        let c = GrsCode::new(&f, 6, 2, labels, None, None).unwrap();
        let mut s = BTreeSet::new();
        c.for_each_codeword(|w| {
            s.insert(w.to_vec());
        });
        s
    };
    let reference = set_of(base.clone());
    assert_eq!(reference.len(), 256);
    for (b, c) in [(Gf(1), Gf(9)), (Gf(7), Gf(0)), (Gf(13), Gf(4))] {
        let moved: Vec<Gf> = base.iter().map(|&a| f.mul(b, a) + c).collect();
        assert_eq!(set_of(moved), reference);
    }
}

#[test]
fn corrected_words_have_zero_syndrome() {
    let code = ddr5(1).unwrap().big_code().clone();
    let mut r = rng(23);
    for _ in 0..2000 {
        let w = r.gen_range(1..12);
        let e = symbol_errors(code.field(), &distinct(80, w, &mut r), &mut r);
        let b = block_of(80, &e);
        let o = decode_bounded(&code, &b, 7, &ErasureSet::none()).unwrap();
        if o.status == DecodeStatus::Corrected {
            assert!(code.is_codeword(&o.apply(&b)).unwrap());
            assert!(o.errors.len() <= 7);
        }
    }
}

#[test]
fn json_shape() {
    let c = toy();
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["field"]["poly"], "0x13");
    assert_eq!(v["labels"][7], "0x07");
    assert_eq!(v["parity_positions"], serde_json::json!([4, 5, 6, 7]));
    let back: GrsCode = serde_json::from_value(v).unwrap();
    assert_eq!(back, c);
}
