//! Named code shapes.

use crate::error::{config, Result};
use crate::gf::{Field, Gf};
use crate::urs::{construct_urs, subspace_poly, LabelChoice, UrsCode};

/// W = span{0x01, 0x02, 0x04}: each 8-byte device column splits into
/// contiguous byte pairs (ℓ' = 2) and nibble quads (ℓ' = 4).
pub const DDR5_BASIS: [Gf; 3] = [Gf(0x01), Gf(0x02), Gf(0x04)];

pub const PRESETS: &[(&str, &str)] = &[
    ("ddr5-meta0", "GF(256), 10 devices × 8 bytes, (80,64)"),
    ("ddr5-meta8", "GF(256), 10 devices × 8 bytes, (80,65)"),
    ("ddr5-meta16", "GF(256), 10 devices × 8 bytes, (80,66)"),
    ("toy-gf16", "GF(16), G = x^2 + x, (8,5)"),
    ("toy-gf16-k4", "GF(16), G = x^2 + x, (8,4)"),
    (
        "toy-gf16-l4",
        "GF(16), G = x^4 + ..., W = span{1,2}, (16,10)",
    ),
];

/// DDR5-style code with `metadata` extra data symbols (0, 1 or 2).
pub fn ddr5(metadata: usize) -> Result<UrsCode> {
    if metadata > 2 {
        return config("DDR5 presets support 0, 1 or 2 metadata symbols");
    }
    let f = Field::gf256();
    construct_urs(
        &f,
        subspace_poly(&DDR5_BASIS, &f)?,
        10,
        8,
        metadata,
        LabelChoice::Ascending,
    )
}

pub fn toy(n: usize, k: usize, a: usize) -> Result<UrsCode> {
    let f = Field::gf16();
    construct_urs(
        &f,
        subspace_poly(&[Gf(1)], &f)?,
        n,
        k,
        a,
        LabelChoice::Ascending,
    )
}

pub fn preset(name: &str) -> Result<UrsCode> {
    match name {
        "ddr5-meta0" => ddr5(0),
        "ddr5-meta8" => ddr5(1),
        "ddr5-meta16" => ddr5(2),
        "toy-gf16" => toy(4, 2, 1),
        "toy-gf16-k4" => toy(4, 2, 0),
        "toy-gf16-l4" => {
            let f = Field::gf16();
            construct_urs(
                &f,
                subspace_poly(&[Gf(1), Gf(2)], &f)?,
                4,
                2,
                2,
                LabelChoice::Ascending,
            )
        }
        other => {
            let names: Vec<&str> = PRESETS.iter().map(|p| p.0).collect();
            config(format!(
                "unknown preset {other:?}; known: {}",
                names.join(", ")
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let sh = |c: UrsCode| (c.big_n(), c.big_k(), c.ell());
        assert_eq!(sh(preset("ddr5-meta0").unwrap()), (80, 64, 8));
        assert_eq!(sh(preset("ddr5-meta8").unwrap()), (80, 65, 8));
        assert_eq!(sh(preset("ddr5-meta16").unwrap()), (80, 66, 8));
        assert_eq!(sh(preset("toy-gf16").unwrap()), (8, 5, 2));
        assert_eq!(sh(preset("toy-gf16-l4").unwrap()), (16, 10, 4));
        assert!(preset("nope").is_err());
    }

    #[test]
    fn ddr5_views_are_contiguous() {
        let c = preset("ddr5-meta8").unwrap();
        for w in [2, 4] {
            let v = c.view(w).unwrap();
            for (g, pos) in v.groups().iter().enumerate() {
                assert_eq!(*pos, (g * w..(g + 1) * w).collect::<Vec<_>>());
            }
        }
    }
}
