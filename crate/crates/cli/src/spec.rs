//! Parsing of code, decoder and fault descriptions given on the command line.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Deserialize;
use urs_core::decoders::{DecodePolicy, Stage};
use urs_core::gf::{parse_hex_u32, Field, FieldSpec, Gf};
use urs_core::presets::preset;
use urs_core::reliability::FaultKind;
use urs_core::urs::{construct_urs, CollapsingMap, LabelChoice, MapKind, UrsCode};
use urs_core::Error;

use crate::CliError;

#[derive(Args, Debug, Clone, Default)]
pub struct CodeArgs {
    /// Named code shape (ddr5-meta0, ddr5-meta8, ddr5-meta16, toy-gf16, toy-gf16-k4, toy-gf16-l4).
    #[arg(long, conflicts_with_all = ["code", "field"])]
    pub preset: Option<String>,
    /// Code JSON as written by `construct`.
    #[arg(long, conflicts_with = "field")]
    pub code: Option<PathBuf>,
    /// Field order q = 2^b.
    #[arg(long, requires_all = ["g", "n", "k"])]
    pub field: Option<usize>,
    /// Field polynomial in hex; defaults to the standard one for the order.
    #[arg(long, requires = "field")]
    pub field_poly: Option<String>,
    /// Collapsing map: subspace:B1,B2,.. | power:L | custom:C0,C1,.. (hex, low order first).
    #[arg(long)]
    pub g: Option<String>,
    /// Number of columns.
    #[arg(long)]
    pub n: Option<usize>,
    /// Full data columns; K = ℓk + a.
    #[arg(long)]
    pub k: Option<usize>,
    /// Extra data symbols below ℓ.
    #[arg(long, default_value_t = 0)]
    pub a: usize,
    /// Explicit column labels in hex, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub labels: Vec<String>,
}

fn hex_list(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_hex_u32(t.trim()))
        .collect()
}

pub fn parse_map(spec: &str, f: &Field) -> Result<CollapsingMap, Error> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let elems = |s: &str| -> Result<Vec<Gf>, Error> {
        hex_list(s)?.into_iter().map(|v| f.elem(v)).collect()
    };
    let kind = match kind {
        "subspace" => MapKind::Subspace {
            basis: elems(rest)?,
        },
        "power" => MapKind::Power {
            ell: rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad power exponent {rest:?}")))?,
        },
        "custom" => MapKind::Custom {
            coeffs: elems(rest)?,
        },
        other => {
            return Err(Error::Parse(format!(
                "unknown map kind {other:?}; use subspace, power or custom"
            )))
        }
    };
    CollapsingMap::from_kind(kind, f)
}

impl CodeArgs {
    pub fn load(&self) -> Result<UrsCode, CliError> {
        if let Some(name) = &self.preset {
            return Ok(preset(name)?);
        }
        if let Some(path) = &self.code {
            return Ok(serde_json::from_str(&crate::read_file(path)?)
                .map_err(|e| Error::Parse(e.to_string()))?);
        }
        let Some(q) = self.field else {
            return Err(
                Error::Config("give --preset, --code, or --field with --g/--n/--k".into()).into(),
            );
        };
        if !q.is_power_of_two() || q < 2 {
            return Err(Error::Config(format!("field order {q} is not a power of two")).into());
        }
        let bits = q.trailing_zeros() as u8;
        let f = match &self.field_poly {
            Some(p) => Field::new(FieldSpec::new(bits, parse_hex_u32(p)?)?),
            None => Field::with_bits(bits)?,
        };
        let map = parse_map(self.g.as_deref().unwrap_or_default(), &f)?;
        let labels = if self.labels.is_empty() {
            LabelChoice::Ascending
        } else {
            LabelChoice::Explicit(
                hex_list(&self.labels.join(","))?
                    .into_iter()
                    .map(|v| f.elem(v))
                    .collect::<Result<_, _>>()?,
            )
        };
        Ok(construct_urs(
            &f,
            map,
            self.n.unwrap_or(0),
            self.k.unwrap_or(0),
            self.a,
            labels,
        )?)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DecoderChoice {
    /// Fast chipkill, then independent and collaborative decoding at --ell.
    #[default]
    Cascade,
    Direct,
    Independent,
    Collaborative,
    FastChipkill,
    Stereotyped,
}

#[derive(Args, Debug, Clone, Default)]
pub struct DecoderArgs {
    #[arg(long, value_enum, default_value_t)]
    pub decoder: DecoderChoice,
    /// Row count of the view used by independent and collaborative decoding.
    #[arg(long, default_value_t = 2)]
    pub ell: usize,
    /// Decode policy JSON; overrides --decoder.
    #[arg(long)]
    pub policy: Option<PathBuf>,
    /// Expected metadata symbols; decoding refuses a code with a different remainder.
    #[arg(long)]
    pub metadata_bytes: Option<usize>,
}

impl DecoderArgs {
    pub fn policy(&self) -> Result<DecodePolicy, CliError> {
        let mut p = match &self.policy {
            Some(path) => serde_json::from_str(&crate::read_file(path)?)
                .map_err(|e| Error::Parse(e.to_string()))?,
            None => match self.decoder {
                DecoderChoice::Cascade => DecodePolicy::new(vec![
                    Stage::FastChipkill,
                    Stage::independent(self.ell),
                    Stage::collaborative(self.ell),
                ]),
                DecoderChoice::Direct => DecodePolicy::single(Stage::Direct),
                DecoderChoice::Independent => DecodePolicy::single(Stage::independent(self.ell)),
                DecoderChoice::Collaborative => {
                    DecodePolicy::single(Stage::collaborative(self.ell))
                }
                DecoderChoice::FastChipkill => DecodePolicy::single(Stage::FastChipkill),
                DecoderChoice::Stereotyped => DecodePolicy::single(Stage::StereotypedPlusOne),
            },
        };
        if self.metadata_bytes.is_some() {
            p.metadata_symbols = self.metadata_bytes;
        }
        Ok(p)
    }
}

/// single-column | multi-column:C | random-symbols:C | column-plus-one |
/// dq-burst:W:C | erased-column-plus-errors:E
pub fn parse_fault(s: &str) -> Result<FaultKind, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |i: usize| -> Result<usize, Error> {
        parts
            .get(i)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("fault {s:?} needs a numeric argument {i}")))
    };
    let kind = match parts[0] {
        "single-column" => FaultKind::SingleColumn,
        "column-plus-one" => FaultKind::ColumnPlusOne,
        "multi-column" => FaultKind::MultiColumn { columns: num(1)? },
        "random-symbols" => FaultKind::RandomSymbols { count: num(1)? },
        "dq-burst" => FaultKind::DqBurst {
            width: num(1)?,
            count: num(2)?,
        },
        "erased-column-plus-errors" => FaultKind::ErasedColumnPlusErrors { errors: num(1)? },
        other => return Err(Error::Parse(format!("unknown fault model {other:?}"))),
    };
    Ok(kind)
}

/// Code given inside a campaign file: a preset name or a full code object.
#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum CodeSource {
    Preset { preset: String },
    Inline(Box<UrsCode>),
}

impl CodeSource {
    pub fn load(self) -> Result<UrsCode, CliError> {
        match self {
            CodeSource::Preset { preset: name } => Ok(preset(&name)?),
            CodeSource::Inline(c) => Ok(*c),
        }
    }
}
