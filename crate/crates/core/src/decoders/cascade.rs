//! Ordered decoder stages sharing one syndrome computation.

use serde::{Deserialize, Serialize};

use super::chipkill::chipkill_from_rows;
use super::collaborative::collaborative_from_rows;
use super::direct::direct_from_syndrome;
use super::independent::independent_from_rows;
use super::stereotyped::stereotyped_from_syndrome;
use crate::error::{config, Result};
use crate::gf::Gf;
use crate::grs::{DecodeOutcome, DecodeStatus, DecoderId, ErasureSet, Failure, Syndrome};
use crate::urs::{Unraveling, UrsCode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stage {
    FastChipkill,
    Independent {
        ell: usize,
        /// Column budget; defaults to ⌊(N-K-ℓf)/(2ℓ)⌋.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        column_budget: Option<usize>,
    },
    Collaborative {
        ell: usize,
        /// Largest column count tried; defaults to ⌊(N-K)/(ℓ+1)⌋.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_columns: Option<usize>,
    },
    Direct,
    StereotypedPlusOne,
}

impl Stage {
    pub fn independent(ell: usize) -> Stage {
        Stage::Independent {
            ell,
            column_budget: None,
        }
    }

    pub fn collaborative(ell: usize) -> Stage {
        Stage::Collaborative {
            ell,
            max_columns: None,
        }
    }

    fn accepts_erasures(&self) -> bool {
        matches!(self, Stage::Independent { .. } | Stage::Direct)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodePolicy {
    pub stages: Vec<Stage>,
    /// If set, must equal the code's remainder a (metadata symbols on top of ℓk).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata_symbols: Option<usize>,
    /// Derive row syndromes from the big syndrome (true) or by unraveling
    /// the block again for each view (false). Results are identical.
    #[serde(default = "yes")]
    pub translate_syndromes: bool,
}

fn yes() -> bool {
    true
}

impl Default for DecodePolicy {
    /// Fast chipkill, then independent and collaborative decoding at ℓ = 2.
    fn default() -> DecodePolicy {
        DecodePolicy::new(vec![
            Stage::FastChipkill,
            Stage::independent(2),
            Stage::collaborative(2),
        ])
    }
}

impl DecodePolicy {
    pub fn new(stages: Vec<Stage>) -> DecodePolicy {
        DecodePolicy {
            stages,
            metadata_symbols: None,
            translate_syndromes: true,
        }
    }

    pub fn single(stage: Stage) -> DecodePolicy {
        DecodePolicy::new(vec![stage])
    }
}

/// A policy bound to a code, with views built once.
#[derive(Clone, Debug)]
pub struct CascadeDecoder {
    urs: UrsCode,
    policy: DecodePolicy,
    views: Vec<Option<Unraveling>>,
}

impl CascadeDecoder {
    pub fn new(urs: &UrsCode, policy: &DecodePolicy) -> Result<CascadeDecoder> {
        if policy.stages.is_empty() {
            return config("decode policy has no stages");
        }
        if let Some(m) = policy.metadata_symbols {
            if m != urs.a() {
                return config(format!(
                    "policy expects {m} metadata symbols but the code has a = {}",
                    urs.a()
                ));
            }
        }
        let r = urs.redundancy();
        let mut views = Vec::with_capacity(policy.stages.len());
        for st in &policy.stages {
            views.push(match st {
                Stage::FastChipkill => {
                    let v = urs.full_view();
                    let rs: Vec<usize> = v.row_codes().iter().map(|c| c.redundancy()).collect();
                    if !rs.iter().any(|&x| x >= 2) {
                        return config("fast chipkill needs a row of redundancy at least 2");
                    }
                    None
                }
                Stage::Independent { ell, .. } | Stage::Collaborative { ell, .. } => {
                    Some(urs.view(*ell)?)
                }
                Stage::Direct => None,
                Stage::StereotypedPlusOne => {
                    if r < urs.ell() + 4 {
                        return config(format!(
                            "device-plus-one decoding needs N-K >= ℓ+4 = {}",
                            urs.ell() + 4
                        ));
                    }
                    None
                }
            });
        }
        Ok(CascadeDecoder {
            urs: urs.clone(),
            policy: policy.clone(),
            views,
        })
    }

    pub fn code(&self) -> &UrsCode {
        &self.urs
    }

    pub fn policy(&self) -> &DecodePolicy {
        &self.policy
    }

    pub fn decode(&self, block: &[Gf], erasures: &ErasureSet) -> Result<DecodeOutcome> {
        let sigma = self.urs.syndrome(block)?;
        let mut last = None;
        for (i, st) in self.policy.stages.iter().enumerate() {
            if !erasures.is_empty() && !st.accepts_erasures() {
                continue;
            }
            let rows = |view: &Unraveling| -> Result<Vec<Syndrome>> {
                if self.policy.translate_syndromes {
                    view.row_syndromes(&sigma)
                } else {
                    view.row_syndromes_direct(block)
                }
            };
            let big = || -> Result<Syndrome> {
                if self.policy.translate_syndromes {
                    Ok(sigma.clone())
                } else {
                    self.urs.syndrome(block)
                }
            };
            let mut out = match st {
                Stage::FastChipkill => {
                    let v = self.urs.full_view();
                    chipkill_from_rows(v, &rows(v)?)?
                }
                Stage::Independent { column_budget, .. } => {
                    let v = self.views[i].as_ref().expect("view built");
                    independent_from_rows(v, &rows(v)?, erasures, *column_budget)?
                }
                Stage::Collaborative { max_columns, .. } => {
                    let v = self.views[i].as_ref().expect("view built");
                    collaborative_from_rows(v, &rows(v)?, *max_columns)
                }
                Stage::Direct => direct_from_syndrome(&self.urs, &big()?, erasures)?,
                Stage::StereotypedPlusOne => stereotyped_from_syndrome(&self.urs, &big()?)?,
            };
            out.stage = Some(i);
            if out.status != DecodeStatus::Uncorrectable {
                return Ok(out);
            }
            last = Some(out);
        }
        Ok(last.unwrap_or_else(|| {
            // every stage was skipped because of erasures
            DecodeOutcome::uncorrectable(DecoderId::Direct, self.urs.ell(), Failure::Rejected)
        }))
    }
}

/// Run `policy` on `block`; the first stage not reporting Uncorrectable wins.
pub fn decode_cascade(
    urs: &UrsCode,
    block: &[Gf],
    policy: &DecodePolicy,
    erasures: &ErasureSet,
) -> Result<DecodeOutcome> {
    CascadeDecoder::new(urs, policy)?.decode(block, erasures)
}
