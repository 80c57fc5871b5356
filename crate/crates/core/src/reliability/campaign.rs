//! Fault-injection campaigns: inject, decode, classify against ground truth.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decoders::{CascadeDecoder, DecodePolicy};
use crate::error::{config, Error, Result};
use crate::gf::Gf;
use crate::grs::{DecodeStatus, ErasureSet, ErrorVector};
use crate::urs::UrsCode;

/// Error patterns. Every injected pattern is nonzero; symbol values are
/// uniform over nonzero elements and group values uniform over nonzero vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaultKind {
    /// `count` symbols anywhere.
    RandomSymbols { count: usize },
    /// One whole device column.
    SingleColumn,
    /// `columns` distinct device columns.
    MultiColumn { columns: usize },
    /// One device column plus one symbol in another device.
    ColumnPlusOne,
    /// `count` aligned runs of `width` symbols (width | ℓ).
    DqBurst { width: usize, count: usize },
    /// One device marked erased and corrupted, plus `errors` symbols elsewhere.
    ErasedColumnPlusErrors { errors: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultModel {
    #[serde(flatten)]
    pub kind: FaultKind,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Injection {
    pub errors: ErrorVector,
    pub erasures: ErasureSet,
}

impl FaultKind {
    pub fn validate(&self, urs: &UrsCode) -> Result<()> {
        let (n, big_n, ell) = (urs.n(), urs.big_n(), urs.ell());
        let ok = match *self {
            FaultKind::RandomSymbols { count } => (1..=big_n).contains(&count),
            FaultKind::SingleColumn => true,
            FaultKind::MultiColumn { columns } => (1..=n).contains(&columns),
            FaultKind::ColumnPlusOne => n >= 2,
            FaultKind::DqBurst { width, count } => {
                width >= 1 && ell % width == 0 && (1..=big_n / width).contains(&count)
            }
            FaultKind::ErasedColumnPlusErrors { errors } => errors <= big_n - ell,
        };
        if ok {
            Ok(())
        } else {
            config(format!(
                "fault model {self:?} does not fit a code with {n} columns of {ell}"
            ))
        }
    }

    /// Groups of positions that are corrupted together, and how many of them
    /// one injection picks.
    fn groups(&self, urs: &UrsCode) -> Option<(Vec<Vec<usize>>, usize)> {
        let devices = || {
            (0..urs.n())
                .map(|i| urs.column_positions(i).collect())
                .collect()
        };
        match *self {
            FaultKind::RandomSymbols { count } => {
                Some(((0..urs.big_n()).map(|p| vec![p]).collect(), count))
            }
            FaultKind::SingleColumn => Some((devices(), 1)),
            FaultKind::MultiColumn { columns } => Some((devices(), columns)),
            FaultKind::DqBurst { width, count } => Some((
                (0..urs.big_n() / width)
                    .map(|g| (g * width..(g + 1) * width).collect())
                    .collect(),
                count,
            )),
            FaultKind::ColumnPlusOne | FaultKind::ErasedColumnPlusErrors { .. } => None,
        }
    }

    pub fn inject(&self, urs: &UrsCode, rng: &mut impl Rng) -> Injection {
        let q = urs.field().order();
        let ell = urs.ell();
        let mut out = Injection::default();
        if let Some((groups, count)) = self.groups(urs) {
            for g in sample(rng, groups.len(), count) {
                fill_nonzero(&groups[g], q, rng, &mut out.errors);
            }
            return out;
        }
        let dev = rng.gen_range(0..urs.n());
        let cols: Vec<usize> = urs.column_positions(dev).collect();
        fill_nonzero(&cols, q, rng, &mut out.errors);
        let extra = match *self {
            FaultKind::ColumnPlusOne => 1,
            FaultKind::ErasedColumnPlusErrors { errors } => {
                out.erasures = cols.iter().copied().collect();
                errors
            }
            _ => unreachable!("grouped kinds handled above"),
        };
        for i in sample(rng, urs.big_n() - ell, extra) {
            let p = if i < dev * ell { i } else { i + ell };
            out.errors.insert(p, Gf(rng.gen_range(1..q) as u16));
        }
        out
    }

    /// Number of distinct injections, if it fits in a u64.
    pub fn pattern_count(&self, urs: &UrsCode) -> Option<u64> {
        let q = urs.field().order() as u64;
        let ell = urs.ell();
        let choose = |n: u64, k: u64| -> Option<u64> {
            (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|v| v / (i + 1)))
        };
        let nz = |w: usize| q.checked_pow(w as u32).map(|v| v - 1);
        if let Some((groups, count)) = self.groups(urs) {
            let w = groups[0].len();
            return choose(groups.len() as u64, count as u64)?
                .checked_mul(nz(w)?.checked_pow(count as u32)?);
        }
        let outside = (urs.big_n() - ell) as u64;
        let extra = match *self {
            FaultKind::ColumnPlusOne => 1,
            FaultKind::ErasedColumnPlusErrors { errors } => errors as u64,
            _ => unreachable!(),
        };
        (urs.n() as u64)
            .checked_mul(nz(ell)?)?
            .checked_mul(choose(outside, extra)?)?
            .checked_mul((q - 1).checked_pow(extra as u32)?)
    }

    /// Visit every injection once.
    pub fn enumerate(&self, urs: &UrsCode, mut visit: impl FnMut(&Injection)) {
        let q = urs.field().order();
        if let Some((groups, count)) = self.groups(urs) {
            let mut inj = Injection::default();
            for_each_combination(groups.len(), count, |chosen| {
                let sel: Vec<&Vec<usize>> = chosen.iter().map(|&g| &groups[g]).collect();
                for_each_group_values(&sel, q, |e| {
                    inj.errors = e.clone();
                    visit(&inj);
                });
            });
            return;
        }
        let extra = match *self {
            FaultKind::ColumnPlusOne => 1,
            FaultKind::ErasedColumnPlusErrors { errors } => errors,
            _ => unreachable!(),
        };
        for dev in 0..urs.n() {
            let cols: Vec<usize> = urs.column_positions(dev).collect();
            let outside: Vec<Vec<usize>> = (0..urs.big_n())
                .filter(|p| !cols.contains(p))
                .map(|p| vec![p])
                .collect();
            let erasures: ErasureSet = match self {
                FaultKind::ErasedColumnPlusErrors { .. } => cols.iter().copied().collect(),
                _ => ErasureSet::none(),
            };
            for_each_combination(outside.len(), extra, |chosen| {
                let mut sel: Vec<&Vec<usize>> = vec![&cols];
                sel.extend(chosen.iter().map(|&i| &outside[i]));
                for_each_group_values(&sel, q, |e| {
                    visit(&Injection {
                        errors: e.clone(),
                        erasures: erasures.clone(),
                    });
                });
            });
        }
    }
}

fn fill_nonzero(positions: &[usize], q: usize, rng: &mut impl Rng, out: &mut ErrorVector) {
    loop {
        let vals: Vec<u16> = positions
            .iter()
            .map(|_| rng.gen_range(0..q) as u16)
            .collect();
        if vals.iter().any(|&v| v != 0) {
            for (&p, v) in positions.iter().zip(vals) {
                if v != 0 {
                    out.insert(p, Gf(v));
                }
            }
            return;
        }
    }
}

/// Lexicographic k-subsets of 0..n.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every assignment giving each group a nonzero value vector.
fn for_each_group_values(groups: &[&Vec<usize>], q: usize, mut visit: impl FnMut(&ErrorVector)) {
    let positions: Vec<usize> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    let mut digits = vec![0usize; positions.len()];
    let nonzero_groups = |d: &[usize]| {
        let mut off = 0;
        groups.iter().all(|g| {
            let ok = d[off..off + g.len()].iter().any(|&v| v != 0);
            off += g.len();
            ok
        })
    };
    loop {
        if nonzero_groups(&digits) {
            let e: ErrorVector = positions
                .iter()
                .zip(&digits)
                .filter(|(_, &v)| v != 0)
                .map(|(&p, &v)| (p, Gf(v as u16)))
                .collect();
            visit(&e);
        }
        let mut j = 0;
        loop {
            if j == digits.len() {
                return;
            }
            digits[j] += 1;
            if digits[j] < q {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub no_error: u64,
    pub corrected_exact: u64,
    /// Detected uncorrectable.
    pub due: u64,
    /// Silent corruption: the decoder claimed a correction that was wrong.
    pub sdc: u64,
}

impl Counts {
    pub fn total(&self) -> u64 {
        self.no_error + self.corrected_exact + self.due + self.sdc
    }

    fn merge(&mut self, o: &Counts) {
        self.no_error += o.no_error;
        self.corrected_exact += o.corrected_exact;
        self.due += o.due;
        self.sdc += o.sdc;
    }
}

/// Rate with its Wilson score interval at 95%.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateCi {
    pub rate: f64,
    pub lo: f64,
    pub hi: f64,
}

pub const WILSON_Z: f64 = 1.96;

pub fn wilson(successes: u64, trials: u64) -> RateCi {
    if trials == 0 {
        return RateCi {
            rate: 0.0,
            lo: 0.0,
            hi: 1.0,
        };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    RateCi {
        rate: p,
        lo: (center - half).max(0.0),
        hi: (center + half).min(1.0),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    pub no_error: RateCi,
    pub corrected_exact: RateCi,
    pub due: RateCi,
    pub sdc: RateCi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub config_hash: String,
    pub code: String,
    pub fault: FaultKind,
    pub seed: u64,
    pub shards: u32,
    pub exhaustive: bool,
    pub trials: u64,
    pub counts: Counts,
    pub rates: Rates,
    /// Outcomes by the cascade stage that produced them.
    pub stages: BTreeMap<usize, Counts>,
}

pub const CSV_HEADER: &str = "config_hash,trials,no_error,corrected_exact,due,sdc,\
corrected_rate,corrected_lo,corrected_hi,due_rate,due_lo,due_hi,sdc_rate,sdc_lo,sdc_hi";

impl SimReport {
    pub fn csv_row(&self) -> String {
        let r = |c: &RateCi| format!("{:e},{:e},{:e}", c.rate, c.lo, c.hi);
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.config_hash,
            self.trials,
            self.counts.no_error,
            self.counts.corrected_exact,
            self.counts.due,
            self.counts.sdc,
            r(&self.rates.corrected_exact),
            r(&self.rates.due),
            r(&self.rates.sdc)
        )
    }

    pub fn to_csv(&self) -> String {
        format!("{CSV_HEADER}\n{}\n", self.csv_row())
    }
}

/// Default shard count. Fixed so results do not depend on the thread pool.
pub const DEFAULT_SHARDS: u32 = 16;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for shard `i`: splitmix64(seed ^ splitmix64(i)).
pub fn shard_seed(seed: u64, shard: u32) -> u64 {
    splitmix64(seed ^ splitmix64(shard as u64))
}

/// FNV-1a, for a stable short configuration fingerprint.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

#[derive(Default)]
struct Tally {
    counts: Counts,
    stages: BTreeMap<usize, Counts>,
}

impl Tally {
    fn record(&mut self, dec: &CascadeDecoder, block: &[Gf], inj: &Injection) -> Result<()> {
        let out = dec.decode(block, &inj.erasures)?;
        let mut one = Counts::default();
        match out.status {
            DecodeStatus::NoError => one.no_error = 1,
            DecodeStatus::Corrected if out.errors == inj.errors => one.corrected_exact = 1,
            DecodeStatus::Corrected => one.sdc = 1,
            DecodeStatus::Uncorrectable => one.due = 1,
        }
        self.counts.merge(&one);
        if let (Some(s), false) = (out.stage, out.status == DecodeStatus::Uncorrectable) {
            self.stages.entry(s).or_default().merge(&one);
        }
        Ok(())
    }

    fn merge(&mut self, o: Tally) {
        self.counts.merge(&o.counts);
        for (k, v) in o.stages {
            self.stages.entry(k).or_default().merge(&v);
        }
    }
}

fn add(block: &[Gf], e: &ErrorVector) -> Vec<Gf> {
    let mut b = block.to_vec();
    for (&p, &v) in e {
        b[p] += v;
    }
    b
}

fn report(
    urs: &UrsCode,
    policy: &DecodePolicy,
    fault: &FaultModel,
    shards: u32,
    exhaustive: bool,
    tally: Tally,
) -> Result<SimReport> {
    let fingerprint =
        serde_json::to_string(&(urs, policy, fault, shards, exhaustive, tally.counts.total()))
            .map_err(|e| Error::Parse(e.to_string()))?;
    let n = tally.counts.total();
    let c = tally.counts;
    Ok(SimReport {
        config_hash: format!("{:016x}", fnv1a(fingerprint.as_bytes())),
        code: format!(
            "URS(GF({}); {},{}) ell={}",
            urs.field().order(),
            urs.big_n(),
            urs.big_k(),
            urs.ell()
        ),
        fault: fault.kind.clone(),
        seed: fault.seed,
        shards,
        exhaustive,
        trials: n,
        counts: c,
        rates: Rates {
            no_error: wilson(c.no_error, n),
            corrected_exact: wilson(c.corrected_exact, n),
            due: wilson(c.due, n),
            sdc: wilson(c.sdc, n),
        },
        stages: tally.stages,
    })
}

/// Monte Carlo campaign over `DEFAULT_SHARDS` shards.
pub fn run_campaign(
    urs: &UrsCode,
    policy: &DecodePolicy,
    fault: &FaultModel,
    trials: u64,
) -> Result<SimReport> {
    run_campaign_sharded(urs, policy, fault, trials, DEFAULT_SHARDS)
}

/// Shard i runs ⌈trials/shards⌉ or ⌊trials/shards⌋ trials from
/// `shard_seed(seed, i)`; each trial corrupts a fresh random codeword.
pub fn run_campaign_sharded(
    urs: &UrsCode,
    policy: &DecodePolicy,
    fault: &FaultModel,
    trials: u64,
    shards: u32,
) -> Result<SimReport> {
    if trials == 0 || shards == 0 {
        return config("trials and shards must be positive");
    }
    fault.kind.validate(urs)?;
    let dec = CascadeDecoder::new(urs, policy)?;
    let per = trials / shards as u64;
    let rem = trials % shards as u64;
    let tallies: Vec<Result<Tally>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(shard_seed(fault.seed, s));
            let mut t = Tally::default();
            let q = urs.field().order();
            for _ in 0..per + ((s as u64) < rem) as u64 {
                let data: Vec<Gf> = (0..urs.big_k())
                    .map(|_| Gf(rng.gen_range(0..q) as u16))
                    .collect();
                let word = urs.encode_systematic(&data)?;
                let inj = fault.kind.inject(urs, &mut rng);
                t.record(&dec, &add(&word, &inj.errors), &inj)?;
            }
            Ok(t)
        })
        .collect();
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t?);
    }
    report(urs, policy, fault, shards, false, total)
}

/// Largest pattern count the exhaustive mode accepts.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 26;

/// Every pattern of the fault model, injected into the zero codeword.
/// Decoders are linear, so the codeword does not affect the outcome.
pub fn run_exhaustive(
    urs: &UrsCode,
    policy: &DecodePolicy,
    fault: &FaultModel,
) -> Result<SimReport> {
    fault.kind.validate(urs)?;
    match fault.kind.pattern_count(urs) {
        Some(c) if c <= EXHAUSTIVE_LIMIT => {}
        other => {
            return Err(Error::SizeGuard(format!(
                "{} patterns exceed the exhaustive limit 2^26",
                other.map_or("more than 2^64".to_string(), |c| c.to_string())
            )))
        }
    }
    let dec = CascadeDecoder::new(urs, policy)?;
    let zero = vec![Gf::ZERO; urs.big_n()];
    let mut tally = Tally::default();
    let mut err = None;
    fault.kind.enumerate(urs, |inj| {
        if err.is_none() {
            if let Err(e) = tally.record(&dec, &add(&zero, &inj.errors), inj) {
                err = Some(e);
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    report(urs, policy, fault, 1, true, tally)
}
