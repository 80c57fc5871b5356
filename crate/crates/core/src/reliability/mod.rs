//! Reliability analytics, brute-force oracles and fault-injection campaigns.

mod analytics;
mod campaign;
mod dense;
mod oracle;

pub use analytics::{
    bb_failure_rate, bb_miscorrection_bound, binomial, collaborative_radius, failure_weight,
    pow_int, power_radius, Scalar, ToF64,
};
pub use campaign::{
    run_campaign, run_campaign_sharded, run_exhaustive, shard_seed, wilson, Counts, FaultKind,
    FaultModel, Injection, RateCi, Rates, SimReport, CSV_HEADER, DEFAULT_SHARDS, EXHAUSTIVE_LIMIT,
    WILSON_Z,
};
pub use dense::{
    dense_miscorrection_rate, ChipkillTerm, DenseDecoders, DenseRate, DenseShape, WithinBound,
};
pub use oracle::{nearest_codeword_oracle, OracleDecision, ORACLE_LIMIT};
