//! URS decoders: direct, independent, collaborative, fast chipkill,
//! device-plus-one, column erasures, and a cascade over them.

mod cascade;
mod chipkill;
mod collaborative;
mod direct;
mod erasure;
mod independent;
mod stereotyped;

pub use cascade::{decode_cascade, CascadeDecoder, DecodePolicy, Stage};
pub use chipkill::{chipkill_from_rows, decode_fast_chipkill};
pub use collaborative::{collaborative_from_rows, collaborative_limit, decode_collaborative};
pub use direct::{decode_direct, direct_from_syndrome};
pub use erasure::{column_erasure_locator, column_erasures, erase_column_syndrome, ForneySyndrome};
pub use independent::{decode_independent, independent_budget, independent_from_rows};
pub use stereotyped::{decode_stereotyped_plus_one, stereotyped_from_syndrome};
