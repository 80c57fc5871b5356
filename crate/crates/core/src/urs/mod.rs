//! Unraveling Reed-Solomon codes.

mod code;
mod map;
mod view;

pub use code::{construct_urs, LabelChoice, UrsCode};
pub use map::{
    custom_map, eligible_labels, enumerate_fibers, power_map, span, subspace_poly, CollapsingMap,
    MapKind,
};
pub use view::{row_dimension, Unraveling};
