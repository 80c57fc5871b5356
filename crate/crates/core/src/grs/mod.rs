//! Generalized Reed-Solomon codes: encoding, syndromes, key equation, and
//! errors-and-erasures decoding.

mod code;
mod decode;
mod keyeq;

pub use code::{GrsCode, Syndrome};
pub use decode::{
    decode_bounded, decode_bounded_with, decode_syndrome, erasure_locator, error_magnitudes,
    find_roots, forney_magnitudes, max_errors, AcceptFn, DecodeOptions, DecodeOutcome,
    DecodeStatus, DecoderId, ErasureSet, ErrorVector, Failure,
};
pub use keyeq::{berlekamp_massey, solve_key_equation, KeyEquation};
