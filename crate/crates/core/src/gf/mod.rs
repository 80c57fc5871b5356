//! Finite-field and polynomial arithmetic.

mod field;
mod linalg;
mod poly;

pub use field::parse_hex_u32;
pub use field::{is_irreducible, mul_shift_reduce, Field, FieldSpec, Gf};
pub use linalg::{Matrix, Solution};
pub use poly::Poly;
