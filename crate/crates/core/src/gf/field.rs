//! Binary extension fields GF(2^b), 1 <= b <= 16.

use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A field element, stored as the bitmask of its GF(2)-polynomial residue.
///
/// Addition is XOR and does not need the field; multiplication goes through
/// [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(pub u16);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }
}

impl Add for Gf {
    type Output = Gf;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

// characteristic 2: subtraction is addition
impl Sub for Gf {
    type Output = Gf;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for Gf {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn sub_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Gf {
    fn sum<I: Iterator<Item = Gf>>(iter: I) -> Gf {
        iter.fold(Gf::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:02x}", self.0)
    }
}

impl fmt::LowerHex for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl Serialize for Gf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Gf, D::Error> {
        let s = String::deserialize(d)?;
        parse_hex_u32(&s)
            .and_then(|v| {
                u16::try_from(v).map_err(|_| Error::Parse(format!("{s} exceeds 16 bits")))
            })
            .map(Gf)
            .map_err(serde::de::Error::custom)
    }
}

/// Parses `0x1D`, `1d` and similar.
pub fn parse_hex_u32(s: &str) -> Result<u32> {
    let t = s.trim();
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("bad hex value {s:?}: {e}")))
}

/// Degree of a nonzero GF(2) polynomial given as a bitmask.
fn bit_degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

/// Remainder of GF(2) polynomial division, both operands as bitmasks.
fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = bit_degree(b);
    while a != 0 && bit_degree(a) >= db {
        a ^= b << (bit_degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(poly: u32) -> bool {
    if poly < 2 {
        return false;
    }
    let deg = bit_degree(poly);
    if deg == 1 {
        return true;
    }
    (2u32..(1u32 << (deg / 2 + 1))).all(|d| gf2_rem(poly, d) != 0)
}

/// Field parameters: symbol width and reduction polynomial.
///
/// Serializes as `{"bits": 8, "poly": "0x11D"}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    bits: u8,
    poly: u32,
}

impl FieldSpec {
    /// Validated constructor: `poly` must have degree exactly `bits` and be
    /// irreducible over GF(2).
    pub fn new(bits: u8, poly: u32) -> Result<Self> {
        if !(1..=16).contains(&bits) {
            return Err(Error::Config(format!("symbol width {bits} outside 1..=16")));
        }
        if poly == 0 || bit_degree(poly) != u32::from(bits) {
            return Err(Error::Config(format!(
                "reduction polynomial {poly:#x} does not have degree {bits}"
            )));
        }
        if !is_irreducible(poly) {
            return Err(Error::Config(format!(
                "reduction polynomial {poly:#x} is reducible over GF(2)"
            )));
        }
        Ok(FieldSpec { bits, poly })
    }

    /// Conventional modulus for the width: 0x13 for GF(16), 0x11D for GF(256),
    /// 0x1002D for GF(2^16); otherwise the numerically smallest irreducible.
    pub fn with_default_poly(bits: u8) -> Result<Self> {
        let poly = match bits {
            4 => 0x13,
            8 => 0x11D,
            16 => 0x1002D,
            1..=16 => {
                let lo = 1u32 << bits;
                (lo..lo << 1)
                    .find(|&p| is_irreducible(p))
                    .expect("irreducible exists")
            }
            _ => return Err(Error::Config(format!("symbol width {bits} outside 1..=16"))),
        };
        FieldSpec::new(bits, poly)
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Field order q = 2^b.
    pub fn order(&self) -> usize {
        1usize << self.bits
    }
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    bits: u8,
    poly: String,
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecRepr {
            bits: self.bits,
            poly: format!("0x{:X}", self.poly),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<FieldSpec, D::Error> {
        let r = FieldSpecRepr::deserialize(d)?;
        parse_hex_u32(&r.poly)
            .and_then(|p| FieldSpec::new(r.bits, p))
            .map_err(serde::de::Error::custom)
    }
}

struct Tables {
    spec: FieldSpec,
    // exp has length 2(q-1) so exp[log a + log b] needs no reduction
    exp: Vec<u16>,
    log: Vec<u16>,
}

/// Arithmetic context for one field. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(GF(2^{}), poly={:#x})",
            self.t.spec.bits, self.t.spec.poly
        )
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.t.spec == other.t.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let q = spec.order();
        let order = q - 1;
        let generator = (1..q as u32)
            .map(|g| Gf(g as u16))
            .find(|&g| multiplicative_order(g, spec) == order)
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u16; 2 * order.max(1)];
        let mut log = vec![0u16; q];
        let mut x = Gf::ONE;
        for i in 0..order {
            exp[i] = x.0;
            exp[i + order] = x.0;
            log[x.0 as usize] = i as u16;
            x = mul_shift_reduce(x, generator, spec);
        }
        Field {
            t: Arc::new(Tables { spec, exp, log }),
        }
    }

    /// Field with the default modulus for `bits`.
    pub fn with_bits(bits: u8) -> Result<Field> {
        FieldSpec::with_default_poly(bits).map(Field::new)
    }

    pub fn gf16() -> Field {
        Field::with_bits(4).expect("valid")
    }

    pub fn gf256() -> Field {
        Field::with_bits(8).expect("valid")
    }

    pub fn spec(&self) -> FieldSpec {
        self.t.spec
    }

    pub fn bits(&self) -> u8 {
        self.t.spec.bits
    }

    /// Number of elements q.
    pub fn order(&self) -> usize {
        self.t.spec.order()
    }

    /// Element from an integer, rejecting values >= q.
    pub fn elem(&self, v: u32) -> Result<Gf> {
        if (v as usize) < self.order() {
            Ok(Gf(v as u16))
        } else {
            Err(Error::Domain(format!(
                "{v:#x} is not an element of GF({})",
                self.order()
            )))
        }
    }

    pub fn contains(&self, a: Gf) -> bool {
        (a.0 as usize) < self.order()
    }

    /// All q elements in ascending integer order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.order()).map(|v| Gf(v as u16))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let t = &*self.t;
        Gf(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.0 == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let t = &*self.t;
        let order = self.order() - 1;
        let l = t.log[a.0 as usize] as usize;
        Ok(Gf(t.exp[(order - l) % order]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with 0^0 = 1.
    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf::ONE;
        }
        if a.0 == 0 {
            return Gf::ZERO;
        }
        let t = &*self.t;
        let order = (self.order() - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
        Gf(t.exp[l as usize])
    }

    /// Table-free reference product (carry-less multiply, then reduce).
    pub fn mul_shift_reduce(&self, a: Gf, b: Gf) -> Gf {
        mul_shift_reduce(a, b, self.t.spec)
    }
}

/// Carry-less multiply followed by shift-and-reduce modulo the field polynomial.
pub fn mul_shift_reduce(a: Gf, b: Gf, spec: FieldSpec) -> Gf {
    let bits = u32::from(spec.bits);
    let mut acc = 0u32;
    let mut aa = u32::from(a.0);
    let mut bb = u32::from(b.0);
    while bb != 0 {
        if bb & 1 == 1 {
            acc ^= aa;
        }
        bb >>= 1;
        aa <<= 1;
        if aa >> bits & 1 == 1 {
            aa ^= spec.poly;
        }
    }
    Gf(acc as u16)
}

fn multiplicative_order(g: Gf, spec: FieldSpec) -> usize {
    let mut x = g;
    let mut n = 1;
    while x != Gf::ONE {
        x = mul_shift_reduce(x, g, spec);
        n += 1;
        if n > spec.order() {
            return 0;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reducible_and_wrong_degree() {
        assert!(FieldSpec::new(4, 0x13).is_ok());
        // x^4 + 1 = (x+1)^4
        assert!(FieldSpec::new(4, 0x11).is_err());
        assert!(FieldSpec::new(8, 0x13).is_err());
        assert!(FieldSpec::new(0, 0x3).is_err());
        assert!(FieldSpec::new(17, 0x2002D).is_err());
    }

    #[test]
    fn defaults_are_irreducible_for_every_width() {
        for b in 1..=16 {
            let s = FieldSpec::with_default_poly(b).unwrap();
            assert_eq!(s.bits(), b);
        }
        assert_eq!(FieldSpec::with_default_poly(8).unwrap().poly(), 0x11D);
    }

    #[test]
    fn tables_match_shift_reduce_in_gf16() {
        let f = Field::gf16();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_shift_reduce(a, b));
            }
        }
        let x = f.mul(Gf(0x5), Gf(0x7));
        assert_eq!(x, mul_shift_reduce(Gf(5), Gf(7), f.spec()));
    }

    #[test]
    fn non_primitive_modulus_still_builds_tables() {
        // AES modulus 0x11B is irreducible but x is not a generator
        let f = Field::new(FieldSpec::new(8, 0x11B).unwrap());
        for a in (1..256).map(|v| Gf(v as u16)) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
            assert_eq!(f.mul(a, Gf(0x53)), f.mul_shift_reduce(a, Gf(0x53)));
        }
    }

    #[test]
    fn inverse_identities() {
        let f = Field::gf16();
        assert_eq!(f.inv(Gf::ONE).unwrap(), Gf::ONE);
        assert!(f.inv(Gf::ZERO).is_err());
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
            assert_eq!(f.pow(a, 14), f.inv(a).unwrap());
            assert_eq!(f.pow(a, 15), Gf::ONE);
        }
        assert_eq!(f.pow(Gf::ZERO, 0), Gf::ONE);
    }

    #[test]
    fn gf2_and_gf65536() {
        let f = Field::with_bits(1).unwrap();
        assert_eq!(f.mul(Gf::ONE, Gf::ONE), Gf::ONE);
        assert_eq!(f.inv(Gf::ONE).unwrap(), Gf::ONE);
        let big = Field::with_bits(16).unwrap();
        let a = Gf(0xBEEF);
        assert_eq!(big.mul(a, big.inv(a).unwrap()), Gf::ONE);
        assert_eq!(big.mul(a, Gf(0x1234)), big.mul_shift_reduce(a, Gf(0x1234)));
    }

    #[test]
    fn spec_json_shape() {
        let s = FieldSpec::new(8, 0x11D).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"bits":8,"poly":"0x11D"}"#);
        let back: FieldSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"bits":4,"poly":"0x11"}"#).is_err());
        assert_eq!(serde_json::to_string(&Gf(0x1d)).unwrap(), "\"0x1d\"");
    }
}
