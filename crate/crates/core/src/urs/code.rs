//! URS code construction and the full unraveling.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::map::{eligible_labels, enumerate_fibers, subspace_poly, CollapsingMap, MapKind};
use super::view::{row_dimension, Unraveling};
use crate::error::{check_len, config, Error, Result};
use crate::gf::{Field, FieldSpec, Gf, Matrix, Poly};
use crate::grs::{GrsCode, Syndrome};

/// How column labels α_i are chosen.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelChoice {
    /// The n smallest eligible labels.
    #[default]
    Ascending,
    Explicit(Vec<Gf>),
}

/// A URS(q; N, K) code: n columns of ℓ symbols, N = ℓn, K = ℓk + a.
///
/// Block layout is column-major: position i·ℓ + j holds the symbol with
/// label β_ij, the j-th smallest root of G - α_i.
#[derive(Clone, Debug)]
pub struct UrsCode {
    field: Field,
    map: CollapsingMap,
    n: usize,
    k: usize,
    a: usize,
    column_labels: Vec<Gf>,
    fibers: Vec<Vec<Gf>>,
    big: GrsCode,
    full: Arc<Unraveling>,
}

impl PartialEq for UrsCode {
    fn eq(&self, other: &UrsCode) -> bool {
        self.field == other.field
            && self.map == other.map
            && (self.n, self.k, self.a) == (other.n, other.k, other.a)
            && self.column_labels == other.column_labels
    }
}

pub fn construct_urs(
    field: &Field,
    map: CollapsingMap,
    n: usize,
    k: usize,
    a: usize,
    labels: LabelChoice,
) -> Result<UrsCode> {
    let ell = map.ell();
    if ell == 0 {
        return config("G must have positive degree");
    }
    if a >= ell {
        return config(format!("remainder a={a} must be below ℓ={ell}"));
    }
    if k == 0 || k >= n {
        return config(format!("need 0 < k < n (k={k}, n={n})"));
    }
    if a > 0 && k + 1 >= n {
        return config(format!("rows of dimension k+1={} need n > k+1", k + 1));
    }
    let fibers_all = enumerate_fibers(&map, field);
    let column_labels = match labels {
        LabelChoice::Ascending => {
            let el = eligible_labels(&map, field);
            if el.len() < n {
                return config(format!(
                    "only {} labels have {ell} distinct preimages; n={n} requested",
                    el.len()
                ));
            }
            el[..n].to_vec()
        }
        LabelChoice::Explicit(v) => {
            check_len(n, v.len())?;
            for w in v
                .iter()
                .enumerate()
                .flat_map(|(i, x)| v[i + 1..].iter().map(move |y| (x, y)))
            {
                if w.0 == w.1 {
                    return config(format!("column label {} repeated", w.0));
                }
            }
            for &al in &v {
                if fibers_all.get(&al).map_or(0, |f| f.len()) != ell {
                    return config(format!("G - {al} does not split into {ell} distinct roots"));
                }
            }
            v
        }
    };
    let fibers: Vec<Vec<Gf>> = column_labels
        .iter()
        .map(|al| fibers_all[al].clone())
        .collect();
    let big_labels: Vec<Gf> = fibers.iter().flatten().copied().collect();
    let big = GrsCode::new(field, ell * n, ell * k + a, big_labels, None, None)?;
    let full = Unraveling::new(&big, map.poly().clone(), ell)?;
    debug_assert_eq!(full.group_labels(), &column_labels[..]);
    Ok(UrsCode {
        field: field.clone(),
        map,
        n,
        k,
        a,
        column_labels,
        fibers,
        big,
        full: Arc::new(full),
    })
}

impl UrsCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn map(&self) -> &CollapsingMap {
        &self.map
    }

    pub fn ell(&self) -> usize {
        self.map.ell()
    }

    /// Number of device columns n.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> usize {
        self.a
    }

    /// N = ℓn.
    pub fn big_n(&self) -> usize {
        self.big.n()
    }

    /// K = ℓk + a.
    pub fn big_k(&self) -> usize {
        self.big.k()
    }

    pub fn redundancy(&self) -> usize {
        self.big.redundancy()
    }

    pub fn column_labels(&self) -> &[Gf] {
        &self.column_labels
    }

    pub fn fibers(&self) -> &[Vec<Gf>] {
        &self.fibers
    }

    pub fn big_code(&self) -> &GrsCode {
        &self.big
    }

    pub fn row_codes(&self) -> &[GrsCode] {
        self.full.row_codes()
    }

    /// k_h for each row.
    pub fn row_dimensions(&self) -> Vec<usize> {
        (0..self.ell())
            .map(|h| row_dimension(self.k, self.a, self.ell(), h))
            .collect()
    }

    pub fn mix(&self, i: usize) -> &Matrix {
        self.full.mix(i)
    }

    pub fn mix_inverse(&self, i: usize) -> &Matrix {
        self.full.mix_inverse(i)
    }

    /// The full ℓ-row unraveling.
    pub fn full_view(&self) -> &Unraveling {
        &self.full
    }

    /// Column containing big position `p`.
    pub fn column_of(&self, p: usize) -> usize {
        p / self.ell()
    }

    pub fn column_positions(&self, i: usize) -> std::ops::Range<usize> {
        i * self.ell()..(i + 1) * self.ell()
    }

    pub fn unravel(&self, block: &[Gf]) -> Result<Vec<Vec<Gf>>> {
        self.full.unravel(block)
    }

    pub fn reravel(&self, rows: &[Vec<Gf>]) -> Result<Vec<Gf>> {
        self.full.reravel(rows)
    }

    pub fn syndrome(&self, block: &[Gf]) -> Result<Syndrome> {
        self.big.syndrome(block)
    }

    /// Systematic encoding by the big code: data in positions 0..K.
    pub fn encode_systematic(&self, data: &[Gf]) -> Result<Vec<Gf>> {
        self.big.encode_systematic(data)
    }

    /// Encode each row systematically and reravel. Row h takes the next k_h
    /// data symbols, rows in order.
    pub fn encode_recursive(&self, data: &[Gf]) -> Result<Vec<Gf>> {
        check_len(self.big_k(), data.len())?;
        let mut rest = data;
        let mut rows = Vec::with_capacity(self.ell());
        for c in self.row_codes() {
            let (seg, tail) = rest.split_at(c.k());
            rows.push(c.encode_systematic(seg)?);
            rest = tail;
        }
        self.reravel(&rows)
    }

    /// Inverse of [`encode_recursive`](Self::encode_recursive) on codewords.
    pub fn extract_recursive(&self, word: &[Gf]) -> Result<Vec<Gf>> {
        let rows = self.unravel(word)?;
        let mut out = Vec::with_capacity(self.big_k());
        for (c, r) in self.row_codes().iter().zip(&rows) {
            out.extend(c.extract_data(r)?);
        }
        Ok(out)
    }

    /// M with big syndrome = M · (row syndromes stacked by d = h + ℓm).
    pub fn syndrome_translation_matrix(&self) -> &Matrix {
        self.full.translation_matrix()
    }

    /// View along an arbitrary grouping polynomial H.
    pub fn view_by(&self, h: Poly) -> Result<Unraveling> {
        Unraveling::new(&self.big, h, self.ell())
    }

    /// |V|-row unraveling by G_V for V = span(sub_basis) ⊆ W.
    pub fn unravel_along(&self, sub_basis: &[Gf]) -> Result<Unraveling> {
        if !matches!(self.map.kind(), MapKind::Subspace { .. }) {
            return config("unravel_along needs a code built from a subspace polynomial");
        }
        for &b in sub_basis {
            if !self.map.eval(b, &self.field).is_zero() {
                return config(format!("{b} is not in the subspace W"));
            }
        }
        if sub_basis.is_empty() {
            return self.view_by(Poly::x());
        }
        let gv = subspace_poly(sub_basis, &self.field)?;
        self.view_by(gv.poly().clone())
    }

    /// The canonical view with `ell_eff` rows.
    ///
    /// Subspace maps use G_V with V spanned by the first log2(ell_eff) basis
    /// vectors of W; power maps use x^ell_eff. `ell_eff` must divide ℓ.
    pub fn view(&self, ell_eff: usize) -> Result<Unraveling> {
        let ell = self.ell();
        if ell_eff == 0 || !ell.is_multiple_of(ell_eff) {
            return config(format!("view width {ell_eff} must divide ℓ={ell}"));
        }
        if ell_eff == ell {
            return Ok((*self.full).clone());
        }
        if ell_eff == 1 {
            return self.view_by(Poly::x());
        }
        match self.map.kind() {
            MapKind::Subspace { basis } => {
                if !ell_eff.is_power_of_two() {
                    return config(format!("view width {ell_eff} must be a power of two"));
                }
                let dim = ell_eff.trailing_zeros() as usize;
                self.unravel_along(&basis[..dim])
            }
            MapKind::Power { .. } => self.view_by(Poly::monomial(Gf::ONE, ell_eff)),
            MapKind::Custom { .. } => config("custom maps only support views of width 1 and ℓ"),
        }
    }

    /// Shared handle to the full view.
    pub fn full_view_arc(&self) -> Arc<Unraveling> {
        self.full.clone()
    }
}

#[derive(Serialize, Deserialize)]
struct UrsRepr {
    field: FieldSpec,
    map: MapKind,
    n: usize,
    k: usize,
    a: usize,
    column_labels: Vec<Gf>,
    #[serde(default)]
    shape: Option<Shape>,
}

/// Derived quantities, written for readers and checked on load.
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct Shape {
    ell: usize,
    big_n: usize,
    big_k: usize,
    row_dimensions: Vec<usize>,
    fibers: Vec<Vec<Gf>>,
}

impl UrsCode {
    fn shape(&self) -> Shape {
        Shape {
            ell: self.ell(),
            big_n: self.big_n(),
            big_k: self.big_k(),
            row_dimensions: self.row_dimensions(),
            fibers: self.fibers.clone(),
        }
    }
}

impl Serialize for UrsCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        UrsRepr {
            field: self.field.spec(),
            map: self.map.kind().clone(),
            n: self.n,
            k: self.k,
            a: self.a,
            column_labels: self.column_labels.clone(),
            shape: Some(self.shape()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UrsCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<UrsCode, D::Error> {
        let r = UrsRepr::deserialize(d)?;
        let build = || -> Result<UrsCode> {
            let f = Field::new(r.field);
            let map = CollapsingMap::from_kind(r.map, &f)?;
            let code = construct_urs(
                &f,
                map,
                r.n,
                r.k,
                r.a,
                LabelChoice::Explicit(r.column_labels),
            )?;
            if let Some(shape) = r.shape {
                if shape != code.shape() {
                    return Err(Error::Parse(
                        "stored shape disagrees with the rebuilt code".into(),
                    ));
                }
            }
            Ok(code)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::urs::power_map;

    fn toy() -> UrsCode {
        let f = Field::gf16();
        let g = subspace_poly(&[Gf(1)], &f).unwrap();
        construct_urs(&f, g, 4, 2, 1, LabelChoice::Ascending).unwrap()
    }

    #[test]
    fn toy_shape() {
        let c = toy();
        assert_eq!((c.big_n(), c.big_k()), (8, 5));
        assert_eq!(c.row_dimensions(), vec![2, 3]);
        for (al, fib) in c.column_labels().iter().zip(c.fibers()) {
            for &b in fib {
                assert_eq!(c.map().eval(b, c.field()), *al);
            }
        }
    }

    #[test]
    fn recursive_encoding_roundtrip() {
        let c = toy();
        let data: Vec<Gf> = (1..=5).map(Gf).collect();
        let w = c.encode_recursive(&data).unwrap();
        assert!(c.big_code().is_codeword(&w).unwrap());
        assert_eq!(c.extract_recursive(&w).unwrap(), data);
        let rows = c.unravel(&w).unwrap();
        assert_eq!(&rows[0][..2], &data[..2]);
        assert_eq!(&rows[1][..3], &data[2..]);
    }

    #[test]
    fn rejects_bad_parameters() {
        let f = Field::gf16();
        let g = || subspace_poly(&[Gf(1)], &f).unwrap();
        assert!(construct_urs(&f, g(), 9, 2, 0, LabelChoice::Ascending).is_err());
        assert!(construct_urs(&f, g(), 4, 2, 2, LabelChoice::Ascending).is_err());
        assert!(construct_urs(&f, g(), 4, 4, 0, LabelChoice::Ascending).is_err());
        assert!(construct_urs(&f, g(), 2, 1, 1, LabelChoice::Ascending).is_err());
        let p = power_map(3, &f).unwrap();
        assert!(construct_urs(&f, p, 2, 1, 0, LabelChoice::Explicit(vec![Gf(0), Gf(1)])).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let c = toy();
        let j = serde_json::to_string(&c).unwrap();
        assert!(j.contains("\"kind\":\"subspace\""));
        let back: UrsCode = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c);
    }
}
