//! Collapsing maps G and their fibers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{config, Result};
use crate::gf::{Field, Gf, Poly};

/// How G was specified. This is what gets serialized; the polynomial is
/// rebuilt from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapKind {
    /// x^ℓ with ℓ | q-1.
    Power { ell: usize },
    /// G_W = ∏_{w∈W}(x - w) for W spanned by `basis` over GF(2).
    Subspace { basis: Vec<Gf> },
    /// Arbitrary G, low-order coefficient first.
    Custom { coeffs: Vec<Gf> },
}

/// A polynomial G of degree ℓ whose fibers G⁻¹(α) become URS columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsingMap {
    kind: MapKind,
    poly: Poly,
}

impl CollapsingMap {
    pub fn from_kind(kind: MapKind, f: &Field) -> Result<CollapsingMap> {
        match kind {
            MapKind::Power { ell } => power_map(ell, f),
            MapKind::Subspace { basis } => subspace_poly(&basis, f),
            MapKind::Custom { coeffs } => custom_map(coeffs, f),
        }
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// ℓ = deg G.
    pub fn ell(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn eval(&self, x: Gf, f: &Field) -> Gf {
        self.poly.eval(x, f)
    }

    /// The subspace W for subspace maps.
    pub fn subspace(&self) -> Option<Vec<Gf>> {
        match &self.kind {
            MapKind::Subspace { basis } => Some(span(basis)),
            _ => None,
        }
    }
}

/// All GF(2)-combinations of `basis`; bit i of the index selects basis[i].
pub fn span(basis: &[Gf]) -> Vec<Gf> {
    (0..1usize << basis.len())
        .map(|mask| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Gf::ZERO, |acc, (_, &b)| acc + b)
        })
        .collect()
}

/// Subspace polynomial G_W = ∏_{w∈W}(x - w), a linearized polynomial of degree 2^|basis|.
pub fn subspace_poly(basis: &[Gf], f: &Field) -> Result<CollapsingMap> {
    for &b in basis {
        if !f.contains(b) {
            return config(format!("basis element {b} is not in GF({})", f.order()));
        }
    }
    let mut w = span(basis);
    w.sort_unstable();
    w.dedup();
    if w.len() != 1 << basis.len() {
        return config("subspace basis is not GF(2)-linearly independent");
    }
    Ok(CollapsingMap {
        kind: MapKind::Subspace {
            basis: basis.to_vec(),
        },
        poly: Poly::from_roots(&w, f),
    })
}

/// G = x^ℓ. Requires ℓ | q-1 so every nonzero image has ℓ preimages.
pub fn power_map(ell: usize, f: &Field) -> Result<CollapsingMap> {
    let q1 = f.order() - 1;
    if ell == 0 || !q1.is_multiple_of(ell) {
        return config(format!("ℓ must divide q−1 (ℓ = {ell}, q−1 = {q1})"));
    }
    Ok(CollapsingMap {
        kind: MapKind::Power { ell },
        poly: Poly::monomial(Gf::ONE, ell),
    })
}

/// Any nonconstant G. Which α are usable is decided by [`enumerate_fibers`].
pub fn custom_map(coeffs: Vec<Gf>, f: &Field) -> Result<CollapsingMap> {
    if coeffs.iter().any(|&c| !f.contains(c)) {
        return config("coefficient outside the field");
    }
    let poly = Poly::from_coeffs(coeffs);
    if poly.degree().unwrap_or(0) == 0 {
        return config("G must have degree at least 1");
    }
    Ok(CollapsingMap {
        kind: MapKind::Custom {
            coeffs: poly.coeffs().to_vec(),
        },
        poly,
    })
}

/// For every α in the image of G, the sorted set of roots of G - α.
pub fn enumerate_fibers(g: &CollapsingMap, f: &Field) -> BTreeMap<Gf, Vec<Gf>> {
    let mut out: BTreeMap<Gf, Vec<Gf>> = BTreeMap::new();
    for b in f.elements() {
        out.entry(g.eval(b, f)).or_default().push(b);
    }
    out
}

/// Labels α whose fiber has exactly ℓ distinct elements, ascending.
pub fn eligible_labels(g: &CollapsingMap, f: &Field) -> Vec<Gf> {
    enumerate_fibers(g, f)
        .into_iter()
        .filter(|(_, fib)| fib.len() == g.ell())
        .map(|(a, _)| a)
        .collect()
}
