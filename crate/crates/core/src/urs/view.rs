//! Unraveling a GRS code along a polynomial H that groups its labels.
//!
//! If the labels of a length-N code with unit multipliers split into groups
//! of size d = deg H on which H is constant, then the per-group Vandermonde
//! transform maps the code onto d interleaved GRS row codes with labels
//! H(β). The syndromes of the rows are fixed linear combinations of the big
//! syndrome: w_{h,m} is the dot product of σ with the coefficients of
//! x^h·H(x)^m.

use std::collections::BTreeMap;

use crate::error::{check_len, config, Error, Result};
use crate::gf::{Field, Gf, Matrix, Poly};
use crate::grs::{ErrorVector, GrsCode, Syndrome};

#[derive(Clone, Debug)]
pub struct Unraveling {
    field: Field,
    h: Poly,
    width: usize,
    device_width: usize,
    // big-code positions of each group, ascending
    groups: Vec<Vec<usize>>,
    group_labels: Vec<Gf>,
    // big position -> (group, index within group)
    slot: Vec<(usize, usize)>,
    mix: Vec<Matrix>,
    mix_inv: Vec<Matrix>,
    rows: Vec<GrsCode>,
    // (h, m) for each big syndrome index d = h + width·m
    moment: Vec<(usize, usize)>,
    // w = to_rows·σ; lower unitriangular
    to_rows: Matrix,
    // σ = to_big·w
    to_big: Matrix,
}

impl Unraveling {
    /// Groups `big`'s positions by H(β). Every group must have exactly deg H
    /// members, and all members of a group must lie in the same device
    /// column of `device_width` consecutive positions.
    pub fn new(big: &GrsCode, h: Poly, device_width: usize) -> Result<Unraveling> {
        let f = big.field().clone();
        let width = match h.degree() {
            Some(d) if d >= 1 => d,
            _ => return config("unraveling polynomial must have degree at least 1"),
        };
        if big.multipliers().iter().any(|&m| m != Gf::ONE) {
            return config("unraveling needs unit column multipliers");
        }
        let n_big = big.n();
        if !n_big.is_multiple_of(width) {
            return config(format!(
                "length {n_big} is not a multiple of deg H = {width}"
            ));
        }
        let mut by_label: BTreeMap<Gf, Vec<usize>> = BTreeMap::new();
        for (p, &b) in big.labels().iter().enumerate() {
            by_label.entry(h.eval(b, &f)).or_default().push(p);
        }
        let mut groups: Vec<(Gf, Vec<usize>)> = by_label.into_iter().collect();
        for (a, g) in &groups {
            if g.len() != width {
                return config(format!(
                    "H takes value {a} on {} labels, expected {width}",
                    g.len()
                ));
            }
            if device_width > 0 && g.iter().any(|p| p / device_width != g[0] / device_width) {
                return config("a row column would straddle two device columns");
            }
        }
        groups.sort_by_key(|(_, g)| g[0]);
        let (group_labels, groups): (Vec<Gf>, Vec<Vec<usize>>) = groups.into_iter().unzip();

        let mut slot = vec![(0, 0); n_big];
        for (gi, g) in groups.iter().enumerate() {
            for (j, &p) in g.iter().enumerate() {
                slot[p] = (gi, j);
            }
        }
        let mut mix = Vec::with_capacity(groups.len());
        let mut mix_inv = Vec::with_capacity(groups.len());
        for g in &groups {
            let betas: Vec<Gf> = g.iter().map(|&p| big.labels()[p]).collect();
            let m = Matrix::vandermonde(width, &betas, &f);
            mix_inv.push(m.inverse(&f)?);
            mix.push(m);
        }

        let n_row = groups.len();
        let (k_row, a_row) = (big.k() / width, big.k() % width);
        let mut rows = Vec::with_capacity(width);
        for hh in 0..width {
            let k_h = row_dimension(k_row, a_row, width, hh);
            rows.push(
                GrsCode::new(&f, n_row, k_h, group_labels.clone(), None, None).map_err(|e| {
                    Error::Config(format!("row {hh} code ({n_row},{k_h}) is invalid: {e}"))
                })?,
            );
        }

        let r = big.redundancy();
        let mut moment = Vec::with_capacity(r);
        let mut to_rows = Matrix::zeros(r, r);
        let mut h_pow = Poly::one();
        for d in 0..r {
            let (hh, m) = (d % width, d / width);
            if hh == 0 && m > 0 {
                h_pow = h_pow.mul(&h, &f);
            }
            let p = h_pow.shift(hh);
            debug_assert_eq!(p.degree(), Some(d));
            for (c, &v) in p.coeffs().iter().enumerate() {
                to_rows.set(d, c, v);
            }
            moment.push((hh, m));
        }
        let to_big = to_rows.inverse(&f)?;
        Ok(Unraveling {
            field: f,
            h,
            width,
            device_width,
            groups,
            group_labels,
            slot,
            mix,
            mix_inv,
            rows,
            moment,
            to_rows,
            to_big,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The grouping polynomial H.
    pub fn poly(&self) -> &Poly {
        &self.h
    }

    /// Number of rows, deg H.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn device_width(&self) -> usize {
        self.device_width
    }

    /// Number of row columns.
    pub fn columns(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group_labels(&self) -> &[Gf] {
        &self.group_labels
    }

    /// Row column containing big-code position `p`.
    pub fn group_of(&self, p: usize) -> usize {
        self.slot[p].0
    }

    /// Device column (in units of `device_width`) holding row column `g`.
    pub fn device_of(&self, g: usize) -> usize {
        self.groups[g][0]
            .checked_div(self.device_width)
            .unwrap_or(g)
    }

    pub fn mix(&self, g: usize) -> &Matrix {
        &self.mix[g]
    }

    pub fn mix_inverse(&self, g: usize) -> &Matrix {
        &self.mix_inv[g]
    }

    pub fn row_codes(&self) -> &[GrsCode] {
        &self.rows
    }

    pub fn row_dimensions(&self) -> Vec<usize> {
        self.rows.iter().map(|c| c.k()).collect()
    }

    pub fn big_len(&self) -> usize {
        self.slot.len()
    }

    /// U_{g,h} = Σ_j β_{gj}^h·C_{gj}: row h, column g.
    pub fn unravel(&self, block: &[Gf]) -> Result<Vec<Vec<Gf>>> {
        check_len(self.big_len(), block.len())?;
        let mut rows = vec![vec![Gf::ZERO; self.columns()]; self.width];
        for (g, pos) in self.groups.iter().enumerate() {
            let col: Vec<Gf> = pos.iter().map(|&p| block[p]).collect();
            for (hh, v) in self.mix[g]
                .mul_vec(&col, &self.field)
                .into_iter()
                .enumerate()
            {
                rows[hh][g] = v;
            }
        }
        Ok(rows)
    }

    /// Inverse of [`unravel`](Self::unravel).
    pub fn reravel(&self, rows: &[Vec<Gf>]) -> Result<Vec<Gf>> {
        check_len(self.width, rows.len())?;
        for r in rows {
            check_len(self.columns(), r.len())?;
        }
        let mut block = vec![Gf::ZERO; self.big_len()];
        for (g, pos) in self.groups.iter().enumerate() {
            let col: Vec<Gf> = rows.iter().map(|r| r[g]).collect();
            for (&p, v) in pos.iter().zip(self.mix_inv[g].mul_vec(&col, &self.field)) {
                block[p] = v;
            }
        }
        Ok(block)
    }

    /// Reravel sparse per-row corrections (row → column → magnitude) into a
    /// big-code error vector.
    pub fn reravel_errors(&self, per_row: &[BTreeMap<usize, Gf>]) -> ErrorVector {
        let mut cols: BTreeMap<usize, Vec<Gf>> = BTreeMap::new();
        for (hh, errs) in per_row.iter().enumerate() {
            for (&g, &v) in errs {
                cols.entry(g).or_insert_with(|| vec![Gf::ZERO; self.width])[hh] = v;
            }
        }
        let mut out = ErrorVector::new();
        for (g, col) in cols {
            for (&p, v) in self.groups[g]
                .iter()
                .zip(self.mix_inv[g].mul_vec(&col, &self.field))
            {
                if !v.is_zero() {
                    out.insert(p, v);
                }
            }
        }
        out
    }

    /// Row syndromes from the big syndrome, without touching the block.
    pub fn row_syndromes(&self, big: &Syndrome) -> Result<Vec<Syndrome>> {
        check_len(self.to_rows.rows(), big.len())?;
        let w = self.to_rows.mul_vec(&big.0, &self.field);
        let mut out: Vec<Syndrome> = self
            .rows
            .iter()
            .map(|c| Syndrome(Vec::with_capacity(c.redundancy())))
            .collect();
        for (d, v) in w.into_iter().enumerate() {
            let (hh, m) = self.moment[d];
            debug_assert_eq!(out[hh].0.len(), m);
            out[hh].0.push(v);
        }
        Ok(out)
    }

    /// Row syndromes computed by unraveling the block.
    pub fn row_syndromes_direct(&self, block: &[Gf]) -> Result<Vec<Syndrome>> {
        let rows = self.unravel(block)?;
        self.rows
            .iter()
            .zip(&rows)
            .map(|(c, r)| c.syndrome(r))
            .collect()
    }

    /// Big syndrome from stacked row syndromes.
    pub fn big_syndrome(&self, rows: &[Syndrome]) -> Result<Syndrome> {
        check_len(self.width, rows.len())?;
        let w: Vec<Gf> = self.moment.iter().map(|&(hh, m)| rows[hh].0[m]).collect();
        Ok(Syndrome(self.to_big.mul_vec(&w, &self.field)))
    }

    /// M with σ = M·w, where w lists row syndromes in order d = h + width·m.
    pub fn translation_matrix(&self) -> &Matrix {
        &self.to_big
    }

    /// M⁻¹: row d holds the coefficients of x^h·H(x)^m.
    pub fn row_syndrome_matrix(&self) -> &Matrix {
        &self.to_rows
    }

    /// (h, m) for big syndrome index d.
    pub fn moment_index(&self) -> &[(usize, usize)] {
        &self.moment
    }
}

/// k_h: the first width-a rows carry k symbols, the rest k+1.
pub fn row_dimension(k: usize, a: usize, width: usize, h: usize) -> usize {
    if h < width - a {
        k
    } else {
        k + 1
    }
}
