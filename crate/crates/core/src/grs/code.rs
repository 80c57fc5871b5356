//! Generalized Reed-Solomon codes as kernels of a Vandermonde-times-diagonal
//! syndrome matrix.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_len, config, Error, Result};
use crate::gf::{Field, FieldSpec, Gf, Matrix};

/// Syndrome values σ_0..σ_{n-k-1}. Always exactly n-k long.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome(pub Vec<Gf>);

impl Syndrome {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_poly(&self) -> crate::gf::Poly {
        crate::gf::Poly::from_coeffs(self.0.clone())
    }
}

/// A GRS(q; n, k) code with labels ⟨α_i⟩ and multipliers ⟨m_i⟩.
#[derive(Clone, Debug)]
pub struct GrsCode {
    field: Field,
    n: usize,
    k: usize,
    labels: Vec<Gf>,
    multipliers: Vec<Gf>,
    parity_positions: Vec<usize>,
    data_positions: Vec<usize>,
    // rows m = 0..n-k, entry i = m_i · α_i^m
    syndrome_matrix: Matrix,
    // inverse of the syndrome matrix restricted to parity columns
    parity_solver: Matrix,
}

impl PartialEq for GrsCode {
    fn eq(&self, other: &GrsCode) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.k == other.k
            && self.labels == other.labels
            && self.multipliers == other.multipliers
            && self.parity_positions == other.parity_positions
    }
}

impl GrsCode {
    /// Validated constructor.
    ///
    /// `multipliers` defaults to all ones and `parity_positions` to the last
    /// n-k symbols.
    pub fn new(
        field: &Field,
        n: usize,
        k: usize,
        labels: Vec<Gf>,
        multipliers: Option<Vec<Gf>>,
        parity_positions: Option<Vec<usize>>,
    ) -> Result<GrsCode> {
        if k >= n {
            return config(format!("dimension k={k} must be below length n={n}"));
        }
        if k == 0 {
            return config("dimension k must be positive");
        }
        if n > field.order() {
            return config(format!(
                "length n={n} exceeds field order {}",
                field.order()
            ));
        }
        check_len(n, labels.len())?;
        if let Some(bad) = labels.iter().find(|&&a| !field.contains(a)) {
            return Err(Error::Domain(format!("label {bad} outside the field")));
        }
        let distinct: BTreeSet<Gf> = labels.iter().copied().collect();
        if distinct.len() != n {
            return config("labels must be pairwise distinct");
        }
        let multipliers = multipliers.unwrap_or_else(|| vec![Gf::ONE; n]);
        check_len(n, multipliers.len())?;
        if multipliers
            .iter()
            .any(|m| m.is_zero() || !field.contains(*m))
        {
            return config("multipliers must be nonzero field elements");
        }
        let r = n - k;
        let parity_positions = match parity_positions {
            Some(mut p) => {
                p.sort_unstable();
                p.dedup();
                if p.len() != r || p.iter().any(|&i| i >= n) {
                    return config(format!("need {r} distinct parity positions below {n}"));
                }
                p
            }
            None => (k..n).collect(),
        };
        let data_positions: Vec<usize> = (0..n).filter(|i| !parity_positions.contains(i)).collect();
        let syndrome_matrix = Matrix::from_fn(r, n, |m, i| {
            field.mul(multipliers[i], field.pow(labels[i], m as u64))
        });
        let restricted = Matrix::from_fn(r, r, |m, j| syndrome_matrix.get(m, parity_positions[j]));
        let parity_solver = restricted
            .inverse(field)
            .map_err(|_| Error::Domain("parity submatrix singular".into()))?;
        Ok(GrsCode {
            field: field.clone(),
            n,
            k,
            labels,
            multipliers,
            parity_positions,
            data_positions,
            syndrome_matrix,
            parity_solver,
        })
    }

    /// Code with labels 0, 1, ..., n-1 and unit multipliers.
    pub fn with_sequential_labels(field: &Field, n: usize, k: usize) -> Result<GrsCode> {
        let labels = (0..n)
            .map(|i| field.elem(i as u32))
            .collect::<Result<Vec<_>>>()?;
        GrsCode::new(field, n, k, labels, None, None)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Redundancy n - k.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// Designed distance n - k + 1.
    pub fn distance(&self) -> usize {
        self.n - self.k + 1
    }

    /// Unique-decoding radius ⌊(n-k)/2⌋.
    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn labels(&self) -> &[Gf] {
        &self.labels
    }

    pub fn multipliers(&self) -> &[Gf] {
        &self.multipliers
    }

    pub fn parity_positions(&self) -> &[usize] {
        &self.parity_positions
    }

    pub fn data_positions(&self) -> &[usize] {
        &self.data_positions
    }

    pub fn syndrome_matrix(&self) -> &Matrix {
        &self.syndrome_matrix
    }

    /// Index of the symbol carrying `label`, if any.
    pub fn position_of(&self, label: Gf) -> Option<usize> {
        self.labels.iter().position(|&a| a == label)
    }

    /// σ_m = Σ_i block_i · m_i · α_i^m.
    pub fn syndrome(&self, block: &[Gf]) -> Result<Syndrome> {
        check_len(self.n, block.len())?;
        Ok(Syndrome(self.syndrome_matrix.mul_vec(block, &self.field)))
    }

    /// Syndrome of a sparse error vector.
    pub fn syndrome_of_errors<'a>(
        &self,
        errors: impl IntoIterator<Item = (&'a usize, &'a Gf)>,
    ) -> Syndrome {
        let f = &self.field;
        let mut s = vec![Gf::ZERO; self.redundancy()];
        for (&i, &v) in errors {
            for (m, sm) in s.iter_mut().enumerate() {
                *sm += f.mul(v, self.syndrome_matrix.get(m, i));
            }
        }
        Syndrome(s)
    }

    pub fn is_codeword(&self, block: &[Gf]) -> Result<bool> {
        Ok(self.syndrome(block)?.is_zero())
    }

    /// Systematic encoding: data symbols land at the data positions in order,
    /// parity solves the restricted syndrome system.
    pub fn encode_systematic(&self, data: &[Gf]) -> Result<Vec<Gf>> {
        check_len(self.k, data.len())?;
        let f = &self.field;
        let mut word = vec![Gf::ZERO; self.n];
        for (&p, &d) in self.data_positions.iter().zip(data) {
            word[p] = d;
        }
        let partial = self.syndrome_matrix.mul_vec(&word, f);
        let parity = self.parity_solver.mul_vec(&partial, f);
        for (&p, v) in self.parity_positions.iter().zip(parity) {
            word[p] = v;
        }
        Ok(word)
    }

    /// The block supported on the parity positions whose syndrome is `s`.
    pub fn block_with_syndrome(&self, s: &Syndrome) -> Result<Vec<Gf>> {
        check_len(self.redundancy(), s.len())?;
        let mut word = vec![Gf::ZERO; self.n];
        for (&p, v) in self
            .parity_positions
            .iter()
            .zip(self.parity_solver.mul_vec(&s.0, &self.field))
        {
            word[p] = v;
        }
        Ok(word)
    }

    /// Data symbols of a codeword (inverse of [`encode_systematic`](Self::encode_systematic)).
    pub fn extract_data(&self, word: &[Gf]) -> Result<Vec<Gf>> {
        check_len(self.n, word.len())?;
        Ok(self.data_positions.iter().map(|&p| word[p]).collect())
    }

    /// Fix the given data positions to zero and drop them.
    pub fn shorten(&self, fixed_positions: &[usize]) -> Result<GrsCode> {
        let fixed: BTreeSet<usize> = fixed_positions.iter().copied().collect();
        if let Some(&p) = fixed.iter().find(|p| !self.data_positions.contains(p)) {
            return config(format!(
                "position {p} is not a data position and cannot be fixed"
            ));
        }
        if fixed.len() >= self.k {
            return config("shortening must leave at least one data symbol");
        }
        let keep: Vec<usize> = (0..self.n).filter(|i| !fixed.contains(i)).collect();
        let labels = keep.iter().map(|&i| self.labels[i]).collect();
        let multipliers = keep.iter().map(|&i| self.multipliers[i]).collect();
        let parity = self
            .parity_positions
            .iter()
            .map(|p| keep.iter().position(|k| k == p).expect("parity survives"))
            .collect();
        GrsCode::new(
            &self.field,
            keep.len(),
            self.k - fixed.len(),
            labels,
            Some(multipliers),
            Some(parity),
        )
    }

    /// One codeword per unit data vector.
    pub fn generator_rows(&self) -> Vec<Vec<Gf>> {
        (0..self.k)
            .map(|j| {
                let mut d = vec![Gf::ZERO; self.k];
                d[j] = Gf::ONE;
                self.encode_systematic(&d).expect("length k")
            })
            .collect()
    }

    /// Visit every codeword (q^k of them) by an odometer over the data symbols.
    pub fn for_each_codeword(&self, mut visit: impl FnMut(&[Gf])) {
        let f = &self.field;
        let q = f.order();
        let gens = self.generator_rows();
        let mut digits = vec![0usize; self.k];
        let mut word = vec![Gf::ZERO; self.n];
        visit(&word);
        loop {
            let mut j = 0;
            loop {
                if j == self.k {
                    return;
                }
                let old = Gf(digits[j] as u16);
                digits[j] = (digits[j] + 1) % q;
                let new = Gf(digits[j] as u16);
                let delta = old + new;
                for (w, &g) in word.iter_mut().zip(&gens[j]) {
                    *w += f.mul(delta, g);
                }
                if digits[j] != 0 {
                    break;
                }
                j += 1;
            }
            visit(&word);
        }
    }

    /// Exact minimum distance by exhaustion; only for q^k <= 2^24.
    pub fn min_distance_bruteforce(&self) -> Result<usize> {
        let q = self.field.order() as f64;
        if q.powi(self.k as i32) > (1u64 << 24) as f64 {
            return Err(Error::SizeGuard(format!(
                "q^k = {}^{} exceeds 2^24 codewords",
                self.field.order(),
                self.k
            )));
        }
        let mut best = self.n;
        self.for_each_codeword(|w| {
            let wt = w.iter().filter(|s| !s.is_zero()).count();
            if wt > 0 && wt < best {
                best = wt;
            }
        });
        Ok(best)
    }
}

#[derive(Serialize, Deserialize)]
struct GrsCodeRepr {
    field: FieldSpec,
    n: usize,
    k: usize,
    labels: Vec<Gf>,
    multipliers: Vec<Gf>,
    parity_positions: Vec<usize>,
}

impl Serialize for GrsCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GrsCodeRepr {
            field: self.field.spec(),
            n: self.n,
            k: self.k,
            labels: self.labels.clone(),
            multipliers: self.multipliers.clone(),
            parity_positions: self.parity_positions.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrsCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<GrsCode, D::Error> {
        let r = GrsCodeRepr::deserialize(d)?;
        GrsCode::new(
            &Field::new(r.field),
            r.n,
            r.k,
            r.labels,
            Some(r.multipliers),
            Some(r.parity_positions),
        )
        .map_err(serde::de::Error::custom)
    }
}
