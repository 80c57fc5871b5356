//! Univariate polynomials over GF(2^b), lowest degree first.

use std::fmt;

use super::{Field, Gf};
use crate::error::{Error, Result};

/// A polynomial with no trailing zero coefficients.
///
/// The zero polynomial has no coefficients and [`Poly::degree`] returns `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Gf>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Gf::ONE)
    }

    pub fn x() -> Poly {
        Poly::monomial(Gf::ONE, 1)
    }

    pub fn constant(c: Gf) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Gf, degree: usize) -> Poly {
        let mut v = vec![Gf::ZERO; degree + 1];
        v[degree] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Gf>) -> Poly {
        while coeffs.last() == Some(&Gf::ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Monic polynomial with the given roots, ∏(x - r).
    pub fn from_roots(roots: &[Gf], f: &Field) -> Poly {
        roots.iter().fold(Poly::one(), |acc, &r| {
            acc.mul(&Poly::from_coeffs(vec![r, Gf::ONE]), f)
        })
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Gf {
        self.coeffs.last().copied().unwrap_or(Gf::ZERO)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, c: Gf, f: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gf::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gf::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] += f.mul(a, b);
            }
        }
        Poly::from_coeffs(v)
    }

    /// Product truncated to degree < m, i.e. `self * other mod x^m`.
    pub fn mul_trunc(&self, other: &Poly, m: usize, f: &Field) -> Poly {
        let mut v = vec![Gf::ZERO; m];
        for (i, &a) in self.coeffs.iter().enumerate().take(m) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(m - i) {
                v[i + j] += f.mul(a, b);
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn pow(&self, e: usize, f: &Field) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, f))
    }

    /// `self mod x^m`.
    pub fn truncate(&self, m: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().take(m).copied().collect())
    }

    pub fn div_rem(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Gf::ZERO; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = f.mul(rem[top], lead_inv);
            let shift = top - dd;
            if !c.is_zero() {
                quot[shift] = c;
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] -= f.mul(c, d);
                }
            }
            rem.pop();
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &Field) -> Result<Poly> {
        self.div_rem(divisor, f).map(|(_, r)| r)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Gf, f: &Field) -> Gf {
        self.coeffs
            .iter()
            .rev()
            .fold(Gf::ZERO, |acc, &c| f.mul(acc, x) + c)
    }

    /// Formal derivative. In characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { Gf::ZERO })
                .collect(),
        )
    }

    /// `x^len · p(1/x)`; requires `deg p <= len`.
    pub fn reversed(&self, len: usize) -> Poly {
        assert!(self.coeffs.len() <= len + 1, "reversal length below degree");
        let mut v = vec![Gf::ZERO; len + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[len - i] = c;
        }
        Poly::from_coeffs(v)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly, f: &Field) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| {
            acc.mul(inner, f).add(&Poly::constant(c))
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (1, _) => write!(f, "{c}·x")?,
                _ => write!(f, "{c}·x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u16]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&x| Gf(x)).collect())
    }

    #[test]
    fn zero_poly_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        let f = Field::gf16();
        for x in f.elements() {
            assert_eq!(Poly::zero().eval(x, &f), Gf::ZERO);
        }
    }

    #[test]
    fn x2_plus_x_vanishes_on_gf2() {
        let f = Field::gf256();
        let g = p(&[0, 1, 1]);
        assert_eq!(g.eval(Gf::ZERO, &f), Gf::ZERO);
        assert_eq!(g.eval(Gf::ONE, &f), Gf::ZERO);
        assert_ne!(g.eval(Gf(2), &f), Gf::ZERO);
    }

    #[test]
    fn vieta_two_roots() {
        let f = Field::gf16();
        let (b1, b2) = (Gf(3), Gf(9));
        let q = Poly::from_roots(&[b1, b2], &f);
        assert_eq!(q.coeffs(), &[f.mul(b1, b2), b1 + b2, Gf::ONE]);
        assert_eq!(q.mul(&Poly::one(), &f), q);
    }

    #[test]
    fn division_by_zero_is_error() {
        let f = Field::gf16();
        assert!(p(&[1, 2]).rem(&Poly::zero(), &f).is_err());
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = Field::gf256();
        let a = p(&[5, 0, 7, 200, 13, 1]);
        let b = p(&[9, 3, 77]);
        let (qq, r) = a.div_rem(&b, &f).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(qq.mul(&b, &f).add(&r), a);
        // mod x^m is truncation
        assert_eq!(
            a.rem(&Poly::monomial(Gf::ONE, 3), &f).unwrap(),
            a.truncate(3)
        );
    }

    #[test]
    fn reversal_and_compose() {
        let f = Field::gf16();
        let a = p(&[1, 2, 3]);
        assert_eq!(a.reversed(2), p(&[3, 2, 1]));
        assert_eq!(a.reversed(3), p(&[0, 3, 2, 1]));
        let g = p(&[0, 1, 1]);
        // G2(G2(x)) = x^4 + x
        assert_eq!(g.compose(&g, &f), p(&[0, 1, 0, 0, 1]));
    }
}
