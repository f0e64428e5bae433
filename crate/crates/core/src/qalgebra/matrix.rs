use std::ops::{Mul, Sub};

use super::ncpoly::{Generator, NCPoly};
use super::relations::RelationSet;
use crate::error::Result;
use crate::qcore::LaurentPoly;

/// 2×2 matrix with noncommuting entries. Products keep the left factor's
/// entries to the left.
#[derive(Clone, Debug, PartialEq)]
pub struct NCMatrix {
    pub m: [[NCPoly; 2]; 2],
}

impl NCMatrix {
    pub fn new(a: NCPoly, b: NCPoly, c: NCPoly, d: NCPoly) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn scalar(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        Self::new(NCPoly::scalar(a), NCPoly::scalar(b), NCPoly::scalar(c), NCPoly::scalar(d))
    }

    pub fn identity() -> Self {
        Self::scalar(LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::one())
    }

    /// Transpose without reordering letters inside entries.
    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.m.clone();
        Self::new(a, c, b, d)
    }

    pub fn entries(&self) -> impl Iterator<Item = &NCPoly> {
        self.m.iter().flatten()
    }

    pub fn normal_form(&self, r: &RelationSet) -> Result<Self> {
        let [[a, b], [c, d]] = &self.m;
        Ok(Self::new(
            r.normal_form(a)?,
            r.normal_form(b)?,
            r.normal_form(c)?,
            r.normal_form(d)?,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(NCPoly::is_zero)
    }

    pub fn term_count(&self) -> usize {
        self.entries().map(NCPoly::term_count).sum()
    }
}

impl<'a> Mul<&'a NCMatrix> for &'a NCMatrix {
    type Output = NCMatrix;
    fn mul(self, rhs: &NCMatrix) -> NCMatrix {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &rhs.m[0][j]) + &(&self.m[i][1] * &rhs.m[1][j]);
        NCMatrix::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl<'a> Sub<&'a NCMatrix> for &'a NCMatrix {
    type Output = NCMatrix;
    fn sub(self, rhs: &NCMatrix) -> NCMatrix {
        let e = |i: usize, j: usize| &self.m[i][j] - &rhs.m[i][j];
        NCMatrix::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

/// `uᵗ M v` for column vectors `u`, `v`.
pub fn bilinear(u: &[NCPoly; 2], m: &NCMatrix, v: &[NCPoly; 2]) -> NCPoly {
    let mut out = NCPoly::zero();
    for i in 0..2 {
        for j in 0..2 {
            out = out + &(&u[i] * &m.m[i][j]) * &v[j];
        }
    }
    out
}

/// `T = (α β; -q⁻¹β̄ ᾱ)` with the given `q⁻¹` coefficient.
pub fn group_matrix(q_inv: &LaurentPoly) -> NCMatrix {
    NCMatrix::new(
        NCPoly::gen(Generator::Alpha),
        NCPoly::gen(Generator::Beta),
        NCPoly::gen(Generator::BetaBar).scale(&-q_inv),
        NCPoly::gen(Generator::AlphaBar),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn product_respects_entry_order() {
        let a = NCMatrix::new(NCPoly::gen(X), NCPoly::zero(), NCPoly::zero(), NCPoly::zero());
        let b = NCMatrix::new(NCPoly::gen(D), NCPoly::zero(), NCPoly::zero(), NCPoly::zero());
        assert_eq!((&a * &b).m[0][0], NCPoly::word(&[X, D]));
        assert_eq!((&b * &a).m[0][0], NCPoly::word(&[D, X]));
    }

    #[test]
    fn identity_is_neutral() {
        let t = group_matrix(&LaurentPoly::q_inv());
        assert_eq!(&NCMatrix::identity() * &t, t);
        assert_eq!(&t * &NCMatrix::identity(), t);
    }
}
