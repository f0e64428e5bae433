//! Polynomials in `x` whose coefficients are Laurent polynomials in `q`.
//! The exact-mode home of the difference operators.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use crate::error::{QError, Result};
use crate::qcore::LaurentPoly;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct XPoly {
    coeffs: BTreeMap<u32, LaurentPoly>,
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·xⁿ`.
    pub fn term(n: u32, c: LaurentPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(n, c);
        }
        Self { coeffs }
    }

    pub fn monomial(n: u32) -> Self {
        Self::term(n, LaurentPoly::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, LaurentPoly)>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, (n, c)| acc + Self::term(n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: u32) -> LaurentPoly {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &LaurentPoly)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    /// `f(qᵏ·x)`.
    pub fn dilate(&self, k: i32) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(n, c)| (*n, c * &LaurentPoly::q_pow(k * *n as i32))),
        )
    }

    /// Divides `numerator / (step·x)` coefficientwise and exactly. The
    /// constant term of the numerator must vanish.
    fn divide_by_step_x(numerator: XPoly, step: &LaurentPoly) -> Result<XPoly> {
        let mut out = XPoly::zero();
        for (n, c) in numerator.coeffs {
            if n == 0 {
                return Err(QError::InexactDivision("difference quotient has a 1/x term".into()));
            }
            let quot = c
                .div_exact(step)
                .ok_or_else(|| QError::InexactDivision(format!("({c}) / ({step})")))?;
            out = out + XPoly::term(n - 1, quot);
        }
        Ok(out)
    }

    /// `(f(qx) - f(q⁻¹x)) / ((q - q⁻¹)x)`, computed exactly.
    pub fn d_sym(&self) -> Result<Self> {
        let step = &LaurentPoly::q() - &LaurentPoly::q_inv();
        Self::divide_by_step_x(self.dilate(1) - self.dilate(-1), &step)
    }

    /// `(f(qx) - f(x)) / ((q - 1)x)`, computed exactly.
    pub fn d_asym(&self) -> Result<Self> {
        let step = &LaurentPoly::q() - &LaurentPoly::one();
        Self::divide_by_step_x(self.dilate(1) - self.clone(), &step)
    }

    pub fn eval(&self, x: f64, q: f64) -> f64 {
        self.coeffs.iter().map(|(n, c)| c.eval(q) * x.powi(*n as i32)).sum()
    }
}

impl Add for XPoly {
    type Output = XPoly;
    fn add(mut self, rhs: XPoly) -> XPoly {
        for (n, c) in rhs.coeffs {
            let sum = &self.coeff(n) + &c;
            if sum.is_zero() {
                self.coeffs.remove(&n);
            } else {
                self.coeffs.insert(n, sum);
            }
        }
        self
    }
}

impl Sub for XPoly {
    type Output = XPoly;
    fn sub(self, rhs: XPoly) -> XPoly {
        let neg = XPoly {
            coeffs: rhs.coeffs.into_iter().map(|(n, c)| (n, -c)).collect(),
        };
        self + neg
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (na, ca) in &self.coeffs {
            for (nb, cb) in &rhs.coeffs {
                out = out + XPoly::term(na + nb, ca * cb);
            }
        }
        out
    }
}

/// Both right-hand forms of the product rule for the symmetric derivative,
/// next to `D(fg)` itself: `[D(fg), f(qx)Dg + g(q⁻¹x)Df, f(q⁻¹x)Dg + g(qx)Df]`.
pub fn leibniz_sym_exact(f: &XPoly, g: &XPoly) -> Result<[XPoly; 3]> {
    let df = f.d_sym()?;
    let dg = g.d_sym()?;
    let lhs = (f * g).d_sym()?;
    let rhs1 = &f.dilate(1) * &dg + &g.dilate(-1) * &df;
    let rhs2 = &f.dilate(-1) * &dg + &g.dilate(1) * &df;
    Ok([lhs, rhs1, rhs2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{bracket_asym, bracket_sym, rational, QParam};

    fn sym(n: i64) -> LaurentPoly {
        bracket_sym(n, &QParam::Formal).as_exact().cloned().unwrap()
    }

    #[test]
    fn monomial_laws() {
        for n in 0..=20u32 {
            let d = XPoly::monomial(n).d_sym().unwrap();
            let expect = if n == 0 {
                XPoly::zero()
            } else {
                XPoly::term(n - 1, sym(n as i64))
            };
            assert_eq!(d, expect, "D x^{n}");
            let d = XPoly::monomial(n).d_asym().unwrap();
            let br = bracket_asym(n as i64, &QParam::Formal).unwrap();
            let expect = if n == 0 {
                XPoly::zero()
            } else {
                XPoly::term(n - 1, br.as_exact().cloned().unwrap())
            };
            assert_eq!(d, expect, "D^q x^{n}");
        }
    }

    #[test]
    fn leibniz_on_monomials() {
        let x = XPoly::monomial(1);
        let [lhs, r1, r2] = leibniz_sym_exact(&x, &x).unwrap();
        assert_eq!(lhs, XPoly::term(1, sym(2)));
        assert_eq!(r1, lhs);
        assert_eq!(r2, lhs);
        let [lhs, r1, r2] = leibniz_sym_exact(&x, &XPoly::monomial(2)).unwrap();
        assert_eq!(lhs, XPoly::term(2, sym(3)));
        assert_eq!(r1, lhs);
        assert_eq!(r2, lhs);
    }

    #[test]
    fn mixed_coefficients() {
        let f = XPoly::from_terms([
            (0, LaurentPoly::from_int(3)),
            (2, LaurentPoly::q()),
            (3, LaurentPoly::constant(rational(-1, 2))),
        ]);
        let g = XPoly::from_terms([(1, LaurentPoly::q_inv()), (4, LaurentPoly::from_int(2))]);
        let [lhs, r1, r2] = leibniz_sym_exact(&f, &g).unwrap();
        assert_eq!(r1, lhs);
        assert_eq!(r2, lhs);
        assert!((lhs.eval(0.8, 0.6) - r1.eval(0.8, 0.6)).abs() < 1e-12);
    }
}
