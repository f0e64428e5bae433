//! Laurent polynomials in `q^{1/2}` with exact rational coefficients.
//!
//! Exponents are stored in half units so that the `q^{±1/2}` entries of the
//! invariant bilinear form are representable; everything built from brackets
//! only ever uses even keys.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact Laurent polynomial `Σ c_e q^{e/2}`. No zero coefficient is ever
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigRational>,
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial_half(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c·q^exp` for an integer exponent.
    pub fn monomial(c: BigRational, exp: i32) -> Self {
        Self::monomial_half(c, 2 * exp)
    }

    /// `c·q^{twice_exp/2}`.
    pub fn monomial_half(c: BigRational, twice_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(twice_exp, c);
        }
        Self { terms }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_inv() -> Self {
        Self::q_pow(-1)
    }

    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    pub fn q_half_pow(twice_exp: i32) -> Self {
        Self::monomial_half(BigRational::one(), twice_exp)
    }

    /// Builds a polynomial from `(twice_exp, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_half_terms<I: IntoIterator<Item = (i32, BigRational)>>(items: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in items {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, twice_exp: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(twice_exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&twice_exp);
        }
    }

    /// Rebuilds the canonical form. Construction already keeps it canonical;
    /// this exists for callers that assemble raw term lists.
    pub fn normalize(self) -> Self {
        Self::from_half_terms(self.terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `(twice_exp, coefficient)` in ascending exponent order.
    pub fn half_terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `q^exp` (integer exponent).
    pub fn coeff(&self, exp: i32) -> BigRational {
        self.terms.get(&(2 * exp)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `Some((c, twice_exp))` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&BigRational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `q^{twice_exp/2}`.
    pub fn shift_half(&self, twice_exp: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + twice_exp, v.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^k`.
    pub fn substitute_q_pow(&self, k: i32) -> Self {
        if k == 0 {
            let total = self.terms.values().fold(BigRational::zero(), |acc, c| acc + c);
            return Self::constant(total);
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e * k, v.clone())).collect(),
        }
    }

    /// Floating point value at `q > 0`.
    pub fn eval(&self, q: f64) -> f64 {
        let root = q.sqrt();
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let p = if e % 2 == 0 {
                    q.powi(e / 2)
                } else {
                    q.powi((e - 1) / 2) * root
                };
                c * p
            })
            .sum()
    }

    /// Exact value at a rational `q`. `None` when a half-integer power occurs.
    pub fn eval_rational(&self, q: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            if e % 2 != 0 {
                return None;
            }
            acc += c * pow_rational(q, e / 2);
        }
        Some(acc)
    }

    fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Exact quotient `self / divisor` in the Laurent ring, or `None` when
    /// the division leaves a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let dmin = divisor.min_exp()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nmin = self.min_exp().expect("nonzero");
        // Both shifted to start at exponent 0; divisor then has a nonzero
        // constant term, so Laurent divisibility equals polynomial divisibility.
        let d = divisor.shift_half(-dmin);
        let mut rem = self.shift_half(-nmin);
        let dmax = d.max_exp().expect("nonzero");
        let dlead = d.terms[&dmax].clone();
        let mut quot = Self::zero();
        while let Some(rmax) = rem.max_exp() {
            if rmax < dmax {
                return None;
            }
            let c = &rem.terms[&rmax] / &dlead;
            let e = rmax - dmax;
            let step = d.shift_half(e).scale(&c);
            rem = &rem - &step;
            quot.add_term(e, c);
        }
        Some(quot.shift_half(nmin - dmin))
    }
}

fn pow_rational(q: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

fn fmt_power(twice_exp: i32) -> String {
    if twice_exp % 2 == 0 {
        match twice_exp / 2 {
            1 => "q".to_string(),
            e => format!("q^{e}"),
        }
    } else {
        format!("q^({twice_exp}/2)")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            let body = if *e == 0 {
                mag.to_string()
            } else if mag.is_one() {
                fmt_power(*e)
            } else {
                format!("{}*{}", mag, fmt_power(*e))
            };
            match (i, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}
