use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use serde::Serialize;

use super::laurent::LaurentPoly;
use crate::error::{QError, Result};

/// The deformation parameter.
///
/// `Numeric` values are validated to lie strictly inside `(0, 1)`; the
/// classical limit is only ever approached, never evaluated. `Formal` treats
/// `q` as an indeterminate for exact identity checks. `q^{-1}` is always
/// derived, never stored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QParam {
    Numeric(f64),
    Formal,
}

impl QParam {
    pub fn numeric(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(Self::Numeric(q))
        } else {
            Err(QError::InvalidQ(q))
        }
    }

    pub fn formal() -> Self {
        Self::Formal
    }

    pub fn mode(&self) -> Mode {
        match self {
            Self::Numeric(_) => Mode::Float,
            Self::Formal => Mode::Exact,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Self::Numeric(q) => Some(*q),
            Self::Formal => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Formal)
    }

    /// `q` itself as a value of the matching mode.
    pub fn q(&self) -> QValue {
        match self {
            Self::Numeric(q) => QValue::Float(*q),
            Self::Formal => QValue::Exact(LaurentPoly::q()),
        }
    }

    /// `q₁ = q^{-1}`.
    pub fn q1(&self) -> QValue {
        self.q_pow(-1)
    }

    pub fn q_pow(&self, e: i32) -> QValue {
        match self {
            Self::Numeric(q) => QValue::Float(q.powi(e)),
            Self::Formal => QValue::Exact(LaurentPoly::q_pow(e)),
        }
    }

    pub fn from_int(&self, c: i64) -> QValue {
        match self {
            Self::Numeric(_) => QValue::Float(c as f64),
            Self::Formal => QValue::Exact(LaurentPoly::from_int(c)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Float => write!(f, "float"),
            Mode::Exact => write!(f, "exact"),
        }
    }
}

/// A number in float mode or exact mode. Mixing modes is an error.
#[derive(Clone, Debug, PartialEq)]
pub enum QValue {
    Float(f64),
    Exact(LaurentPoly),
}

impl QValue {
    pub fn mode(&self) -> Mode {
        match self {
            Self::Float(_) => Mode::Float,
            Self::Exact(_) => Mode::Exact,
        }
    }

    pub fn as_float(&self) -> Option<f64> {
        match self {
            Self::Float(v) => Some(*v),
            Self::Exact(_) => None,
        }
    }

    pub fn as_exact(&self) -> Option<&LaurentPoly> {
        match self {
            Self::Float(_) => None,
            Self::Exact(p) => Some(p),
        }
    }

    /// Numeric value, evaluating exact values at `q`.
    pub fn eval(&self, q: f64) -> f64 {
        match self {
            Self::Float(v) => *v,
            Self::Exact(p) => p.eval(q),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Float(v) => *v == 0.0,
            Self::Exact(p) => p.is_zero(),
        }
    }

    pub fn try_add(&self, rhs: &QValue) -> Result<QValue> {
        match (self, rhs) {
            (Self::Float(a), Self::Float(b)) => Ok(Self::Float(a + b)),
            (Self::Exact(a), Self::Exact(b)) => Ok(Self::Exact(a + b)),
            _ => Err(QError::ModeMismatch),
        }
    }

    pub fn try_sub(&self, rhs: &QValue) -> Result<QValue> {
        match (self, rhs) {
            (Self::Float(a), Self::Float(b)) => Ok(Self::Float(a - b)),
            (Self::Exact(a), Self::Exact(b)) => Ok(Self::Exact(a - b)),
            _ => Err(QError::ModeMismatch),
        }
    }

    pub fn try_mul(&self, rhs: &QValue) -> Result<QValue> {
        match (self, rhs) {
            (Self::Float(a), Self::Float(b)) => Ok(Self::Float(a * b)),
            (Self::Exact(a), Self::Exact(b)) => Ok(Self::Exact(a * b)),
            _ => Err(QError::ModeMismatch),
        }
    }

    /// Multiplies by the rational `n/d`.
    pub fn scale(&self, n: i64, d: i64) -> QValue {
        match self {
            Self::Float(v) => Self::Float(v * n as f64 / d as f64),
            Self::Exact(p) => Self::Exact(p.scale(&BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn neg(&self) -> QValue {
        match self {
            Self::Float(v) => Self::Float(-v),
            Self::Exact(p) => Self::Exact(-p),
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Float(v) => write!(f, "{v}"),
            Self::Exact(p) => write!(f, "{p}"),
        }
    }
}

/// Exact rational image of a float (binary expansions are finite).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    BigRational::from_f64(x)
}
