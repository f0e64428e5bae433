//! q-numbers and the symmetric q-factorial.

use super::laurent::LaurentPoly;
use super::qvalue::{QParam, QValue};
use crate::error::{QError, Result};

/// Asymmetric q-number `⟨n⟩ = (qⁿ - 1)/(q - 1)`; exactly `1 + q + … + qⁿ⁻¹`.
pub fn bracket_asym(n: i64, q: &QParam) -> Result<QValue> {
    if n < 0 {
        return Err(QError::Domain(format!("asymmetric bracket needs n >= 0, got {n}")));
    }
    Ok(match q {
        QParam::Numeric(q) => {
            if n == 0 {
                QValue::Float(0.0)
            } else {
                QValue::Float((q.powi(n as i32) - 1.0) / (q - 1.0))
            }
        }
        QParam::Formal => QValue::Exact(
            (0..n as i32).fold(LaurentPoly::zero(), |acc, j| acc + LaurentPoly::q_pow(j)),
        ),
    })
}

/// Symmetric q-number `[n] = (qⁿ - q⁻ⁿ)/(q - q⁻¹)`, defined for every integer.
pub fn bracket_sym(n: i64, q: &QParam) -> QValue {
    match q {
        QParam::Numeric(q) => {
            let n = n as i32;
            QValue::Float((q.powi(n) - q.powi(-n)) / (q - 1.0 / q))
        }
        QParam::Formal => {
            let m = n.unsigned_abs() as i32;
            let p = (0..m).fold(LaurentPoly::zero(), |acc, j| acc + LaurentPoly::q_pow(m - 1 - 2 * j));
            QValue::Exact(if n < 0 { -p } else { p })
        }
    }
}

/// `[n]! = [1][2]…[n]`, `[0]! = 1`.
pub fn qfactorial_sym(n: i64, q: &QParam) -> Result<QValue> {
    if n < 0 {
        return Err(QError::Domain(format!("q-factorial needs n >= 0, got {n}")));
    }
    let mut acc = q.from_int(1);
    for k in 1..=n {
        acc = acc.try_mul(&bracket_sym(k, q))?;
    }
    Ok(acc)
}
