use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QError, Result};
use crate::qcore::QParam;
use crate::qlattice::d_sym;

/// At least this many terms are summed.
pub const MIN_TERMS: usize = 30;

/// Relative size of the last kept term.
pub const TERM_TOLERANCE: f64 = 1e-16;

const MAX_TERMS: usize = 100_000;

/// One series evaluation with its bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
    /// `Σ|zⁿ/[n]!|`. Its ratio to `|value|` measures cancellation.
    pub magnitude: f64,
}

/// The q-exponential `E(z) = Σ zⁿ/[n]!` with symmetric brackets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QExpSeries {
    q: f64,
}

impl QExpSeries {
    pub fn new(q: QParam) -> Result<Self> {
        q.value().map(|q| Self { q }).ok_or(QError::ModeMismatch)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Sums until `n ≥ 30`, the latest term is below `1e-16·|sum|` and the
    /// term ratio `|z|/[n+1]` is below one half, so the tail is no larger
    /// than the latest term.
    pub fn eval_checked(&self, z: Complex64) -> Result<SeriesValue> {
        let q = self.q;
        let qi = 1.0 / q;
        let mut sum = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        let mut magnitude = 1.0;
        // bracket = [n], qn = q^(-n)
        let mut bracket = 0.0f64;
        let mut qn = 1.0f64;
        let mut n = 0usize;
        loop {
            bracket = q * bracket + qn;
            qn *= qi;
            n += 1;
            term = term * z / bracket;
            sum += term;
            magnitude += term.norm();
            let next_ratio = z.norm() / (q * bracket + qn);
            if n >= MIN_TERMS && term.norm() <= TERM_TOLERANCE * sum.norm() && next_ratio < 0.5 {
                break;
            }
            if n >= MAX_TERMS || !sum.re.is_finite() || !sum.im.is_finite() {
                return Err(QError::NonFinite(format!("q-exponential at z = {z}")));
            }
        }
        Ok(SeriesValue { value: sum, terms: n + 1, magnitude })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_checked(z)
            .map(|v| v.value)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    /// `sin_q z = (E(iz) - E(-iz))/(2i)`.
    pub fn sin(&self, z: Complex64) -> Complex64 {
        let i = Complex64::i();
        (self.eval(i * z) - self.eval(-i * z)) / (2.0 * i)
    }
}

pub fn qexp(z: Complex64, q: QParam) -> Result<Complex64> {
    QExpSeries::new(q)?.eval_checked(z).map(|v| v.value)
}

pub fn qsin(z: Complex64, q: QParam) -> Result<Complex64> {
    Ok(QExpSeries::new(q)?.sin(z))
}

/// `|D_x E(ipx) - ip E(ipx)| / |p E(ipx)|`.
pub fn eigenrelation_residual(p: f64, x: f64, q: QParam) -> Result<f64> {
    let e = QExpSeries::new(q)?;
    let i = Complex64::i();
    let dx = d_sym(|y| e.eval(i * p * y), x, &q)?;
    let target = i * p * e.eval(i * p * x);
    Ok((dx - target).norm() / target.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: f64) -> QParam {
        QParam::numeric(v).unwrap()
    }

    #[test]
    fn value_at_zero() {
        assert_eq!(qexp(Complex64::new(0.0, 0.0), q(0.5)).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(qsin(Complex64::new(0.0, 0.0), q(0.5)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn leading_terms() {
        // 1 + z + z²/[2] + z³/([2][3]) + z⁴/([2][3][4]) at q = 0.5:
        // [2] = 2.5, [3] = 5.25, [4] = 10.625
        let z = Complex64::new(1e-3, 0.0);
        let want = 1.0 + 1e-3 + 1e-6 / 2.5 + 1e-9 / 13.125 + 1e-12 / 139.453125;
        assert!((qexp(z, q(0.5)).unwrap().re - want).abs() < 1e-15);
    }

    #[test]
    fn classical_limit() {
        let q = q(1.0 - 1e-4);
        let e = qexp(Complex64::new(1.0, 0.0), q).unwrap();
        assert!((e.re - std::f64::consts::E).abs() < 1e-3);
        let s = qsin(Complex64::new(1.0, 0.0), q).unwrap();
        assert!((s.re - 1f64.sin()).abs() < 1e-3 && s.im.abs() < 1e-15);
    }

    #[test]
    fn eigenrelation_at_q_09() {
        let q = q(0.9);
        for &p in &[0.5, 1.0, 2.0, 5.0] {
            for k in -30..60 {
                let x = 0.9f64.powi(k);
                if p * x > 10.0 || p * x < 1e-3 {
                    continue;
                }
                for x in [x, -x] {
                    let r = eigenrelation_residual(p, x, q).unwrap();
                    assert!(r <= 1e-10, "p={p} x={x}: {r}");
                }
            }
        }
    }

    #[test]
    fn conjugate_kernel() {
        let e = QExpSeries::new(q(0.7)).unwrap();
        for &t in &[0.3, 1.7, 6.0] {
            let z = Complex64::new(0.0, t);
            assert_eq!(e.eval(-z), e.eval(z).conj());
        }
    }

    proptest! {
        #[test]
        fn sine_is_odd_and_real(t in -10.0f64..10.0, qv in 0.2f64..0.99) {
            let e = QExpSeries::new(q(qv)).unwrap();
            let z = Complex64::new(t, 0.0);
            let s = e.sin(z);
            prop_assert!((s + e.sin(-z)).norm() <= 1e-15 * (1.0 + s.norm()));
            prop_assert!(s.im.abs() <= 1e-12 * (1.0 + s.norm()));
        }
    }
}
