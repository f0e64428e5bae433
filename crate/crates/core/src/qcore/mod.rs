//! Exact and floating-point arithmetic for q-numbers, q-factorials and
//! Laurent polynomials in q.

mod brackets;
mod laurent;
mod qvalue;
mod ratfn;

pub use brackets::{bracket_asym, bracket_sym, qfactorial_sym};
pub use laurent::{rational, LaurentPoly};
pub use qvalue::{rational_from_f64, Mode, QParam, QValue};
pub use ratfn::RatFn;

use serde::Serialize;

/// Default value of ħ.
pub const HBAR: f64 = 1.0;

/// Outcome of an identity check: a float magnitude or an exact remainder.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Float(f64),
    Exact(LaurentPoly),
}

impl Residual {
    /// Exact residuals pass only when identically zero.
    pub fn within(&self, tol: f64) -> bool {
        match self {
            Residual::Float(v) => v.is_finite() && *v <= tol,
            Residual::Exact(p) => p.is_zero(),
        }
    }

    /// Float magnitude, or the number of surviving terms in exact mode.
    pub fn magnitude(&self) -> f64 {
        match self {
            Residual::Float(v) => *v,
            Residual::Exact(p) => p.term_count() as f64,
        }
    }

    pub fn summary(&self) -> ResidualSummary {
        match self {
            Residual::Float(v) => ResidualSummary {
                mode: Mode::Float,
                value: *v,
                terms: None,
                text: None,
            },
            Residual::Exact(p) => ResidualSummary {
                mode: Mode::Exact,
                value: p.term_count() as f64,
                terms: Some(p.term_count()),
                text: Some(p.to_string()),
            },
        }
    }

    /// Larger of two residuals of the same mode; exact residuals keep the
    /// one with more surviving terms.
    pub fn max(self, other: Residual) -> Residual {
        match (self, other) {
            (Residual::Float(a), Residual::Float(b)) => Residual::Float(if a.is_nan() || b.is_nan() {
                f64::NAN
            } else {
                a.max(b)
            }),
            (Residual::Exact(a), Residual::Exact(b)) => {
                if b.term_count() > a.term_count() {
                    Residual::Exact(b)
                } else {
                    Residual::Exact(a)
                }
            }
            (a, _) => a,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualSummary {
    pub mode: Mode,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

/// Residuals of the basic recurrences for one `n`:
/// `⟨n+1⟩ - q⟨n⟩ - 1`, `[n+1] - q[n] - q⁻ⁿ`, `[n]_q - [n]_{1/q}` and
/// `[n]_q - q^{1-n}⟨n⟩_{q²}`.
pub fn bracket_identity_residuals(n: i64) -> [LaurentPoly; 4] {
    let f = QParam::Formal;
    let exact = |v: QValue| v.as_exact().cloned().expect("formal q gives exact values");
    let q = LaurentPoly::q();
    let a_n = exact(bracket_asym(n, &f).expect("n >= 0"));
    let a_n1 = exact(bracket_asym(n + 1, &f).expect("n >= 0"));
    let s_n = exact(bracket_sym(n, &f));
    let s_n1 = exact(bracket_sym(n + 1, &f));
    let asym_rec = &(&a_n1 - &(&q * &a_n)) - &LaurentPoly::one();
    let sym_rec = &(&s_n1 - &(&q * &s_n)) - &LaurentPoly::q_pow(-(n as i32));
    let inversion = &s_n - &s_n.substitute_q_pow(-1);
    let bridge = &s_n - &(&LaurentPoly::q_pow(1 - n as i32) * &a_n.substitute_q_pow(2));
    [asym_rec, sym_rec, inversion, bridge]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn recurrences_hold_exactly() {
        for n in 0..=30 {
            for r in bracket_identity_residuals(n) {
                assert!(r.is_zero(), "n={n}: {r}");
            }
        }
    }

    #[test]
    fn residual_exact_passes_only_at_zero() {
        assert!(Residual::Exact(LaurentPoly::zero()).within(0.0));
        assert!(!Residual::Exact(LaurentPoly::q()).within(1e9));
        assert!(!Residual::Float(f64::NAN).within(1.0));
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..=4, -5i64..=5, 1i64..=3), 0..5).prop_map(|ts| {
            LaurentPoly::from_half_terms(ts.into_iter().map(|(e, n, d)| (2 * e, rational(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), q in 0.3f64..0.99) {
            let lhs = (&a * &b).eval(q);
            let rhs = a.eval(q) * b.eval(q);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs().max(rhs.abs()) ) * 50.0);
        }

        #[test]
        fn product_divides_back(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }
    }
}
