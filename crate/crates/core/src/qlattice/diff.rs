//! Jackson difference operators on closures.

use num_complex::Complex64;

use super::xpoly::XPoly;
use crate::error::{QError, Result};
use crate::qcore::{bracket_asym, bracket_sym, QParam, Residual};

fn numeric(q: &QParam) -> Result<f64> {
    q.value().ok_or(QError::ModeMismatch)
}

/// `D^q f(x) = (f(qx) - f(x)) / ((q - 1)x)`.
pub fn d_asym<F>(f: F, x: f64, q: &QParam) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let q = numeric(q)?;
    if x == 0.0 {
        return Err(QError::Singularity);
    }
    Ok((f(q * x) - f(x)) / ((q - 1.0) * x))
}

/// `D f(x) = (f(qx) - f(q⁻¹x)) / ((q - q⁻¹)x)`.
pub fn d_sym<F>(f: F, x: f64, q: &QParam) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let q = numeric(q)?;
    if x == 0.0 {
        return Err(QError::Singularity);
    }
    Ok((f(q * x) - f(x / q)) / ((q - 1.0 / q) * x))
}

/// `D(fg)` and the two right-hand forms of the product rule at `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeibnizTriple {
    pub lhs: Complex64,
    pub rhs1: Complex64,
    pub rhs2: Complex64,
}

impl LeibnizTriple {
    pub fn max_pairwise_diff(&self) -> f64 {
        [(self.lhs - self.rhs1).norm(), (self.lhs - self.rhs2).norm(), (self.rhs1 - self.rhs2).norm()]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn leibniz_sym<F, G>(f: F, g: G, x: f64, q: &QParam) -> Result<LeibnizTriple>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let qv = numeric(q)?;
    let df = d_sym(&f, x, q)?;
    let dg = d_sym(&g, x, q)?;
    let lhs = d_sym(|t| f(t) * g(t), x, q)?;
    let rhs1 = f(qv * x) * dg + g(x / qv) * df;
    let rhs2 = f(x / qv) * dg + g(qv * x) * df;
    Ok(LeibnizTriple { lhs, rhs1, rhs2 })
}

/// Checks `D = (1/x)[θ]` and `D^q = (1/x)⟨θ⟩` on `xⁿ`.
///
/// Returns `(symmetric, asymmetric)` residuals. Exact mode differentiates
/// the monomial symbolically; float mode compares at `x ∈ {0.5, 1, 2}`
/// relative to `|[n]xⁿ⁻¹|`.
pub fn dilatation_check(n: u32, q: &QParam) -> Result<(Residual, Residual)> {
    let sym = bracket_sym(n as i64, q);
    let asym = bracket_asym(n as i64, q)?;
    match q {
        QParam::Formal => {
            let mono = XPoly::monomial(n);
            let d = mono.d_sym()?;
            let da = mono.d_asym()?;
            let residual = |got: XPoly, br: &crate::qcore::LaurentPoly| {
                let expect = if n == 0 {
                    XPoly::zero()
                } else {
                    XPoly::term(n - 1, br.clone())
                };
                // Every coefficient of the difference folded into one poly.
                let diff = got - expect;
                diff.terms().fold(crate::qcore::LaurentPoly::zero(), |acc, (_, c)| &acc + c)
            };
            Ok((
                Residual::Exact(residual(d, sym.as_exact().expect("exact"))),
                Residual::Exact(residual(da, asym.as_exact().expect("exact"))),
            ))
        }
        QParam::Numeric(_) => {
            let mono = |x: f64| Complex64::new(x.powi(n as i32), 0.0);
            let mut rs = 0.0f64;
            let mut ra = 0.0f64;
            for x in [0.5f64, 1.0, 2.0] {
                let scale = |b: f64| if n == 0 { 1.0 } else { (b * x.powi(n as i32 - 1)).abs().max(f64::MIN_POSITIVE) };
                let bs = sym.as_float().expect("float");
                let ba = asym.as_float().expect("float");
                let es = if n == 0 { 0.0 } else { bs * x.powi(n as i32 - 1) };
                let ea = if n == 0 { 0.0 } else { ba * x.powi(n as i32 - 1) };
                rs = rs.max((d_sym(mono, x, q)?.re - es).abs() / scale(bs));
                ra = ra.max((d_asym(mono, x, q)?.re - ea).abs() / scale(ba));
            }
            Ok((Residual::Float(rs), Residual::Float(ra)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn re(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn worked_values() {
        let h = QParam::numeric(0.5).unwrap();
        assert!((d_asym(re(|x| x * x * x), 1.0, &h).unwrap().re - 1.75).abs() < 1e-15);
        assert!((d_sym(re(|x| x * x), 1.0, &h).unwrap().re - 2.5).abs() < 1e-15);
        assert_eq!(d_sym(re(|_| 4.0), 0.3, &h).unwrap().norm(), 0.0);
        assert_eq!(d_asym(re(|_| 4.0), 0.3, &h).unwrap().norm(), 0.0);
        let q = 0.7;
        let h = QParam::numeric(q).unwrap();
        let got = d_asym(re(|x| x * x), 1.3, &h).unwrap().re;
        assert!((got - (1.0 + q) * 1.3).abs() < 1e-14);
    }

    #[test]
    fn origin_is_singular() {
        let h = QParam::numeric(0.5).unwrap();
        assert_eq!(d_sym(re(|x| x), 0.0, &h), Err(QError::Singularity));
        assert_eq!(d_asym(re(|x| x), 0.0, &h), Err(QError::Singularity));
        assert_eq!(d_sym(re(|x| x), 1.0, &QParam::Formal), Err(QError::ModeMismatch));
    }

    #[test]
    fn dilatation_exact_and_float() {
        for n in 0..=20 {
            let (s, a) = dilatation_check(n, &QParam::Formal).unwrap();
            assert!(s.within(0.0) && a.within(0.0), "n={n}");
        }
        let (s, a) = dilatation_check(5, &QParam::numeric(0.9).unwrap()).unwrap();
        assert!(s.within(1e-13), "{s:?}");
        assert!(a.within(1e-13), "{a:?}");
        let (s, _) = dilatation_check(0, &QParam::numeric(0.9).unwrap()).unwrap();
        assert_eq!(s, Residual::Float(0.0));
    }

    #[test]
    fn leibniz_on_linear_functions() {
        let h = QParam::numeric(0.6).unwrap();
        let t = leibniz_sym(re(|x| x), re(|x| x), 1.7, &h).unwrap();
        let two = 0.6 + 1.0 / 0.6;
        assert!((t.lhs.re - two * 1.7).abs() < 1e-13);
        assert!(t.max_pairwise_diff() < 1e-13);
    }

    #[test]
    fn classical_limit_of_sine() {
        let h = QParam::numeric(1.0 - 1e-4).unwrap();
        for i in 0..=30 {
            let x = 0.5 + 1.5 * i as f64 / 30.0;
            for s in [1.0, -1.0] {
                let got = d_sym(|t: f64| Complex64::new(t.sin(), 0.0), s * x, &h).unwrap().re;
                let exact = (s * x).cos();
                assert!((got - exact).abs() <= 1e-3 * exact.abs(), "x={}", s * x);
            }
        }
    }

    fn poly_coeffs() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-2.0f64..2.0, 1..=5)
    }

    fn horner(c: &[f64], x: f64) -> f64 {
        c.iter().rev().fold(0.0, |acc, v| acc * x + v)
    }

    proptest! {
        #[test]
        fn leibniz_forms_agree(a in poly_coeffs(), b in poly_coeffs(), x in 0.2f64..2.0) {
            let h = QParam::numeric(0.7).unwrap();
            let t = leibniz_sym(
                |t| Complex64::new(horner(&a, t), 0.0),
                |t| Complex64::new(horner(&b, t), 0.0),
                x,
                &h,
            ).unwrap();
            prop_assert!(t.max_pairwise_diff() <= 1e-12, "{:?}", t);
        }

        #[test]
        fn parity_is_exchanged(a in poly_coeffs(), x in 0.2f64..3.0, q in 0.3f64..0.95) {
            let h = QParam::numeric(q).unwrap();
            // even part of a random polynomial in x², and an odd part x·p(x²)
            let even = |t: f64| Complex64::new(horner(&a, t * t), 0.0);
            let odd = |t: f64| Complex64::new(t * horner(&a, t * t), 0.0);
            let de = |t| d_sym(even, t, &h).unwrap();
            let dodd = |t| d_sym(odd, t, &h).unwrap();
            let scale = 1.0 + de(x).norm() + dodd(x).norm();
            prop_assert!((de(-x) + de(x)).norm() <= 1e-12 * scale);
            prop_assert!((dodd(-x) - dodd(x)).norm() <= 1e-12 * scale);
        }
    }
}
