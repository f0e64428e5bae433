//! Bilateral Jackson integral and its telescoping against the symmetric
//! derivative.

use num_complex::Complex64;
use serde::Serialize;

use super::lattice::{GeoLattice, LatticeFn, LatticeScalar, Sign};
use crate::error::{QError, Result};
use crate::qcore::Residual;

/// Integrands must fall below this at the window ends.
pub const DECAY_TOLERANCE: f64 = 1e-14;

/// A non-fatal condition attached to a numerical result.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Warning {
    pub code: &'static str,
    pub message: String,
}

impl Warning {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

/// Per-point weight `(q⁻¹ - q)/2 · |x|`.
pub fn weight<T: LatticeScalar>(lattice: &GeoLattice, k: i32) -> T {
    (T::q_power(lattice, -1) - T::q_power(lattice, 1)) * T::half() * T::point(lattice, Sign::Plus, k)
}

/// `(q⁻¹ - q)/2 · Σₖ Σ± |x| f(±x)` over the lattice window.
pub fn qintegral<T: LatticeScalar>(f: &LatticeFn<T>) -> Result<T> {
    let lattice = f.lattice();
    let mut acc = T::zero();
    for k in lattice.kmin()..=lattice.kmax() {
        let pair = f.at(Sign::Plus, k)?.clone() + f.at(Sign::Minus, k)?.clone();
        acc = acc + weight::<T>(lattice, k) * pair;
    }
    if !acc.is_finite() {
        return Err(QError::NonFinite("q-integral".into()));
    }
    Ok(acc)
}

/// The integral together with warnings about the two truncation ends.
///
/// The outer end warns when `|x f(x)|` on the outermost shell exceeds
/// [`DECAY_TOLERANCE`]. The inner end warns when the geometric estimate of
/// the omitted shells near the origin, `w(x_in)·|f(x_in)|·q/(1-q)`, does.
pub fn qintegral_checked(f: &LatticeFn<Complex64>) -> Result<(Complex64, Vec<Warning>)> {
    let value = qintegral(f)?;
    let lattice = f.lattice();
    let q = lattice.qf();
    let mut warnings = Vec::new();
    let outer = lattice.abs_x(lattice.kmin()) * f.outer_magnitude();
    if outer > DECAY_TOLERANCE {
        warnings.push(Warning::new(
            "outer-decay",
            format!("|x f| = {outer:.3e} at shell {}", lattice.kmin()),
        ));
    }
    let k = lattice.kmax();
    let inner_mag = Sign::BOTH
        .iter()
        .map(|&s| f.at(s, k).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let inner = weight::<Complex64>(lattice, k).re * inner_mag * q / (1.0 - q);
    if inner > DECAY_TOLERANCE {
        warnings.push(Warning::new(
            "inner-tail",
            format!("omitted shells beyond {k} estimated at {inner:.3e}"),
        ));
    }
    Ok((value, warnings))
}

/// Closed form of `qintegral(d_sym g)`:
/// `-½ Σ± s·(g(kmax) + g(kmax-1) - g(kmin+1) - g(kmin))`.
pub fn telescoped_boundary<T: LatticeScalar>(g: &LatticeFn<T>) -> Result<T> {
    let l = g.lattice();
    if l.shells() < 3 {
        return Err(QError::Boundary("need at least three shells".into()));
    }
    let mut acc = T::zero();
    for s in Sign::BOTH {
        let term = g.at(s, l.kmax())?.clone() + g.at(s, l.kmax() - 1)?.clone()
            - g.at(s, l.kmin() + 1)?.clone()
            - g.at(s, l.kmin())?.clone();
        acc = match s {
            Sign::Plus => acc + term,
            Sign::Minus => acc - term,
        };
    }
    Ok(-(acc * T::half()))
}

/// `|qintegral(d_sym g)|` for `g` vanishing on the two outermost shells at
/// both ends of each branch, where the boundary difference is zero.
pub fn fundamental_theorem_check<T: LatticeScalar>(g: &LatticeFn<T>) -> Result<Residual> {
    let l = g.lattice();
    if l.shells() < 5 {
        return Err(QError::Boundary("window too small for interior support".into()));
    }
    for s in Sign::BOTH {
        for k in [l.kmin(), l.kmin() + 1, l.kmax() - 1, l.kmax()] {
            if !g.at(s, k)?.is_zero() {
                return Err(QError::Boundary(format!(
                    "support touches the window edge at shell {k} ({})",
                    s.symbol()
                )));
            }
        }
    }
    Ok(qintegral(&g.d_sym()?)?.to_residual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{rational, QParam, RatFn};
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn float_lattice(q: f64, kmin: i32, kmax: i32) -> GeoLattice {
        GeoLattice::new(1.0, QParam::numeric(q).unwrap(), kmin, kmax).unwrap()
    }

    #[test]
    fn odd_integrands_vanish() {
        let l = float_lattice(0.8, -20, 20);
        let f = LatticeFn::from_fn(l, |x| Complex64::new(x * x * x * (-x * x).exp(), x)).unwrap();
        assert_eq!(qintegral(&f).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_function() {
        let l = float_lattice(0.5, -6, 6);
        let g = LatticeFn::<Complex64>::zeros(l).unwrap();
        assert!(fundamental_theorem_check(&g).unwrap().within(0.0));
    }

    #[test]
    fn single_bump_exact() {
        let l = GeoLattice::new(1.0, QParam::Formal, -4, 4).unwrap();
        for k in -2..=2 {
            for s in Sign::BOTH {
                let g = LatticeFn::from_rationals(l, |ss, kk| {
                    if ss == s && kk == k {
                        rational(3, 7)
                    } else {
                        rational(0, 1)
                    }
                })
                .unwrap();
                let r = fundamental_theorem_check(&g).unwrap();
                assert!(r.within(0.0), "bump at {k}{}: {r:?}", s.symbol());
            }
        }
    }

    #[test]
    fn support_at_edge_is_rejected() {
        let l = float_lattice(0.5, -4, 4);
        let g = LatticeFn::tabulate(l, |_, k| Complex64::new(if k == 3 { 1.0 } else { 0.0 }, 0.0)).unwrap();
        assert!(matches!(fundamental_theorem_check(&g), Err(QError::Boundary(_))));
    }

    #[test]
    fn telescoping_matches_closed_form_exactly() {
        // arbitrary values, including at the edges
        let l = GeoLattice::new(1.0, QParam::Formal, -3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vals: Vec<BigRational> = (0..l.len()).map(|_| rational(rng.random_range(-9..=9), rng.random_range(1..=4))).collect();
        let g = LatticeFn::new(l, vals.into_iter().map(RatFn::from_rational).collect()).unwrap();
        let lhs = qintegral(&g.d_sym().unwrap()).unwrap();
        let rhs = telescoped_boundary(&g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn random_interior_exact_and_float() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let exact = GeoLattice::new(1.0, QParam::Formal, -5, 5).unwrap();
        let float = float_lattice(0.5, -12, 12);
        for _ in 0..50 {
            let vals: Vec<RatFn> = exact
                .points()
                .map(|(_, k)| {
                    RatFn::from_rational(if (exact.kmin() + 2..=exact.kmax() - 2).contains(&k) {
                        rational(rng.random_range(-20..=20), rng.random_range(1..=5))
                    } else {
                        rational(0, 1)
                    })
                })
                .collect();
            let g = LatticeFn::new(exact, vals).unwrap();
            assert!(fundamental_theorem_check(&g).unwrap().within(0.0));
            let vals: Vec<Complex64> = float
                .points()
                .map(|(_, k)| {
                    if (float.kmin() + 2..=float.kmax() - 2).contains(&k) {
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            let g = LatticeFn::new(float, vals).unwrap();
            assert!(fundamental_theorem_check(&g).unwrap().within(1e-12));
        }
    }

    fn q_gaussian(q: f64, x: f64) -> Complex64 {
        let k = (1.0 - q) * x * x;
        let mut v = 1.0;
        let mut qs = 1.0;
        for _ in 0..2000 {
            v /= 1.0 + k * qs;
            qs *= q * q;
        }
        Complex64::new(v, 0.0)
    }

    #[test]
    fn q_gaussian_integral_converges() {
        let q = 0.9;
        let half_line = |kmin: i32, kmax: i32| -> f64 {
            let l = float_lattice(q, kmin, kmax);
            (kmin..=kmax)
                .map(|k| (1.0 / q - q) / 2.0 * l.abs_x(k) * q_gaussian(q, l.abs_x(k)).re)
                .sum()
        };
        let mut values = Vec::new();
        for kmax in [400, 600] {
            let l = float_lattice(q, -120, kmax);
            let f = LatticeFn::from_fn(l, |x| q_gaussian(q, x)).unwrap();
            let (v, warnings) = qintegral_checked(&f).unwrap();
            assert!(warnings.is_empty(), "{warnings:?}");
            assert!((v.re - 2.0 * half_line(-120, kmax)).abs() <= 1e-13 * v.re);
            values.push(v.re);
        }
        assert!(values[0].is_finite() && values[0] > 0.0);
        assert!((values[0] - values[1]).abs() <= 1e-13 * values[0]);
        // the default window leaves a visible inner tail and says so
        let l = GeoLattice::with_default_window(1.0, QParam::numeric(q).unwrap()).unwrap();
        let f = LatticeFn::from_fn(l, |x| q_gaussian(q, x)).unwrap();
        let (_, warnings) = qintegral_checked(&f).unwrap();
        assert!(warnings.iter().any(|w| w.code == "inner-tail"));
    }
}
