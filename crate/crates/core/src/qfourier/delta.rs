//! The finite-cutoff q-delta function and its localization profile.

use num_complex::Complex64;
use serde::Serialize;

use super::series::QExpSeries;
use crate::error::{QError, Result};
use crate::qcore::QParam;
use crate::qlattice::{qintegral, telescoped_boundary, weight, GeoLattice, LatticeFn, Sign};

/// Root of `sin u / u = 1/2`; the classical profile `2 sin(Px)/x` falls to
/// half its peak at `x = HALF_WIDTH_ROOT / P`.
pub const HALF_WIDTH_ROOT: f64 = 1.895_494_267_033_981;

/// Cutoff momentum `P = p0·q^(-m)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeltaSpec {
    pub p0: f64,
    pub m: i32,
    pub q: f64,
}

impl DeltaSpec {
    pub fn new(p: f64, q: QParam) -> Result<Self> {
        Self::from_exponent(p, q, 0)
    }

    pub fn from_exponent(p0: f64, q: QParam, m: i32) -> Result<Self> {
        let q = q.value().ok_or(QError::ModeMismatch)?;
        if !(p0.is_finite() && p0 > 0.0) {
            return Err(QError::Domain(format!("cutoff scale must be positive, got {p0}")));
        }
        Ok(Self { p0, m, q })
    }

    pub fn p(&self) -> f64 {
        self.p0 * self.q.powi(-self.m)
    }

    pub fn qparam(&self) -> QParam {
        QParam::Numeric(self.q)
    }

    /// The p-lattice whose outermost shell is `P`, running inward to `kmax`.
    pub fn lattice(&self, kmax: i32) -> Result<GeoLattice> {
        GeoLattice::new(self.p0, self.qparam(), -self.m, kmax)
    }
}

/// `(E(iPx)E(-iqPx′) - E(-iPx)E(iqPx′)) / (i(x - x′))`.
///
/// At `x = x′ = 0` the limit is `2P`. At `x = x′ ≠ 0` the numerator is
/// `2i·Im(E(iPx)E(-iqPx))`, which is nonzero for `q < 1`, so the pole is not
/// removable and an error is returned.
pub fn delta_q(x: f64, xprime: f64, spec: &DeltaSpec) -> Result<Complex64> {
    if x == xprime {
        return if x == 0.0 {
            Ok(Complex64::new(2.0 * spec.p(), 0.0))
        } else {
            Err(QError::DeltaPole(x))
        };
    }
    let e = QExpSeries::new(spec.qparam())?;
    let (p, q) = (spec.p(), spec.q);
    let i = Complex64::i();
    let a = e.eval_checked(i * p * x)?.value * e.eval_checked(-i * q * p * xprime)?.value;
    let b = e.eval_checked(-i * p * x)?.value * e.eval_checked(i * q * p * xprime)?.value;
    Ok((a - b) / (i * (x - xprime)))
}

/// Both sides of the finite-window identities behind the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryReport {
    /// `|∫ D_p G - boundary(G)|` with `G = E(ipx)E(-ipx′)`.
    pub telescoping: f64,
    /// `|boundary(G) - i(x - x″)∫H - edges|` with `H = E(ipx)E(-ipx″)`.
    pub rearranged: f64,
    pub boundary: Complex64,
}

impl BoundaryReport {
    pub fn max(&self) -> f64 {
        self.telescoping.max(self.rearranged)
    }
}

/// Checks the telescoping identity for `G(p) = E(ipx)E(-ipx′)` on the
/// p-window, and its rearrangement with `x″ = x′/q`.
///
/// The substitution `p′ = qp` moves the first Leibniz term one shell inward,
/// so on a finite window the rearranged form is
/// `i(x-x″)∫_{[kmin+2,kmax-1]} H + w(kmax)(-ix″)ΣH(±p_kmax) + w(kmin+1)(ix)ΣH(±p_kmin+1)`.
/// Residuals are measured relative to `max(1, |boundary|)`.
pub fn boundary_identity_check(x: f64, xprime: f64, lattice: &GeoLattice) -> Result<BoundaryReport> {
    boundary_identity_check_with(x, xprime, xprime / lattice.qf(), lattice)
}

/// As [`boundary_identity_check`] with an explicit `x″`. Any value other
/// than `x′/q` breaks the rearrangement.
pub fn boundary_identity_check_with(x: f64, xprime: f64, xdd: f64, lattice: &GeoLattice) -> Result<BoundaryReport> {
    let zero = Complex64::new(0.0, 0.0);
    if lattice.shells() < 4 {
        return Ok(BoundaryReport { telescoping: 0.0, rearranged: 0.0, boundary: zero });
    }
    let e = QExpSeries::new(lattice.q())?;
    let i = Complex64::i();
    let g = LatticeFn::from_fn(*lattice, |p| e.eval(i * p * x) * e.eval(-i * p * xprime))?;
    let h = LatticeFn::from_fn(*lattice, |p| e.eval(i * p * x) * e.eval(-i * p * xdd))?;
    let boundary = telescoped_boundary(&g)?;
    let integral = qintegral(&g.d_sym()?)?;

    let (kmin, kmax) = (lattice.kmin(), lattice.kmax());
    let pair = |k: i32| -> Result<Complex64> { Ok(h.at(Sign::Plus, k)? + h.at(Sign::Minus, k)?) };
    let middle = if kmin + 2 <= kmax - 1 {
        qintegral(&h.restrict(&lattice.window(kmin + 2, kmax - 1)?)?)?
    } else {
        zero
    };
    let w = |k: i32| weight::<Complex64>(lattice, k);
    let rearranged = i * (x - xdd) * middle + w(kmax) * (-i * xdd) * pair(kmax)? + w(kmin + 1) * (i * x) * pair(kmin + 1)?;

    let scale = boundary.norm().max(1.0);
    Ok(BoundaryReport {
        telescoping: (integral - boundary).norm() / scale,
        rearranged: (rearranged - boundary).norm() / scale,
        boundary,
    })
}

/// `|δ_q(x, 0)|` on a grid with its shape summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalizationProfile {
    pub q: f64,
    pub p: f64,
    /// `(x, |δ_q(x,0)|, 2 sin(Px)/x)`.
    pub rows: Vec<(f64, f64, f64)>,
    pub peak: f64,
    pub half_width: Option<f64>,
    pub first_zero: Option<f64>,
}

fn crossing(x0: f64, x1: f64, f0: f64, f1: f64) -> f64 {
    x0 + (x1 - x0) * f0 / (f0 - f1)
}

/// `grid` must hold increasing positive `x`. The half width and first zero
/// are linearly interpolated between grid points.
pub fn localization_profile(spec: &DeltaSpec, grid: &[f64]) -> Result<LocalizationProfile> {
    let p = spec.p();
    let peak = delta_q(0.0, 0.0, spec)?.re;
    let mut rows = Vec::with_capacity(grid.len());
    let mut signed = Vec::with_capacity(grid.len());
    for &x in grid {
        let d = delta_q(x, 0.0, spec)?;
        rows.push((x, d.norm(), 2.0 * (p * x).sin() / x));
        signed.push(d.re);
    }
    let mut half_width = None;
    let mut first_zero = None;
    let (mut xp, mut fp) = (0.0, peak);
    for (&x, &f) in grid.iter().zip(&signed) {
        if half_width.is_none() && f.abs() <= peak / 2.0 {
            half_width = Some(crossing(xp, x, fp.abs() - peak / 2.0, f.abs() - peak / 2.0));
        }
        if first_zero.is_none() && f.signum() != fp.signum() {
            first_zero = Some(crossing(xp, x, fp, f));
        }
        (xp, fp) = (x, f);
    }
    Ok(LocalizationProfile { q: spec.q, p, rows, peak, half_width, first_zero })
}

/// `max |δ_q(x+a, a) - δ_q(x, 0)|` over grid points with `x ≠ 0`.
pub fn translation_probe(spec: &DeltaSpec, a: f64, grid: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &x in grid.iter().filter(|&&x| x != 0.0) {
        worst = worst.max((delta_q(x + a, a, spec)? - delta_q(x, 0.0, spec)?).norm());
    }
    Ok(worst)
}

/// `sup|δ_q(x′+d, x′) - 2 sin(Pd)/d| / sup|2 sin(Pd)/d|` over offsets `d`.
pub fn dirac_distance(spec: &DeltaSpec, xprime: f64, offsets: &[f64]) -> Result<f64> {
    let p = spec.p();
    let (mut diff, mut norm) = (0.0f64, 0.0f64);
    for &d in offsets {
        let classical = 2.0 * (p * d).sin() / d;
        diff = diff.max((delta_q(xprime + d, xprime, spec)? - classical).norm());
        norm = norm.max(classical.abs());
    }
    Ok(diff / norm)
}

/// `±d` for `n` evenly spaced `d` in `[lo, hi]`.
pub fn symmetric_offsets(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n.max(2) - 1) as f64;
    (0..n).map(|j| lo + step * j as f64).flat_map(|d| [-d, d]).collect()
}
