//! q-Fourier transforms between an x-lattice and a p-lattice, both evaluated
//! as Jackson sums against the kernel `E(ipx)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::series::QExpSeries;
use crate::error::{QError, Result};
use crate::fockspace::FockRealization;
use crate::qlattice::{weight, GeoLattice, LatticeFn, Sign, Warning};
use crate::qcore::QParam;
use crate::wavefun::{decay_report, ground_sym_decaying, DecayReport, DecayingSolution, GroundStateParams};

/// Inputs larger than this on their outermost shells draw a warning.
pub const BOUNDARY_TOLERANCE: f64 = 1e-8;

/// Precomputed kernel `E(ipx)`, rows indexed by x-lattice points and
/// columns by p-lattice points, both in lattice order.
#[derive(Clone, Debug)]
pub struct TransformPlan {
    x: GeoLattice,
    p: GeoLattice,
    series: QExpSeries,
    kernel: DMatrix<Complex64>,
    cancellation: f64,
}

/// A transform result with its warnings.
#[derive(Clone, Debug)]
pub struct Transformed {
    pub values: LatticeFn<Complex64>,
    pub warnings: Vec<Warning>,
}

fn weights(l: &GeoLattice) -> DVector<Complex64> {
    DVector::from_iterator(l.len(), l.points().map(|(_, k)| weight::<Complex64>(l, k)))
}

/// Zero extension of `f` to the larger window `target` of the same grid.
pub fn extend_zero(f: &LatticeFn<Complex64>, target: &GeoLattice) -> Result<LatticeFn<Complex64>> {
    if !f.lattice().is_subwindow_of(target) {
        return Err(QError::Boundary("function does not fit in the transform lattice".into()));
    }
    LatticeFn::tabulate(*target, |s, k| f.get(s, k).copied().unwrap_or_default())
}

fn edge_warnings(f: &LatticeFn<Complex64>, what: &str) -> Result<Vec<Warning>> {
    let l = f.lattice();
    let mut out = Vec::new();
    let outer = f.outer_magnitude();
    if outer > BOUNDARY_TOLERANCE {
        out.push(Warning::new(
            "boundary-decay",
            format!("|{what}| = {outer:.3e} on the outermost shell {}", l.kmin()),
        ));
    }
    let k = l.kmax();
    let inner = Sign::BOTH
        .iter()
        .map(|&s| f.at(s, k).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let q = l.qf();
    let tail = weight::<Complex64>(l, k).re * inner * q / (1.0 - q);
    if tail > BOUNDARY_TOLERANCE {
        out.push(Warning::new(
            "inner-tail",
            format!("omitted shells beyond {k} estimated at {tail:.3e}"),
        ));
    }
    Ok(out)
}

/// Largest kernel, in entries, a plan will tabulate.
pub const MAX_KERNEL_ENTRIES: usize = 20_000_000;

impl TransformPlan {
    pub fn new(x: GeoLattice, p: GeoLattice) -> Result<Self> {
        if x.q() != p.q() {
            return Err(QError::Domain("x and p lattices use different q".into()));
        }
        if x.len().saturating_mul(p.len()) > MAX_KERNEL_ENTRIES {
            return Err(QError::Domain(format!(
                "a {} x {} kernel exceeds {MAX_KERNEL_ENTRIES} entries; use smaller lattices or q further from 1",
                x.len(),
                p.len()
            )));
        }
        let series = QExpSeries::new(x.q())?;
        let xs: Vec<f64> = x.points().map(|(s, k)| x.x(s, k)).collect();
        let ps: Vec<f64> = p.points().map(|(s, k)| p.x(s, k)).collect();
        let rows = crate::parallel::install(|| {
            xs.par_iter()
                .map(|&xv| {
                    ps.iter()
                        .map(|&pv| series.eval_checked(Complex64::new(0.0, pv * xv)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let mut cancellation = 1.0f64;
        let kernel = DMatrix::from_fn(xs.len(), ps.len(), |i, j| {
            let v = rows[i][j];
            cancellation = cancellation.max(v.magnitude / v.value.norm().max(f64::MIN_POSITIVE));
            v.value
        });
        Ok(Self { x, p, series, kernel, cancellation })
    }

    pub fn x_lattice(&self) -> &GeoLattice {
        &self.x
    }

    pub fn p_lattice(&self) -> &GeoLattice {
        &self.p
    }

    pub fn series(&self) -> &QExpSeries {
        &self.series
    }

    pub fn kernel(&self) -> &DMatrix<Complex64> {
        &self.kernel
    }

    /// Largest `Σ|terms| / |E|` over the kernel.
    pub fn cancellation(&self) -> f64 {
        self.cancellation
    }

    /// `ψ(x) = ∫ E(ipx) φ(p) d_qp`. `phi` may live on a sub-window of the
    /// p-lattice; it is extended by zero.
    pub fn forward(&self, phi: &LatticeFn<Complex64>) -> Result<Transformed> {
        let warnings = edge_warnings(phi, "phi")?;
        let phi = extend_zero(phi, &self.p)?;
        let v = DVector::from_column_slice(phi.values()).component_mul(&weights(&self.p));
        let out = &self.kernel * v;
        Ok(Transformed {
            values: LatticeFn::new(self.x, out.iter().copied().collect())?,
            warnings,
        })
    }

    /// `φ(p) = ∫ E(-ipx) ψ(x) d_qx`, using `E(-ipx) = conj E(ipx)`.
    pub fn inverse(&self, psi: &LatticeFn<Complex64>) -> Result<Transformed> {
        let warnings = edge_warnings(psi, "psi")?;
        let psi = extend_zero(psi, &self.x)?;
        let v = DVector::from_column_slice(psi.values()).component_mul(&weights(&self.x));
        let out = self.kernel.adjoint() * v;
        Ok(Transformed {
            values: LatticeFn::new(self.p, out.iter().copied().collect())?,
            warnings,
        })
    }
}

fn max_diff(a: &LatticeFn<Complex64>, b: &LatticeFn<Complex64>) -> Result<f64> {
    Ok(a.zip_with(b, |u, v| u - v)?.max_abs())
}

/// `(D_x + λx) ψ` on the interior of the x-lattice.
fn annihilate_x(psi: &LatticeFn<Complex64>, lambda: f64) -> Result<LatticeFn<Complex64>> {
    let d = psi.d_sym()?;
    let l = *d.lattice();
    Ok(d.map(|s, k, v| v + lambda * l.x(s, k) * psi.get(s, k).expect("interior")))
}

/// `i(p φ + λ D_p φ)` on the interior of the p-lattice.
fn annihilate_p(phi: &LatticeFn<Complex64>, lambda: f64) -> Result<LatticeFn<Complex64>> {
    let d = phi.d_sym()?;
    let l = *d.lattice();
    let i = Complex64::i();
    Ok(d.map(|s, k, v| i * (l.x(s, k) * phi.get(s, k).expect("interior") + lambda * v)))
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwineReport {
    /// `max|lhs - rhs| / max(|lhs|, |rhs|)` over the x interior.
    pub residual: f64,
    pub warnings: Vec<Warning>,
}

/// Compares `(D_x + λx) F(φ)` with `F(i(p + λD_p)φ)`.
pub fn intertwine_check(phi: &LatticeFn<Complex64>, plan: &TransformPlan, lambda: f64) -> Result<IntertwineReport> {
    let phi = extend_zero(phi, plan.p_lattice())?;
    let fwd = plan.forward(&phi)?;
    let lhs = annihilate_x(&fwd.values, lambda)?;
    let rhs = plan.forward(&annihilate_p(&phi, lambda)?)?.values.restrict(lhs.lattice())?;
    let scale = lhs.max_abs().max(rhs.max_abs());
    let residual = if scale == 0.0 { 0.0 } else { max_diff(&lhs, &rhs)? / scale };
    Ok(IntertwineReport { residual, warnings: fwd.warnings })
}

/// Solution of `(p + λD_p)φ₀ = 0` on `p_lattice`: the decaying lattice
/// solution of the symmetric-derivative equation with coupling `1/λ`.
pub fn momentum_ground_state(lambda: f64, p_lattice: &GeoLattice) -> Result<DecayingSolution> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(QError::Decay(format!(
            "lambda = {lambda}: the momentum ground state does not decay"
        )));
    }
    let params = GroundStateParams::new(1.0 / lambda, p_lattice.q(), FockRealization::Sym)?;
    let phi0 = ground_sym_decaying(&params, p_lattice)?;
    let rep = decay_report(&phi0.values);
    if !rep.decays {
        return Err(QError::Decay(format!("momentum ground state is {:.3e} at the p boundary", rep.boundary)));
    }
    Ok(phi0)
}

/// Shells needed to span a factor `ratio` at step `q`.
fn shells(q: f64, ratio: f64) -> i32 {
    (ratio.ln() / (1.0 / q).ln()).ceil() as i32
}

fn check_coupling(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(QError::Domain(format!("lattice scale needs lambda > 0, got {lambda}")))
    }
}

/// Momentum lattice through `p0 = √λ`, reaching in to `1e-13·p0` and out to
/// where the momentum ground state has fallen below roundoff. Far out it
/// falls like `exp(-(ln p)²/ln(1/q))`, so coarse `q` needs a much longer
/// reach than the floor of `|p| = 20·p0`.
pub fn default_p_lattice(q: QParam, lambda: f64) -> Result<GeoLattice> {
    let qv = q.value().ok_or(QError::ModeMismatch)?;
    check_coupling(lambda)?;
    let reach = (74.0 * (1.0 / qv).ln()).sqrt().exp().max(20.0);
    GeoLattice::new(lambda.sqrt(), q, -shells(qv, reach), shells(qv, 1e13))
}

/// Position lattice through `x0 = 1/√λ`, reaching out to `|x| ≈ 1.5·x0` and
/// at least six shells in. With [`default_p_lattice`] every product `px` is
/// independent of `λ`.
pub fn default_x_lattice(q: QParam, lambda: f64) -> Result<GeoLattice> {
    let qv = q.value().ok_or(QError::ModeMismatch)?;
    check_coupling(lambda)?;
    let a = (1.5f64.ln() / (1.0 / qv).ln()).floor() as i32;
    GeoLattice::new(1.0 / lambda.sqrt(), q, -a, a.max(6))
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    /// `max|(D_x + λx)ψ| / max|ψ|` over the x interior, `ψ = F(φ₀)`.
    pub residual: f64,
    pub momentum_decay: DecayReport,
    /// Shell alternation of `φ₀` next to the origin.
    pub alternation: f64,
    pub warnings: Vec<Warning>,
}

/// Transforms the momentum ground state and measures how far the result is
/// from annihilation by `D_x + λx`.
pub fn ground_correspondence(lambda: f64, plan: &TransformPlan) -> Result<CorrespondenceReport> {
    let phi0 = momentum_ground_state(lambda, plan.p_lattice())?;
    let momentum_decay = decay_report(&phi0.values);
    let psi = plan.forward(&phi0.values)?;
    let res = annihilate_x(&psi.values, lambda)?;
    Ok(CorrespondenceReport {
        residual: res.max_abs() / psi.values.max_abs(),
        momentum_decay,
        alternation: phi0.alternation,
        warnings: psi.warnings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripReport {
    /// `max|F(F⁻¹ψ) - ψ| / max|ψ|`.
    pub identity_defect: f64,
    /// `max|F(F⁻¹ψ) - ∫δ_q(x,x′)ψ(x′)d_qx′|`, with the lattice kernel
    /// `δ_q(x,x′) = ∫E(ipx)E(-ipx′)d_qp` summed directly, divided by the
    /// largest sum of absolute terms. The two sides differ only in summation
    /// order, so this sits near machine epsilon whatever the kernel size.
    pub convolution_defect: f64,
}

pub fn round_trip(psi: &LatticeFn<Complex64>, plan: &TransformPlan) -> Result<RoundTripReport> {
    let psi = extend_zero(psi, plan.x_lattice())?;
    let back = plan.forward(&plan.inverse(&psi)?.values)?.values;
    let norm = psi.max_abs();
    if norm == 0.0 {
        return Ok(RoundTripReport { identity_defect: 0.0, convolution_defect: 0.0 });
    }
    let k = plan.kernel();
    let wp = weights(plan.p_lattice());
    let delta = DMatrix::from_fn(k.nrows(), k.nrows(), |i, j| {
        (0..k.ncols()).map(|c| wp[c] * k[(i, c)] * k[(j, c)].conj()).sum::<Complex64>()
    });
    let v = DVector::from_column_slice(psi.values()).component_mul(&weights(plan.x_lattice()));
    let conv = LatticeFn::new(*plan.x_lattice(), (delta * &v).iter().copied().collect())?;
    let col: Vec<f64> = (0..k.ncols()).map(|c| (0..k.nrows()).map(|j| k[(j, c)].norm() * v[j].norm()).sum()).collect();
    let scale = (0..k.nrows())
        .map(|i| (0..k.ncols()).map(|c| (wp[c] * k[(i, c)]).norm() * col[c]).sum::<f64>())
        .fold(norm, f64::max);
    Ok(RoundTripReport {
        identity_defect: max_diff(&back, &psi)? / norm,
        convolution_defect: max_diff(&back, &conv)? / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QParam;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q9() -> QParam {
        QParam::numeric(0.9).unwrap()
    }

    fn deep_plan() -> TransformPlan {
        let x = GeoLattice::new(1.0, q9(), -12, 30).unwrap();
        let p = GeoLattice::new(1.0, q9(), -35, 350).unwrap();
        TransformPlan::new(x, p).unwrap()
    }

    fn small_plan() -> TransformPlan {
        let x = GeoLattice::new(1.0, q9(), -5, 10).unwrap();
        let p = GeoLattice::new(1.0, q9(), -20, 40).unwrap();
        TransformPlan::new(x, p).unwrap()
    }

    #[test]
    fn kernel_matches_fresh_series() {
        let plan = small_plan();
        let (xl, pl) = (*plan.x_lattice(), *plan.p_lattice());
        for (i, (sx, kx)) in xl.points().enumerate().step_by(7) {
            for (j, (sp, kp)) in pl.points().enumerate().step_by(11) {
                let z = Complex64::new(0.0, xl.x(sx, kx) * pl.x(sp, kp));
                let fresh = plan.series().eval(z);
                assert!((plan.kernel()[(i, j)] - fresh).norm() <= 1e-14 * fresh.norm().max(1.0));
            }
        }
    }

    #[test]
    fn zero_and_parity() {
        let plan = small_plan();
        let zero = LatticeFn::zeros(*plan.p_lattice()).unwrap();
        assert_eq!(plan.forward(&zero).unwrap().values.max_abs(), 0.0);
        let zero_x = LatticeFn::zeros(*plan.x_lattice()).unwrap();
        assert_eq!(plan.inverse(&zero_x).unwrap().values.max_abs(), 0.0);

        let even = LatticeFn::from_fn(*plan.p_lattice(), |p| Complex64::new((-p * p).exp(), 0.0)).unwrap();
        let psi = plan.forward(&even).unwrap().values;
        assert!(max_diff(&psi, &psi.reflect()).unwrap() <= 1e-14 * psi.max_abs());
        // the odd sine part cancels, leaving a real result
        assert!(psi.values().iter().all(|v| v.im.abs() <= 1e-14 * psi.max_abs()));
    }

    #[test]
    fn transforms_are_linear() {
        let plan = small_plan();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut random = |l: GeoLattice| {
            let v = (0..l.len()).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            LatticeFn::new(l, v).unwrap()
        };
        let (a, b) = (Complex64::new(0.7, -0.2), Complex64::new(-1.3, 0.4));
        for _ in 0..5 {
            let (u, v) = (random(*plan.x_lattice()), random(*plan.x_lattice()));
            let mix = u.zip_with(&v, |s, t| a * s + b * t).unwrap();
            let lhs = plan.inverse(&mix).unwrap().values;
            let fu = plan.inverse(&u).unwrap().values;
            let fv = plan.inverse(&v).unwrap().values;
            let rhs = fu.zip_with(&fv, |s, t| a * s + b * t).unwrap();
            assert!(max_diff(&lhs, &rhs).unwrap() <= 1e-13 * lhs.max_abs().max(1.0));

            let (u, v) = (random(*plan.p_lattice()), random(*plan.p_lattice()));
            let mix = u.zip_with(&v, |s, t| a * s + b * t).unwrap();
            let lhs = plan.forward(&mix).unwrap().values;
            let fu = plan.forward(&u).unwrap().values;
            let fv = plan.forward(&v).unwrap().values;
            let rhs = fu.zip_with(&fv, |s, t| a * s + b * t).unwrap();
            assert!(max_diff(&lhs, &rhs).unwrap() <= 1e-13 * lhs.max_abs().max(1.0));
        }
    }

    #[test]
    fn intertwining_on_a_gaussian() {
        let plan = deep_plan();
        let phi = LatticeFn::from_fn(*plan.p_lattice(), |p| Complex64::new((-p * p).exp(), 0.0)).unwrap();
        let rep = intertwine_check(&phi, &plan, 1.0).unwrap();
        assert!(rep.residual <= 1e-8, "{rep:?}");
        assert!(rep.warnings.is_empty(), "{rep:?}");
        let zero = LatticeFn::zeros(*plan.p_lattice()).unwrap();
        assert_eq!(intertwine_check(&zero, &plan, 1.0).unwrap().residual, 0.0);
    }

    #[test]
    fn intertwining_fails_without_decay() {
        let plan = small_plan();
        let one = LatticeFn::from_fn(*plan.p_lattice(), |_| Complex64::new(1.0, 0.0)).unwrap();
        let rep = intertwine_check(&one, &plan, 1.0).unwrap();
        assert!(rep.residual > 1e-2, "{rep:?}");
        assert!(rep.warnings.iter().any(|w| w.code == "boundary-decay"));
    }

    #[test]
    fn ground_states_correspond() {
        let plan = deep_plan();
        let rep = ground_correspondence(1.0, &plan).unwrap();
        assert!(rep.residual <= 1e-6, "{rep:?}");
        assert!(matches!(ground_correspondence(0.0, &plan), Err(QError::Decay(_))));
    }

    #[test]
    fn round_trip_is_a_delta_convolution() {
        let plan = small_plan();
        let psi = LatticeFn::from_fn(*plan.x_lattice(), |x| Complex64::new((-x * x).exp(), 0.0)).unwrap();
        let rep = round_trip(&psi, &plan).unwrap();
        assert!(rep.convolution_defect <= 1e-12, "{rep:?}");
        assert!(rep.identity_defect > rep.convolution_defect);
    }
}
