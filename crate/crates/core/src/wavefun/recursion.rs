//! The three-point relation `ψ(qx) - ψ(q⁻¹x) = K′x²ψ(x)` on a lattice branch,
//! solved by marching shell to shell.

use num_complex::Complex64;
use serde::Serialize;

use super::product::{evaluate, GroundStateParams, ProductState};
use crate::error::{QError, Result};
use crate::fockspace::FockRealization;
use crate::qlattice::{GeoLattice, LatticeFn, Sign};

/// Largest `|K′|x²` accepted at the innermost seed shells.
pub const SEED_TOLERANCE: f64 = 1e-12;

const RESCALE_AT: f64 = 1e150;

fn require_sym(params: &GroundStateParams) -> Result<()> {
    if params.realization == FockRealization::Sym {
        Ok(())
    } else {
        Err(QError::Domain("the three-point relation belongs to the sym realization".into()))
    }
}

/// `|ψ(qx) - ψ(q⁻¹x) - K′x²ψ(x)|` at every interior shell, `+` branch,
/// ascending `k`, as `(x, residual)`.
pub fn threepoint_profile(psi: &LatticeFn<Complex64>, k_prime: f64) -> Result<Vec<(f64, f64)>> {
    let l = *psi.lattice();
    let mut out = Vec::new();
    for k in l.kmin() + 1..l.kmax() {
        let x = l.x(Sign::Plus, k);
        let r = psi.at(Sign::Plus, k + 1)? - psi.at(Sign::Plus, k - 1)? - k_prime * x * x * psi.at(Sign::Plus, k)?;
        out.push((x, r.norm()));
    }
    Ok(out)
}

/// Largest three-point residual of a product state. Diagnostic only.
pub fn residual_sym_threepoint(state: &ProductState) -> Result<f64> {
    require_sym(state.params())?;
    let prof = threepoint_profile(state.values(), state.params().k_prime())?;
    Ok(prof.into_iter().map(|(_, r)| r).fold(0.0, f64::max))
}

/// Three-point residual of the product form at a single `x`.
pub fn threepoint_at(params: &GroundStateParams, x: f64) -> Result<f64> {
    require_sym(params)?;
    let q = params.q;
    let f = |y: f64| evaluate(params, y).map(|e| e.value);
    Ok((f(q * x)? - f(x / q)? - params.k_prime() * x * x * f(x)?).abs())
}

/// Exact lattice solution of the three-point relation seeded with `ψ = 1`
/// on the two innermost shells and marched outward.
pub fn ground_sym_oracle(params: &GroundStateParams, lattice: &GeoLattice) -> Result<LatticeFn<Complex64>> {
    require_sym(params)?;
    if lattice.shells() < 2 {
        return Err(QError::Seed("need two seed shells".into()));
    }
    let kp = params.k_prime();
    let seed = kp.abs() * lattice.abs_x(lattice.kmax() - 1).powi(2);
    if seed > SEED_TOLERANCE {
        return Err(QError::Seed(format!(
            "|K'|x² = {seed:.3e} at the seed shells; deepen the lattice"
        )));
    }
    let n = lattice.shells();
    let mut branch = vec![1.0f64; n];
    // index i ↔ shell kmin + i; march i = n-2 down to 1
    for i in (1..n - 1).rev() {
        let x = lattice.abs_x(lattice.kmin() + i as i32);
        branch[i - 1] = branch[i + 1] - kp * x * x * branch[i];
        if !branch[i - 1].is_finite() {
            return Err(QError::NonFinite(format!("oracle at shell {}", lattice.kmin() + i as i32 - 1)));
        }
    }
    LatticeFn::tabulate(*lattice, |_, k| Complex64::new(branch[(k - lattice.kmin()) as usize], 0.0))
}

/// Largest relative error when each oracle step is inverted, i.e.
/// `ψ(qx)` recomputed from `ψ(q⁻¹x)` and `ψ(x)`.
pub fn oracle_inversion_error(oracle: &LatticeFn<Complex64>, k_prime: f64) -> Result<f64> {
    let l = *oracle.lattice();
    let mut worst = 0.0f64;
    for k in l.kmin() + 1..l.kmax() {
        let x = l.abs_x(k);
        let outer = oracle.at(Sign::Plus, k - 1)?.re;
        let mid = k_prime * x * x * oracle.at(Sign::Plus, k)?.re;
        let inner = oracle.at(Sign::Plus, k + 1)?.re;
        let scale = outer.abs().max(mid.abs()).max(inner.abs());
        worst = worst.max(((outer + mid) - inner).abs() / scale);
    }
    Ok(worst)
}

/// The solution of the three-point relation that decays at large `|x|`.
#[derive(Clone, Debug)]
pub struct DecayingSolution {
    pub values: LatticeFn<Complex64>,
    /// `|ψ(x_in) - ψ(x_in/q)| / |ψ(x_in)|` on the two innermost shells:
    /// the size of the shell-alternating component near the origin.
    pub alternation: f64,
}

/// Marches the three-point relation inward from `ψ = 0, 1` on the two
/// outermost shells and normalizes so that `ψ → 1` at the origin.
///
/// Inward marching suppresses the solution that grows at large `|x|`.
pub fn ground_sym_decaying(params: &GroundStateParams, lattice: &GeoLattice) -> Result<DecayingSolution> {
    require_sym(params)?;
    let n = lattice.shells();
    if n < 3 {
        return Err(QError::Seed("need at least three shells".into()));
    }
    let kp = params.k_prime();
    let mut branch = vec![0.0f64; n];
    branch[1] = 1.0;
    for i in 1..n - 1 {
        let x = lattice.abs_x(lattice.kmin() + i as i32);
        branch[i + 1] = branch[i - 1] + kp * x * x * branch[i];
        if branch[i + 1].abs() > RESCALE_AT {
            let s = branch[i + 1].abs();
            branch[..=i + 1].iter_mut().for_each(|v| *v /= s);
        }
    }
    let q = params.q;
    let x_in = lattice.abs_x(lattice.kmax());
    // ψ ≈ ψ(0)(1 - λx²/[2]) near the origin
    let at_origin = branch[n - 1] / (1.0 - params.lambda * x_in * x_in / (q + 1.0 / q));
    if at_origin == 0.0 || !at_origin.is_finite() {
        return Err(QError::NonFinite("decaying solution vanishes at the origin".into()));
    }
    branch.iter_mut().for_each(|v| *v /= at_origin);
    let alternation = (branch[n - 1] - branch[n - 2]).abs() / branch[n - 1].abs();
    let values = LatticeFn::tabulate(*lattice, |_, k| Complex64::new(branch[(k - lattice.kmin()) as usize], 0.0))?;
    Ok(DecayingSolution { values, alternation })
}

/// Shape of `|ψ|` along the lattice, branch by branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    pub decays: bool,
    /// `|ψ|` on the outermost shell.
    pub boundary: f64,
    /// Innermost shell from which `|ψ|` is non-increasing all the way out.
    pub tail_start: i32,
}

/// Threshold for the boundary value in [`decay_report`].
pub const BOUNDARY_TOLERANCE: f64 = 1e-8;

/// `|ψ|` is non-increasing from some shell outward, that shell holds at
/// least half the peak magnitude, and the outermost value is below
/// [`BOUNDARY_TOLERANCE`]. For the sym product the tail starts past the
/// last pole, where `|1 - L|` exceeds one.
pub fn decay_report(psi: &LatticeFn<Complex64>) -> DecayReport {
    let l = *psi.lattice();
    let mut decays = true;
    let mut boundary = 0.0f64;
    let mut tail_start = l.kmax();
    for s in Sign::BOTH {
        let mag = |k: i32| psi.get(s, k).map_or(0.0, |v| v.norm());
        let peak = (l.kmin()..=l.kmax()).map(mag).fold(0.0, f64::max);
        let mut start = l.kmin();
        while start < l.kmax() && mag(start) <= mag(start + 1) {
            start += 1;
        }
        tail_start = tail_start.min(start);
        boundary = boundary.max(mag(l.kmin()));
        decays &= peak > 0.0 && mag(start) >= 0.5 * peak && mag(l.kmin()) < mag(start);
    }
    decays &= boundary < BOUNDARY_TOLERANCE;
    DecayReport { decays, boundary, tail_start }
}

pub fn decay_check(state: &ProductState) -> bool {
    decay_report(state.values()).decays
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QParam;

    fn params(lambda: f64, q: f64, r: FockRealization) -> GroundStateParams {
        GroundStateParams::new(lambda, QParam::numeric(q).unwrap(), r).unwrap()
    }

    fn deep(q: f64) -> GeoLattice {
        GeoLattice::new(1.0, QParam::numeric(q).unwrap(), -40, 160).unwrap()
    }

    #[test]
    fn oracle_is_constant_without_coupling() {
        let p = params(0.0, 0.9, FockRealization::Sym);
        let o = ground_sym_oracle(&p, &deep(0.9)).unwrap();
        assert!(o.values().iter().all(|v| *v == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn oracle_needs_depth() {
        let p = params(1.0, 0.9, FockRealization::Sym);
        let shallow = GeoLattice::with_default_window(1.0, p.qparam()).unwrap();
        assert!(matches!(ground_sym_oracle(&p, &shallow), Err(QError::Seed(_))));
    }

    #[test]
    fn oracle_solves_the_threepoint_relation() {
        let p = params(1.0, 0.9, FockRealization::Sym);
        let o = ground_sym_oracle(&p, &deep(0.9)).unwrap();
        let rel = threepoint_profile(&o, p.k_prime())
            .unwrap()
            .into_iter()
            .map(|(x, r)| r / o.get(Sign::Plus, 0).unwrap().norm().max(1.0) / x.max(1.0).powi(2))
            .fold(0.0, f64::max);
        assert!(rel <= 1e-12, "{rel}");
        assert!(oracle_inversion_error(&o, p.k_prime()).unwrap() <= 1e-12);
        assert_eq!(o.values()[o.lattice().shells() - 1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn threepoint_residual_vanishes_near_origin() {
        let p = params(1.0, 0.9, FockRealization::Sym);
        let a = threepoint_at(&p, 1e-3).unwrap();
        let b = threepoint_at(&p, 0.5).unwrap();
        // the residual falls off like x² but is not zero
        assert!(a < 1e-5 && a < b);
    }

    #[test]
    fn decaying_solution_decays_and_starts_at_one() {
        let p = params(1.0, 0.9, FockRealization::Sym);
        let d = ground_sym_decaying(&p, &deep(0.9)).unwrap();
        let rep = decay_report(&d.values);
        assert!(rep.decays, "{rep:?}");
        let inner = d.values.at(Sign::Plus, 160).unwrap().re;
        assert!((inner - 1.0).abs() < 1e-10);
        let prof = threepoint_profile(&d.values, p.k_prime()).unwrap();
        assert!(prof.iter().all(|(_, r)| *r <= 1e-12));
    }

    #[test]
    fn decay_checks() {
        let q = QParam::numeric(0.5).unwrap();
        let l = GeoLattice::new(1.0, q, -10, 30).unwrap();
        let st = ProductState::build(params(1.0, 0.5, FockRealization::Asym), l).unwrap();
        assert!(decay_check(&st));
        let flat = ProductState::build(params(0.0, 0.5, FockRealization::Asym), l).unwrap();
        assert!(!decay_check(&flat));

        let l = GeoLattice::new(1.0, QParam::numeric(0.9).unwrap(), -40, 60).unwrap();
        let one = ProductState::build(params(1.0, 0.9, FockRealization::Asym), l).unwrap();
        let five = ProductState::build(params(5.0, 0.9, FockRealization::Asym), l).unwrap();
        assert!(decay_check(&one) && decay_check(&five));
        for k in -40..60 {
            assert!(five.value(Sign::Plus, k).unwrap() < one.value(Sign::Plus, k).unwrap());
        }
    }
}
