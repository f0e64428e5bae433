use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{QError, Result};
use crate::fockspace::FockRealization;
use crate::qcore::QParam;
use crate::qlattice::{GeoLattice, LatticeFn, Sign};

/// Truncation target for the log of the omitted product tail.
pub const TAIL_TOLERANCE: f64 = 1e-14;

/// Factors closer than this to zero are reported as poles.
pub const POLE_TOLERANCE: f64 = 1e-6;

const MAX_FACTORS: usize = 1 << 20;

/// Cap on lattice points times estimated factors per point when tabulating.
pub const MAX_PRODUCT_WORK: f64 = 1e9;

/// Rejects tabulations whose points times estimated factors per point
/// exceed [`MAX_PRODUCT_WORK`].
pub fn check_product_work(params: &GroundStateParams, lattice: &GeoLattice) -> Result<()> {
    let cmax = lattice.points().map(|(s, k)| params.factor_coefficient(lattice.x(s, k)).abs()).fold(0.0, f64::max);
    let per_point = ((cmax / TAIL_TOLERANCE).ln() / (2.0 * (1.0 / params.q).ln())).max(1.0);
    if per_point * lattice.len() as f64 > MAX_PRODUCT_WORK {
        return Err(QError::Domain(format!(
            "tabulating {} points with about {per_point:.0} factors each exceeds the work limit; use a smaller lattice or q further from 1",
            lattice.len()
        )));
    }
    Ok(())
}

/// Ground-state parameters. Only the ratio `lambda = α⁻¹β` enters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroundStateParams {
    pub lambda: f64,
    pub q: f64,
    pub realization: FockRealization,
}

impl GroundStateParams {
    /// `lambda = 0` is accepted as the decoupled case `ψ ≡ 1`.
    pub fn new(lambda: f64, q: QParam, realization: FockRealization) -> Result<Self> {
        let q = q.value().ok_or(QError::ModeMismatch)?;
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(QError::Domain(format!("lambda must be non-negative, got {lambda}")));
        }
        Ok(Self { lambda, q, realization })
    }

    /// Same parameters with an arbitrary real `lambda`, including the
    /// wrong-sign states used as negative controls.
    pub fn with_raw_lambda(self, lambda: f64) -> Self {
        Self { lambda, ..self }
    }

    pub fn qparam(&self) -> QParam {
        QParam::Numeric(self.q)
    }

    /// `c` in the factor `1 + c·q^{2s}`: `K = (1-q)λx²` for Asym,
    /// `-L = -q³λx²/(1+q²)` for Sym.
    pub fn factor_coefficient(&self, x: f64) -> f64 {
        let q = self.q;
        match self.realization {
            FockRealization::Asym => (1.0 - q) * self.lambda * x * x,
            FockRealization::Sym => -q.powi(3) * self.lambda * x * x / (1.0 + q * q),
        }
    }

    /// `K′ = (q⁻¹ - q)λ`.
    pub fn k_prime(&self) -> f64 {
        (1.0 / self.q - self.q) * self.lambda
    }
}

/// One product evaluation with its truncation metadata.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub factors: usize,
    pub tail_bound: f64,
}

/// Bound on `|log ∏_{s≥n}(1 + c q^{2s})|`, or infinity when the first
/// omitted factor is not yet small.
fn tail_bound(c: f64, q: f64, n: usize) -> f64 {
    let r = c.abs() * q.powi(2 * n as i32);
    if r >= 0.5 {
        return f64::INFINITY;
    }
    r / ((1.0 - q * q) * (1.0 - r))
}

fn product(c: f64, q: f64, x: f64, fixed: Option<usize>) -> Result<Evaluation> {
    let mut prod = 1.0f64;
    let mut s = 0usize;
    loop {
        let bound = tail_bound(c, q, s);
        let done = match fixed {
            Some(n) => s >= n,
            None => bound <= TAIL_TOLERANCE,
        };
        if done {
            let value = if prod.is_infinite() { 0.0 } else { 1.0 / prod };
            if !value.is_finite() {
                return Err(QError::NonFinite(format!("product at x = {x}")));
            }
            return Ok(Evaluation { value, factors: s, tail_bound: bound });
        }
        if s >= MAX_FACTORS {
            return Err(QError::Domain(format!("product at x = {x} did not converge")));
        }
        let f = 1.0 + c * q.powi(2 * s as i32);
        if f.abs() < POLE_TOLERANCE {
            return Err(QError::Pole { s, x });
        }
        prod *= f;
        s += 1;
    }
}

/// `∏(1 + c(x) q^{2s})⁻¹`, truncated once the tail bound drops below
/// [`TAIL_TOLERANCE`].
pub fn evaluate(params: &GroundStateParams, x: f64) -> Result<Evaluation> {
    product(params.factor_coefficient(x), params.q, x, None)
}

/// The partial product with exactly `factors` factors, no tail control.
pub fn partial_product(params: &GroundStateParams, x: f64, factors: usize) -> Result<f64> {
    product(params.factor_coefficient(x), params.q, x, Some(factors)).map(|e| e.value)
}

fn require(params: &GroundStateParams, r: FockRealization) -> Result<()> {
    if params.realization == r {
        Ok(())
    } else {
        Err(QError::Domain(format!(
            "{r} ground state requested with {} parameters",
            params.realization
        )))
    }
}

/// `∏(1 + K q^{2s})⁻¹`, `K = (1-q)λx²`.
pub fn ground_asym(x: f64, params: &GroundStateParams) -> Result<f64> {
    require(params, FockRealization::Asym)?;
    evaluate(params, x).map(|e| e.value)
}

/// `∏(1 - L q^{2s})⁻¹`, `L = q³λx²/(1+q²)`.
pub fn ground_sym(x: f64, params: &GroundStateParams) -> Result<f64> {
    require(params, FockRealization::Sym)?;
    evaluate(params, x).map(|e| e.value)
}

/// A product ground state tabulated on a lattice.
#[derive(Clone, Debug)]
pub struct ProductState {
    params: GroundStateParams,
    values: LatticeFn<Complex64>,
    factors: Vec<usize>,
    tail_bounds: Vec<f64>,
}

impl ProductState {
    pub fn build(params: GroundStateParams, lattice: GeoLattice) -> Result<Self> {
        if lattice.q() != params.qparam() {
            return Err(QError::Domain("lattice and state use different q".into()));
        }
        check_product_work(&params, &lattice)?;
        let points: Vec<_> = lattice.points().collect();
        let evals = crate::parallel::install(|| {
            points
                .into_par_iter()
                .map(|(s, k)| evaluate(&params, lattice.x(s, k)))
                .collect::<Result<Vec<_>>>()
        })?;
        let values = evals.iter().map(|e| Complex64::new(e.value, 0.0)).collect();
        Ok(Self {
            params,
            values: LatticeFn::new(lattice, values)?,
            factors: evals.iter().map(|e| e.factors).collect(),
            tail_bounds: evals.iter().map(|e| e.tail_bound).collect(),
        })
    }

    pub fn params(&self) -> &GroundStateParams {
        &self.params
    }

    pub fn lattice(&self) -> &GeoLattice {
        self.values.lattice()
    }

    pub fn values(&self) -> &LatticeFn<Complex64> {
        &self.values
    }

    pub fn value(&self, sign: Sign, k: i32) -> Result<f64> {
        self.values.at(sign, k).map(|v| v.re)
    }

    /// Largest number of factors used at any cached point.
    pub fn truncation(&self) -> usize {
        self.factors.iter().copied().max().unwrap_or(0)
    }

    pub fn max_tail_bound(&self) -> f64 {
        self.tail_bounds.iter().copied().fold(0.0, f64::max)
    }

    /// Largest change of a cached value when each point is recomputed with
    /// twice its factor count, relative to `max(1, |ψ|)`.
    pub fn doubling_change(&self) -> Result<f64> {
        let l = *self.lattice();
        let mut worst = 0.0f64;
        for (i, (s, k)) in l.points().enumerate() {
            let doubled = partial_product(&self.params, l.x(s, k), 2 * self.factors[i].max(1))?;
            let v = self.values.values()[i].re;
            worst = worst.max((doubled - v).abs() / v.abs().max(1.0));
        }
        Ok(worst)
    }

    /// Largest relative violation of the two-point relation
    /// `ψ(qx) = (1 + c(x))ψ(x)` over shells that have an inner neighbour.
    pub fn two_point_violation(&self) -> Result<f64> {
        let l = *self.lattice();
        let mut worst = 0.0f64;
        for s in Sign::BOTH {
            for k in l.kmin()..l.kmax() {
                let here = self.value(s, k)?;
                let inner = self.value(s, k + 1)?;
                let rhs = (1.0 + self.params.factor_coefficient(l.x(s, k))) * here;
                let scale = inner.abs().max(rhs.abs());
                if scale > 0.0 {
                    worst = worst.max((inner - rhs).abs() / scale);
                }
            }
        }
        Ok(worst)
    }
}

/// `max |λxψ + D^qψ| / max|ψ|` over points with `|x| ≤ xmax`.
///
/// Near the origin the difference quotient carries roundoff of order
/// `ε/((1-q)|x|)`, so the lattice should stop well short of it.
pub fn residual_asym_values(psi: &LatticeFn<Complex64>, lambda: f64, xmax: f64) -> Result<f64> {
    let l = *psi.lattice();
    let norm = psi.max_abs();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for s in Sign::BOTH {
        for k in l.kmin()..l.kmax() {
            let x = l.x(s, k);
            if x.abs() > xmax {
                continue;
            }
            let r = lambda * x * psi.at(s, k)? + psi.d_asym_at(s, k)?;
            worst = worst.max(r.norm());
        }
    }
    Ok(worst / norm)
}

pub fn residual_asym(state: &ProductState, xmax: f64) -> Result<f64> {
    require(state.params(), FockRealization::Asym)?;
    residual_asym_values(state.values(), state.params().lambda, xmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(lambda: f64, q: f64, r: FockRealization) -> GroundStateParams {
        GroundStateParams::new(lambda, QParam::numeric(q).unwrap(), r).unwrap()
    }

    #[test]
    fn normalized_at_origin() {
        for r in FockRealization::BOTH {
            let p = params(1.0, 0.7, r);
            assert_eq!(evaluate(&p, 0.0).unwrap().value, 1.0);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let q = QParam::numeric(0.5).unwrap();
        assert!(GroundStateParams::new(-1.0, q, FockRealization::Asym).is_err());
        assert!(GroundStateParams::new(1.0, QParam::Formal, FockRealization::Asym).is_err());
        let p = params(1.0, 0.5, FockRealization::Sym);
        assert!(ground_asym(1.0, &p).is_err());
    }

    #[test]
    fn matches_forty_factor_partial_product() {
        // the omitted tail after 40 factors is below |c| q^80 / (1 - q²)
        let p = params(1.0, 0.5, FockRealization::Asym);
        let brute: f64 = (0..40).map(|s| 1.0 / (1.0 + 0.5 * 0.25f64.powi(s))).product();
        // rounding allowance: one ulp per multiplication, 40 + 40 of them
        let tail = 0.5 * 0.5f64.powi(80) / 0.75;
        let e = evaluate(&p, 1.0).unwrap();
        assert!(e.factors < 40);
        let allowed = brute * (e.tail_bound.exp_m1() + tail) + 80.0 * f64::EPSILON;
        assert!((e.value - brute).abs() <= allowed);

        let p = params(1.0, 0.5, FockRealization::Sym);
        let l = 0.125 * 0.25 / 1.25;
        let brute: f64 = (0..40).map(|s| 1.0 / (1.0 - l * 0.25f64.powi(s))).product();
        let e = evaluate(&p, 0.5).unwrap();
        assert_eq!(e.value, ground_sym(0.5, &p).unwrap());
        let allowed = brute * (e.tail_bound.exp_m1() + l * 0.25f64.powi(40)) + 80.0 * f64::EPSILON;
        assert!((e.value - brute).abs() <= allowed);
    }

    #[test]
    fn sym_poles_are_reported() {
        // L = 1 at x² = (1+q²)/(q³λ)
        let p = params(1.0, 0.5, FockRealization::Sym);
        let x = (1.25f64 / 0.125).sqrt();
        match ground_sym(x, &p) {
            Err(QError::Pole { s: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        // the s = 1 pole sits at x/q
        assert!(matches!(ground_sym(x / 0.5, &p), Err(QError::Pole { s: 1, .. })));
        assert!(ground_sym(x * 1.01, &p).is_ok());
    }

    #[test]
    fn cached_state_invariants() {
        for r in FockRealization::BOTH {
            let p = params(1.0, 0.5, r);
            let l = GeoLattice::new(1.1, p.qparam(), -6, 30).unwrap();
            let st = ProductState::build(p, l).unwrap();
            assert!(st.max_tail_bound() <= TAIL_TOLERANCE);
            assert!(st.doubling_change().unwrap() <= 1e-13);
            assert!(st.two_point_violation().unwrap() <= 1e-12, "{r}");
            assert_eq!(st.values().reflect(), *st.values());
        }
    }

    #[test]
    fn asym_annihilation_residual() {
        let p = params(1.0, 0.5, FockRealization::Asym);
        let l = GeoLattice::new(3.0, p.qparam(), 0, 14).unwrap();
        let st = ProductState::build(p, l).unwrap();
        assert!(residual_asym(&st, 3.0).unwrap() <= 1e-10);

        let zero = ProductState::build(params(0.0, 0.5, FockRealization::Asym), l).unwrap();
        assert_eq!(residual_asym(&zero, 3.0).unwrap(), 0.0);

        let wrong = ProductState::build(p.with_raw_lambda(-0.3), l).unwrap();
        assert!(residual_asym_values(wrong.values(), 1.0, 3.0).unwrap() > 0.1);
    }

    proptest! {
        #[test]
        fn even_and_bounded(x in -20.0f64..20.0, q in 0.1f64..0.95, lambda in 0.0f64..5.0) {
            let p = params(lambda, q, FockRealization::Asym);
            let a = ground_asym(x, &p).unwrap();
            prop_assert_eq!(a, ground_asym(-x, &p).unwrap());
            prop_assert!(a > 0.0 && a <= 1.0);
        }
    }
}
