use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::ops::FockOps;
use crate::error::{QError, Result};
use crate::qcore::{rational, LaurentPoly, QParam, QValue, Residual};

type CMatrix = DMatrix<Complex64>;

/// `x = L(ā + a)`, `p = iK(ā - a)` with `LK = (ħ/2)(q+1)/2`.
#[derive(Clone, Debug)]
pub struct XPOps {
    ops: FockOps,
    lscale: f64,
    kscale: f64,
    hbar: f64,
    matrices: Option<(CMatrix, CMatrix)>,
}

/// `Kscale` forced by `Lscale` through `LK = (ħ/2)(q+1)/2`.
pub fn kscale_for(lscale: f64, q: f64, hbar: f64) -> f64 {
    hbar / 2.0 * (q + 1.0) / 2.0 / lscale
}

pub fn build_xp(ops: &FockOps, lscale: f64, hbar: f64) -> Result<XPOps> {
    if !(lscale.is_finite() && lscale > 0.0) {
        return Err(QError::Domain(format!("Lscale must be positive, got {lscale}")));
    }
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(QError::Domain(format!("hbar must be positive, got {hbar}")));
    }
    let kscale = match ops.q() {
        QParam::Numeric(q) => kscale_for(lscale, q, hbar),
        // in exact mode only LK enters, through the formal (q+1)
        QParam::Formal => f64::NAN,
    };
    let matrices = ops.matrices().map(|(a, abar, _, _)| {
        let a = a.map(|v| Complex64::new(v, 0.0));
        let abar = abar.map(|v| Complex64::new(v, 0.0));
        let x = (&abar + &a) * Complex64::new(lscale, 0.0);
        let p = (&abar - &a) * Complex64::new(0.0, kscale);
        (x, p)
    });
    Ok(XPOps {
        ops: ops.clone(),
        lscale,
        kscale,
        hbar,
        matrices,
    })
}

/// Moments of `x` and `p` in one Fock state, with both readings of the
/// deformed uncertainty relation and the Robertson bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub n: usize,
    pub mean_x: Complex64,
    pub mean_p: Complex64,
    pub mean_x2: Complex64,
    pub mean_p2: Complex64,
    /// `⟨(Δx)²⟩⟨(Δp)²⟩`.
    pub product: f64,
    /// Square root of the product, the left side as printed.
    pub literal_lhs: f64,
    /// `(ħ²/4)[Δ + (q-1)(⟨x²⟩/4L² + ⟨p²⟩/4K²)]`.
    pub literal_rhs: f64,
    pub literal_holds: bool,
    /// `|⟨(x,p)⟩|²/4`.
    pub robertson_bound: f64,
    pub robertson_holds: bool,
}

impl XPOps {
    pub fn fock(&self) -> &FockOps {
        &self.ops
    }

    pub fn lscale(&self) -> f64 {
        self.lscale
    }

    /// NaN in exact mode, where only the product `LK` enters.
    pub fn kscale(&self) -> f64 {
        self.kscale
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `(x, p)` in float mode.
    pub fn matrices(&self) -> Option<(&CMatrix, &CMatrix)> {
        self.matrices.as_ref().map(|(x, p)| (x, p))
    }

    /// The same operators with `Kscale` multiplied by `factor`, which breaks
    /// `LK = (ħ/2)(q+1)/2` unless `factor = 1`. Used as a negative control.
    pub fn with_kscale_factor(&self, factor: f64) -> Self {
        let mut out = build_xp(&self.ops, self.lscale, self.hbar).expect("validated scales");
        out.kscale *= factor;
        if let Some((_, p)) = out.matrices.as_mut() {
            *p *= Complex64::new(factor, 0.0);
        }
        out
    }

    /// `max‖M - Mᴴ‖` over `x` and `p`.
    pub fn hermiticity_defect(&self) -> Option<f64> {
        self.matrices().map(|(x, p)| {
            let dx = (x - x.adjoint()).map(|v| v.norm()).max();
            let dp = (p - p.adjoint()).map(|v| v.norm()).max();
            dx.max(dp)
        })
    }

    /// `(x,p) - iħ[Δ + (q-1)¼(x²/L² + p²/K²)]` on the interior block,
    /// entrywise relative to `max(1, |xp| + |px| + |right side|)`.
    ///
    /// Exact mode checks the diagonal identity
    /// `(q+1)/2·(A₁ - A₀) = Δ + (q-1)/2·(A₀ + A₁)` with `A₀ = amp(n)²`,
    /// `A₁ = amp(n+1)²`, to which both sides reduce.
    pub fn commutator_xp_check(&self) -> Residual {
        match self.matrices() {
            Some((x, p)) => {
                let (_, _, _, delta) = self.ops.matrices().expect("float");
                let q = self.ops.q().value().expect("float");
                let i_hbar = Complex64::new(0.0, self.hbar);
                let xp = x * p;
                let px = p * x;
                let x2 = x * x / Complex64::new(self.lscale * self.lscale, 0.0);
                let p2 = p * p / Complex64::new(self.kscale * self.kscale, 0.0);
                let delta = delta.map(|v| Complex64::new(v, 0.0));
                let rhs = (delta + (x2 + p2) * Complex64::new((q - 1.0) / 4.0, 0.0)) * i_hbar;
                let m = self.ops.dim() - 1;
                let mut worst = 0.0f64;
                for i in 0..m {
                    for j in 0..m {
                        let r = xp[(i, j)] - px[(i, j)] - rhs[(i, j)];
                        let s = (xp[(i, j)].norm() + px[(i, j)].norm() + rhs[(i, j)].norm()).max(1.0);
                        worst = worst.max(r.norm() / s);
                    }
                }
                Residual::Float(worst)
            }
            None => {
                let q = LaurentPoly::q();
                let one = LaurentPoly::one();
                let half = LaurentPoly::constant(rational(1, 2));
                let plus = &(&q + &one) * &half;
                let minus = &(&q - &one) * &half;
                let mut worst = Residual::Exact(LaurentPoly::zero());
                for n in 0..self.ops.dim() - 1 {
                    let a0 = self.ops.amp_sq(n).as_exact().cloned().expect("exact");
                    let a1 = self.ops.amp_sq(n + 1).as_exact().cloned().expect("exact");
                    let delta = self.ops.realization().delta(n, &QParam::Formal);
                    let lhs = &plus * &(&a1 - &a0);
                    let rhs = delta.as_exact().expect("exact") + &(&minus * &(&a0 + &a1));
                    worst = worst.max(Residual::Exact(&lhs - &rhs));
                }
                worst
            }
        }
    }

    /// Fock-basis expectation values `M[n, n]` in `|n⟩`, `n ≤ N-2`.
    pub fn uncertainty_product(&self, n: usize) -> Result<UncertaintyReport> {
        if n + 2 > self.ops.dim() {
            return Err(QError::Domain(format!(
                "state {n} is within the truncation edge of dimension {}",
                self.ops.dim()
            )));
        }
        let (x, p) = self.matrices().ok_or(QError::ModeMismatch)?;
        let q = self.ops.q().value().expect("float");
        let x2 = x * x;
        let p2 = p * p;
        let comm = x * p - p * x;
        let mean_x = x[(n, n)];
        let mean_p = p[(n, n)];
        let var_x = x2[(n, n)] - mean_x * mean_x;
        let var_p = p2[(n, n)] - mean_p * mean_p;
        let product = (var_x * var_p).re;
        let delta = self.ops.realization().delta(n, &self.ops.q()).as_float().expect("float");
        let literal_rhs = self.hbar * self.hbar / 4.0
            * (delta
                + (q - 1.0)
                    * (x2[(n, n)].re / (4.0 * self.lscale * self.lscale)
                        + p2[(n, n)].re / (4.0 * self.kscale * self.kscale)));
        let robertson_bound = comm[(n, n)].norm_sqr() / 4.0;
        let literal_lhs = product.sqrt();
        Ok(UncertaintyReport {
            n,
            mean_x,
            mean_p,
            mean_x2: x2[(n, n)],
            mean_p2: p2[(n, n)],
            product,
            literal_lhs,
            literal_rhs,
            literal_holds: literal_lhs >= literal_rhs,
            robertson_bound,
            robertson_holds: product >= robertson_bound * (1.0 - 1e-12),
        })
    }
}

/// `Lscale` for which `Lscale = Kscale`, i.e. `√((ħ/2)(q+1)/2)`.
pub fn balanced_lscale(q: f64, hbar: f64) -> f64 {
    (hbar / 2.0 * (q + 1.0) / 2.0).sqrt()
}

/// Closed forms of the moments, for comparison with the matrices:
/// `⟨x²⟩ = L²s`, `⟨p²⟩ = K²s`, `s = amp(n)² + amp(n+1)²`.
pub fn moment_sum(ops: &FockOps, n: usize) -> Option<f64> {
    match (ops.amp_sq(n), ops.amp_sq(n + 1)) {
        (QValue::Float(a), QValue::Float(b)) => Some(a + b),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::{build_fock, FockRealization};
    use crate::qcore::HBAR;

    fn xp(r: FockRealization, q: f64, dim: usize, l: f64) -> XPOps {
        let ops = build_fock(r, QParam::numeric(q).unwrap(), dim).unwrap();
        build_xp(&ops, l, HBAR).unwrap()
    }

    #[test]
    fn kscale_arithmetic() {
        assert!((kscale_for(1.0, 0.5, 1.0) - 0.375).abs() < 1e-15);
        assert!((xp(FockRealization::Asym, 0.5, 4, 1.0).kscale() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn deformed_commutator_interior() {
        for r in FockRealization::BOTH {
            for q in [0.3, 0.7, 0.9, 0.99] {
                let ops = xp(r, q, 40, 0.8);
                assert!(ops.commutator_xp_check().within(1e-10), "{r} {q}: {:?}", ops.commutator_xp_check());
                let broken = ops.with_kscale_factor(1.3);
                assert!(!broken.commutator_xp_check().within(1e-2), "{r} {q}");
            }
            let ops = build_fock(r, QParam::Formal, 20).unwrap();
            assert!(build_xp(&ops, 1.0, HBAR).unwrap().commutator_xp_check().within(0.0));
        }
    }

    #[test]
    fn classical_commutator() {
        let q = 1.0 - 1e-9;
        let ops = xp(FockRealization::Asym, q, 10, balanced_lscale(q, HBAR));
        let (x, p) = ops.matrices().unwrap();
        let c = x * p - p * x;
        for n in 0..9 {
            assert!((c[(n, n)] - Complex64::new(0.0, 1.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn fock_basis_hermiticity() {
        // x and p are symmetric/antisymmetric matrices in the orthonormal
        // Fock basis, so the defect is exactly zero there
        let ops = xp(FockRealization::Sym, 0.5, 12, 1.0);
        assert_eq!(ops.hermiticity_defect(), Some(0.0));
    }

    #[test]
    fn moments() {
        let ops = xp(FockRealization::Sym, 0.5, 10, 1.0);
        let rep = ops.uncertainty_product(1).unwrap();
        assert!((rep.mean_x2.re - 3.5).abs() < 1e-13);
        for n in 0..=8 {
            let rep = ops.uncertainty_product(n).unwrap();
            assert_eq!(rep.mean_x, Complex64::new(0.0, 0.0));
            assert_eq!(rep.mean_p, Complex64::new(0.0, 0.0));
            let s = moment_sum(ops.fock(), n).unwrap();
            assert!((rep.mean_p2.re - ops.kscale().powi(2) * s).abs() < 1e-12 * s);
        }
        assert!(ops.uncertainty_product(9).is_err());
    }

    #[test]
    fn robertson_holds_and_classical_limit() {
        for r in FockRealization::BOTH {
            for q in [0.3, 0.7, 0.9, 0.99] {
                let ops = xp(r, q, 14, 0.9);
                for n in 0..=10 {
                    assert!(ops.uncertainty_product(n).unwrap().robertson_holds, "{r} q={q} n={n}");
                }
            }
        }
        let ops = xp(FockRealization::Asym, 1.0 - 1e-8, 4, balanced_lscale(1.0, HBAR));
        let rep = ops.uncertainty_product(0).unwrap();
        assert!((rep.product - 0.25).abs() < 1e-6);
        assert!((rep.robertson_bound - 0.25).abs() < 1e-6);
    }

    #[test]
    fn approach_to_the_classical_product() {
        // The asymmetric ladder approaches (2n+1)²/4 from below, monotonically.
        // The symmetric one overshoots at q = 0.9 for n ≥ 5 but is the closer
        // of the two at q = 0.999.
        for n in 0..=10usize {
            let target = 0.25 * (2.0 * n as f64 + 1.0).powi(2);
            let dev = |r, q| {
                let rep = xp(r, q, 14, 1.0).uncertainty_product(n).unwrap();
                (rep.product - target).abs() / target
            };
            let asym: Vec<f64> = [0.9, 0.99, 0.999].iter().map(|&q| dev(FockRealization::Asym, q)).collect();
            assert!(asym[0] > asym[1] && asym[1] > asym[2], "n={n}: {asym:?}");
            assert!(dev(FockRealization::Sym, 0.999) < 0.01, "n={n}");
        }
    }
}
