//! q-number, derivative, integral and Fock-matrix suites.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{guarded, Check, Suite, VerifyConfig};
use crate::error::Result;
use crate::fockspace::{balanced_lscale, build_fock, build_xp, FockRealization};
use crate::qcore::{bracket_asym, LaurentPoly, bracket_identity_residuals, bracket_sym, rational, Mode, QParam, RatFn, Residual, HBAR};
use crate::qlattice::{dilatation_check, fundamental_theorem_check, GeoLattice, LatticeFn};

const FT_TRIALS: usize = 50;
const FT_SEED: u64 = 0x5eed;

pub(super) fn core(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::Core;
    let mut out = Vec::new();
    match cfg.mode {
        Mode::Exact => {
            let mut worst: [Residual; 4] = std::array::from_fn(|_| Residual::Exact(LaurentPoly::zero()));
            for n in 0..=30 {
                for (w, r) in worst.iter_mut().zip(bracket_identity_residuals(n)) {
                    *w = w.clone().max(Residual::Exact(r));
                }
            }
            let names = ["asymmetric recurrence", "symmetric recurrence", "inversion symmetry", "symmetric from asymmetric at q²"];
            for (name, w) in names.iter().zip(&worst) {
                out.push(Check::residual(s, format!("bracket {name}, n ≤ 30"), w, 0.0));
            }
        }
        Mode::Float => out.extend(guarded(s, "bracket recurrences", || float_brackets(cfg.q))),
    }
    out.extend(guarded(s, "monomial derivative laws", || {
        let q = cfg.qparam();
        // the difference quotient cancels to about ε/(1-q) relative
        let tol = (10.0 * f64::EPSILON / (1.0 - cfg.q)).max(1e-13);
        let (mut sym, mut asym) = (None::<Residual>, None::<Residual>);
        for n in 0..=20 {
            let (a, b) = dilatation_check(n, &q)?;
            sym = Some(sym.map_or(a.clone(), |w| w.max(a)));
            asym = Some(asym.map_or(b.clone(), |w| w.max(b)));
        }
        Ok(vec![
            Check::residual(s, "symmetric derivative of xⁿ, n ≤ 20", &sym.expect("nonempty"), tol),
            Check::residual(s, "asymmetric derivative of xⁿ, n ≤ 20", &asym.expect("nonempty"), tol),
        ])
    }));
    out.extend(guarded(s, "fundamental theorem", || fundamental_theorem(cfg)));
    out
}

fn float_brackets(q: f64) -> Result<Vec<Check>> {
    let s = Suite::Core;
    let qp = QParam::numeric(q)?;
    let mut rec = 0.0f64;
    let mut inv = 0.0f64;
    for n in 0..=30i64 {
        let a0 = bracket_asym(n, &qp)?.eval(q);
        let a1 = bracket_asym(n + 1, &qp)?.eval(q);
        let s0 = bracket_sym(n, &qp).eval(q);
        let s1 = bracket_sym(n + 1, &qp).eval(q);
        rec = rec.max((a1 - q * a0 - 1.0).abs() / a1.abs().max(1.0));
        rec = rec.max((s1 - q * s0 - q.powi(-(n as i32))).abs() / s1.abs().max(1.0));
        let si = bracket_sym(n, &QParam::Formal).eval(1.0 / q);
        inv = inv.max((s0 - si).abs() / s0.abs().max(1.0));
    }
    Ok(vec![
        Check::bound(s, "bracket recurrences, n ≤ 30 (relative)", rec, 1e-12),
        Check::bound(s, "bracket inversion symmetry, n ≤ 30 (relative)", inv, 1e-12),
    ])
}

fn fundamental_theorem(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let s = Suite::Core;
    let mut rng = ChaCha8Rng::seed_from_u64(FT_SEED);
    let name = format!("fundamental theorem, {FT_TRIALS} random interior functions");
    match cfg.mode {
        Mode::Exact => {
            let l = GeoLattice::new(1.0, QParam::Formal, -5, 5)?;
            let mut worst = Residual::Exact(LaurentPoly::zero());
            for _ in 0..FT_TRIALS {
                let vals: Vec<RatFn> = l
                    .points()
                    .map(|(_, k)| {
                        RatFn::from_rational(if (l.kmin() + 2..=l.kmax() - 2).contains(&k) {
                            rational(rng.random_range(-20..=20), rng.random_range(1..=5))
                        } else {
                            rational(0, 1)
                        })
                    })
                    .collect();
                worst = worst.max(fundamental_theorem_check(&LatticeFn::new(l, vals)?)?);
            }
            Ok(vec![Check::residual(s, name, &worst, 0.0)])
        }
        Mode::Float => {
            let l = GeoLattice::new(1.0, QParam::numeric(cfg.q)?, -12, 12)?;
            let mut worst = 0.0f64;
            for _ in 0..FT_TRIALS {
                let vals: Vec<Complex64> = l
                    .points()
                    .map(|(_, k)| {
                        if (l.kmin() + 2..=l.kmax() - 2).contains(&k) {
                            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    })
                    .collect();
                worst = worst.max(fundamental_theorem_check(&LatticeFn::new(l, vals)?)?.magnitude());
            }
            Ok(vec![Check::bound(s, name, worst, 1e-12)])
        }
    }
}

pub(super) fn fock(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::Fock;
    let mut out = Vec::new();
    for r in FockRealization::BOTH {
        out.extend(guarded(s, &format!("{r} realization"), || match cfg.mode {
            Mode::Exact => fock_exact(r, cfg.dim),
            Mode::Float => fock_float(r, cfg.q, cfg.dim),
        }));
    }
    out.extend(guarded(s, "classical approach of the uncertainty product", || classical_approach(cfg.dim)));
    out
}

fn fock_exact(r: FockRealization, dim: usize) -> Result<Vec<Check>> {
    let s = Suite::Fock;
    let ops = build_fock(r, QParam::Formal, dim)?;
    Ok(vec![
        Check::residual(s, format!("{r}: ladder commutator, interior block"), &ops.commutator_residual(), 0.0),
        Check::residual(s, format!("{r}: epsilon form, interior block"), &ops.epsilon_form_check(), 0.0),
    ])
}

fn fock_float(r: FockRealization, q: f64, dim: usize) -> Result<Vec<Check>> {
    let s = Suite::Fock;
    let ops = build_fock(r, QParam::numeric(q)?, dim)?;
    let mut out = vec![
        Check::residual(s, format!("{r}: ladder commutator, interior block"), &ops.commutator_residual(), 1e-12),
        Check::residual(s, format!("{r}: epsilon form, interior block"), &ops.epsilon_form_check(), 1e-12),
        Check::diagnostic(s, format!("{r}: truncation edge magnitude"), ops.edge_magnitude()),
    ];
    let xp = build_xp(&ops, balanced_lscale(q, HBAR), HBAR)?;
    out.push(Check::residual(s, format!("{r}: deformed x-p commutator, interior block"), &xp.commutator_xp_check(), 1e-10));
    out.push(Check::above(
        s,
        format!("{r}: x-p commutator with Kscale off by 1.3 (control)"),
        xp.with_kscale_factor(1.3).commutator_xp_check().magnitude(),
        1e-2,
    ));
    out.push(Check::diagnostic(s, format!("{r}: hermiticity defect of x"), xp.hermiticity_defect().unwrap_or(f64::NAN)));
    let top = 10.min(dim - 2);
    let mut robertson = true;
    let mut literal = true;
    let mut margin = f64::INFINITY;
    for n in 0..=top {
        let rep = xp.uncertainty_product(n)?;
        robertson &= rep.robertson_holds;
        literal &= rep.literal_holds;
        margin = margin.min(rep.product - rep.robertson_bound);
    }
    out.push(Check::flag(s, format!("{r}: Robertson bound holds, n ≤ {top}"), robertson).with_detail(format!("min margin {margin:.3e}")));
    out.push(Check::diagnostic(s, format!("{r}: literal uncertainty reading holds, n ≤ {top}"), if literal { 1.0 } else { 0.0 }));
    Ok(out)
}

/// Relative distance of the uncertainty product in `|n⟩` from
/// `(ħ²/4)(2n+1)²` at q = 0.999, worst over `n ≤ 10`.
fn classical_approach(dim: usize) -> Result<Vec<Check>> {
    let s = Suite::Fock;
    let dim = dim.max(12);
    let top = 10.min(dim - 2);
    let mut out = Vec::new();
    for r in FockRealization::BOTH {
        let ops = build_fock(r, QParam::numeric(0.999)?, dim)?;
        let xp = build_xp(&ops, 1.0, HBAR)?;
        let mut worst = 0.0f64;
        for n in 0..=top {
            let target = HBAR * HBAR / 4.0 * (2.0 * n as f64 + 1.0).powi(2);
            worst = worst.max((xp.uncertainty_product(n)?.product - target).abs() / target);
        }
        let name = format!("{r}: uncertainty product vs (2n+1)²/4 at q=0.999, n ≤ {top}");
        out.push(match r {
            FockRealization::Sym => Check::bound(s, name, worst, 0.01),
            FockRealization::Asym => Check::diagnostic(s, name, worst),
        });
    }
    Ok(out)
}
