//! Operator identities checked by exact normal ordering.

use serde::Serialize;

use super::matrix::{bilinear, group_matrix, NCMatrix};
use super::ncpoly::{Generator, NCPoly};
use super::relations::RelationSet;
use super::standard::{epsilon, Deformation, DeltaForm};
use crate::error::Result;

use Generator::*;

/// Normal form of `q xD - Dx + Δ`.
///
/// With `p = (ħ/i)D`, `qxp - px - iħΔ = (ħ/i)(qxD - Dx + Δ)`, so this is the
/// position–momentum relation with the common factor `ħ/i` removed.
pub fn verify_xd_relation(r: &RelationSet, deform: Deformation, delta: DeltaForm) -> Result<NCPoly> {
    let p = NCPoly::term(vec![X, D], deform.q_pow(1)) - NCPoly::word(&[D, X]) + delta.element();
    r.normal_form(&p)
}

/// Normal forms of `TᵗεT - ε` and `TεTᵗ - ε`.
pub fn verify_epsilon_invariance(r: &RelationSet, deform: Deformation) -> Result<(NCMatrix, NCMatrix)> {
    let t = group_matrix(&deform.q_pow(-1));
    let tt = t.transpose();
    let eps = epsilon(deform);
    let left = &(&(&tt * &eps) * &t) - &eps;
    let right = &(&(&t * &eps) * &tt) - &eps;
    Ok((left.normal_form(r)?, right.normal_form(r)?))
}

/// `a = αD + βx` and `ā = -q⁻¹β̄D + ᾱx`, the components of `T·(D; x)`.
pub fn ladder_operators(deform: Deformation) -> (NCPoly, NCPoly) {
    let column = [NCPoly::gen(D), NCPoly::gen(X)];
    let t = group_matrix(&deform.q_pow(-1));
    let row = |i: usize| &(&t.m[i][0] * &column[0]) + &(&t.m[i][1] * &column[1]);
    (row(0), row(1))
}

/// Normal form of `aā - q āa - Δ`.
pub fn verify_oscillator_commutator(r: &RelationSet, deform: Deformation, delta: DeltaForm) -> Result<NCPoly> {
    let (a, abar) = ladder_operators(deform);
    let p = &(&a * &abar) - &(&abar * &a).scale(&deform.q_pow(1));
    r.normal_form(&(p - delta.element()))
}

/// Both sides of the transport of the ε-form from `X = (D; x)` to `A = TX`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransportReport {
    pub xtex: String,
    pub atea: String,
    pub difference_terms: usize,
    #[serde(skip)]
    pub difference: NCPoly,
}

pub fn verify_bilinear_transport(r: &RelationSet, t: &NCMatrix, deform: Deformation) -> Result<TransportReport> {
    let x = [NCPoly::gen(D), NCPoly::gen(X)];
    let a = [
        &(&t.m[0][0] * &x[0]) + &(&t.m[0][1] * &x[1]),
        &(&t.m[1][0] * &x[0]) + &(&t.m[1][1] * &x[1]),
    ];
    let eps = epsilon(deform);
    let xtex = r.normal_form(&bilinear(&x, &eps, &x))?;
    let atea = r.normal_form(&bilinear(&a, &eps, &a))?;
    let difference = r.normal_form(&(&atea - &xtex))?;
    Ok(TransportReport {
        xtex: xtex.to_string(),
        atea: atea.to_string(),
        difference_terms: difference.term_count(),
        difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::standard::{operator_group_rules, standard, suq2_rules, xd_rules};
    use crate::qcore::LaurentPoly;

    fn formal() -> RelationSet {
        standard(Deformation::Formal, DeltaForm::Dilatation).unwrap()
    }

    #[test]
    fn xd_relation_symbolic_and_classical() {
        assert!(verify_xd_relation(&formal(), Deformation::Formal, DeltaForm::Dilatation)
            .unwrap()
            .is_zero());
        let classical = standard(Deformation::Classical, DeltaForm::Unit).unwrap();
        assert!(verify_xd_relation(&classical, Deformation::Classical, DeltaForm::Unit)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn wrong_xd_rule_leaves_residual() {
        let r = RelationSet::empty()
            .with_rule(D, X, NCPoly::word(&[X, D]) + NCPoly::one())
            .unwrap();
        let res = verify_xd_relation(&r, Deformation::Formal, DeltaForm::Dilatation).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn epsilon_invariance() {
        let (l, r) = verify_epsilon_invariance(&formal(), Deformation::Formal).unwrap();
        assert!(l.is_zero() && r.is_zero());
        let classical = standard(Deformation::Classical, DeltaForm::Unit).unwrap();
        let (l, r) = verify_epsilon_invariance(&classical, Deformation::Classical).unwrap();
        assert!(l.is_zero() && r.is_zero());
        let (l, r) = verify_epsilon_invariance(&RelationSet::empty(), Deformation::Formal).unwrap();
        assert!(l.term_count() > 0 && r.term_count() > 0);
    }

    #[test]
    fn oscillator_commutator() {
        for delta in [DeltaForm::Dilatation, DeltaForm::Unit] {
            let r = standard(Deformation::Formal, delta).unwrap();
            let res = verify_oscillator_commutator(&r, Deformation::Formal, delta).unwrap();
            assert!(res.is_zero(), "{delta:?}: {res}");
        }
        let classical = standard(Deformation::Classical, DeltaForm::Unit).unwrap();
        assert!(verify_oscillator_commutator(&classical, Deformation::Classical, DeltaForm::Unit)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn scalar_coefficients_break_the_commutator() {
        // commuting entries with ᾱα + β̄β = 1, against the deformed x–D rules
        let r = RelationSet::empty()
            .with_rules(suq2_rules(Deformation::Classical))
            .unwrap()
            .with_rules(operator_group_rules())
            .unwrap()
            .with_rules(xd_rules(Deformation::Formal, DeltaForm::Dilatation))
            .unwrap();
        let res = verify_oscillator_commutator(&r, Deformation::Formal, DeltaForm::Dilatation).unwrap();
        assert!(!res.is_zero());
        // every coefficient vanishes at q = 1
        for (_, c) in res.terms() {
            assert!(Deformation::Classical.apply(c).is_zero(), "{c}");
        }
    }

    #[test]
    fn transport_of_the_form() {
        let r = formal();
        let t = group_matrix(&LaurentPoly::q_inv());
        let rep = verify_bilinear_transport(&r, &t, Deformation::Formal).unwrap();
        assert!(rep.difference.is_zero(), "{rep:?}");
        assert_eq!(rep.xtex, "q^(-1/2)*Λ");
        let rep = verify_bilinear_transport(&r, &NCMatrix::identity(), Deformation::Formal).unwrap();
        assert!(rep.difference.is_zero());
    }
}
