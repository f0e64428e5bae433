//! Action of words in x, D and Λ on polynomials in x. Used to check the
//! x–D rewrite rules against what the operators actually do.

use super::ncpoly::{Generator, NCPoly};
use super::standard::DeltaForm;
use crate::error::{QError, Result};
use crate::qcore::LaurentPoly;
use crate::qlattice::XPoly;

fn apply_letter(g: Generator, f: &XPoly, delta: DeltaForm) -> Result<XPoly> {
    match g {
        Generator::X => Ok(&XPoly::monomial(1) * f),
        Generator::D => match delta {
            DeltaForm::Dilatation => f.d_sym(),
            DeltaForm::Unit => f.d_asym(),
        },
        // q^(-θ) xⁿ = q^(-n) xⁿ
        Generator::Lambda => Ok(XPoly::from_terms(
            f.terms().map(|(n, c)| (n, c * &LaurentPoly::q_pow(-(n as i32)))),
        )),
        other => Err(QError::Domain(format!("{other} does not act on functions of x"))),
    }
}

/// `p` applied to `f`, letters acting right to left.
pub fn act(p: &NCPoly, f: &XPoly, delta: DeltaForm) -> Result<XPoly> {
    let mut out = XPoly::zero();
    for (word, c) in p.terms() {
        let mut g = f.clone();
        for &letter in word.iter().rev() {
            g = apply_letter(letter, &g, delta)?;
        }
        out = out + &XPoly::term(0, c.clone()) * &g;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::standard::{xd_rules, Deformation};
    use Generator::*;

    #[test]
    fn rules_hold_as_operators_on_monomials() {
        for delta in [DeltaForm::Dilatation, DeltaForm::Unit] {
            for ((a, b), rhs) in xd_rules(Deformation::Formal, delta) {
                for n in 0..=10 {
                    let f = XPoly::monomial(n);
                    let lhs = act(&NCPoly::word(&[a, b]), &f, delta).unwrap();
                    assert_eq!(lhs, act(&rhs, &f, delta).unwrap(), "{a}{b} on x^{n}");
                }
            }
        }
    }

    #[test]
    fn commutator_on_monomials_is_q_to_minus_n() {
        // (Dx - qxD)xⁿ = q⁻ⁿxⁿ
        let p = NCPoly::word(&[D, X]) - NCPoly::term(vec![X, D], LaurentPoly::q());
        for n in 0..=10u32 {
            let got = act(&p, &XPoly::monomial(n), DeltaForm::Dilatation).unwrap();
            assert_eq!(got, XPoly::term(n, LaurentPoly::q_pow(-(n as i32))));
        }
    }

    #[test]
    fn wrong_rule_fails_on_monomials() {
        let wrong = NCPoly::word(&[X, D]) + NCPoly::one();
        let f = XPoly::monomial(3);
        let lhs = act(&NCPoly::word(&[D, X]), &f, DeltaForm::Dilatation).unwrap();
        assert_ne!(lhs, act(&wrong, &f, DeltaForm::Dilatation).unwrap());
    }

    #[test]
    fn group_letters_do_not_act() {
        assert!(act(&NCPoly::gen(Alpha), &XPoly::monomial(1), DeltaForm::Unit).is_err());
    }
}
