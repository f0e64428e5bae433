//! Relation sets used by the identity checks.

use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::NCMatrix;
use super::ncpoly::{Generator, NCPoly};
use super::relations::RelationSet;
use super::suq2_frozen::SUQ2_RULES;
use crate::error::Result;
use crate::qcore::LaurentPoly;

use Generator::*;

/// Whether `q` stays a formal symbol or is specialized to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deformation {
    Formal,
    Classical,
}

impl Deformation {
    /// Specializes a formal coefficient.
    pub fn apply(self, p: &LaurentPoly) -> LaurentPoly {
        match self {
            Deformation::Formal => p.clone(),
            Deformation::Classical => {
                let sum = p.half_terms().fold(BigRational::zero(), |acc, (_, c)| acc + c);
                LaurentPoly::constant(sum)
            }
        }
    }

    /// `q^(e/2)`.
    pub fn q_half_pow(self, twice_exp: i32) -> LaurentPoly {
        self.apply(&LaurentPoly::q_half_pow(twice_exp))
    }

    pub fn q_pow(self, e: i32) -> LaurentPoly {
        self.q_half_pow(2 * e)
    }
}

/// How the right side of the x–D relation is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaForm {
    /// `Δ = q^(-θ)`, carried by the generator Λ; pairs with the symmetric
    /// derivative.
    Dilatation,
    /// `Δ = 1`; pairs with the asymmetric derivative.
    Unit,
}

impl DeltaForm {
    pub fn element(self) -> NCPoly {
        match self {
            DeltaForm::Dilatation => NCPoly::gen(Lambda),
            DeltaForm::Unit => NCPoly::one(),
        }
    }
}

/// A rule given as `(left pair, right side)`.
pub type Rule = ((Generator, Generator), NCPoly);

/// `Dx → q xD + Δ`, plus `Λx → q⁻¹xΛ`, `ΛD → q DΛ` when Δ is Λ.
pub fn xd_rules(deform: Deformation, delta: DeltaForm) -> Vec<Rule> {
    let mut rules = vec![(
        (D, X),
        NCPoly::term(vec![X, D], deform.q_pow(1)) + delta.element(),
    )];
    if delta == DeltaForm::Dilatation {
        rules.push(((Lambda, X), NCPoly::term(vec![X, Lambda], deform.q_pow(-1))));
        rules.push(((Lambda, D), NCPoly::term(vec![D, Lambda], deform.q_pow(1))));
    }
    rules
}

/// Operators commute with the group entries: `gh → hg` for operator `g`.
pub fn operator_group_rules() -> Vec<Rule> {
    let mut rules = Vec::new();
    for g in Generator::OPERATORS {
        for h in Generator::GROUP {
            rules.push(((g, h), NCPoly::word(&[h, g])));
        }
    }
    rules
}

/// The frozen quantum-group relations, specialized by `deform`.
pub fn suq2_rules(deform: Deformation) -> Vec<Rule> {
    SUQ2_RULES
        .iter()
        .map(|(pair, rhs)| {
            let poly = NCPoly::from_terms(rhs.iter().map(|(word, coeff)| {
                let c = LaurentPoly::from_half_terms(
                    coeff.iter().map(|&(e, n, d)| (e, BigRational::new(n.into(), d.into()))),
                );
                (word.to_vec(), deform.apply(&c))
            }));
            (*pair, poly)
        })
        .collect()
}

/// Quantum-group relations, operator–group commutation and the x–D rules.
pub fn standard(deform: Deformation, delta: DeltaForm) -> Result<RelationSet> {
    RelationSet::empty()
        .with_rules(suq2_rules(deform))?
        .with_rules(operator_group_rules())?
        .with_rules(xd_rules(deform, delta))
}

/// `ε = (0 q^(-1/2); -q^(1/2) 0)`.
pub fn epsilon(deform: Deformation) -> NCMatrix {
    NCMatrix::scalar(
        LaurentPoly::zero(),
        deform.q_half_pow(-1),
        -deform.q_half_pow(1),
        LaurentPoly::zero(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_specialization_sums_coefficients() {
        let p = &(&LaurentPoly::q() * &LaurentPoly::from_int(3)) - &LaurentPoly::q_half_pow(-1);
        assert_eq!(Deformation::Classical.apply(&p), LaurentPoly::from_int(2));
        assert_eq!(Deformation::Formal.apply(&p), p);
    }

    #[test]
    fn standard_sets_are_confluent() {
        for deform in [Deformation::Formal, Deformation::Classical] {
            for delta in [DeltaForm::Dilatation, DeltaForm::Unit] {
                let r = standard(deform, delta).unwrap().certify().unwrap();
                assert_eq!(r.confluent(), Some(true), "{deform:?} {delta:?}");
            }
        }
    }
}
