//! Noncommutative polynomials, rewrite relations and exact verification of
//! operator identities.

mod action;
mod checks;
pub mod derive;
mod matrix;
mod ncpoly;
mod relations;
mod standard;
mod suq2_frozen;

pub use action::act;
pub use checks::{
    ladder_operators, verify_bilinear_transport, verify_epsilon_invariance, verify_oscillator_commutator,
    verify_xd_relation, TransportReport,
};
pub use matrix::{bilinear, group_matrix, NCMatrix};
pub use ncpoly::{Generator, NCPoly, Word};
pub use relations::{Obstruction, RelationSet, RewriteStrategy, DEFAULT_ORDER, STEP_BUDGET};
pub use standard::{
    epsilon, operator_group_rules, standard, suq2_rules, xd_rules, Deformation, DeltaForm, Rule,
};

#[cfg(test)]
mod properties {
    use super::*;
    use crate::qcore::{rational, LaurentPoly};
    use proptest::prelude::*;

    const LETTERS: [Generator; 7] = DEFAULT_ORDER;

    fn coeff() -> impl Strategy<Value = LaurentPoly> {
        (-2i32..=2, -4i64..=4).prop_map(|(e, c)| LaurentPoly::monomial(rational(c, 1), e))
    }

    fn poly() -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((prop::collection::vec(0usize..7, 0..=6), coeff()), 1..4).prop_map(|terms| {
            NCPoly::from_terms(terms.into_iter().map(|(w, c)| (w.into_iter().map(|i| LETTERS[i]).collect(), c)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn normal_form_is_idempotent_linear_and_order_independent(
            p in poly(),
            r in poly(),
            a in coeff(),
            seed in any::<u64>(),
        ) {
            let rel = standard(Deformation::Formal, DeltaForm::Dilatation).unwrap();
            let np = rel.normal_form(&p).unwrap();
            let nr = rel.normal_form(&r).unwrap();
            prop_assert_eq!(&rel.normal_form(&np).unwrap(), &np);
            for (w, _) in np.terms() {
                prop_assert!(rel.is_normal(w));
            }
            let combo = p.scale(&a) + r.clone();
            prop_assert_eq!(rel.normal_form(&combo).unwrap(), np.scale(&a) + nr);
            prop_assert_eq!(rel.normal_form_with(&p, RewriteStrategy::Random(seed)).unwrap(), np);
        }
    }
}
