//! Symbolic operator identities. Always exact; `q` stays formal.

use super::{guarded, Check, Suite};
use crate::error::Result;
use crate::qalgebra::{
    group_matrix, operator_group_rules, standard, suq2_rules, verify_bilinear_transport, verify_epsilon_invariance,
    verify_oscillator_commutator, verify_xd_relation, xd_rules, Deformation, DeltaForm, Generator, NCMatrix, NCPoly,
    RelationSet,
};
use crate::qcore::LaurentPoly;

const S: Suite = Suite::Algebra;

fn terms(name: impl Into<String>, p: &NCPoly) -> Check {
    let n = p.term_count();
    let c = Check::flag(S, name, n == 0);
    Check { value: n as f64, ..c }.with_detail(if n == 0 { String::new() } else { p.to_string() })
}

fn nonzero(name: impl Into<String>, count: usize) -> Check {
    Check::above(S, name, count as f64, 0.0)
}

fn delta_name(d: DeltaForm) -> &'static str {
    match d {
        DeltaForm::Dilatation => "Δ = Λ",
        DeltaForm::Unit => "Δ = 1",
    }
}

pub(super) fn algebra() -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(guarded(S, "relation set", || {
        let mut out = Vec::new();
        for deform in [Deformation::Formal, Deformation::Classical] {
            for delta in [DeltaForm::Dilatation, DeltaForm::Unit] {
                let r = standard(deform, delta)?.certify()?;
                out.push(Check::flag(S, format!("relation set confluent ({deform:?}, {})", delta_name(delta)), r.confluent() == Some(true)));
            }
        }
        Ok(out)
    }));
    out.extend(guarded(S, "identities", identities));
    out.extend(guarded(S, "negative controls", controls));
    out
}

fn identities() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for delta in [DeltaForm::Dilatation, DeltaForm::Unit] {
        let r = standard(Deformation::Formal, delta)?;
        let d = delta_name(delta);
        out.push(terms(format!("residual x-D relation, {d}"), &verify_xd_relation(&r, Deformation::Formal, delta)?));
        out.push(terms(
            format!("residual oscillator commutator with group-valued coefficients, {d}"),
            &verify_oscillator_commutator(&r, Deformation::Formal, delta)?,
        ));
    }
    let classical = standard(Deformation::Classical, DeltaForm::Unit)?;
    out.push(terms(
        "residual x-D relation, q = 1",
        &verify_xd_relation(&classical, Deformation::Classical, DeltaForm::Unit)?,
    ));
    out.push(terms(
        "residual oscillator commutator, q = 1",
        &verify_oscillator_commutator(&classical, Deformation::Classical, DeltaForm::Unit)?,
    ));

    let r = standard(Deformation::Formal, DeltaForm::Dilatation)?;
    let (left, right) = verify_epsilon_invariance(&r, Deformation::Formal)?;
    out.push(Check { value: left.term_count() as f64, ..Check::flag(S, "residual TᵗεT - ε", left.is_zero()) });
    out.push(Check { value: right.term_count() as f64, ..Check::flag(S, "residual TεTᵗ - ε", right.is_zero()) });

    let rep = verify_bilinear_transport(&r, &group_matrix(&LaurentPoly::q_inv()), Deformation::Formal)?;
    out.push(terms("residual AᵗεA - XᵗεX with A = TX", &rep.difference).with_detail(format!("XᵗεX = {}, AᵗεA = {}", rep.xtex, rep.atea)));
    let id = verify_bilinear_transport(&r, &NCMatrix::identity(), Deformation::Formal)?;
    out.push(terms("residual AᵗεA - XᵗεX with T = 1", &id.difference));
    Ok(out)
}

fn controls() -> Result<Vec<Check>> {
    use Generator::{D, X};
    let wrong = RelationSet::empty().with_rule(D, X, NCPoly::word(&[X, D]) + NCPoly::one())?;
    let xd = verify_xd_relation(&wrong, Deformation::Formal, DeltaForm::Dilatation)?;
    let (l, r) = verify_epsilon_invariance(&RelationSet::empty(), Deformation::Formal)?;
    // commuting group entries against the deformed x-D rules
    let scalar = RelationSet::empty()
        .with_rules(suq2_rules(Deformation::Classical))?
        .with_rules(operator_group_rules())?
        .with_rules(xd_rules(Deformation::Formal, DeltaForm::Dilatation))?;
    let osc = verify_oscillator_commutator(&scalar, Deformation::Formal, DeltaForm::Dilatation)?;
    let vanish_at_one = osc.terms().all(|(_, c)| Deformation::Classical.apply(c).is_zero());
    Ok(vec![
        nonzero("x-D relation under Dx → xD + 1 (control)", xd.term_count()),
        nonzero("ε-invariance with no relations (control)", l.term_count() + r.term_count()),
        nonzero("oscillator commutator with commuting coefficients (control)", osc.term_count()),
        Check::flag(S, "commuting-coefficient residual vanishes at q = 1", vanish_at_one),
    ])
}
