//! Derivation of the quantum-group relations from the invariance of ε.
//!
//! Every entry of `TᵗεT - ε` and `TεTᵗ - ε` is a linear combination of
//! two-letter words in ᾱ, α, β̄, β and the empty word. Setting them to zero
//! is a linear system over the rational functions of `q`. Columns are
//! ordered from the largest word down, so after reduction to row echelon
//! form every pivot row reads `largest word = combination of smaller words`,
//! which is a terminating rewrite rule.

use std::cmp::Ordering;
use std::fmt::Write;

use num_traits::ToPrimitive;

use super::matrix::{group_matrix, NCMatrix};
use super::ncpoly::{NCPoly, Word};
use super::relations::RelationSet;
use super::standard::{epsilon, Deformation, Rule};
use crate::error::{QError, Result};
use crate::qcore::{LaurentPoly, RatFn};

/// The entries of `TᵗεT - ε` followed by those of `TεTᵗ - ε`.
pub fn invariance_equations() -> Vec<NCPoly> {
    let t = group_matrix(&LaurentPoly::q_inv());
    let eps = epsilon(Deformation::Formal);
    let tt = t.transpose();
    let left: NCMatrix = &(&(&tt * &eps) * &t) - &eps;
    let right: NCMatrix = &(&(&t * &eps) * &tt) - &eps;
    left.entries().chain(right.entries()).cloned().collect()
}

/// Reduces `rows` in place and returns the pivot columns.
fn row_reduce(rows: &mut Vec<Vec<RatFn>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("pivot is nonzero");
        rows[r] = rows[r].iter().map(|v| v.clone() * inv.clone()).collect();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            rows[i] = rows[i]
                .iter()
                .zip(&rows[r])
                .map(|(a, b)| a.clone() - f.clone() * b.clone())
                .collect();
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Solves the invariance equations for the largest words.
pub fn derive_suq2_rules() -> Result<Vec<Rule>> {
    let order = RelationSet::empty();
    let eqs = invariance_equations();
    let mut words: Vec<Word> = Vec::new();
    for e in &eqs {
        for (w, _) in e.terms() {
            if !words.contains(w) {
                words.push(w.clone());
            }
        }
    }
    let cmp = |a: &Word, b: &Word| -> Ordering {
        if order.word_less(a, b).expect("group letters are ordered") {
            Ordering::Greater
        } else if a == b {
            Ordering::Equal
        } else {
            Ordering::Less
        }
    };
    words.sort_by(cmp);
    let mut rows: Vec<Vec<RatFn>> = eqs
        .iter()
        .map(|e| words.iter().map(|w| RatFn::from_poly(e.coeff(w))).collect())
        .collect();
    let pivots = row_reduce(&mut rows);
    let mut rules = Vec::new();
    for (row, &c) in rows.iter().zip(&pivots) {
        let lhs = &words[c];
        if lhs.len() != 2 {
            return Err(QError::Domain(format!("invariance equations force {lhs:?} = 0")));
        }
        let mut rhs = NCPoly::zero();
        for (j, w) in words.iter().enumerate().skip(c + 1) {
            let coeff = row[j]
                .as_poly()
                .ok_or_else(|| QError::InexactDivision(format!("coefficient {} of {w:?}", row[j])))?;
            rhs.add_term(w.clone(), &-coeff);
        }
        rules.push(((lhs[0], lhs[1]), rhs));
    }
    Ok(rules)
}

/// Rust source for the frozen constants file.
pub fn render_frozen(rules: &[Rule]) -> String {
    let mut s = String::new();
    s.push_str("// Generated by `cargo run --example derive_suq2`. Do not edit by hand.\n");
    s.push_str("//\n");
    s.push_str("// Each entry is `(left pair, [(word, [(2·exponent of q, num, den)])])`.\n\n");
    s.push_str("use super::ncpoly::Generator::{self, *};\n\n");
    s.push_str("pub(crate) type FrozenCoeff = &'static [(i32, i64, i64)];\n");
    s.push_str("pub(crate) type FrozenRule = ((Generator, Generator), &'static [(&'static [Generator], FrozenCoeff)]);\n\n");
    s.push_str("pub(crate) const SUQ2_RULES: &[FrozenRule] = &[\n");
    for ((a, b), rhs) in rules {
        writeln!(s, "    (\n        ({a:?}, {b:?}),\n        &[").unwrap();
        for (w, c) in rhs.terms() {
            let letters: Vec<String> = w.iter().map(|g| format!("{g:?}")).collect();
            let coeffs: Vec<String> = c
                .half_terms()
                .map(|(e, r)| {
                    let n = r.numer().to_i64().expect("small numerator");
                    let d = r.denom().to_i64().expect("small denominator");
                    format!("({e}, {n}, {d})")
                })
                .collect();
            writeln!(s, "            (&[{}], &[{}]),", letters.join(", "), coeffs.join(", ")).unwrap();
        }
        s.push_str("        ],\n    ),\n");
    }
    s.push_str("];\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::standard::suq2_rules;

    #[test]
    fn frozen_file_matches_derivation() {
        let derived = derive_suq2_rules().unwrap();
        assert_eq!(derived, suq2_rules(Deformation::Formal));
        assert_eq!(render_frozen(&derived), include_str!("suq2_frozen.rs"));
    }

    #[test]
    fn derived_rules_kill_the_equations() {
        let r = RelationSet::empty().with_rules(derive_suq2_rules().unwrap()).unwrap();
        for e in invariance_equations() {
            assert!(r.normal_form(&e).unwrap().is_zero(), "{e}");
        }
    }

    #[test]
    fn seven_independent_relations() {
        // four commutation relations and three independent unitarity ones
        assert_eq!(derive_suq2_rules().unwrap().len(), 7);
    }
}
