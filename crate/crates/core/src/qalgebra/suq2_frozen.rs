// Generated by `cargo run --example derive_suq2`. Do not edit by hand.
//
// Each entry is `(left pair, [(word, [(2·exponent of q, num, den)])])`.

use super::ncpoly::Generator::{self, *};

pub(crate) type FrozenCoeff = &'static [(i32, i64, i64)];
pub(crate) type FrozenRule = ((Generator, Generator), &'static [(&'static [Generator], FrozenCoeff)]);

pub(crate) const SUQ2_RULES: &[FrozenRule] = &[
    (
        (Beta, BetaBar),
        &[
            (&[], &[(4, 1, 1)]),
            (&[AlphaBar, Alpha], &[(4, -1, 1)]),
        ],
    ),
    (
        (Beta, Alpha),
        &[
            (&[Alpha, Beta], &[(-2, 1, 1)]),
        ],
    ),
    (
        (Beta, AlphaBar),
        &[
            (&[AlphaBar, Beta], &[(2, 1, 1)]),
        ],
    ),
    (
        (BetaBar, Beta),
        &[
            (&[], &[(4, 1, 1)]),
            (&[AlphaBar, Alpha], &[(4, -1, 1)]),
        ],
    ),
    (
        (BetaBar, Alpha),
        &[
            (&[Alpha, BetaBar], &[(-2, 1, 1)]),
        ],
    ),
    (
        (BetaBar, AlphaBar),
        &[
            (&[AlphaBar, BetaBar], &[(2, 1, 1)]),
        ],
    ),
    (
        (Alpha, AlphaBar),
        &[
            (&[], &[(0, 1, 1), (4, -1, 1)]),
            (&[AlphaBar, Alpha], &[(4, 1, 1)]),
        ],
    ),
];
