use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::qcore::{bracket_asym, bracket_sym, LaurentPoly, QParam, QValue, Residual};

/// Which q-number ladder realizes `aā - qāa = Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FockRealization {
    /// Amplitudes `⟨n⟩^(1/2)`, `Δ = 1`.
    Asym,
    /// Amplitudes `[n]^(1/2)`, `Δ = q^(-n)`.
    Sym,
}

impl FockRealization {
    pub const BOTH: [FockRealization; 2] = [FockRealization::Asym, FockRealization::Sym];

    /// Squared ladder amplitude for `a|n⟩`.
    pub fn amp_sq(self, n: usize, q: &QParam) -> Result<QValue> {
        match self {
            FockRealization::Asym => bracket_asym(n as i64, q),
            FockRealization::Sym => Ok(bracket_sym(n as i64, q)),
        }
    }

    /// Eigenvalue of `Δ` on `|n⟩`.
    pub fn delta(self, n: usize, q: &QParam) -> QValue {
        match self {
            FockRealization::Asym => q.from_int(1),
            FockRealization::Sym => q.q_pow(-(n as i32)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FockRealization::Asym => "asym",
            FockRealization::Sym => "sym",
        }
    }
}

impl std::fmt::Display for FockRealization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// `½(amp(n)² + amp(n+1)²)`, the energy of `|n⟩`.
pub fn spectrum(realization: FockRealization, q: &QParam, n: usize) -> Result<QValue> {
    let lo = realization.amp_sq(n, q)?;
    let hi = realization.amp_sq(n + 1, q)?;
    Ok(lo.try_add(&hi)?.scale(1, 2))
}

#[derive(Clone, Debug)]
enum FockData {
    Float {
        a: DMatrix<f64>,
        abar: DMatrix<f64>,
        h: DMatrix<f64>,
        delta: DMatrix<f64>,
    },
    /// Squared amplitudes for `n = 0..=N` and the diagonal of `Δ`.
    Exact {
        amp_sq: Vec<LaurentPoly>,
        delta: Vec<LaurentPoly>,
    },
}

/// Truncated ladder operators on `|0⟩ … |N-1⟩`.
///
/// Matrix convention: `a[n-1, n] = amp(n)` and `abar[n+1, n] = amp(n+1)`,
/// so column `n` holds the image of `|n⟩`.
#[derive(Clone, Debug)]
pub struct FockOps {
    realization: FockRealization,
    q: QParam,
    dim: usize,
    data: FockData,
}

pub fn build_fock(realization: FockRealization, q: QParam, dim: usize) -> Result<FockOps> {
    if dim < 2 {
        return Err(QError::Domain(format!("Fock dimension must be at least 2, got {dim}")));
    }
    let data = match q {
        QParam::Formal => {
            let amp_sq = (0..=dim)
                .map(|n| realization.amp_sq(n, &q).map(|v| v.as_exact().cloned().expect("exact")))
                .collect::<Result<Vec<_>>>()?;
            let delta = (0..dim)
                .map(|n| realization.delta(n, &q).as_exact().cloned().expect("exact"))
                .collect();
            FockData::Exact { amp_sq, delta }
        }
        QParam::Numeric(_) => {
            let sq = (0..=dim)
                .map(|n| realization.amp_sq(n, &q).map(|v| v.as_float().expect("float")))
                .collect::<Result<Vec<_>>>()?;
            if let Some(n) = sq.iter().position(|v| !v.is_finite()) {
                return Err(QError::NonFinite(format!("ladder amplitude at n = {n}")));
            }
            let amp: Vec<f64> = sq.iter().map(|v| v.sqrt()).collect();
            let mut a = DMatrix::zeros(dim, dim);
            let mut abar = DMatrix::zeros(dim, dim);
            let mut h = DMatrix::zeros(dim, dim);
            let mut delta = DMatrix::zeros(dim, dim);
            for n in 0..dim {
                if n > 0 {
                    a[(n - 1, n)] = amp[n];
                }
                if n + 1 < dim {
                    abar[(n + 1, n)] = amp[n + 1];
                }
                h[(n, n)] = 0.5 * (sq[n] + sq[n + 1]);
                delta[(n, n)] = realization.delta(n, &q).as_float().expect("float");
            }
            FockData::Float { a, abar, h, delta }
        }
    };
    Ok(FockOps {
        realization,
        q,
        dim,
        data,
    })
}

impl FockOps {
    pub fn realization(&self) -> FockRealization {
        self.realization
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.data, FockData::Exact { .. })
    }

    /// `(a, abar, H, Δ)` in float mode.
    pub fn matrices(&self) -> Option<(&DMatrix<f64>, &DMatrix<f64>, &DMatrix<f64>, &DMatrix<f64>)> {
        match &self.data {
            FockData::Float { a, abar, h, delta } => Some((a, abar, h, delta)),
            FockData::Exact { .. } => None,
        }
    }

    /// Squared amplitude `amp(n)²` for `0 ≤ n ≤ N`.
    pub fn amp_sq(&self, n: usize) -> QValue {
        match &self.data {
            FockData::Exact { amp_sq, .. } => QValue::Exact(amp_sq[n].clone()),
            FockData::Float { .. } => self.realization.amp_sq(n, &self.q).expect("n >= 0"),
        }
    }

    /// Diagonal entry `H[n, n]`.
    pub fn energy(&self, n: usize) -> QValue {
        match &self.data {
            FockData::Float { h, .. } => QValue::Float(h[(n, n)]),
            FockData::Exact { amp_sq, .. } => QValue::Exact((&amp_sq[n] + &amp_sq[n + 1]).scale(&crate::qcore::rational(1, 2))),
        }
    }

    /// `aā - qāa - Δ` on the interior `(N-1)×(N-1)` block, entrywise
    /// relative to `max(1, |aā| + q|āa| + |Δ|)`.
    pub fn commutator_residual(&self) -> Residual {
        self.diagonal_identity(|q, lo, hi, d| hi - q * lo - d, |q, lo, hi, d| hi.abs() + q * lo.abs() + d.abs(), |lo, hi, d| {
            &(hi - &(&LaurentPoly::q() * lo)) - d
        })
    }

    /// `AᵗεA - q^(-1/2)Δ` on the interior block, where
    /// `AᵗεA = q^(-1/2)aā - q^(1/2)āa`; relative as above.
    pub fn epsilon_form_check(&self) -> Residual {
        self.diagonal_identity(
            |q, lo, hi, d| (hi - d) / q.sqrt() - q.sqrt() * lo,
            |q, lo, hi, d| (hi.abs() + d.abs()) / q.sqrt() + q.sqrt() * lo.abs(),
            |lo, hi, d| {
                let lhs = &(&LaurentPoly::q_half_pow(-1) * hi) - &(&LaurentPoly::q_half_pow(1) * lo);
                &lhs - &(&LaurentPoly::q_half_pow(-1) * d)
            },
        )
    }

    /// Diagonal of `AᵗεA` on the interior block.
    pub fn epsilon_form_diagonal(&self) -> Vec<QValue> {
        (0..self.dim - 1)
            .map(|n| match (&self.q, self.amp_sq(n), self.amp_sq(n + 1)) {
                (QParam::Numeric(q), QValue::Float(lo), QValue::Float(hi)) => {
                    QValue::Float(hi / q.sqrt() - q.sqrt() * lo)
                }
                (_, lo, hi) => QValue::Exact(
                    &(&LaurentPoly::q_half_pow(-1) * hi.as_exact().expect("exact"))
                        - &(&LaurentPoly::q_half_pow(1) * lo.as_exact().expect("exact")),
                ),
            })
            .collect()
    }

    /// The same products over the full matrix, last row included. Only the
    /// truncation edge contributes; reported, never asserted.
    pub fn edge_magnitude(&self) -> f64 {
        match &self.data {
            FockData::Float { a, abar, delta, .. } => {
                let q = self.q.value().expect("float");
                let r = a * abar - abar * a * q - delta;
                r.abs().max()
            }
            FockData::Exact { amp_sq, delta } => {
                let n = self.dim - 1;
                // aā on the last state loses the amplitude that left the basis
                let r = &(&(&LaurentPoly::q() * &amp_sq[n]) * &LaurentPoly::from_int(-1)) - &delta[n];
                r.term_count() as f64
            }
        }
    }

    fn diagonal_identity(
        &self,
        float: impl Fn(f64, f64, f64, f64) -> f64,
        scale: impl Fn(f64, f64, f64, f64) -> f64,
        exact: impl Fn(&LaurentPoly, &LaurentPoly, &LaurentPoly) -> LaurentPoly,
    ) -> Residual {
        match &self.data {
            FockData::Float { a, abar, delta, .. } => {
                let q = self.q.value().expect("float");
                let aab = a * abar;
                let aba = abar * a;
                let m = self.dim - 1;
                let mut worst = 0.0f64;
                for i in 0..m {
                    for j in 0..m {
                        let r = float(q, aba[(i, j)], aab[(i, j)], delta[(i, j)]);
                        let s = scale(q, aba[(i, j)], aab[(i, j)], delta[(i, j)]).max(1.0);
                        worst = worst.max(r.abs() / s);
                    }
                }
                Residual::Float(worst)
            }
            FockData::Exact { amp_sq, delta } => {
                let mut worst = Residual::Exact(LaurentPoly::zero());
                for n in 0..self.dim - 1 {
                    worst = worst.max(Residual::Exact(exact(&amp_sq[n], &amp_sq[n + 1], &delta[n])));
                }
                worst
            }
        }
    }
}
