use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::qcore::LaurentPoly;

/// Letters of the noncommutative algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    AlphaBar,
    Alpha,
    BetaBar,
    Beta,
    X,
    D,
    Lambda,
    User(u16),
}

impl Generator {
    /// The four entries of the quantum-group matrix.
    pub const GROUP: [Generator; 4] = [
        Generator::AlphaBar,
        Generator::Alpha,
        Generator::BetaBar,
        Generator::Beta,
    ];
    /// Position, difference operator and dilatation.
    pub const OPERATORS: [Generator; 3] = [Generator::X, Generator::D, Generator::Lambda];

    pub fn name(self) -> String {
        match self {
            Generator::AlphaBar => "ᾱ".into(),
            Generator::Alpha => "α".into(),
            Generator::BetaBar => "β̄".into(),
            Generator::Beta => "β".into(),
            Generator::X => "x".into(),
            Generator::D => "D".into(),
            Generator::Lambda => "Λ".into(),
            Generator::User(i) => format!("u{i}"),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub type Word = Vec<Generator>;

/// Linear combination of words with Laurent-polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(LaurentPoly::one())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn term(word: Word, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        Self { terms }
    }

    pub fn word(word: &[Generator]) -> Self {
        Self::term(word.to_vec(), LaurentPoly::one())
    }

    pub fn gen(g: Generator) -> Self {
        Self::word(&[g])
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, LaurentPoly)>>(items: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in items {
            p.add_term(w, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &[Generator]) -> LaurentPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, LaurentPoly)> {
        self.terms.into_iter()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Adds `c·word` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, word: Word, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v * c)))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Replaces every occurrence of `g` by `replacement`.
    pub fn substitute(&self, g: Generator, replacement: &NCPoly) -> Self {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::scalar(c.clone());
            for &letter in w {
                acc = if letter == g {
                    &acc * replacement
                } else {
                    &acc * &NCPoly::gen(letter)
                };
            }
            out = out + acc;
        }
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        for (w, c) in rhs.terms {
            self.add_term(w, &c);
        }
        self
    }
}

impl<'a> Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.clone() - rhs.clone()
    }
}

/// Concatenation product; letters never move past each other.
impl<'a> Mul<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<String> = w.iter().map(|g| g.name()).collect();
            let word = word.join("*");
            match (c.is_one(), w.is_empty(), c.term_count()) {
                (_, true, _) => write!(f, "({c})")?,
                (true, false, _) => write!(f, "{word}")?,
                (false, false, 1) => write!(f, "{c}*{word}")?,
                (false, false, _) => write!(f, "({c})*{word}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn product_keeps_letter_order() {
        let p = &NCPoly::gen(X) * &NCPoly::gen(D);
        let r = &NCPoly::gen(D) * &NCPoly::gen(X);
        assert_ne!(p, r);
        assert_eq!(p.coeff(&[X, D]), LaurentPoly::one());
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = NCPoly::gen(Alpha) - NCPoly::gen(Alpha);
        assert!(p.is_zero());
    }

    #[test]
    fn substitution_replaces_letters() {
        let p = &NCPoly::gen(X) * &NCPoly::gen(Lambda);
        let q = p.substitute(Lambda, &NCPoly::one());
        assert_eq!(q, NCPoly::gen(X));
    }

    #[test]
    fn display() {
        let p = NCPoly::gen(Lambda) + NCPoly::term(vec![X, D], LaurentPoly::q());
        assert_eq!(p.to_string(), "q*x*D + Λ");
    }
}
