use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ncpoly::{Generator, NCPoly, Word};
use crate::error::{QError, Result};
use crate::qcore::LaurentPoly;

/// Rewrite steps allowed per normal-form computation.
pub const STEP_BUDGET: usize = 1_000_000;

/// ᾱ < α < β̄ < β < x < D < Λ.
pub const DEFAULT_ORDER: [Generator; 7] = [
    Generator::AlphaBar,
    Generator::Alpha,
    Generator::BetaBar,
    Generator::Beta,
    Generator::X,
    Generator::D,
    Generator::Lambda,
];

/// Where the next rewrite is applied inside a word.
#[derive(Clone, Copy, Debug)]
pub enum RewriteStrategy {
    Leftmost,
    /// Uniformly random reducible position, reproducible from the seed.
    Random(u64),
}

/// A critical pair whose two reductions disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub word: Word,
    pub difference: NCPoly,
}

/// Rewrite rules on adjacent generator pairs, each strictly decreasing in
/// degree-lexicographic order.
#[derive(Clone, Debug)]
pub struct RelationSet {
    order: Vec<Generator>,
    rank: HashMap<Generator, u16>,
    rules: BTreeMap<(Generator, Generator), NCPoly>,
    budget: usize,
    confluent: Option<bool>,
}

type Key = (usize, Vec<u16>);

impl RelationSet {
    pub fn new(order: &[Generator]) -> Result<Self> {
        let mut rank = HashMap::new();
        for (i, g) in order.iter().enumerate() {
            if rank.insert(*g, i as u16).is_some() {
                return Err(QError::Domain(format!("generator {g} listed twice in the order")));
            }
        }
        Ok(Self {
            order: order.to_vec(),
            rank,
            rules: BTreeMap::new(),
            budget: STEP_BUDGET,
            confluent: None,
        })
    }

    pub fn empty() -> Self {
        Self::new(&DEFAULT_ORDER).expect("default order is duplicate-free")
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn order(&self) -> &[Generator] {
        &self.order
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(Generator, Generator), &NCPoly)> {
        self.rules.iter()
    }

    pub fn rule(&self, a: Generator, b: Generator) -> Option<&NCPoly> {
        self.rules.get(&(a, b))
    }

    /// `None` until [`RelationSet::certify`] has run.
    pub fn confluent(&self) -> Option<bool> {
        self.confluent
    }

    fn key(&self, w: &[Generator]) -> Result<Key> {
        let ranks = w
            .iter()
            .map(|g| {
                self.rank
                    .get(g)
                    .copied()
                    .ok_or_else(|| QError::Domain(format!("generator {g} is not in the order")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((w.len(), ranks))
    }

    fn word_of(&self, key: &Key) -> Word {
        key.1.iter().map(|r| self.order[*r as usize]).collect()
    }

    /// True when `a < b` in degree-lexicographic order.
    pub fn word_less(&self, a: &[Generator], b: &[Generator]) -> Result<bool> {
        Ok(self.key(a)? < self.key(b)?)
    }

    /// Adds `ab → rhs`; every word of `rhs` must be smaller than `ab`.
    pub fn with_rule(mut self, a: Generator, b: Generator, rhs: NCPoly) -> Result<Self> {
        let lhs = [a, b];
        for (w, _) in rhs.terms() {
            if !self.word_less(w, &lhs)? {
                return Err(QError::NonDecreasingRule(format!("{a}{b} -> {rhs}")));
            }
        }
        self.rules.insert((a, b), rhs);
        self.confluent = None;
        Ok(self)
    }

    pub fn with_rules<I: IntoIterator<Item = ((Generator, Generator), NCPoly)>>(self, rules: I) -> Result<Self> {
        rules
            .into_iter()
            .try_fold(self, |acc, ((a, b), rhs)| acc.with_rule(a, b, rhs))
    }

    fn reducible_positions(&self, w: &[Generator]) -> Vec<usize> {
        w.windows(2)
            .enumerate()
            .filter(|(_, p)| self.rules.contains_key(&(p[0], p[1])))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_normal(&self, w: &[Generator]) -> bool {
        self.reducible_positions(w).is_empty()
    }

    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        self.normal_form_with(p, RewriteStrategy::Leftmost)
    }

    /// Rewrites until no rule applies. Pending words are processed largest
    /// first; rewriting only produces smaller words, so each word is
    /// visited once with its fully accumulated coefficient.
    pub fn normal_form_with(&self, p: &NCPoly, strategy: RewriteStrategy) -> Result<NCPoly> {
        let mut rng = match strategy {
            RewriteStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            RewriteStrategy::Leftmost => None,
        };
        let mut pending: BTreeMap<Key, LaurentPoly> = BTreeMap::new();
        for (w, c) in p.terms() {
            push(&mut pending, self.key(w)?, c);
        }
        let mut done = NCPoly::zero();
        let mut steps = 0usize;
        while let Some((key, c)) = pending.pop_last() {
            let w = self.word_of(&key);
            let positions = self.reducible_positions(&w);
            if positions.is_empty() {
                done.add_term(w, &c);
                continue;
            }
            steps += 1;
            if steps > self.budget {
                return Err(QError::NonTermination(self.budget));
            }
            let i = match rng.as_mut() {
                Some(r) => positions[r.random_range(0..positions.len())],
                None => positions[0],
            };
            let rhs = &self.rules[&(w[i], w[i + 1])];
            for (mid, coeff) in rhs.terms() {
                let mut nw = Vec::with_capacity(w.len() + mid.len());
                nw.extend_from_slice(&w[..i]);
                nw.extend_from_slice(mid);
                nw.extend_from_slice(&w[i + 2..]);
                push(&mut pending, self.key(&nw)?, &(&c * coeff));
            }
        }
        Ok(done)
    }

    /// Reduces every overlap `abc` of two rules both ways and returns the
    /// pairs that disagree. An empty list together with termination means
    /// normal forms are unique.
    pub fn critical_pairs(&self) -> Result<Vec<Obstruction>> {
        let mut out = Vec::new();
        for (&(a, b), r1) in &self.rules {
            for (&(b2, c), r2) in &self.rules {
                if b != b2 {
                    continue;
                }
                let left = r1 * &NCPoly::gen(c);
                let right = &NCPoly::gen(a) * r2;
                let difference = self.normal_form(&(left - right))?;
                if !difference.is_zero() {
                    out.push(Obstruction {
                        word: vec![a, b, c],
                        difference,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Runs the overlap check and records the verdict.
    pub fn certify(mut self) -> Result<Self> {
        self.confluent = Some(self.critical_pairs()?.is_empty());
        Ok(self)
    }
}

fn push(pending: &mut BTreeMap<Key, LaurentPoly>, key: Key, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match pending.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}
