//! Chiral Fock modules `F = M_q |0>` built constructively.
//!
//! A vector of the module is a linear combination of words in the generators
//! `a^i_alpha` applied to the vacuum (rightmost letter acts first). The module is the
//! free span of words modulo the span of every relation instance `u r(p) v |0>` and the
//! vacuum annihilation words. Words are graded by their row content; the determinant
//! relation links a content `c` to `c - (1, ..., 1)`, so quotients are taken per
//! *family* `{c, c - 1, c - 2, ...}`.
//!
//! The barred generators `abar^alpha_i` satisfy the same relations letter for letter,
//! so one [`FockModule`] serves both chiralities.

mod cache;
pub(crate) mod elimination;
mod quotient;
mod relations;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalarfield::{Field, Scalar};
use crate::weights::WeightVector;

pub use cache::{CacheRecord, CacheStatus, DiskCache, CACHE_FORMAT_VERSION};
pub use elimination::{Echelon, SparseVec};
pub use quotient::{ClassQuotient, FockConfig, FockModule, DEFAULT_BUDGET};
pub use relations::{
    determinant_terms, enumerate_words, relation_instances, EpsilonConvention, RelationInstance,
    RelationKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Chirality {
    Unbarred,
    Barred,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Unbarred => "unbarred",
            Chirality::Barred => "barred",
        })
    }
}

/// Generator indices: `row` is the upper index of `a^i_alpha` (lower index of
/// `abar^alpha_i`), `flavor` the other one. Both are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gen {
    pub row: u8,
    pub flavor: u8,
}

impl Gen {
    pub fn new(row: usize, flavor: usize) -> Gen {
        Gen { row: row as u8, flavor: flavor as u8 }
    }

    pub fn row(self) -> usize {
        self.row as usize
    }

    pub fn flavor(self) -> usize {
        self.flavor as usize
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.row, self.flavor)
    }
}

/// All `n^2` generators in `(row, flavor)` order.
pub fn all_gens(n: usize) -> Vec<Gen> {
    (1..=n).flat_map(|i| (1..=n).map(move |a| Gen::new(i, a))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub chirality: Chirality,
    pub gen: Gen,
}

impl Letter {
    pub fn new(chirality: Chirality, row: usize, flavor: usize) -> Letter {
        Letter { chirality, gen: Gen::new(row, flavor) }
    }

    pub fn unbarred(row: usize, flavor: usize) -> Letter {
        Letter::new(Chirality::Unbarred, row, flavor)
    }

    pub fn barred(row: usize, flavor: usize) -> Letter {
        Letter::new(Chirality::Barred, row, flavor)
    }
}

/// Compares generator sequences right to left; a proper suffix sorts first.
pub fn word_order(a: &[Gen], b: &[Gen]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Letters applied to the vacuum, leftmost letter last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub chirality: Chirality,
    pub gens: Vec<Gen>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.chirality
            .cmp(&other.chirality)
            .then_with(|| word_order(&self.gens, &other.gens))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty(chirality: Chirality) -> Word {
        Word { chirality, gens: Vec::new() }
    }

    pub fn new(chirality: Chirality, gens: Vec<Gen>) -> Word {
        Word { chirality, gens }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn content(&self, n: usize) -> Content {
        Content::of_gens(n, &self.gens)
    }

    pub fn prepend(&self, g: Gen) -> Word {
        let mut gens = Vec::with_capacity(self.gens.len() + 1);
        gens.push(g);
        gens.extend_from_slice(&self.gens);
        Word { chirality: self.chirality, gens }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.chirality {
            Chirality::Unbarred => "a",
            Chirality::Barred => "b",
        };
        if self.gens.is_empty() {
            return write!(f, "|0>");
        }
        for g in &self.gens {
            write!(f, "{sym}{g} ")?;
        }
        write!(f, "|0>")
    }
}

/// Row content of a word: `c[i-1]` counts letters with row index `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Content(pub Vec<u32>);

impl Content {
    pub fn zero(n: usize) -> Content {
        Content(vec![0; n])
    }

    pub fn ones(n: usize, m: u32) -> Content {
        Content(vec![m; n])
    }

    pub fn of_gens(n: usize, gens: &[Gen]) -> Content {
        let mut c = vec![0; n];
        for g in gens {
            c[g.row() - 1] += 1;
        }
        Content(c)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn plus_row(&self, row: usize) -> Content {
        let mut c = self.0.clone();
        c[row - 1] += 1;
        Content(c)
    }

    pub fn minus_row(&self, row: usize) -> Option<Content> {
        let mut c = self.0.clone();
        c[row - 1] = c[row - 1].checked_sub(1)?;
        Some(Content(c))
    }

    pub fn checked_sub(&self, other: &Content) -> Option<Content> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Content)
    }

    pub fn add(&self, other: &Content) -> Content {
        Content(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Number of full determinant blocks that can be removed.
    pub fn depth(&self) -> u32 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    /// Lowest member of the determinant family.
    pub fn root(&self) -> Content {
        let m = self.depth();
        Content(self.0.iter().map(|c| c - m).collect())
    }

    pub fn is_uniform(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Weight of any word with this content.
    pub fn weight(&self) -> WeightVector {
        let n = self.n();
        let c: Vec<usize> = self.0.iter().map(|&x| x as usize).collect();
        WeightVector::vacuum(n).expect("n >= 2").shifted_by(&c)
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Weight of `word |0>`: the vacuum weight shifted once per letter.
pub fn word_weight(n: usize, word: &Word) -> Result<WeightVector> {
    let mut w = WeightVector::vacuum(n)?;
    for g in &word.gens {
        w = w.shift(g.row())?;
    }
    Ok(w)
}

/// Sparse combination of words of one chirality; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralState {
    field: Field,
    chirality: Chirality,
    terms: BTreeMap<Word, Scalar>,
}

impl ChiralState {
    pub fn zero(field: &Field, chirality: Chirality) -> ChiralState {
        ChiralState { field: field.clone(), chirality, terms: BTreeMap::new() }
    }

    pub fn vacuum(field: &Field, chirality: Chirality) -> ChiralState {
        ChiralState::from_word(field, Word::empty(chirality))
    }

    pub fn from_word(field: &Field, word: Word) -> ChiralState {
        let mut s = ChiralState::zero(field, word.chirality);
        s.terms.insert(word, field.one());
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coef * word`.
    pub fn add_term(&mut self, word: Word, coef: &Scalar) -> Result<()> {
        if word.chirality != self.chirality {
            return Err(Error::ChiralityMismatch(format!(
                "{} word in {} state",
                word.chirality, self.chirality
            )));
        }
        if coef.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c = c.checked_add(coef)?;
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                if coef.field() != &self.field {
                    return Err(Error::MixedFields);
                }
                self.terms.insert(word, coef.clone());
            }
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &ChiralState, c: &Scalar) -> Result<()> {
        if other.chirality != self.chirality {
            return Err(Error::ChiralityMismatch("adding states of different chirality".into()));
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &x.checked_mul(c)?)?;
        }
        Ok(())
    }

    pub fn sum(&self, other: &ChiralState) -> Result<ChiralState> {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one())?;
        Ok(out)
    }

    pub fn difference(&self, other: &ChiralState) -> Result<ChiralState> {
        let mut out = self.clone();
        out.add_scaled(other, &-self.field.one())?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> Result<ChiralState> {
        let mut out = ChiralState::zero(&self.field, self.chirality);
        out.add_scaled(self, c)?;
        Ok(out)
    }

    /// Left multiplication by one letter; no reduction.
    pub fn apply_letter(&self, letter: Letter) -> Result<ChiralState> {
        if letter.chirality != self.chirality {
            return Err(Error::ChiralityMismatch(format!(
                "{} letter on {} state",
                letter.chirality, self.chirality
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.prepend(letter.gen), c.clone()))
            .collect();
        Ok(ChiralState { field: self.field.clone(), chirality: self.chirality, terms })
    }

    /// Left multiplication by a word (its rightmost letter acts first).
    pub fn apply_word(&self, gens: &[Gen]) -> Result<ChiralState> {
        let mut s = self.clone();
        for g in gens.iter().rev() {
            s = s.apply_letter(Letter { chirality: self.chirality, gen: *g })?;
        }
        Ok(s)
    }
}
