//! Test-side oracles, independent of the incremental quotient engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use qzm::chiral_fock::{
    enumerate_words, relation_instances, word_order, Chirality, Content, EpsilonConvention, Gen, Word,
};
use qzm::qalgebra::TensorState;
use qzm::scalarfield::{Field, Scalar};

/// Whole-family elimination over every word, rows = every relation instance.
pub struct DenseFamily {
    pub field: Field,
    pub top: Content,
    pub words: Vec<Vec<Gen>>,
    index: HashMap<Vec<Gen>, usize>,
    /// pivot column -> monic row (column -> coefficient)
    pivots: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl DenseFamily {
    pub fn new(field: &Field, conv: EpsilonConvention, top: &Content) -> DenseFamily {
        let n = top.n();
        let mut words = Vec::new();
        for m in 0..=top.depth() {
            let c = Content(top.0.iter().map(|x| x - m).collect());
            words.extend(enumerate_words(n, &c));
        }
        words.sort_by(|a, b| word_order(a, b));
        let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let mut fam = DenseFamily { field: field.clone(), top: top.clone(), words, index, pivots: BTreeMap::new() };
        for inst in relation_instances(field, conv, top, 10_000_000).unwrap() {
            let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (w, c) in &inst.terms {
                let e = row.entry(fam.index[w]).or_insert_with(|| field.zero());
                *e = &*e + c;
            }
            row.retain(|_, c| !c.is_zero());
            fam.insert(row);
        }
        fam
    }

    fn insert(&mut self, row: BTreeMap<usize, Scalar>) {
        let row = self.reduce_map(row);
        if let Some((&lead, c)) = row.iter().next_back() {
            let inv = c.inv().unwrap();
            let row: BTreeMap<usize, Scalar> = row.iter().map(|(k, x)| (*k, x * &inv)).collect();
            self.pivots.insert(lead, row);
        }
    }

    fn reduce_map(&self, mut row: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        // eliminate pivot columns from the largest down
        let mut cursor = usize::MAX;
        loop {
            let next = row.range(..cursor).rev().find(|(k, _)| self.pivots.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { return row };
            for (j, x) in &self.pivots[&k] {
                let e = row.entry(*j).or_insert_with(|| self.field.zero());
                *e = &*e - &(&c * x);
            }
            row.retain(|_, x| !x.is_zero());
            cursor = k;
        }
    }

    pub fn dimension(&self) -> usize {
        self.words.len() - self.pivots.len()
    }

    /// Normal form over free columns of a combination of words.
    pub fn normal_form(&self, terms: &[(Vec<Gen>, Scalar)]) -> BTreeMap<usize, Scalar> {
        let mut row = BTreeMap::new();
        for (w, c) in terms {
            let e = row.entry(self.index[w]).or_insert_with(|| self.field.zero());
            *e = &*e + c;
        }
        row.retain(|_, c: &mut Scalar| !c.is_zero());
        self.reduce_map(row)
    }

    pub fn free_words(&self) -> Vec<Vec<Gen>> {
        (0..self.words.len()).filter(|k| !self.pivots.contains_key(k)).map(|k| self.words[k].clone()).collect()
    }
}

/// Zero test of a tensor state through whole-family elimination on each factor.
pub fn dense_tensor_is_zero(field: &Field, conv: EpsilonConvention, n: usize, s: &TensorState) -> bool {
    let mut tops: BTreeMap<(Content, Content), (Content, Content)> = BTreeMap::new();
    for (l, r) in s.terms().keys() {
        let (cl, cr) = (l.content(n), r.content(n));
        let e = tops.entry((cl.root(), cr.root())).or_insert_with(|| (cl.clone(), cr.clone()));
        if cl.depth() > e.0.depth() {
            e.0 = cl;
        }
        if cr.depth() > e.1.depth() {
            e.1 = cr;
        }
    }
    let mut fams: HashMap<Content, DenseFamily> = HashMap::new();
    let mut blocks: BTreeMap<(Content, Content), BTreeMap<(usize, usize), Scalar>> = BTreeMap::new();
    for ((l, r), c) in s.terms() {
        let top = tops[&(l.content(n).root(), r.content(n).root())].clone();
        for t in [&top.0, &top.1] {
            fams.entry(t.clone()).or_insert_with(|| DenseFamily::new(field, conv, t));
        }
        let lv = fams[&top.0].normal_form(&[(l.gens.clone(), field.one())]);
        let rv = fams[&top.1].normal_form(&[(r.gens.clone(), field.one())]);
        let b = blocks.entry(top).or_default();
        for (x, a) in &lv {
            for (y, bb) in &rv {
                let e = b.entry((*x, *y)).or_insert_with(|| field.zero());
                *e = &*e + &(&(a * bb) * c);
            }
        }
    }
    blocks.values().all(|b| b.values().all(|x| x.is_zero()))
}

pub fn word(ch: Chirality, gens: &[(usize, usize)]) -> Word {
    Word::new(ch, gens.iter().map(|&(i, a)| Gen::new(i, a)).collect())
}
