//! Quotient bases of the chiral Fock module, one per determinant family.
//!
//! The family space of a content `c` is spanned by `g * b` for every generator `g`
//! with room in `c` and every basis word `b` of the family of `c - e_row(g)`, plus
//! the empty word when `c` is uniform. Relation instances `u r v` with a nonempty
//! prefix `u` are already zero in that span, so only instances with an empty prefix
//! (and the single-letter annihilation words) enter the elimination. Basis words are
//! the columns left free, i.e. the smallest words in right-to-left order.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::cache::DiskCache;
use super::elimination::{self, Echelon, SparseVec};
use super::relations::{templates, EpsilonConvention};
use super::{all_gens, word_order, ChiralState, Chirality, Content, Gen, Word};
use crate::error::{Error, Result};
use crate::scalarfield::Field;

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockConfig {
    /// Ceiling on spanning words per family.
    pub budget: usize,
    pub convention: EpsilonConvention,
}

impl Default for FockConfig {
    fn default() -> Self {
        FockConfig { budget: DEFAULT_BUDGET, convention: EpsilonConvention::default() }
    }
}

#[derive(Debug)]
pub struct ClassQuotient {
    content: Content,
    columns: Vec<Vec<Gen>>,
    col_index: HashMap<(Gen, usize), usize>,
    vac_col: Option<usize>,
    basis_cols: Vec<usize>,
    reductions: Vec<SparseVec>,
    relation_rows: usize,
}

impl ClassQuotient {
    pub fn content(&self) -> &Content {
        &self.content
    }

    pub fn dimension(&self) -> usize {
        self.basis_cols.len()
    }

    /// Spanning words in column order.
    pub fn spanning_words(&self) -> &[Vec<Gen>] {
        &self.columns
    }

    pub fn basis_columns(&self) -> &[usize] {
        &self.basis_cols
    }

    pub fn basis_word(&self, k: usize) -> &[Gen] {
        &self.columns[self.basis_cols[k]]
    }

    pub fn basis_words(&self) -> Vec<Vec<Gen>> {
        self.basis_cols.iter().map(|&c| self.columns[c].clone()).collect()
    }

    /// Expression of spanning column `col` in basis coordinates.
    pub fn reduction(&self, col: usize) -> &SparseVec {
        &self.reductions[col]
    }

    pub fn relation_rows(&self) -> usize {
        self.relation_rows
    }

    pub fn vacuum_column(&self) -> Option<usize> {
        self.vac_col
    }

    pub(crate) fn from_parts(
        content: Content,
        columns: Vec<Vec<Gen>>,
        basis_cols: Vec<usize>,
        reductions: Vec<SparseVec>,
        relation_rows: usize,
        lower: &HashMap<usize, Arc<ClassQuotient>>,
    ) -> Result<ClassQuotient> {
        let mut col_index = HashMap::new();
        let mut vac_col = None;
        for (k, w) in columns.iter().enumerate() {
            match w.split_first() {
                None => vac_col = Some(k),
                Some((g, rest)) => {
                    let low = lower
                        .get(&g.row())
                        .ok_or_else(|| Error::Cache(format!("no lower family for row {}", g.row())))?;
                    let idx = (0..low.dimension())
                        .find(|&b| low.basis_word(b) == rest)
                        .ok_or_else(|| Error::Cache("column is not generator times lower basis word".into()))?;
                    col_index.insert((*g, idx), k);
                }
            }
        }
        if reductions.len() != columns.len() {
            return Err(Error::Cache("reduction count does not match column count".into()));
        }
        Ok(ClassQuotient { content, columns, col_index, vac_col, basis_cols, reductions, relation_rows })
    }
}

/// The chiral Fock module over a fixed field, with a family-quotient cache.
pub struct FockModule {
    n: usize,
    field: Field,
    config: FockConfig,
    classes: RwLock<HashMap<Content, Arc<ClassQuotient>>>,
    disk: Option<DiskCache>,
}

impl std::fmt::Debug for FockModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FockModule")
            .field("n", &self.n)
            .field("field", &self.field.label())
            .field("config", &self.config)
            .finish()
    }
}

impl FockModule {
    pub fn new(n: usize, field: &Field, config: FockConfig) -> Result<FockModule> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} < 2")));
        }
        if let Some(h) = field.h() {
            if (h as usize) <= n {
                return Err(Error::InvalidParameter(format!("h = {h} must exceed n = {n}")));
            }
        }
        Ok(FockModule {
            n,
            field: field.clone(),
            config,
            classes: RwLock::new(HashMap::new()),
            disk: None,
        })
    }

    pub fn with_disk_cache(mut self, cache: DiskCache) -> FockModule {
        self.disk = Some(cache);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn config(&self) -> FockConfig {
        self.config
    }

    pub fn convention(&self) -> EpsilonConvention {
        self.config.convention
    }

    pub fn disk_cache(&self) -> Option<&DiskCache> {
        self.disk.as_ref()
    }

    pub fn cached_families(&self) -> Vec<Content> {
        let mut v: Vec<Content> = self.classes.read().unwrap().keys().cloned().collect();
        v.sort();
        v
    }

    fn check_content(&self, c: &Content) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::InvalidParameter(format!("content {c} has wrong length for n = {}", self.n)));
        }
        Ok(())
    }

    /// Quotient basis of the family whose top content is `c`.
    pub fn quotient(&self, c: &Content) -> Result<Arc<ClassQuotient>> {
        self.check_content(c)?;
        if let Some(q) = self.classes.read().unwrap().get(c) {
            return Ok(q.clone());
        }
        let built = match self.load_from_disk(c)? {
            Some(q) => q,
            None => {
                let q = self.build(c)?;
                if let Some(disk) = &self.disk {
                    disk.store(self, &q)?;
                }
                q
            }
        };
        let mut map = self.classes.write().unwrap();
        Ok(map.entry(c.clone()).or_insert_with(|| Arc::new(built)).clone())
    }

    pub fn dimension(&self, c: &Content) -> Result<usize> {
        Ok(self.quotient(c)?.dimension())
    }

    fn lower_families(&self, c: &Content) -> Result<HashMap<usize, Arc<ClassQuotient>>> {
        let mut lower = HashMap::new();
        for row in 1..=self.n {
            if let Some(l) = c.minus_row(row) {
                lower.insert(row, self.quotient(&l)?);
            }
        }
        Ok(lower)
    }

    fn load_from_disk(&self, c: &Content) -> Result<Option<ClassQuotient>> {
        let Some(disk) = &self.disk else { return Ok(None) };
        let Some(record) = disk.load(self, c)? else { return Ok(None) };
        let lower = self.lower_families(c)?;
        record.into_quotient(&self.field, &lower).map(Some)
    }

    /// Image of generator `g` applied to `v` (basis coordinates of the family of `from`),
    /// in basis coordinates of the family of `from + e_row(g)`.
    pub fn act(&self, g: Gen, from: &Content, v: &SparseVec) -> Result<SparseVec> {
        let target = from.plus_row(g.row());
        let q = self.quotient(&target)?;
        let mut acc: SparseVec = Vec::new();
        for (idx, coef) in v {
            let col = q.col_index.get(&(g, *idx)).ok_or_else(|| {
                Error::Inconsistent(format!("missing column {g} x basis {idx} in family {target}"))
            })?;
            acc = elimination::axpy(&acc, coef, &q.reductions[*col]);
        }
        Ok(acc)
    }

    /// The vacuum inside the family of a uniform content.
    pub fn vacuum_vector(&self, target: &Content) -> Result<SparseVec> {
        if !target.is_uniform() {
            return Err(Error::InvalidParameter(format!("vacuum is not in the family of {target}")));
        }
        let q = self.quotient(target)?;
        Ok(q.reductions[q.vac_col.expect("uniform family has a vacuum column")].clone())
    }

    /// Reduces `gens |0>` inside the family of `target`; the word's content must be
    /// `target - m (1,...,1)` for some `m >= 0`.
    pub fn reduce_gens_into(&self, gens: &[Gen], target: &Content) -> Result<SparseVec> {
        let content = Content::of_gens(self.n, gens);
        let base = target
            .checked_sub(&content)
            .filter(|b| b.is_uniform())
            .ok_or_else(|| Error::InvalidParameter(format!("word content {content} not in family of {target}")))?;
        let mut v = self.vacuum_vector(&base)?;
        let mut cur = base;
        for g in gens.iter().rev() {
            if v.is_empty() {
                return Ok(v);
            }
            v = self.act(*g, &cur, &v)?;
            cur = cur.plus_row(g.row());
        }
        Ok(v)
    }

    /// Applies `gens` (rightmost first) to a vector of the family of `from`. Returns the
    /// image and its content.
    pub fn act_word(&self, gens: &[Gen], from: &Content, v: &SparseVec) -> Result<(SparseVec, Content)> {
        let mut v = v.clone();
        let mut cur = from.clone();
        for g in gens.iter().rev() {
            v = if v.is_empty() { v } else { self.act(*g, &cur, &v)? };
            cur = cur.plus_row(g.row());
        }
        Ok((v, cur))
    }

    /// Rewrites a vector of the family of `from` in the family of `to`, where
    /// `to - from` is a multiple of `(1, ..., 1)`.
    pub fn lift(&self, from: &Content, v: &SparseVec, to: &Content) -> Result<SparseVec> {
        if from == to {
            return Ok(v.clone());
        }
        if to.checked_sub(from).filter(|d| d.is_uniform()).is_none() {
            return Err(Error::InvalidParameter(format!("cannot lift {from} into {to}")));
        }
        let q = self.quotient(from)?;
        let mut acc: SparseVec = Vec::new();
        for (k, c) in v {
            let w = self.reduce_gens_into(q.basis_word(*k), to)?;
            acc = elimination::axpy(&acc, c, &w);
        }
        Ok(acc)
    }

    /// Expresses a family vector in words: the basis words of the top family.
    pub fn vector_to_state(&self, top: &Content, v: &SparseVec, chirality: Chirality) -> Result<ChiralState> {
        let q = self.quotient(top)?;
        let mut s = ChiralState::zero(&self.field, chirality);
        for (k, c) in v {
            s.add_term(Word::new(chirality, q.basis_word(*k).to_vec()), c)?;
        }
        Ok(s)
    }

    /// Groups the words of `state` by determinant family and reduces each group in the
    /// family of its highest content present. Keys are those top contents.
    pub fn reduce_blocks(&self, state: &ChiralState) -> Result<BTreeMap<Content, SparseVec>> {
        let mut tops: BTreeMap<Content, Content> = BTreeMap::new();
        for w in state.terms().keys() {
            let c = w.content(self.n);
            let root = c.root();
            let e = tops.entry(root).or_insert_with(|| c.clone());
            if c.depth() > e.depth() {
                *e = c;
            }
        }
        let mut out: BTreeMap<Content, SparseVec> = BTreeMap::new();
        for (w, coef) in state.terms() {
            let top = &tops[&w.content(self.n).root()];
            let v = self.reduce_gens_into(&w.gens, top)?;
            let acc = out.entry(top.clone()).or_default();
            *acc = elimination::axpy(acc, coef, &v);
        }
        out.retain(|_, v| !v.is_empty());
        Ok(out)
    }

    /// The state rewritten in basis words only.
    pub fn reduce(&self, state: &ChiralState) -> Result<ChiralState> {
        let mut out = ChiralState::zero(&self.field, state.chirality());
        for (top, v) in self.reduce_blocks(state)? {
            let part = self.vector_to_state(&top, &v, state.chirality())?;
            out.add_scaled(&part, &self.field.one())?;
        }
        Ok(out)
    }

    pub fn is_zero(&self, state: &ChiralState) -> Result<bool> {
        Ok(self.reduce_blocks(state)?.is_empty())
    }

    fn build(&self, c: &Content) -> Result<ClassQuotient> {
        let n = self.n;
        let field = &self.field;
        let lower = self.lower_families(c)?;

        // spanning columns
        let mut cols: Vec<(Vec<Gen>, Option<(Gen, usize)>)> = Vec::new();
        if c.is_uniform() {
            cols.push((Vec::new(), None));
        }
        for g in all_gens(n) {
            let Some(low) = lower.get(&g.row()) else { continue };
            for b in 0..low.dimension() {
                let mut w = Vec::with_capacity(c.total() as usize);
                w.push(g);
                w.extend_from_slice(low.basis_word(b));
                cols.push((w, Some((g, b))));
            }
            if cols.len() > self.config.budget {
                return Err(Error::BudgetExceeded {
                    class: c.to_string(),
                    size: cols.len(),
                    budget: self.config.budget,
                });
            }
        }
        cols.sort_by(|a, b| word_order(&a.0, &b.0));
        let mut col_index = HashMap::new();
        let mut vac_col = None;
        for (k, (_, key)) in cols.iter().enumerate() {
            match key {
                Some(key) => {
                    col_index.insert(*key, k);
                }
                None => vac_col = Some(k),
            }
        }
        let to_cols = |g: Gen, v: &SparseVec| -> SparseVec {
            elimination::collect(field, v.iter().map(|(b, x)| (col_index[&(g, *b)], x.clone())))
        };
        // coordinates of `gens * (basis word b of family lo)` in spanning columns
        let span_of = |gens: &[Gen], lo: &Content, b: usize| -> Result<SparseVec> {
            let (first, rest) = gens.split_first().expect("template words are nonempty");
            let mut v: SparseVec = vec![(b, field.one())];
            let mut cur = lo.clone();
            for g in rest.iter().rev() {
                if v.is_empty() {
                    break;
                }
                v = self.act(*g, &cur, &v)?;
                cur = cur.plus_row(g.row());
            }
            Ok(to_cols(*first, &v))
        };

        let mut ech = Echelon::new(cols.len());

        // template contents that fit in c
        let mut shapes: Vec<Content> = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                shapes.push(Content::zero(n).plus_row(i).plus_row(j));
            }
        }
        if let Some(h) = field.h() {
            for i in 1..=n {
                let mut s = Content::zero(n);
                s.0[i - 1] = h;
                shapes.push(s);
            }
        }
        shapes.push(Content::ones(n, 1));

        for shape in &shapes {
            let Some(lo) = c.checked_sub(shape) else { continue };
            let low = self.quotient(&lo)?;
            if low.dimension() == 0 {
                continue;
            }
            let temps: Vec<_> = templates(n, field, self.config.convention, &lo.weight(), shape)
                .into_iter()
                .filter(|t| &t.content == shape)
                .collect();
            for b in 0..low.dimension() {
                // the determinant tail: the basis word itself, lifted into the family of c
                let lifted = if temps.iter().any(|t| t.tail.is_some()) {
                    let w = low.basis_word(b);
                    Some(match w.split_first() {
                        None => vec![(vac_col.expect("uniform family"), field.one())],
                        Some((g, rest)) => {
                            let inner = self.reduce_gens_into(rest, &c.minus_row(g.row()).unwrap())?;
                            to_cols(*g, &inner)
                        }
                    })
                } else {
                    None
                };
                for t in &temps {
                    let mut row: SparseVec = Vec::new();
                    for (w, coef) in &t.terms {
                        let v = span_of(w, &lo, b)?;
                        row = elimination::axpy(&row, coef, &v);
                    }
                    if let (Some(tail), Some(l)) = (&t.tail, &lifted) {
                        row = elimination::axpy(&row, tail, l);
                    }
                    ech.insert(row);
                }
            }
        }

        // a^i_alpha |0> = 0 for i >= 2
        for g in all_gens(n).into_iter().filter(|g| g.row() >= 2) {
            let Some(lo) = c.minus_row(g.row()) else { continue };
            if !lo.is_uniform() {
                continue;
            }
            let vac = self.vacuum_vector(&lo)?;
            ech.insert(to_cols(g, &vac));
        }

        let relation_rows = ech.rows_seen();
        let (basis_cols, reductions) = ech.finish(field);
        if let Some(v) = vac_col {
            if reductions[v].is_empty() {
                return Err(Error::Inconsistent(format!(
                    "vacuum vanishes in family {c} (epsilon convention {})",
                    self.config.convention.tag()
                )));
            }
        }
        Ok(ClassQuotient {
            content: c.clone(),
            columns: cols.into_iter().map(|(w, _)| w).collect(),
            col_index,
            vac_col,
            basis_cols,
            reductions,
            relation_rows,
        })
    }
}
