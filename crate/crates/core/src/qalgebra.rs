//! The operators `Q^i_j = a^i_alpha (x) abar^alpha_j` (summed over `alpha`) acting on
//! the product of the unbarred and barred Fock modules.
//!
//! [`TensorState`] keeps unreduced word pairs. [`ReducedTensor`] stores coordinates in
//! the product of two family quotient bases, one block per pair of determinant
//! families; all checks run on reduced tensors.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::chiral_fock::elimination::{self, SparseVec};
use crate::chiral_fock::{Chirality, Content, FockModule, Gen, Word};
use crate::diagrams::{Growth, YoungDiagram};
use crate::error::{Error, Result};
use crate::scalarfield::{Field, Scalar};
use crate::weights::WeightVector;

/// A sum of `c * (left word) (x) (right word)`; each word acts rightmost letter first.
pub type TensorOp = Vec<(Vec<Gen>, Vec<Gen>, Scalar)>;

/// `Q^i_j` as a tensor operator.
pub fn q_op(n: usize, i: usize, j: usize, field: &Field) -> TensorOp {
    (1..=n).map(|a| (vec![Gen::new(i, a)], vec![Gen::new(j, a)], field.one())).collect()
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if (1..=n).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(format!("index {i} not in 1..={n}")))
    }
}

/// Ordered `(i, j)` factors; the rightmost acts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMonomial(pub Vec<(usize, usize)>);

impl QMonomial {
    /// `(Q^i_i)^{m_i} ... (Q^2_2)^{m_2} (Q^1_1)^{m_1}`.
    pub fn diagonal(y: &YoungDiagram) -> QMonomial {
        let mut f = Vec::new();
        for (r, &m) in y.parts().iter().enumerate().rev() {
            f.extend(std::iter::repeat((r + 1, r + 1)).take(m as usize));
        }
        QMonomial(f)
    }

    pub fn power(i: usize, j: usize, e: u32) -> QMonomial {
        QMonomial(vec![(i, j); e as usize])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorState {
    field: Field,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorState {
    pub fn zero(field: &Field) -> TensorState {
        TensorState { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn vacuum(field: &Field) -> TensorState {
        let mut s = TensorState::zero(field);
        s.terms.insert(
            (Word::empty(Chirality::Unbarred), Word::empty(Chirality::Barred)),
            field.one(),
        );
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: &Scalar) -> Result<()> {
        if left.chirality != Chirality::Unbarred || right.chirality != Chirality::Barred {
            return Err(Error::ChiralityMismatch("tensor keys are (unbarred, barred)".into()));
        }
        if c.field() != &self.field {
            return Err(Error::MixedFields);
        }
        let key = (left, right);
        let v = match self.terms.remove(&key) {
            Some(x) => &x + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &TensorState, c: &Scalar) -> Result<()> {
        for ((l, r), x) in &other.terms {
            self.add_term(l.clone(), r.clone(), &x.checked_mul(c)?)?;
        }
        Ok(())
    }

    pub fn difference(&self, other: &TensorState) -> Result<TensorState> {
        let mut out = self.clone();
        out.add_scaled(other, &-self.field.one())?;
        Ok(out)
    }

    /// Unreduced action of a tensor operator.
    pub fn apply_op(&self, op: &TensorOp) -> Result<TensorState> {
        let mut out = TensorState::zero(&self.field);
        for ((l, r), x) in &self.terms {
            for (wl, wr, c) in op {
                let mut lg = wl.clone();
                lg.extend_from_slice(&l.gens);
                let mut rg = wr.clone();
                rg.extend_from_slice(&r.gens);
                out.add_term(Word::new(Chirality::Unbarred, lg), Word::new(Chirality::Barred, rg), &(x * c))?;
            }
        }
        Ok(out)
    }

    pub fn apply_q(&self, n: usize, i: usize, j: usize) -> Result<TensorState> {
        check_index(n, i)?;
        check_index(n, j)?;
        self.apply_op(&q_op(n, i, j, &self.field))
    }

    pub fn apply_monomial(&self, n: usize, m: &QMonomial) -> Result<TensorState> {
        let mut s = self.clone();
        for &(i, j) in m.0.iter().rev() {
            s = s.apply_q(n, i, j)?;
        }
        Ok(s)
    }

    /// Distinct `(unbarred, barred)` contents present.
    pub fn contents(&self, n: usize) -> BTreeSet<(Content, Content)> {
        self.terms.keys().map(|(l, r)| (l.content(n), r.content(n))).collect()
    }
}

type Block = BTreeMap<(usize, usize), Scalar>;

/// Coordinates in products of quotient bases, keyed by the two top contents.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedTensor {
    field: Field,
    blocks: BTreeMap<(Content, Content), Block>,
}

impl ReducedTensor {
    pub fn zero(field: &Field) -> ReducedTensor {
        ReducedTensor { field: field.clone(), blocks: BTreeMap::new() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_empty())
    }

    pub fn blocks(&self) -> &BTreeMap<(Content, Content), Block> {
        &self.blocks
    }

    /// Nonzero coordinates per block.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.values().map(|b| b.len()).collect()
    }

    pub fn nonzeros(&self) -> usize {
        self.sizes().iter().sum()
    }

    fn prune(&mut self) {
        for b in self.blocks.values_mut() {
            b.retain(|_, c| !c.is_zero());
        }
        self.blocks.retain(|_, b| !b.is_empty());
    }

    /// The single `(unbarred, barred)` top content pair, if there is exactly one.
    pub fn definite_contents(&self) -> Option<(Content, Content)> {
        let mut keys = self.blocks.keys();
        let k = keys.next()?.clone();
        keys.next().is_none().then_some(k)
    }
}

fn outer(field: &Field, l: &SparseVec, r: &SparseVec, c: &Scalar, into: &mut Block) {
    for (x, lx) in l {
        let lc = lx * c;
        for (y, ry) in r {
            let e = into.entry((*x, *y)).or_insert_with(|| field.zero());
            *e += &(&lc * ry);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GrowthOutcome {
    Zero,
    Proportional { diagram: YoungDiagram, coefficient: Scalar },
    InSpan { coefficients: Vec<(YoungDiagram, Scalar)> },
    Outside,
}

impl GrowthOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            GrowthOutcome::Zero => "zero",
            GrowthOutcome::Proportional { .. } => "proportional",
            GrowthOutcome::InSpan { .. } => "in-span",
            GrowthOutcome::Outside => "outside",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommutationOutcome {
    /// Neither `Q^i_j v` nor `Q^j_i v` vanishes.
    Skipped,
    Checked(bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookOutcome {
    pub v_zero: bool,
    pub w_zero: bool,
    pub backbone_nonzero: bool,
}

#[derive(Clone, Debug)]
pub struct DiagramVector {
    pub diagram: YoungDiagram,
    pub nonzero: bool,
    pub nonzeros: usize,
}

#[derive(Clone, Debug)]
pub struct FPrime {
    pub h: u32,
    pub vectors: Vec<DiagramVector>,
    pub dimension: usize,
}

/// Q-algebra computations over one Fock module (shared by both chiralities).
pub struct QAlgebra {
    module: Arc<FockModule>,
    h: u32,
    diagrams: Mutex<HashMap<YoungDiagram, ReducedTensor>>,
}

impl std::fmt::Debug for QAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QAlgebra").field("module", &self.module).field("h", &self.h).finish()
    }
}

impl QAlgebra {
    /// `h` bounds the diagrams; it must match the field's `h` at a root of unity.
    pub fn new(module: Arc<FockModule>, h: u32) -> Result<QAlgebra> {
        if let Some(fh) = module.field().h() {
            if fh != h {
                return Err(Error::InvalidParameter(format!("h = {h} but the field has h = {fh}")));
            }
        }
        if (h as usize) <= module.n() {
            return Err(Error::InvalidParameter(format!("h = {h} must exceed n = {}", module.n())));
        }
        Ok(QAlgebra { module, h, diagrams: Mutex::new(HashMap::new()) })
    }

    pub fn module(&self) -> &Arc<FockModule> {
        &self.module
    }

    pub fn n(&self) -> usize {
        self.module.n()
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn field(&self) -> &Field {
        self.module.field()
    }

    pub fn vacuum(&self) -> Result<ReducedTensor> {
        let z = Content::zero(self.n());
        let v = self.module.vacuum_vector(&z)?;
        let mut b = Block::new();
        outer(self.field(), &v, &v, &self.field().one(), &mut b);
        let mut t = ReducedTensor::zero(self.field());
        t.blocks.insert((z.clone(), z), b);
        t.prune();
        Ok(t)
    }

    fn lift_block(&self, from: &(Content, Content), block: &Block, to: &(Content, Content)) -> Result<Block> {
        if from == to {
            return Ok(block.clone());
        }
        let unit = |k: usize| vec![(k, self.field().one())];
        let mut lcache: HashMap<usize, SparseVec> = HashMap::new();
        let mut rcache: HashMap<usize, SparseVec> = HashMap::new();
        let mut out = Block::new();
        for ((x, y), c) in block {
            if !lcache.contains_key(x) {
                lcache.insert(*x, self.module.lift(&from.0, &unit(*x), &to.0)?);
            }
            if !rcache.contains_key(y) {
                rcache.insert(*y, self.module.lift(&from.1, &unit(*y), &to.1)?);
            }
            outer(self.field(), &lcache[x], &rcache[y], c, &mut out);
        }
        Ok(out)
    }

    /// Adds `c * block` at `key`, merging with a block of the same family pair.
    fn accumulate(&self, t: &mut ReducedTensor, key: (Content, Content), block: Block, c: &Scalar) -> Result<()> {
        let family = (key.0.root(), key.1.root());
        let existing = t.blocks.keys().find(|k| (k.0.root(), k.1.root()) == family).cloned();
        let deeper = |a: &Content, b: &Content| if a.depth() >= b.depth() { a.clone() } else { b.clone() };
        let (target, old) = match existing {
            None => (key.clone(), None),
            Some(k) => {
                let target = (deeper(&k.0, &key.0), deeper(&k.1, &key.1));
                let old = t.blocks.remove(&k).unwrap();
                (target, Some((k, old)))
            }
        };
        let mut acc = match old {
            Some((k, b)) => self.lift_block(&k, &b, &target)?,
            None => Block::new(),
        };
        for ((x, y), v) in self.lift_block(&key, &block, &target)? {
            let e = acc.entry((x, y)).or_insert_with(|| self.field().zero());
            *e += &(&v * c);
        }
        acc.retain(|_, v| !v.is_zero());
        if !acc.is_empty() {
            t.blocks.insert(target, acc);
        }
        Ok(())
    }

    /// `a * x + b * y`.
    pub fn combine(&self, a: &Scalar, x: &ReducedTensor, b: &Scalar, y: &ReducedTensor) -> Result<ReducedTensor> {
        let mut out = ReducedTensor::zero(self.field());
        for (k, blk) in &x.blocks {
            self.accumulate(&mut out, k.clone(), blk.clone(), a)?;
        }
        for (k, blk) in &y.blocks {
            self.accumulate(&mut out, k.clone(), blk.clone(), b)?;
        }
        Ok(out)
    }

    pub fn difference(&self, x: &ReducedTensor, y: &ReducedTensor) -> Result<ReducedTensor> {
        let one = self.field().one();
        self.combine(&one, x, &-one.clone(), y)
    }

    pub fn equal(&self, x: &ReducedTensor, y: &ReducedTensor) -> Result<bool> {
        Ok(self.difference(x, y)?.is_zero())
    }

    pub fn reduce(&self, s: &TensorState) -> Result<ReducedTensor> {
        let n = self.n();
        let mut tops: BTreeMap<(Content, Content), (Content, Content)> = BTreeMap::new();
        for (l, r) in s.terms.keys() {
            let (cl, cr) = (l.content(n), r.content(n));
            let e = tops.entry((cl.root(), cr.root())).or_insert_with(|| (cl.clone(), cr.clone()));
            if cl.depth() > e.0.depth() {
                e.0 = cl;
            }
            if cr.depth() > e.1.depth() {
                e.1 = cr;
            }
        }
        let mut blocks: BTreeMap<(Content, Content), Block> = BTreeMap::new();
        for ((l, r), c) in &s.terms {
            let top = &tops[&(l.content(n).root(), r.content(n).root())];
            let lv = self.module.reduce_gens_into(&l.gens, &top.0)?;
            if lv.is_empty() {
                continue;
            }
            let rv = self.module.reduce_gens_into(&r.gens, &top.1)?;
            outer(self.field(), &lv, &rv, c, blocks.entry(top.clone()).or_default());
        }
        let mut t = ReducedTensor { field: self.field().clone(), blocks };
        t.prune();
        Ok(t)
    }

    pub fn is_zero_tensor(&self, s: &TensorState) -> Result<bool> {
        Ok(self.reduce(s)?.is_zero())
    }

    pub fn apply_op(&self, op: &TensorOp, t: &ReducedTensor) -> Result<ReducedTensor> {
        let n = self.n();
        let field = self.field();
        let unit = |k: usize| vec![(k, field.one())];
        // terms grouped by left word and right content, right words summed per group
        let mut groups: BTreeMap<(&[Gen], Content), Vec<(&[Gen], &Scalar)>> = BTreeMap::new();
        for (wl, wr, c) in op {
            groups.entry((wl.as_slice(), Content::of_gens(n, wr))).or_default().push((wr.as_slice(), c));
        }
        let mut out = ReducedTensor::zero(field);
        for (key, block) in &t.blocks {
            let xs: BTreeSet<usize> = block.keys().map(|k| k.0).collect();
            let ys: BTreeSet<usize> = block.keys().map(|k| k.1).collect();
            let mut lcache: HashMap<&[Gen], HashMap<usize, SparseVec>> = HashMap::new();
            let mut rcache: HashMap<&[Gen], HashMap<usize, SparseVec>> = HashMap::new();
            let mut images: BTreeMap<(Content, Content), Block> = BTreeMap::new();
            for ((wl, cr), terms) in &groups {
                if !lcache.contains_key(wl) {
                    let mut m = HashMap::new();
                    for &x in &xs {
                        m.insert(x, self.module.act_word(wl, &key.0, &unit(x))?.0);
                    }
                    lcache.insert(wl, m);
                }
                let limg = &lcache[wl];
                // M = (L (x) 1) B
                let mut mid: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for ((x, y), v) in block {
                    for (x2, a) in &limg[x] {
                        let e = mid.entry((*x2, *y)).or_insert_with(|| field.zero());
                        *e += &(a * v);
                    }
                }
                mid.retain(|_, v| !v.is_zero());
                if mid.is_empty() {
                    continue;
                }
                let mut rsum: HashMap<usize, SparseVec> = HashMap::new();
                for &y in &ys {
                    let mut acc: SparseVec = Vec::new();
                    for (wr, c) in terms {
                        let cache = rcache.entry(wr).or_default();
                        if !cache.contains_key(&y) {
                            cache.insert(y, self.module.act_word(wr, &key.1, &unit(y))?.0);
                        }
                        acc = elimination::axpy(&acc, c, &cache[&y]);
                    }
                    rsum.insert(y, acc);
                }
                let tl = key.0.add(&Content::of_gens(n, wl));
                let tr = key.1.add(cr);
                let img = images.entry((tl, tr)).or_default();
                for ((x2, y), m) in &mid {
                    for (y2, b) in &rsum[y] {
                        let e = img.entry((*x2, *y2)).or_insert_with(|| field.zero());
                        *e += &(m * b);
                    }
                }
            }
            for (k, b) in images {
                self.accumulate(&mut out, k, b, &field.one())?;
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn apply_q(&self, i: usize, j: usize, t: &ReducedTensor) -> Result<ReducedTensor> {
        check_index(self.n(), i)?;
        check_index(self.n(), j)?;
        self.apply_op(&q_op(self.n(), i, j, self.field()), t)
    }

    pub fn apply_monomial(&self, m: &QMonomial, t: &ReducedTensor) -> Result<ReducedTensor> {
        let mut s = t.clone();
        for &(i, j) in m.0.iter().rev() {
            if s.is_zero() {
                break;
            }
            s = self.apply_q(i, j, &s)?;
        }
        Ok(s)
    }

    fn check_diagram(&self, y: &YoungDiagram) -> Result<()> {
        if y.n() != self.n() || !y.is_admissible(self.h) {
            return Err(Error::InvalidParameter(format!("{y} is not admissible for n = {}, h = {}", self.n(), self.h)));
        }
        Ok(())
    }

    /// Unreduced `v_Y`.
    pub fn vector_of_diagram(&self, y: &YoungDiagram) -> Result<TensorState> {
        self.check_diagram(y)?;
        TensorState::vacuum(self.field()).apply_monomial(self.n(), &QMonomial::diagonal(y))
    }

    /// Reduced `v_Y`, built row by row and memoized.
    pub fn diagram_vector(&self, y: &YoungDiagram) -> Result<ReducedTensor> {
        self.check_diagram(y)?;
        if let Some(t) = self.diagrams.lock().unwrap().get(y) {
            return Ok(t.clone());
        }
        let t = match y.parts().last() {
            None => self.vacuum()?,
            Some(_) => {
                // remove one box from the last row; the monomial applies that row last
                let mut parts = y.parts().to_vec();
                let r = parts.len();
                parts[r - 1] -= 1;
                if parts[r - 1] == 0 {
                    parts.pop();
                }
                let smaller = YoungDiagram::new(self.n(), parts)?;
                self.apply_q(r, r, &self.diagram_vector(&smaller)?)?
            }
        };
        self.diagrams.lock().unwrap().insert(y.clone(), t.clone());
        Ok(t)
    }

    pub fn fprime(&self) -> Result<FPrime> {
        let ds = YoungDiagram::enumerate(self.n(), self.h)?;
        let contents: BTreeSet<Content> = ds.iter().map(|d| d.content()).collect();
        if contents.len() != ds.len() {
            return Err(Error::Inconsistent("two diagrams share a content".into()));
        }
        let mut vectors = Vec::with_capacity(ds.len());
        for d in ds {
            let v = self.diagram_vector(&d)?;
            vectors.push(DiagramVector { nonzero: !v.is_zero(), nonzeros: v.nonzeros(), diagram: d });
        }
        let dimension = vectors.iter().filter(|v| v.nonzero).count();
        Ok(FPrime { h: self.h, vectors, dimension })
    }

    /// Coefficients `c` with `goal = sum c_k * candidates[k]`, if any.
    pub fn span_coefficients(&self, goal: &ReducedTensor, candidates: &[ReducedTensor]) -> Result<Option<Vec<Scalar>>> {
        let zero = self.field().zero();
        // put everything over common tops, one per family pair
        type Fam = (Content, Content);
        let mut tops: BTreeMap<Fam, Fam> = BTreeMap::new();
        for t in candidates.iter().chain(std::iter::once(goal)) {
            for k in t.blocks.keys() {
                let e = tops.entry((k.0.root(), k.1.root())).or_insert_with(|| k.clone());
                if k.0.depth() > e.0.depth() {
                    e.0 = k.0.clone();
                }
                if k.1.depth() > e.1.depth() {
                    e.1 = k.1.clone();
                }
            }
        }
        let flatten = |t: &ReducedTensor| -> Result<BTreeMap<(Fam, usize, usize), Scalar>> {
            let mut out = BTreeMap::new();
            for (k, b) in &t.blocks {
                let fam = (k.0.root(), k.1.root());
                for ((x, y), c) in self.lift_block(k, b, &tops[&fam])? {
                    if !c.is_zero() {
                        out.insert((fam.clone(), x, y), c);
                    }
                }
            }
            Ok(out)
        };
        let cols: Vec<_> = candidates.iter().map(&flatten).collect::<Result<_>>()?;
        let rhs = flatten(goal)?;
        let coords: BTreeSet<(Fam, usize, usize)> =
            cols.iter().flat_map(|c| c.keys().cloned()).chain(rhs.keys().cloned()).collect();
        let k = candidates.len();
        let mut rows: Vec<Vec<Scalar>> = coords
            .iter()
            .map(|key| {
                let mut r: Vec<Scalar> = cols.iter().map(|c| c.get(key).cloned().unwrap_or_else(|| zero.clone())).collect();
                r.push(rhs.get(key).cloned().unwrap_or_else(|| zero.clone()));
                r
            })
            .collect();
        // Gauss-Jordan on the augmented matrix
        let mut pivots = Vec::new();
        let mut r0 = 0;
        for col in 0..k {
            let Some(p) = (r0..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
            rows.swap(r0, p);
            let inv = rows[r0][col].inv()?;
            rows[r0] = rows[r0].iter().map(|x| x * &inv).collect();
            for r in 0..rows.len() {
                if r != r0 && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let pivot_row = rows[r0].clone();
                    for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                        *x -= &(&f * p);
                    }
                }
            }
            pivots.push((r0, col));
            r0 += 1;
        }
        if rows[r0..].iter().any(|r| !r[k].is_zero()) {
            return Ok(None);
        }
        let mut sol = vec![zero.clone(); k];
        for (r, c) in pivots {
            sol[c] = rows[r][k].clone();
        }
        Ok(Some(sol))
    }

    /// Classifies `Q^j_j v_Y`.
    pub fn check_growth(&self, y: &YoungDiagram, j: usize) -> Result<GrowthOutcome> {
        let v = self.diagram_vector(y)?;
        let t = self.apply_q(j, j, &v)?;
        if t.is_zero() {
            return Ok(GrowthOutcome::Zero);
        }
        if let Growth::Diagram(grown) = y.grow(j, self.h)? {
            let g = self.diagram_vector(&grown)?;
            if let Some(c) = self.span_coefficients(&t, std::slice::from_ref(&g))? {
                return Ok(GrowthOutcome::Proportional { diagram: grown, coefficient: c[0].clone() });
            }
        }
        let families: BTreeSet<(Content, Content)> = t.blocks.keys().map(|k| (k.0.root(), k.1.root())).collect();
        let mut names = Vec::new();
        let mut vecs = Vec::new();
        for d in YoungDiagram::enumerate(self.n(), self.h)? {
            let c = d.content();
            if families.contains(&(c.root(), c.root())) {
                let v = self.diagram_vector(&d)?;
                if !v.is_zero() {
                    names.push(d);
                    vecs.push(v);
                }
            }
        }
        Ok(match self.span_coefficients(&t, &vecs)? {
            Some(c) => GrowthOutcome::InSpan { coefficients: names.into_iter().zip(c).filter(|(_, x)| !x.is_zero()).collect() },
            None => GrowthOutcome::Outside,
        })
    }

    /// Common weight of a tensor with one block whose two factors have equal weight
    /// differences.
    pub fn diagonal_weight(&self, v: &ReducedTensor) -> Option<WeightVector> {
        let (l, r) = v.definite_contents()?;
        let (wl, wr) = (l.weight(), r.weight());
        wl.same_differences(&wr).then_some(wl)
    }

    /// If `Q^i_j v = 0` or `Q^j_i v = 0`, tests
    /// `[p_ij + 1] Q^i_i Q^j_j v = [p_ij - 1] Q^j_j Q^i_i v` at the weight of `v`.
    pub fn check_dynamical_commutation(&self, v: &ReducedTensor, i: usize, j: usize) -> Result<CommutationOutcome> {
        check_index(self.n(), i)?;
        check_index(self.n(), j)?;
        let w = match self.diagonal_weight(v) {
            Some(w) => w,
            None if v.is_zero() => return Ok(CommutationOutcome::Checked(true)),
            None => return Err(Error::InvalidParameter("state has no definite diagonal weight".into())),
        };
        if i == j {
            // both sides are the same vector
            return Ok(CommutationOutcome::Checked(true));
        }
        let premise = self.apply_q(i, j, v)?.is_zero() || self.apply_q(j, i, v)?.is_zero();
        if !premise {
            return Ok(CommutationOutcome::Skipped);
        }
        let f = self.field();
        let lhs = self.apply_q(i, i, &self.apply_q(j, j, v)?)?;
        let rhs = self.apply_q(j, j, &self.apply_q(i, i, v)?)?;
        let d = self.combine(&w.eval_bracket(i, j, 1, f)?, &lhs, &-w.eval_bracket(i, j, -1, f)?, &rhs)?;
        Ok(CommutationOutcome::Checked(d.is_zero()))
    }

    pub fn check_offdiagonal_annihilation(&self, y: &YoungDiagram) -> Result<bool> {
        let v = self.diagram_vector(y)?;
        for j in 1..=self.n() {
            for l in 1..=self.n() {
                if j != l && !self.apply_q(j, l, &v)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `Q^{i-1}_{i-1} ... Q^2_2 (Q^1_1)^{h-i} |0>`.
    pub fn hook_backbone(&self, i: usize) -> Result<ReducedTensor> {
        if i < 2 || i > self.n() - 1 {
            return Err(Error::InvalidParameter(format!("hook row {i} not in 2..={}", self.n() - 1)));
        }
        let mut f = Vec::new();
        for r in (2..i).rev() {
            f.push((r, r));
        }
        f.extend(std::iter::repeat((1, 1)).take(self.h as usize - i));
        self.apply_monomial(&QMonomial(f), &self.vacuum()?)
    }

    pub fn hook_vectors(&self, i: usize) -> Result<(ReducedTensor, ReducedTensor, ReducedTensor)> {
        let v = self.hook_backbone(i)?;
        let vh = self.apply_q(i, i, &self.apply_q(1, 1, &v)?)?;
        let wh = self.apply_q(1, 1, &self.apply_q(i, i, &v)?)?;
        Ok((v, vh, wh))
    }

    pub fn check_hook_vanishing(&self, i: usize) -> Result<HookOutcome> {
        let (v, vh, wh) = self.hook_vectors(i)?;
        Ok(HookOutcome { v_zero: vh.is_zero(), w_zero: wh.is_zero(), backbone_nonzero: !v.is_zero() })
    }

    /// Entries of one row, and of one column, of `Q` commute on every sample.
    pub fn check_rowcol_commutativity(&self, samples: &[ReducedTensor]) -> Result<bool> {
        let n = self.n();
        let one = self.field().one();
        for s in samples {
            for i in 1..=n {
                for j in 1..=n {
                    for l in j + 1..=n {
                        let row = self.combine(
                            &one,
                            &self.apply_q(i, j, &self.apply_q(i, l, s)?)?,
                            &-one.clone(),
                            &self.apply_q(i, l, &self.apply_q(i, j, s)?)?,
                        )?;
                        let col = self.combine(
                            &one,
                            &self.apply_q(j, i, &self.apply_q(l, i, s)?)?,
                            &-one.clone(),
                            &self.apply_q(l, i, &self.apply_q(j, i, s)?)?,
                        )?;
                        if !row.is_zero() || !col.is_zero() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// `(Q^i_j)^h |0> = 0`.
    pub fn check_nilpotency(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.apply_monomial(&QMonomial::power(i, j, self.h), &self.vacuum()?)?.is_zero())
    }
}
