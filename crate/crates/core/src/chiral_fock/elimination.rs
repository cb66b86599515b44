//! Sparse exact Gaussian elimination over [`Scalar`].
//!
//! Columns are indexed so that a larger index means a larger word; each row's pivot is
//! its largest column. Free (non-pivot) columns form the quotient basis.

use std::collections::BTreeMap;

use crate::scalarfield::{Field, Scalar};

/// Sorted `(index, coefficient)` pairs without zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `a + c * b`.
pub(crate) fn axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (a.iter().peekable(), b.iter().peekable());
    loop {
        match (x.peek(), y.peek()) {
            (Some((i, u)), Some((j, v))) => {
                if i < j {
                    out.push((*i, u.clone()));
                    x.next();
                } else if j < i {
                    let t = c * v;
                    if !t.is_zero() {
                        out.push((*j, t));
                    }
                    y.next();
                } else {
                    let t = u + &(c * v);
                    if !t.is_zero() {
                        out.push((*i, t));
                    }
                    x.next();
                    y.next();
                }
            }
            (Some((i, u)), None) => {
                out.push((*i, u.clone()));
                x.next();
            }
            (None, Some((j, v))) => {
                let t = c * v;
                if !t.is_zero() {
                    out.push((*j, t));
                }
                y.next();
            }
            (None, None) => break,
        }
    }
    out
}

pub(crate) fn scale(a: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Accumulates unsorted terms into a sorted sparse vector.
pub(crate) fn collect(field: &Field, terms: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let e = acc.entry(i).or_insert_with(|| field.zero());
        *e += &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Row-echelon data built incrementally.
#[derive(Clone, Debug)]
pub struct Echelon {
    columns: usize,
    /// pivot column -> row normalized to a leading 1
    pivots: BTreeMap<usize, SparseVec>,
    rows_seen: usize,
}

impl Echelon {
    pub fn new(columns: usize) -> Echelon {
        Echelon { columns, pivots: BTreeMap::new(), rows_seen: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows_seen(&self) -> usize {
        self.rows_seen
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Inserts a row; returns true if the rank grew. When the row's leading column
    /// already has a pivot, the sparser of the two rows becomes the pivot.
    pub fn insert(&mut self, mut row: SparseVec) -> bool {
        self.rows_seen += 1;
        loop {
            let Some((lead, c)) = row.last().cloned() else { return false };
            assert!(lead < self.columns, "column {lead} out of range");
            match self.pivots.get(&lead).map(|r| r.len()) {
                None => {
                    let inv = c.inv().expect("nonzero leading entry");
                    self.pivots.insert(lead, scale(&row, &inv));
                    return true;
                }
                Some(existing_len) => {
                    if row.len() < existing_len {
                        let inv = c.inv().expect("nonzero leading entry");
                        row = self.pivots.insert(lead, scale(&row, &inv)).unwrap();
                    }
                    let c = row.last().unwrap().1.clone();
                    row = axpy(&row, &-c, &self.pivots[&lead]);
                }
            }
        }
    }

    /// Reduced row-echelon rows: each pivot row mentions only its pivot and free columns.
    fn back_substitute(&mut self) {
        let leads: Vec<usize> = self.pivots.keys().copied().collect();
        for &lead in &leads {
            let mut row = self.pivots[&lead].clone();
            loop {
                let hit = row
                    .iter()
                    .rev()
                    .find(|(j, _)| *j != lead && self.pivots.contains_key(j))
                    .cloned();
                let Some((j, c)) = hit else { break };
                row = axpy(&row, &-c, &self.pivots[&j]);
            }
            self.pivots.insert(lead, row);
        }
    }

    /// Free columns (ascending) and, for every column, its expression in free-column
    /// coordinates (indices into the free list).
    pub fn finish(mut self, field: &Field) -> (Vec<usize>, Vec<SparseVec>) {
        self.back_substitute();
        let free: Vec<usize> = (0..self.columns).filter(|c| !self.pivots.contains_key(c)).collect();
        let mut position = vec![usize::MAX; self.columns];
        for (k, &c) in free.iter().enumerate() {
            position[c] = k;
        }
        let reductions = (0..self.columns)
            .map(|col| match self.pivots.get(&col) {
                None => vec![(position[col], field.one())],
                Some(row) => row
                    .iter()
                    .filter(|(j, _)| *j != col)
                    .map(|(j, c)| (position[*j], -c))
                    .collect(),
            })
            .collect();
        (free, reductions)
    }
}
