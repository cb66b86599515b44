//! Shifted su(n) weights: eigenvalues of `p_j` (or `pbar_j`) on weight vectors.
//!
//! Entries are stored as absolute integers with the vacuum representative
//! `p_j = -j`; only differences `p_{jl} = p_j - p_l` carry meaning.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalarfield::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightVector {
    p: Vec<i64>,
}

/// `epsilon_{ab}`: +1 for `a > b`, -1 for `a < b`, 0 on the diagonal.
pub fn epsilon(a: usize, b: usize) -> i64 {
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

impl WeightVector {
    pub fn vacuum(n: usize) -> Result<WeightVector> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} < 2")));
        }
        Ok(WeightVector { p: (1..=n as i64).map(|j| -j).collect() })
    }

    pub fn from_entries(p: Vec<i64>) -> Result<WeightVector> {
        if p.len() < 2 {
            return Err(Error::InvalidParameter("weight needs at least two entries".into()));
        }
        Ok(WeightVector { p })
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.p
    }

    fn check(&self, j: usize) -> Result<()> {
        if (1..=self.n()).contains(&j) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("row {j} not in 1..={}", self.n())))
        }
    }

    /// `p_{jl}` with 1-based indices.
    pub fn p_diff(&self, j: usize, l: usize) -> i64 {
        self.p[j - 1] - self.p[l - 1]
    }

    /// Weight of `a^i_alpha v` given the weight of `v`.
    pub fn shift(&self, i: usize) -> Result<WeightVector> {
        self.check(i)?;
        let mut p = self.p.clone();
        p[i - 1] += 1;
        Ok(WeightVector { p })
    }

    pub fn shifted_by(&self, content: &[usize]) -> WeightVector {
        let p = self.p.iter().zip(content).map(|(x, &c)| x + c as i64).collect();
        WeightVector { p }
    }

    /// Adds a constant to every entry; differences are unchanged.
    pub fn translate(&self, c: i64) -> WeightVector {
        WeightVector { p: self.p.iter().map(|x| x + c).collect() }
    }

    /// `[p_{jl} + offset]`.
    pub fn eval_bracket(&self, j: usize, l: usize, offset: i64, field: &Field) -> Result<Scalar> {
        self.check(j)?;
        self.check(l)?;
        Ok(field.q_int(self.p_diff(j, l) + offset))
    }

    /// `D_q(p) = prod_{i<j} [p_{ij}]`.
    pub fn dq(&self, field: &Field) -> Scalar {
        let mut acc = field.one();
        for i in 1..=self.n() {
            for j in i + 1..=self.n() {
                acc = &acc * &field.q_int(self.p_diff(i, j));
            }
        }
        acc
    }

    /// Highest-weight labels `lambda_j = p_{j,j+1} - 1`.
    pub fn lambda(&self) -> Vec<i64> {
        (1..self.n()).map(|j| self.p_diff(j, j + 1) - 1).collect()
    }

    /// True if every difference matches another weight's (the barred/unbarred check).
    pub fn same_differences(&self, other: &WeightVector) -> bool {
        self.n() == other.n()
            && (1..=self.n()).all(|j| (1..=self.n()).all(|l| self.p_diff(j, l) == other.p_diff(j, l)))
    }
}
