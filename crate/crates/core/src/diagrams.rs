//! su(n) Young diagrams with at most `n - 1` rows, restricted by spread.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chiral_fock::Content;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungDiagram {
    n: usize,
    parts: Vec<u32>,
}

/// Outcome of adding one box to row `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Growth {
    Diagram(YoungDiagram),
    /// `m_j = m_{j-1}` before the box is added.
    StandardRuleViolation,
    /// Rows plus columns would exceed `h`.
    SpreadViolation,
    /// A box in row `n`.
    RowOverflow,
}

impl Growth {
    pub fn label(&self) -> &'static str {
        match self {
            Growth::Diagram(_) => "diagram",
            Growth::StandardRuleViolation => "standard-rule-violation",
            Growth::SpreadViolation => "spread-violation",
            Growth::RowOverflow => "row-overflow",
        }
    }
}

fn check_params(n: usize, h: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} < 2")));
    }
    if (h as usize) < n + 1 {
        return Err(Error::InvalidParameter(format!("h = {h} < n + 1 = {}", n + 1)));
    }
    Ok(())
}

fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u64, |acc, t| acc * (a - t) / (t + 1))
}

impl YoungDiagram {
    pub fn new(n: usize, parts: Vec<u32>) -> Result<YoungDiagram> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} < 2")));
        }
        if parts.len() > n - 1 {
            return Err(Error::InvalidParameter(format!("{} rows exceed n - 1 = {}", parts.len(), n - 1)));
        }
        if parts.iter().any(|&m| m == 0) {
            return Err(Error::InvalidParameter("zero-length row".into()));
        }
        if parts.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidParameter(format!("rows {parts:?} are not weakly decreasing")));
        }
        Ok(YoungDiagram { n, parts })
    }

    pub fn empty(n: usize) -> YoungDiagram {
        YoungDiagram { n, parts: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `j` (1-based), zero beyond the last row.
    pub fn row(&self, j: usize) -> u32 {
        self.parts.get(j.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn boxes(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn spread(&self) -> u32 {
        if self.is_empty() {
            0
        } else {
            self.parts[0] + self.rows() as u32
        }
    }

    /// Hook length of the NW box.
    pub fn max_hook(&self) -> u32 {
        self.spread().saturating_sub(1)
    }

    pub fn is_admissible(&self, h: u32) -> bool {
        self.spread() <= h
    }

    /// Fits the `(n-1) x k` rectangle of integrable weights.
    pub fn is_unitary(&self, k: u32) -> bool {
        self.row(1) <= k
    }

    /// Row content `(m_1, ..., m_{n-1}, 0)`.
    pub fn content(&self) -> Content {
        let mut c = vec![0; self.n];
        c[..self.parts.len()].copy_from_slice(&self.parts);
        Content(c)
    }

    pub fn grow(&self, j: usize, h: u32) -> Result<Growth> {
        if !(1..=self.n).contains(&j) {
            return Err(Error::IndexOutOfRange(format!("row {j} not in 1..={}", self.n)));
        }
        if j == self.n {
            return Ok(Growth::RowOverflow);
        }
        if j >= 2 && self.row(j) == self.row(j - 1) {
            return Ok(Growth::StandardRuleViolation);
        }
        let mut parts = self.parts.clone();
        if j > parts.len() {
            parts.push(1);
        } else {
            parts[j - 1] += 1;
        }
        let y = YoungDiagram { n: self.n, parts };
        if y.spread() > h {
            return Ok(Growth::SpreadViolation);
        }
        Ok(Growth::Diagram(y))
    }

    /// All diagrams with at most `n - 1` rows and spread at most `h`, the empty one
    /// included, ordered by box count and then by parts.
    pub fn enumerate(n: usize, h: u32) -> Result<Vec<YoungDiagram>> {
        check_params(n, h)?;
        fn rec(n: usize, h: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
            out.push(YoungDiagram { n, parts: prefix.clone() });
            if prefix.len() == n - 1 {
                return;
            }
            let rows = prefix.len() as u32 + 1;
            let first = prefix.first().copied();
            for m in 1..=max {
                // spread uses the first row, which is m itself when starting a diagram
                if first.unwrap_or(m) + rows > h {
                    break;
                }
                prefix.push(m);
                rec(n, h, m, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, h, h, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.boxes().cmp(&b.boxes()).then_with(|| a.parts.cmp(&b.parts)));
        Ok(out)
    }

    /// `sum_{i=0}^{n-1} C(h-1, i)`.
    pub fn count(n: usize, h: u32) -> Result<u64> {
        check_params(n, h)?;
        Ok((0..n as u64).map(|i| binomial(h as u64 - 1, i)).sum())
    }

    /// `[]` boxes, one line per row; `∅` for the empty diagram.
    pub fn render(&self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        self.parts.iter().map(|&m| "[]".repeat(m as usize)).collect::<Vec<_>>().join("\n")
    }

    /// Accepts `render` output, `∅`, or a parts list such as `(2,1)`.
    pub fn parse(n: usize, text: &str) -> Result<YoungDiagram> {
        let t = text.trim();
        if t == "∅" || t == "()" || t.is_empty() {
            return YoungDiagram::new(n, Vec::new());
        }
        if t.contains('[') {
            let mut parts = Vec::new();
            for line in t.lines() {
                let line = line.trim();
                if line.replace("[]", "").chars().any(|c| !c.is_whitespace()) {
                    return Err(Error::Decode(format!("bad box row {line:?}")));
                }
                parts.push(line.matches("[]").count() as u32);
            }
            return YoungDiagram::new(n, parts);
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|e| Error::Decode(format!("bad part {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        YoungDiagram::new(n, parts)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let p: Vec<String> = self.parts.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}
