//! Relation templates of the chiral zero-mode algebra and their instances.
//!
//! Every dynamical coefficient is written to the right of the letters, i.e. it is
//! evaluated at the weight of the vector the template acts on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Chirality, ChiralState, Content, Gen, Word};
use crate::error::{Error, Result};
use crate::scalarfield::{Field, Scalar};
use crate::weights::{epsilon, WeightVector};

/// Normalization of the quantum antisymmetric tensor
/// `eps^{alpha_1 ... alpha_n}` on a permutation with `l` inversions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EpsilonConvention {
    /// `(-q)^l`
    NegQPower,
    /// `(-q)^{-l}`: the components for which contracting with the flavor indices of
    /// `a^i_alpha a^j_beta` drops the q-symmetric part.
    #[default]
    NegQInversePower,
}

impl EpsilonConvention {
    pub fn tag(self) -> &'static str {
        match self {
            EpsilonConvention::NegQPower => "(-q)^l",
            EpsilonConvention::NegQInversePower => "(-q)^-l",
        }
    }

    pub fn from_tag(tag: &str) -> Option<EpsilonConvention> {
        match tag {
            "(-q)^l" => Some(EpsilonConvention::NegQPower),
            "(-q)^-l" => Some(EpsilonConvention::NegQInversePower),
            _ => None,
        }
    }

    pub fn mirrored(self) -> EpsilonConvention {
        match self {
            EpsilonConvention::NegQPower => EpsilonConvention::NegQInversePower,
            EpsilonConvention::NegQInversePower => EpsilonConvention::NegQPower,
        }
    }

    pub fn quantum_epsilon(self, field: &Field, inversions: usize) -> Scalar {
        let l = inversions as i64;
        let e = match self {
            EpsilonConvention::NegQPower => l,
            EpsilonConvention::NegQInversePower => -l,
        };
        let sign = if l % 2 == 0 { 1 } else { -1 };
        &field.from_int(sign) * &field.q_power(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    /// `a^j_b a^i_a [p_ij - 1] - a^i_a a^j_b [p_ij] + a^i_b a^j_a q^{eps_ab p_ij}`, `i != j`, `a != b`.
    Exchange,
    /// `[a^j_a, a^i_a] = 0`, `i != j`.
    SameFlavor,
    /// `a^i_a a^i_b - q^{eps_ab} a^i_b a^i_a`, `a != b`.
    SameRow,
    /// `(a^i_a)^h`.
    Nilpotent,
    /// `sum eps_{i..} eps_q^{a..} a^{i_1}_{a_1} ... a^{i_n}_{a_n} - [n]! D_q(p)`.
    Determinant,
    /// `a^i_a |0>` for `i >= 2`.
    Annihilation,
}

/// A relation with its coefficients already evaluated at the weight of the vector
/// it multiplies.
#[derive(Clone, Debug)]
pub(crate) struct Template {
    pub kind: RelationKind,
    pub content: Content,
    pub terms: Vec<(Vec<Gen>, Scalar)>,
    /// Coefficient of the bare vector (only the determinant has one).
    pub tail: Option<Scalar>,
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub(crate) fn inversions(p: &[usize]) -> usize {
    let mut k = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                k += 1;
            }
        }
    }
    k
}

/// Terms of `eps_{i_1..i_n} eps_q^{a_1..a_n} a^{i_1}_{a_1} ... a^{i_n}_{a_n}` (the
/// `[n]!`-cleared determinant).
pub fn determinant_terms(
    n: usize,
    field: &Field,
    convention: EpsilonConvention,
) -> Vec<(Vec<Gen>, Scalar)> {
    let perms = permutations(n);
    let mut out = Vec::with_capacity(perms.len() * perms.len());
    for rows in &perms {
        let sign = if inversions(rows) % 2 == 0 { 1 } else { -1 };
        for flavors in &perms {
            let coef = &field.from_int(sign) * &convention.quantum_epsilon(field, inversions(flavors));
            let word = rows.iter().zip(flavors).map(|(&i, &a)| Gen::new(i, a)).collect();
            out.push((word, coef));
        }
    }
    out
}

/// Templates acting on a vector of weight `weight`, restricted to contents that fit
/// inside `room`.
pub(crate) fn templates(
    n: usize,
    field: &Field,
    convention: EpsilonConvention,
    weight: &WeightVector,
    room: &Content,
) -> Vec<Template> {
    let mut out = Vec::new();
    let fits = |c: &Content| room.checked_sub(c).is_some();
    let mut push = |kind, content: Content, terms: Vec<(Vec<Gen>, Scalar)>, tail: Option<Scalar>| {
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !terms.is_empty() || tail.as_ref().is_some_and(|t| !t.is_zero()) {
            out.push(Template { kind, content, terms, tail });
        }
    };
    let pair = |i: usize, j: usize| Content::zero(n).plus_row(i).plus_row(j);

    for i in 1..=n {
        for j in 1..=n {
            if i == j || !fits(&pair(i, j)) {
                continue;
            }
            let pij = weight.p_diff(i, j);
            for a in 1..=n {
                for b in 1..=n {
                    if a == b {
                        continue;
                    }
                    let terms = vec![
                        (vec![Gen::new(j, b), Gen::new(i, a)], field.q_int(pij - 1)),
                        (vec![Gen::new(i, a), Gen::new(j, b)], -field.q_int(pij)),
                        (vec![Gen::new(i, b), Gen::new(j, a)], field.q_power(epsilon(a, b) * pij)),
                    ];
                    push(RelationKind::Exchange, pair(i, j), terms, None);
                }
            }
            if i < j {
                for a in 1..=n {
                    let terms = vec![
                        (vec![Gen::new(j, a), Gen::new(i, a)], field.one()),
                        (vec![Gen::new(i, a), Gen::new(j, a)], -field.one()),
                    ];
                    push(RelationKind::SameFlavor, pair(i, j), terms, None);
                }
            }
        }
    }
    for i in 1..=n {
        if !fits(&pair(i, i)) {
            continue;
        }
        for a in 1..=n {
            for b in a + 1..=n {
                let terms = vec![
                    (vec![Gen::new(i, a), Gen::new(i, b)], field.one()),
                    (vec![Gen::new(i, b), Gen::new(i, a)], -field.q_power(epsilon(a, b))),
                ];
                push(RelationKind::SameRow, pair(i, i), terms, None);
            }
        }
    }
    if let Some(h) = field.h() {
        for i in 1..=n {
            let mut c = Content::zero(n);
            c.0[i - 1] = h;
            if !fits(&c) {
                continue;
            }
            for a in 1..=n {
                let word = vec![Gen::new(i, a); h as usize];
                push(RelationKind::Nilpotent, c.clone(), vec![(word, field.one())], None);
            }
        }
    }
    let ones = Content::ones(n, 1);
    if fits(&ones) {
        let tail = -(&field.q_factorial(n as u32) * &weight.dq(field));
        push(
            RelationKind::Determinant,
            ones,
            determinant_terms(n, field, convention),
            Some(tail),
        );
    }
    out
}

/// Every word with the given row content, in no particular order.
pub fn enumerate_words(n: usize, content: &Content) -> Vec<Vec<Gen>> {
    fn rec(n: usize, left: &mut Vec<u32>, prefix: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(prefix.clone());
            return;
        }
        for i in 1..=n {
            if left[i - 1] == 0 {
                continue;
            }
            left[i - 1] -= 1;
            for a in 1..=n {
                prefix.push(Gen::new(i, a));
                rec(n, left, prefix, out);
                prefix.pop();
            }
            left[i - 1] += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, &mut content.0.clone(), &mut Vec::new(), &mut out);
    out
}

/// One element `u r(p) v |0>` of the defining relation span (or an annihilation word).
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub terms: Vec<(Vec<Gen>, Scalar)>,
}

impl RelationInstance {
    pub fn to_state(&self, field: &Field, chirality: Chirality) -> Result<ChiralState> {
        let mut s = ChiralState::zero(field, chirality);
        for (w, c) in &self.terms {
            s.add_term(Word::new(chirality, w.clone()), c)?;
        }
        Ok(s)
    }
}

fn contents_below(room: &Content) -> Vec<Content> {
    let mut out = vec![Vec::new()];
    for &r in &room.0 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=r).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Content).collect()
}

fn concat(u: &[Gen], mid: &[Gen], v: &[Gen]) -> Vec<Gen> {
    let mut w = Vec::with_capacity(u.len() + mid.len() + v.len());
    w.extend_from_slice(u);
    w.extend_from_slice(mid);
    w.extend_from_slice(v);
    w
}

/// All relation instances whose words lie in the determinant family of `top`
/// (contents `top`, `top - 1`, `top - 2`, ...). Fails once more than `budget`
/// instances would be produced.
pub fn relation_instances(
    field: &Field,
    convention: EpsilonConvention,
    top: &Content,
    budget: usize,
) -> Result<Vec<RelationInstance>> {
    let n = top.n();
    let mut out = Vec::new();
    let mut word_cache: BTreeMap<Content, Vec<Vec<Gen>>> = BTreeMap::new();
    let mut words = |c: &Content| -> Vec<Vec<Gen>> {
        word_cache
            .entry(c.clone())
            .or_insert_with(|| enumerate_words(n, c))
            .clone()
    };
    let over = |len: usize| Error::BudgetExceeded {
        class: format!("{top} (relation instances)"),
        size: len,
        budget,
    };
    for m in 0..=top.depth() {
        let class = top.checked_sub(&Content::ones(n, m)).unwrap();
        // annihilation words u a^i_alpha |0>
        for i in 2..=n {
            let Some(cu) = class.minus_row(i) else { continue };
            for u in words(&cu) {
                for a in 1..=n {
                    let w = concat(&u, &[Gen::new(i, a)], &[]);
                    out.push(RelationInstance { kind: RelationKind::Annihilation, terms: vec![(w, field.one())] });
                }
            }
            if out.len() > budget {
                return Err(over(out.len()));
            }
        }
        for cv in contents_below(&class) {
            let room = class.checked_sub(&cv).unwrap();
            let temps = templates(n, field, convention, &cv.weight(), &room);
            let vs = words(&cv);
            for t in temps {
                let Some(cu) = room.checked_sub(&t.content) else { continue };
                let us = words(&cu);
                for u in &us {
                    for v in &vs {
                        let mut terms: Vec<(Vec<Gen>, Scalar)> =
                            t.terms.iter().map(|(w, c)| (concat(u, w, v), c.clone())).collect();
                        if let Some(tail) = &t.tail {
                            terms.push((concat(u, &[], v), tail.clone()));
                        }
                        out.push(RelationInstance { kind: t.kind, terms });
                    }
                }
                if out.len() > budget {
                    return Err(over(out.len()));
                }
            }
        }
    }
    Ok(out)
}
