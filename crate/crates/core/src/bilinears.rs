//! q-antisymmetric and q-symmetric bilinears `A`, `S` (and their barred versions) as
//! operators on states, with their exchange identities.
//!
//! `[2] A^{ij}_{ab} = q^{-eps_ab} a^i_a a^j_b - a^i_b a^j_a` and
//! `[2] S^{ij}_{ab} = q^{eps_ab} a^i_a a^j_b + a^i_b a^j_a` for `a != b`; on the
//! diagonal `A = 0` and `S = a^i_a a^j_a`. The barred combinations have the same
//! coefficients on the letters `abar^a_i abar^b_j`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chiral_fock::{Chirality, ChiralState, Gen, Word};
use crate::error::{Error, Result};
use crate::qalgebra::{QAlgebra, ReducedTensor, TensorOp, TensorState};
use crate::scalarfield::{Field, Scalar};
use crate::weights::epsilon;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BilinearKind {
    A,
    S,
}

/// `A^{ij}_{ab}` / `S^{ij}_{ab}` (unbarred) or `Abar_{ij}^{ab}` / `Sbar_{ij}^{ab}` (barred).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bilinear {
    pub kind: BilinearKind,
    pub chirality: Chirality,
    pub i: usize,
    pub j: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl Bilinear {
    pub fn new(kind: BilinearKind, chirality: Chirality, i: usize, j: usize, alpha: usize, beta: usize) -> Bilinear {
        Bilinear { kind, chirality, i, j, alpha, beta }
    }

    /// Two-letter words with coefficients, the `1/[2]` included.
    pub fn terms(&self, field: &Field) -> Result<Vec<(Vec<Gen>, Scalar)>> {
        let two = field.q_int(2);
        if two.is_zero() {
            return Err(Error::Unsupported("[2] = 0".into()));
        }
        let inv2 = two.inv()?;
        let (i, j, a, b) = (self.i, self.j, self.alpha, self.beta);
        let e = epsilon(a, b);
        let w = |x: usize, y: usize| vec![Gen::new(i, x), Gen::new(j, y)];
        Ok(match (self.kind, a == b) {
            (BilinearKind::A, true) => Vec::new(),
            (BilinearKind::S, true) => vec![(w(a, a), field.one())],
            (BilinearKind::A, false) => vec![(w(a, b), &field.q_power(-e) * &inv2), (w(b, a), -inv2)],
            (BilinearKind::S, false) => vec![(w(a, b), &field.q_power(e) * &inv2), (w(b, a), inv2)],
        })
    }

    /// The operator acting on the factor of its chirality.
    pub fn op(&self, field: &Field) -> Result<TensorOp> {
        Ok(self
            .terms(field)?
            .into_iter()
            .map(|(w, c)| match self.chirality {
                Chirality::Unbarred => (w, Vec::new(), c),
                Chirality::Barred => (Vec::new(), w, c),
            })
            .collect())
    }
}

/// Unreduced `b * s`.
pub fn apply_bilinear(b: &Bilinear, s: &ChiralState) -> Result<ChiralState> {
    if b.chirality != s.chirality() {
        return Err(Error::ChiralityMismatch(format!("{} bilinear on {} state", b.chirality, s.chirality())));
    }
    let mut out = ChiralState::zero(s.field(), s.chirality());
    for (w, c) in b.terms(s.field())? {
        out.add_scaled(&s.apply_word(&w)?, &c)?;
    }
    Ok(out)
}

/// `sum_{a,b} L^{ij}_{ab} (x) R_{lm}^{ab}`.
pub fn contracted_op(
    field: &Field,
    n: usize,
    left: BilinearKind,
    right: BilinearKind,
    (i, j): (usize, usize),
    (l, m): (usize, usize),
) -> Result<TensorOp> {
    let mut op = TensorOp::new();
    for a in 1..=n {
        for b in 1..=n {
            let lt = Bilinear::new(left, Chirality::Unbarred, i, j, a, b).terms(field)?;
            let rt = Bilinear::new(right, Chirality::Barred, l, m, a, b).terms(field)?;
            for (wl, cl) in &lt {
                for (wr, cr) in &rt {
                    op.push((wl.clone(), wr.clone(), cl * cr));
                }
            }
        }
    }
    Ok(op)
}

/// The pairwise cancellation behind the contraction identity:
/// `q^{eps_ab} * (-q^{-eps_ab}) = -1` for every ordered pair.
pub fn contraction_cancels_termwise(field: &Field, n: usize) -> bool {
    let minus_one = -field.one();
    (1..=n).all(|a| {
        (1..=n).filter(|&b| b != a).all(|b| {
            let e = epsilon(a, b);
            &field.q_power(e) * &(-field.q_power(-e)) == minus_one
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookAudit {
    /// `Q^i_i Q^1_1 v` equals its `S (x) Sbar` part.
    pub v_is_ss_part: bool,
    /// The `A (x) Abar` part of `Q^i_i Q^1_1 v` vanishes.
    pub v_aa_part_zero: bool,
    /// `Q^1_1 Q^i_i v` equals its `A (x) Abar` part.
    pub w_is_aa_part: bool,
}

/// Identity checks of the bilinear calculus over a [`QAlgebra`].
pub struct BilinearChecks<'a> {
    qa: &'a QAlgebra,
}

impl<'a> BilinearChecks<'a> {
    pub fn new(qa: &'a QAlgebra) -> BilinearChecks<'a> {
        BilinearChecks { qa }
    }

    fn field(&self) -> &Field {
        self.qa.field()
    }

    fn n(&self) -> usize {
        self.qa.n()
    }

    pub fn apply(&self, b: &Bilinear, t: &ReducedTensor) -> Result<ReducedTensor> {
        self.qa.apply_op(&b.op(self.field())?, t)
    }

    fn two_letters(&self, ch: Chirality, i: usize, j: usize, a: usize, b: usize, t: &ReducedTensor) -> Result<ReducedTensor> {
        let w = vec![Gen::new(i, a), Gen::new(j, b)];
        let op = match ch {
            Chirality::Unbarred => vec![(w, Vec::new(), self.field().one())],
            Chirality::Barred => vec![(Vec::new(), w, self.field().one())],
        };
        self.qa.apply_op(&op, t)
    }

    fn indices(&self) -> Vec<(usize, usize, usize, usize)> {
        let n = self.n();
        let mut v = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for a in 1..=n {
                    for b in 1..=n {
                        v.push((i, j, a, b));
                    }
                }
            }
        }
        v
    }

    /// `A + S` is the plain two-letter product.
    pub fn check_split(&self, t: &ReducedTensor) -> Result<bool> {
        let one = self.field().one();
        for ch in [Chirality::Unbarred, Chirality::Barred] {
            for (i, j, a, b) in self.indices() {
                let x = self.apply(&Bilinear::new(BilinearKind::A, ch, i, j, a, b), t)?;
                let y = self.apply(&Bilinear::new(BilinearKind::S, ch, i, j, a, b), t)?;
                let sum = self.qa.combine(&one, &x, &one, &y)?;
                if !self.qa.equal(&sum, &self.two_letters(ch, i, j, a, b, t)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `S_{ab} = q^{eps_ab} S_{ba}` and `A_{ab} = -q^{-eps_ab} A_{ba}`.
    pub fn check_symmetry(&self, t: &ReducedTensor) -> Result<bool> {
        let f = self.field();
        for ch in [Chirality::Unbarred, Chirality::Barred] {
            for (i, j, a, b) in self.indices() {
                let e = epsilon(a, b);
                let s1 = self.apply(&Bilinear::new(BilinearKind::S, ch, i, j, a, b), t)?;
                let s2 = self.apply(&Bilinear::new(BilinearKind::S, ch, i, j, b, a), t)?;
                let a1 = self.apply(&Bilinear::new(BilinearKind::A, ch, i, j, a, b), t)?;
                let a2 = self.apply(&Bilinear::new(BilinearKind::A, ch, i, j, b, a), t)?;
                if !self.qa.combine(&f.one(), &s1, &-f.q_power(e), &s2)?.is_zero()
                    || !self.qa.combine(&f.one(), &a1, &f.q_power(-e), &a2)?.is_zero()
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// On a state of definite weight, for both chiralities:
    /// `[p_ij + 1] A^{ij}_{ab} = -[p_ij - 1] A^{ji}_{ab}`, `S^{ij}_{ab} = S^{ji}_{ab}`
    /// and `A^{ii}_{ab} = 0`.
    pub fn check_dynamical_as(&self, t: &ReducedTensor) -> Result<bool> {
        if t.is_zero() {
            return Ok(true);
        }
        let (cl, cr) = t
            .definite_contents()
            .ok_or_else(|| Error::InvalidParameter("state has no definite weight".into()))?;
        let f = self.field();
        for (ch, w) in [(Chirality::Unbarred, cl.weight()), (Chirality::Barred, cr.weight())] {
            for (i, j, a, b) in self.indices() {
                let aij = self.apply(&Bilinear::new(BilinearKind::A, ch, i, j, a, b), t)?;
                if i == j {
                    if !aij.is_zero() {
                        return Ok(false);
                    }
                    continue;
                }
                let aji = self.apply(&Bilinear::new(BilinearKind::A, ch, j, i, a, b), t)?;
                let lhs = self.qa.combine(&w.eval_bracket(i, j, 1, f)?, &aij, &w.eval_bracket(i, j, -1, f)?, &aji)?;
                let sij = self.apply(&Bilinear::new(BilinearKind::S, ch, i, j, a, b), t)?;
                let sji = self.apply(&Bilinear::new(BilinearKind::S, ch, j, i, a, b), t)?;
                if !lhs.is_zero() || !self.qa.equal(&sij, &sji)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `S (x) Abar = 0 = A (x) Sbar`, contracted over both flavor indices.
    pub fn check_contraction_vanishing(&self, t: &ReducedTensor) -> Result<bool> {
        let n = self.n();
        for i in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    for m in 1..=n {
                        for (x, y) in [(BilinearKind::S, BilinearKind::A), (BilinearKind::A, BilinearKind::S)] {
                            let op = contracted_op(self.field(), n, x, y, (i, j), (l, m))?;
                            if !self.qa.apply_op(&op, t)?.is_zero() {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// `(S (x) Sbar, A (x) Abar)` parts of `Q^i_l Q^j_m t`.
    pub fn decompose_qq(&self, i: usize, l: usize, j: usize, m: usize, t: &ReducedTensor) -> Result<(ReducedTensor, ReducedTensor)> {
        let n = self.n();
        let ss = contracted_op(self.field(), n, BilinearKind::S, BilinearKind::S, (i, j), (l, m))?;
        let aa = contracted_op(self.field(), n, BilinearKind::A, BilinearKind::A, (i, j), (l, m))?;
        Ok((self.qa.apply_op(&ss, t)?, self.qa.apply_op(&aa, t)?))
    }

    /// `Q^i_l Q^j_m = S (x) Sbar + A (x) Abar` on `t`, for every index quadruple.
    pub fn check_decomposition(&self, t: &ReducedTensor) -> Result<bool> {
        let one = self.field().one();
        for (i, l, j, m) in self.indices() {
            let (ss, aa) = self.decompose_qq(i, l, j, m, t)?;
            let qq = self.qa.apply_q(i, l, &self.qa.apply_q(j, m, t)?)?;
            if !self.qa.equal(&self.qa.combine(&one, &ss, &one, &aa)?, &qq)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The S/A reading of the hook vectors `v_h = Q^i_i Q^1_1 v`, `w_h = Q^1_1 Q^i_i v`.
    pub fn hook_audit(&self, i: usize) -> Result<HookAudit> {
        let (v, vh, wh) = self.qa.hook_vectors(i)?;
        let (ss, aa) = self.decompose_qq(i, i, 1, 1, &v)?;
        let (_, aa_w) = self.decompose_qq(1, 1, i, i, &v)?;
        Ok(HookAudit {
            v_is_ss_part: self.qa.equal(&vh, &ss)?,
            v_aa_part_zero: aa.is_zero(),
            w_is_aa_part: self.qa.equal(&wh, &aa_w)?,
        })
    }
}

/// Seeded random single-content combinations of words, each nonzero in the module
/// when possible. Returned unreduced.
pub fn random_tensor_states(qa: &QAlgebra, seed: u64, count: usize, max_len: usize) -> Result<Vec<TensorState>> {
    let n = qa.n();
    let f = qa.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_combo = |rng: &mut ChaCha8Rng, ch: Chirality| -> Result<Vec<(Word, Scalar)>> {
        let len = rng.gen_range(0..=max_len);
        // end on a first-row letter so the vacuum condition does not kill the word
        let mut gens: Vec<Gen> = (0..len)
            .map(|k| {
                let row = if k + 1 == len { 1 } else { rng.gen_range(1..=n) };
                Gen::new(row, rng.gen_range(1..=n))
            })
            .collect();
        let mut out = vec![(Word::new(ch, gens.clone()), f.one())];
        if len > 1 {
            gens[..len - 1].shuffle(rng);
            out.push((Word::new(ch, gens), f.from_int(rng.gen_range(-3..=3))));
        }
        Ok(out)
    };
    let mut states = Vec::with_capacity(count);
    let mut attempts = 0;
    while states.len() < count {
        attempts += 1;
        let left = random_combo(&mut rng, Chirality::Unbarred)?;
        let right = random_combo(&mut rng, Chirality::Barred)?;
        let mut s = TensorState::zero(f);
        for (l, a) in &left {
            for (r, b) in &right {
                s.add_term(l.clone(), r.clone(), &(a * b))?;
            }
        }
        if attempts > 50 * count || !qa.reduce(&s)?.is_zero() {
            states.push(s);
        }
    }
    Ok(states)
}
