// SPDX-License-Identifier: Apache-2.0

//! Faithful maps for types B, C and D.
//!
//! The levels of an odd diagram are the weight-one nodes `i_1 < ... < i_k`;
//! in the first type D case a final level `n - 1` is appended, whose set
//! `Y` collects the remaining roots of `Phi_{d,1}`. With `i_0 = 0` the
//! window of level `l` is
//! `Omega_l = { e_s - e_t in Phi_{d,2} : t - s <= i_{l+1} - i_{l-1} }`, and
//! lambda is faithful when every root `e_s - e_t` with
//! `s <= i_l < i_{l+1} < t` and nonzero lambda lies in `Omega_l`.
//!
//! The transformations `rho` and `varsigma` are graded automorphisms of the
//! Lie algebra: conjugation by `exp(gamma e_beta)` for a root `beta` of
//! weight zero and by the permutation exchanging two coordinates of equal
//! weight. Pulling lambda back along them gives a congruent Gram matrix.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::chevalley::DenseMatrix;
use crate::diagrams::{odd_sequence, DSubcase, OddSequence, WeightedDiagram};
use crate::error::{Error, Result};
use crate::gram::{det_integer_gram, gf2k_field, CoefficientRing, GradedSystem, LambdaAssignment};
use crate::linalg::det_integer;
use crate::root_system::{LieType, Root};

/// Iteration cap of [`faithfulize`].
pub const FAITHFULIZE_MAX_STEPS: usize = 100_000;

/// The levels of an odd B, C or D diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Levels {
    /// `i_1 < ... < i_k`, possibly followed by the final level `n - 1`.
    pub values: Vec<usize>,
    /// True when the last level is the appended one of the first type D case.
    pub appended_last: bool,
}

impl Levels {
    /// Number of levels.
    pub fn k(&self) -> usize {
        self.values.len()
    }

    /// `i_l` with `i_0 = 0`.
    pub fn i(&self, l: usize) -> usize {
        if l == 0 {
            0
        } else {
            self.values[l - 1]
        }
    }

    /// The first `m` levels.
    pub fn truncated(&self, m: usize) -> Levels {
        Levels {
            values: self.values[..m].to_vec(),
            appended_last: self.appended_last && m == self.values.len(),
        }
    }

    /// Gaps `s_l = i_l - i_{l-1}` for `1 <= l <= k`, and `s_0 = 0`.
    pub fn s(&self, l: usize) -> usize {
        if l == 0 {
            0
        } else {
            self.i(l) - self.i(l - 1)
        }
    }
}

/// The levels of an odd diagram with a known odd sequence.
pub fn levels(d: &WeightedDiagram, seq: &OddSequence) -> Levels {
    let mut values = seq.indices.clone();
    let appended_last = seq.d_subcase == Some(DSubcase::Case1);
    if appended_last {
        values.push(d.rank - 1);
    }
    Levels {
        values,
        appended_last,
    }
}

fn levels_of(gs: &GradedSystem) -> Result<Levels> {
    let d = gs.diagram();
    if d.lie_type == LieType::A || !d.is_odd() {
        return Err(Error::Precondition(
            "needs an odd diagram of type B, C or D".into(),
        ));
    }
    Ok(levels(d, &odd_sequence(d)?))
}

/// The sets `Y`, `P` and `Q` by root index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqPartition {
    /// `Y_{d,1}, ..., Y_{d,k}`.
    pub y_sets: Vec<Vec<usize>>,
    /// `Q_1, Q_2, ...`.
    pub q_sets: Vec<Vec<usize>>,
    /// `P_1, P_2, ...`.
    pub p_sets: Vec<Vec<usize>>,
}

impl PqPartition {
    /// Rows and columns of `M_{l+1}`: `(Q_l, P_l)` for each computed `l`.
    pub fn rectangular_blocks(&self) -> Vec<(&[usize], &[usize])> {
        self.p_sets
            .iter()
            .enumerate()
            .map(|(l, p)| (self.q_sets[l].as_slice(), p.as_slice()))
            .collect()
    }

    /// Index set of the final square block: the last `Q` followed by the last `Y`.
    pub fn final_block(&self) -> Vec<usize> {
        let mut v = self.q_sets[self.q_sets.len() - 1].clone();
        if self.y_sets.len() > self.q_sets.len() {
            v.extend(&self.y_sets[self.y_sets.len() - 1]);
        }
        v
    }
}

fn y_sets(gs: &GradedSystem, lv: &Levels) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for l in 1..=lv.k() {
        if lv.appended_last && l == lv.k() {
            let used: BTreeSet<usize> = out.iter().flatten().copied().collect();
            out.push(
                gs.phi1_indices()
                    .iter()
                    .copied()
                    .filter(|r| !used.contains(r))
                    .collect(),
            );
            continue;
        }
        let mut y = Vec::new();
        for &r in gs.phi1_indices() {
            if gs.system().expansion(gs.root(r))?[lv.i(l) - 1] == 1 {
                y.push(r);
            }
        }
        out.push(y);
    }
    Ok(out)
}

/// True when `g` lies in the window `Omega_l`.
pub fn in_omega(gs: &GradedSystem, lv: &Levels, l: usize, g: &Root) -> bool {
    gs.in_phi2(g)
        && g.as_minus_pair()
            .is_some_and(|(s, t)| t - s <= lv.i(l + 1) - lv.i(l - 1))
}

/// The partition computed for `l = 1..=upto`, without the count checks.
pub fn pq_partition_levels(gs: &GradedSystem, lv: &Levels, upto: usize) -> Result<PqPartition> {
    let y = y_sets(gs, lv)?;
    let mut q_sets = vec![y[0].clone()];
    let mut p_sets = Vec::new();
    for (l, yn) in y.iter().enumerate().take(upto + 1).skip(1) {
        let q = q_sets.last().expect("nonempty");
        let p: Vec<usize> = yn
            .iter()
            .copied()
            .filter(|&a| {
                q.iter()
                    .any(|&b| in_omega(gs, lv, l, &gs.root(a).add(gs.root(b))))
            })
            .collect();
        let rest: Vec<usize> = yn.iter().copied().filter(|a| !p.contains(a)).collect();
        p_sets.push(p);
        q_sets.push(rest);
    }
    Ok(PqPartition {
        y_sets: y,
        q_sets,
        p_sets,
    })
}

/// The closed-form value of `|P_l| = |Q_l|` in terms of the level gaps.
pub fn closed_form_count(lv: &Levels, l: usize) -> i64 {
    let s = |j: usize| lv.s(j) as i64;
    if l.is_multiple_of(2) {
        (1..=l / 2)
            .map(|j| (s(2 * j + 1) - s(2 * j - 1)) * s(2 * j))
            .sum()
    } else {
        (1..=l.div_ceil(2))
            .map(|j| (s(2 * j) - if j >= 2 { s(2 * j - 2) } else { 0 }) * s(2 * j - 1))
            .sum()
    }
}

/// The full partition `Q_1, ..., Q_{k-1}` and `P_1, ..., P_{k-2}`, with the count identities checked.
pub fn pq_partition(gs: &GradedSystem) -> Result<PqPartition> {
    let lv = levels_of(gs)?;
    let k = lv.k();
    if k < 2 {
        return Err(Error::Precondition(
            "the partition needs at least two levels".into(),
        ));
    }
    let part = pq_partition_levels(gs, &lv, k - 2)?;
    for l in 1..=k - 2 {
        let (p, q) = (part.p_sets[l - 1].len(), part.q_sets[l - 1].len());
        let cf = closed_form_count(&lv, l);
        if p != q || p as i64 != cf {
            return Err(Error::Internal(format!(
                "level {l}: |P| = {p}, |Q| = {q}, closed form {cf}"
            )));
        }
    }
    Ok(part)
}

/// Roots in the support of lambda that violate faithfulness, as `(l, s, t)` sorted by `(s, t)`.
pub fn offending_roots(lv: &Levels, lam: &LambdaAssignment) -> Vec<(usize, usize, usize)> {
    let k = lv.k();
    let mut out = Vec::new();
    for r in lam.support() {
        let Some((s, t)) = r.as_minus_pair() else {
            continue;
        };
        for l in 1..=k.saturating_sub(2) {
            if s <= lv.i(l) && lv.i(l + 1) < t && t - s > lv.i(l + 1) - lv.i(l - 1) {
                out.push((l, s, t));
            }
        }
    }
    out.sort_by_key(|&(l, s, t)| (s, t, l));
    out
}

/// True when lambda is faithful.
pub fn is_faithful(gs: &GradedSystem, lam: &LambdaAssignment) -> Result<bool> {
    let lv = levels_of(gs)?;
    if lv.k() < 3 {
        return Err(Error::Precondition(
            "faithfulness needs at least three levels".into(),
        ));
    }
    gs.check_lambda(lam)?;
    Ok(offending_roots(&lv, lam).is_empty())
}

fn check_block_indices(lv: &Levels, l: usize, s: usize, t: usize) -> Result<()> {
    let k = lv.k();
    if l == 0 || l >= k {
        return Err(Error::Precondition(format!(
            "level {l} outside [1, {}]",
            k - 1
        )));
    }
    let (lo, hi) = (lv.i(l), lv.i(l + 1) - 1);
    if s == t || !(lo..=hi).contains(&s) || !(lo..=hi).contains(&t) {
        return Err(Error::Precondition(format!(
            "indices ({s}, {t}) must be distinct and lie in [{lo}, {hi}]"
        )));
    }
    Ok(())
}

fn dense(gs: &GradedSystem, r: &Root) -> Result<DenseMatrix> {
    Ok(gs.basis().matrix(r)?.to_dense(gs.basis().matrix_dim()))
}

fn evaluate(gs: &GradedSystem, lam: &LambdaAssignment, m: &DenseMatrix) -> Result<i128> {
    let mut acc = 0i128;
    for (idx, c) in gs.basis().decompose(m)? {
        let r = gs.root(idx);
        if !gs.in_phi2(r) {
            return Err(Error::Internal(format!(
                "transformation leaves Phi_(d,2) at {r}"
            )));
        }
        acc = lam.ring.add(acc, lam.ring.scale(c, lam.get(r))?)?;
    }
    Ok(acc)
}

/// Pulls lambda back along conjugation by `exp(gamma e_beta)` with `beta = e_{s+1} - e_{t+1}`.
///
/// `s` and `t` are range indices in `[i_l, i_{l+1} - 1]`, so `beta` has weight zero.
pub fn apply_rho(
    gs: &GradedSystem,
    lam: &LambdaAssignment,
    l: usize,
    s: usize,
    t: usize,
    gamma: i128,
) -> Result<LambdaAssignment> {
    let lv = levels_of(gs)?;
    check_block_indices(&lv, l, s, t)?;
    gs.check_lambda(lam)?;
    let ring = lam.ring;
    let gamma = ring.reduce(gamma)?;
    let len = gs.system().coord_len();
    let e_beta = dense(gs, &Root::minus(len, s + 1, t + 1))?;
    let mut out = LambdaAssignment::zero(ring);
    out.provenance = lam.provenance.clone();
    for delta in gs.phi2() {
        let e_delta = dense(gs, &delta)?;
        let linear = e_beta.mul(&e_delta).add_scaled(&e_delta.mul(&e_beta), -1);
        let quadratic =
            DenseMatrix::zeros(e_beta.dim()).add_scaled(&e_beta.mul(&e_delta).mul(&e_beta), -1);
        let v1 = evaluate(gs, lam, &linear)?;
        let v2 = evaluate(gs, lam, &quadratic)?;
        let g2 = ring.mul(gamma, gamma)?;
        let value = ring.add(
            lam.get(&delta),
            ring.add(ring.mul(gamma, v1)?, ring.mul(g2, v2)?)?,
        )?;
        out.set(delta, value)?;
    }
    Ok(out)
}

/// Pulls lambda back along the permutation exchanging coordinates `s+1` and `t+1`.
pub fn apply_swap(
    gs: &GradedSystem,
    lam: &LambdaAssignment,
    l: usize,
    s: usize,
    t: usize,
) -> Result<LambdaAssignment> {
    let lv = levels_of(gs)?;
    check_block_indices(&lv, l, s, t)?;
    gs.check_lambda(lam)?;
    let dim = gs.basis().matrix_dim();
    let perm = swap_matrix(gs.diagram().lie_type, dim, s + 1, t + 1);
    let mut out = LambdaAssignment::zero(lam.ring);
    out.provenance = lam.provenance.clone();
    for delta in gs.phi2() {
        let m = perm.mul(&dense(gs, &delta)?).mul(&perm);
        let v = evaluate(gs, lam, &m)?;
        out.set(delta, v)?;
    }
    Ok(out)
}

fn swap_matrix(t: LieType, dim: usize, a: usize, b: usize) -> DenseMatrix {
    let mut sigma: Vec<usize> = (0..dim).collect();
    sigma.swap(a - 1, b - 1);
    if t != LieType::A {
        let neg = |i: usize| dim - i;
        sigma.swap(neg(a), neg(b));
    }
    let mut p = DenseMatrix::zeros(dim);
    for (i, &j) in sigma.iter().enumerate() {
        p.set(i, j, 1);
    }
    p
}

/// Transforms lambda into a faithful assignment with the same `|det|`.
///
/// Over the integers a Euclidean descent on `lambda(e_s - e_T)` and
/// `lambda(e_s - e_T')` is used, where `e_s - e_T` is the offending root
/// with least `(s, T)` and `T' = s + i_{l+1} - i_{l-1}`. Over a field one
/// `rho` step (or a swap when the partner value is zero) clears it.
pub fn faithfulize(gs: &GradedSystem, lam: &LambdaAssignment) -> Result<LambdaAssignment> {
    let lv = levels_of(gs)?;
    if lv.k() < 3 {
        return Err(Error::Precondition(
            "faithfulization needs at least three levels".into(),
        ));
    }
    gs.check_lambda(lam)?;
    let ring = lam.ring;
    let len = gs.system().coord_len();
    let mut cur = lam.clone();
    for _ in 0..FAITHFULIZE_MAX_STEPS {
        let Some(&(l, s, big_t)) = offending_roots(&lv, &cur).first() else {
            return Ok(cur);
        };
        let t_prime = s + lv.i(l + 1) - lv.i(l - 1);
        let x_root = Root::minus(len, s, big_t);
        let y_root = Root::minus(len, s, t_prime);
        let y = cur.get(&y_root);
        if y == 0 {
            cur = apply_swap(gs, &cur, l + 1, big_t - 1, t_prime - 1)?;
            continue;
        }
        let x = cur.get(&x_root);
        let gamma = match ring {
            CoefficientRing::Integers => x / y,
            CoefficientRing::Gf2 => 1,
            CoefficientRing::Gf2k(k) => {
                let f = gf2k_field(k);
                f.mul(x as u64, f.inv(y as u64)) as i128
            }
        };
        let mut next = apply_rho(gs, &cur, l + 1, big_t - 1, t_prime - 1, gamma)?;
        let reduced = |v: i128| match ring {
            CoefficientRing::Integers => v.abs() < y.abs(),
            _ => v == 0,
        };
        if !reduced(next.get(&x_root)) {
            let neg = match ring {
                CoefficientRing::Integers => -gamma,
                _ => gamma,
            };
            next = apply_rho(gs, &cur, l + 1, big_t - 1, t_prime - 1, neg)?;
            if !reduced(next.get(&x_root)) {
                return Err(Error::Internal(format!(
                    "rho step did not reduce lambda at {x_root}"
                )));
            }
        }
        cur = next;
        if cur.get(&x_root) != 0 {
            cur = apply_swap(gs, &cur, l + 1, big_t - 1, t_prime - 1)?;
        }
    }
    Err(Error::Internal("faithfulization did not terminate".into()))
}

fn sub_gram(
    gs: &GradedSystem,
    lam: &LambdaAssignment,
    rows: &[usize],
    cols: &[usize],
) -> Result<Vec<Vec<i128>>> {
    let b = gs.basis();
    rows.iter()
        .map(|&a| {
            cols.iter()
                .map(|&c| match b.sum_index(a, c) {
                    Some(sum) => {
                        let v = lam.get(gs.root(sum));
                        (b.structure_constant(a, c) as i128)
                            .checked_mul(v)
                            .ok_or(Error::Overflow("gram entry"))
                    }
                    None => Ok(0),
                })
                .collect()
        })
        .collect()
}

/// The blocks of the determinant factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Determinants of `M_2, ..., M_{k-1}`; `None` for a non-square block.
    pub block_dets: Vec<Option<BigInt>>,
    /// Determinant of the final block `M_k`.
    pub last_det: BigInt,
    /// Determinant of the whole Gram matrix.
    pub gram_det: BigInt,
    /// Whether `det G = +-(prod det M_l)^2 det M_k` holds exactly.
    pub identity_holds: bool,
}

/// Evaluates the determinant factorization for a faithful integer lambda.
pub fn factor_determinant(gs: &GradedSystem, lam: &LambdaAssignment) -> Result<Factorization> {
    let lv = levels_of(gs)?;
    let k = lv.k();
    if k < 2 {
        return Err(Error::Precondition(
            "the factorization needs at least two levels".into(),
        ));
    }
    if k >= 3 && !is_faithful(gs, lam)? {
        return Err(Error::Precondition("lambda is not faithful".into()));
    }
    let part = pq_partition_levels(gs, &lv, k - 2)?;
    let gram_det = det_integer_gram(gs, lam)?;
    let mut block_dets = Vec::new();
    let mut product = Some(BigInt::one());
    for (rows, cols) in part.rectangular_blocks() {
        if rows.len() == cols.len() {
            let d = det_integer(&sub_gram(gs, lam, rows, cols)?);
            product = product.map(|p| p * &d);
            block_dets.push(Some(d));
        } else {
            product = None;
            block_dets.push(None);
        }
    }
    let last = part.final_block();
    let last_det = det_integer(&sub_gram(gs, lam, &last, &last)?);
    let identity_holds = match product {
        Some(p) => {
            let rhs = &p * &p * &last_det;
            rhs.abs() == gram_det.abs()
        }
        None => false,
    };
    Ok(Factorization {
        block_dets,
        last_det,
        gram_det,
        identity_holds,
    })
}
