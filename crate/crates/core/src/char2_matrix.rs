// SPDX-License-Identifier: Apache-2.0

//! Blocked symmetric matrices over GF(2) and their singularity.
//!
//! A [`BlockSpec`] describes the matrix `S` assembled from row blocks
//! `A_r` and coupling blocks `E^{r,s}_{i,j}`. The module checks that `S`
//! is singular under each of the three parity hypotheses and that singular
//! even-order alternating matrices have kernel dimension at least two.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Gf2Matrix;

/// A rectangular matrix over GF(2) stored by rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2Rows {
    pub cols: usize,
    pub rows: Vec<Vec<bool>>,
}

impl Gf2Rows {
    /// Builds a matrix, checking that every row has `cols` entries.
    pub fn new(cols: usize, rows: Vec<Vec<bool>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput(format!(
                "every row must have {cols} entries"
            )));
        }
        Ok(Gf2Rows { cols, rows })
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.rows.len()
    }
}

/// True iff the rows of `a` embed injectively into the rows of `b`.
pub fn row_embeds(a: &Gf2Rows, b: &Gf2Rows) -> Result<bool> {
    if a.cols != b.cols {
        return Err(Error::InvalidInput(format!(
            "column counts differ: {} and {}",
            a.cols, b.cols
        )));
    }
    let mut available: HashMap<&[bool], usize> = HashMap::new();
    for r in &b.rows {
        *available.entry(r.as_slice()).or_default() += 1;
    }
    for r in &a.rows {
        match available.get_mut(r.as_slice()) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Data of a blocked matrix `S`.
///
/// Blocks are numbered `(r, i)` with `r` in `0..N` and `i` in `0..k_r`,
/// flattened in that order; `coupling[x][y]` is the scalar of the block pair
/// `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub n: usize,
    pub gamma: usize,
    pub k: Vec<usize>,
    pub a: Vec<Gf2Rows>,
    pub coupling: Vec<Vec<bool>>,
}

/// The parity hypotheses under which `S` is singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hypothesis {
    /// `Gamma = 2n`, every `m_r` even, some `k_s` odd with `m_s < 2n`.
    EvenRowsOddMultiplicity,
    /// `Gamma = 2n` and some `m_s` odd.
    OddRows,
    /// `Gamma = 2n + 1` and some `m_s` even.
    OddWidth,
}

impl Hypothesis {
    /// All hypotheses in order.
    pub const ALL: [Hypothesis; 3] = [
        Hypothesis::EvenRowsOddMultiplicity,
        Hypothesis::OddRows,
        Hypothesis::OddWidth,
    ];

    /// The 1-based number of the hypothesis.
    pub fn number(self) -> usize {
        match self {
            Hypothesis::EvenRowsOddMultiplicity => 1,
            Hypothesis::OddRows => 2,
            Hypothesis::OddWidth => 3,
        }
    }
}

impl BlockSpec {
    /// Number of row blocks `N`.
    pub fn blocks(&self) -> usize {
        self.k.len()
    }

    /// Row counts `m_r`.
    pub fn m(&self) -> Vec<usize> {
        self.a.iter().map(Gf2Rows::height).collect()
    }

    /// Total number of `(r, i)` blocks.
    pub fn flat_blocks(&self) -> usize {
        self.k.iter().sum()
    }

    /// Order of `S`, the sum of `k_r (m_r + Gamma)`.
    pub fn order(&self) -> usize {
        self.k
            .iter()
            .zip(&self.a)
            .map(|(k, a)| k * (a.height() + self.gamma))
            .sum()
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.gamma != 2 * self.n && self.gamma != 2 * self.n + 1 {
            return bad(format!(
                "Gamma must be {} or {}",
                2 * self.n,
                2 * self.n + 1
            ));
        }
        if self.k.is_empty() || self.k.len() != self.a.len() {
            return bad("need one multiplicity per row block and at least one block".into());
        }
        if self.k.contains(&0) {
            return bad("multiplicities must be positive".into());
        }
        for a in &self.a {
            if a.cols != self.gamma {
                return bad(format!("row blocks must have {} columns", self.gamma));
            }
            if a.height() == 0 || a.height() > 2 * self.n {
                return bad(format!("row counts must lie in [1, {}]", 2 * self.n));
            }
        }
        for w in self.a.windows(2) {
            if w[0].height() >= w[1].height() {
                return bad("row counts must increase strictly".into());
            }
            if !row_embeds(&w[0], &w[1])? {
                return bad("row blocks must embed into their successors".into());
            }
        }
        let b = self.flat_blocks();
        if self.coupling.len() != b || self.coupling.iter().any(|r| r.len() != b) {
            return bad(format!("coupling table must be {b} by {b}"));
        }
        for x in 0..b {
            if self.coupling[x][x] {
                return bad("a block does not couple to itself".into());
            }
            for y in 0..x {
                if self.coupling[x][y] != self.coupling[y][x] {
                    return bad("coupling table must be symmetric".into());
                }
            }
        }
        Ok(())
    }

    /// The hypotheses satisfied by this spec.
    pub fn hypotheses(&self) -> Vec<Hypothesis> {
        let m = self.m();
        let two_n = 2 * self.n;
        let mut out = Vec::new();
        if self.gamma == two_n {
            let all_even = m.iter().all(|x| x % 2 == 0);
            let odd_k = m
                .iter()
                .zip(&self.k)
                .any(|(&mr, &kr)| kr % 2 == 1 && mr < two_n);
            if all_even && odd_k {
                out.push(Hypothesis::EvenRowsOddMultiplicity);
            }
            if m.iter().any(|x| x % 2 == 1) {
                out.push(Hypothesis::OddRows);
            }
        } else if m.iter().any(|x| x % 2 == 0) {
            out.push(Hypothesis::OddWidth);
        }
        out
    }
}

/// Nonzero positions of an `E` block with unit scalar, relative to the block.
fn e_positions(n: usize, gamma: usize) -> impl Iterator<Item = (usize, usize)> {
    let sh = gamma - 2 * n;
    (0..n).flat_map(move |i| [(sh + i, sh + n + i), (sh + n + i, sh + i)])
}

/// Assembles the blocked matrix `S`.
pub fn assemble_s(spec: &BlockSpec) -> Result<Gf2Matrix> {
    spec.validate()?;
    let g = spec.gamma;
    let mut offsets = Vec::new();
    let mut pos = 0;
    for (r, &k) in spec.k.iter().enumerate() {
        for _ in 0..k {
            offsets.push((r, pos));
            pos += spec.a[r].height() + g;
        }
    }
    let mut s = Gf2Matrix::zeros(pos);
    for &(r, o) in &offsets {
        let m = spec.a[r].height();
        for (i, row) in spec.a[r].rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v {
                    s.set(o + i, o + m + j, true);
                    s.set(o + m + j, o + i, true);
                }
            }
        }
    }
    for (x, &(rx, ox)) in offsets.iter().enumerate() {
        for (y, &(ry, oy)) in offsets.iter().enumerate() {
            if !spec.coupling[x][y] {
                continue;
            }
            let (bx, by) = (ox + spec.a[rx].height(), oy + spec.a[ry].height());
            for (p, q) in e_positions(spec.n, g) {
                s.toggle(bx + p, by + q);
            }
        }
    }
    Ok(s)
}

/// Singularity of `S` together with the hypotheses it satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockVerdict {
    pub singular: bool,
    pub hypotheses: Vec<Hypothesis>,
    pub order: usize,
}

impl BlockVerdict {
    /// False only when a hypothesis holds and `S` is nonetheless invertible.
    pub fn consistent(&self) -> bool {
        self.singular || self.hypotheses.is_empty()
    }
}

/// Computes whether `det S = 0` over GF(2).
pub fn check_block_singularity(spec: &BlockSpec) -> Result<BlockVerdict> {
    let s = assemble_s(spec)?;
    Ok(BlockVerdict {
        singular: !s.det(),
        hypotheses: spec.hypotheses(),
        order: s.order(),
    })
}

/// Kernel dimension of a singular symmetric even-order matrix with zero diagonal.
pub fn alternating_kernel_dim(a: &Gf2Matrix) -> Result<usize> {
    let n = a.order();
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("order {n} is odd")));
    }
    for i in 0..n {
        if a.get(i, i) {
            return Err(Error::Precondition(format!(
                "diagonal entry {i} is nonzero"
            )));
        }
        for j in 0..i {
            if a.get(i, j) != a.get(j, i) {
                return Err(Error::Precondition("matrix is not symmetric".into()));
            }
        }
    }
    if a.det() {
        return Err(Error::Precondition("matrix is invertible".into()));
    }
    Ok(a.kernel_dim())
}

/// A random symmetric matrix of order `n` with zero diagonal.
pub fn random_alternating<R: Rng>(n: usize, density: f64, rng: &mut R) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(density) {
                m.set(i, j, true);
                m.set(j, i, true);
            }
        }
    }
    m
}

/// A random spec satisfying hypothesis `hyp`, with `n <= 4` and `N <= 3`.
///
/// Rows of each `A_r` are drawn from a shared pool of random rows, taking a
/// shuffled prefix so that every block embeds into the next.
pub fn random_spec<R: Rng>(hyp: Hypothesis, rng: &mut R) -> BlockSpec {
    loop {
        if let Some(spec) = try_random_spec(hyp, rng) {
            return spec;
        }
    }
}

fn try_random_spec<R: Rng>(hyp: Hypothesis, rng: &mut R) -> Option<BlockSpec> {
    let n = rng.gen_range(1..=4usize);
    let big_n = rng.gen_range(1..=3usize).min(2 * n);
    let gamma = if hyp == Hypothesis::OddWidth {
        2 * n + 1
    } else {
        2 * n
    };
    let range: Vec<usize> = match hyp {
        Hypothesis::EvenRowsOddMultiplicity => (2..=2 * n).step_by(2).collect(),
        _ => (1..=2 * n).collect(),
    };
    let mut m: Vec<usize> = range.choose_multiple(rng, big_n).copied().collect();
    m.sort_unstable();
    let mut k: Vec<usize> = m.iter().map(|_| rng.gen_range(1..=3)).collect();
    match hyp {
        Hypothesis::EvenRowsOddMultiplicity => {
            let cand: Vec<usize> = (0..m.len()).filter(|&r| m[r] < 2 * n).collect();
            let &r = cand.choose(rng)?;
            if k[r].is_multiple_of(2) {
                k[r] -= 1;
            }
        }
        Hypothesis::OddRows => {
            if m.iter().all(|x| x % 2 == 0) {
                return None;
            }
        }
        Hypothesis::OddWidth => {
            if m.iter().all(|x| x % 2 == 1) {
                return None;
            }
        }
    }
    let mut pool: Vec<Vec<bool>> = Vec::new();
    let mut a = Vec::new();
    for &mr in &m {
        while pool.len() < mr {
            pool.push((0..gamma).map(|_| rng.gen_bool(0.5)).collect());
        }
        let mut rows = pool.clone();
        rows.shuffle(rng);
        rows.truncate(mr);
        a.push(Gf2Rows { cols: gamma, rows });
    }
    let b: usize = k.iter().sum();
    let mut coupling = vec![vec![false; b]; b];
    let pairs: Vec<(usize, usize)> = (0..b).flat_map(|x| (0..x).map(move |y| (x, y))).collect();
    for (x, y) in pairs {
        let v = rng.gen_bool(0.5);
        coupling[x][y] = v;
        coupling[y][x] = v;
    }
    let spec = BlockSpec {
        n,
        gamma,
        k,
        a,
        coupling,
    };
    debug_assert!(spec.validate().is_ok());
    Some(spec)
}
