// SPDX-License-Identifier: Apache-2.0

//! A Chevalley basis realized by integer matrices.
//!
//! Type `A_n` uses `sl_{n+1}` with `e_{e_i - e_j} = E_{ij}`. Types `B_n`,
//! `C_n` and `D_n` use the Lie algebras preserving an antidiagonal form on
//! a space with basis indexed by `1, ..., n, (0), -n, ..., -1`, so that the
//! diagonal torus acts on `E_{ab}` through the character `e_a - e_b` with
//! `e_{-i} = -e_i` and `e_0 = 0`. Structure constants are read off matrix
//! commutators and cached in a dense table.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::root_system::{LieType, Root, RootSystem};

/// A sparse integer matrix stored as `(row, col, value)` triples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    fn push(&mut self, r: usize, c: usize, v: i64) {
        self.entries.push((r, c, v));
    }

    /// Nonzero entries as `(row, col, value)` triples.
    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    /// Dense row-major copy of order `dim`.
    pub fn to_dense(&self, dim: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(dim);
        for &(r, c, v) in &self.entries {
            m.data[r * dim + c] += v;
        }
        m
    }

    /// The commutator `[a, b] = ab - ba`.
    pub fn commutator(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for &(r1, c1, v1) in &a.entries {
            for &(r2, c2, v2) in &b.entries {
                if c1 == r2 {
                    *acc.entry((r1, c2)).or_default() += v1 * v2;
                }
                if c2 == r1 {
                    *acc.entry((r2, c1)).or_default() -= v1 * v2;
                }
            }
        }
        let mut entries: Vec<_> = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_unstable();
        SparseMatrix { entries }
    }
}

/// A dense square integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl DenseMatrix {
    /// The zero matrix of order `dim`.
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    /// The identity matrix of order `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    /// Matrix order.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.dim + c]
    }

    /// Sets the entry at `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.dim + c] = v;
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &DenseMatrix, c: i64) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + c * b)
                .collect(),
        }
    }

    /// Matrix product.
    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        let d = self.dim;
        let mut out = DenseMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }
}

/// The result of bracketing two basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketResult {
    /// The structure constant `N_{alpha,beta}`, zero when `alpha + beta` is not a root.
    pub coefficient: i64,
    /// The root `alpha + beta` when it is a root.
    pub sum_root: Option<Root>,
}

/// A Chevalley basis with its cached structure constants.
#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    system: RootSystem,
    dim: usize,
    matrices: Vec<SparseMatrix>,
    pivots: Vec<(usize, usize, i64)>,
    pivot_owner: HashMap<(usize, usize), usize>,
    table: Vec<i64>,
    sum_index: Vec<Option<usize>>,
}

fn position(t: LieType, n: usize, i: i64) -> usize {
    let dim = match t {
        LieType::A => n + 1,
        LieType::B => 2 * n + 1,
        LieType::C | LieType::D => 2 * n,
    };
    if t == LieType::A || i > 0 {
        (i - 1) as usize
    } else if i == 0 {
        n
    } else {
        (dim as i64 + i) as usize
    }
}

fn root_matrix(t: LieType, n: usize, r: &Root) -> SparseMatrix {
    let mut m = SparseMatrix::default();
    let mut add = |a: i64, b: i64, v: i64| m.push(position(t, n, a), position(t, n, b), v);
    let sup: Vec<(i64, i8)> = r
        .support()
        .into_iter()
        .map(|(i, c)| (i as i64, c))
        .collect();
    if t == LieType::A {
        let i = sup
            .iter()
            .find(|x| x.1 == 1)
            .expect("type A root has a +1")
            .0;
        let j = sup
            .iter()
            .find(|x| x.1 == -1)
            .expect("type A root has a -1")
            .0;
        add(i, j, 1);
        return m;
    }
    let sign = if t == LieType::C { 1 } else { -1 };
    match sup.as_slice() {
        [(i, c)] => match (t, *c) {
            (LieType::C, 2) => add(*i, -*i, 1),
            (LieType::C, _) => add(-*i, *i, 1),
            (_, 1) => {
                add(*i, 0, 2);
                add(0, -*i, -1);
            }
            _ => {
                add(-*i, 0, 2);
                add(0, *i, -1);
            }
        },
        [(i, ci), (j, cj)] => match (*ci, *cj) {
            (1, -1) => {
                add(*i, *j, 1);
                add(-*j, -*i, -1);
            }
            (-1, 1) => {
                add(*j, *i, 1);
                add(-*i, -*j, -1);
            }
            (1, 1) => {
                add(*i, -*j, 1);
                add(*j, -*i, sign);
            }
            _ => {
                add(-*j, *i, 1);
                add(-*i, *j, sign);
            }
        },
        _ => unreachable!("roots have one or two nonzero coordinates"),
    }
    m.entries.sort_unstable();
    m
}

impl ChevalleyBasis {
    /// Realizes the basis for a root system and tabulates all structure constants.
    pub fn realize(system: RootSystem) -> Self {
        let t = system.lie_type();
        let n = system.rank();
        let dim = match t {
            LieType::A => n + 1,
            LieType::B => 2 * n + 1,
            LieType::C | LieType::D => 2 * n,
        };
        let matrices: Vec<SparseMatrix> = system
            .roots()
            .iter()
            .map(|r| root_matrix(t, n, r))
            .collect();
        let pivots: Vec<(usize, usize, i64)> = matrices.iter().map(|m| m.entries[0]).collect();
        let pivot_owner = pivots
            .iter()
            .enumerate()
            .map(|(k, &(r, c, _))| ((r, c), k))
            .collect();
        let count = system.roots().len();
        let mut table = vec![0i64; count * count];
        let mut sum_index = vec![None; count * count];
        for a in 0..count {
            for b in 0..count {
                let s = system.roots()[a].add(&system.roots()[b]);
                if let Some(c) = system.index_of(&s) {
                    let comm = SparseMatrix::commutator(&matrices[a], &matrices[b]);
                    let (pr, pc, pv) = pivots[c];
                    let got = comm
                        .entries
                        .iter()
                        .find(|e| e.0 == pr && e.1 == pc)
                        .map_or(0, |e| e.2);
                    table[a * count + b] = got / pv;
                    sum_index[a * count + b] = Some(c);
                }
            }
        }
        ChevalleyBasis {
            system,
            dim,
            matrices,
            pivots,
            pivot_owner,
            table,
            sum_index,
        }
    }

    /// The underlying root system.
    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    /// Order of the defining matrices.
    pub fn matrix_dim(&self) -> usize {
        self.dim
    }

    /// The basis matrix `e_alpha`.
    pub fn matrix(&self, alpha: &Root) -> Result<&SparseMatrix> {
        let i = self.index(alpha)?;
        Ok(&self.matrices[i])
    }

    /// The basis matrix of the root with the given index.
    pub fn matrix_by_index(&self, i: usize) -> &SparseMatrix {
        &self.matrices[i]
    }

    fn index(&self, r: &Root) -> Result<usize> {
        self.system
            .index_of(r)
            .ok_or_else(|| Error::NotARoot(r.0.clone()))
    }

    /// Structure constant for root indices; zero when the sum is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        self.table[a * self.system.roots().len() + b]
    }

    /// Index of `roots[a] + roots[b]` when it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        self.sum_index[a * self.system.roots().len() + b]
    }

    /// `[e_alpha, e_beta]` expressed in the basis.
    pub fn bracket(&self, alpha: &Root, beta: &Root) -> Result<BracketResult> {
        let a = self.index(alpha)?;
        let b = self.index(beta)?;
        if alpha.add(beta).is_zero() {
            return Err(Error::OppositeRoots);
        }
        Ok(BracketResult {
            coefficient: self.structure_constant(a, b),
            sum_root: self.sum_index(a, b).map(|c| self.system.roots()[c].clone()),
        })
    }

    /// Writes a matrix lying in the span of root vectors as `sum c_k e_k`.
    ///
    /// Returns `(root index, coefficient)` pairs. Fails if the matrix has a
    /// component outside the span of the root vectors.
    pub fn decompose(&self, m: &DenseMatrix) -> Result<Vec<(usize, i64)>> {
        let d = self.dim;
        let mut rest = m.clone();
        let mut out = Vec::new();
        for r in 0..d {
            for c in 0..d {
                let v = rest.get(r, c);
                if v == 0 {
                    continue;
                }
                let Some(&k) = self.pivot_owner.get(&(r, c)) else {
                    continue;
                };
                let pv = self.pivots[k].2;
                if v % pv != 0 {
                    return Err(Error::Internal(format!(
                        "entry {v} at ({r},{c}) is not a multiple of the pivot {pv}"
                    )));
                }
                let coef = v / pv;
                for &(rr, cc, vv) in self.matrices[k].entries() {
                    rest.set(rr, cc, rest.get(rr, cc) - coef * vv);
                }
                out.push((k, coef));
            }
        }
        if rest.data.iter().any(|&x| x != 0) {
            return Err(Error::Internal(
                "matrix is not in the span of root vectors".into(),
            ));
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Builds the basis for a root system.
pub fn realize_basis(system: RootSystem) -> ChevalleyBasis {
    ChevalleyBasis::realize(system)
}
