// SPDX-License-Identifier: Apache-2.0

//! Shared oracles for the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use wdg_core::chevalley::{ChevalleyBasis, SparseMatrix};
use wdg_core::diagrams::{diagram_from_input, enumerate_inputs, PartitionInput};
use wdg_core::gram::{CoefficientRing, GradedSystem, LambdaAssignment};
use wdg_core::root_system::{LieType, Root};

/// An element of the Lie algebra: root vector coefficients plus a diagonal Cartan part.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Elem {
    pub roots: BTreeMap<usize, i64>,
    pub diag: Vec<i64>,
}

impl Elem {
    pub fn root(dim: usize, i: usize) -> Self {
        Elem {
            roots: BTreeMap::from([(i, 1)]),
            diag: vec![0; dim],
        }
    }

    pub fn cartan(diag: Vec<i64>) -> Self {
        Elem {
            roots: BTreeMap::new(),
            diag,
        }
    }

    fn add_root(&mut self, i: usize, c: i64) {
        if c != 0 {
            let e = self.roots.entry(i).or_insert(0);
            *e += c;
            if *e == 0 {
                self.roots.remove(&i);
            }
        }
    }

    fn add_diag(&mut self, d: &[i64], c: i64) {
        for (x, y) in self.diag.iter_mut().zip(d) {
            *x += c * y;
        }
    }

    pub fn plus(&self, o: &Elem) -> Elem {
        let mut r = self.clone();
        for (&i, &c) in &o.roots {
            r.add_root(i, c);
        }
        r.add_diag(&o.diag, 1);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.roots.is_empty() && self.diag.iter().all(|&x| x == 0)
    }
}

/// The diagonal of `[e_a, e_b]` for opposite roots.
pub fn coroot_diag(b: &ChevalleyBasis, a: usize, c: usize) -> Vec<i64> {
    let comm = SparseMatrix::commutator(b.matrix_by_index(a), b.matrix_by_index(c));
    let mut d = vec![0; b.matrix_dim()];
    for &(r, col, v) in comm.entries() {
        assert_eq!(r, col, "bracket of opposite root vectors is diagonal");
        d[r] = v;
    }
    d
}

fn eigenvalue(b: &ChevalleyBasis, diag: &[i64], i: usize) -> i64 {
    let &(p, q, _) = &b.matrix_by_index(i).entries()[0];
    diag[p] - diag[q]
}

/// The bracket computed from the structure constants and the Cartan action.
pub fn bracket(b: &ChevalleyBasis, x: &Elem, y: &Elem) -> Elem {
    let dim = b.matrix_dim();
    let roots = b.system().roots();
    let mut out = Elem::cartan(vec![0; dim]);
    for (&a, &ca) in &x.roots {
        for (&c, &cc) in &y.roots {
            if let Some(s) = b.sum_index(a, c) {
                out.add_root(s, ca * cc * b.structure_constant(a, c));
            } else if roots[a].add(&roots[c]).is_zero() {
                out.add_diag(&coroot_diag(b, a, c), ca * cc);
            }
        }
    }
    for (&c, &cc) in &y.roots {
        out.add_root(c, cc * eigenvalue(b, &x.diag, c));
    }
    for (&a, &ca) in &x.roots {
        out.add_root(a, -ca * eigenvalue(b, &y.diag, a));
    }
    out
}

/// The basis: every root vector followed by the simple coroots.
pub fn lie_basis(b: &ChevalleyBasis) -> Vec<Elem> {
    let sys = b.system();
    let dim = b.matrix_dim();
    let mut out: Vec<Elem> = (0..sys.roots().len()).map(|i| Elem::root(dim, i)).collect();
    for s in sys.simple_roots() {
        let a = sys.index_of(s).unwrap();
        let c = sys.index_of(&s.neg()).unwrap();
        out.push(Elem::cartan(coroot_diag(b, a, c)));
    }
    out
}

/// Number of basis triples `x <= y <= z` violating the Jacobi identity.
pub fn jacobi_failures(b: &ChevalleyBasis) -> (usize, usize) {
    let basis = lie_basis(b);
    let n = basis.len();
    let mut fails = 0;
    let mut total = 0;
    for i in 0..n {
        for j in i..n {
            let ij = bracket(b, &basis[i], &basis[j]);
            for k in j..n {
                let jk = bracket(b, &basis[j], &basis[k]);
                let ki = bracket(b, &basis[k], &basis[i]);
                let sum = bracket(b, &basis[i], &jk)
                    .plus(&bracket(b, &basis[j], &ki))
                    .plus(&bracket(b, &basis[k], &ij));
                total += 1;
                if !sum.is_zero() {
                    fails += 1;
                }
            }
        }
    }
    (fails, total)
}

/// Number of root pairs where `|N_{a,b}|` differs from `r + 1`, or is nonzero when `a + b` is not a root.
pub fn string_failures(b: &ChevalleyBasis) -> (usize, usize) {
    let sys = b.system();
    let roots = sys.roots();
    let mut fails = 0;
    let mut total = 0;
    for (a, alpha) in roots.iter().enumerate() {
        for (c, beta) in roots.iter().enumerate() {
            let n = b.structure_constant(a, c);
            total += 1;
            if sys.contains(&alpha.add(beta)) {
                let mut r = 0;
                let mut cur = beta.sub(alpha);
                while sys.contains(&cur) {
                    r += 1;
                    cur = cur.sub(alpha);
                }
                if n.abs() != r + 1 {
                    fails += 1;
                }
            } else if n != 0 {
                fails += 1;
            }
        }
    }
    (fails, total)
}

/// Inputs of every valid rank in `ranks` for the type.
pub fn inputs(t: LieType, ranks: std::ops::RangeInclusive<usize>) -> Vec<PartitionInput> {
    ranks
        .filter(|&n| n >= t.min_rank())
        .flat_map(|n| enumerate_inputs(t, n).unwrap())
        .collect()
}

/// Graded systems of the odd diagrams of types B, C and D up to `max_rank`.
pub fn odd_bcd(max_rank: usize) -> Vec<(PartitionInput, GradedSystem)> {
    let mut out = Vec::new();
    for t in [LieType::B, LieType::C, LieType::D] {
        for input in inputs(t, 1..=max_rank) {
            let d = diagram_from_input(&input).unwrap();
            if d.is_odd() {
                out.push((input, GradedSystem::new(d).unwrap()));
            }
        }
    }
    out
}

/// A random integer lambda with values in `-bound..=bound` on `Phi_{d,2}`.
pub fn random_lambda<R: Rng>(gs: &GradedSystem, bound: i128, rng: &mut R) -> LambdaAssignment {
    let v: Vec<i128> = gs
        .phi2_indices()
        .iter()
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    gs.lambda_from_vector(CoefficientRing::Integers, &v)
        .unwrap()
}

/// A root of the given coordinates.
pub fn root(c: &[i8]) -> Root {
    Root(c.to_vec())
}
