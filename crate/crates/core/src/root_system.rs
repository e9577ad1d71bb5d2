// SPDX-License-Identifier: Apache-2.0

//! Classical root systems of types A, B, C and D in epsilon coordinates.
//!
//! A root of `A_n` is a vector of length `n + 1`; roots of `B_n`, `C_n` and
//! `D_n` have length `n`. Positive roots are listed in a fixed order by
//! pattern class (`e_i - e_j`, then `e_i + e_j`, then the short or long
//! roots `e_i` / `2e_i`) and lexicographically by indices inside a class.
//! The full root list is the positive roots followed by their negatives.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four classical Lie types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
}

impl LieType {
    /// All four types in canonical order.
    pub const ALL: [LieType; 4] = [LieType::A, LieType::B, LieType::C, LieType::D];

    /// Smallest rank accepted for user-facing inputs.
    pub fn min_rank(self) -> usize {
        match self {
            LieType::A => 1,
            LieType::B | LieType::C => 2,
            LieType::D => 3,
        }
    }

    /// Length of the epsilon coordinate vectors at rank `n`.
    pub fn coord_len(self, n: usize) -> usize {
        match self {
            LieType::A => n + 1,
            _ => n,
        }
    }

    /// Checks the user-facing rank constraint.
    pub fn check_rank(self, n: usize) -> Result<()> {
        if n < self.min_rank() {
            return Err(Error::InvalidRank {
                lie_type: self,
                rank: n,
                min: self.min_rank(),
            });
        }
        Ok(())
    }

    /// Sum of the elementary divisors of a diagram of rank `n`.
    pub fn divisor_total(self, n: usize) -> usize {
        match self {
            LieType::A => n + 1,
            LieType::B => 2 * n + 1,
            LieType::C | LieType::D => 2 * n,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(LieType::A),
            "B" | "b" => Ok(LieType::B),
            "C" | "c" => Ok(LieType::C),
            "D" | "d" => Ok(LieType::D),
            other => Err(Error::Parse(format!("unknown Lie type {other:?}"))),
        }
    }
}

/// A root given by its epsilon coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i8>);

impl Root {
    /// The zero vector of the given length.
    pub fn zero(len: usize) -> Self {
        Root(vec![0; len])
    }

    /// Builds `c_1 e_{i_1} + c_2 e_{i_2} + ...` from 1-based index/coefficient pairs.
    pub fn from_terms(len: usize, terms: &[(usize, i8)]) -> Self {
        let mut v = vec![0i8; len];
        for &(i, c) in terms {
            v[i - 1] += c;
        }
        Root(v)
    }

    /// `e_i - e_j` (1-based).
    pub fn minus(len: usize, i: usize, j: usize) -> Self {
        Root::from_terms(len, &[(i, 1), (j, -1)])
    }

    /// `e_i + e_j` (1-based).
    pub fn plus(len: usize, i: usize, j: usize) -> Self {
        Root::from_terms(len, &[(i, 1), (j, 1)])
    }

    /// Coordinates as a slice.
    pub fn coords(&self) -> &[i8] {
        &self.0
    }

    /// Coordinate-wise sum.
    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinate-wise difference.
    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// The negated vector.
    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Pairing with an integer coweight.
    pub fn pair(&self, h: &[i64]) -> i64 {
        self.0.iter().zip(h).map(|(&a, &b)| a as i64 * b).sum()
    }

    /// Prepends `front` and appends `back` zero coordinates.
    pub fn pad(&self, front: usize, back: usize) -> Root {
        let mut v = vec![0i8; front];
        v.extend_from_slice(&self.0);
        v.extend(std::iter::repeat_n(0, back));
        Root(v)
    }

    /// Nonzero positions as 1-based `(index, coefficient)` pairs.
    pub fn support(&self) -> Vec<(usize, i8)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i + 1, c))
            .collect()
    }

    /// For `e_s - e_t` with `s < t` returns `(s, t)`.
    pub fn as_minus_pair(&self) -> Option<(usize, usize)> {
        match self.support().as_slice() {
            [(s, 1), (t, -1)] => Some((*s, *t)),
            _ => None,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.support() {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}e{i}")?;
            } else {
                write!(f, "{sign}{mag}e{i}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A classical root system with its simple and positive roots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    rank: usize,
    simple_roots: Vec<Root>,
    positive_roots: Vec<Root>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    /// Builds the root system, enforcing the user-facing rank constraint.
    pub fn build(lie_type: LieType, n: usize) -> Result<Self> {
        lie_type.check_rank(n)?;
        Ok(Self::build_any_rank(lie_type, n))
    }

    /// Builds the root system for any rank `n >= 1`.
    ///
    /// Reduced diagrams can live on small ranks such as `D_2` or `B_1`,
    /// which are valid root systems even though they are not simple.
    pub fn build_any_rank(lie_type: LieType, n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        let len = lie_type.coord_len(n);
        let mut simple_roots: Vec<Root> = (1..n).map(|i| Root::minus(len, i, i + 1)).collect();
        match lie_type {
            LieType::A => simple_roots.push(Root::minus(len, n, n + 1)),
            LieType::B => simple_roots.push(Root::from_terms(len, &[(n, 1)])),
            LieType::C => simple_roots.push(Root::from_terms(len, &[(n, 2)])),
            LieType::D => {
                if n >= 2 {
                    simple_roots.push(Root::plus(len, n - 1, n));
                }
            }
        }
        let m = match lie_type {
            LieType::A => n + 1,
            _ => n,
        };
        let mut positive_roots = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                positive_roots.push(Root::minus(len, i, j));
            }
        }
        if lie_type != LieType::A {
            for i in 1..=n {
                for j in i + 1..=n {
                    positive_roots.push(Root::plus(len, i, j));
                }
            }
        }
        match lie_type {
            LieType::B => {
                (1..=n).for_each(|i| positive_roots.push(Root::from_terms(len, &[(i, 1)])))
            }
            LieType::C => {
                (1..=n).for_each(|i| positive_roots.push(Root::from_terms(len, &[(i, 2)])))
            }
            _ => {}
        }
        let mut roots = positive_roots.clone();
        roots.extend(positive_roots.iter().map(Root::neg));
        let index = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        RootSystem {
            lie_type,
            rank: n,
            simple_roots,
            positive_roots,
            roots,
            index,
        }
    }

    /// The Lie type.
    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    /// The rank `n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length of coordinate vectors.
    pub fn coord_len(&self) -> usize {
        self.lie_type.coord_len(self.rank)
    }

    /// Simple roots `alpha_1, ..., alpha_n` in diagram order.
    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    /// Positive roots in canonical order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// All roots: positive roots followed by their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Position of a root in [`RootSystem::roots`].
    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// True if `r` is a root.
    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    /// Coefficients of `beta` in the basis of simple roots.
    pub fn expansion(&self, beta: &Root) -> Result<Vec<i64>> {
        if !self.contains(beta) {
            return Err(Error::NotARoot(beta.0.clone()));
        }
        Ok(simple_coefficients(self.lie_type, self.rank, beta.coords()))
    }

    /// The multiplicity `[beta : alpha_i]` for 1-based `i`.
    pub fn multiplicity(&self, beta: &Root, simple_index: usize) -> Result<i64> {
        if simple_index == 0 || simple_index > self.rank {
            return Err(Error::Precondition(format!(
                "simple root index {simple_index} outside [1, {}]",
                self.rank
            )));
        }
        Ok(self.expansion(beta)?[simple_index - 1])
    }
}

/// Simple-root coefficients of an epsilon vector that lies in the root lattice.
pub(crate) fn simple_coefficients(t: LieType, n: usize, v: &[i8]) -> Vec<i64> {
    let partial: Vec<i64> = v
        .iter()
        .scan(0i64, |acc, &x| {
            *acc += x as i64;
            Some(*acc)
        })
        .collect();
    match t {
        LieType::A | LieType::B => partial[..n].to_vec(),
        LieType::C => {
            let mut c = partial[..n - 1].to_vec();
            c.push(partial[n - 1] / 2);
            c
        }
        LieType::D => {
            if n == 1 {
                return vec![];
            }
            let mut c = partial[..n - 2].to_vec();
            let s = partial[n - 2];
            let last = v[n - 1] as i64;
            c.push((s - last) / 2);
            c.push((s + last) / 2);
            c
        }
    }
}
