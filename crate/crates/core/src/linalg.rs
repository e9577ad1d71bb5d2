// SPDX-License-Identifier: Apache-2.0

//! Exact determinants over the integers, GF(2) and GF(2^k).

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Fraction-free Bareiss elimination with big integers.
pub fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Bareiss elimination in `i128`; `None` if an intermediate value overflows.
pub fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            let mik = m[i][k];
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = mik.checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    let d = m[n - 1][n - 1];
    Some(if negate { -d } else { d })
}

/// Exact integer determinant, trying `i128` before big integers.
pub fn det_integer(m: &[Vec<i128>]) -> BigInt {
    match det_i128(m.to_vec()) {
        Some(d) => BigInt::from(d),
        None => det_bigint(
            m.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

/// A square matrix over GF(2) with rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    /// The zero matrix of order `n`.
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Gf2Matrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    /// Builds a matrix from a predicate on entries.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Matrix order.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    /// Flips entry `(i, j)`.
    pub fn toggle(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    /// Adds `other` entrywise.
    pub fn xor_assign(&mut self, other: &Gf2Matrix) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for col in 0..self.n {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..self.n).find(|&r| rows[r * w + word] & bit != 0) else {
                continue;
            };
            if p != rank {
                for x in 0..w {
                    rows.swap(p * w + x, rank * w + x);
                }
            }
            for r in 0..self.n {
                if r != rank && rows[r * w + word] & bit != 0 {
                    for x in word..w {
                        let v = rows[rank * w + x];
                        rows[r * w + x] ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant: true when the matrix is invertible.
    pub fn det(&self) -> bool {
        self.rank() == self.n
    }

    /// Dimension of the kernel.
    pub fn kernel_dim(&self) -> usize {
        self.n - self.rank()
    }
}

/// The finite field GF(2^k) as polynomials modulo a fixed irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2k {
    k: u32,
    modulus: u128,
}

fn poly_deg(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u128, m: u128) -> u128 {
    let dm = poly_deg(m);
    while a != 0 && poly_deg(a) >= dm {
        a ^= m << (poly_deg(a) - dm);
    }
    a
}

fn poly_mulmod(a: u128, b: u128, m: u128) -> u128 {
    let mut a = poly_mod(a, m);
    let mut b = poly_mod(b, m);
    let mut r = 0u128;
    let dm = poly_deg(m);
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if poly_deg(a) >= dm {
            a ^= m;
        }
    }
    r
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a polynomial of degree `k >= 1`.
pub fn is_irreducible(f: u128) -> bool {
    let k = poly_deg(f);
    if k < 1 {
        return false;
    }
    let mut x_pow = 2u128;
    for _ in 1..=k / 2 {
        x_pow = poly_mulmod(x_pow, x_pow, f);
        if poly_gcd(f, x_pow ^ 2) != 1 {
            return false;
        }
    }
    true
}

impl Gf2k {
    /// GF(2^k) modulo the numerically smallest irreducible of degree `k`.
    ///
    /// Returns `None` unless `2 <= k <= 64`.
    pub fn new(k: u32) -> Option<Self> {
        if !(2..=64).contains(&k) {
            return None;
        }
        let top = 1u128 << k;
        let modulus = (1..top)
            .step_by(2)
            .map(|low| top | low)
            .find(|&f| is_irreducible(f))?;
        Some(Gf2k { k, modulus })
    }

    /// The field exponent.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// The defining polynomial, with bit `i` the coefficient of `x^i`.
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// Largest element plus one, as `u128`.
    pub fn size(&self) -> u128 {
        1u128 << self.k
    }

    /// Field product.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        poly_mulmod(a as u128, b as u128, self.modulus) as u64
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        let mut result = 1u64;
        let mut base = a;
        let mut e: u128 = (1u128 << self.k) - 2;
        while e != 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, m: &[Vec<u64>]) -> u64 {
        let n = m.len();
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let mut det = 1u64;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| a[r][col] != 0) else {
                return 0;
            };
            a.swap(p, col);
            let pivot = a[col][col];
            det = self.mul(det, pivot);
            let pinv = self.inv(pivot);
            for r in col + 1..n {
                if a[r][col] == 0 {
                    continue;
                }
                let f = self.mul(a[r][col], pinv);
                let (top, bottom) = a.split_at_mut(r);
                for (x, &p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x ^= self.mul(f, p);
                }
            }
        }
        det
    }
}
