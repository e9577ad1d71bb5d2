// SPDX-License-Identifier: Apache-2.0

//! Weighted Dynkin diagrams from partition data.
//!
//! A [`PartitionInput`] (a partition for type A, a bipartition for types
//! B, C and D) determines a multiset of elementary divisors. The divisors
//! give the sequence `xi`, whose first entries form the dominant coweight
//! `h`; the weights of the diagram are the values of `h` on the simple
//! roots. This module also implements oddness, the reduction of a diagram
//! to an odd one, the odd sequences of odd diagrams and the two
//! specialness tests.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{LieType, Root};

/// The two diagrams attached to a very even partition of type D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plus,
    Minus,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plus => "plus",
            Variant::Minus => "minus",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Variant::Plus),
            "minus" | "-" => Ok(Variant::Minus),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Partition data describing one nilpotent orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionInput {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub rank: usize,
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub variant: Option<Variant>,
}

impl PartitionInput {
    /// Sorts `mu` and `nu` into decreasing order and validates the result.
    pub fn new(
        lie_type: LieType,
        rank: usize,
        mut mu: Vec<u32>,
        mut nu: Vec<u32>,
        variant: Option<Variant>,
    ) -> Result<Self> {
        mu.sort_unstable_by(|a, b| b.cmp(a));
        nu.sort_unstable_by(|a, b| b.cmp(a));
        let input = PartitionInput {
            lie_type,
            rank,
            mu,
            nu,
            variant,
        };
        input.validate()?;
        Ok(input)
    }

    /// True when type D data is very even: `nu` empty and every part of `mu` even.
    pub fn is_very_even(&self) -> bool {
        self.lie_type == LieType::D
            && self.nu.is_empty()
            && !self.mu.is_empty()
            && self.mu.iter().all(|m| m % 2 == 0)
    }

    /// Checks every invariant, naming the first one that fails.
    pub fn validate(&self) -> Result<()> {
        let t = self.lie_type;
        let n = self.rank;
        t.check_rank(n)?;
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if self.mu.iter().chain(&self.nu).any(|&p| p == 0) {
            return bad("parts must be positive".into());
        }
        if self.mu.windows(2).any(|w| w[0] < w[1]) {
            return bad("mu must be weakly decreasing".into());
        }
        if self.nu.windows(2).any(|w| w[0] <= w[1]) {
            return bad("nu must have distinct parts in decreasing order".into());
        }
        let mu_sum: usize = self.mu.iter().map(|&m| m as usize).sum();
        let nu_sum: usize = self.nu.iter().map(|&m| m as usize).sum();
        match t {
            LieType::A => {
                if !self.nu.is_empty() {
                    return bad("type A takes no nu".into());
                }
                if mu_sum != n + 1 {
                    return bad(format!(
                        "|mu| = {mu_sum} but type A rank {n} needs {}",
                        n + 1
                    ));
                }
            }
            LieType::C => {
                if mu_sum + nu_sum != n {
                    return bad(format!("|mu| + |nu| = {} but rank is {n}", mu_sum + nu_sum));
                }
            }
            LieType::B | LieType::D => {
                if self.nu.iter().any(|v| v % 2 == 0) {
                    return bad("nu must have odd parts".into());
                }
                let total = t.divisor_total(n);
                if 2 * mu_sum + nu_sum != total {
                    return bad(format!(
                        "2|mu| + |nu| = {} but needs {total}",
                        2 * mu_sum + nu_sum
                    ));
                }
            }
        }
        match (self.is_very_even(), self.variant) {
            (true, None) => bad("very even type D input needs a variant".into()),
            (false, Some(_)) => bad("a variant is only allowed for very even type D input".into()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PartitionInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{}{} mu=({}) nu=({})",
            self.lie_type,
            self.rank,
            join(&self.mu),
            join(&self.nu)
        )?;
        if let Some(v) = self.variant {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// Elementary divisors in weakly increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorSequence(pub Vec<u32>);

impl DivisorSequence {
    /// Sorts the given divisors.
    pub fn new(mut divisors: Vec<u32>) -> Self {
        divisors.sort_unstable();
        DivisorSequence(divisors)
    }

    /// Divisors as a slice.
    pub fn divisors(&self) -> &[u32] {
        &self.0
    }

    /// Sum of the divisors.
    pub fn total(&self) -> usize {
        self.0.iter().map(|&m| m as usize).sum()
    }

    /// Rank of the system of type `t` whose natural module has this dimension.
    pub fn rank_for(&self, t: LieType) -> Result<usize> {
        let s = self.total();
        match t {
            LieType::A if s >= 1 => Ok(s - 1),
            LieType::B if s % 2 == 1 => Ok(s / 2),
            LieType::C | LieType::D if s.is_multiple_of(2) => Ok(s / 2),
            _ => Err(Error::InvalidInput(format!(
                "divisor sum {s} does not fit type {t}"
            ))),
        }
    }

    /// True when every divisor is even.
    pub fn all_even(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|m| m % 2 == 0)
    }
}

/// The elementary divisors of a valid input.
pub fn divisors_from_input(input: &PartitionInput) -> Result<DivisorSequence> {
    input.validate()?;
    let doubled = input.mu.iter().flat_map(|&m| [m, m]);
    let v: Vec<u32> = match input.lie_type {
        LieType::A => input.mu.clone(),
        LieType::C => doubled.chain(input.nu.iter().map(|&x| 2 * x)).collect(),
        LieType::B | LieType::D => doubled.chain(input.nu.iter().copied()).collect(),
    };
    Ok(DivisorSequence::new(v))
}

/// The sequence `xi`: all `m-1, m-3, ..., 1-m` over the divisors, in decreasing order.
pub fn xi_sequence(seq: &DivisorSequence) -> Vec<i64> {
    let mut xi: Vec<i64> = seq
        .0
        .iter()
        .flat_map(|&m| (0..m as i64).map(move |k| m as i64 - 1 - 2 * k))
        .collect();
    xi.sort_unstable_by(|a, b| b.cmp(a));
    xi
}

/// A weighted Dynkin diagram together with the coweight defining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedDiagram {
    pub lie_type: LieType,
    pub rank: usize,
    pub weights: Vec<u8>,
    pub h: Vec<i64>,
    pub divisors: DivisorSequence,
    pub variant: Option<Variant>,
    pub source: Option<PartitionInput>,
}

impl WeightedDiagram {
    /// The diagram of a divisor sequence, with `variant` choosing the sign of `h_n` in type D.
    pub fn from_divisors(
        t: LieType,
        seq: &DivisorSequence,
        variant: Option<Variant>,
    ) -> Result<Self> {
        let n = seq.rank_for(t)?;
        let xi = xi_sequence(seq);
        let mut h: Vec<i64> = match t {
            LieType::A => xi,
            _ => xi[..n].to_vec(),
        };
        if t == LieType::D && variant == Some(Variant::Minus) && n >= 1 {
            h[n - 1] = -h[n - 1];
        }
        let mut w: Vec<i64> = (0..n.saturating_sub(1)).map(|i| h[i] - h[i + 1]).collect();
        if n >= 1 {
            match t {
                LieType::A => w.push(h[n - 1] - h[n]),
                LieType::B => w.push(h[n - 1]),
                LieType::C => w.push(2 * h[n - 1]),
                LieType::D => {
                    if n >= 2 {
                        w.push(h[n - 2] + h[n - 1]);
                    } else {
                        w.clear();
                    }
                }
            }
        }
        if let Some(bad) = w.iter().find(|&&x| !(0..=2).contains(&x)) {
            return Err(Error::Internal(format!(
                "weight {bad} outside {{0,1,2}} for divisors {:?}",
                seq.0
            )));
        }
        Ok(WeightedDiagram {
            lie_type: t,
            rank: n,
            weights: w.into_iter().map(|x| x as u8).collect(),
            h,
            divisors: seq.clone(),
            variant,
            source: None,
        })
    }

    /// The weight `d(beta) = <beta, h>` of a root.
    pub fn weight_of(&self, beta: &Root) -> i64 {
        beta.pair(&self.h)
    }

    /// True when the maximal simple weight is 1.
    pub fn is_odd(&self) -> bool {
        is_odd(self)
    }

    /// True when every simple weight is 0.
    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// For type D, the first case has weight 1 on the last two nodes.
    pub fn d_subcase(&self) -> Option<DSubcase> {
        if self.lie_type != LieType::D || self.rank < 2 {
            return None;
        }
        Some(if self.weights[self.rank - 1] == 1 {
            DSubcase::Case1
        } else {
            DSubcase::Case2
        })
    }
}

/// The diagram of a valid input.
pub fn diagram_from_input(input: &PartitionInput) -> Result<WeightedDiagram> {
    let seq = divisors_from_input(input)?;
    let mut d = WeightedDiagram::from_divisors(input.lie_type, &seq, input.variant)?;
    d.source = Some(input.clone());
    Ok(d)
}

/// True when the maximal simple weight equals 1.
pub fn is_odd(d: &WeightedDiagram) -> bool {
    d.weights.iter().copied().max() == Some(1)
}

/// One step of the reduction towards an odd diagram.
///
/// Replaces every copy of the largest divisor `r` by `r - 2 floor((r - s)/2)`
/// where `s` is the largest smaller divisor. Returns `None` when no smaller
/// divisor exists, which means the reduction reaches the zero diagram.
pub fn reduce_step(t: LieType, seq: &DivisorSequence) -> Result<Option<DivisorSequence>> {
    let d = WeightedDiagram::from_divisors(t, seq, None)?;
    if !d.weights.contains(&2) {
        return Err(Error::Precondition(format!(
            "divisors {:?} give a diagram without weight 2",
            seq.0
        )));
    }
    let r = *seq.0.iter().max().expect("nonzero diagram has divisors");
    let Some(s) = seq.0.iter().copied().filter(|&m| m < r).max() else {
        return Ok(None);
    };
    let t_new = r - 2 * ((r - s) / 2);
    Ok(Some(DivisorSequence::new(
        seq.0
            .iter()
            .map(|&m| if m == r { t_new } else { m })
            .collect(),
    )))
}

/// Where [`reduce_to_odd`] ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "divisors")]
pub enum ReductionEnd {
    /// The reduction stopped at an odd diagram.
    Odd(DivisorSequence),
    /// The reduction reached a diagram with all weights zero.
    Zero,
}

/// The chain of sequences visited by [`reduce_to_odd`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub steps: Vec<DivisorSequence>,
    pub end: ReductionEnd,
}

/// Iterates [`reduce_step`] until the diagram is odd or zero.
pub fn reduce_to_odd(t: LieType, seq: &DivisorSequence) -> Result<Reduction> {
    let mut steps = vec![seq.clone()];
    let mut cur = seq.clone();
    loop {
        let d = WeightedDiagram::from_divisors(t, &cur, None)?;
        if d.is_zero() {
            return Ok(Reduction {
                steps,
                end: ReductionEnd::Zero,
            });
        }
        if d.is_odd() {
            return Ok(Reduction {
                steps,
                end: ReductionEnd::Odd(cur),
            });
        }
        match reduce_step(t, &cur)? {
            Some(next) => {
                steps.push(next.clone());
                cur = next;
            }
            None => {
                return Ok(Reduction {
                    steps,
                    end: ReductionEnd::Zero,
                })
            }
        }
    }
}

/// The specialness condition evaluated on elementary divisors.
///
/// For type C the odd divisors are the marked ones, for B and D the even
/// ones. Between two consecutive marked divisors an even number of unmarked
/// divisors must occur. After the last marked divisor the count of unmarked
/// divisors must be odd for type B and even for types C and D.
pub fn spade_special(t: LieType, seq: &DivisorSequence) -> bool {
    let marked = |m: u32| match t {
        LieType::A => true,
        LieType::C => m % 2 == 1,
        LieType::B | LieType::D => m.is_multiple_of(2),
    };
    if t == LieType::A {
        return true;
    }
    let ds = &seq.0;
    let pos: Vec<usize> = (0..ds.len()).filter(|&i| marked(ds[i])).collect();
    let unmarked_between =
        |a: usize, b: usize| ds[a + 1..b].iter().filter(|&&m| !marked(m)).count();
    if pos
        .windows(2)
        .any(|w| unmarked_between(w[0], w[1]) % 2 == 1)
    {
        return false;
    }
    let Some(&last) = pos.last() else {
        return true;
    };
    let after = unmarked_between(last, ds.len());
    match t {
        LieType::B => after % 2 == 1,
        _ => after % 2 == 0,
    }
}

/// Specialness of a valid input.
///
/// For odd diagrams of types B, C and D the divisor test is cross-checked
/// against the gap-parity test on the odd sequence; a disagreement is an
/// internal error.
pub fn is_special(input: &PartitionInput) -> Result<bool> {
    let seq = divisors_from_input(input)?;
    let spade = spade_special(input.lie_type, &seq);
    if input.lie_type != LieType::A {
        let d = diagram_from_input(input)?;
        if d.is_odd() {
            let gap = gap_special(&d, &odd_sequence(&d)?);
            if gap != spade {
                return Err(Error::Internal(format!(
                    "specialness tests disagree on {input}: divisors {spade}, gaps {gap}"
                )));
            }
        }
    }
    Ok(spade)
}

/// The two cases of odd type D diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DSubcase {
    /// Weight 1 on both of the last two nodes.
    Case1,
    /// Weight 0 on both of the last two nodes.
    Case2,
}

/// The weight-1 nodes of an odd diagram and their gaps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddSequence {
    /// 1-based positions `i_1 < ... < i_k` of weight-1 nodes.
    ///
    /// For type D only nodes `1..=n-2` are listed.
    pub indices: Vec<usize>,
    /// `s_1 = i_1` and `s_l = i_l - i_{l-1}`.
    pub gaps: Vec<usize>,
    /// The case of a type D diagram.
    pub d_subcase: Option<DSubcase>,
    /// True for the type D family with divisors `(1,1,2,...,2)`.
    pub excluded_d_family: bool,
}

impl OddSequence {
    /// Number `k` of weight-1 nodes listed.
    pub fn k(&self) -> usize {
        self.indices.len()
    }

    /// `i_l` for `0 <= l <= k`, with `i_0 = 0`.
    pub fn i(&self, l: usize) -> usize {
        if l == 0 {
            0
        } else {
            self.indices[l - 1]
        }
    }

    /// `s_l` for `1 <= l <= k`, and `0` for `l = 0`.
    pub fn s(&self, l: usize) -> usize {
        if l == 0 {
            0
        } else {
            self.gaps[l - 1]
        }
    }

    /// For type A the symmetric sequence `0, i_1, ..., i_k, n+1`.
    pub fn symmetric_sequence(&self, n: usize) -> Vec<usize> {
        let mut v = vec![0];
        v.extend(&self.indices);
        v.push(n + 1);
        v
    }
}

fn is_excluded_d(d: &WeightedDiagram) -> bool {
    let ds = &d.divisors.0;
    d.lie_type == LieType::D
        && ds.len() >= 4
        && ds[0] == 1
        && ds[1] == 1
        && ds[2..].iter().all(|&m| m == 2)
}

/// The odd sequence of an odd diagram, validated against the conditions of its type.
pub fn odd_sequence(d: &WeightedDiagram) -> Result<OddSequence> {
    if !d.is_odd() {
        return Err(Error::Precondition(
            "odd_sequence needs an odd diagram".into(),
        ));
    }
    let n = d.rank;
    let limit = if d.lie_type == LieType::D { n - 2 } else { n };
    let indices: Vec<usize> = (1..=limit).filter(|&i| d.weights[i - 1] == 1).collect();
    let gaps: Vec<usize> = indices
        .iter()
        .enumerate()
        .map(|(l, &i)| if l == 0 { i } else { i - indices[l - 1] })
        .collect();
    let seq = OddSequence {
        indices,
        gaps,
        d_subcase: d.d_subcase(),
        excluded_d_family: is_excluded_d(d),
    };
    let violations = odd_sequence_violations(d.lie_type, n, &seq);
    if !violations.is_empty() {
        return Err(Error::Internal(format!(
            "odd sequence {:?} violates {}",
            seq.indices,
            violations.join(", ")
        )));
    }
    Ok(seq)
}

fn odd_sequence_violations(t: LieType, n: usize, seq: &OddSequence) -> Vec<&'static str> {
    let k = seq.k();
    let s = |l: usize| seq.s(l);
    let mut errs = Vec::new();
    match (t, seq.d_subcase) {
        (LieType::A, _) => {
            if seq
                .indices
                .iter()
                .any(|&i| !seq.indices.contains(&(n + 1 - i)))
            {
                errs.push("symmetry");
            }
        }
        (LieType::B | LieType::C, _) => {
            if (1..k.saturating_sub(1)).any(|l| s(l) > s(l + 2)) {
                errs.push("monotonicity");
            }
            let par = if t == LieType::C { (k + 1) % 2 } else { k % 2 };
            if (1..=k).any(|l| l % 2 == par && s(l) % 2 == 1) {
                errs.push("parity");
            }
            let extra = usize::from(t == LieType::B);
            if k >= 2 && s(k - 1) > 2 * (n - seq.i(k)) + extra {
                errs.push("tail bound");
            }
        }
        (LieType::D, Some(DSubcase::Case1)) => {
            let ext = |l: usize| if l == k + 1 { n - 1 - seq.i(k) } else { s(l) };
            if k >= 1 && seq.i(k) + 3 > n {
                errs.push("last index");
            }
            if (1..k).any(|l| ext(l) > ext(l + 2)) {
                errs.push("monotonicity");
            }
            if (1..=k + 1).any(|l| l % 2 == (k + 1) % 2 && ext(l) % 2 == 1) {
                errs.push("parity");
            }
            if (1..=k).any(|l| l % 2 == k % 2 && s(l) > 2) {
                errs.push("gap bound");
            }
        }
        (LieType::D, _) => {
            if k >= 1 && seq.i(k) + 2 > n {
                errs.push("last index");
            }
            if (1..k.saturating_sub(1)).any(|l| s(l) > s(l + 2)) {
                errs.push("monotonicity");
            }
            if (1..=k).any(|l| l % 2 == k % 2 && s(l) % 2 == 1) {
                errs.push("parity");
            }
            if k >= 2 && s(k - 1) > 2 * (n - seq.i(k)) {
                errs.push("tail bound");
            }
        }
    }
    errs
}

/// Specialness read off the gaps of the odd sequence.
///
/// The gap sequence is extended by `s_0 = 0` and a final value `s_{k+1}`
/// depending on the type. A maximal run `s_u = ... = s_v` over indices of
/// a fixed parity with `v` inside the constrained range must have
/// `s_{v+1} - s_{u-1}` even.
pub fn gap_special(d: &WeightedDiagram, seq: &OddSequence) -> bool {
    let n = d.rank;
    let k = seq.k();
    let t = d.lie_type;
    if t == LieType::A {
        return true;
    }
    if k == 0 {
        return t != LieType::B;
    }
    let last = match (t, seq.d_subcase) {
        (LieType::B, _) => 2 * (n - seq.i(k)) + 1,
        (LieType::D, Some(DSubcase::Case1)) => n - 1 - seq.i(k),
        _ => 2 * (n - seq.i(k)),
    };
    let s = |l: usize| -> Option<usize> {
        if l <= k {
            Some(seq.s(l))
        } else if l == k + 1 {
            Some(last)
        } else {
            None
        }
    };
    let (lo, hi, par) = match (t, seq.d_subcase) {
        (LieType::B, _) => {
            if k % 2 == 1 || seq.s(1).is_multiple_of(2) {
                return false;
            }
            (2, k.saturating_sub(2), 0)
        }
        (LieType::D, Some(DSubcase::Case2)) => {
            if seq.s(1) % 2 == 1 {
                return false;
            }
            (1, k, k % 2)
        }
        _ => {
            if seq.s(1) % 2 == 1 {
                return false;
            }
            (1, k, (k + 1) % 2)
        }
    };
    let ls: Vec<usize> = (lo..hi + 3)
        .filter(|&l| l % 2 == par && s(l).is_some())
        .collect();
    let mut i = 0;
    while i < ls.len() {
        let mut j = i;
        while j + 1 < ls.len() && s(ls[j + 1]) == s(ls[i]) {
            j += 1;
        }
        let (u, v) = (ls[i], ls[j]);
        if v <= hi {
            let after = s(v + 1).unwrap_or(0);
            let before = s(u - 1).unwrap_or(0);
            if (after + before) % 2 == 1 {
                return false;
            }
        }
        i = j + 1;
    }
    true
}

/// Roots of the given weight, in canonical root order.
pub fn phi_d(d: &WeightedDiagram, system: &crate::root_system::RootSystem, i: i64) -> Vec<Root> {
    system
        .roots()
        .iter()
        .filter(|r| d.weight_of(r) == i)
        .cloned()
        .collect()
}

/// Partitions of `total` into parts at most `max_part`, in decreasing lexicographic order.
pub fn partitions(total: u32, max_part: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in (1..=total.min(max_part)).rev() {
        for mut rest in partitions(total - p, p) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `total` into distinct parts below `bound`, optionally odd only.
pub fn distinct_partitions(total: u32, bound: u32, odd_only: bool) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in (1..=total.min(bound.saturating_sub(1))).rev() {
        if odd_only && p % 2 == 0 {
            continue;
        }
        for mut rest in distinct_partitions(total - p, p, odd_only) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// All valid inputs of the given type and rank.
///
/// Very even type D data appears twice, once per variant.
pub fn enumerate_inputs(t: LieType, n: usize) -> Result<Vec<PartitionInput>> {
    t.check_rank(n)?;
    let mut out = Vec::new();
    let total = t.divisor_total(n) as u32;
    if t == LieType::A {
        for mu in partitions(total, total) {
            out.push(PartitionInput {
                lie_type: t,
                rank: n,
                mu,
                nu: vec![],
                variant: None,
            });
        }
        return Ok(out);
    }
    let nu_max = if t == LieType::C { n as u32 } else { total };
    for nu_sum in 0..=nu_max {
        let (mu_sum, nus) = if t == LieType::C {
            (
                n as u32 - nu_sum,
                distinct_partitions(nu_sum, nu_sum + 1, false),
            )
        } else {
            if (total - nu_sum) % 2 == 1 {
                continue;
            }
            (
                (total - nu_sum) / 2,
                distinct_partitions(nu_sum, nu_sum + 1, true),
            )
        };
        for nu in &nus {
            for mu in partitions(mu_sum, mu_sum) {
                let base = PartitionInput {
                    lie_type: t,
                    rank: n,
                    mu,
                    nu: nu.clone(),
                    variant: None,
                };
                if base.is_very_even() {
                    for v in [Variant::Plus, Variant::Minus] {
                        out.push(PartitionInput {
                            variant: Some(v),
                            ..base.clone()
                        });
                    }
                } else {
                    out.push(base);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(t: LieType, n: usize, mu: &[u32], nu: &[u32]) -> PartitionInput {
        PartitionInput::new(t, n, mu.to_vec(), nu.to_vec(), None).unwrap()
    }

    #[test]
    fn divisor_examples() {
        let c = divisors_from_input(&input(LieType::C, 3, &[2, 1], &[])).unwrap();
        assert_eq!(c.0, vec![1, 1, 2, 2]);
        let b = divisors_from_input(&input(LieType::B, 2, &[1], &[3])).unwrap();
        assert_eq!(b.0, vec![1, 1, 3]);
        let a = divisors_from_input(&input(LieType::A, 2, &[2, 1], &[])).unwrap();
        assert_eq!(a.0, vec![1, 2]);
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(PartitionInput::new(LieType::A, 2, vec![2, 2], vec![], None).is_err());
        assert!(PartitionInput::new(LieType::B, 2, vec![1], vec![2, 1], None).is_err());
        assert!(PartitionInput::new(LieType::C, 3, vec![1], vec![1, 1], None).is_err());
        assert!(PartitionInput::new(LieType::D, 4, vec![2, 2], vec![], None).is_err());
        assert!(
            PartitionInput::new(LieType::D, 4, vec![3, 1], vec![], Some(Variant::Plus)).is_err()
        );
    }

    #[test]
    fn xi_examples() {
        assert_eq!(
            xi_sequence(&DivisorSequence::new(vec![2, 1])),
            vec![1, 0, -1]
        );
        assert_eq!(
            xi_sequence(&DivisorSequence::new(vec![1, 1, 1])),
            vec![0, 0, 0]
        );
        assert_eq!(
            xi_sequence(&DivisorSequence::new(vec![1, 1, 2, 2])),
            vec![1, 1, 0, 0, -1, -1]
        );
    }

    #[test]
    fn diagram_examples() {
        let d = diagram_from_input(&input(LieType::A, 2, &[2, 1], &[])).unwrap();
        assert_eq!(d.weights, vec![1, 1]);
        let d = diagram_from_input(&input(LieType::A, 2, &[1, 1, 1], &[])).unwrap();
        assert_eq!(d.weights, vec![0, 0]);
        let d = diagram_from_input(&input(LieType::C, 2, &[1], &[1])).unwrap();
        assert_eq!(d.divisors.0, vec![1, 1, 2]);
        assert_eq!(d.weights, vec![1, 0]);
        let d = diagram_from_input(&input(LieType::A, 3, &[2, 1, 1], &[])).unwrap();
        assert_eq!(d.weights, vec![1, 0, 1]);
    }

    #[test]
    fn oddness_examples() {
        let mk = |w: Vec<u8>| WeightedDiagram {
            lie_type: LieType::A,
            rank: w.len(),
            h: vec![],
            weights: w,
            divisors: DivisorSequence(vec![]),
            variant: None,
            source: None,
        };
        assert!(is_odd(&mk(vec![1, 1])));
        assert!(!is_odd(&mk(vec![0, 0])));
        assert!(!is_odd(&mk(vec![2, 1, 0])));
    }

    #[test]
    fn reduce_examples() {
        let step = |t, v: Vec<u32>| reduce_step(t, &DivisorSequence::new(v)).unwrap().unwrap().0;
        assert_eq!(step(LieType::C, vec![1, 1, 4, 4]), vec![1, 1, 2, 2]);
        assert_eq!(step(LieType::A, vec![1, 3]), vec![1, 1]);
        assert_eq!(step(LieType::B, vec![2, 2, 5]), vec![2, 2, 3]);

        let r = reduce_to_odd(LieType::C, &DivisorSequence::new(vec![1, 1, 2, 2])).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(
            r.end,
            ReductionEnd::Odd(DivisorSequence::new(vec![1, 1, 2, 2]))
        );
        let r = reduce_to_odd(LieType::A, &DivisorSequence::new(vec![1, 5])).unwrap();
        assert!(r.steps.len() - 1 <= 2);
        let r = reduce_to_odd(LieType::A, &DivisorSequence::new(vec![3, 3])).unwrap();
        assert_eq!(r.end, ReductionEnd::Zero);
    }

    #[test]
    fn reduce_step_precondition() {
        assert!(reduce_step(LieType::C, &DivisorSequence::new(vec![1, 1, 2, 2])).is_err());
    }

    #[test]
    fn special_examples() {
        assert!(is_special(&input(LieType::A, 4, &[3, 2], &[])).unwrap());
        assert!(is_special(&input(LieType::C, 3, &[2, 1], &[])).unwrap());
        assert!(!spade_special(
            LieType::C,
            &DivisorSequence::new(vec![1, 1, 2])
        ));
    }

    #[test]
    fn odd_sequence_examples() {
        let d = diagram_from_input(&input(LieType::A, 2, &[2, 1], &[])).unwrap();
        let s = odd_sequence(&d).unwrap();
        assert_eq!(s.symmetric_sequence(2), vec![0, 1, 2, 3]);

        let d = diagram_from_input(&input(LieType::C, 4, &[2, 1, 1], &[])).unwrap();
        assert_eq!(d.divisors.0, vec![1, 1, 1, 1, 2, 2]);
        let s = odd_sequence(&d).unwrap();
        assert_eq!(s.indices, vec![2]);
        assert_eq!(s.gaps, vec![2]);
    }

    #[test]
    fn phi_d_examples() {
        let d = diagram_from_input(&input(LieType::A, 2, &[2, 1], &[])).unwrap();
        let rs = crate::root_system::RootSystem::build(LieType::A, 2).unwrap();
        assert_eq!(
            phi_d(&d, &rs, 1),
            vec![Root(vec![1, -1, 0]), Root(vec![0, 1, -1])]
        );
        assert_eq!(phi_d(&d, &rs, 2), vec![Root(vec![1, 0, -1])]);
        assert!(phi_d(&d, &rs, 7).is_empty());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_inputs(LieType::A, 2).unwrap().len(), 3);
        let b2 = enumerate_inputs(LieType::B, 2).unwrap();
        assert_eq!(b2.len(), 4);
        let d4 = enumerate_inputs(LieType::D, 4).unwrap();
        assert_eq!(d4.iter().filter(|x| x.variant.is_some()).count(), 4);
        let d3 = enumerate_inputs(LieType::D, 3).unwrap();
        assert!(d3.iter().all(|x| x.variant.is_none()));
    }
}
