// SPDX-License-Identifier: Apache-2.0

//! Explicit unimodular choices of lambda for special diagrams.
//!
//! Each construction puts `lambda = 1` on an explicit set of roots of
//! `Phi_{d,2}` and `0` elsewhere. Type A uses the orbits of the right and
//! left transformations on `Phi_{d,1}`. Types B, C and D use windows of
//! roots `e_s - e_t` between consecutive weight-one nodes together with a
//! tail of roots `e_s +- e_t` near the end of the diagram. A non-odd
//! diagram is handled through its reduction to an odd diagram.
//!
//! Type A roots are often written in range notation: the pair `(a, b)`
//! stands for `e_a - e_{b+1}`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::diagrams::{
    diagram_from_input, odd_sequence, reduce_to_odd, spade_special, DSubcase, DivisorSequence,
    OddSequence, PartitionInput, ReductionEnd, Variant, WeightedDiagram,
};
use crate::error::{Error, Result};
use crate::faithful::{levels, pq_partition_levels};
use crate::gram::{is_unimodular, GradedSystem, LambdaAssignment};
use crate::root_system::{LieType, Root};
use crate::verifier::{search_unimodular, DEFAULT_EXHAUSTIVE_CAP};

/// Provenance label of the type A construction.
pub const PROVENANCE_A: &str = "type A orbit construction";
/// Provenance label of the type B construction.
pub const PROVENANCE_B: &str = "type B construction";
/// Provenance label of the type C construction.
pub const PROVENANCE_C: &str = "type C construction";
/// Provenance label of the first type D case.
pub const PROVENANCE_D1: &str = "type D first case construction";
/// Provenance label of the second type D case.
pub const PROVENANCE_D2: &str = "type D second case construction";
/// Provenance label of the exhaustive search fallback.
pub const PROVENANCE_SEARCH: &str = "exhaustive {0,1} search";
/// Provenance label for diagrams with `Phi_{d,1}` empty.
pub const PROVENANCE_EMPTY: &str = "empty Phi_(d,1)";

type Pair = (usize, usize);

fn range_root(len: usize, (a, b): Pair) -> Root {
    Root::minus(len, a, b + 1)
}

fn root_range(r: &Root) -> Option<Pair> {
    r.as_minus_pair().map(|(s, t)| (s, t - 1))
}

/// The three kinds of type A orbit classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitKind {
    /// The right orbit and its mirror coincide.
    Omega0,
    /// Disjoint mirror, odd orbit length.
    Omega1,
    /// Disjoint mirror, even orbit length.
    Omega2,
}

/// One class of the partition of `Phi_{d,1}` in type A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub seed: Root,
    pub kind: OrbitKind,
    pub r_orbit: Vec<Root>,
    pub l_orbit: Vec<Root>,
    pub link_root: Option<Root>,
}

struct TypeAData {
    n: usize,
    xmap: BTreeMap<Pair, Pair>,
}

impl TypeAData {
    fn new(d: &WeightedDiagram) -> Result<Self> {
        if d.lie_type != LieType::A || !d.is_odd() {
            return Err(Error::Precondition("needs an odd type A diagram".into()));
        }
        let n = d.rank;
        let j = odd_sequence(d)?.symmetric_sequence(n);
        let mut xmap = BTreeMap::new();
        // `j` is 0-based here; the sequence j_1, ..., j_{2r} sits at j[0..2r].
        let jj = |k: usize| j[k - 1];
        let r2 = j.len();
        for k in 2..r2.saturating_sub(1) {
            for a in jj(k - 1) + 1..=jj(k) {
                if a + jj(k + 2) > jj(k) + jj(k + 1) {
                    for b in jj(k).max(1)..jj(k + 1) {
                        xmap.insert((a, b), (b + 1, jj(k) + jj(k + 1) - a));
                    }
                }
            }
        }
        Ok(TypeAData { n, xmap })
    }

    fn tau(&self, (a, b): Pair) -> Pair {
        (self.n + 1 - b, self.n + 1 - a)
    }
}

/// The right transformation of a root of `X`.
pub fn right_transform(d: &WeightedDiagram, root: &Root) -> Result<Root> {
    let data = TypeAData::new(d)?;
    let p = root_range(root).ok_or_else(|| Error::NotARoot(root.0.clone()))?;
    let image = data.xmap.get(&p).ok_or_else(|| {
        Error::Precondition(format!(
            "{root} is not in the domain of the right transformation"
        ))
    })?;
    Ok(range_root(d.rank + 1, *image))
}

/// The left transformation of a root of `Y`, the mirror image of the right one.
pub fn left_transform(d: &WeightedDiagram, root: &Root) -> Result<Root> {
    let data = TypeAData::new(d)?;
    let p = root_range(root).ok_or_else(|| Error::NotARoot(root.0.clone()))?;
    let image = data.xmap.get(&data.tau(p)).ok_or_else(|| {
        Error::Precondition(format!(
            "{root} is not in the domain of the left transformation"
        ))
    })?;
    Ok(range_root(d.rank + 1, data.tau(*image)))
}

/// Partitions `Phi_{d,1}` of an odd type A diagram into orbit classes.
pub fn classify_orbits(gs: &GradedSystem) -> Result<Vec<OrbitClass>> {
    let d = gs.diagram();
    let data = TypeAData::new(d)?;
    let len = d.rank + 1;
    let phi1: BTreeSet<Pair> = gs.phi1().iter().filter_map(root_range).collect();
    let x: BTreeSet<Pair> = data.xmap.keys().copied().collect();
    let y: BTreeSet<Pair> = x.iter().map(|&p| data.tau(p)).collect();
    if x.union(&y).copied().collect::<BTreeSet<_>>() != phi1 {
        return Err(Error::Internal(
            "X and its mirror do not cover Phi_(d,1)".into(),
        ));
    }
    let mut seen: HashSet<BTreeSet<Pair>> = HashSet::new();
    let mut classes = Vec::new();
    let mut covered: BTreeSet<Pair> = BTreeSet::new();
    for &seed in x.difference(&y) {
        let mut orb = vec![seed];
        while let Some(&next) = data.xmap.get(orb.last().expect("nonempty")) {
            orb.push(next);
        }
        let tor: Vec<Pair> = orb.iter().map(|&p| data.tau(p)).collect();
        let class: BTreeSet<Pair> = orb.iter().chain(&tor).copied().collect();
        if !seen.insert(class.clone()) {
            continue;
        }
        let orb_set: BTreeSet<Pair> = orb.iter().copied().collect();
        let tor_set: BTreeSet<Pair> = tor.iter().copied().collect();
        let kind = if orb_set == tor_set {
            OrbitKind::Omega0
        } else if orb_set.is_disjoint(&tor_set) {
            if orb.len() % 2 == 1 {
                OrbitKind::Omega1
            } else {
                OrbitKind::Omega2
            }
        } else {
            return Err(Error::Internal("orbit meets its mirror partially".into()));
        };
        let link_root = if kind == OrbitKind::Omega1 {
            let last = range_root(len, *orb.last().expect("nonempty"));
            let cands: Vec<usize> = (0..tor.len())
                .filter(|&s| gs.in_phi2(&last.add(&range_root(len, tor[s]))))
                .collect();
            match cands.as_slice() {
                [s] if s % 2 == 0 => Some(last.add(&range_root(len, tor[*s]))),
                _ => {
                    return Err(Error::Internal(format!(
                        "link root candidates {cands:?} are not a single even index"
                    )))
                }
            }
        } else {
            None
        };
        covered.extend(class);
        classes.push(OrbitClass {
            seed: range_root(len, seed),
            kind,
            r_orbit: orb.iter().map(|&p| range_root(len, p)).collect(),
            l_orbit: tor.iter().map(|&p| range_root(len, p)).collect(),
            link_root,
        });
    }
    if covered != phi1 {
        return Err(Error::Internal(
            "orbit classes do not cover Phi_(d,1)".into(),
        ));
    }
    Ok(classes)
}

/// The type A construction on an odd diagram.
pub fn construct_type_a(gs: &GradedSystem) -> Result<LambdaAssignment> {
    let classes = classify_orbits(gs)?;
    let mut support = BTreeSet::new();
    for c in &classes {
        let chains: Vec<&Vec<Root>> = if c.kind == OrbitKind::Omega0 {
            vec![&c.r_orbit]
        } else {
            vec![&c.r_orbit, &c.l_orbit]
        };
        for chain in chains {
            for w in chain.windows(2) {
                support.insert(w[0].add(&w[1]));
            }
        }
        if let Some(r) = &c.link_root {
            support.insert(r.clone());
        }
    }
    finish(gs, support, PROVENANCE_A)
}

fn finish(
    gs: &GradedSystem,
    support: BTreeSet<Root>,
    provenance: &str,
) -> Result<LambdaAssignment> {
    if let Some(bad) = support.iter().find(|r| !gs.in_phi2(r)) {
        return Err(Error::Internal(format!(
            "constructed root {bad} is not in Phi_(d,2)"
        )));
    }
    Ok(LambdaAssignment::indicator(support).with_provenance(provenance))
}

struct Ctx<'a> {
    gs: &'a GradedSystem,
    n: usize,
    seq: OddSequence,
}

impl<'a> Ctx<'a> {
    fn new(gs: &'a GradedSystem, t: LieType) -> Result<Self> {
        let d = gs.diagram();
        if d.lie_type != t || !d.is_odd() {
            return Err(Error::Precondition(format!(
                "needs an odd type {t} diagram"
            )));
        }
        if !spade_special(t, &d.divisors) {
            return Err(Error::NotSpecial);
        }
        Ok(Ctx {
            gs,
            n: d.rank,
            seq: odd_sequence(d)?,
        })
    }

    fn i(&self, l: usize) -> usize {
        self.seq.i(l)
    }

    fn k(&self) -> usize {
        self.seq.k()
    }

    fn root(&self, terms: &[(usize, i8)]) -> Root {
        Root::from_terms(self.n, terms)
    }

    fn window_sets(&self, upto: usize, out: &mut BTreeSet<Root>) {
        for l in 1..=upto {
            let span = self.i(l + 1) - self.i(l - 1);
            for s in self.i(l - 1) + 1..=self.i(l) {
                let t = s + span;
                if t > self.i(l + 1) && t <= self.n {
                    let r = self.root(&[(s, 1), (t, -1)]);
                    if self.gs.in_phi2(&r) {
                        out.insert(r);
                    }
                }
            }
        }
    }

    fn pairs(&self, lo: usize, hi: usize, out: &mut BTreeSet<Root>) {
        let mut j = lo;
        while j < hi {
            out.insert(self.root(&[(j, 1), (j + 1, 1)]));
            j += 2;
        }
    }

    fn sv(&self, l: usize) -> usize {
        self.seq.s(l)
    }

    fn runs(&self, lo: usize) -> Vec<Pair> {
        let k = self.k();
        let ev: Vec<usize> = (lo..k - 1).step_by(2).collect();
        let key = |u: usize| if u == 0 { None } else { Some(self.sv(u)) };
        let mut out = Vec::new();
        let mut i = 0;
        while i < ev.len() {
            let mut j = i;
            while j + 1 < ev.len() && key(ev[j + 1]) == key(ev[i]) {
                j += 1;
            }
            out.push((ev[i], ev[j]));
            i = j + 1;
        }
        out
    }

    fn tail(&self, omega: &BTreeSet<usize>, out: &mut BTreeSet<Root>) {
        let ik = self.i(self.k());
        for (q, &j) in omega.iter().enumerate() {
            let q = q + 1;
            let sign = if q % 2 == 0 { 1 } else { -1 };
            out.insert(self.root(&[(j, 1), (ik + q.div_ceil(2), sign)]));
        }
    }

    fn omega_from_runs(&self, lo: usize, omega: &mut BTreeSet<usize>) {
        let base = self.i(self.k() - 2);
        let sv = |l: isize| if l <= 0 { 0 } else { self.sv(l as usize) };
        for (u, v) in self.runs(lo) {
            let from = base + sv(u as isize - 1) + 1;
            let to = base + sv(v as isize + 1);
            omega.extend(from..=to);
        }
    }
}

/// The type C construction on a special odd diagram.
pub fn construct_type_c(gs: &GradedSystem) -> Result<LambdaAssignment> {
    let c = Ctx::new(gs, LieType::C)?;
    let k = c.k();
    let mut x = BTreeSet::new();
    if k == 1 {
        c.pairs(1, c.i(1), &mut x);
    } else {
        c.window_sets(k - 2, &mut x);
        c.pairs(c.i(k - 1) + 1, c.i(k), &mut x);
        for s in c.i(k - 2) + 1..=c.i(k - 1) {
            let off = s - c.i(k - 2);
            let sign = if off % 2 == 0 { 1 } else { -1 };
            x.insert(c.root(&[(s, 1), (c.i(k) + off.div_ceil(2), sign)]));
        }
    }
    finish(gs, x, PROVENANCE_C)
}

/// The type B construction on a special odd diagram.
pub fn construct_type_b(gs: &GradedSystem) -> Result<LambdaAssignment> {
    let c = Ctx::new(gs, LieType::B)?;
    let k = c.k();
    if k < 2 {
        return Err(Error::Internal(
            "special odd type B diagram with k < 2".into(),
        ));
    }
    let mut x = BTreeSet::new();
    c.window_sets(k - 2, &mut x);
    c.pairs(c.i(k - 1) + 1, c.i(k), &mut x);
    let base = c.i(k - 2);
    let mut omega: BTreeSet<usize> = (base + 2..=base + c.sv(1)).collect();
    c.omega_from_runs(2, &mut omega);
    c.tail(&omega, &mut x);
    x.insert(c.root(&[(base + 1, 1)]));
    finish(gs, x, PROVENANCE_B)
}

/// The type D construction on a special odd diagram, either case.
pub fn construct_type_d(gs: &GradedSystem) -> Result<LambdaAssignment> {
    let c = Ctx::new(gs, LieType::D)?;
    let k = c.k();
    let n = c.n;
    let mut x = BTreeSet::new();
    if c.seq.d_subcase == Some(DSubcase::Case1) {
        if k >= 1 {
            c.window_sets(k - 1, &mut x);
        }
        let span = if k >= 1 && c.sv(k) == 2 {
            let a = c.i(k - 1) + 1;
            let b = c.i(k);
            x.insert(c.root(&[(a, 1), (n, -1)]));
            x.insert(c.root(&[(b, 1), (n, 1)]));
            let lv = levels(gs.diagram(), &c.seq).truncated(k);
            let part = pq_partition_levels(gs, &lv, k - 1)?;
            let qk = part.q_sets.last().expect("at least one Q set");
            qk.iter()
                .map(|&r| gs.root(r).support().last().expect("nonzero root").0)
                .min()
                .map_or(n - 1 - c.i(k), |j| j - c.i(k) - 1)
        } else {
            n - 1 - c.i(k)
        };
        c.pairs(c.i(k) + 1, c.i(k) + span, &mut x);
        return finish(gs, x, PROVENANCE_D1);
    }
    if k == 1 {
        c.pairs(1, c.i(1), &mut x);
        return finish(gs, x, PROVENANCE_D2);
    }
    c.window_sets(k - 2, &mut x);
    c.pairs(c.i(k - 1) + 1, c.i(k), &mut x);
    let mut omega = BTreeSet::new();
    c.omega_from_runs(if k % 2 == 0 { 0 } else { 1 }, &mut omega);
    c.tail(&omega, &mut x);
    finish(gs, x, PROVENANCE_D2)
}

/// The construction for an odd special diagram of any type.
pub fn construct_odd(gs: &GradedSystem) -> Result<LambdaAssignment> {
    match gs.diagram().lie_type {
        LieType::A => construct_type_a(gs),
        LieType::B => construct_type_b(gs),
        LieType::C => construct_type_c(gs),
        LieType::D => construct_type_d(gs),
    }
}

/// The unverified construction for a special diagram of any shape.
///
/// Non-odd diagrams are reduced to an odd diagram of smaller rank. The
/// construction there is transported back by padding coordinates: `K`
/// leading coordinates (and for type A also `K` trailing ones), where `K`
/// is the rank difference (half of it for type A).
pub fn construct_raw(gs: &GradedSystem) -> Result<LambdaAssignment> {
    let d = gs.diagram();
    if !spade_special(d.lie_type, &d.divisors) {
        return Err(Error::NotSpecial);
    }
    if gs.phi1_indices().is_empty() {
        return Ok(LambdaAssignment::indicator([]).with_provenance(PROVENANCE_EMPTY));
    }
    if d.is_odd() {
        return construct_odd(gs);
    }
    let red = reduce_to_odd(d.lie_type, &d.divisors)?;
    let seq: DivisorSequence = match red.end {
        ReductionEnd::Odd(s) => s,
        ReductionEnd::Zero => {
            return Err(Error::Internal(
                "reduction reached zero but Phi_(d,1) is nonempty".into(),
            ))
        }
    };
    let variant = if seq.all_even() {
        d.variant
    } else {
        None::<Variant>
    };
    let small = WeightedDiagram::from_divisors(d.lie_type, &seq, variant)?;
    let sub = GradedSystem::new(small.clone())?;
    let lam = construct_odd(&sub)?;
    let (front, back) = match d.lie_type {
        LieType::A => ((d.rank - small.rank) / 2, (d.rank - small.rank) / 2),
        _ => (d.rank - small.rank, 0),
    };
    let padded = lam.padded(front, back);
    gs.check_lambda(&padded)?;
    Ok(padded)
}

/// A postcondition-checked construction.
///
/// If the explicit recipe does not give a unimodular Gram matrix, an
/// exhaustive search over `{0,1}` assignments is run instead (up to the
/// default cap).
pub fn construct(gs: &GradedSystem) -> Result<LambdaAssignment> {
    let lam = construct_raw(gs)?;
    if is_unimodular(gs, &lam)? {
        return Ok(lam);
    }
    match search_unimodular(gs, DEFAULT_EXHAUSTIVE_CAP)? {
        Some(found) => Ok(found.with_provenance(PROVENANCE_SEARCH)),
        None => Err(Error::Internal(format!(
            "no unimodular lambda found for divisors {:?}",
            gs.diagram().divisors.0
        ))),
    }
}

/// Builds the diagram of an input and runs [`construct`].
pub fn construct_for_input(input: &PartitionInput) -> Result<(GradedSystem, LambdaAssignment)> {
    let gs = GradedSystem::new(diagram_from_input(input)?)?;
    let lam = construct(&gs)?;
    Ok((gs, lam))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(t: LieType, n: usize, mu: &[u32], nu: &[u32]) -> GradedSystem {
        let input = PartitionInput::new(t, n, mu.to_vec(), nu.to_vec(), None).unwrap();
        GradedSystem::new(diagram_from_input(&input).unwrap()).unwrap()
    }

    #[test]
    fn a2_construction() {
        let g = gs(LieType::A, 2, &[2, 1], &[]);
        let lam = construct_type_a(&g).unwrap();
        assert_eq!(lam.get(&Root(vec![1, 0, -1])), 1);
        assert!(is_unimodular(&g, &lam).unwrap());
        let classes = classify_orbits(&g).unwrap();
        assert_eq!(classes.len(), 1);
        let covered: usize = classes
            .iter()
            .map(|c| {
                if c.kind == OrbitKind::Omega0 {
                    c.r_orbit.len()
                } else {
                    2 * c.r_orbit.len()
                }
            })
            .sum();
        assert_eq!(covered, 2);
    }

    #[test]
    fn a3_classes_cover() {
        let g = gs(LieType::A, 3, &[2, 1, 1], &[]);
        assert_eq!(g.diagram().weights, vec![1, 0, 1]);
        let classes = classify_orbits(&g).unwrap();
        let mut all: Vec<Root> = classes
            .iter()
            .flat_map(|c| c.r_orbit.iter().chain(&c.l_orbit).cloned())
            .collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 4);
        for c in &classes {
            if c.kind == OrbitKind::Omega0 {
                assert_eq!(c.r_orbit.len() % 2, 0);
            }
        }
    }

    #[test]
    fn transforms_move_roots() {
        let g = gs(LieType::A, 3, &[2, 1, 1], &[]);
        let d = g.diagram();
        for r in g.phi1() {
            if let Ok(img) = right_transform(d, &r) {
                assert_ne!(img, r);
            }
            if let Ok(img) = left_transform(d, &r) {
                assert_ne!(img, r);
            }
        }
        assert!(right_transform(d, &Root(vec![1, 0, 0, -1])).is_err());
    }

    #[test]
    fn type_a_examples() {
        for (n, mu) in [(4usize, vec![3u32, 2]), (5, vec![2, 2, 2])] {
            let g = gs(LieType::A, n, &mu, &[]);
            let lam = construct(&g).unwrap();
            assert!(is_unimodular(&g, &lam).unwrap(), "A{n} {mu:?}");
        }
    }

    #[test]
    fn c3_example() {
        let g = gs(LieType::C, 3, &[2, 1], &[]);
        let lam = construct_type_c(&g).unwrap();
        assert_eq!(lam.get(&Root(vec![1, 1, 0])), 1);
        assert!(is_unimodular(&g, &lam).unwrap());
    }

    #[test]
    fn non_special_rejected() {
        let g = gs(LieType::C, 2, &[1], &[1]);
        assert_eq!(construct_type_c(&g), Err(Error::NotSpecial));
    }

    #[test]
    fn d4_examples() {
        let g = gs(LieType::D, 4, &[2, 1, 1], &[]);
        assert!(g.diagram().is_odd());
        let lam = construct_type_d(&g).unwrap();
        assert!(is_unimodular(&g, &lam).unwrap());
        for v in [Variant::Plus, Variant::Minus] {
            let input = PartitionInput::new(LieType::D, 4, vec![2, 2], vec![], Some(v)).unwrap();
            let (g, lam) = construct_for_input(&input).unwrap();
            assert!(is_unimodular(&g, &lam).unwrap());
        }
    }
}
