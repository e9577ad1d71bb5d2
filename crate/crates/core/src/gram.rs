// SPDX-License-Identifier: Apache-2.0

//! Gram matrices of the alternating forms `sigma_lambda(x, y) = lambda([x, y])`.
//!
//! A [`GradedSystem`] fixes a diagram together with its Chevalley basis and
//! the ordered sets `Phi_{d,1}` and `Phi_{d,2}`. A [`LambdaAssignment`]
//! assigns ring elements to roots of `Phi_{d,2}`; the Gram matrix has entry
//! `N_{a,b} lambda(a + b)` at `(a, b)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chevalley::ChevalleyBasis;
use crate::diagrams::WeightedDiagram;
use crate::error::{Error, Result};
use crate::linalg::{det_integer, Gf2Matrix, Gf2k};
use crate::root_system::{LieType, Root, RootSystem};

/// The coefficient ring of a lambda assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Gf2,
    /// GF(2^k) with `2 <= k <= 64`.
    Gf2k(u32),
}

impl CoefficientRing {
    /// Checks the field exponent of `Gf2k`.
    pub fn validate(self) -> Result<Self> {
        match self {
            CoefficientRing::Gf2k(k) if !(2..=64).contains(&k) => Err(Error::InvalidInput(
                format!("GF(2^k) needs 2 <= k <= 64, got {k}"),
            )),
            _ => Ok(self),
        }
    }

    /// Maps an integer into the ring.
    ///
    /// For `Gf2k` the integer must already be the bit pattern of an element.
    pub fn reduce(self, v: i128) -> Result<i128> {
        match self {
            CoefficientRing::Integers => Ok(v),
            CoefficientRing::Gf2 => Ok(v.rem_euclid(2)),
            CoefficientRing::Gf2k(k) => {
                if v < 0 || (v as u128) >> k != 0 {
                    Err(Error::InvalidInput(format!(
                        "{v} is not an element of GF(2^{k})"
                    )))
                } else {
                    Ok(v)
                }
            }
        }
    }

    /// The ring element `c * x` for an integer `c`.
    pub fn scale(self, c: i64, x: i128) -> Result<i128> {
        match self {
            CoefficientRing::Integers => (c as i128)
                .checked_mul(x)
                .ok_or(Error::Overflow("integer scaling")),
            _ => Ok(if c.rem_euclid(2) == 1 { x } else { 0 }),
        }
    }

    /// The product `x * y`.
    pub fn mul(self, x: i128, y: i128) -> Result<i128> {
        match self {
            CoefficientRing::Integers => x.checked_mul(y).ok_or(Error::Overflow("integer product")),
            CoefficientRing::Gf2 => Ok(x & y & 1),
            CoefficientRing::Gf2k(k) => Ok(gf2k_field(k).mul(x as u64, y as u64) as i128),
        }
    }

    /// The sum `x + y`.
    pub fn add(self, x: i128, y: i128) -> Result<i128> {
        match self {
            CoefficientRing::Integers => x.checked_add(y).ok_or(Error::Overflow("integer sum")),
            _ => Ok(x ^ y),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::Gf2 => f.write_str("GF2"),
            CoefficientRing::Gf2k(k) => write!(f, "GF2^{k}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let ring = match lower.as_str() {
            "z" | "integers" => CoefficientRing::Integers,
            "gf2" => CoefficientRing::Gf2,
            other => {
                let k = other
                    .strip_prefix("gf2k:")
                    .or_else(|| other.strip_prefix("gf2^"))
                    .ok_or_else(|| Error::Parse(format!("unknown ring {s:?}")))?;
                let k: u32 = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad field exponent in {s:?}")))?;
                CoefficientRing::Gf2k(k)
            }
        };
        ring.validate()
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoefficientRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A map from roots of `Phi_{d,2}` to ring elements; absent roots carry zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaAssignment {
    pub ring: CoefficientRing,
    values: BTreeMap<Root, i128>,
    pub provenance: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct LambdaEntry {
    root: Root,
    value: i128,
}

#[derive(Serialize, Deserialize)]
struct LambdaJson {
    ring: CoefficientRing,
    values: Vec<LambdaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
}

impl LambdaAssignment {
    /// The zero assignment.
    pub fn zero(ring: CoefficientRing) -> Self {
        LambdaAssignment {
            ring,
            values: BTreeMap::new(),
            provenance: None,
        }
    }

    /// Builds an assignment, reducing values into the ring and dropping zeros.
    pub fn from_values(
        ring: CoefficientRing,
        values: impl IntoIterator<Item = (Root, i128)>,
    ) -> Result<Self> {
        let mut lam = Self::zero(ring.validate()?);
        for (r, v) in values {
            lam.set(r, v)?;
        }
        Ok(lam)
    }

    /// The value 1 on every root of `roots`.
    pub fn indicator(roots: impl IntoIterator<Item = Root>) -> Self {
        let mut lam = Self::zero(CoefficientRing::Integers);
        for r in roots {
            lam.values.insert(r, 1);
        }
        lam
    }

    /// Attaches a provenance label.
    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    /// Value at a root.
    pub fn get(&self, r: &Root) -> i128 {
        self.values.get(r).copied().unwrap_or(0)
    }

    /// Sets the value at a root.
    pub fn set(&mut self, r: Root, v: i128) -> Result<()> {
        let v = self.ring.reduce(v)?;
        if v == 0 {
            self.values.remove(&r);
        } else {
            self.values.insert(r, v);
        }
        Ok(())
    }

    /// Nonzero values in root order.
    pub fn values(&self) -> &BTreeMap<Root, i128> {
        &self.values
    }

    /// Roots with a nonzero value.
    pub fn support(&self) -> impl Iterator<Item = &Root> {
        self.values.keys()
    }

    /// True when every value is zero.
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Reduces an integer assignment modulo 2.
    pub fn to_gf2(&self) -> Self {
        LambdaAssignment {
            ring: CoefficientRing::Gf2,
            values: self
                .values
                .iter()
                .filter(|(_, v)| v.rem_euclid(2) == 1)
                .map(|(r, _)| (r.clone(), 1))
                .collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Multiplies every value by an integer.
    pub fn scaled(&self, c: i128) -> Result<Self> {
        let mut out = Self::zero(self.ring);
        for (r, v) in &self.values {
            out.set(
                r.clone(),
                v.checked_mul(c).ok_or(Error::Overflow("scaling"))?,
            )?;
        }
        Ok(out)
    }

    /// Translates every root by padding its coordinates with zeros.
    pub fn padded(&self, front: usize, back: usize) -> Self {
        LambdaAssignment {
            ring: self.ring,
            values: self
                .values
                .iter()
                .map(|(r, &v)| (r.pad(front, back), v))
                .collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// JSON text of the assignment.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Parses the JSON format produced by [`LambdaAssignment::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for LambdaAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LambdaJson {
            ring: self.ring,
            values: self
                .values
                .iter()
                .map(|(r, &v)| LambdaEntry {
                    root: r.clone(),
                    value: v,
                })
                .collect(),
            provenance: self.provenance.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaAssignment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LambdaJson::deserialize(d)?;
        let mut lam =
            LambdaAssignment::from_values(j.ring, j.values.into_iter().map(|e| (e.root, e.value)))
                .map_err(serde::de::Error::custom)?;
        lam.provenance = j.provenance;
        Ok(lam)
    }
}

type BasisCache = Mutex<HashMap<(LieType, usize), Arc<ChevalleyBasis>>>;

static BASES: OnceLock<BasisCache> = OnceLock::new();

/// A shared Chevalley basis for `(t, n)`, built once per process.
pub fn basis_for(t: LieType, n: usize) -> Arc<ChevalleyBasis> {
    let cache = BASES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("basis cache").get(&(t, n)) {
        return Arc::clone(b);
    }
    let b = Arc::new(ChevalleyBasis::realize(RootSystem::build_any_rank(t, n)));
    cache
        .lock()
        .expect("basis cache")
        .entry((t, n))
        .or_insert(b)
        .clone()
}

/// One nonzero position of the Gram pattern: `G[i][j] = coefficient * lambda(phi2[slot])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternEntry {
    pub i: usize,
    pub j: usize,
    pub coefficient: i64,
    pub slot: usize,
}

/// A diagram with its basis and graded root sets.
#[derive(Debug, Clone)]
pub struct GradedSystem {
    diagram: WeightedDiagram,
    basis: Arc<ChevalleyBasis>,
    phi1: Vec<usize>,
    phi2: Vec<usize>,
    phi2_slot: HashMap<usize, usize>,
    pattern: Vec<PatternEntry>,
}

impl GradedSystem {
    /// Builds the graded data of a diagram of positive rank.
    pub fn new(diagram: WeightedDiagram) -> Result<Self> {
        if diagram.rank == 0 {
            return Err(Error::Precondition(
                "graded system needs positive rank".into(),
            ));
        }
        let basis = basis_for(diagram.lie_type, diagram.rank);
        let roots = basis.system().roots();
        let phi1: Vec<usize> = (0..roots.len())
            .filter(|&i| diagram.weight_of(&roots[i]) == 1)
            .collect();
        let phi2: Vec<usize> = (0..roots.len())
            .filter(|&i| diagram.weight_of(&roots[i]) == 2)
            .collect();
        let phi2_slot: HashMap<usize, usize> =
            phi2.iter().enumerate().map(|(s, &r)| (r, s)).collect();
        let mut pattern = Vec::new();
        for (i, &a) in phi1.iter().enumerate() {
            for (j, &b) in phi1.iter().enumerate() {
                if let Some(c) = basis.sum_index(a, b) {
                    pattern.push(PatternEntry {
                        i,
                        j,
                        coefficient: basis.structure_constant(a, b),
                        slot: phi2_slot[&c],
                    });
                }
            }
        }
        Ok(GradedSystem {
            diagram,
            basis,
            phi1,
            phi2,
            phi2_slot,
            pattern,
        })
    }

    /// The diagram.
    pub fn diagram(&self) -> &WeightedDiagram {
        &self.diagram
    }

    /// The Chevalley basis.
    pub fn basis(&self) -> &ChevalleyBasis {
        &self.basis
    }

    /// The root system.
    pub fn system(&self) -> &RootSystem {
        self.basis.system()
    }

    /// Root at a global index.
    pub fn root(&self, idx: usize) -> &Root {
        &self.system().roots()[idx]
    }

    /// Indices of `Phi_{d,1}` in canonical order.
    pub fn phi1_indices(&self) -> &[usize] {
        &self.phi1
    }

    /// Indices of `Phi_{d,2}` in canonical order.
    pub fn phi2_indices(&self) -> &[usize] {
        &self.phi2
    }

    /// Roots of `Phi_{d,1}`.
    pub fn phi1(&self) -> Vec<Root> {
        self.phi1.iter().map(|&i| self.root(i).clone()).collect()
    }

    /// Roots of `Phi_{d,2}`.
    pub fn phi2(&self) -> Vec<Root> {
        self.phi2.iter().map(|&i| self.root(i).clone()).collect()
    }

    /// True if the root lies in `Phi_{d,2}`.
    pub fn in_phi2(&self, r: &Root) -> bool {
        self.system()
            .index_of(r)
            .is_some_and(|i| self.phi2_slot.contains_key(&i))
    }

    /// Slot of a `Phi_{d,2}` root in [`GradedSystem::phi2_indices`].
    pub fn phi2_slot(&self, r: &Root) -> Option<usize> {
        self.system()
            .index_of(r)
            .and_then(|i| self.phi2_slot.get(&i).copied())
    }

    /// Nonzero positions of the Gram matrix as functions of lambda.
    pub fn pattern(&self) -> &[PatternEntry] {
        &self.pattern
    }

    /// Rejects assignments keyed outside `Phi_{d,2}`.
    pub fn check_lambda(&self, lam: &LambdaAssignment) -> Result<()> {
        match lam.support().find(|r| !self.in_phi2(r)) {
            Some(r) => Err(Error::LambdaOutsidePhi2(r.0.clone())),
            None => Ok(()),
        }
    }

    /// Lambda values by `Phi_{d,2}` slot.
    pub fn lambda_vector(&self, lam: &LambdaAssignment) -> Result<Vec<i128>> {
        self.check_lambda(lam)?;
        Ok(self.phi2.iter().map(|&i| lam.get(self.root(i))).collect())
    }

    /// The assignment with the given values by slot.
    pub fn lambda_from_vector(
        &self,
        ring: CoefficientRing,
        v: &[i128],
    ) -> Result<LambdaAssignment> {
        LambdaAssignment::from_values(
            ring,
            self.phi2
                .iter()
                .zip(v)
                .map(|(&i, &x)| (self.root(i).clone(), x)),
        )
    }

    /// Gram matrix over GF(2) for lambda values given as a bit mask over slots.
    pub fn gram_gf2_mask(&self, mask: u64) -> Gf2Matrix {
        let mut g = Gf2Matrix::zeros(self.phi1.len());
        for e in &self.pattern {
            if e.coefficient % 2 != 0 && mask >> e.slot & 1 == 1 {
                g.set(e.i, e.j, true);
            }
        }
        g
    }

    /// The GF(2) matrix contributed by a single slot.
    pub fn slot_matrix_gf2(&self, slot: usize) -> Gf2Matrix {
        let mut g = Gf2Matrix::zeros(self.phi1.len());
        for e in self
            .pattern
            .iter()
            .filter(|e| e.slot == slot && e.coefficient % 2 != 0)
        {
            g.set(e.i, e.j, true);
        }
        g
    }
}

/// The Gram matrix with its row order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    pub ring: CoefficientRing,
    pub order: Vec<Root>,
    pub entries: Vec<Vec<i128>>,
}

impl GramMatrix {
    /// Matrix order.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// True for the empty matrix.
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Checks the alternating shape: zero diagonal and `G^t = -G` (symmetric in characteristic 2).
    pub fn is_alternating(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            self.entries[i][i] == 0
                && (0..n).all(|j| match self.ring {
                    CoefficientRing::Integers => self.entries[j][i] == -self.entries[i][j],
                    _ => self.entries[j][i] == self.entries[i][j],
                })
        })
    }
}

/// Builds the Gram matrix of `lam` on the diagram.
pub fn build_gram(gs: &GradedSystem, lam: &LambdaAssignment) -> Result<GramMatrix> {
    let v = gs.lambda_vector(lam)?;
    build_gram_from_vector(gs, lam.ring, &v)
}

/// Builds the Gram matrix from lambda values by slot.
pub fn build_gram_from_vector(
    gs: &GradedSystem,
    ring: CoefficientRing,
    v: &[i128],
) -> Result<GramMatrix> {
    let m = gs.phi1.len();
    let mut entries = vec![vec![0i128; m]; m];
    for e in &gs.pattern {
        entries[e.i][e.j] = ring.scale(e.coefficient, v[e.slot])?;
    }
    Ok(GramMatrix {
        ring,
        order: gs.phi1(),
        entries,
    })
}

/// A determinant value in its ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElement {
    Integer(BigInt),
    Gf2(bool),
    Gf2k { k: u32, value: u64 },
}

impl RingElement {
    /// True for zero.
    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Integer(x) => x.is_zero(),
            RingElement::Gf2(b) => !b,
            RingElement::Gf2k { value, .. } => *value == 0,
        }
    }

    /// True for a unit of the ring: `+1` or `-1` over the integers, nonzero over a field.
    pub fn is_unit(&self) -> bool {
        match self {
            RingElement::Integer(x) => x.abs().is_one(),
            _ => !self.is_zero(),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Integer(x) => write!(f, "{x}"),
            RingElement::Gf2(b) => write!(f, "{}", u8::from(*b)),
            RingElement::Gf2k { value, .. } => write!(f, "{value:#x}"),
        }
    }
}

/// Exact determinant; the empty matrix has determinant 1.
pub fn det_exact(g: &GramMatrix) -> RingElement {
    match g.ring {
        CoefficientRing::Integers => RingElement::Integer(det_integer(&g.entries)),
        CoefficientRing::Gf2 => {
            let n = g.len();
            RingElement::Gf2(Gf2Matrix::from_fn(n, |i, j| g.entries[i][j] & 1 == 1).det())
        }
        CoefficientRing::Gf2k(k) => {
            let field = gf2k_field(k);
            let m: Vec<Vec<u64>> = g
                .entries
                .iter()
                .map(|r| r.iter().map(|&x| x as u64).collect())
                .collect();
            RingElement::Gf2k {
                k,
                value: field.det(&m),
            }
        }
    }
}

/// The field GF(2^k), cached per exponent.
pub fn gf2k_field(k: u32) -> Gf2k {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Gf2k>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    *cache
        .lock()
        .expect("field cache")
        .entry(k)
        .or_insert_with(|| Gf2k::new(k).expect("validated exponent"))
}

/// Integer determinant of the Gram matrix of `lam`.
pub fn det_integer_gram(gs: &GradedSystem, lam: &LambdaAssignment) -> Result<BigInt> {
    if lam.ring != CoefficientRing::Integers {
        return Err(Error::RingMismatch {
            expected: "Z".into(),
            found: lam.ring.to_string(),
        });
    }
    match det_exact(&build_gram(gs, lam)?) {
        RingElement::Integer(x) => Ok(x),
        _ => unreachable!("integer ring"),
    }
}

/// True when the integer Gram matrix has determinant `+1` or `-1`, or is empty.
pub fn is_unimodular(gs: &GradedSystem, lam: &LambdaAssignment) -> Result<bool> {
    Ok(det_integer_gram(gs, lam)?.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{diagram_from_input, PartitionInput};

    fn graded(t: LieType, n: usize, mu: &[u32], nu: &[u32]) -> GradedSystem {
        let input = PartitionInput::new(t, n, mu.to_vec(), nu.to_vec(), None).unwrap();
        GradedSystem::new(diagram_from_input(&input).unwrap()).unwrap()
    }

    #[test]
    fn a2_gram() {
        let gs = graded(LieType::A, 2, &[2, 1], &[]);
        let lam = LambdaAssignment::indicator([Root(vec![1, 0, -1])]);
        let g = build_gram(&gs, &lam).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.entries[0][0], 0);
        assert_eq!(g.entries[0][1].abs(), 1);
        assert_eq!(g.entries[1][0], -g.entries[0][1]);
        assert!(is_unimodular(&gs, &lam).unwrap());
        assert!(!is_unimodular(&gs, &LambdaAssignment::zero(CoefficientRing::Integers)).unwrap());
    }

    #[test]
    fn c2_gram_vanishes_mod_two() {
        let gs = graded(LieType::C, 2, &[1], &[1]);
        assert_eq!(gs.diagram().weights, vec![1, 0]);
        let lam =
            LambdaAssignment::from_values(CoefficientRing::Gf2, [(Root(vec![2, 0]), 1)]).unwrap();
        let g = build_gram(&gs, &lam).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.entries.iter().flatten().all(|&x| x == 0));
        assert!(det_exact(&g).is_zero());
    }

    #[test]
    fn lambda_outside_phi2_rejected() {
        let gs = graded(LieType::A, 2, &[2, 1], &[]);
        let lam = LambdaAssignment::indicator([Root(vec![1, -1, 0])]);
        assert_eq!(
            build_gram(&gs, &lam),
            Err(Error::LambdaOutsidePhi2(vec![1, -1, 0]))
        );
    }

    #[test]
    fn determinant_examples() {
        let g = GramMatrix {
            ring: CoefficientRing::Integers,
            order: vec![],
            entries: vec![],
        };
        assert_eq!(det_exact(&g), RingElement::Integer(BigInt::one()));
        let g = GramMatrix {
            ring: CoefficientRing::Gf2,
            order: vec![Root(vec![]); 3],
            entries: vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]],
        };
        assert_eq!(det_exact(&g), RingElement::Gf2(false));
    }

    #[test]
    fn lambda_json_round_trip() {
        let lam = LambdaAssignment::from_values(
            CoefficientRing::Integers,
            [(Root(vec![1, 0, -1]), 1), (Root(vec![0, 1, -1]), -3)],
        )
        .unwrap()
        .with_provenance("test");
        let s = lam.to_json();
        assert!(s.contains("\"ring\":\"Z\""));
        assert_eq!(LambdaAssignment::from_json(&s).unwrap(), lam);
        let parsed =
            LambdaAssignment::from_json(r#"{"ring":"Z","values":[{"root":[1,0,-1],"value":1}]}"#)
                .unwrap();
        assert_eq!(parsed.get(&Root(vec![1, 0, -1])), 1);
    }

    #[test]
    fn ring_parsing() {
        assert_eq!(
            "z".parse::<CoefficientRing>().unwrap(),
            CoefficientRing::Integers
        );
        assert_eq!(
            "gf2".parse::<CoefficientRing>().unwrap(),
            CoefficientRing::Gf2
        );
        assert_eq!(
            "gf2k:32".parse::<CoefficientRing>().unwrap(),
            CoefficientRing::Gf2k(32)
        );
        assert!("gf2k:1".parse::<CoefficientRing>().is_err());
        assert!("gf2k:65".parse::<CoefficientRing>().is_err());
    }
}
