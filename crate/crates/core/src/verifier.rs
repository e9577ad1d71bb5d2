// SPDX-License-Identifier: Apache-2.0

//! Verification of both directions of the main theorem at small rank.
//!
//! Special diagrams are checked by running the explicit construction and
//! testing unimodularity; an exhaustive `{0,1}` search gives an independent
//! witness. Non-special diagrams are certified degenerate in characteristic
//! two, exhaustively over GF(2) when `|Phi_{d,2}|` is small and by
//! Schwartz-Zippel sampling over GF(2^k) otherwise.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{
    diagram_from_input, enumerate_inputs, is_special, reduce_to_odd, PartitionInput, ReductionEnd,
};
use crate::error::{Error, Result};
use crate::gram::{
    build_gram_from_vector, det_exact, is_unimodular, CoefficientRing, GradedSystem,
    LambdaAssignment,
};
use crate::lambda_construct::construct;
use crate::linalg::Gf2Matrix;
use crate::root_system::LieType;

/// Default bound on `|Phi_{d,2}|` for exhaustive enumeration.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

/// Hard upper bound on the exhaustive cap.
pub const MAX_EXHAUSTIVE_CAP: usize = 40;

fn check_cap(m: usize, cap: usize) -> Result<()> {
    if m > cap.min(MAX_EXHAUSTIVE_CAP) {
        return Err(Error::CapExceeded { m, cap });
    }
    Ok(())
}

/// True when the GF(2) Gram determinant vanishes for all `2^m` assignments.
///
/// The assignments are visited in Gray-code order so that consecutive Gram
/// matrices differ by one rank-two update; chunks run in parallel.
pub fn exhaustive_gf2(gs: &GradedSystem, cap: usize) -> Result<bool> {
    let m = gs.phi2_indices().len();
    check_cap(m, cap)?;
    let order = gs.phi1_indices().len();
    if order == 0 {
        return Ok(false);
    }
    if order % 2 == 1 {
        return Ok(true);
    }
    let slots: Vec<Gf2Matrix> = (0..m).map(|s| gs.slot_matrix_gf2(s)).collect();
    let total: u64 = 1 << m;
    let chunk_bits = m.min(10);
    let chunks = 1u64 << chunk_bits;
    let per_chunk = total / chunks;
    let found_nonzero = (0..chunks).into_par_iter().any(|c| {
        let start = c * per_chunk;
        let mut g = gs.gram_gf2_mask(start ^ (start >> 1));
        if g.det() {
            return true;
        }
        for i in start + 1..start + per_chunk {
            g.xor_assign(&slots[i.trailing_zeros() as usize]);
            if g.det() {
                return true;
            }
        }
        false
    });
    Ok(!found_nonzero)
}

/// Outcome of Schwartz-Zippel sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SzVerdict {
    /// Every sample vanished; the probability of a nonzero polynomial doing so is at most `error_bound`.
    IdenticallyZero { trials: u32, error_bound: f64 },
    /// A point where the determinant does not vanish, by `Phi_{d,2}` slot.
    NonzeroWitness { point: Vec<u64>, trial: u32 },
    /// No samples were drawn.
    Inconclusive,
}

/// A stable 64-bit FNV-1a hash, used to derive per-diagram random streams.
pub fn stable_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Evaluates the Gram determinant at `trials` uniform points of GF(2^k).
pub fn schwartz_zippel_zero(
    gs: &GradedSystem,
    k: u32,
    trials: u32,
    seed: u64,
    stream: u64,
) -> Result<SzVerdict> {
    let ring = CoefficientRing::Gf2k(k).validate()?;
    if trials == 0 {
        return Ok(SzVerdict::Inconclusive);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let m = gs.phi2_indices().len();
    let mask: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    for trial in 0..trials {
        let point: Vec<u64> = (0..m).map(|_| rng.gen::<u64>() & mask).collect();
        let v: Vec<i128> = point.iter().map(|&x| x as i128).collect();
        let g = build_gram_from_vector(gs, ring, &v)?;
        if !det_exact(&g).is_zero() {
            return Ok(SzVerdict::NonzeroWitness { point, trial });
        }
    }
    let degree = gs.phi1_indices().len() as f64;
    let error_bound = (degree / 2f64.powi(k as i32)).powi(trials as i32);
    Ok(SzVerdict::IdenticallyZero {
        trials,
        error_bound,
    })
}

/// The first `{0,1}` assignment (in binary order of slots) with integer determinant `+-1`.
pub fn search_unimodular(gs: &GradedSystem, cap: usize) -> Result<Option<LambdaAssignment>> {
    let m = gs.phi2_indices().len();
    check_cap(m, cap)?;
    let total = 1usize << m;
    let hit = (0..total).into_par_iter().find_first(|&mask| {
        if !gs.gram_gf2_mask(mask as u64).det() {
            return false;
        }
        gs.lambda_from_vector(CoefficientRing::Integers, &bits(mask, m))
            .and_then(|lam| is_unimodular(gs, &lam))
            .unwrap_or(false)
    });
    hit.map(|mask| gs.lambda_from_vector(CoefficientRing::Integers, &bits(mask, m)))
        .transpose()
}

fn bits(mask: usize, m: usize) -> Vec<i128> {
    (0..m).map(|s| (mask >> s & 1) as i128).collect()
}

/// How degeneracy in characteristic two was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegeneracyMethod {
    #[serde(rename = "exhaustive")]
    Exhaustive,
    #[serde(rename = "schwartz_zippel")]
    SchwartzZippel,
    #[serde(rename = "n/a")]
    NotApplicable,
}

/// Settings of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub exhaustive_cap: usize,
    pub sz_field_exponent: u32,
    pub sz_trials: u32,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            sz_field_exponent: 32,
            sz_trials: 32,
            seed: 0,
        }
    }
}

/// The verification record of one input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: PartitionInput,
    pub weights: Vec<u8>,
    pub odd: bool,
    pub special: bool,
    pub phi1: usize,
    pub phi2: usize,
    pub construction_unimodular: Option<bool>,
    pub construction_provenance: Option<String>,
    pub degeneracy_method: DegeneracyMethod,
    pub degenerate_always: Option<bool>,
    pub error_bound: Option<f64>,
    pub trials: u64,
    pub note: Option<String>,
    /// Wall-clock time; left out of serialized output when `None`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
    pub passed: bool,
}

/// Verifies one input.
pub fn verify_input(input: &PartitionInput, cfg: &VerifyConfig) -> Result<Verdict> {
    let start = Instant::now();
    let d = diagram_from_input(input)?;
    let special = is_special(input)?;
    let odd = d.is_odd();
    let note = if odd || d.is_zero() {
        None
    } else {
        let red = reduce_to_odd(d.lie_type, &d.divisors)?;
        Some(match red.end {
            ReductionEnd::Odd(s) => format!("reduces to the odd diagram of divisors {:?}", s.0),
            ReductionEnd::Zero => "reduces to the zero diagram".to_string(),
        })
    };
    let weights = d.weights.clone();
    let gs = GradedSystem::new(d)?;
    let (phi1, phi2) = (gs.phi1_indices().len(), gs.phi2_indices().len());
    let mut v = Verdict {
        id: input.clone(),
        weights,
        odd,
        special,
        phi1,
        phi2,
        construction_unimodular: None,
        construction_provenance: None,
        degeneracy_method: DegeneracyMethod::NotApplicable,
        degenerate_always: None,
        error_bound: None,
        trials: 0,
        note,
        runtime_ms: None,
        passed: false,
    };
    if special {
        let (ok, prov) = match construct(&gs) {
            Ok(lam) => (is_unimodular(&gs, &lam)?, lam.provenance.clone()),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        v.construction_unimodular = Some(ok);
        v.construction_provenance = prov;
        v.passed = ok;
    } else if phi2 <= cfg.exhaustive_cap.min(MAX_EXHAUSTIVE_CAP) {
        let zero = exhaustive_gf2(&gs, cfg.exhaustive_cap)?;
        v.degeneracy_method = DegeneracyMethod::Exhaustive;
        v.degenerate_always = Some(zero);
        v.trials = 1u64 << phi2;
        v.passed = zero;
    } else {
        let stream = stable_hash(&input.to_string());
        let sz = schwartz_zippel_zero(&gs, cfg.sz_field_exponent, cfg.sz_trials, cfg.seed, stream)?;
        v.degeneracy_method = DegeneracyMethod::SchwartzZippel;
        v.trials = cfg.sz_trials as u64;
        match sz {
            SzVerdict::IdenticallyZero { error_bound, .. } => {
                v.degenerate_always = Some(true);
                v.error_bound = Some(error_bound);
                v.passed = true;
            }
            SzVerdict::NonzeroWitness { .. } => {
                v.degenerate_always = Some(false);
            }
            SzVerdict::Inconclusive => {}
        }
    }
    v.runtime_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    Ok(v)
}

/// Verifies every input of a type and rank, in enumeration order.
pub fn verify_theorem(t: LieType, rank: usize, cfg: &VerifyConfig) -> Result<Vec<Verdict>> {
    let inputs = enumerate_inputs(t, rank)?;
    inputs.par_iter().map(|i| verify_input(i, cfg)).collect()
}
