// SPDX-License-Identifier: Apache-2.0

//! Implementations of the subcommands.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use wdg_core::diagrams::{
    diagram_from_input, divisors_from_input, enumerate_inputs, is_special, reduce_to_odd,
    PartitionInput, Reduction, ReductionEnd,
};
use wdg_core::gram::{build_gram, det_exact, CoefficientRing, GradedSystem, LambdaAssignment};
use wdg_core::lambda_construct::construct;
use wdg_core::root_system::{LieType, Root};
use wdg_core::verifier::{verify_theorem, DegeneracyMethod, Verdict, VerifyConfig};

use crate::args::{DiagramArgs, InputArgs, VerifyArgs};
use crate::error::CliError;
use crate::output::{join, opt, Record, Sink};

const INPUT_COLUMNS: [&str; 5] = ["type", "rank", "mu", "nu", "variant"];

fn input_cells(i: &PartitionInput) -> Vec<String> {
    vec![
        i.lie_type.to_string(),
        i.rank.to_string(),
        join(&i.mu),
        join(&i.nu),
        opt(&i.variant),
    ]
}

fn columns(extra: &[&'static str]) -> Vec<&'static str> {
    INPUT_COLUMNS.iter().chain(extra).copied().collect()
}

/// Diagram data of one input.
#[derive(Debug, Serialize)]
pub struct DiagramRecord {
    pub id: PartitionInput,
    pub weights: Vec<u8>,
    pub odd: bool,
    pub special: bool,
    pub phi1: usize,
    pub phi2: usize,
}

impl DiagramRecord {
    fn new(input: PartitionInput) -> Result<Self, CliError> {
        let d = diagram_from_input(&input)?;
        let special = is_special(&input)?;
        let (odd, weights) = (d.is_odd(), d.weights.clone());
        let (phi1, phi2) = if d.rank == 0 {
            (0, 0)
        } else {
            let gs = GradedSystem::new(d)?;
            (gs.phi1_indices().len(), gs.phi2_indices().len())
        };
        Ok(DiagramRecord {
            id: input,
            weights,
            odd,
            special,
            phi1,
            phi2,
        })
    }
}

impl Record for DiagramRecord {
    fn json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    fn csv_header() -> Vec<&'static str> {
        columns(&["weights", "odd", "special", "phi1", "phi2"])
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut row = input_cells(&self.id);
        row.extend([
            join(&self.weights),
            self.odd.to_string(),
            self.special.to_string(),
            self.phi1.to_string(),
            self.phi2.to_string(),
        ]);
        vec![row]
    }

    fn pretty(&self) -> String {
        let w: String = self.weights.iter().map(u8::to_string).collect();
        format!(
            "{:<32} weights {:<10} odd {:<5} special {:<5} |Phi1| {:>3} |Phi2| {:>3}",
            self.id.to_string(),
            w,
            self.odd,
            self.special,
            self.phi1,
            self.phi2
        )
    }
}

/// Lists every input of a type and rank.
pub fn enumerate<W: Write>(
    sink: &mut Sink<W>,
    diagram: &DiagramArgs,
    odd: bool,
    special: bool,
) -> Result<(), CliError> {
    let inputs = enumerate_inputs(diagram.lie_type, diagram.rank)?;
    let records: Vec<DiagramRecord> = inputs
        .into_par_iter()
        .map(DiagramRecord::new)
        .collect::<Result<_, _>>()?;
    for r in records
        .iter()
        .filter(|r| (!odd || r.odd) && (!special || r.special))
    {
        sink.record(r)?;
    }
    Ok(())
}

/// Gram determinant of one lambda.
#[derive(Debug, Serialize)]
pub struct GramRecord {
    pub id: PartitionInput,
    pub ring: CoefficientRing,
    pub order: usize,
    pub determinant: String,
    pub unimodular: bool,
}

impl Record for GramRecord {
    fn json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    fn csv_header() -> Vec<&'static str> {
        columns(&["ring", "order", "determinant", "unimodular"])
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut row = input_cells(&self.id);
        row.extend([
            self.ring.to_string(),
            self.order.to_string(),
            self.determinant.clone(),
            self.unimodular.to_string(),
        ]);
        vec![row]
    }

    fn pretty(&self) -> String {
        format!(
            "{}: order {} det {} over {} unimodular {}",
            self.id, self.order, self.determinant, self.ring, self.unimodular
        )
    }
}

fn graded(input: &PartitionInput) -> Result<GradedSystem, CliError> {
    Ok(GradedSystem::new(diagram_from_input(input)?)?)
}

/// Reads a lambda file holding either an assignment or a `construct` record.
pub fn read_lambda(path: &Path) -> Result<LambdaAssignment, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadInput {
        path: path.display().to_string(),
        source,
    })?;
    let mut v: Value = serde_json::from_str(&text)?;
    if let Some(inner) = v.get_mut("lambda") {
        v = inner.take();
    }
    Ok(serde_json::from_value(v)?)
}

fn convert_ring(
    lam: LambdaAssignment,
    ring: CoefficientRing,
) -> Result<LambdaAssignment, CliError> {
    if lam.ring == ring {
        return Ok(lam);
    }
    if lam.ring != CoefficientRing::Integers {
        return Err(wdg_core::Error::RingMismatch {
            expected: ring.to_string(),
            found: lam.ring.to_string(),
        }
        .into());
    }
    let values: Vec<(Root, i128)> = lam
        .values()
        .iter()
        .map(|(r, &v)| (r.clone(), v.rem_euclid(2)))
        .collect();
    Ok(LambdaAssignment::from_values(ring, values)?)
}

/// Evaluates the Gram determinant of a lambda file.
pub fn gram<W: Write>(
    sink: &mut Sink<W>,
    input: &InputArgs,
    lambda: &Path,
    ring: Option<CoefficientRing>,
) -> Result<(), CliError> {
    let id = input.to_input()?;
    let gs = graded(&id)?;
    let lam = read_lambda(lambda)?;
    let ring = ring.unwrap_or(lam.ring);
    let lam = convert_ring(lam, ring)?;
    let g = build_gram(&gs, &lam)?;
    let det = det_exact(&g);
    sink.record(&GramRecord {
        id,
        ring,
        order: g.len(),
        determinant: det.to_string(),
        unimodular: det.is_unit(),
    })
}

/// A constructed lambda with its determinant.
#[derive(Debug, Serialize)]
pub struct ConstructRecord {
    pub id: PartitionInput,
    pub provenance: Option<String>,
    pub determinant: String,
    pub lambda: LambdaAssignment,
}

impl Record for ConstructRecord {
    fn json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    fn csv_header() -> Vec<&'static str> {
        columns(&["provenance", "determinant", "root", "value"])
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.lambda
            .values()
            .iter()
            .map(|(r, v)| {
                let mut row = input_cells(&self.id);
                row.extend([
                    opt(&self.provenance),
                    self.determinant.clone(),
                    join(&r.0),
                    v.to_string(),
                ]);
                row
            })
            .collect()
    }

    fn pretty(&self) -> String {
        let mut s = format!(
            "{}: det {} ({})",
            self.id,
            self.determinant,
            opt(&self.provenance)
        );
        for (r, v) in self.lambda.values() {
            s.push_str(&format!("\n  lambda({r}) = {v}"));
        }
        s
    }
}

/// Builds a unimodular lambda for a special input.
pub fn construct_cmd<W: Write>(sink: &mut Sink<W>, input: &InputArgs) -> Result<(), CliError> {
    let id = input.to_input()?;
    if !is_special(&id)? {
        return Err(wdg_core::Error::NotSpecial.into());
    }
    let gs = graded(&id)?;
    let lam = construct(&gs)?;
    let det = det_exact(&build_gram(&gs, &lam)?);
    sink.record(&ConstructRecord {
        id,
        provenance: lam.provenance.clone(),
        determinant: det.to_string(),
        lambda: lam,
    })
}

/// The reduction chain of one input.
#[derive(Debug, Serialize)]
pub struct ReduceRecord {
    pub id: PartitionInput,
    pub special: bool,
    #[serde(flatten)]
    pub reduction: Reduction,
}

impl Record for ReduceRecord {
    fn json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    fn csv_header() -> Vec<&'static str> {
        columns(&["special", "step", "divisors"])
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.reduction
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut row = input_cells(&self.id);
                row.extend([self.special.to_string(), i.to_string(), join(&s.0)]);
                row
            })
            .collect()
    }

    fn pretty(&self) -> String {
        let chain: Vec<String> = self
            .reduction
            .steps
            .iter()
            .map(|s| format!("({})", join(&s.0)))
            .collect();
        let end = match &self.reduction.end {
            ReductionEnd::Odd(_) => "odd",
            ReductionEnd::Zero => "zero",
        };
        format!("{}: {} -> {end}", self.id, chain.join(" -> "))
    }
}

/// Reduces the divisors of an input to an odd or zero diagram.
pub fn reduce<W: Write>(sink: &mut Sink<W>, input: &InputArgs) -> Result<(), CliError> {
    let id = input.to_input()?;
    let seq = divisors_from_input(&id)?;
    let reduction = reduce_to_odd(id.lie_type, &seq)?;
    let special = is_special(&id)?;
    sink.record(&ReduceRecord {
        id,
        special,
        reduction,
    })
}

/// A verification verdict as written by the tool.
#[derive(Debug)]
pub struct VerdictRecord<'a> {
    pub verdict: &'a Verdict,
    pub seed: u64,
}

fn method_name(m: DegeneracyMethod) -> &'static str {
    match m {
        DegeneracyMethod::Exhaustive => "exhaustive",
        DegeneracyMethod::SchwartzZippel => "schwartz_zippel",
        DegeneracyMethod::NotApplicable => "n/a",
    }
}

impl Record for VerdictRecord<'_> {
    fn json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self.verdict)
    }

    fn csv_header() -> Vec<&'static str> {
        columns(&[
            "weights",
            "odd",
            "special",
            "phi1",
            "phi2",
            "construction_unimodular",
            "construction_provenance",
            "degeneracy_method",
            "degenerate_always",
            "error_bound",
            "trials",
            "note",
            "runtime_ms",
            "seed",
            "passed",
        ])
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let v = self.verdict;
        let mut row = input_cells(&v.id);
        row.extend([
            join(&v.weights),
            v.odd.to_string(),
            v.special.to_string(),
            v.phi1.to_string(),
            v.phi2.to_string(),
            opt(&v.construction_unimodular),
            opt(&v.construction_provenance),
            method_name(v.degeneracy_method).to_string(),
            opt(&v.degenerate_always),
            opt(&v.error_bound),
            v.trials.to_string(),
            opt(&v.note),
            opt(&v.runtime_ms),
            self.seed.to_string(),
            v.passed.to_string(),
        ]);
        vec![row]
    }

    fn pretty(&self) -> String {
        let v = self.verdict;
        let status = if v.passed { "PASS" } else { "FAIL" };
        let detail = if v.special {
            format!(
                "unimodular {} via {}",
                opt(&v.construction_unimodular),
                opt(&v.construction_provenance)
            )
        } else {
            let mut s = format!(
                "degenerate {} by {} ({} trials)",
                opt(&v.degenerate_always),
                method_name(v.degeneracy_method),
                v.trials
            );
            if let Some(b) = v.error_bound {
                s.push_str(&format!(", error bound {b:e}"));
            }
            s
        };
        let mut line = format!(
            "{status} {:<32} special {:<5} {detail}",
            v.id.to_string(),
            v.special
        );
        if let Some(ms) = v.runtime_ms {
            line.push_str(&format!(" [{ms:.1} ms]"));
        }
        line
    }
}

#[derive(Debug, Serialize)]
struct HeaderLine<'a> {
    header: VerifyHeader<'a>,
}

#[derive(Debug, Serialize)]
struct VerifyHeader<'a> {
    command: &'static str,
    #[serde(rename = "type")]
    lie_type: LieType,
    rank: usize,
    config: &'a VerifyConfig,
    version: &'static str,
}

/// Verifies every input of a type and rank; fails when any verdict fails.
pub fn verify<W: Write>(
    sink: &mut Sink<W>,
    diagram: &DiagramArgs,
    args: &VerifyArgs,
) -> Result<(), CliError> {
    let cfg = args.config();
    sink.header(
        &HeaderLine {
            header: VerifyHeader {
                command: "verify",
                lie_type: diagram.lie_type,
                rank: diagram.rank,
                config: &cfg,
                version: env!("CARGO_PKG_VERSION"),
            },
        },
        &format!(
            "verify {}{} seed {} exhaustive cap {} sampling {} trials over GF(2^{})",
            diagram.lie_type,
            diagram.rank,
            cfg.seed,
            cfg.exhaustive_cap,
            cfg.sz_trials,
            cfg.sz_field_exponent
        ),
    )?;
    let mut verdicts = verify_theorem(diagram.lie_type, diagram.rank, &cfg)?;
    if !args.timings {
        for v in &mut verdicts {
            v.runtime_ms = None;
        }
    }
    for v in &verdicts {
        sink.record(&VerdictRecord {
            verdict: v,
            seed: cfg.seed,
        })?;
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    sink.note(&format!("{} verdicts, {failed} failed", verdicts.len()))?;
    if failed > 0 {
        return Err(CliError::Failed {
            failed,
            total: verdicts.len(),
        });
    }
    Ok(())
}

/// One self-test check.
#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Record for CheckRecord {
    fn json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    fn csv_header() -> Vec<&'static str> {
        vec!["name", "passed", "detail"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.name.to_string(),
            self.passed.to_string(),
            self.detail.clone(),
        ]]
    }

    fn pretty(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn check(name: &'static str, f: impl FnOnce() -> wdg_core::Result<(bool, String)>) -> CheckRecord {
    match f() {
        Ok((passed, detail)) => CheckRecord {
            name,
            passed,
            detail,
        },
        Err(e) => CheckRecord {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn input(t: LieType, n: usize, mu: &[u32], nu: &[u32]) -> wdg_core::Result<PartitionInput> {
    PartitionInput::new(t, n, mu.to_vec(), nu.to_vec(), None)
}

/// Runs a short battery of known results.
pub fn selftest<W: Write>(sink: &mut Sink<W>) -> Result<(), CliError> {
    let cfg = VerifyConfig::default();
    let checks = vec![
        check("type A2 regular orbit is unimodular", || {
            let gs = GradedSystem::new(diagram_from_input(&input(LieType::A, 2, &[2, 1], &[])?)?)?;
            let lam = construct(&gs)?;
            let det = det_exact(&build_gram(&gs, &lam)?);
            Ok((det.is_unit(), format!("det {det}")))
        }),
        check("type C2 with mu=(1) nu=(1) is degenerate mod 2", || {
            let id = input(LieType::C, 2, &[1], &[1])?;
            let v = wdg_core::verifier::verify_input(&id, &cfg)?;
            Ok((
                !v.special && v.degenerate_always == Some(true),
                format!("special {}", v.special),
            ))
        }),
        check("type B2 has four inputs", || {
            let n = enumerate_inputs(LieType::B, 2)?.len();
            Ok((n == 4, format!("{n} inputs")))
        }),
        check("type D4 very even data gives four inputs", || {
            let n = enumerate_inputs(LieType::D, 4)?
                .iter()
                .filter(|i| i.is_very_even())
                .count();
            Ok((n == 4, format!("{n} inputs")))
        }),
        check("theorem holds for type C rank 3", || {
            let vs = verify_theorem(LieType::C, 3, &cfg)?;
            let failed = vs.iter().filter(|v| !v.passed).count();
            Ok((
                failed == 0,
                format!("{} verdicts, {failed} failed", vs.len()),
            ))
        }),
        check("theorem holds for type D rank 4", || {
            let vs = verify_theorem(LieType::D, 4, &cfg)?;
            let failed = vs.iter().filter(|v| !v.passed).count();
            Ok((
                failed == 0,
                format!("{} verdicts, {failed} failed", vs.len()),
            ))
        }),
    ];
    for c in &checks {
        sink.record(c)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::Failed {
            failed,
            total: checks.len(),
        });
    }
    Ok(())
}

/// Dispatches a parsed command line.
pub fn run<W: Write>(cli: &crate::args::Cli, out: W) -> Result<(), CliError> {
    use crate::args::Command;
    let mut sink = Sink::new(cli.format, out);
    let result = match &cli.command {
        Command::Enumerate {
            diagram,
            odd,
            special,
        } => enumerate(&mut sink, diagram, *odd, *special),
        Command::Gram {
            input,
            lambda,
            ring,
        } => gram(&mut sink, input, lambda, *ring),
        Command::Construct { input } => construct_cmd(&mut sink, input),
        Command::Verify { diagram, verify: v } => verify(&mut sink, diagram, v),
        Command::Reduce { input } => reduce(&mut sink, input),
        Command::Selftest => selftest(&mut sink),
    };
    sink.finish()?;
    result
}
