//! Verification reports.
//!
//! Violations are serialized with the complete cover (or point set) they
//! were found in, in the same layout as a cover file, so any counterexample
//! can be cut out of a report and replayed.

use std::path::Path;

use pgcover_core::verify::{Failure, Mode, Outcome, Sampler, Theorem, Violation};
use pgcover_core::{Geometry, PartialCover, PointSet};
use serde::Serialize;
use serde_json::Value;

use crate::files::{Format, SetFile};
use crate::{write_file, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::HypothesisNotMet => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisNotMet => "hypothesis_not_met",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub p: u32,
    pub h: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<u64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Value>,
}

impl Parameters {
    pub fn new(geo: &Geometry, a: Option<i64>, mode: Mode, seed: u64) -> Self {
        let f = geo.field();
        let (mode, sampler, sample_count) = match mode {
            Mode::Exhaustive => ("exhaustive", None, None),
            Mode::Sampled { samples, sampler } => ("sampled", Some(sampler_name(sampler)), Some(samples)),
        };
        Parameters {
            n: geo.n(),
            p: f.p(),
            h: f.h(),
            q: f.q(),
            modulus: f.modulus().to_vec(),
            a,
            mode,
            sampler,
            sample_count,
            seed,
            orders: None,
            input: None,
        }
    }
}

pub fn sampler_name(s: Sampler) -> &'static str {
    match s {
        Sampler::Uniform => "uniform",
        Sampler::NearPencil => "near-pencil",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub theorem: &'static str,
    pub parameters: Parameters,
    /// Whether the parameters satisfy the statement's hypothesis.
    pub hypothesis_met: bool,
    pub instances_checked: u64,
    /// Instances checked against the conclusion; zero when the parameters
    /// are outside the hypothesis.
    pub hypothesis_met_count: u64,
    /// Instances with 1 to q^(n-1) holes (hole and structure scans).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qualifying: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_covers: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excess_holes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    pub min_observed: Option<u64>,
    pub violation_count: u64,
    pub violations: Vec<Value>,
    /// Conclusion failures outside the hypothesis; not violations.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
    pub witness_count: u64,
    pub verdict: Verdict,
    pub wall_time_ms: u64,
}

impl VerifyReport {
    /// Builds a report; with `hypothesis_met` false every recorded failure
    /// becomes a witness.
    pub fn new(
        theorem: Theorem,
        parameters: Parameters,
        geo: &Geometry,
        hypothesis_met: bool,
        outcome: &Outcome,
        wall_time_ms: u64,
    ) -> Self {
        let entries: Vec<Value> = outcome.violations.iter().map(|v| violation_json(geo, v)).collect();
        let scan = matches!(theorem, Theorem::Holes | Theorem::Structure);
        let (violations, violation_count, witnesses, witness_count) = if hypothesis_met {
            (entries, outcome.violation_count, Vec::new(), 0)
        } else {
            (Vec::new(), 0, entries, outcome.violation_count)
        };
        let verdict = if violation_count > 0 {
            Verdict::Fail
        } else if hypothesis_met {
            Verdict::Pass
        } else {
            Verdict::HypothesisNotMet
        };
        let bound = match theorem {
            Theorem::Holes | Theorem::Tangents => parameters
                .a
                .map(|a| pgcover_core::verify::hole_lower_bound(geo.n(), geo.q(), a)),
            _ => None,
        };
        VerifyReport {
            theorem: theorem.name(),
            parameters,
            hypothesis_met,
            instances_checked: outcome.instances_checked,
            hypothesis_met_count: if hypothesis_met { outcome.hypothesis_met_count } else { 0 },
            qualifying: scan.then_some(outcome.hypothesis_met_count),
            full_covers: scan.then_some(outcome.full_covers),
            excess_holes: scan.then_some(outcome.excess_holes),
            bound,
            min_observed: outcome.min_observed,
            violation_count,
            violations,
            witnesses,
            witness_count,
            verdict,
            wall_time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let p = &self.parameters;
        let mut s = format!("{}: PG({},{})", self.theorem, p.n, p.q);
        if let Some(a) = p.a {
            s += &format!(", a={a}");
        }
        s += &format!(", {}", p.mode);
        match (p.sample_count, p.sampler) {
            (Some(k), Some(sampler)) => s += &format!(" ({k} {sampler} samples, seed {})", p.seed),
            (Some(k), None) => s += &format!(" ({k} trials, seed {})", p.seed),
            _ => {}
        }
        s += &format!("\ninstances={}", self.instances_checked);
        if let Some(qual) = self.qualifying {
            s += &format!(" qualifying={qual}");
        }
        if let Some(b) = self.bound {
            s += &format!(" bound={b}");
        }
        if let Some(m) = self.min_observed {
            s += &format!(" min_observed={m}");
        }
        s += &format!(" violations={}", self.violation_count);
        if self.witness_count > 0 {
            s += &format!(" witnesses={}", self.witness_count);
        }
        s += &format!("\nverdict: {} ({} ms)\n", self.verdict.name(), self.wall_time_ms);
        s
    }

    /// Writes each stored violation (or witness) as a standalone cover or
    /// point-set file `counterexample_<i>.json`; returns the count.
    pub fn write_counterexamples(&self, dir: &Path) -> Result<usize> {
        std::fs::create_dir_all(dir).map_err(|source| crate::Error::Io { path: dir.to_path_buf(), source })?;
        let mut written = 0;
        for v in self.violations.iter().chain(&self.witnesses) {
            let Some(obj) = v.get("cover") else { continue };
            let mut text = serde_json::to_string(obj).expect("plain data serializes");
            text.push('\n');
            write_file(&dir.join(format!("counterexample_{written}.json")), &text)?;
            written += 1;
        }
        Ok(written)
    }
}

fn set_value(file: &SetFile) -> Value {
    serde_json::from_str(&file.render(Format::Json)).expect("own output parses")
}

fn cover_value(geo: &Geometry, idx: &[usize]) -> Value {
    let c = PartialCover::new(geo, idx.iter().copied()).expect("indices from a scan");
    set_value(&SetFile::from_cover(geo, &c))
}

fn failure_name(f: &Failure) -> &'static str {
    match f {
        Failure::TooFewHoles { .. } => "too_few_holes",
        Failure::HolesNotInHyperplane => "holes_not_in_hyperplane",
        Failure::NoPencilStructure => "no_pencil_structure",
    }
}

fn rows(geo: &Geometry, idx: &[usize]) -> Vec<Vec<u32>> {
    idx.iter().map(|&i| geo.hyperplane(i).reps()).collect()
}

pub fn violation_json(geo: &Geometry, v: &Violation) -> Value {
    match v {
        Violation::Cover { hyperplanes, holes, failure } => serde_json::json!({
            "kind": "cover",
            "failure": failure_name(failure),
            "holes": holes,
            "cover": cover_value(geo, hyperplanes),
        }),
        Violation::Tangent { point, tangents, bound } => serde_json::json!({
            "kind": "tangent",
            "point": geo.point(*point).reps(),
            "tangents": tangents,
            "bound": bound,
        }),
        Violation::Reduction { hyperplanes, expected, found } => serde_json::json!({
            "kind": "reduction",
            "cover": cover_value(geo, hyperplanes),
            "expected": rows(geo, expected),
            "found": rows(geo, found),
        }),
    }
}

/// Input point set of a tangent check, embedded in its report.
pub fn point_set_value(geo: &Geometry, b: &PointSet) -> Value {
    set_value(&SetFile::from_points(geo, b))
}
