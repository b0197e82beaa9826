//! Action specification files and the deterministic reports produced by the
//! command-line tool.
//!
//! A specification is a JSON object:
//!
//! ```json
//! {"k": 6, "sigma1": "(0 1 2)(3 4 5)", "sigma2": [3, 4, 5, 0, 1, 2], "degree": 8}
//! ```
//!
//! where each permutation is either an images array or a cycle-notation
//! string, and `degree` is optional.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{generated_pattern, generators, verify_identification};
use crate::ideals::{codim_invariant, distinguish, CodimInvariant, Stratum, Verdict};
use crate::pattern::{Comparison, MonomialKey, Pattern};
use crate::perm::{PermError, PerpDecomposition, PerpViolation, Permutation, Z2Action};

pub const REPORT_SCHEMA: &str = "semicrossed.report/v1";
pub const COMPARE_SCHEMA: &str = "semicrossed.compare/v1";
pub const DECOMPOSE_SCHEMA: &str = "semicrossed.decompose/v1";
pub const SWEEP_SCHEMA: &str = "semicrossed.sweep/v1";
pub const DEFAULT_DEGREE: usize = 8;
pub const MAX_SWEEP_K: usize = 8;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed specification: {0}")]
    Malformed(String),
    #[error("invalid {which}: {source}")]
    Permutation { which: &'static str, source: PermError },
    #[error("non-commuting permutations: {0}")]
    NonCommuting(PermError),
    #[error("max k must be between 1 and {MAX_SWEEP_K}, got {0}")]
    SweepRange(usize),
}

impl SpecError {
    /// Process exit status: 3 for non-commuting input, 2 for every other input error.
    pub fn exit_code(&self) -> i32 {
        match self {
            SpecError::NonCommuting(_) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermSpec {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermSpec {
    fn resolve(&self, k: usize, which: &'static str) -> Result<Permutation, SpecError> {
        let p = match self {
            PermSpec::Images(images) => {
                if images.len() != k {
                    return Err(SpecError::Malformed(format!(
                        "{which} has {} images but k = {k}",
                        images.len()
                    )));
                }
                Permutation::from_images(images.clone())
            }
            PermSpec::Cycles(text) => Permutation::parse_cycles(text, k),
        };
        p.map_err(|source| SpecError::Permutation { which, source })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub k: usize,
    pub sigma1: PermSpec,
    pub sigma2: PermSpec,
    #[serde(default)]
    pub degree: Option<usize>,
}

impl ActionSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Malformed(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn action(&self) -> Result<Z2Action, SpecError> {
        if self.k == 0 {
            return Err(SpecError::Malformed("k must be positive".into()));
        }
        let s1 = self.sigma1.resolve(self.k, "sigma1")?;
        let s2 = self.sigma2.resolve(self.k, "sigma2")?;
        Z2Action::new(s1, s2).map_err(SpecError::NonCommuting)
    }

    /// The command-line override, else the file's degree, else the default.
    pub fn degree_or(&self, override_degree: Option<usize>) -> usize {
        override_degree.or(self.degree).unwrap_or(DEFAULT_DEGREE)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo { name: env!("CARGO_PKG_NAME").to_string(), version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub k: usize,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub sigma1_cycles: String,
    pub sigma2_cycles: String,
    pub degree: usize,
}

impl InputEcho {
    pub fn new(action: &Z2Action, degree: usize) -> Self {
        InputEcho {
            k: action.k(),
            sigma1: action.sigma1().images().to_vec(),
            sigma2: action.sigma2().images().to_vec(),
            sigma1_cycles: action.sigma1().to_cycle_string(),
            sigma2_cycles: action.sigma2().to_cycle_string(),
            degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub commuting: bool,
    pub transitive: bool,
    pub perpendicular: bool,
    pub violation: Option<PerpViolation>,
}

impl Classification {
    pub fn of(action: &Z2Action) -> Self {
        let violation = action.perpendicularity().err();
        Classification {
            commuting: true,
            transitive: action.is_transitive(),
            perpendicular: violation.is_none(),
            violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub x0: usize,
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub factor_sizes: [usize; 2],
    pub tau1: Vec<usize>,
    pub tau2: Vec<usize>,
    pub h: Vec<[usize; 2]>,
    /// `tensor_labels[x]` is the row-major tensor index of ground point `x`.
    pub tensor_labels: Vec<usize>,
}

impl DecompositionReport {
    pub fn new(d: &PerpDecomposition) -> Self {
        let (k1, k2) = d.factor_sizes();
        DecompositionReport {
            x0: d.x0,
            x1: d.x1.points().to_vec(),
            x2: d.x2.points().to_vec(),
            factor_sizes: [k1, k2],
            tau1: d.tau1.images().to_vec(),
            tau2: d.tau2.images().to_vec(),
            h: d.h.iter().map(|&(a, b)| [a, b]).collect(),
            tensor_labels: (0..d.h.len()).map(|x| d.tensor_index(x)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSummary {
    pub degree: usize,
    pub key_count: usize,
    pub keys_by_degree: Vec<usize>,
    pub keys: Option<Vec<[usize; 4]>>,
}

impl PatternSummary {
    pub fn new(p: &Pattern, with_keys: bool) -> Self {
        PatternSummary {
            degree: p.cap(),
            key_count: p.len(),
            keys_by_degree: p.keys_by_degree(),
            keys: with_keys.then(|| p.quadruples()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub key: MonomialKey,
    /// `"generated"` or `"target"`: the side that contains the key.
    pub only_in: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub target: String,
    pub relabeled: bool,
    pub verified: bool,
    pub degree: usize,
    pub witness: Option<Witness>,
}

impl Identification {
    fn new(target: String, relabeled: bool, degree: usize, cmp: Comparison) -> Self {
        let witness = match cmp {
            Comparison::Equal => None,
            Comparison::Differ { witness, in_left } => Some(Witness {
                key: witness,
                only_in: if in_left { "generated" } else { "target" }.to_string(),
            }),
        };
        Identification { target, relabeled, verified: witness.is_none(), degree, witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub classification: Classification,
    pub decomposition: Option<DecompositionReport>,
    pub pattern: PatternSummary,
    pub identifications: Vec<Identification>,
    pub invariant: CodimInvariant,
}

/// Runs the full pipeline for one action: classification, decomposition,
/// generated pattern, identifications and the codimension invariant.
pub fn analyze(action: &Z2Action, degree: usize, with_keys: bool) -> Report {
    let k = action.k();
    let pattern = generated_pattern(&generators(action), degree);
    let decomposition = action.perp_decompose().ok();

    let cmp = verify_identification(action, &Pattern::bk2(k, degree), degree, None).expect("sizes agree");
    let mut identifications = vec![Identification::new(format!("B_{{{k},2}}"), false, degree, cmp)];
    if let Some(d) = &decomposition {
        let (k1, k2) = d.factor_sizes();
        let cmp = verify_identification(action, &Pattern::tensor(k1, k2, degree), degree, Some(&d.tensor_relabeling()))
            .expect("sizes agree");
        identifications.push(Identification::new(format!("B_{k1} ⊗ B_{k2}"), true, degree, cmp));
    }
    let invariant = codim_invariant(&pattern).expect("generated patterns contain every diagonal unit");

    Report {
        schema: REPORT_SCHEMA.to_string(),
        tool: ToolInfo::current(),
        input: InputEcho::new(action, degree),
        classification: Classification::of(action),
        decomposition: decomposition.as_ref().map(DecompositionReport::new),
        pattern: PatternSummary::new(&pattern, with_keys),
        identifications,
        invariant,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareSide {
    pub input: InputEcho,
    pub classification: Classification,
    pub invariant: CodimInvariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub schema: String,
    pub tool: ToolInfo,
    pub a: CompareSide,
    pub b: CompareSide,
    pub verdict: Verdict,
}

pub fn compare(a: &Z2Action, b: &Z2Action, degree: usize) -> CompareReport {
    let pa = generated_pattern(&generators(a), degree);
    let pb = generated_pattern(&generators(b), degree);
    let d = distinguish(&pa, &pb).expect("generated patterns contain every diagonal unit");
    CompareReport {
        schema: COMPARE_SCHEMA.to_string(),
        tool: ToolInfo::current(),
        a: CompareSide { input: InputEcho::new(a, degree), classification: Classification::of(a), invariant: d.left },
        b: CompareSide { input: InputEcho::new(b, degree), classification: Classification::of(b), invariant: d.right },
        verdict: d.verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub schema: String,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub perpendicular: bool,
    pub violation: Option<PerpViolation>,
    pub decomposition: Option<DecompositionReport>,
}

pub fn decompose(action: &Z2Action, degree: usize) -> DecomposeReport {
    let (violation, decomposition) = match action.perp_decompose() {
        Ok(d) => (None, Some(DecompositionReport::new(&d))),
        Err(e) => (Some(e.0), None),
    };
    DecomposeReport {
        schema: DECOMPOSE_SCHEMA.to_string(),
        tool: ToolInfo::current(),
        input: InputEcho::new(action, degree),
        perpendicular: violation.is_none(),
        violation,
        decomposition,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub schema: String,
    pub k: usize,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub sigma1_cycles: String,
    pub sigma2_cycles: String,
    pub transitive: bool,
    pub perpendicular: bool,
    pub factors: Option<[usize; 2]>,
    pub distinct: BTreeSet<usize>,
    pub z_only: Option<Vec<usize>>,
    pub w_only: Option<Vec<usize>>,
    pub generic: Option<Vec<usize>>,
    pub partial: bool,
}

/// One row per conjugacy class of commuting pairs on `1..=max_k` points,
/// ordered by `k` and then by the canonical representative.
pub fn sweep(max_k: usize, degree: usize) -> Result<Vec<SweepRow>, SpecError> {
    if max_k == 0 || max_k > MAX_SWEEP_K {
        return Err(SpecError::SweepRange(max_k));
    }
    let mut rows = Vec::new();
    for k in 1..=max_k {
        for action in Z2Action::canonical_commuting(k) {
            rows.push(sweep_row(&action, degree));
        }
    }
    Ok(rows)
}

fn sweep_row(action: &Z2Action, degree: usize) -> SweepRow {
    // closed form stands in for the fixpoint here; the two agree exhaustively in tests
    let pattern = crate::generators::closed_form_pattern(action, degree);
    let inv = codim_invariant(&pattern).expect("diagonal units present");
    let factors = action.perp_decompose().ok().map(|d| {
        let (a, b) = d.factor_sizes();
        [a, b]
    });
    SweepRow {
        schema: SWEEP_SCHEMA.to_string(),
        k: action.k(),
        sigma1: action.sigma1().images().to_vec(),
        sigma2: action.sigma2().images().to_vec(),
        sigma1_cycles: action.sigma1().to_cycle_string(),
        sigma2_cycles: action.sigma2().to_cycle_string(),
        transitive: action.is_transitive(),
        perpendicular: factors.is_some(),
        factors,
        z_only: inv.stratum(Stratum::ZOnly).map(<[usize]>::to_vec),
        w_only: inv.stratum(Stratum::WOnly).map(<[usize]>::to_vec),
        generic: inv.stratum(Stratum::Generic).map(<[usize]>::to_vec),
        partial: inv.is_partial(),
        distinct: inv.distinct,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

/// One JSON object per line.
pub fn sweep_jsonl(rows: &[SweepRow]) -> String {
    rows.iter().map(|r| serde_json::to_string(r).expect("rows serialise") + "\n").collect()
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "k", "sigma1", "sigma2", "transitive", "perpendicular", "factors", "distinct", "z_only", "w_only", "generic",
        "partial",
    ])
    .expect("in-memory write");
    for r in rows {
        let opt = |v: &Option<Vec<usize>>| v.as_ref().map_or_else(String::new, |v| join(v, ";"));
        w.write_record([
            r.k.to_string(),
            r.sigma1_cycles.clone(),
            r.sigma2_cycles.clone(),
            r.transitive.to_string(),
            r.perpendicular.to_string(),
            r.factors.map_or_else(String::new, |[a, b]| format!("{a}x{b}")),
            join(&r.distinct.iter().copied().collect::<Vec<_>>(), ";"),
            opt(&r.z_only),
            opt(&r.w_only),
            opt(&r.generic),
            r.partial.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_input(out: &mut String, input: &InputEcho) {
    let _ = writeln!(
        out,
        "action: k={} sigma1={} sigma2={} degree={}",
        input.k, input.sigma1_cycles, input.sigma2_cycles, input.degree
    );
}

fn render_classification(out: &mut String, c: &Classification) {
    let _ = writeln!(
        out,
        "classification: commuting={} transitive={} perpendicular={}",
        yes(c.commuting),
        yes(c.transitive),
        yes(c.perpendicular)
    );
    if let Some(v) = &c.violation {
        let _ = writeln!(out, "  {v}");
    }
}

fn render_decomposition(out: &mut String, d: &DecompositionReport) {
    let _ = writeln!(
        out,
        "decomposition: x0={} X1={{{}}} X2={{{}}} factors {}x{}",
        d.x0,
        join(&d.x1, ","),
        join(&d.x2, ","),
        d.factor_sizes[0],
        d.factor_sizes[1]
    );
    for (x, [a, b]) in d.h.iter().enumerate() {
        let _ = writeln!(out, "  h({x}) = ({a}, {b})");
    }
}

fn render_invariant(out: &mut String, inv: &CodimInvariant) {
    let _ = writeln!(out, "invariant: distinct codimensions {{{}}}", join(&inv.distinct.iter().copied().collect::<Vec<_>>(), ", "));
    for (s, dims) in &inv.strata {
        let _ = writeln!(out, "  {s}: [{}]", join(dims, ", "));
    }
    for w in &inv.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }
}

pub fn render_report_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", r.tool.name, r.tool.version);
    render_input(&mut out, &r.input);
    render_classification(&mut out, &r.classification);
    if let Some(d) = &r.decomposition {
        render_decomposition(&mut out, d);
    }
    let _ = writeln!(
        out,
        "pattern: {} keys to degree {} (by degree: {})",
        r.pattern.key_count,
        r.pattern.degree,
        join(&r.pattern.keys_by_degree, " ")
    );
    for id in &r.identifications {
        match &id.witness {
            None => {
                let _ = writeln!(out, "identification {}: verified to degree {}", id.target, id.degree);
            }
            Some(w) => {
                let _ = writeln!(
                    out,
                    "identification {}: not verified (witness {} only in {})",
                    id.target, w.key, w.only_in
                );
            }
        }
    }
    render_invariant(&mut out, &r.invariant);
    out
}

pub fn render_compare_text(r: &CompareReport) -> String {
    let mut out = String::new();
    for (label, side) in [("a", &r.a), ("b", &r.b)] {
        let _ = writeln!(out, "[{label}]");
        render_input(&mut out, &side.input);
        render_classification(&mut out, &side.classification);
        render_invariant(&mut out, &side.invariant);
    }
    let _ = writeln!(out, "verdict: {}", r.verdict);
    out
}

pub fn render_decompose_text(r: &DecomposeReport) -> String {
    let mut out = String::new();
    render_input(&mut out, &r.input);
    match (&r.decomposition, &r.violation) {
        (Some(d), _) => render_decomposition(&mut out, d),
        (None, Some(v)) => {
            let _ = writeln!(out, "not perpendicular: {v}");
        }
        (None, None) => {}
    }
    out
}
