//! Command implementations behind the `symprod` binary.
//!
//! Every command returns a [`CommandOutput`] holding the text rendering, the
//! JSON rendering and the process exit code, so the binary stays a thin
//! argument parser and the commands can be tested in-process.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycleindex::{
    cycle_index_enumerated, cycle_index_symmetric, cycle_index_wreath, CycleIndexError,
};
use crate::cyclepoly::CycleIndexPolynomial;
use crate::exactnum::{fraction_string, rat, BigRational};
use crate::homoracle::{self, OracleError};
use crate::parallel::Execution;
use crate::permgroups::{GroupError, Permutation, PermutationGroup};
use crate::sigformulas::{signature_from_index, SignatureError, Surface, SurfaceKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("resource limit: {0}")]
    Limit(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_USAGE,
            CliError::Limit(_) => EXIT_LIMIT,
            CliError::Internal(_) => EXIT_MISMATCH,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::SizeLimit { .. } => CliError::Limit(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<CycleIndexError> for CliError {
    fn from(e: CycleIndexError) -> Self {
        match e {
            CycleIndexError::TermLimit { .. } => CliError::Limit(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<SignatureError> for CliError {
    fn from(e: SignatureError) -> Self {
        match e {
            SignatureError::NoPunctures | SignatureError::Precondition(_) => {
                CliError::Parse(e.to_string())
            }
            SignatureError::NonInteger(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BasisCap { .. } => CliError::Limit(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Options shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub element_limit: usize,
    pub tolerance: f64,
    pub exec: Execution,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            element_limit: crate::permgroups::DEFAULT_ELEMENT_LIMIT,
            tolerance: homoracle::DEFAULT_TOLERANCE,
            exec: Execution::default(),
        }
    }
}

/// Textual group description:
/// `S:n`, `C:n`, `A:n`, `wreath(<outer>,<inner>)` or
/// `gens:<degree>:<cycles>[;<cycles>...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Cyclic(usize),
    Alternating(usize),
    Wreath(Box<GroupSpec>, Box<GroupSpec>),
    Generators { degree: usize, cycles: Vec<String> },
}

impl GroupSpec {
    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::Symmetric(n) | GroupSpec::Cyclic(n) | GroupSpec::Alternating(n) => *n,
            GroupSpec::Wreath(outer, inner) => outer.degree() * inner.degree(),
            GroupSpec::Generators { degree, .. } => *degree,
        }
    }

    pub fn build(&self, limit: usize) -> Result<PermutationGroup, CliError> {
        Ok(match self {
            GroupSpec::Symmetric(n) => PermutationGroup::symmetric(*n, limit)?,
            GroupSpec::Cyclic(n) => PermutationGroup::cyclic(*n, limit)?,
            GroupSpec::Alternating(n) => PermutationGroup::alternating(*n, limit)?,
            GroupSpec::Wreath(outer, inner) => {
                PermutationGroup::wreath(&outer.build(limit)?, &inner.build(limit)?, limit)?
            }
            GroupSpec::Generators { degree, cycles } => {
                let gens = cycles
                    .iter()
                    .map(|c| Permutation::parse(c, *degree))
                    .collect::<Result<Vec<_>, _>>()?;
                PermutationGroup::generate_on(*degree, gens, limit)?
            }
        })
    }
}

fn parse_count(text: &str, what: &str) -> Result<usize, CliError> {
    let n: usize = text
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("{what}: expected a positive integer, got {text:?}")))?;
    if n == 0 {
        return Err(CliError::Parse(format!("{what}: degree must be at least 1")));
    }
    Ok(n)
}

/// Splits `a,b` at the top-level comma.
fn split_pair(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&text[..i], &text[i + 1..])),
            _ => {}
        }
    }
    None
}

impl FromStr for GroupSpec {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix("S:") {
            return Ok(GroupSpec::Symmetric(parse_count(rest, t)?));
        }
        if let Some(rest) = t.strip_prefix("C:") {
            return Ok(GroupSpec::Cyclic(parse_count(rest, t)?));
        }
        if let Some(rest) = t.strip_prefix("A:") {
            return Ok(GroupSpec::Alternating(parse_count(rest, t)?));
        }
        if let Some(rest) = t.strip_prefix("wreath(") {
            let body = rest
                .strip_suffix(')')
                .ok_or_else(|| CliError::Parse(format!("unclosed wreath in {t:?}")))?;
            let (outer, inner) = split_pair(body)
                .ok_or_else(|| CliError::Parse(format!("wreath needs two specs: {t:?}")))?;
            return Ok(GroupSpec::Wreath(
                Box::new(outer.parse()?),
                Box::new(inner.parse()?),
            ));
        }
        if let Some(rest) = t.strip_prefix("gens:") {
            let (degree, cycles) = rest
                .split_once(':')
                .ok_or_else(|| CliError::Parse(format!("expected gens:<degree>:<cycles>, got {t:?}")))?;
            let degree = parse_count(degree, t)?;
            let cycles: Vec<String> = cycles.split(';').map(|c| c.trim().to_string()).collect();
            for c in &cycles {
                Permutation::parse(c, degree)?;
            }
            return Ok(GroupSpec::Generators { degree, cycles });
        }
        Err(CliError::Parse(format!("unknown group spec {t:?}")))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C:{n}"),
            GroupSpec::Alternating(n) => write!(f, "A:{n}"),
            GroupSpec::Wreath(outer, inner) => write!(f, "wreath({outer},{inner})"),
            GroupSpec::Generators { degree, cycles } => write!(f, "gens:{degree}:{}", cycles.join(";")),
        }
    }
}

/// `closed:g` or `punct:g:k` with `k >= 1`.
pub fn parse_surface(text: &str) -> Result<Surface, CliError> {
    let parts: Vec<&str> = text.trim().split(':').collect();
    let num = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| CliError::Parse(format!("bad number {s:?} in surface {text:?}")))
    };
    match parts.as_slice() {
        ["closed", g] => Ok(Surface::closed(num(g)?)),
        ["punct", g, k] => Ok(Surface::punctured(num(g)?, num(k)?)?),
        _ => Err(CliError::Parse(format!(
            "surface must be closed:<g> or punct:<g>:<k>, got {text:?}"
        ))),
    }
}

/// Inclusive range `a..b`, or a single value `a`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::Parse(format!("range must look like a..b, got {text:?}"));
    let t = text.trim();
    let (lo, hi) = match t.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (t, t),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TermJson {
    pub cycle_type: Vec<usize>,
    pub coefficient: String,
}

fn cycle_index_json(z: &CycleIndexPolynomial) -> Vec<TermJson> {
    z.terms()
        .map(|(ct, c)| TermJson {
            cycle_type: ct.multiplicities().to_vec(),
            coefficient: fraction_string(c),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupInput {
    pub group: String,
    pub degree: usize,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CycleIndexReport {
    pub command: String,
    pub input: GroupInput,
    pub cycle_index: Vec<TermJson>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Substitution {
    pub odd: String,
    pub even: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SignatureInput {
    pub group: String,
    pub degree: usize,
    pub order: usize,
    pub surface: String,
    pub substitution: Substitution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SignatureReport {
    pub command: String,
    pub input: SignatureInput,
    pub cycle_index: Vec<TermJson>,
    pub value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sym,
    Wreath,
}

impl FromStr for Family {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "sym" => Ok(Family::Sym),
            "wreath" => Ok(Family::Wreath),
            _ => Err(CliError::Parse(format!("family must be sym or wreath, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TableParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outer: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inner: Option<u32>,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TableRow {
    pub params: TableParams,
    pub signature: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TableInput {
    pub family: Family,
    pub surface: String,
    pub genus: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inner: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TableReport {
    pub command: String,
    pub input: TableInput,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyCase {
    pub group: String,
    pub surface: String,
    pub formula: String,
    pub oracle: Option<String>,
    pub residual: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyInput {
    pub max_degree: usize,
    pub max_genus: u32,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub command: String,
    pub input: VerifyInput,
    pub cases: Vec<VerifyCase>,
    pub value: String,
}

/// Result of running a command.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub text: String,
    pub json: String,
    pub exit_code: i32,
}

impl CommandOutput {
    fn new<T: Serialize>(text: String, report: &T, exit_code: i32) -> Self {
        CommandOutput {
            text,
            json: serde_json::to_string_pretty(report).expect("reports serialize"),
            exit_code,
        }
    }

    pub fn render(&self, json: bool) -> &str {
        if json {
            &self.json
        } else {
            &self.text
        }
    }
}

fn integer_string(q: &BigRational) -> String {
    debug_assert!(q.is_integer());
    q.to_integer().to_string()
}

/// Cycle index of a group spec, enumerated from the group's elements.
pub fn cmd_cycle_index(spec: &GroupSpec, opts: &Options) -> Result<CommandOutput, CliError> {
    let group = spec.build(opts.element_limit)?;
    let z = crate::cycleindex::cycle_index_enumerated_with(&group, opts.exec);
    let report = CycleIndexReport {
        command: "cycle-index".into(),
        input: GroupInput {
            group: spec.to_string(),
            degree: group.degree(),
            order: group.order(),
        },
        cycle_index: cycle_index_json(&z),
        value: z.to_string(),
    };
    Ok(CommandOutput::new(z.to_string(), &report, EXIT_OK))
}

/// Signature of `M^m / G` from the cycle index.
pub fn cmd_signature(spec: &GroupSpec, surface: &Surface, opts: &Options) -> Result<CommandOutput, CliError> {
    let group = spec.build(opts.element_limit)?;
    let z = crate::cycleindex::cycle_index_enumerated_with(&group, opts.exec);
    let value = signature_from_index(&z, surface)?;
    let report = SignatureReport {
        command: "signature".into(),
        input: SignatureInput {
            group: spec.to_string(),
            degree: group.degree(),
            order: group.order(),
            surface: surface.to_string(),
            substitution: Substitution {
                odd: fraction_string(&BigRational::zero()),
                even: fraction_string(&rat(surface.even_cycle_value())),
            },
        },
        cycle_index: cycle_index_json(&z),
        value: integer_string(&value),
    };
    Ok(CommandOutput::new(integer_string(&value), &report, EXIT_OK))
}

/// Table request; ranges are inclusive.
#[derive(Debug, Clone)]
pub struct TableRequest {
    pub family: Family,
    pub surface: SurfaceKind,
    pub genus: RangeInclusive<u32>,
    /// Degree `m` of `S_m` for the `sym` family.
    pub degree: RangeInclusive<u32>,
    /// `p` of `S_p ≀ S_m` for the `wreath` family.
    pub outer: RangeInclusive<u32>,
    /// `m` of `S_p ≀ S_m` for the `wreath` family.
    pub inner: RangeInclusive<u32>,
}

fn range_string(r: &RangeInclusive<u32>) -> String {
    format!("{}..{}", r.start(), r.end())
}

fn surface_for(kind: SurfaceKind, genus: u32) -> Surface {
    match kind {
        SurfaceKind::Closed => Surface::closed(genus),
        SurfaceKind::Punctured => Surface::punctured(genus, 1).expect("one puncture"),
    }
}

/// Grid of signatures over group parameters (rows) and genus (columns).
/// Cycle indices come from closed forms, so no group is enumerated.
pub fn cmd_table(req: &TableRequest) -> Result<CommandOutput, CliError> {
    let mut groups: Vec<(TableParams, String, CycleIndexPolynomial)> = Vec::new();
    match req.family {
        Family::Sym => {
            for m in req.degree.clone() {
                if m == 0 {
                    return Err(CliError::Parse("degree must be at least 1".into()));
                }
                let params = TableParams { degree: Some(m), outer: None, inner: None, genus: 0 };
                groups.push((params, format!("S:{m}"), cycle_index_symmetric(m as usize)));
            }
        }
        Family::Wreath => {
            for p in req.outer.clone() {
                for m in req.inner.clone() {
                    if p == 0 || m == 0 {
                        return Err(CliError::Parse("degrees must be at least 1".into()));
                    }
                    let z = cycle_index_wreath(
                        &cycle_index_symmetric(p as usize),
                        &cycle_index_symmetric(m as usize),
                    )?;
                    let params = TableParams { degree: None, outer: Some(p), inner: Some(m), genus: 0 };
                    groups.push((params, format!("wreath(S:{p},S:{m})"), z));
                }
            }
        }
    }

    let genera: Vec<u32> = req.genus.clone().collect();
    let mut rows = Vec::new();
    let mut grid: Vec<Vec<String>> = Vec::new();
    for (params, label, z) in &groups {
        let mut line = vec![label.clone()];
        for &g in &genera {
            let value = signature_from_index(z, &surface_for(req.surface, g))?;
            let s = integer_string(&value);
            line.push(s.clone());
            rows.push(TableRow {
                params: TableParams { genus: g, ..params.clone() },
                signature: s,
            });
        }
        grid.push(line);
    }

    let mut header = vec!["group".to_string()];
    header.extend(genera.iter().map(|g| format!("g={g}")));
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for line in &grid {
        for (w, cell) in widths.iter_mut().zip(line) {
            *w = (*w).max(cell.len());
        }
    }
    let format_line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut text = format_line(&header);
    for line in &grid {
        text.push('\n');
        text.push_str(&format_line(line));
    }

    let surface = match req.surface {
        SurfaceKind::Closed => "closed",
        SurfaceKind::Punctured => "punct",
    };
    let report = TableReport {
        command: "table".into(),
        input: TableInput {
            family: req.family,
            surface: surface.into(),
            genus: range_string(&req.genus),
            degree: (req.family == Family::Sym).then(|| range_string(&req.degree)),
            outer: (req.family == Family::Wreath).then(|| range_string(&req.outer)),
            inner: (req.family == Family::Wreath).then(|| range_string(&req.inner)),
        },
        rows,
    };
    Ok(CommandOutput::new(text, &report, EXIT_OK))
}

/// Groups checked by `verify`: `S_m`, `C_m`, `A_m` for `m <= max_degree`,
/// plus `S_2 ≀ S_2` once `max_degree >= 4`.
pub fn verify_groups(max_degree: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for m in 1..=max_degree {
        out.push(GroupSpec::Symmetric(m));
        out.push(GroupSpec::Cyclic(m));
        out.push(GroupSpec::Alternating(m));
    }
    if max_degree >= 4 {
        out.push(GroupSpec::Wreath(
            Box::new(GroupSpec::Symmetric(2)),
            Box::new(GroupSpec::Symmetric(2)),
        ));
    }
    out
}

/// Compares the cycle-index signature with the homological oracle over a
/// grid of groups and surfaces.
pub fn cmd_verify(max_degree: usize, max_genus: u32, opts: &Options) -> Result<CommandOutput, CliError> {
    let mut cases = Vec::new();
    for spec in verify_groups(max_degree) {
        let group = spec.build(opts.element_limit)?;
        let z = cycle_index_enumerated(&group);
        for kind in [SurfaceKind::Closed, SurfaceKind::Punctured] {
            for g in 0..=max_genus {
                cases.push((spec.clone(), group.clone(), z.clone(), surface_for(kind, g)));
            }
        }
    }
    // Cases fan out; each oracle call runs its own elements sequentially.
    let results = opts.exec.map(&cases, |(spec, group, z, surface)| {
        let formula = signature_from_index(z, surface)?;
        let formula_s = integer_string(&formula);
        match homoracle::quotient_signature_oracle_with(group, surface, opts.tolerance, Execution::Sequential) {
            Ok(outcome) => Ok(VerifyCase {
                group: spec.to_string(),
                surface: surface.to_string(),
                pass: outcome.value.to_string() == formula_s,
                formula: formula_s,
                oracle: Some(outcome.value.to_string()),
                residual: Some(outcome.residual),
                error: None,
            }),
            Err(e @ OracleError::BasisCap { .. }) => Err(CliError::from(e)),
            Err(e) => Ok(VerifyCase {
                group: spec.to_string(),
                surface: surface.to_string(),
                formula: formula_s,
                oracle: None,
                residual: None,
                pass: false,
                error: Some(e.to_string()),
            }),
        }
    });
    let cases: Vec<VerifyCase> = results.into_iter().collect::<Result<_, CliError>>()?;

    let all_pass = cases.iter().all(|c| c.pass);
    let mut text = String::new();
    for c in &cases {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let oracle = c.oracle.as_deref().unwrap_or("-");
        text.push_str(&format!(
            "{status} {:<16} {:<12} formula={:>4} oracle={:>4}",
            c.group, c.surface, c.formula, oracle
        ));
        if let Some(r) = c.residual {
            text.push_str(&format!(" residual={r:.1e}"));
        }
        if let Some(e) = &c.error {
            text.push_str(&format!(" error: {e}"));
        }
        text.push('\n');
    }
    let passed = cases.iter().filter(|c| c.pass).count();
    text.push_str(&format!("{passed}/{} cases passed", cases.len()));

    let report = VerifyReport {
        command: "verify".into(),
        input: VerifyInput {
            max_degree,
            max_genus,
            tolerance: opts.tolerance,
        },
        cases,
        value: if all_pass { "pass" } else { "fail" }.into(),
    };
    let code = if all_pass { EXIT_OK } else { EXIT_MISMATCH };
    Ok(CommandOutput::new(text, &report, code))
}
