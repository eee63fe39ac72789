//! Subcommand implementations. Each returns an [`Outcome`] so the binary
//! and the tests share one code path.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use qccdts::csoc::{build_systematic_x, constraint_length, is_csoc, memory};
use qccdts::distance::{
    certify_dfree, column_distance, dfree_exact_with, dfree_upper, Codeword, DistanceCertificate,
    ExactDistance, ExactLimits, COLUMN_WINDOW_BITS,
};
use qccdts::dts::{search_strong_dts, Classification, DtsFamily, SupportSet};
use qccdts::gf2poly::{Gf2Poly, PolyMatrix};
use qccdts::reflect::{
    build_z, first_commuting_permutation, reflect_family, Permutation, QccParams,
};
use qccdts::symplectic::{check_reflection_symmetry, is_commuting};

use crate::input::{parse_code, FamilyJson, ParsedCode};
use crate::tables::{check_row, infer_permutation, RowCheck, ROWS, TABLE_TITLES};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SEARCH_MAX_SETS: usize = 5;
pub const SEARCH_MAX_WEIGHT: usize = 5;
pub const SEARCH_MAX_SCOPE: u32 = 40;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }

    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_PASS,
            stdout,
            stderr: String::new(),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// How the Z matrix of a pair was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PiSource {
    Input,
    InferredFromZ,
    FirstCommuting,
    Identity,
    ExplicitZ,
}

pub struct ResolvedPair {
    pub family: DtsFamily,
    pub x: PolyMatrix,
    pub z: PolyMatrix,
    pub pi: Option<Permutation>,
    pub pi_source: PiSource,
    pub warning: Option<String>,
}

/// Builds `X` and `Z` from a parsed code. Without `"Z"` or `"pi"` the
/// first commuting permutation is used, falling back to the identity.
pub fn resolve(code: &ParsedCode) -> Result<ResolvedPair, String> {
    let construction = build_systematic_x(&code.x_family);
    let x = construction.matrix;
    let (z, pi, pi_source) = match (&code.z_family, &code.pi) {
        (Some(z_sets), _) => {
            let z = PolyMatrix::row_vector(
                z_sets
                    .iter()
                    .map(SupportSet::to_poly)
                    .chain(std::iter::once(Gf2Poly::one()))
                    .collect(),
            );
            match infer_permutation(&code.x_family, z_sets) {
                Some(pi) => (z, Some(pi), PiSource::InferredFromZ),
                None => (z, None, PiSource::ExplicitZ),
            }
        }
        (None, Some(pi)) => {
            let z = build_z(&x, pi).map_err(|e| e.to_string())?;
            (z, Some(pi.clone()), PiSource::Input)
        }
        (None, None) => {
            let found = first_commuting_permutation(&x).map_err(|e| e.to_string())?;
            let (pi, source) = match found {
                Some(pi) => (pi, PiSource::FirstCommuting),
                None => (
                    Permutation::identity(code.x_family.len()),
                    PiSource::Identity,
                ),
            };
            let z = build_z(&x, &pi).map_err(|e| e.to_string())?;
            (z, Some(pi), source)
        }
    };
    Ok(ResolvedPair {
        family: code.x_family.clone(),
        x,
        z,
        pi,
        pi_source,
        warning: construction.warning,
    })
}

fn load(text: &str, convention: Option<bool>) -> Result<(ParsedCode, ResolvedPair), Outcome> {
    let code = parse_code(text, convention).map_err(Outcome::usage)?;
    let pair = resolve(&code).map_err(Outcome::usage)?;
    Ok((code, pair))
}

fn quantum_rate(pair: &ResolvedPair) -> Option<QccParams> {
    let commuting = is_commuting(&pair.x, &pair.z).ok()?.commuting;
    commuting.then(|| QccParams {
        n: pair.x.cols(),
        r_x: pair.x.rows(),
        r_z: pair.z.rows(),
    })
}

fn mu_of(m: &PolyMatrix) -> Option<u32> {
    memory(m, m.cols(), m.cols().checked_sub(1)?).ok()
}

#[derive(Serialize)]
struct BuildReport {
    x: String,
    z: String,
    pi: Option<Vec<usize>>,
    pi_source: PiSource,
    n: usize,
    memory: Option<u32>,
    w: usize,
    constraint_length: u32,
    quantum_rate: Option<String>,
    classification: String,
    warning: Option<String>,
}

pub fn build(text: &str, convention: Option<bool>, json_out: bool) -> Outcome {
    let (_, pair) = match load(text, convention) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let report = BuildReport {
        x: pair.x.to_string(),
        z: pair.z.to_string(),
        pi: pair.pi.as_ref().map(Permutation::to_one_based),
        pi_source: pair.pi_source,
        n: pair.x.cols(),
        memory: mu_of(&pair.x),
        w: pair.family.weight(),
        constraint_length: constraint_length(&pair.x),
        quantum_rate: quantum_rate(&pair).map(|q| q.to_string()),
        classification: pair.family.classification().to_string(),
        warning: pair.warning.clone(),
    };
    if json_out {
        return Outcome::ok(to_json(&report));
    }
    let mut out = String::new();
    if let Some(w) = &report.warning {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "X(D) = {}", report.x);
    let _ = writeln!(out, "Z(D) = {}", report.z);
    if let Some(pi) = &pair.pi {
        let _ = writeln!(out, "pi = {pi}");
    }
    let _ = writeln!(out, "n = {}", report.n);
    match report.memory {
        Some(m) => writeln!(out, "memory = {m}"),
        None => writeln!(out, "memory = undefined"),
    }
    .ok();
    let _ = writeln!(out, "w = {}", report.w);
    let _ = writeln!(out, "constraint length = {}", report.constraint_length);
    match &report.quantum_rate {
        Some(r) => writeln!(out, "quantum rate = {r}"),
        None => writeln!(out, "quantum rate = n/a (X and Z do not commute)"),
    }
    .ok();
    Outcome::ok(out)
}

#[derive(Serialize)]
struct ReflectReport {
    family: FamilyJson,
    reflected: FamilyJson,
    z_family: FamilyJson,
    x: String,
    z: String,
    pi: Option<Vec<usize>>,
    pi_source: PiSource,
}

pub fn reflect(text: &str, convention: Option<bool>, json_out: bool) -> Outcome {
    let (code, pair) = match load(text, convention) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let reflected = match reflect_family(&pair.family, None) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let z_sets = match qccdts::csoc::parity_supports(&pair.z).and_then(DtsFamily::new) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let one_based = code.one_based;
    let report = ReflectReport {
        family: FamilyJson::from_family(&pair.family, one_based),
        reflected: FamilyJson::from_family(&reflected, one_based),
        z_family: FamilyJson::from_family(&z_sets, one_based),
        x: pair.x.to_string(),
        z: pair.z.to_string(),
        pi: pair.pi.as_ref().map(Permutation::to_one_based),
        pi_source: pair.pi_source,
    };
    if json_out {
        return Outcome::ok(to_json(&report));
    }
    let render = |f: &FamilyJson| {
        f.sets
            .iter()
            .map(|s| {
                let parts: Vec<String> = s.iter().map(u32::to_string).collect();
                format!("{{{}}}", parts.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    let label = if one_based { "1-based" } else { "0-based" };
    let mut out = String::new();
    let _ = writeln!(out, "family ({label}) = {}", render(&report.family));
    let _ = writeln!(out, "reflected ({label}) = {}", render(&report.reflected));
    let _ = writeln!(out, "Z family ({label}) = {}", render(&report.z_family));
    if let Some(pi) = &pair.pi {
        let _ = writeln!(out, "pi = {pi}");
    }
    let _ = writeln!(out, "X(D) = {}", report.x);
    let _ = writeln!(out, "Z(D) = {}", report.z);
    Outcome::ok(out)
}

/// A nonzero coefficient `D^s` of the symplectic sum at `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationJson {
    pub s: i64,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DfreeReport {
    pub value: Option<u32>,
    pub method: Option<String>,
    pub exact_agrees: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub strong_dts: bool,
    pub classification: String,
    pub collisions: Vec<String>,
    pub csoc_x: bool,
    pub csoc_z: bool,
    pub memory: Option<u32>,
    pub memory_z: Option<u32>,
    pub memory_ok: bool,
    pub commuting: bool,
    pub violations: Vec<ViolationJson>,
    pub a7_symmetry: bool,
    pub dfree: DfreeReport,
    pub dfree_ok: bool,
    pub z_expected_ok: Option<bool>,
    pub pi: Option<Vec<usize>>,
    pub pi_source: PiSource,
    pub failed: Vec<String>,
    pub pass: bool,
}

/// Runs every check on a resolved pair. `a7_symmetry` is reported but does
/// not gate `pass`.
pub fn verify_pair(code: &ParsedCode, pair: &ResolvedPair) -> VerifyReport {
    let verdict = pair.family.verdict();
    let strong_dts = verdict.classification.is_strong();
    let csoc_x = is_csoc(&pair.x).map(|r| r.csoc).unwrap_or(false);
    let csoc_z = is_csoc(&pair.z).map(|r| r.csoc).unwrap_or(false);
    let (mx, mz) = (mu_of(&pair.x), mu_of(&pair.z));
    let memory_ok = mx.is_some() && mx == mz && code.m.is_none_or(|m| Some(m) == mx);
    let (commuting, violations) = match is_commuting(&pair.x, &pair.z) {
        Ok(r) => (
            r.commuting,
            r.violations
                .iter()
                .map(|v| ViolationJson {
                    s: v.s,
                    row: v.row,
                    col: v.col,
                })
                .collect(),
        ),
        Err(_) => (false, Vec::new()),
    };
    let a7_symmetry = mx
        .and_then(|m| check_reflection_symmetry(&pair.x, m).ok())
        .is_some_and(|r| r.holds);
    let dfree = match certify_dfree(&pair.x) {
        Ok(c) => DfreeReport {
            value: Some(c.d_free),
            method: Some(c.method.label().to_string()),
            exact_agrees: c.exact_agrees,
            error: None,
        },
        Err(e) => DfreeReport {
            value: None,
            method: None,
            exact_agrees: None,
            error: Some(e.to_string()),
        },
    };
    let w = code.w.unwrap_or_else(|| pair.family.weight());
    let dfree_ok = dfree.value == Some(w as u32 + 1);
    let z_expected_ok = code.z_expected.as_ref().map(|expected| {
        DtsFamily::new(expected.clone())
            .ok()
            .zip(
                qccdts::csoc::parity_supports(&pair.z)
                    .ok()
                    .and_then(|s| DtsFamily::new(s).ok()),
            )
            .is_some_and(|(a, b)| a.same_sets_unordered(&b))
    });

    let mut failed = Vec::new();
    for (name, ok) in [
        ("strong_dts", strong_dts),
        ("csoc_x", csoc_x),
        ("csoc_z", csoc_z),
        ("memory", memory_ok),
        ("commuting", commuting),
        ("dfree", dfree_ok),
        ("z_expected", z_expected_ok.unwrap_or(true)),
    ] {
        if !ok {
            failed.push(name.to_string());
        }
    }
    VerifyReport {
        strong_dts,
        classification: verdict.classification.to_string(),
        collisions: verdict.collisions.iter().map(ToString::to_string).collect(),
        csoc_x,
        csoc_z,
        memory: mx,
        memory_z: mz,
        memory_ok,
        commuting,
        violations,
        a7_symmetry,
        dfree,
        dfree_ok,
        z_expected_ok,
        pi: pair.pi.as_ref().map(Permutation::to_one_based),
        pi_source: pair.pi_source,
        pass: failed.is_empty(),
        failed,
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "strong_dts   {}  {}",
        status(r.strong_dts),
        r.classification
    );
    for c in &r.collisions {
        let _ = writeln!(out, "  {c}");
    }
    let _ = writeln!(out, "csoc_x       {}", status(r.csoc_x));
    let _ = writeln!(out, "csoc_z       {}", status(r.csoc_z));
    let show = |m: Option<u32>| m.map_or_else(|| "undefined".to_string(), |m| m.to_string());
    let _ = writeln!(
        out,
        "memory       {}  mu_X = {}, mu_Z = {}",
        status(r.memory_ok),
        show(r.memory),
        show(r.memory_z)
    );
    let _ = writeln!(out, "commuting    {}", status(r.commuting));
    for v in &r.violations {
        let _ = writeln!(out, "  nonzero D^{} at entry ({}, {})", v.s, v.row, v.col);
    }
    let _ = writeln!(
        out,
        "a7_symmetry  {}  (informational)",
        status(r.a7_symmetry)
    );
    let detail = match (&r.dfree.value, &r.dfree.error) {
        (Some(d), _) => {
            let check = match r.dfree.exact_agrees {
                Some(true) => ", exact search agrees",
                Some(false) => ", exact search disagrees",
                None => ", exact search skipped",
            };
            format!(
                "d_free = {d} ({}{check})",
                r.dfree.method.as_deref().unwrap_or("")
            )
        }
        (None, Some(e)) => e.clone(),
        (None, None) => String::new(),
    };
    let _ = writeln!(out, "dfree        {}  {detail}", status(r.dfree_ok));
    if let Some(ok) = r.z_expected_ok {
        let _ = writeln!(out, "z_expected   {}", status(ok));
    }
    if r.pass {
        let _ = writeln!(out, "result: PASS");
    } else {
        let _ = writeln!(out, "result: FAIL ({})", r.failed.join(", "));
    }
    out
}

pub fn verify(text: &str, convention: Option<bool>, json_out: bool) -> Outcome {
    let (code, pair) = match load(text, convention) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let report = verify_pair(&code, &pair);
    let stdout = if json_out {
        to_json(&report)
    } else {
        render_verify(&report)
    };
    Outcome {
        code: if report.pass { EXIT_PASS } else { EXIT_FAIL },
        stdout,
        stderr: String::new(),
    }
}

#[derive(Serialize)]
struct WitnessJson {
    weight: u32,
    frames: Vec<(usize, String)>,
}

fn witness_json(c: &Codeword) -> WitnessJson {
    WitnessJson {
        weight: c.weight(),
        frames: c
            .nonzero_frames()
            .into_iter()
            .map(|(t, bits)| (t, bits.iter().map(|b| b.to_string()).collect()))
            .collect(),
    }
}

#[derive(Serialize)]
struct DistanceReport {
    d_free: Option<u32>,
    d_free_display: String,
    method: String,
    witness: Option<WitnessJson>,
    column_distances: Vec<u32>,
}

/// Reads the `QCCDTS_MAX_SEARCH` override.
pub fn search_override(raw: Option<&str>) -> Result<Option<u32>, String> {
    raw.map(|v| {
        v.trim()
            .parse::<u32>()
            .map_err(|_| format!("QCCDTS_MAX_SEARCH must be a nonnegative integer, got {v:?}"))
    })
    .transpose()
}

pub fn distance(
    text: &str,
    convention: Option<bool>,
    json_out: bool,
    budget: Option<u32>,
    window: Option<usize>,
    guard_override: Option<u32>,
) -> Outcome {
    let (_, pair) = match load(text, convention) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let x = &pair.x;
    let n = x.cols();
    let mu = mu_of(x).unwrap_or(0) as usize;
    let per_frame = n.max(1) - 1;
    let max_window = (COLUMN_WINDOW_BITS / per_frame.max(1)).saturating_sub(1);
    let j = match window {
        Some(j) if j > max_window => {
            return Outcome::usage(format!(
                "window {j} exceeds the {COLUMN_WINDOW_BITS}-bit column distance limit (max {max_window})"
            ))
        }
        Some(j) => j,
        None => (2 * mu).min(max_window),
    };
    let mut column_distances = Vec::with_capacity(j + 1);
    for i in 0..=j {
        match column_distance(x, i) {
            Ok(d) => column_distances.push(d),
            Err(e) => return Outcome::usage(e.to_string()),
        }
    }

    let mut limits = ExactLimits::default();
    if let Some(g) = guard_override {
        limits.max_budget = limits.max_budget.max(g);
        limits.max_memory = limits.max_memory.max(g);
    }
    let cert: Result<(Option<DistanceCertificate>, String), String> = match budget {
        None if is_csoc(x).is_ok_and(|r| r.csoc) => certify_dfree(x)
            .map(|c| {
                let shown = c.d_free.to_string();
                (Some(c), shown)
            })
            .map_err(|e| e.to_string()),
        _ => {
            let b = budget.unwrap_or_else(|| pair.family.weight() as u32 + 1);
            match dfree_exact_with(x, b, &limits) {
                Ok(ExactDistance::Found(c)) => {
                    let shown = c.d_free.to_string();
                    Ok((Some(c), shown))
                }
                Ok(e @ ExactDistance::ExceedsBudget(_)) => Ok((None, e.to_string())),
                Err(e) => Err(e.to_string()),
            }
        }
    };
    let (cert, shown) = match cert {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let upper = dfree_upper(x).ok();
    let method = cert
        .as_ref()
        .map(|c| c.method.label().to_string())
        .unwrap_or_else(|| "EXACT_SEARCH".to_string());
    let witness = cert
        .as_ref()
        .map(|c| &c.witness)
        .or(upper.as_ref().map(|u| &u.witness));
    let report = DistanceReport {
        d_free: cert.as_ref().map(|c| c.d_free),
        d_free_display: shown,
        method,
        witness: witness.map(witness_json),
        column_distances,
    };
    if json_out {
        return Outcome::ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "d_free = {}", report.d_free_display);
    let _ = writeln!(out, "method = {}", report.method);
    if let Some(w) = witness {
        let _ = writeln!(out, "witness = {w} (weight {})", w.weight());
    }
    let cd: Vec<String> = report.column_distances.iter().map(u32::to_string).collect();
    let _ = writeln!(out, "column distances (j = 0..{j}) = {}", cd.join(", "));
    Outcome::ok(out)
}

fn join_sets(sets: &[&[u32]]) -> String {
    sets.iter()
        .map(|s| {
            let parts: Vec<String> = s.iter().map(u32::to_string).collect();
            format!("{{{}}}", parts.join(", "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn join_g(sets: &[&[u32]]) -> String {
    sets.iter()
        .map(|s| {
            let parts: Vec<String> = s.iter().map(u32::to_string).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_tables(checks: &[RowCheck], single: bool) -> String {
    let rows: Vec<_> = checks
        .iter()
        .map(|c| {
            ROWS.iter()
                .find(|r| r.table == c.table && r.row == c.row)
                .expect("check comes from an embedded row")
        })
        .collect();
    let sets_width = rows
        .iter()
        .flat_map(|r| [join_sets(r.t_sets).len(), join_sets(r.z_sets).len()])
        .chain(["DTS sets (1-based)".len()])
        .max()
        .unwrap_or(0)
        + 2;
    let g_width = rows
        .iter()
        .flat_map(|r| [join_g(r.g_x).len(), join_g(r.g_z).len()])
        .chain(["g (0-based)".len()])
        .max()
        .unwrap_or(0)
        + 2;
    let mut out = String::new();
    let mut current = 0;
    for (c, row) in checks.iter().zip(&rows) {
        if c.table != current {
            if current != 0 {
                out.push('\n');
            }
            current = c.table;
            let title = TABLE_TITLES
                .iter()
                .find(|(t, _)| *t == c.table)
                .map_or("", |(_, s)| *s);
            let _ = writeln!(out, "Table {}: {title}", c.table);
            let _ = writeln!(
                out,
                "{:<4}{:<7}{:<4}{:<3}{:<sets_width$}{:<g_width$}check",
                "No.", "Poly.", "m", "w", "DTS sets (1-based)", "g (0-based)"
            );
        }
        let _ = writeln!(
            out,
            "{:<4}{:<7}{:<4}{:<3}{:<sets_width$}{:<g_width$}{}",
            c.row,
            "X(D)",
            row.m,
            row.w,
            join_sets(row.t_sets),
            join_g(row.g_x),
            status(c.passed())
        );
        let line = format!(
            "{:<4}{:<7}{:<4}{:<3}{:<sets_width$}{}",
            "",
            "Z(D)",
            "",
            "",
            join_sets(row.z_sets),
            join_g(row.g_z)
        );
        let _ = writeln!(out, "{}", line.trim_end());
        for f in &c.failures {
            let _ = writeln!(out, "    FAIL table {} row {}: {f}", c.table, c.row);
        }
        if single {
            let _ = writeln!(out);
            let _ = writeln!(out, "X(D) = {}", c.x);
            let _ = writeln!(out, "Z(D) = {}", c.z);
            let pi: Vec<String> = c.pi.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "pi = ({})", pi.join(","));
            let _ = writeln!(out, "classification = {}", c.classification);
            let _ = writeln!(out, "memory = {}", c.memory);
            let _ = writeln!(out, "csoc_x = {}, csoc_z = {}", c.csoc_x, c.csoc_z);
            let _ = writeln!(out, "commuting = {}", c.commuting);
            let _ = writeln!(out, "a7_symmetry = {} (informational)", c.a7_symmetry);
            let d = c.dfree.map_or_else(|| "n/a".to_string(), |d| d.to_string());
            let exact = match c.dfree_exact_agrees {
                Some(true) => ", exact search agrees",
                Some(false) => ", exact search disagrees",
                None => ", exact search skipped",
            };
            let _ = writeln!(out, "d_free = {d} ({}{exact})", c.dfree_method);
            let _ = writeln!(out, "quantum rate = {}", c.rate);
        }
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    let _ = writeln!(out, "\n{passed}/{} rows PASS", checks.len());
    out
}

pub fn tables(table: Option<u8>, row: Option<u8>, json_out: bool) -> Outcome {
    if let Some(t) = table {
        if !(1..=3).contains(&t) {
            return Outcome::usage(format!("no table {t}; tables are 1, 2 and 3"));
        }
    }
    if row.is_some() && table.is_none() {
        return Outcome::usage("--row requires --table");
    }
    let selected: Vec<_> = ROWS
        .iter()
        .filter(|r| table.is_none_or(|t| r.table == t) && row.is_none_or(|n| r.row == n))
        .collect();
    if selected.is_empty() {
        return Outcome::usage(format!(
            "table {} has no row {}",
            table.unwrap_or(0),
            row.unwrap_or(0)
        ));
    }
    let checks: Vec<RowCheck> = selected.into_iter().map(check_row).collect();
    let all_pass = checks.iter().all(RowCheck::passed);
    let stdout = if json_out {
        to_json(&json!({
            "rows": checks,
            "passed": checks.iter().filter(|c| c.passed()).count(),
            "total": checks.len(),
        }))
    } else {
        render_tables(&checks, row.is_some())
    };
    Outcome {
        code: if all_pass { EXIT_PASS } else { EXIT_FAIL },
        stdout,
        stderr: String::new(),
    }
}

pub struct SearchArgs {
    pub sets: usize,
    pub weight: usize,
    pub max_scope: u32,
    pub limit: Option<usize>,
    pub full_strong: bool,
    pub one_based: bool,
}

pub fn search(args: &SearchArgs, guard_override: Option<u32>) -> Outcome {
    let cap = |default: u32| guard_override.map_or(default, |g| g.max(default));
    if args.sets == 0 || args.weight == 0 {
        return Outcome::usage("--sets and --weight must be positive");
    }
    if args.sets as u32 > cap(SEARCH_MAX_SETS as u32) {
        return Outcome::usage(format!(
            "--sets {} exceeds the guard of {SEARCH_MAX_SETS}",
            args.sets
        ));
    }
    if args.weight as u32 > cap(SEARCH_MAX_WEIGHT as u32) {
        return Outcome::usage(format!(
            "--weight {} exceeds the guard of {SEARCH_MAX_WEIGHT}",
            args.weight
        ));
    }
    if args.max_scope > cap(SEARCH_MAX_SCOPE) {
        return Outcome::usage(format!(
            "--max-scope {} exceeds the guard of {SEARCH_MAX_SCOPE}",
            args.max_scope
        ));
    }
    let mut out = String::new();
    let found = search_strong_dts(args.sets, args.weight, args.max_scope)
        .filter(|f| !args.full_strong || f.classification() == Classification::FullStrong)
        .take(args.limit.unwrap_or(usize::MAX));
    for family in found {
        let line = serde_json::to_string(&FamilyJson::from_family(&family, args.one_based))
            .expect("family serializes");
        out.push_str(&line);
        out.push('\n');
    }
    Outcome::ok(out)
}
