//! Machine-readable outputs: JSON and CSV matrices, analysis summaries, DOT.
//!
//! Every state and component index written here is 1-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bcncat_core::{
    primitivity, Analysis, BoolMatrix, Category, CategoryMatrix, PairAnalysis, SccType, TimeStepSets,
};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn legend() -> BTreeMap<String, &'static str> {
    Category::ALL
        .iter()
        .map(|c| (c.code().to_string(), c.name()))
        .collect()
}

#[derive(Serialize)]
struct CategoryMatrixJson<'a> {
    kind: &'static str,
    dimension: usize,
    matrix: Vec<Vec<u8>>,
    legend: BTreeMap<String, &'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<Vec<usize>>>,
    #[serde(flatten)]
    extra: BTreeMap<&'a str, Value>,
}

fn components_1based(ctx: &Analysis) -> Vec<Vec<usize>> {
    let sccs = ctx.sccs();
    (0..sccs.component_count())
        .map(|c| sccs.members(c).iter().map(|v| v + 1).collect())
        .collect()
}

pub fn rows_csv(rows: &[Vec<u8>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// State-level category matrix. `extra` adds top-level JSON fields.
pub fn state_matrix(c: &CategoryMatrix, format: Format, extra: BTreeMap<&str, Value>) -> String {
    match format {
        Format::Csv => rows_csv(&c.codes()),
        Format::Json => to_json(&CategoryMatrixJson {
            kind: "state",
            dimension: c.dim(),
            matrix: c.codes(),
            legend: legend(),
            components: None,
            extra,
        }),
    }
}

pub fn condensed_matrix(c: &CategoryMatrix, ctx: &Analysis, format: Format) -> String {
    match format {
        Format::Csv => rows_csv(&c.codes()),
        Format::Json => to_json(&CategoryMatrixJson {
            kind: "condensation",
            dimension: c.dim(),
            matrix: c.codes(),
            legend: legend(),
            components: Some(components_1based(ctx)),
            extra: BTreeMap::new(),
        }),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

/// Reads a category matrix from JSON: either `{"matrix": [[...]]}` or a bare array of rows.
pub fn parse_category_matrix(text: &str) -> Result<CategoryMatrix, CliError> {
    let invalid = |msg: String| CliError::Invalid {
        field: "matrix".into(),
        message: msg,
    };
    let value: Value = serde_json::from_str(text).map_err(|e| invalid(format!("invalid JSON: {e}")))?;
    let rows = match &value {
        Value::Object(o) => o.get("matrix").cloned().unwrap_or(Value::Null),
        v => v.clone(),
    };
    let rows: Vec<Vec<u8>> =
        serde_json::from_value(rows).map_err(|e| invalid(format!("expected rows of codes: {e}")))?;
    CategoryMatrix::from_codes(&rows)
        .ok_or_else(|| invalid("expected a square matrix of codes 0-3".into()))
}

#[derive(Serialize)]
struct ComponentJson {
    index: usize,
    members: Vec<usize>,
    #[serde(rename = "type")]
    scc_type: &'static str,
    loop_number: usize,
}

#[derive(Serialize)]
struct AnalysisJson<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
    states: usize,
    components: Vec<ComponentJson>,
    condensation_edges: Vec<[usize; 2]>,
    controllable: bool,
    irreducible: bool,
    primitive: bool,
    exponent: Option<usize>,
}

pub fn analysis_summary(ctx: &Analysis, name: Option<&str>) -> Result<String, CliError> {
    let sccs = ctx.sccs();
    let components = sccs
        .iter()
        .enumerate()
        .map(|(k, (members, t, eta))| ComponentJson {
            index: k + 1,
            members: members.iter().map(|v| v + 1).collect(),
            scc_type: match t {
                SccType::T1 => "T1",
                SccType::T2 => "T2",
            },
            loop_number: eta,
        })
        .collect();
    let irreducible = sccs.component_count() == 1 && sccs.scc_type(0) == SccType::T2;
    let p = primitivity(ctx.one_step())?;
    Ok(to_json(&AnalysisJson {
        name,
        states: ctx.order(),
        components,
        condensation_edges: ctx.condensation().edges().map(|(a, b)| [a + 1, b + 1]).collect(),
        controllable: ctx.controllability().is_all_ones(),
        irreducible,
        primitive: p.primitive,
        exponent: p.exponent,
    }))
}

#[derive(Serialize)]
struct PathJson {
    path: Vec<usize>,
    eta: usize,
    residues: Vec<usize>,
    lifted: Vec<usize>,
    fixed_length: Option<usize>,
}

#[derive(Serialize)]
struct PairJson {
    from: usize,
    to: usize,
    category: u8,
    category_name: &'static str,
    common_modulus: usize,
    residues: Vec<usize>,
    paths: Vec<PathJson>,
}

pub fn pair_report(pair: &PairAnalysis) -> String {
    to_json(&PairJson {
        from: pair.source + 1,
        to: pair.target + 1,
        category: pair.category.code(),
        category_name: pair.category.name(),
        common_modulus: pair.common_modulus,
        residues: pair.residues.iter().copied().collect(),
        paths: pair
            .paths
            .iter()
            .map(|p| PathJson {
                path: p.path.iter().map(|c| c + 1).collect(),
                eta: p.eta,
                residues: p.residues.residues.iter().copied().collect(),
                lifted: p.lifted.iter().copied().collect(),
                fixed_length: p.fixed_length,
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct ReachableJson<'a> {
    from: usize,
    to: usize,
    kmax: usize,
    rho: &'a [usize],
    sigma: &'a [usize],
    category: u8,
    category_name: &'static str,
}

pub fn time_steps(s: &TimeStepSets) -> String {
    to_json(&ReachableJson {
        from: s.source + 1,
        to: s.target + 1,
        kmax: s.k_max,
        rho: &s.rho_prefix,
        sigma: &s.sigma_prefix,
        category: s.tail.code(),
        category_name: s.tail.name(),
    })
}

#[derive(Serialize)]
struct FixedTimeJson {
    k: u64,
    controllable: bool,
    reachable_pairs: usize,
    matrix: Vec<Vec<u8>>,
}

pub fn fixed_time(k: u64, power: &BoolMatrix, format: Format) -> String {
    match format {
        Format::Csv => rows_csv(&power.to_rows()),
        Format::Json => to_json(&FixedTimeJson {
            k,
            controllable: power.is_all_ones(),
            reachable_pairs: power.count_ones(),
            matrix: power.to_rows(),
        }),
    }
}

/// State digraph with one cluster per SCC.
pub fn state_dot(ctx: &Analysis) -> String {
    let sccs = ctx.sccs();
    let mut out = String::from("digraph state {\n");
    for (k, (members, _, eta)) in sccs.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{} {{", k + 1);
        let _ = writeln!(out, "    label=\"X{} (eta={eta})\";", k + 1);
        for v in members {
            let _ = writeln!(out, "    d{};", v + 1);
        }
        out.push_str("  }\n");
    }
    for (u, v) in ctx.digraph().edges() {
        let _ = writeln!(out, "  d{} -> d{};", u + 1, v + 1);
    }
    out.push_str("}\n");
    out
}

pub fn condensation_dot(ctx: &Analysis) -> String {
    let mut out = String::from("digraph condensation {\n");
    for k in 0..ctx.condensation().order() {
        let _ = writeln!(out, "  X{};", k + 1);
    }
    for (a, b) in ctx.condensation().edges() {
        let _ = writeln!(out, "  X{} -> X{};", a + 1, b + 1);
    }
    out.push_str("}\n");
    out
}
