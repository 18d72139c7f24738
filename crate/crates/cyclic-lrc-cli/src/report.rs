//! Machine-readable reports and their text renderings.
//!
//! Every JSON document carries a top-level `schema` field; reports hold
//! plain integers only, so they round-trip losslessly through serde.

use cyclic_lrc::bounds::BoundReport;
use cyclic_lrc::distance::{min_distance_bracket, DistanceMethod, DistanceResult};
use cyclic_lrc::locality::{verify_availability, AvailabilityReport};
use cyclic_lrc::{ConstructionParams, CyclicLrc, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Echo of the construction parameters with the resolved field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub lengths: Vec<u64>,
    pub rhos: Vec<u64>,
    pub offsets: Vec<u64>,
    pub shift: u64,
    pub global_set: Vec<u64>,
    pub field_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub characteristic: u64,
    pub extension_degree: u32,
    pub order: u64,
    /// Modulus coefficients over GF(p), lowest degree first.
    pub modulus: Vec<u64>,
    pub modulus_string: String,
}

/// The defining set with per-source annotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningSetInfo {
    pub local: Vec<Vec<u64>>,
    pub global: Vec<u64>,
    pub full: Vec<u64>,
    pub size: u64,
    /// Global exponents already covered by a local set.
    pub overlap: Vec<u64>,
}

/// Everything the `construct` command reports about one code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub schema: u32,
    pub params: ParamsEcho,
    pub field: FieldInfo,
    pub length: u64,
    pub dimension: u64,
    /// Generator polynomial coefficients as packed element indices,
    /// lowest degree first.
    pub generator: Vec<u32>,
    pub defining_set: DefiningSetInfo,
    pub bounds: BoundReport,
    pub availability: AvailabilityReport,
    pub distance: DistanceResult,
}

/// Builds a code and assembles the full report: bounds, availability,
/// and a bracketed distance estimate (deterministic for a fixed seed).
pub fn build_code_report(
    params: ConstructionParams,
    trials: u64,
    seed: u64,
) -> Result<CodeReport> {
    let code = CyclicLrc::build(params)?;
    Ok(report_for_code(&code, min_distance_bracket(&code, trials, seed)))
}

pub fn report_for_code(code: &CyclicLrc, distance: DistanceResult) -> CodeReport {
    let params = code.params();
    let field = code.field();
    let local: Vec<Vec<u64>> = (0..params.component_count())
        .map(|i| params.local_defining_set(i).unwrap().to_vec())
        .collect();
    CodeReport {
        schema: SCHEMA_VERSION,
        params: ParamsEcho {
            lengths: params.lengths().to_vec(),
            rhos: params.rhos().to_vec(),
            offsets: params.offsets().to_vec(),
            shift: params.shift(),
            global_set: params.global_set(),
            field_order: field.order(),
        },
        field: FieldInfo {
            characteristic: field.characteristic(),
            extension_degree: field.extension_degree(),
            order: field.order(),
            modulus: field.modulus().to_vec(),
            modulus_string: field.modulus_string(),
        },
        length: code.length() as u64,
        dimension: code.dimension() as u64,
        generator: code
            .generator_poly()
            .coeffs()
            .iter()
            .map(|c| c.index())
            .collect(),
        defining_set: DefiningSetInfo {
            local,
            global: params.global_set(),
            full: code.defining_set().to_vec(),
            size: code.defining_set().len() as u64,
            overlap: params.global_overlap(),
        },
        bounds: BoundReport::evaluate(code),
        availability: verify_availability(code),
        distance,
    }
}

pub fn format_set(set: &[u64]) -> String {
    let inner: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn format_list(list: &[u64]) -> String {
    list.iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Annotated defining-set table: one column per exponent, one row per
/// source set, marks where alpha^e is a root.
pub fn render_defining_set_table(report: &CodeReport) -> String {
    let n = report.length as usize;
    let width = (n - 1).to_string().len().max(2);
    let mut out = String::new();
    let row = |label: &str, members: &dyn Fn(u64) -> bool| -> String {
        let mut line = format!("  {label:<5}|");
        for e in 0..n as u64 {
            let mark = if members(e) { "x" } else { "" };
            line.push_str(&format!(" {mark:>width$}"));
        }
        line.push('\n');
        line
    };
    let mut header = format!("  {:<5}|", "e");
    for e in 0..n {
        header.push_str(&format!(" {e:>width$}"));
    }
    out.push_str(&header);
    out.push('\n');
    for (i, local) in report.defining_set.local.iter().enumerate() {
        let label = format!("D_{}", i + 1);
        out.push_str(&row(&label, &|e| local.contains(&e)));
    }
    out.push_str(&row("D_g", &|e| report.defining_set.global.contains(&e)));
    out.push_str(&row("D", &|e| report.defining_set.full.contains(&e)));
    out
}

pub fn render_availability(report: &AvailabilityReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "  strong orthogonality: {}\n",
        if report.strongly_orthogonal { "ok" } else { "VIOLATED" }
    ));
    for profile in &report.profiles {
        let checks: Vec<_> = report
            .groups
            .iter()
            .filter(|g| g.partition == profile.component)
            .collect();
        let passed = checks.iter().filter(|g| g.pass).count();
        out.push_str(&format!(
            "  partition {} (group size {}, rho {}, r {}): {}/{} groups verified\n",
            profile.component,
            profile.group_size,
            profile.rho,
            profile.r,
            passed,
            checks.len()
        ));
        for check in checks {
            let method = match check.method {
                cyclic_lrc::locality::LocalDistanceMethod::Exhaustive => "exhaustive",
                cyclic_lrc::locality::LocalDistanceMethod::ParityRank => "parity-rank",
            };
            out.push_str(&format!(
                "    group {:>2} {:<20} d_local {} {} ({}) {}\n",
                check.group,
                format_set(&check.positions.iter().map(|&p| p as u64).collect::<Vec<_>>()),
                if check.exact { "=" } else { ">=" },
                check.bound,
                method,
                if check.pass { "ok" } else { "FAIL" }
            ));
        }
    }
    out
}

pub fn render_distance(distance: &DistanceResult) -> String {
    match distance.method {
        DistanceMethod::Exhaustive => format!(
            "  minimum distance = {} (exact, {} weight evaluations)\n",
            distance.lower, distance.evaluations
        ),
        DistanceMethod::Sampled => format!(
            "  minimum distance in [{}, {}] (lower: Hartmann-Tzeng, upper: {} sampled words)\n",
            distance.lower, distance.upper, distance.evaluations
        ),
    }
}

pub fn render_code_report(report: &CodeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "cyclic LRC [n = {}, k = {}] over GF({})\n",
        report.length, report.dimension, report.field.order
    ));
    out.push_str(&format!(
        "  lengths {} | rho {} | offsets {} | shift {}\n",
        format_list(&report.params.lengths),
        format_list(&report.params.rhos),
        format_list(&report.params.offsets),
        report.params.shift,
    ));
    out.push_str(&format!(
        "  field GF({}^{}), modulus {}\n",
        report.field.characteristic, report.field.extension_degree, report.field.modulus_string
    ));
    out.push_str(&format!(
        "  generator coefficients (packed, low degree first): [{}]\n",
        report
            .generator
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    ));
    if !report.defining_set.overlap.is_empty() {
        out.push_str(&format!(
            "  note: global exponents {} overlap the local sets\n",
            format_set(&report.defining_set.overlap)
        ));
    }
    out.push_str("defining set:\n");
    out.push_str(&render_defining_set_table(report));
    out.push_str("bounds:\n");
    let b = &report.bounds;
    out.push_str(&format!(
        "  BCH            d >= {:<3} (start {}, step {})\n",
        b.bch, b.bch_witness.start, b.bch_witness.step1
    ));
    out.push_str(&format!(
        "  Hartmann-Tzeng d >= {:<3} (start {}, steps {}/{}, delta {}, gamma {})\n",
        b.ht,
        b.ht_witness.start,
        b.ht_witness.step1,
        b.ht_witness.step2,
        b.ht_witness.delta,
        b.ht_witness.gamma
    ));
    out.push_str(&format!("  product        d >= {}\n", b.product_distance));
    if let Some(min) = b.singleton_like_min {
        out.push_str(&format!("  Singleton-like d <= {min}\n"));
    }
    if let Some(cube) = &b.cube_dim_bound {
        out.push_str(&format!(
            "  cube bound     k <= {} at d = {} (xi {}, v {})\n",
            cube.bound, cube.distance, cube.xi, cube.v
        ));
    }
    if let Some(rect) = &b.rect_dim_bound {
        out.push_str(&format!(
            "  rect bound     k <= {} at d = {} via rectangle {}\n",
            rect.bound,
            rect.distance,
            rect.sides
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join("x")
        ));
    }
    out.push_str("availability:\n");
    out.push_str(&render_availability(&report.availability));
    out.push_str("distance:\n");
    out.push_str(&render_distance(&report.distance));
    out
}

/// Wrapper for the `distance` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub schema: u32,
    pub length: u64,
    pub dimension: u64,
    pub field_order: u64,
    pub result: DistanceResult,
}

/// Wrapper for the `search-dg` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema: u32,
    pub lengths: Vec<u64>,
    pub rhos: Vec<u64>,
    pub base_set: Vec<u64>,
    pub requested_size: usize,
    pub global_set: Vec<u64>,
    pub ht: u64,
    pub dimension: u64,
    pub candidates: u64,
}

/// Wrapper for the `verify` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub length: u64,
    pub dimension: u64,
    pub availability: AvailabilityReport,
    pub all_pass: bool,
}

/// Per-partition outcome of a repair demonstration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairOutcome {
    pub partition: usize,
    /// Groups of the partition touched by at least one erasure.
    pub groups_used: Vec<Vec<u64>>,
    pub repaired: bool,
    pub matches_original: bool,
    pub error: Option<String>,
}

/// Wrapper for the `repair-demo` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairDemoReport {
    pub schema: u32,
    pub length: u64,
    pub dimension: u64,
    pub seed: u64,
    pub erased_positions: Vec<u64>,
    pub outcomes: Vec<RepairOutcome>,
    pub all_agree: bool,
}

/// One row of the `param-table` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowReport {
    pub index: usize,
    pub n: u64,
    pub n1: u64,
    pub n2: u64,
    pub dg: Vec<u64>,
    pub ht: u64,
    pub k: u64,
    pub bound: u64,
    pub certified_ht: u64,
    pub certified_k: u64,
    pub certified_bound: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub schema: u32,
    pub rows: Vec<TableRowReport>,
    pub all_pass: bool,
}
