use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclic_lrc::distance::{min_distance_bracket, min_distance_exact};
use cyclic_lrc::gf::FieldElement;
use cyclic_lrc::locality::{build_partitions, repair, verify_availability};
use cyclic_lrc::search::{check_reference_rows, optimize_dg, DEFAULT_SEARCH_CAP};
use cyclic_lrc::{ConstructionParams, CyclicLrc};
use cyclic_lrc_cli::report::{
    build_code_report, format_set, render_availability, render_code_report, render_distance,
    DistanceReport, RepairDemoReport, RepairOutcome, SearchReport, TableReport, TableRowReport,
    VerifyReport, SCHEMA_VERSION,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Construct cyclic locally repairable codes, certify their bounds and
/// availability, and demonstrate erasure repair.
#[derive(Parser)]
#[command(name = "lrc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CodeArgs {
    /// Pairwise-coprime component lengths, e.g. --n 3,5
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u64>,
    /// Local distances rho_i, one per component
    #[arg(long, value_delimiter = ',', required = true)]
    rho: Vec<u64>,
    /// Offsets b_i coprime to n_i (default: all 1)
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<u64>>,
    /// Global shift l (default: 0)
    #[arg(long, default_value_t = 0)]
    l: u64,
    /// Global exponent set D_g
    #[arg(long, value_delimiter = ',')]
    dg: Option<Vec<u64>>,
    /// Field order q with n | q - 1 (default: smallest such prime power)
    #[arg(long)]
    q: Option<u64>,
}

impl CodeArgs {
    fn to_params(&self) -> cyclic_lrc::Result<ConstructionParams> {
        let mut params = ConstructionParams::new(&self.n, &self.rho)?;
        if let Some(b) = &self.b {
            params = params.with_offsets(b)?;
        }
        params = params.with_shift(self.l);
        if let Some(dg) = &self.dg {
            params = params.with_global_set(dg)?;
        }
        if let Some(q) = self.q {
            params = params.with_field_order(q)?;
        }
        Ok(params)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and report bounds, availability, and a distance bracket
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the built-in reference parameter table and re-verify its values
    ParamTable {
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
        /// Show a single row (1-based)
        #[arg(long)]
        row: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for the size-m global exponent set maximizing the
    /// Hartmann-Tzeng bound
    SearchDg {
        #[command(flatten)]
        code: CodeArgs,
        /// Number of global exponents to choose
        #[arg(long)]
        size: usize,
        /// Allow candidates that overlap the local sets
        #[arg(long)]
        allow_overlap: bool,
        /// Cap on the number of candidate subsets
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the exact minimum distance, or a bracket when over budget
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        /// Exact enumeration cap on the message-space size q^k
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
        /// Random samples when bracketing
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify locality and strong orthogonality group by group
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Erase positions from a random codeword and repair through every
    /// partition that admits the pattern
    RepairDemo {
        #[command(flatten)]
        code: CodeArgs,
        /// Positions to erase, e.g. --erase 0,7
        #[arg(long, value_delimiter = ',', required = true)]
        erase: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    message: String,
    code: u8,
}

fn usage_error(e: impl Display) -> Failure {
    Failure {
        message: e.to_string(),
        code: 2,
    }
}

type CmdOutput = (String, Option<PathBuf>, u8);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((output, out_path, code)) => {
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{output}");
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<CmdOutput, Failure> {
    match command {
        Command::Construct { code, format, out } => cmd_construct(&code, format, out),
        Command::ParamTable { format, row, out } => cmd_param_table(format, row, out),
        Command::SearchDg {
            code,
            size,
            allow_overlap,
            cap,
            format,
            out,
        } => cmd_search_dg(&code, size, allow_overlap, cap, format, out),
        Command::Distance {
            code,
            budget,
            trials,
            seed,
            format,
            out,
        } => cmd_distance(&code, budget, trials, seed, format, out),
        Command::Verify { code, format, out } => cmd_verify(&code, format, out),
        Command::RepairDemo {
            code,
            erase,
            seed,
            format,
            out,
        } => cmd_repair_demo(&code, &erase, seed, format, out),
    }
}

fn to_json(value: &impl serde::Serialize) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(usage_error)
}

fn cmd_construct(
    args: &CodeArgs,
    format: Format,
    out: Option<PathBuf>,
) -> Result<CmdOutput, Failure> {
    let params = args.to_params().map_err(usage_error)?;
    let overlap = params.global_overlap();
    if !overlap.is_empty() {
        eprintln!(
            "warning: global exponents {} already lie in a local set",
            format_set(&overlap)
        );
    }
    let report = build_code_report(params, 10_000, 0).map_err(usage_error)?;
    let output = match format {
        Format::Text => render_code_report(&report),
        Format::Json => to_json(&report)?,
    };
    Ok((output, out, 0))
}

fn cmd_param_table(
    format: TableFormat,
    row: Option<usize>,
    out: Option<PathBuf>,
) -> Result<CmdOutput, Failure> {
    let checks = check_reference_rows();
    let mut rows: Vec<TableRowReport> = checks
        .iter()
        .enumerate()
        .map(|(idx, check)| TableRowReport {
            index: idx + 1,
            n: check.row.length(),
            n1: check.row.lengths[0],
            n2: check.row.lengths[1],
            dg: check.row.global_set.clone(),
            ht: check.computed_distance_bound,
            k: check.computed_dimension,
            bound: check.computed_dimension_bound,
            certified_ht: check.row.distance_bound,
            certified_k: check.row.dimension,
            certified_bound: check.row.dimension_bound,
            pass: check.pass,
        })
        .collect();
    if let Some(wanted) = row {
        if wanted == 0 || wanted > rows.len() {
            return Err(usage_error(format!(
                "row {wanted} out of range 1..={}",
                rows.len()
            )));
        }
        rows = vec![rows[wanted - 1].clone()];
    }
    let all_pass = rows.iter().all(|r| r.pass);
    for bad in rows.iter().filter(|r| !r.pass) {
        eprintln!(
            "mismatch in row {}: computed (d >= {}, k = {}, bound = {}) vs certified ({}, {}, {})",
            bad.index, bad.ht, bad.k, bad.bound, bad.certified_ht, bad.certified_k, bad.certified_bound
        );
    }

    let output = match format {
        TableFormat::Csv => {
            let mut s = String::from("n,n1,n2,dg,ht,k,bound\n");
            for r in &rows {
                let dg: Vec<String> = r.dg.iter().map(u64::to_string).collect();
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.n,
                    r.n1,
                    r.n2,
                    dg.join(";"),
                    r.ht,
                    r.k,
                    r.bound
                ));
            }
            s
        }
        TableFormat::Text => {
            let mut s = format!(
                "{:>3} {:>3} {:>3} {:>3}  {:<28} {:>4} {:>3} {:>5}  check\n",
                "row", "n", "n1", "n2", "D_g", "d>=", "k", "bound"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:>3} {:>3} {:>3} {:>3}  {:<28} {:>4} {:>3} {:>5}  {}\n",
                    r.index,
                    r.n,
                    r.n1,
                    r.n2,
                    format_set(&r.dg),
                    r.ht,
                    r.k,
                    r.bound,
                    if r.pass { "ok" } else { "MISMATCH" }
                ));
            }
            s
        }
        TableFormat::Json => to_json(&TableReport {
            schema: SCHEMA_VERSION,
            rows: rows.clone(),
            all_pass,
        })?,
    };
    Ok((output, out, u8::from(!all_pass)))
}

fn cmd_search_dg(
    args: &CodeArgs,
    size: usize,
    allow_overlap: bool,
    cap: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<CmdOutput, Failure> {
    if args.dg.is_some() {
        return Err(usage_error(
            "search-dg chooses the global set itself; do not pass --dg",
        ));
    }
    let params = args.to_params().map_err(usage_error)?;
    let result = optimize_dg(&params, size, allow_overlap, cap).map_err(usage_error)?;
    let report = SearchReport {
        schema: SCHEMA_VERSION,
        lengths: params.lengths().to_vec(),
        rhos: params.rhos().to_vec(),
        base_set: params.base_defining_set().to_vec(),
        requested_size: size,
        global_set: result.global_set.clone(),
        ht: result.ht,
        dimension: result.dimension,
        candidates: result.candidates,
    };
    let output = match format {
        Format::Text => format!(
            "best D_g = {} with Hartmann-Tzeng bound d >= {}, k = {} ({} candidates examined)\n",
            format_set(&report.global_set),
            report.ht,
            report.dimension,
            report.candidates
        ),
        Format::Json => to_json(&report)?,
    };
    Ok((output, out, 0))
}

fn cmd_distance(
    args: &CodeArgs,
    budget: u64,
    trials: u64,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<CmdOutput, Failure> {
    let params = args.to_params().map_err(usage_error)?;
    let code = CyclicLrc::build(params).map_err(usage_error)?;
    let within_budget = (code.field().order() as u128)
        .checked_pow(code.dimension() as u32)
        .is_some_and(|size| size <= budget as u128);
    let result = if within_budget {
        min_distance_exact(&code, budget)
    } else {
        min_distance_bracket(&code, trials, seed)
    };
    let report = DistanceReport {
        schema: SCHEMA_VERSION,
        length: code.length() as u64,
        dimension: code.dimension() as u64,
        field_order: code.field().order(),
        result,
    };
    let output = match format {
        Format::Text => format!(
            "[n = {}, k = {}] over GF({})\n{}",
            report.length,
            report.dimension,
            report.field_order,
            render_distance(&report.result)
        ),
        Format::Json => to_json(&report)?,
    };
    Ok((output, out, 0))
}

fn cmd_verify(args: &CodeArgs, format: Format, out: Option<PathBuf>) -> Result<CmdOutput, Failure> {
    let params = args.to_params().map_err(usage_error)?;
    let code = CyclicLrc::build(params).map_err(usage_error)?;
    let availability = verify_availability(&code);
    let all_pass = availability.all_pass();
    let report = VerifyReport {
        schema: SCHEMA_VERSION,
        length: code.length() as u64,
        dimension: code.dimension() as u64,
        availability,
        all_pass,
    };
    let output = match format {
        Format::Text => format!(
            "[n = {}, k = {}] over GF({})\n{}{}\n",
            report.length,
            report.dimension,
            code.field().order(),
            render_availability(&report.availability),
            if all_pass {
                "verification: all groups pass"
            } else {
                "verification: FAILED"
            }
        ),
        Format::Json => to_json(&report)?,
    };
    Ok((output, out, u8::from(!all_pass)))
}

fn cmd_repair_demo(
    args: &CodeArgs,
    erase: &[usize],
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<CmdOutput, Failure> {
    let params = args.to_params().map_err(usage_error)?;
    let code = CyclicLrc::build(params).map_err(usage_error)?;
    let mut erased_positions: Vec<usize> = erase.to_vec();
    erased_positions.sort_unstable();
    erased_positions.dedup();
    for &p in &erased_positions {
        if p >= code.length() {
            return Err(usage_error(format!(
                "erase position {p} out of range 0..{}",
                code.length()
            )));
        }
    }

    let field = code.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let message: Vec<FieldElement> = (0..code.dimension())
        .map(|_| field.element(rng.random_range(0..field.order())).unwrap())
        .collect();
    let original = code.encode(&message).map_err(usage_error)?;
    let mut word: Vec<Option<FieldElement>> = original.iter().copied().map(Some).collect();
    for &p in &erased_positions {
        word[p] = None;
    }

    let family = build_partitions(code.params());
    let mut outcomes = Vec::new();
    for partition in 0..family.partition_count() {
        let groups_used: Vec<Vec<u64>> = family
            .groups(partition)
            .iter()
            .filter(|group| group.iter().any(|&p| word[p].is_none()))
            .map(|group| group.iter().map(|&p| p as u64).collect())
            .collect();
        match repair(&code, &word, partition) {
            Ok(repaired) => outcomes.push(RepairOutcome {
                partition,
                groups_used,
                repaired: true,
                matches_original: repaired == original,
                error: None,
            }),
            Err(e) => outcomes.push(RepairOutcome {
                partition,
                groups_used,
                repaired: false,
                matches_original: false,
                error: Some(e.to_string()),
            }),
        }
    }

    let successes: Vec<&RepairOutcome> = outcomes.iter().filter(|o| o.repaired).collect();
    if successes.is_empty() {
        return Err(Failure {
            message: "no partition admits the erasure pattern".into(),
            code: 2,
        });
    }
    let all_agree = successes.iter().all(|o| o.matches_original);
    let report = RepairDemoReport {
        schema: SCHEMA_VERSION,
        length: code.length() as u64,
        dimension: code.dimension() as u64,
        seed,
        erased_positions: erased_positions.iter().map(|&p| p as u64).collect(),
        outcomes,
        all_agree,
    };

    let output = match format {
        Format::Text => {
            let mut s = format!(
                "erased {} from a random codeword of [n = {}, k = {}]\n",
                format_set(&report.erased_positions),
                report.length,
                report.dimension
            );
            for o in &report.outcomes {
                let groups: Vec<String> = o.groups_used.iter().map(|g| format_set(g)).collect();
                if o.repaired {
                    s.push_str(&format!(
                        "partition {}: repaired via groups {}; {}\n",
                        o.partition,
                        groups.join(" and "),
                        if o.matches_original {
                            "matches the original"
                        } else {
                            "DIFFERS from the original"
                        }
                    ));
                } else {
                    s.push_str(&format!(
                        "partition {}: not repairable ({})\n",
                        o.partition,
                        o.error.as_deref().unwrap_or("unknown")
                    ));
                }
            }
            let repaired_groups: Vec<String> = report
                .outcomes
                .iter()
                .filter(|o| o.repaired)
                .flat_map(|o| o.groups_used.iter().map(|g| format_set(g)))
                .collect();
            if all_agree {
                s.push_str(&format!(
                    "repaired via groups {}; results agree\n",
                    repaired_groups.join(" and ")
                ));
            } else {
                s.push_str("results DISAGREE\n");
            }
            s
        }
        Format::Json => to_json(&report)?,
    };
    Ok((output, out, u8::from(!all_agree)))
}
