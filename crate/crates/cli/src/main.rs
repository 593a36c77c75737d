//! Command-line surface: analyze a single function, sweep families, or run
//! the verification suites.
//!
//! Exit codes: 0 success (possibly with a warning banner for flagged
//! literal failures), 1 usage error, 2 an unconditional identity failed
//! (which signals an implementation bug, not a property of the input).

use anyhow::{bail, Context};
use boolcube::cube::{BooleanFunction, Family, FamilySpec};
use boolcube::inequality::{analyze, Analysis, AnalysisOptions};
use boolcube::partition::DEFAULT_SOLVER_BUDGET;
use boolcube::verify::{run_all, VerifyConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "boolcube", about = "Exact analysis of Boolean functions: spectra, additive energy, subcube partitions, and the uncertainty inequalities relating them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a single function.
    Analyze(AnalyzeArgs),
    /// One row per (family, n) over a range of dimensions.
    Sweep(SweepArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FunctionSource {
    /// Family name: constant0, constant1, dictator, parity, and, or,
    /// majority, maj4, tribes, inner-product, address, random.
    #[arg(long)]
    family: Option<String>,
    /// Dictator coordinate (1-based).
    #[arg(long, default_value_t = 1)]
    i: u32,
    /// Tribe width for the tribes family.
    #[arg(long, default_value_t = 2)]
    width: u32,
    /// Density for the random family.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Seed for the random family.
    #[arg(long, default_value_t = 0)]
    rand_seed: u64,
    /// Inline truth table: '0'/'1' string or "hex:..." form.
    #[arg(long)]
    truth_table: Option<String>,
    /// File containing a truth table in the same format.
    #[arg(long)]
    truth_table_file: Option<String>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: FunctionSource,
    /// Dimension.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Node budget for the exact partition solver.
    #[arg(long, default_value_t = DEFAULT_SOLVER_BUDGET)]
    budget: u64,
    /// Output path (standard output when absent).
    #[arg(long)]
    out: Option<String>,
    /// Also print the spectrum as CSV.
    #[arg(long)]
    spectrum: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated family names.
    #[arg(long)]
    families: String,
    /// Dimension range, inclusive: "2..4" or a single "3".
    #[arg(long)]
    n: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_SOLVER_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Exhaustive check of every function up to this dimension.
    #[arg(long, default_value_t = 3)]
    exhaustive_n: u32,
    /// Random-population dimensions, inclusive range "4..8".
    #[arg(long, default_value = "4..8")]
    random_n: String,
    /// Random functions per dimension.
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 2_000_000)]
    budget: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

fn parse_family(source: &FunctionSource, name: &str) -> anyhow::Result<Family> {
    Ok(match name {
        "constant0" => Family::Constant0,
        "constant1" => Family::Constant1,
        "dictator" => Family::Dictator { i: source.i },
        "parity" => Family::Parity,
        "and" => Family::And,
        "or" => Family::Or,
        "majority" => Family::Majority,
        "maj4" => Family::Maj4,
        "tribes" => Family::Tribes {
            width: source.width,
        },
        "inner-product" => Family::InnerProduct,
        "address" => Family::Address,
        "random" => Family::Random {
            seed: source.rand_seed,
            density: source.density,
        },
        other => bail!("unknown family {other:?}"),
    })
}

fn load_function(source: &FunctionSource, n: u32) -> anyhow::Result<BooleanFunction> {
    let given = source.family.is_some() as u8
        + source.truth_table.is_some() as u8
        + source.truth_table_file.is_some() as u8;
    if given != 1 {
        bail!("exactly one of --family, --truth-table, --truth-table-file is required");
    }
    if let Some(name) = &source.family {
        let family = parse_family(source, name)?;
        return Ok(FamilySpec::new(family, n).generate()?);
    }
    let text = if let Some(tt) = &source.truth_table {
        tt.clone()
    } else {
        let path = source.truth_table_file.as_ref().unwrap();
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    Ok(BooleanFunction::parse(&text, n)?)
}

/// Inclusive "a..b" range, or a single number.
fn parse_range(spec: &str) -> anyhow::Result<Vec<u32>> {
    let (lo, hi) = match spec.split_once("..") {
        Some((a, b)) => (a.trim().parse()?, b.trim().parse()?),
        None => {
            let v: u32 = spec.trim().parse()?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("empty range {spec:?}");
    }
    Ok((lo..=hi).collect())
}

fn emit(out: &Option<String>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path}"))?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn run_analyze(args: &AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let f = load_function(&args.source, args.n)?;
    let opts = AnalysisOptions {
        solver_budget: args.budget,
        ..AnalysisOptions::default()
    };
    let analysis = analyze(&f, &opts)?;

    let mut text = String::new();
    match args.format {
        Format::Json => {
            text.push_str(&serde_json::to_string_pretty(&analysis)?);
            text.push('\n');
        }
        _ => {
            let flagged = analysis.flagged_failures();
            if !flagged.is_empty() {
                let _ = writeln!(
                    text,
                    "WARNING: flagged literal inequalities fail under their stated hypotheses: {}",
                    flagged.join(", ")
                );
            }
            text.push_str(&analysis.render_table());
        }
    }
    if args.spectrum {
        text.push_str(&boolcube::spectral::wht(&f)?.to_csv());
    }
    emit(&args.out, &text)?;

    let bugs = analysis.unconditional_failures();
    if !bugs.is_empty() {
        eprintln!("unconditional inequality failures (implementation bug): {}", bugs.join(", "));
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep_row(analysis: &Analysis) -> Vec<String> {
    let r = &analysis.inequality;
    let theorem = r.links.iter().find(|l| l.name == "theorem1_literal").unwrap();
    let corrected = r.links.iter().find(|l| l.name == "theorem1_corrected").unwrap();
    let slack = theorem
        .slack
        .map(|s| format!("{s:.6}"))
        .unwrap_or_else(|| "inf".to_string());
    vec![
        r.n.to_string(),
        r.support_size.to_string(),
        r.degree.to_string(),
        r.anf_degree.to_string(),
        r.partition_size.to_string(),
        r.h_optimal.to_string(),
        r.energy.clone(),
        r.i_prob.clone(),
        r.i_spec.clone(),
        r.one_norm.clone(),
        theorem.holds.to_string(),
        corrected.holds.to_string(),
        slack,
        r.hypothesis_flags.join("; "),
    ]
}

const SWEEP_COLUMNS: &[&str] = &[
    "family", "n", "support_size", "deg", "anf_deg", "H", "H_optimal", "E", "I_prob", "I_spec",
    "one_norm", "theorem_holds", "corrected_holds", "slack", "flags",
];

fn run_sweep(args: &SweepArgs) -> anyhow::Result<ExitCode> {
    let ns = parse_range(&args.n)?;
    let families: Vec<String> = args
        .families
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if families.is_empty() {
        bail!("no families given");
    }
    let opts = AnalysisOptions {
        solver_budget: args.budget,
        ..AnalysisOptions::default()
    };
    let defaults = FunctionSource {
        family: None,
        i: 1,
        width: 2,
        density: 0.5,
        rand_seed: 0,
        truth_table: None,
        truth_table_file: None,
    };

    let mut rows: Vec<Vec<String>> = Vec::new();
    for name in &families {
        let family = parse_family(&defaults, name)?;
        for &n in &ns {
            let row = FamilySpec::new(family.clone(), n)
                .generate()
                .map_err(anyhow::Error::from)
                .and_then(|f| Ok(analyze(&f, &opts)?));
            match row {
                Ok(analysis) => {
                    let mut cells = vec![name.clone()];
                    cells.extend(sweep_row(&analysis));
                    rows.push(cells);
                }
                Err(e) => {
                    // Capability failures become in-row markers.
                    let mut cells = vec![name.clone(), n.to_string()];
                    cells.extend(vec![String::new(); SWEEP_COLUMNS.len() - 3]);
                    cells.push(format!("error: {e}"));
                    rows.push(cells);
                }
            }
        }
    }

    let mut text = String::new();
    match args.format {
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::Value::Object(
                        SWEEP_COLUMNS
                            .iter()
                            .zip(row)
                            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                            .collect(),
                    )
                })
                .collect();
            text.push_str(&serde_json::to_string_pretty(&objs)?);
            text.push('\n');
        }
        _ => {
            let _ = writeln!(text, "{}", SWEEP_COLUMNS.join(","));
            for row in &rows {
                let _ = writeln!(text, "{}", row.join(","));
            }
        }
    }
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let cfg = VerifyConfig {
        exhaustive_n: args.exhaustive_n,
        random_ns: parse_range(&args.random_n)?,
        samples: args.samples,
        seed: args.seed,
        solver_budget: args.budget,
    };
    println!(
        "verification run: exhaustive n<={}, random n in {:?}, {} samples, seed {}",
        cfg.exhaustive_n, cfg.random_ns, cfg.samples, cfg.seed
    );
    let results = run_all(&cfg)?;
    let mut all_pass = true;
    for suite in &results {
        let status = if suite.skipped {
            "SKIP"
        } else if suite.passed() {
            "PASS"
        } else {
            all_pass = false;
            "FAIL"
        };
        println!(
            "{status} {:<35} cases={} failures={}",
            suite.name,
            suite.cases,
            suite.failures.len()
        );
        for note in &suite.notes {
            println!("     note: {note}");
        }
        for failure in &suite.failures {
            println!("     failure: {failure}");
        }
    }
    println!(
        "seed {} (replay any failure with the same seed and flags)",
        args.seed
    );
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
