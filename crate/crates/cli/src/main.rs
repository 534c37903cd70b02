//! `tff`: tables, dataset evaluation and oracle runs from the command line.
//!
//! Exit codes: 0 on success, 1 for validation failures and bad arguments,
//! 2 when a resource cap or search bound is hit.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tff_core::lefschetz::{
    evaluate, infinite_weight_value, lefschetz_number, validate_dataset, with_finite_proxy, Severity,
};
use tff_core::nilcoh::kostant_table;
use tff_core::oracle::ce::run_ce_check;
use tff_core::oracle::forms::{count_elliptic_classes, elliptic_traces, reduced_forms};
use tff_core::oracle::gl2::build_gl2_dataset;
use tff_core::rational::parse_q;
use tff_core::sampling::{self, DatasetShape};
use tff_core::{CartanType, Error, FixedPointDataset, Formula, RootDatum, Subset, Weight, WeightProfile, WeylGroup};

#[derive(Parser)]
#[command(name = "tff", version, about = "Exact Lefschetz numbers of Hecke correspondences on weighted cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// Cartan type (A, B, C, D or G).
    #[arg(value_name = "TYPE")]
    cartan_type: CartanType,
    rank: usize,
    /// Levi subset as 1-based indices, e.g. "1,3"; empty for the Borel.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    levi: String,
    /// Highest weight in fundamental coordinates, e.g. "1,0"; defaults to 0.
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Kostant decomposition of H^*(n_P, E) with truncation quadrants.
    Kostant {
        #[command(flatten)]
        group: GroupArgs,
        /// middle, plus-inf, minus-inf, or rational fundamental coordinates.
        #[arg(long, default_value = "middle", allow_hyphen_values = true)]
        nu: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Evaluate the Lefschetz number of a dataset file.
    Eval {
        dataset: PathBuf,
        #[arg(long, default_value = "main")]
        formula: Formula,
        /// Print the contribution of each stratum.
        #[arg(long)]
        explain: bool,
    },
    /// Lint a dataset file.
    Validate { dataset: PathBuf },
    /// Independent checks.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Randomized consistency checks on generated datasets.
    Check {
        #[arg(long, default_value_t = sampling::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: u64,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Chevalley-Eilenberg cohomology compared with Kostant's theorem.
    Ce {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Reduced binary quadratic forms of a negative discriminant.
    Forms {
        #[arg(allow_hyphen_values = true)]
        discriminant: i64,
    },
    /// Elliptic conjugacy classes of determinant p, per trace.
    Classes { p: u64 },
    /// Generated T_p fixed-point dataset on GL_2, as JSON.
    Dataset {
        p: u64,
        /// Value of chi_c assigned to every class.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        chi_c: i64,
    },
}

/// A failed command: message lines for stderr and the exit code.
struct Failure {
    code: u8,
    lines: Vec<String>,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            lines: vec![format!("error: {}", msg.into())],
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if e.is_resource() { 2 } else { 1 };
        let lines = match e {
            Error::InvalidDataset(items) => items.into_iter().map(|i| format!("error: {i}")).collect(),
            other => vec![format!("error: {other}")],
        };
        Failure { code, lines }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Failure {
        Failure::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn parse_list<T, E: std::fmt::Display>(s: &str, parse: impl Fn(&str) -> Result<T, E>) -> Result<Vec<T>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| parse(x.trim()).map_err(|e| Failure::usage(format!("cannot parse '{x}': {e}"))))
        .collect()
}

struct Setup {
    group: WeylGroup,
    levi: Subset,
    lambda: Vec<i64>,
}

fn setup(args: &GroupArgs) -> Result<Setup, Failure> {
    let rd = RootDatum::new(args.cartan_type, args.rank)?;
    let levi = Subset::parse_one_based(&args.levi, args.rank).map_err(Failure::usage)?;
    let lambda = match &args.lambda {
        Some(s) => parse_list(s, str::parse::<i64>)?,
        None => vec![0; args.rank],
    };
    if lambda.len() != args.rank {
        return Err(Failure::usage(format!("--lambda needs {} coordinates", args.rank)));
    }
    Ok(Setup {
        group: WeylGroup::new(rd)?,
        levi,
        lambda,
    })
}

fn parse_nu(s: &str, rank: usize) -> Result<WeightProfile, Failure> {
    match s {
        "middle" => Ok(WeightProfile::Middle),
        "plus-inf" | "+inf" => Ok(WeightProfile::PlusInfinity),
        "minus-inf" | "-inf" => Ok(WeightProfile::MinusInfinity),
        other => {
            let coords = parse_list(other, parse_q)?;
            if coords.len() != rank {
                return Err(Failure::usage(format!(
                    "--nu must be middle, plus-inf, minus-inf or {rank} rational coordinates"
                )));
            }
            Ok(WeightProfile::Finite(Weight::fundamental(coords)))
        }
    }
}

fn tuple<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Serialize)]
struct KostantCsvRow {
    w: String,
    length: usize,
    highest_weight: String,
    quadrant: String,
    shifted_degree: usize,
    dimension: u64,
}

fn cmd_kostant(args: &GroupArgs, nu: &str, format: TableFormat) -> CmdResult {
    let s = setup(args)?;
    let nu = parse_nu(nu, args.rank)?;
    let rows = kostant_table(&s.group, s.levi, &Weight::fundamental_int(&s.lambda), &nu)?;
    let mut out = std::io::stdout().lock();
    match format {
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &rows).map_err(|e| Failure::usage(e.to_string()))?;
            writeln!(out)?;
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                let quadrant: Vec<String> = r.quadrant.iter().map(|i| i.to_string()).collect();
                w.serialize(KostantCsvRow {
                    w: r.word,
                    length: r.length,
                    highest_weight: tuple(&r.highest_weight),
                    quadrant: format!("{{{}}}", quadrant.join(",")),
                    shifted_degree: r.shifted_degree,
                    dimension: r.weyl_dimension,
                })?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<FixedPointDataset, Failure> {
    FixedPointDataset::from_path(path).map_err(|e| match e {
        Error::Parse { path: p, reason } => Failure::usage(format!("{}: at {p}: {reason}", path.display())),
        other => other.into(),
    })
}

/// Prints diagnostics to stderr; fails if any is an error.
fn lint(ds: &FixedPointDataset) -> CmdResult {
    let diags = validate_dataset(ds);
    for d in &diags {
        eprintln!("{d}");
    }
    if diags.iter().any(|d| d.severity == Severity::Error) {
        return Err(Failure { code: 1, lines: vec![] });
    }
    Ok(())
}

fn cmd_eval(path: &PathBuf, formula: Formula, explain: bool) -> CmdResult {
    let ds = load(path)?;
    lint(&ds)?;
    let ev = evaluate(&ds, formula)?;
    println!("{}", ev.total);
    println!("~ {}", ev.total.render_float());
    if explain {
        for (levi, v) in &ev.strata {
            println!("stratum I={levi}: {v} ~ {}", v.render_float());
        }
    }
    Ok(())
}

fn cmd_validate(path: &PathBuf) -> CmdResult {
    let ds = load(path)?;
    lint(&ds)?;
    println!("ok: {} classes", ds.class_count());
    Ok(())
}

fn cmd_ce(args: &GroupArgs, format: ReportFormat) -> CmdResult {
    let s = setup(args)?;
    let (report, cmp) = run_ce_check(&s.group, s.levi, &s.lambda)?;
    match format {
        ReportFormat::Text => println!("{cmp}"),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            w.write_record(["degree", "weight", "multiplicity"])?;
            for d in &report.degrees {
                for (mu, m) in &d.weights {
                    let coords: Vec<String> = mu.coords.iter().map(|c| c.to_string()).collect();
                    w.write_record([d.degree.to_string(), tuple(&coords), m.to_string()])?;
                }
            }
            w.flush()?;
            eprintln!("{cmp}");
        }
    }
    if cmp.matches {
        Ok(())
    } else {
        Err(Failure { code: 1, lines: vec![] })
    }
}

fn cmd_forms(d: i64) -> CmdResult {
    let forms = reduced_forms(d)?;
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(["a", "b", "c", "primitive"])?;
    for f in &forms {
        w.write_record([f.a.to_string(), f.b.to_string(), f.c.to_string(), f.is_primitive().to_string()])?;
    }
    w.flush()?;
    eprintln!("{} forms", forms.len());
    Ok(())
}

fn cmd_classes(p: u64) -> CmdResult {
    let mut rows = Vec::new();
    for t in elliptic_traces(p) {
        rows.push([t.to_string(), (t * t - 4 * p as i64).to_string(), count_elliptic_classes(p, t)?.to_string()]);
    }
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(["t", "discriminant", "classes"])?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_dataset(p: u64, chi_c: i64) -> CmdResult {
    let ds = build_gl2_dataset(p, |_| chi_c)?;
    println!("{}", ds.to_json_string());
    Ok(())
}

/// Symbolic, closed-form and proxy evaluations agree on random datasets.
fn cmd_check(seed: u64, count: u64) -> CmdResult {
    let mut failures = Vec::new();
    for k in 0..count {
        let s = seed.wrapping_add(k);
        let mut rng = sampling::rng(s);
        let nu = if k % 2 == 0 { WeightProfile::PlusInfinity } else { WeightProfile::MinusInfinity };
        let ds = sampling::random_dataset(
            &mut rng,
            &DatasetShape {
                nu: Some(nu),
                ..DatasetShape::default()
            },
        );
        let closed = infinite_weight_value(&ds)?;
        let symbolic = lefschetz_number(&ds)?;
        let proxy = lefschetz_number(&with_finite_proxy(&ds)?)?;
        if closed != symbolic || closed != proxy {
            failures.push(format!(
                "error: seed {s}: closed form {closed}, symbolic {symbolic}, proxy {proxy}"
            ));
        }
        let doubled = lefschetz_number(&ds.scale_chi_c(2))?;
        if doubled != &symbolic + &symbolic {
            failures.push(format!("error: seed {s}: not linear in chi_c"));
        }
    }
    if failures.is_empty() {
        println!("ok: {count} datasets from seed {seed}");
        Ok(())
    } else {
        Err(Failure { code: 1, lines: failures })
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Kostant { group, nu, format } => cmd_kostant(&group, &nu, format),
        Command::Eval {
            dataset,
            formula,
            explain,
        } => cmd_eval(&dataset, formula, explain),
        Command::Validate { dataset } => cmd_validate(&dataset),
        Command::Oracle { command } => match command {
            OracleCommand::Ce { group, format } => cmd_ce(&group, format),
            OracleCommand::Forms { discriminant } => cmd_forms(discriminant),
            OracleCommand::Classes { p } => cmd_classes(p),
            OracleCommand::Dataset { p, chi_c } => cmd_dataset(p, chi_c),
        },
        Command::Check { seed, count } => cmd_check(seed, count),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            for line in f.lines {
                eprintln!("{line}");
            }
            ExitCode::from(f.code)
        }
    }
}
