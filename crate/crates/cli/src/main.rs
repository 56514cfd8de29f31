//! Command-line front end: splitting-type arithmetic, comb reduction and
//! tree cohomology, the three assembly pipelines, numerology tables, and the
//! closed-form-versus-oracle verification battery.

use bundlecalc::error::{CombError, GeometryError, InterpError, OracleError, SplitError};
use bundlecalc::geometry::{fan_assembly_d_eq_n, fang_assembly, pn_normal_record};
use bundlecalc::interp::{interp_table, is_accessible};
use bundlecalc::oracle::{Field, FieldChoice, PrimeField, RationalField};
use bundlecalc::splitcalc::{
    balanced_extension, general_kernel, general_modification, Direction, SplitType,
};
use bundlecalc::treebundle::{emit_comb, parse_comb, CombSpec};
use bundlecalc::verify::{run_all, VerifyConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::cmp::Ordering;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bundlecalc",
    version,
    about = "Splitting-type calculus for bundles on rational curves, with an exact-linear-algebra oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for every randomized draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Coefficient field: "prime", "prime:MODULUS", or "rationals".
    #[arg(long, global = true, default_value = "prime")]
    field: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    Down,
    Up,
}

#[derive(Subcommand)]
enum Command {
    /// Splitting-type arithmetic.
    Split {
        #[command(subcommand)]
        op: SplitOp,
    },
    /// Comb files: reduction, explicit cohomology, canonical form.
    Tree {
        #[command(subcommand)]
        op: TreeOp,
    },
    /// Normal bundle of a general degree-e rational curve in projective n-space.
    Pn {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        e: i64,
    },
    /// Degree-n hypersurface pipeline: balanced curve of degree e.
    Fan {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        e: i64,
    },
    /// Degree-d hypersurface pipeline (3 <= d <= n-1) at an accessible degree.
    Fang {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        e: i64,
        /// Lift witness; defaults to the smallest admissible one.
        #[arg(long)]
        e0: Option<i64>,
    },
    /// Numerology table over 1 <= e <= emax.
    Interp {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        emax: i64,
    },
    /// Closed-form versus oracle cross-check battery.
    Verify {
        /// Oracle seeds per random case.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        /// Random cases per sweep.
        #[arg(long, default_value_t = 100)]
        cases: u64,
    },
}

#[derive(Subcommand)]
enum SplitOp {
    /// Rank, degree, balance data, cohomology and the endomorphism bundle.
    Info {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        degrees: Vec<i64>,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist: i64,
    },
    /// General elementary modification of the given colength.
    Modify {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        degrees: Vec<i64>,
        #[arg(long)]
        colength: i64,
        #[arg(long, value_enum)]
        direction: Dir,
    },
    /// Kernel of a general surjection onto O(m).
    Kernel {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        degrees: Vec<i64>,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// General extension of the second type by the first.
    Extend {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        first: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        second: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum TreeOp {
    /// Smoothing reduction of a comb file.
    Reduce {
        #[arg(long)]
        file: PathBuf,
    },
    /// Cohomology of the comb with explicit seeded gluing, base twisted by --twist.
    Cohomology {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist: i64,
    },
    /// Parse a comb file and print its canonical form.
    Emit {
        #[arg(long)]
        file: PathBuf,
    },
    /// Print a sample comb file.
    Example,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl From<SplitError> for CliError {
    fn from(e: SplitError) -> Self {
        CliError::Domain(e.to_string())
    }
}
impl From<CombError> for CliError {
    fn from(e: CombError) -> Self {
        CliError::Domain(e.to_string())
    }
}
impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Domain(e.to_string())
    }
}
impl From<InterpError> for CliError {
    fn from(e: InterpError) -> Self {
        CliError::Domain(e.to_string())
    }
}
impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Domain(e.to_string())
    }
}
impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("io error: {e}"))
    }
}

fn parse_field(spec: &str) -> Result<FieldChoice, CliError> {
    match spec {
        "prime" => Ok(FieldChoice::default()),
        "rationals" | "q" => Ok(FieldChoice::Rationals),
        other => {
            if let Some(rest) = other.strip_prefix("prime:") {
                let p: u64 = rest
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad modulus in --field {other}")))?;
                if PrimeField::try_new(p).is_none() {
                    return Err(CliError::Usage(format!("{p} is not prime")));
                }
                Ok(FieldChoice::Prime(p))
            } else {
                Err(CliError::Usage(format!(
                    "--field must be prime, prime:<modulus>, or rationals; got {other}"
                )))
            }
        }
    }
}

fn split_of(degrees: &[i64]) -> Result<SplitType, CliError> {
    Ok(SplitType::new(degrees.to_vec())?)
}

fn envelope(kind: &str, data: serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(&json!({
        "schema_version": 1,
        "kind": kind,
        "data": data,
    }))
    .expect("serializable");
    out.push('\n');
    out
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let field = parse_field(&cli.field)?;
    match &cli.command {
        Command::Split { op } => run_split(op, cli),
        Command::Tree { op } => run_tree(op, cli, field),
        Command::Pn { n, e } => {
            let record = pn_normal_record(*n, *e)?;
            Ok(match cli.format {
                Format::Json => envelope("pn_record", serde_json::to_value(&record).unwrap()),
                _ => {
                    let mut out =
                        format!("normal bundle of a degree-{e} rational curve in P^{n}\n");
                    for s in &record.stages {
                        out.push_str(&format!("  {}: {}\n", s.label, s.split));
                    }
                    out.push_str(&format!(
                        "predicted: {}  rank {}  degree {}\n",
                        record.predicted.split, record.predicted.rank, record.predicted.degree
                    ));
                    out
                }
            })
        }
        Command::Fan { n, e } => {
            let record = fan_assembly_d_eq_n(*n, *e)?;
            Ok(match cli.format {
                Format::Json => envelope("fan_record", serde_json::to_value(&record).unwrap()),
                _ => render_pipeline_text(&record),
            })
        }
        Command::Fang { n, d, e, e0 } => {
            let witness = match e0 {
                Some(v) => *v,
                None => is_accessible(*n, *d, *e)?.ok_or_else(|| {
                    CliError::Domain(
                        GeometryError::Inaccessible {
                            n: *n,
                            d: *d,
                            e: *e,
                        }
                        .to_string(),
                    )
                })?,
            };
            let record = fang_assembly(*n, *d, *e, witness)?;
            Ok(match cli.format {
                Format::Json => envelope("fang_record", serde_json::to_value(&record).unwrap()),
                _ => render_pipeline_text(&record),
            })
        }
        Command::Interp { n, d, emax } => {
            let table = interp_table(*n, *d, *emax)?;
            Ok(match cli.format {
                Format::Csv => table.to_csv(),
                Format::Json => envelope("interp_table", serde_json::to_value(&table).unwrap()),
                Format::Text => {
                    let mut out =
                        format!("interpolation table for (n, d) = ({n}, {d}), e <= {emax}\n");
                    out.push_str(&format!(
                        "accessible residues mod {}: {:?} (observed {}, reference d(n-d) = {})\n",
                        d * (n - 2),
                        table.accessible_residues,
                        table.accessible_residues.len(),
                        table.reference_class_count
                    ));
                    out.push_str(&format!(
                        "interpolating q residues mod {}: {:?}\n",
                        d * (n + 1 - d),
                        table.interpolating_q_residues
                    ));
                    out.push_str(&format!("detected period: {:?}\n", table.detected_period));
                    out.push_str("e q_max point_minimal accessible e0 interpolating\n");
                    for r in &table.rows {
                        out.push_str(&format!(
                            "{} {} {} {} {} {}\n",
                            r.e,
                            r.q_max,
                            r.point_minimal,
                            r.accessible,
                            r.e0.map_or("-".to_string(), |v| v.to_string()),
                            r.interpolating
                        ));
                    }
                    out
                }
            })
        }
        Command::Verify { seeds, cases } => {
            let config = VerifyConfig {
                seed: cli.seed,
                seeds_per_case: *seeds,
                modification_cases: *cases,
                kernel_cases: (*cases / 2).max(1),
                extension_cases: (*cases / 2).max(1),
                mismatched_extension_cases: (*cases / 8).max(1),
                field,
            };
            let reports = run_all(&config);
            let all_passed = reports.iter().all(|r| r.passed);
            let rendered = match cli.format {
                Format::Json => envelope("verify", serde_json::to_value(&reports).unwrap()),
                _ => {
                    let mut out = String::new();
                    for r in &reports {
                        out.push_str(&format!(
                            "{} {} ({} cases, {} mismatches) {}\n",
                            if r.passed { "PASS" } else { "FAIL" },
                            r.name,
                            r.cases,
                            r.mismatches,
                            r.detail
                        ));
                    }
                    out
                }
            };
            if !all_passed {
                print_output(cli, &rendered).ok();
                return Err(CliError::Domain("verification battery failed".to_string()));
            }
            Ok(rendered)
        }
    }
}

fn render_pipeline_text(record: &bundlecalc::geometry::PipelineRecord) -> String {
    let mut out = format!("{} pipeline\n", record.pipeline);
    out.push_str("parameters:");
    for (k, v) in &record.params {
        out.push_str(&format!(" {k}={v}"));
    }
    out.push('\n');
    for s in &record.stages {
        out.push_str(&format!(
            "  {}: {} (rank {}, degree {})\n",
            s.label, s.split, s.rank, s.degree
        ));
    }
    if let Some(teeth) = &record.teeth {
        out.push_str(&format!("  teeth: {} x {}\n", teeth.count, teeth.split));
    }
    out.push_str(&format!(
        "predicted: {}  rank {}  degree {}\n",
        record.predicted.split, record.predicted.rank, record.predicted.degree
    ));
    for a in &record.assumptions {
        out.push_str(&format!("assumes: {a}\n"));
    }
    for n in &record.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

fn run_split(op: &SplitOp, cli: &Cli) -> Result<String, CliError> {
    match op {
        SplitOp::Info { degrees, twist } => {
            let s = split_of(degrees)?;
            let info = s.balance_info();
            let (h0, h1) = s.cohomology(*twist);
            let end = s.end_bundle();
            let end_h1 = end.cohomology(0).1;
            Ok(match cli.format {
                Format::Json => envelope(
                    "split_info",
                    json!({
                        "type": s,
                        "rank": s.rank(),
                        "degree": s.degree(),
                        "balanced": info.balanced,
                        "upper_rank": info.upper_rank,
                        "upper_degree": info.upper_degree,
                        "slope_floor": info.slope_floor,
                        "twist_of_trivial": info.twist_of_trivial,
                        "partition": format!("{}", s.partition()),
                        "twist": twist,
                        "h0": h0,
                        "h1": h1,
                        "end_bundle": end,
                        "end_h1": end_h1,
                    }),
                ),
                _ => format!(
                    "type: {s}\nrank: {}  degree: {}\nbalanced: {}  upper rank: {}  upper degree: {}  slope floor: {}\npartition: {}\nh0(E({t})): {h0}  h1(E({t})): {h1}\nend bundle: {end}  h1(end): {end_h1}\n",
                    s.rank(),
                    s.degree(),
                    info.balanced,
                    info.upper_rank,
                    info.upper_degree,
                    info.slope_floor,
                    s.partition(),
                    t = twist,
                ),
            })
        }
        SplitOp::Modify {
            degrees,
            colength,
            direction,
        } => {
            let s = split_of(degrees)?;
            let dir = match direction {
                Dir::Down => Direction::Down,
                Dir::Up => Direction::Up,
            };
            let result = general_modification(&s, *colength, dir)?;
            Ok(match cli.format {
                Format::Json => envelope(
                    "split_modify",
                    json!({"input": s, "colength": colength, "direction": dir, "result": result}),
                ),
                _ => format!(
                    "{s} --{colength} {}--> {result}\n",
                    match dir {
                        Direction::Down => "down",
                        Direction::Up => "up",
                    }
                ),
            })
        }
        SplitOp::Kernel { degrees, m } => {
            let s = split_of(degrees)?;
            let result = general_kernel(&s, *m)?;
            Ok(match cli.format {
                Format::Json => envelope(
                    "split_kernel",
                    json!({"input": s, "m": m, "kernel": result}),
                ),
                _ => format!("kernel of a general surjection {s} -> O({m}): {result}\n"),
            })
        }
        SplitOp::Extend { first, second } => {
            let s1 = split_of(first)?;
            let s2 = split_of(second)?;
            let result = balanced_extension(&s1, &s2)?;
            Ok(match cli.format {
                Format::Json => envelope(
                    "split_extend",
                    json!({"sub": s1, "quotient": s2, "extension": result}),
                ),
                _ => format!("general extension of {s2} by {s1}: {result}\n"),
            })
        }
    }
}

fn load_comb(path: &PathBuf) -> Result<CombSpec, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_comb(&text)?)
}

fn run_tree(op: &TreeOp, cli: &Cli, field: FieldChoice) -> Result<String, CliError> {
    match op {
        TreeOp::Reduce { file } => {
            let comb = load_comb(file)?;
            let report = comb.smoothing_reduce()?;
            let bound_str = match report.bound_cmp {
                Ordering::Less => "strictly below the bound",
                Ordering::Equal => "equal to the bound",
                Ordering::Greater => "above the bound (outside the guaranteed regime)",
            };
            Ok(match cli.format {
                Format::Json => envelope(
                    "tree_reduce",
                    json!({
                        "comb": emit_comb(&comb),
                        "predicted": report.predicted,
                        "bound": format!("{}", report.bound),
                        "bound_comparison": bound_str,
                        "tooth_degree": report.tooth_degree,
                        "root_twists": report.root_twists,
                        "root_colengths": report.root_colengths,
                        "balanced": report.predicted.is_balanced(),
                    }),
                ),
                _ => format!(
                    "base: {}  teeth: {}  total tooth degree: {}\npredicted smoothing: {}  (balanced: {})\npartition bound M_k: {}  -- prediction is {}\nroot twists: {:?}\nroot colengths: {:?}\n",
                    comb.base(),
                    comb.teeth().len(),
                    report.tooth_degree,
                    report.predicted,
                    report.predicted.is_balanced(),
                    report.bound,
                    bound_str,
                    report.root_twists,
                    report.root_colengths,
                ),
            })
        }
        TreeOp::Cohomology { file, twist } => {
            let comb = load_comb(file)?;
            let comps = 1 + comb
                .teeth()
                .iter()
                .map(|t| t.components.len())
                .sum::<usize>();
            let mut twists = vec![0i64; comps];
            twists[0] = *twist;
            let (h0, h1, chi, field_name) = match field {
                FieldChoice::Prime(p) => {
                    let f = PrimeField::new(p);
                    let tree = comb.to_tree_data(&f, cli.seed)?;
                    let (h0, h1) = tree.cohomology_twisted(&twists);
                    (h0, h1, tree.chi(&twists), f.describe())
                }
                FieldChoice::Rationals => {
                    let f = RationalField;
                    let tree = comb.to_tree_data(&f, cli.seed)?;
                    let (h0, h1) = tree.cohomology_twisted(&twists);
                    (h0, h1, tree.chi(&twists), f.describe())
                }
            };
            Ok(match cli.format {
                Format::Json => envelope(
                    "tree_cohomology",
                    json!({
                        "comb": emit_comb(&comb),
                        "base_twist": twist,
                        "seed": cli.seed,
                        "field": field_name,
                        "h0": h0,
                        "h1": h1,
                        "chi": chi,
                    }),
                ),
                _ => format!(
                    "explicit tree over {field_name}, seed {}, base twist {twist}\nh0 = {h0}  h1 = {h1}  chi = {chi}\n",
                    cli.seed
                ),
            })
        }
        TreeOp::Emit { file } => {
            let comb = load_comb(file)?;
            Ok(emit_comb(&comb))
        }
        TreeOp::Example => Ok("\
# comb: rank-2 base with five teeth, each a single line with type (0,-1)
rank 2
mode general
component b base 0,0
component t0_0 tail 0,-1
component t1_0 tail 0,-1
component t2_0 tail 0,-1
component t3_0 tail 0,-1
component t4_0 tail 0,-1
edge b t0_0
edge b t1_0
edge b t2_0
edge b t3_0
edge b t4_0
"
        .to_string()),
    }
}

fn print_output(cli: &Cli, rendered: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, rendered),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            if print_output(&cli, &rendered).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
