//! Command-line surface: analyze, query, oracle, gen, bench.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 oracle
//! disagreement, 4 resource guard exceeded.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};

use treedelta::query::{closest, extremes, top_k, Direction};
use treedelta::report::{
    analyze_rows, meta_for, write_analyze_csv, write_analyze_json, write_bench_csv, BenchRow,
};
use treedelta::sweep::sweep_parallel;
use treedelta::{
    build_index, edge_splits, format_decimal, generate, parse_rational, parse_tree, sweep_all_with,
    wiener_from_splits, Apsp, Error, InsetRecord, Metric, SplitTable, SweepOptions, Tree, TreeKind,
    MAX_RECORDS,
};

const EXIT_USAGE: i32 = 1;
const EXIT_INVALID_INPUT: i32 = 2;
const EXIT_ORACLE_DISAGREE: i32 = 3;
const EXIT_RESOURCE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "treedelta",
    about = "Exact Wiener-index and average-distance effect of every tree shortcut edge",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute dprime/adprime for every inset edge.
    Analyze(AnalyzeArgs),
    /// Find inset edges by target value or rank.
    Query(QueryArgs),
    /// Cross-check the sweep against three direct evaluators.
    Oracle(OracleArgs),
    /// Write a generated tree in edge-list format.
    Gen(GenArgs),
    /// Operation-count scaling across tree families.
    Bench(BenchArgs),
}

/// Where the tree comes from: a file or a generator setting.
#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "gen"])))]
struct InputArgs {
    /// Edge-list file ('-' for stdin).
    #[arg(long, short = 'i')]
    input: Option<String>,
    /// Generate the input instead: path|star|caterpillar|random.
    #[arg(long, value_name = "KIND", requires = "n")]
    gen: Option<String>,
    /// Vertex count for --gen.
    #[arg(long, short = 'n', requires = "gen")]
    n: Option<u64>,
    /// Seed for --gen.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InputArgs {
    fn load(&self) -> Result<Tree, Error> {
        match (&self.input, &self.gen) {
            (Some(path), None) => {
                if path == "-" {
                    parse_tree(BufReader::new(io::stdin().lock()))
                } else {
                    parse_tree(BufReader::new(File::open(path)?))
                }
            }
            (None, Some(kind)) => {
                let kind: TreeKind = kind.parse()?;
                let n = self.n.ok_or(Error::TooFewVertices { n: 0, min: 2 })?;
                generate(kind, n, self.seed)
            }
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output format.
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
    /// Output file (stdout when omitted).
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Sweep worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Report the sweep's basic-operation count in the summary.
    #[arg(long)]
    count_ops: bool,
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Target value for the chosen metric, e.g. '5', '1/2', '0.35'.
    #[arg(long, conflicts_with = "top")]
    target: Option<String>,
    /// Metric the target refers to.
    #[arg(long, default_value = "dprime", value_parser = ["dprime", "adprime"])]
    metric: String,
    /// Report the k extremal records instead of a target match.
    #[arg(long)]
    top: Option<usize>,
    /// Take --top from the maximum end.
    #[arg(long, conflicts_with = "min")]
    max: bool,
    /// Take --top from the minimum end.
    #[arg(long)]
    min: bool,
    /// Sweep worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Largest vertex count the quadratic oracles accept.
    #[arg(long, default_value_t = 500)]
    oracle_bound: u64,
}

#[derive(Args)]
struct GenArgs {
    /// path|star|caterpillar|random
    kind: String,
    /// Vertex count.
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when omitted).
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated families.
    #[arg(long, default_value = "path,star,random", value_delimiter = ',')]
    families: Vec<String>,
    /// Comma-separated vertex counts.
    #[arg(long, default_value = "125,250,500,1000,2000", value_delimiter = ',')]
    sizes: Vec<u64>,
    /// Base seed; each (family, n) derives its own.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when omitted).
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not usage errors.
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let outcome = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Query(args) => cmd_query(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code_for(&err));
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::TooManyVertices { .. } | Error::TooManyRecords(..) => EXIT_RESOURCE,
        _ => EXIT_INVALID_INPUT,
    }
}

/// Output sink honoring --output.
fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Collects the full sorted record set, guarding the in-memory limit.
fn collect_records(
    tree: &Tree,
    splits: &SplitTable,
    workers: usize,
) -> Result<(Vec<InsetRecord>, u64), Error> {
    let m = tree.inset_edge_count();
    if m > MAX_RECORDS {
        return Err(Error::TooManyRecords(m, MAX_RECORDS));
    }
    let (records, stats) = sweep_parallel(tree, splits, SweepOptions::default(), workers);
    Ok((records, stats.basic_ops))
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<i32, Error> {
    let tree = args.input.load()?;
    let splits = edge_splits(&tree);
    let wiener = wiener_from_splits(&splits);
    let (records, basic_ops) = collect_records(&tree, &splits, args.workers)?;
    let meta = meta_for(&tree, wiener);
    let rows = analyze_rows(&tree, &records);

    let mut out = open_output(&args.output)?;
    match args.format.as_str() {
        "csv" => write_analyze_csv(&mut out, &rows)?,
        _ => write_analyze_json(&mut out, &meta, &rows)?,
    }
    out.flush()?;

    if records.is_empty() {
        eprintln!("warning: no inset edges (n = {})", meta.n);
    }
    let (max_dp, min_dp) = records
        .iter()
        .fold((i64::MIN, i64::MAX), |(hi, lo), r| (hi.max(r.dprime), lo.min(r.dprime)));
    eprint!(
        "n={} m={} wiener={} avg_distance={}/{} ({})",
        meta.n,
        meta.m,
        meta.wiener,
        meta.avg_distance.num,
        meta.avg_distance.den,
        meta.avg_distance.decimal
    );
    if !records.is_empty() {
        eprint!(" max_dprime={max_dp} min_dprime={min_dp}");
    }
    if args.count_ops {
        eprint!(" basic_ops={basic_ops}");
    }
    eprintln!();
    Ok(0)
}

fn cmd_query(args: QueryArgs) -> Result<i32, Error> {
    let tree = args.input.load()?;
    let splits = edge_splits(&tree);
    let (records, _) = collect_records(&tree, &splits, args.workers)?;
    let index = build_index(records, tree.vertex_count() as u64)?;
    let metric: Metric = args.metric.parse()?;

    let mut out = BufWriter::new(io::stdout().lock());
    let print_records = |out: &mut dyn Write, records: &[InsetRecord]| -> Result<(), Error> {
        let rows = analyze_rows(&tree, records);
        write_analyze_csv(out, &rows)
    };

    match (args.target, args.top) {
        (Some(target), None) => {
            let target = parse_rational(&target)?;
            let result = closest(&index, target, metric)?;
            print_records(&mut out, &result.records)?;
            out.flush()?;
            eprintln!(
                "matched {} record(s) at deviation {}/{} ({})",
                result.records.len(),
                result.deviation.numer(),
                result.deviation.denom(),
                format_decimal(&result.deviation, 12)
            );
        }
        (None, Some(k)) => {
            let direction = if args.min { Direction::Min } else { Direction::Max };
            let picked = top_k(&index, k, direction)?;
            print_records(&mut out, &picked)?;
            out.flush()?;
        }
        (None, None) => {
            // No selector: report both extremal tie sets.
            let (max_set, min_set) = extremes(&index)?;
            print_records(&mut out, &max_set)?;
            out.flush()?;
            eprintln!(
                "extremes: {} max record(s) at dprime={}, {} min record(s) at dprime={}",
                max_set.len(),
                max_set[0].dprime,
                min_set.len(),
                min_set[0].dprime
            );
        }
        (Some(_), Some(_)) => unreachable!("clap marks --target and --top conflicting"),
    }
    Ok(0)
}

fn cmd_oracle(args: OracleArgs) -> Result<i32, Error> {
    let tree = args.input.load()?;
    let n = tree.vertex_count() as u64;
    if n > args.oracle_bound {
        return Err(Error::TooManyVertices { n });
    }
    let splits = edge_splits(&tree);
    let apsp = Apsp::new(&tree);

    let mut records = Vec::new();
    sweep_all_with(&tree, &splits, SweepOptions { count_ops: false }, |r| records.push(r));
    records.sort_unstable();

    let mut checked: u64 = 0;
    for r in &records {
        let part = treedelta::cycle_partition(&tree, r.x, r.y)?;
        let weights = treedelta::weight_vectors(&tree, &splits, &part);
        let from_weights = treedelta::dprime_from_weights(&weights);
        let pairwise = treedelta::dprime_pairwise(&tree, &splits, r.x, r.y)?;
        let shortcut = apsp.dprime(r.x, r.y);
        if r.dprime != from_weights || r.dprime != pairwise || r.dprime != shortcut {
            println!(
                "DISAGREE x={} y={} k={} sweep={} weights={} pairwise={} shortcut={}",
                tree.label(r.x),
                tree.label(r.y),
                r.k,
                r.dprime,
                from_weights,
                pairwise,
                shortcut
            );
            return Ok(EXIT_ORACLE_DISAGREE);
        }
        checked += 1;
    }
    if records.len() as u64 != tree.inset_edge_count() {
        println!(
            "DISAGREE record count {} != expected {}",
            records.len(),
            tree.inset_edge_count()
        );
        return Ok(EXIT_ORACLE_DISAGREE);
    }
    println!("OK m={checked}");
    Ok(0)
}

fn cmd_gen(args: GenArgs) -> Result<i32, Error> {
    let kind: TreeKind = args.kind.parse()?;
    let tree = generate(kind, args.n, args.seed)?;
    let mut out = open_output(&args.output)?;
    tree.write_to(&mut out)?;
    out.flush()?;
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> Result<i32, Error> {
    let mut rows = Vec::new();
    for family in &args.families {
        let kind: TreeKind = family.parse()?;
        for (i, &n) in args.sizes.iter().enumerate() {
            let seed = args.seed.wrapping_add(i as u64).wrapping_mul(0x9e3779b9);
            let tree = generate(kind, n, seed)?;
            let splits = edge_splits(&tree);
            let wiener = wiener_from_splits(&splits);

            // Counted pass for ops, uncounted pass for wall time.
            let stats = sweep_all_with(&tree, &splits, SweepOptions { count_ops: true }, |_| {});
            let start = Instant::now();
            sweep_all_with(&tree, &splits, SweepOptions { count_ops: false }, |_| {});
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;

            rows.push(BenchRow::new(
                family,
                n,
                stats.records,
                wiener,
                stats.basic_ops,
                wall_ms,
            ));
        }
    }
    let mut out = open_output(&args.output)?;
    write_bench_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(0)
}
