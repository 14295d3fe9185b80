//! `nullity`: batch front end for the nullity-core checks.
//!
//! Exit codes: 0 success, 1 internal error, 2 input or usage error, 3 a
//! reduced even extremal graph that is not a family member.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{error, info, warn};
use rayon::prelude::*;
use serde_json::{json, Value};

use nullity_core::enumerate::{
    connected_graphs, ingest_graph6_stream, IngestError, IngestedGraph, Suite, SweepOptions,
    SweepReport, ENUM_MAX_N,
};
use nullity_core::families::{enumerate_family, recognize_with_limit, FamilyError, Verdict};
use nullity_core::graph::{diameter, is_reduced, reduce, DEFAULT_PATH_LIMIT};
use nullity_core::linalg::{distinct_eigenvalue_count, graph_rank, nullity};

const CHUNK: usize = 4096;

#[derive(Parser)]
#[command(
    name = "nullity",
    version,
    about = "Nullity, reduction and extremal-structure checks on graph6 input"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// graph6 input file, or `-` for standard input.
    #[arg(long, global = true, value_name = "PATH|-", conflicts_with = "n")]
    input: Option<String>,
    /// Use the built-in enumerator: every connected graph on N vertices.
    #[arg(long, global = true, value_name = "N")]
    n: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: all available).
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
    /// Maximum number of diameter paths tried per graph.
    #[arg(long, global = true, value_name = "L", default_value_t = DEFAULT_PATH_LIMIT)]
    path_limit: usize,
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Per-graph n, diameter, rank, nullity, distinct eigenvalue count, reducedness.
    Invariants,
    /// Twin reduction: `graph6 TAB removed_count` per graph.
    Reduce,
    /// Classify each graph against the even-diameter extremal family.
    Check,
    /// List the family members of diameter d with at most n-max vertices.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Exhaustive sweep over all connected graphs in an order range.
    Verify {
        /// Inclusive order range `A..B`.
        #[arg(long, value_name = "A..B", value_parser = parse_range)]
        n_range: Option<(usize, usize)>,
        /// Comma-separated suite names, `all` or `none`.
        #[arg(long, value_name = "LIST", default_value = "all", value_parser = parse_suites)]
        suites: SuiteList,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone)]
struct SuiteList(BTreeSet<Suite>);

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn parse_suites(s: &str) -> Result<SuiteList, String> {
    match s {
        "all" => Ok(SuiteList(Suite::ALL.into_iter().collect())),
        "none" | "" => Ok(SuiteList(BTreeSet::new())),
        _ => s
            .split(',')
            .map(|t| t.trim().parse::<Suite>())
            .collect::<Result<_, _>>()
            .map(SuiteList),
    }
}

/// Failure classes that map to exit codes 2 and 3.
#[derive(Default)]
struct Status {
    input_errors: usize,
    mismatches: usize,
}

impl Status {
    fn exit_code(&self) -> ExitCode {
        if self.mismatches > 0 {
            ExitCode::from(3)
        } else if self.input_errors > 0 {
            ExitCode::from(2)
        } else {
            ExitCode::SUCCESS
        }
    }
}

#[derive(Debug)]
struct UsageError(String);

enum Record {
    Ok {
        json: Value,
        text: String,
        mismatch: bool,
    },
    Err {
        line: usize,
        input: String,
        message: String,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("NULLITY_LOG", "warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            if let Some(UsageError(msg)) = e.downcast_ref::<UsageError>() {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn run(cli: Cli) -> Result<Status> {
    let opts = cli.opts;
    if let Some(k) = opts.jobs {
        if k == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .context("building worker pool")?;
    }
    let mut out = open_output(&opts.out)?;
    let status = match cli.command {
        Command::Invariants => {
            let format = opts.format.unwrap_or(Format::Json);
            per_graph(&opts, &mut out, format, invariants_record)
        }
        Command::Reduce => {
            let format = opts.format.unwrap_or(Format::Text);
            per_graph(&opts, &mut out, format, reduce_record)
        }
        Command::Check => {
            let format = opts.format.unwrap_or(Format::Json);
            let limit = opts.path_limit;
            per_graph(&opts, &mut out, format, move |item| {
                check_record(item, limit)
            })
        }
        Command::Gen { d, n_max } => gen(d, n_max, opts.format.unwrap_or(Format::Text), &mut out),
        Command::Verify { n_range, suites } => {
            let (lo, hi) = match (n_range, opts.n) {
                (Some(r), None) => r,
                (None, Some(n)) => (n, n),
                (Some(_), Some(_)) => return Err(usage("give either --n-range or --n, not both")),
                (None, None) => return Err(usage("verify needs --n-range A..B or --n N")),
            };
            let sweep = SweepOptions {
                suites: suites.0,
                path_limit: opts.path_limit,
                ..SweepOptions::default()
            };
            verify(
                lo,
                hi,
                &sweep,
                opts.format.unwrap_or(Format::Json),
                &mut out,
            )
        }
    }?;
    out.flush().context("flushing output")?;
    Ok(status)
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

type Items = Box<dyn Iterator<Item = Result<IngestedGraph, IngestError>>>;

fn open_input(opts: &GlobalOpts) -> Result<Items> {
    if let Some(n) = opts.n {
        let graphs = connected_graphs(n).map_err(|e| usage(e.to_string()))?;
        return Ok(Box::new(graphs.enumerate().map(|(i, graph)| {
            Ok(IngestedGraph {
                line: i + 1,
                text: graph.to_graph6(),
                graph,
            })
        })));
    }
    let reader: Box<dyn BufRead> = match opts.input.as_deref() {
        None | Some("-") => Box::new(BufReader::new(io::stdin())),
        Some(path) => Box::new(BufReader::new(
            File::open(path).map_err(|e| usage(format!("cannot open {path}: {e}")))?,
        )),
    };
    Ok(Box::new(ingest_graph6_stream(reader)))
}

/// Apply `f` to every input graph, in parallel chunks, writing results in
/// input order.
fn per_graph<F>(opts: &GlobalOpts, out: &mut dyn Write, format: Format, f: F) -> Result<Status>
where
    F: Fn(&IngestedGraph) -> Record + Sync,
{
    let mut items = open_input(opts)?;
    let mut status = Status::default();
    loop {
        let chunk: Vec<_> = items.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let records: Vec<Record> = chunk
            .par_iter()
            .map(|item| match item {
                Ok(g) => f(g),
                Err(e) => Record::Err {
                    line: e.line(),
                    input: match e {
                        IngestError::Parse { text, .. } => text.clone(),
                        IngestError::Io { .. } => String::new(),
                    },
                    message: match e {
                        IngestError::Parse { source, .. } => source.to_string(),
                        IngestError::Io { source, .. } => source.to_string(),
                    },
                },
            })
            .collect();
        for r in records {
            write_record(out, format, r, &mut status)?;
        }
    }
    info!(
        "{} input errors, {} mismatches",
        status.input_errors, status.mismatches
    );
    Ok(status)
}

fn write_record(out: &mut dyn Write, format: Format, r: Record, status: &mut Status) -> Result<()> {
    match r {
        Record::Ok {
            json,
            text,
            mismatch,
        } => {
            if mismatch {
                status.mismatches += 1;
                warn!("mismatch: {}", json["graph6"].as_str().unwrap_or_default());
            }
            match format {
                Format::Json => writeln!(out, "{json}")?,
                Format::Text => writeln!(out, "{text}")?,
            }
        }
        Record::Err {
            line,
            input,
            message,
        } => {
            status.input_errors += 1;
            error!("line {line}: {message}");
            if format == Format::Json {
                let rec = json!({"line": line, "input": input, "error": message});
                writeln!(out, "{rec}")?;
            }
        }
    }
    Ok(())
}

fn input_error(item: &IngestedGraph, message: impl ToString) -> Record {
    Record::Err {
        line: item.line,
        input: item.text.clone(),
        message: message.to_string(),
    }
}

fn invariants_record(item: &IngestedGraph) -> Record {
    let g = &item.graph;
    let d = diameter(g).ok();
    let rank = graph_rank(g);
    let eta = nullity(g);
    let e = distinct_eigenvalue_count(g);
    let reduced = is_reduced(g);
    let d_text = d.map_or("-".to_string(), |d| d.to_string());
    Record::Ok {
        json: json!({
            "line": item.line,
            "graph6": item.text,
            "n": g.n(),
            "d": d,
            "rank": rank,
            "nullity": eta,
            "e": e,
            "reduced": reduced,
        }),
        text: format!(
            "{}\tn={} d={d_text} rank={rank} nullity={eta} e={e} reduced={reduced}",
            item.text,
            g.n()
        ),
        mismatch: false,
    }
}

fn reduce_record(item: &IngestedGraph) -> Record {
    let red = match reduce(&item.graph) {
        Ok(r) => r,
        Err(e) => return input_error(item, e),
    };
    let g6 = red.graph.to_graph6();
    Record::Ok {
        json: json!({
            "line": item.line,
            "graph6": item.text,
            "reduced": g6,
            "removed_count": red.removed_count(),
            "removed": red.removed,
            "d_before": red.diameter_before,
            "d_after": red.diameter_after,
        }),
        text: format!("{g6}\t{}", red.removed_count()),
        mismatch: false,
    }
}

fn check_record(item: &IngestedGraph, limit: usize) -> Record {
    let r = match recognize_with_limit(&item.graph, limit) {
        Ok(r) => r,
        Err(e) => return input_error(item, e),
    };
    let mut text = format!("{}\t{}\td={}", item.text, r.verdict.name(), r.d);
    match &r.verdict {
        Verdict::EvenExtremal { params, variant } => {
            let anchors: Vec<String> = params.anchors.iter().map(usize::to_string).collect();
            text.push_str(&format!(
                " b={} A={{{}}} variant={}",
                params.b,
                anchors.join(","),
                serde_json::to_value(variant)
                    .expect("serializable")
                    .as_str()
                    .unwrap_or_default()
            ));
        }
        Verdict::Mismatch { failures, reduced } => {
            text.push_str(&format!(" reduced={reduced} paths={}", failures.len()));
        }
        _ => {}
    }
    let mismatch = matches!(r.verdict, Verdict::Mismatch { .. });
    let mut json = serde_json::to_value(&r).expect("serializable");
    json["line"] = json!(item.line);
    Record::Ok {
        json,
        text,
        mismatch,
    }
}

fn gen(d: usize, n_max: usize, format: Format, out: &mut dyn Write) -> Result<Status> {
    let members = match enumerate_family(d, n_max) {
        Ok(m) => m,
        Err(FamilyError::InvalidParams(msg)) => return Err(usage(msg)),
        Err(e) => return Err(usage(e.to_string())),
    };
    for m in &members {
        match format {
            Format::Text => writeln!(out, "{}", m.graph.to_graph6())?,
            Format::Json => writeln!(out, "{}", serde_json::to_string(m)?)?,
        }
    }
    info!("{} family members for d={d}, n_max={n_max}", members.len());
    Ok(Status::default())
}

fn verify(
    lo: usize,
    hi: usize,
    opts: &SweepOptions,
    format: Format,
    out: &mut dyn Write,
) -> Result<Status> {
    if hi > ENUM_MAX_N && lo <= hi {
        return Err(usage(format!(
            "n range upper bound {hi} exceeds {ENUM_MAX_N}"
        )));
    }
    let report = nullity_core::enumerate::verify_theorem(lo, hi, opts)?;
    summarize(&report, &mut io::stderr().lock())?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
        Format::Text => summarize(&report, out)?,
    }
    let status = Status {
        input_errors: 0,
        mismatches: report.mismatches.len() + report.family_missing.len(),
    };
    if status.mismatches > 0 && report.mismatches.is_empty() {
        // Family members absent from the census are a disagreement too.
        warn!(
            "{} family members missing from the census",
            report.family_missing.len()
        );
    }
    Ok(status)
}

fn summarize(r: &SweepReport, w: &mut dyn Write) -> Result<()> {
    if r.per_n.is_empty() {
        writeln!(w, "empty range {}..{}", r.n_min, r.n_max)?;
        return Ok(());
    }
    writeln!(
        w,
        "{:>3} {:>9} {:>9} {:>8} {:>5} {:>8} {:>10}",
        "n", "connected", "reduced", "extremal", "odd", "even-red", "recognized"
    )?;
    for s in &r.per_n {
        writeln!(
            w,
            "{:>3} {:>9} {:>9} {:>8} {:>5} {:>8} {:>10}",
            s.n,
            s.connected,
            s.reduced,
            s.extremal,
            s.odd_extremal,
            s.even_extremal_reduced,
            s.recognized
        )?;
    }
    for (suite, rep) in &r.suites {
        writeln!(
            w,
            "suite {suite}: {} graphs, {} skipped, {} violations",
            rep.graphs_checked,
            rep.skipped,
            rep.violations.len()
        )?;
    }
    writeln!(
        w,
        "mismatches: {}, family members missing: {}, reduction violations: {}, reduction gaps: {}",
        r.mismatches.len(),
        r.family_missing.len(),
        r.reduction_violations.len(),
        r.reduction_gaps.len()
    )?;
    if let Some(t) = r.timings.get("total") {
        writeln!(w, "total {t:.2}s")?;
    }
    Ok(())
}
