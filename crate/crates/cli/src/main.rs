//! `mec`: verify maximal edge colorings, print spectrum bounds, and search for
//! members of `MEC(n)`.
//!
//! Exit status: 0 success, 1 negative verdict, 2 input error, 3 incomplete.

mod report;

use std::fs;
use std::io::{self, BufReader};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mec_core::bounds::{lemma_quadratic_root, lemma_stated_bound, Parity};
use mec_core::{
    chromatic_index_complete, compute_spectrum_range, decode_certificate, exists_mec, graph6,
    mec_lower_bound, predicted_spectrum, Certificate, Filters, GraphSource, SearchConfig,
    MAX_ENUMERATION_ORDER,
};
use serde_json::json;

use report::{RecordWriter, Summary};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const INCOMPLETE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mec",
    version,
    about = "Maximal edge colorings: verification, bounds and exhaustive search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a JSON certificate.
    Verify { file: PathBuf },
    /// Print the proven bounds on MEC(n).
    Bounds {
        n: usize,
        /// Emit one JSON object instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether m is in MEC(n).
    Search {
        n: usize,
        m: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Decide every m in MEC(n), or those in --from..=--to.
    Spectrum {
        n: usize,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Args)]
struct SearchOpts {
    /// Use the graphs of a graph6 file instead of the built-in enumeration.
    #[arg(long, value_name = "FILE")]
    graphs_from: Option<PathBuf>,
    #[arg(long, env = "MEC_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Per-graph limit on color assignments; exceeding it makes the entry unknown.
    #[arg(long, value_name = "NODES")]
    budget: Option<u64>,
    /// Limit on augmentations examined by the enumerator for each m.
    #[arg(long, value_name = "NODES")]
    enumeration_budget: Option<u64>,
    /// Search even where a proven result already excludes m.
    #[arg(long)]
    no_theorem_shortcuts: bool,
    #[arg(long)]
    no_max_degree_filter: bool,
    #[arg(long)]
    no_degree_sum_filter: bool,
    #[arg(long)]
    no_independent_triple_filter: bool,
    /// Add wall-clock runtime to the summary record.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify { file } => verify(&file),
        Command::Bounds { n, json } => bounds(n, json),
        Command::Search { n, m, opts } => run("search", n, Some((m, m)), &opts),
        Command::Spectrum { n, from, to, opts } => {
            let max = n * n.saturating_sub(1) / 2;
            run(
                "spectrum",
                n,
                Some((from.unwrap_or(0), to.unwrap_or(max))),
                &opts,
            )
        }
    };
    ExitCode::from(code)
}

fn fail(message: impl std::fmt::Display) -> u8 {
    eprintln!("mec: {message}");
    INPUT_ERROR
}

fn verify(file: &PathBuf) -> u8 {
    let bytes = match fs::read(file) {
        Ok(b) => b,
        Err(e) => return fail(format!("{}: {e}", file.display())),
    };
    let cert = match Certificate::from_slice(&bytes) {
        Ok(c) => c,
        Err(e) => {
            println!(
                "{}",
                json!({ "valid": false, "code": e.code(), "error": e.to_string() })
            );
            return INPUT_ERROR;
        }
    };
    match decode_certificate(&cert) {
        Ok((g, col)) => {
            println!(
                "{}",
                json!({ "valid": true, "n": g.order(), "m": g.size(), "k": col.colors() })
            );
            OK
        }
        Err(e) => {
            println!(
                "{}",
                json!({ "valid": false, "code": e.code(), "error": e.to_string() })
            );
            NEGATIVE
        }
    }
}

fn bounds(n: usize, as_json: bool) -> u8 {
    if n < 3 {
        return fail(format!("bounds need n >= 3, got {n}"));
    }
    let k = chromatic_index_complete(n);
    let lower = mec_lower_bound(n);
    let prediction = predicted_spectrum(n);
    let parity = Parity::of(n);
    let root = lemma_quadratic_root(n, parity);
    let stated = lemma_stated_bound(n, parity);
    let threshold = match parity {
        Parity::Even => n,
        Parity::Odd => n + 2,
    };
    let lower_source = match lower.theorem {
        Some(t) => format!("{} ({})", t.tag(), t.statement()),
        None => "not covered by theorem".to_string(),
    };
    if as_json {
        println!(
            "{}",
            json!({
                "n": n,
                "k": k,
                "lower_bound": lower.value,
                "lower_bound_source": lower.theorem.map(|t| t.tag()).unwrap_or("not-covered"),
                "lemma": {
                    "threshold": threshold,
                    "quadratic_root": root.to_string(),
                    "stated_bound": stated.to_string(),
                },
                "prediction": prediction,
            })
        );
        return OK;
    }
    let range = prediction.member_range;
    let exclusions: Vec<String> = prediction.exclusions.iter().map(usize::to_string).collect();
    println!("n                        {n}");
    println!("colors k                 {k}");
    println!(
        "lower bound              m >= {}  [{lower_source}]",
        lower.value
    );
    println!("lemma threshold          d(u) + d(v) >= {threshold} on non-edges");
    println!("lemma quadratic root     {root}");
    println!("lemma stated bound       {stated}");
    println!("status                   {}", status_name(&prediction));
    println!("range                    [{}, {}]", range.0, range.1);
    println!("exclusions               {{{}}}", exclusions.join(", "));
    for c in &prediction.citations {
        println!(
            "  {:<40} {} ({})",
            c.boundary,
            c.theorem.tag(),
            c.theorem.statement()
        );
    }
    OK
}

fn status_name(p: &mec_core::SpectrumPrediction) -> &'static str {
    match p.status {
        mec_core::PredictionStatus::Complete => "complete",
        mec_core::PredictionStatus::RequiresSearch => "requires-search",
    }
}

fn install_interrupt_flag() -> Arc<AtomicBool> {
    let flag = Arc::new(AtomicBool::new(false));
    let handler_flag = Arc::clone(&flag);
    // SAFETY: the handler only performs an atomic store, which is async-signal-safe.
    let registered = unsafe {
        signal_hook_registry::register(libc::SIGINT, move || {
            handler_flag.store(true, Ordering::SeqCst)
        })
    };
    if let Err(e) = registered {
        eprintln!("mec: interrupts will not drain gracefully: {e}");
    }
    flag
}

fn run(command: &str, n: usize, range: Option<(usize, usize)>, opts: &SearchOpts) -> u8 {
    let started = Instant::now();
    if n == 0 {
        return fail("n must be at least 1");
    }
    let max = n * (n - 1) / 2;
    let (from, to) = range.unwrap_or((0, max));
    if from > to || to > max {
        return fail(format!(
            "m range {from}..={to} is outside 0..={max} for n = {n}"
        ));
    }
    if opts.workers == 0 {
        return fail("--workers must be at least 1");
    }
    let source = match &opts.graphs_from {
        None => {
            if n > MAX_ENUMERATION_ORDER {
                return fail(format!(
                    "exhaustive search is limited to n <= {MAX_ENUMERATION_ORDER}, got {n}"
                ));
            }
            GraphSource::Internal
        }
        Some(path) => match fs::File::open(path)
            .map_err(|e| e.to_string())
            .and_then(|f| graph6::read_all(BufReader::new(f)).map_err(|e| e.to_string()))
        {
            Ok(list) => GraphSource::External(Arc::new(list)),
            Err(e) => return fail(format!("{}: {e}", path.display())),
        },
    };
    let cfg = SearchConfig {
        filters: Filters {
            max_degree: !opts.no_max_degree_filter,
            degree_sum: !opts.no_degree_sum_filter,
            independent_triple: !opts.no_independent_triple_filter,
        },
        workers: opts.workers,
        node_budget: opts.budget,
        enumeration_budget: opts.enumeration_budget,
        theorem_shortcuts: !opts.no_theorem_shortcuts,
        source,
        cancel: Some(install_interrupt_flag()),
    };
    let graphs_from = opts.graphs_from.as_ref().map(|p| p.display().to_string());
    let mut out = RecordWriter::new(io::stdout().lock());
    let mut summary = Summary::default();
    let mut write_failed = None;
    let header = report::header(command, n, (from, to), &cfg, graphs_from.as_deref());
    if let Err(e) = out.emit(&header) {
        return fail(e);
    }
    let result = if command == "search" {
        exists_mec(n, from, &cfg).map(|e| vec![e])
    } else {
        compute_spectrum_range(n, from, to, &cfg, |e| {
            if write_failed.is_none() {
                if let Err(err) = out.emit(&report::entry(e)) {
                    write_failed = Some(err);
                }
            }
        })
    };
    let entries = match result {
        Ok(entries) => entries,
        Err(e) => return fail(e),
    };
    if command == "search" {
        if let Err(err) = out.emit(&report::entry(&entries[0])) {
            write_failed = Some(err);
        }
    }
    if let Some(err) = write_failed {
        return fail(err);
    }
    for e in &entries {
        summary.record(e);
    }
    summary.interrupted = cfg
        .cancel
        .as_ref()
        .is_some_and(|c| c.load(Ordering::SeqCst))
        || entries.len() < to - from + 1;
    let runtime = opts.timing.then(|| started.elapsed().as_millis());
    if let Err(e) = out.emit(&summary.to_value(runtime)) {
        return fail(e);
    }
    if !summary.complete() {
        INCOMPLETE
    } else if command == "search" && summary.members.is_empty() {
        NEGATIVE
    } else {
        OK
    }
}
