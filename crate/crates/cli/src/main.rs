//! Command-line surface over the revmul library: graph construction, DOT
//! export, enumeration, generating functions, single-number verification,
//! the survey table and the conjecture audit.
//!
//! Exit codes: 0 success, 2 no Young graph for the requested (g,k),
//! 3 a search budget was exceeded, 1 usage or internal error.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use revmul::classify::{
    audit_finalize, cells, classify, render_survey_table, survey_cell, AuditReport, SurveyOptions,
};
use revmul::enumerate::{
    enumerate_multiples_with_budget, render_bfile, Limit, DEFAULT_PATH_BUDGET,
};
use revmul::genfunc::{generating_functions_with_budget, GfOutcome, DEFAULT_GF_NODE_BUDGET};
use revmul::graphcore::{build_h_graph, YoungGraph};
use revmul::numeral::{is_reverse_multiple, mul_small, reverse, DigitVector, Verdict};
use revmul::Error;

const EXIT_NO_YOUNG_GRAPH: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "revmul",
    version,
    about = "Young graphs for (g,k)-reverse multiples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Dot,
    Bfile,
}

#[derive(Subcommand)]
enum Command {
    /// Build the (g,k) Young graph and report its structure
    Graph {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Count the starting node and its edges too
        #[arg(long)]
        include_start: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List reverse multiples in increasing order
    Enumerate {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        /// How many multiples to emit
        #[arg(long, conflicts_with = "max_digits")]
        count: Option<usize>,
        /// Emit every multiple with at most this many digits
        #[arg(long)]
        max_digits: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Cap on paths explored per digit length
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generating functions P, Q, C and their series
    Gf {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        /// Series terms to print
        #[arg(long, default_value_t = 20)]
        terms: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Node budget for the symbolic solve
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a number is a (g,k)-reverse multiple
    Verify {
        /// Tuple notation "(1,0,2,5,1,5)_8" or plain decimal (needs --g)
        number: String,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of all (g,k) admitting reverse multiples, with families
    Survey {
        #[arg(long, default_value_t = 20)]
        max_g: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Node budget for the symbolic generating-function solves
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit the conjectures over a base range
    Audit {
        #[arg(long, default_value_t = 40)]
        max_g: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap would exit 2 on usage errors; this tool reserves 2 for
            // "no Young graph".
            let _ = err.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NoYoungGraph(g, k)) => {
            eprintln!(
                "no ({},{}) Young graph: the carry graph contains no pivot nodes",
                g, k
            );
            ExitCode::from(EXIT_NO_YOUNG_GRAPH)
        }
        Err(err) => {
            let budget = matches!(
                err.downcast_ref::<Error>(),
                Some(Error::BudgetExceeded { .. }) | Some(Error::PathBudgetExceeded { .. })
            );
            eprintln!("error: {err}");
            ExitCode::from(if budget { EXIT_BUDGET } else { 1 })
        }
    }
}

enum Outcome {
    Done,
    NoYoungGraph(u32, u32),
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn young_or_exit(g: u32, k: u32) -> anyhow::Result<Result<YoungGraph, Outcome>> {
    let h = build_h_graph(g, k)?;
    match h.prune() {
        Some((young, _)) => Ok(Ok(young)),
        None => Ok(Err(Outcome::NoYoungGraph(g, k))),
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Graph {
            g,
            k,
            format,
            include_start,
            out,
        } => graph_command(g, k, format, include_start, &out),
        Command::Enumerate {
            g,
            k,
            count,
            max_digits,
            format,
            budget,
            out,
        } => enumerate_command(g, k, count, max_digits, format, budget, &out),
        Command::Gf {
            g,
            k,
            terms,
            format,
            budget,
            out,
        } => gf_command(g, k, terms, format, budget, &out),
        Command::Verify {
            number,
            g,
            k,
            format,
            out,
        } => verify_command(&number, g, k, format, &out),
        Command::Survey {
            max_g,
            format,
            jobs,
            budget,
            out,
        } => survey_command(max_g, format, jobs, budget, &out),
        Command::Audit {
            max_g,
            format,
            jobs,
            out,
        } => audit_command(max_g, format, jobs, &out),
    }
}

fn graph_command(
    g: u32,
    k: u32,
    format: Format,
    include_start: bool,
    out: &Option<PathBuf>,
) -> anyhow::Result<Outcome> {
    let h = build_h_graph(g, k)?;
    let pruned = h.prune();
    let Some((young, stats)) = pruned else {
        if format == Format::Json {
            let body = serde_json::json!({
                "g": g, "k": k, "exists": false,
                "h_nodes": h.internal_node_count(),
                "h_edges": h.internal_edge_count(),
            });
            emit(out, &format!("{:#}\n", body))?;
        }
        return Ok(Outcome::NoYoungGraph(g, k));
    };
    match format {
        Format::Dot => emit(out, &revmul::dot::render(&young, include_start))?,
        Format::Json => {
            let family = classify(&young);
            let body = serde_json::json!({
                "g": g, "k": k, "exists": true,
                "nodes": young.internal_node_count(),
                "edges": young.internal_edge_count(),
                "nodes_with_start": young.total_node_count(),
                "edges_with_start": young.total_edge_count(),
                "h_nodes": h.internal_node_count(),
                "h_edges": h.internal_edge_count(),
                "pruned_nodes": stats.removed_nodes,
                "pruned_edges": stats.removed_edges,
                "family": family.to_string(),
                "letter": family.table_letter(),
                "even_pivots": pivot_names(&young, young.even_pivots()),
                "odd_pivots": pivot_names(&young, young.odd_pivots()),
            });
            emit(out, &format!("{:#}\n", body))?;
        }
        Format::Text => {
            let mut text = String::new();
            let (nodes, edges) = if include_start {
                (young.total_node_count(), young.total_edge_count())
            } else {
                (young.internal_node_count(), young.internal_edge_count())
            };
            let suffix = if include_start {
                "including the starting node"
            } else {
                "internal"
            };
            text.push_str(&format!(
                "({},{}) Young graph: {} nodes, {} edges ({})\n",
                g, k, nodes, edges, suffix
            ));
            text.push_str(&format!(
                "H({},{}): {} nodes, {} edges; pruning removed {} nodes, {} edges\n",
                g,
                k,
                h.internal_node_count(),
                h.internal_edge_count(),
                stats.removed_nodes,
                stats.removed_edges
            ));
            text.push_str(&format!("family: {}\n", classify(&young)));
            text.push_str(&format!(
                "even pivots: {}\n",
                pivot_names(&young, young.even_pivots()).join(" ")
            ));
            text.push_str(&format!(
                "odd pivots: {}\n",
                pivot_names(&young, young.odd_pivots()).join(" ")
            ));
            emit(out, &text)?;
        }
        Format::Bfile => anyhow::bail!("b-file output applies to `enumerate` only"),
    }
    Ok(Outcome::Done)
}

fn pivot_names(young: &YoungGraph, pivots: &[usize]) -> Vec<String> {
    pivots
        .iter()
        .map(|&i| young.nodes()[i].to_string())
        .collect()
}

fn enumerate_command(
    g: u32,
    k: u32,
    count: Option<usize>,
    max_digits: Option<usize>,
    format: Format,
    budget: Option<usize>,
    out: &Option<PathBuf>,
) -> anyhow::Result<Outcome> {
    let young = match young_or_exit(g, k)? {
        Ok(young) => young,
        Err(outcome) => return Ok(outcome),
    };
    let limit = match (count, max_digits) {
        (Some(c), None) => Limit::Count(c),
        (None, Some(m)) => Limit::MaxDigits(m),
        (None, None) => Limit::Count(20),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    let budget = budget.unwrap_or(DEFAULT_PATH_BUDGET);
    let multiples = enumerate_multiples_with_budget(&young, limit, budget)?;
    match format {
        Format::Bfile => emit(out, &render_bfile(&multiples)?)?,
        Format::Json => {
            let body = serde_json::json!({
                "g": g, "k": k,
                "count": multiples.len(),
                "multiples": multiples.iter().map(|m| m.tuple_notation()).collect::<Vec<_>>(),
                "decimal": multiples
                    .iter()
                    .map(|m| m.value_u64().map(|v| v.to_string()))
                    .collect::<Vec<_>>(),
            });
            emit(out, &format!("{:#}\n", body))?;
        }
        Format::Text => {
            let mut text = String::new();
            for m in &multiples {
                match m.value_u64() {
                    Some(v) => text.push_str(&format!("{}  = {}\n", m.tuple_notation(), v)),
                    None => text.push_str(&format!("{}\n", m.tuple_notation())),
                }
            }
            emit(out, &text)?;
        }
        Format::Dot => anyhow::bail!("DOT output applies to `graph` only"),
    }
    Ok(Outcome::Done)
}

fn gf_command(
    g: u32,
    k: u32,
    terms: usize,
    format: Format,
    budget: Option<usize>,
    out: &Option<PathBuf>,
) -> anyhow::Result<Outcome> {
    let young = match young_or_exit(g, k)? {
        Ok(young) => young,
        Err(outcome) => return Ok(outcome),
    };
    let budget = budget.unwrap_or(DEFAULT_GF_NODE_BUDGET);
    let outcome = generating_functions_with_budget(&young, budget)?;
    let series = outcome.c_series(terms)?;
    let series_str: Vec<String> = series.iter().map(|c| c.to_string()).collect();
    match format {
        Format::Json => {
            let body = match &outcome {
                GfOutcome::Closed(gfs) => serde_json::json!({
                    "g": g, "k": k,
                    "series_only": false,
                    "p": gfs.p.to_string(),
                    "q": gfs.q.to_string(),
                    "c": gfs.c.to_string(),
                    "p_num": gfs.p.num(), "p_den": gfs.p.den(),
                    "q_num": gfs.q.num(), "q_den": gfs.q.den(),
                    "c_num": gfs.c.num(), "c_den": gfs.c.den(),
                    "c_series": series_str,
                }),
                GfOutcome::SeriesOnly { horizon, .. } => serde_json::json!({
                    "g": g, "k": k,
                    "series_only": true,
                    "horizon": horizon,
                    "c_series": series_str,
                }),
            };
            emit(out, &format!("{:#}\n", body))?;
        }
        Format::Text => {
            let mut text = String::new();
            match &outcome {
                GfOutcome::Closed(gfs) => {
                    text.push_str(&format!("P(x) = {}\n", gfs.p));
                    text.push_str(&format!("Q(x) = {}\n", gfs.q));
                    text.push_str(&format!("C(x) = {}\n", gfs.c));
                }
                GfOutcome::SeriesOnly { .. } => {
                    text.push_str(&format!(
                        "graph exceeds the symbolic budget ({} nodes); series only\n",
                        budget
                    ));
                }
            }
            text.push_str(&format!(
                "c_0..c_{} = {}\n",
                terms.saturating_sub(1),
                series_str.join(",")
            ));
            emit(out, &text)?;
        }
        _ => anyhow::bail!("gf supports text and json output"),
    }
    Ok(Outcome::Done)
}

fn parse_number(number: &str, g: Option<u32>) -> anyhow::Result<DigitVector> {
    let trimmed = number.trim();
    if trimmed.starts_with('(') {
        let d = DigitVector::parse_tuple(trimmed)?;
        if let Some(g) = g {
            anyhow::ensure!(
                g == d.base(),
                "--g {} disagrees with the base {} in the tuple",
                g,
                d.base()
            );
        }
        Ok(d)
    } else {
        let g = g.ok_or_else(|| anyhow::anyhow!("plain numbers need --g to fix the base"))?;
        let value: u64 = trimmed.parse()?;
        Ok(DigitVector::from_value(g, value)?)
    }
}

/// Renders the multiplication tableau with the carry row, one column per
/// digit, carries shifted one column left as in a worked long
/// multiplication.
fn render_tableau(n: &DigitVector, k: u32) -> anyhow::Result<String> {
    let (product, carries) = mul_small(n, k)?;
    let width = n
        .digits()
        .iter()
        .chain(product.digits())
        .chain(carries.right_to_left())
        .map(|d| d.to_string().len())
        .max()
        .unwrap_or(1)
        + 1;
    let cell = |d: u32| format!("{:>width$}", d, width = width);
    let pad = |count: usize| " ".repeat(width * count);
    let label = |s: String| format!("{:<9}= ", s);
    let n_cells: String = n.digits().iter().map(|&d| cell(d)).collect();
    let p_cells: String = product.digits().iter().map(|&d| cell(d)).collect();
    let c_cells: String = carries.left_to_right().iter().map(|&d| cell(d)).collect();
    let lead = carries.len() - product.len();
    let mult = format!("x{}", k);
    let mut text = String::new();
    text.push_str(&format!(
        "{}{}{}\n",
        label("N".into()),
        pad(carries.len() - n.len()),
        n_cells
    ));
    text.push_str(&format!(
        "{}{}{}\n",
        label(String::new()),
        " ".repeat((width * carries.len()).saturating_sub(mult.len())),
        mult
    ));
    text.push_str(&format!(
        "{}{}{}\n",
        label(format!("{}N", k)),
        pad(lead),
        p_cells
    ));
    text.push_str(&format!("{}{}\n", label("carries".into()), c_cells));
    Ok(text)
}

fn verify_command(
    number: &str,
    g: Option<u32>,
    k: u32,
    format: Format,
    out: &Option<PathBuf>,
) -> anyhow::Result<Outcome> {
    let n = parse_number(number, g)?;
    anyhow::ensure!(n.is_canonical(), "number has a leading zero");
    anyhow::ensure!(!n.is_zero(), "zero is not a reverse multiple");
    let verdict = is_reverse_multiple(&n, k)?;
    match format {
        Format::Json => {
            let body = match &verdict {
                Verdict::Yes(carries) => serde_json::json!({
                    "number": n.tuple_notation(),
                    "g": n.base(), "k": k,
                    "reverse_multiple": true,
                    "carries_left_to_right": carries.left_to_right(),
                }),
                Verdict::No => serde_json::json!({
                    "number": n.tuple_notation(),
                    "g": n.base(), "k": k,
                    "reverse_multiple": false,
                }),
            };
            emit(out, &format!("{:#}\n", body))?;
        }
        Format::Text => {
            let mut text = render_tableau(&n, k)?;
            match &verdict {
                Verdict::Yes(_) => text.push_str(&format!(
                    "yes: reversing {} gives {} times it\n",
                    n.tuple_notation(),
                    k
                )),
                Verdict::No => {
                    let rev = reverse(&n);
                    text.push_str(&format!(
                        "no: the reversal is {}, not {} times the number\n",
                        rev.tuple_notation(),
                        k
                    ));
                }
            }
            emit(out, &text)?;
        }
        _ => anyhow::bail!("verify supports text and json output"),
    }
    Ok(Outcome::Done)
}

fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

fn survey_command(
    max_g: u32,
    format: Format,
    jobs: Option<usize>,
    budget: Option<usize>,
    out: &Option<PathBuf>,
) -> anyhow::Result<Outcome> {
    let opts = SurveyOptions {
        gf_node_budget: budget.unwrap_or(DEFAULT_GF_NODE_BUDGET),
        ..Default::default()
    };
    let records = with_pool(jobs, || {
        cells(max_g)
            .into_par_iter()
            .map(|(g, k)| survey_cell(g, k, &opts))
            .collect::<revmul::Result<Vec<_>>>()
    })??;
    match format {
        Format::Text => emit(out, &render_survey_table(&records))?,
        Format::Json => {
            let body = serde_json::json!({
                "max_g": max_g,
                "records": records,
            });
            emit(out, &format!("{:#}\n", body))?;
        }
        _ => anyhow::bail!("survey supports text and json output"),
    }
    Ok(Outcome::Done)
}

fn audit_command(
    max_g: u32,
    format: Format,
    jobs: Option<usize>,
    out: &Option<PathBuf>,
) -> anyhow::Result<Outcome> {
    let audits = with_pool(jobs, || {
        cells(max_g)
            .into_par_iter()
            .map(|(g, k)| revmul::classify::audit_cell(g, k, 16))
            .collect::<revmul::Result<Vec<_>>>()
    })??;
    let report = audit_finalize(max_g, audits)?;
    match format {
        Format::Json => {
            emit(out, &format!("{:#}\n", serde_json::to_value(&report)?))?;
        }
        Format::Text => emit(out, &render_audit(&report))?,
        _ => anyhow::bail!("audit supports text and json output"),
    }
    Ok(Outcome::Done)
}

fn render_audit(report: &AuditReport) -> String {
    let mut text = String::new();
    text.push_str(&format!(
        "audited g <= {}: {} cells, {} Young graphs\n",
        report.g_max, report.cells_scanned, report.young_graphs
    ));
    if report.findings.is_empty() {
        text.push_str("no counterexamples found\n");
    } else {
        text.push_str(&format!("{} findings:\n", report.findings.len()));
        for f in &report.findings {
            text.push_str(&format!(
                "  {} at ({},{}): {}\n",
                f.check, f.g, f.k, f.detail
            ));
        }
    }
    text.push_str("first complete graphs:");
    for (m, g, k) in &report.k_first {
        text.push_str(&format!(" K{}=({},{})", m, g, k));
    }
    text.push_str("\nfirst cyclic graphs:");
    for (m, g, k) in &report.z_first {
        text.push_str(&format!(" Z{}=({},{})", m, g, k));
    }
    text.push('\n');
    if report.iso_question_pairs.is_empty() {
        text.push_str("no digraph-isomorphic pairs with differing pivot structure\n");
    } else {
        for pair in &report.iso_question_pairs {
            text.push_str(&format!("pivot-structure question: {}\n", pair));
        }
    }
    text
}
