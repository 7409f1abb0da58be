//! `tgraph` — threshold graphs from creation codes on the command line.
//!
//! A code argument is `n - 1` binary digits plus a trailing `*` (codes ending
//! in a digit are accepted and normalized, since `*` is awkward in shells);
//! with `--ab` it is read in block-plus-word notation such as `000aaba*`.
//!
//! Exit status: 0 on success and passing verifications, 1 when a
//! verification fails or a counterexample is found, 2 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tgraph::code::AbForm;
use tgraph::counting::{
    brute_force_ind_vector, brute_force_match_vector, ind_vector, match_vector, OracleLimits,
};
use tgraph::extremal;
use tgraph::graph::{edge_count, Graph};
use tgraph::moves::{maximize_matchings_by_moves, minimize_indsets_by_moves};
use tgraph::verify::{self, TheoremVerdict};
use tgraph::{StructuralDefect, ThresholdCode};

#[derive(Parser)]
#[command(
    name = "tgraph",
    version,
    about = "Threshold graphs from creation codes: analyze, count, rewrite, verify"
)]
struct Cli {
    /// Worker threads for verify and scan (0 = one per core).
    #[arg(long, global = true, env = "TGRAPH_WORKERS", default_value_t = 0)]
    workers: usize,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Read CODE arguments in block-plus-word notation such as "000aaba*".
    #[arg(long, global = true)]
    ab: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Objective {
    /// Almost-alternating codes: the matching maximizers.
    Matchings,
    /// Colex codes: the independent-set minimizers.
    Indsets,
}

impl Objective {
    fn name(self) -> &'static str {
        match self {
            Objective::Matchings => "matchings",
            Objective::Indsets => "indsets",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    MaxMatchings,
    MinIndsets,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    EdgeList,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a code: parameters, block-plus-word forms, defects.
    Analyze {
        code: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Matching and independent-set counts of every size.
    Count {
        code: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Cross-check the dynamic programs against the brute-force oracles.
        #[arg(long)]
        check: bool,
        /// Override both oracle size caps (defaults: 12 vertices for
        /// matchings, 24 for independent sets).
        #[arg(long, value_name = "N")]
        oracle_limit: Option<usize>,
    },
    /// Edge count of a code.
    Edges {
        code: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Complement code (digits flipped, `*` kept).
    Complement {
        code: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Construct the extremal code for (n, e): almost-alternating for
    /// matchings, colex for independent sets.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: u64,
        #[arg(long, value_enum)]
        kind: Objective,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rewrite a code to its extremal form, one traced move at a time.
    Reduce {
        code: String,
        #[arg(long, value_enum)]
        objective: Objective,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate every code on n vertices and check one theorem.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the per-size matching conjecture for every n up to a bound.
    Scan {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the graph behind a code.
    Export {
        code: String,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => status,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_code(text: &str, ab: bool) -> Result<ThresholdCode> {
    let code = if ab {
        AbForm::parse(text).map(|form| form.code())
            .with_context(|| format!("cannot parse {text:?} as block-plus-word notation"))?
    } else {
        ThresholdCode::parse(text).with_context(|| format!("cannot parse {text:?}"))?
    };
    Ok(code)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut out = String::new();
    let mut pass = true;
    match &cli.command {
        Command::Analyze { code, format } => {
            let code = parse_code(code, cli.ab)?;
            analyze(&mut out, &code, *format)?;
        }
        Command::Count { code, format, check, oracle_limit } => {
            let code = parse_code(code, cli.ab)?;
            pass = count(&mut out, &code, *format, *check, *oracle_limit)?;
        }
        Command::Edges { code, format } => {
            let code = parse_code(code, cli.ab)?;
            match format {
                Format::Text => writeln!(out, "{}", edge_count(&code))?,
                Format::Json => {
                    let value = serde_json::json!({
                        "code": code.to_string(),
                        "n": code.n(),
                        "e": edge_count(&code),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
                }
                Format::Csv => bail!("edges has no csv form; use text or json"),
            }
        }
        Command::Complement { code, format } => {
            let code = parse_code(code, cli.ab)?;
            let complement = code.complement();
            match format {
                Format::Text => writeln!(out, "{complement}")?,
                Format::Json => {
                    let value = serde_json::json!({
                        "code": code.to_string(),
                        "complement": complement.to_string(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
                }
                Format::Csv => bail!("complement has no csv form; use text or json"),
            }
        }
        Command::Extremal { n, e, kind, format } => {
            let code = match kind {
                Objective::Matchings => extremal::almost_alternating_code(*n, *e)?,
                Objective::Indsets => extremal::colex_code(*n, *e)?,
            };
            match format {
                Format::Text => writeln!(out, "{code}")?,
                Format::Json => {
                    let value = serde_json::json!({
                        "n": n,
                        "e": e,
                        "kind": kind.name(),
                        "code": code.to_string(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
                }
                Format::Csv => bail!("extremal has no csv form; use text or json"),
            }
        }
        Command::Reduce { code, objective, format } => {
            let code = parse_code(code, cli.ab)?;
            let trace = match objective {
                Objective::Matchings => maximize_matchings_by_moves(&code),
                Objective::Indsets => minimize_indsets_by_moves(&code),
            };
            match format {
                Format::Text => {
                    writeln!(out, "objective: {}", objective.name())?;
                    writeln!(out, "initial: {}", trace.initial)?;
                    for (i, step) in trace.steps.iter().enumerate() {
                        writeln!(
                            out,
                            "{:3}. {} at {}: {} -> {} (total {} -> {})",
                            i + 1,
                            step.kind,
                            step.at,
                            step.before,
                            step.after,
                            step.total_before,
                            step.total_after,
                        )?;
                    }
                    writeln!(out, "final: {} ({} steps)", trace.final_code, trace.len())?;
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&trace)?)?,
                Format::Csv => bail!("reduce has no csv form; use text or json"),
            }
        }
        Command::Verify { n, theorem, format } => {
            let verdict = match theorem {
                Theorem::MaxMatchings => verify::verify_max_matchings(*n, cli.workers),
                Theorem::MinIndsets => verify::verify_min_indsets(*n, cli.workers),
            };
            pass = verdict.pass;
            render_verdict(&mut out, &verdict, *format)?;
        }
        Command::Scan { n_max, format } => {
            let scan = verify::conjecture_scan(*n_max, cli.workers);
            pass = scan.pass;
            match format {
                Format::Text => {
                    writeln!(out, "scan: n = 1 ..= {}", scan.n_max)?;
                    let codes: u64 = scan.reports.iter().map(|r| r.total_codes).sum();
                    writeln!(out, "codes: {codes}")?;
                    if scan.pass {
                        writeln!(out, "result: PASS (no counterexamples)")?;
                    } else {
                        writeln!(out, "result: FAIL")?;
                        for line in &scan.counterexamples {
                            writeln!(out, "  {line}")?;
                        }
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&scan)?)?,
                Format::Csv => {
                    for (i, report) in scan.reports.iter().enumerate() {
                        let csv = verify::report_to_csv(report);
                        if i == 0 {
                            out.push_str(&csv);
                        } else if let Some((_, rows)) = csv.split_once('\n') {
                            out.push_str(rows);
                        }
                    }
                    for line in &scan.counterexamples {
                        eprintln!("counterexample: {line}");
                    }
                }
            }
        }
        Command::Export { code, format } => {
            let code = parse_code(code, cli.ab)?;
            let graph = Graph::from_code(&code);
            match format {
                ExportFormat::Dot => out.push_str(&graph.dot()),
                ExportFormat::EdgeList => out.push_str(&graph.edge_list()),
            }
        }
    }
    match &cli.output {
        Some(path) => std::fs::write(path, out)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{out}"),
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn analyze(out: &mut String, code: &ThresholdCode, format: Format) -> Result<()> {
    let forms = code.ab_forms();
    let defect = code.find_defect();
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "code": code.to_string(),
                "n": code.n(),
                "e": edge_count(code),
                "almost_alternating": code.is_almost_alternating(),
                "alternating": code.n() >= 2 && code.is_alternating(),
                "small": code.is_small(),
                "large": code.is_large(),
                "forms": forms,
                "defect": defect,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Csv => bail!("analyze has no csv form; use text or json"),
        Format::Text => {
            writeln!(out, "code: {code}")?;
            writeln!(out, "vertices: {}", code.n())?;
            writeln!(out, "edges: {}", edge_count(code))?;
            if let Some(defect) = &defect {
                let label = match defect {
                    StructuralDefect::BracketedString { .. } => "bracketed string",
                    StructuralDefect::SeparationIssue { .. } => "separation issue",
                };
                writeln!(out, "classification: not almost alternating ({label})")?;
                writeln!(out, "defect: {defect}")?;
                writeln!(out, "  {code}")?;
                writeln!(out, "  {}", caret_line(code.n(), defect))?;
            } else {
                let mut tags = vec!["almost alternating"];
                if code.n() >= 2 && code.is_alternating() {
                    tags.push("alternating");
                }
                if code.is_small() == Some(true) {
                    tags.push("small");
                }
                if code.is_large() == Some(true) {
                    tags.push("large");
                }
                writeln!(out, "classification: {}", tags.join(", "))?;
                let spelled: Vec<String> = forms.iter().map(|f| f.to_string()).collect();
                writeln!(out, "forms: {}", spelled.join(", "))?;
            }
        }
    }
    Ok(())
}

/// A `^` under every symbol the defect occupies.
fn caret_line(n: usize, defect: &StructuralDefect) -> String {
    let mut marks = vec![' '; n];
    match *defect {
        StructuralDefect::BracketedString { at, run, .. } => {
            for slot in marks.iter_mut().skip(at).take(run + 2) {
                *slot = '^';
            }
        }
        StructuralDefect::SeparationIssue { first_pair, second_pair } => {
            for p in [first_pair, first_pair + 1, second_pair, second_pair + 1] {
                marks[p] = '^';
            }
        }
    }
    marks.into_iter().collect::<String>().trim_end().to_string()
}

fn count(
    out: &mut String,
    code: &ThresholdCode,
    format: Format,
    check: bool,
    oracle_limit: Option<usize>,
) -> Result<bool> {
    let m = match_vector(code);
    let i = ind_vector(code);
    let mut pass = true;
    let mut check_note = None;
    if check {
        let limits = oracle_limit
            .map(|limit| OracleLimits { matchings: limit, indsets: limit })
            .unwrap_or_default();
        let graph = Graph::from_code(code);
        let oracle_m = brute_force_match_vector(&graph, &limits)?;
        let oracle_i = brute_force_ind_vector(&graph, &limits)?;
        if m == oracle_m && i == oracle_i {
            check_note = Some("vectors agree with the brute-force oracles".to_string());
        } else {
            pass = false;
            check_note = Some(format!(
                "MISMATCH against the oracles: matchings {oracle_m}, independent sets {oracle_i}"
            ));
        }
    }
    match format {
        Format::Text => {
            writeln!(out, "code: {code}")?;
            writeln!(out, "matchings: {m} (total {})", m.total())?;
            writeln!(out, "independent sets: {i} (total {})", i.total())?;
            if let Some(note) = check_note {
                writeln!(out, "check: {note}")?;
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "code": code.to_string(),
                "n": code.n(),
                "e": edge_count(code),
                "matchings": m,
                "m_total": m.total().to_string(),
                "independent_sets": i,
                "i_total": i.total().to_string(),
                "check": check_note,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Csv => bail!("count has no csv form; use text or json"),
    }
    Ok(pass)
}

fn render_verdict(out: &mut String, verdict: &TheoremVerdict, format: Format) -> Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "theorem: {}", verdict.theorem)?;
            writeln!(out, "n: {}", verdict.n)?;
            writeln!(out, "codes: {}", verdict.report.total_codes)?;
            writeln!(out, "elapsed: {} ms", verdict.report.elapsed_ms)?;
            if verdict.pass {
                writeln!(out, "result: PASS")?;
            } else {
                writeln!(out, "result: FAIL")?;
                for line in &verdict.failures {
                    writeln!(out, "  {line}")?;
                }
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(verdict)?)?,
        Format::Csv => {
            out.push_str(&verify::report_to_csv(&verdict.report));
            for line in &verdict.failures {
                eprintln!("failure: {line}");
            }
        }
    }
    Ok(())
}
