use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use isocrit::fixtures;
use isocrit::io::GraphFormat;
use isocrit::oracle::{Oracle, DEFAULT_ANCHORED_CAP, DEFAULT_EXHAUSTIVE_CAP};
use isocrit::partition::{base_partition, subdivide_partition};
use isocrit::verdict::{Outcome, SearchStats, Verdict};
use isocrit::{criterion_by_name, search_isomorphism, verify_criterion, Error, Graph, Label, SearchOptions};

#[derive(Parser)]
#[command(
    name = "isocrit",
    version,
    about = "Test graph isomorphism criteria against worked examples"
)]
struct Cli {
    /// Emit one JSON document instead of KEY: value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Input format; detected from the content when omitted.
    #[arg(long, global = true, value_parser = clap::value_parser!(GraphFormat))]
    format: Option<GraphFormat>,
    /// Also print wall-clock time (omitted by default to keep output stable).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CriterionArg {
    /// One of degree-seq, adj-degree-seq, adj-charpoly, dist-charpoly, canonical-form.
    #[arg(long, short)]
    criterion: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a criterion on one graph.
    Invariant {
        file: String,
        #[command(flatten)]
        criterion: CriterionArg,
    },
    /// Print the vertex-deleted partition, optionally subdivided by neighborhoods.
    Partition {
        file: String,
        #[command(flatten)]
        criterion: CriterionArg,
        #[arg(long)]
        subdivide: bool,
        /// Subdivide by N(u) instead of N[u].
        #[arg(long)]
        open_neighborhood: bool,
    },
    /// Run the greedy verification of a criterion on two graphs.
    Verify {
        file1: String,
        file2: String,
        #[command(flatten)]
        criterion: CriterionArg,
    },
    /// Run the backtracking isomorphism search.
    Match {
        file1: String,
        file2: String,
        #[command(flatten)]
        criterion: CriterionArg,
        #[arg(long)]
        no_prealign: bool,
        #[arg(long)]
        open_neighborhood: bool,
        #[arg(long, default_value_t = DEFAULT_ANCHORED_CAP)]
        anchored_cap: usize,
        /// Seconds before giving up.
        #[arg(long, env = "ISOCRIT_TIME_BUDGET")]
        time_budget: Option<f64>,
    },
    /// Decide isomorphism by brute force.
    Oracle {
        file1: String,
        file2: String,
        /// Pinned pairs `u:v,...` that the isomorphism must extend.
        #[arg(long, value_delimiter = ',', value_parser = parse_anchor)]
        anchors: Option<Vec<(Label, Label)>>,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: usize,
    },
    /// List the bundled graphs.
    Fixtures,
}

fn parse_anchor(s: &str) -> Result<(Label, Label), String> {
    let (u, v) = s.split_once(':').ok_or_else(|| format!("expected u:v, found '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<Label>().map_err(|_| format!("bad label '{t}'"));
    Ok((parse(u)?, parse(v)?))
}

fn load(name: &str, format: Option<GraphFormat>) -> Result<Graph, Error> {
    if fixtures::names().any(|n| n == name) && !Path::new(name).exists() {
        return fixtures::fixture(name);
    }
    let text = std::fs::read_to_string(name).map_err(|e| Error::Io {
        path: name.to_string(),
        message: e.to_string(),
    })?;
    format.unwrap_or_else(|| GraphFormat::detect(&text)).parse(&text)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_resource_limit() { 3 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    let mut out = String::new();
    match &cli.command {
        Command::Invariant { file, criterion } => {
            let c = criterion_by_name(&criterion.criterion)?;
            let value = c.evaluate(&load(file, cli.format)?)?;
            if cli.json {
                out = json!({ "criterion": c.name(), "value": value }).to_string();
                out.push('\n');
            } else {
                writeln!(out, "CRITERION: {}", c.name()).unwrap();
                writeln!(out, "VALUE: {}", value.payload).unwrap();
            }
        }
        Command::Partition {
            file,
            criterion,
            subdivide,
            open_neighborhood,
        } => {
            let c = criterion_by_name(&criterion.criterion)?;
            let g = load(file, cli.format)?;
            let mut p = base_partition(&g, c.as_ref())?;
            if *subdivide {
                p = subdivide_partition(&g, &p, c.as_ref(), !open_neighborhood)?;
            }
            let factor = p.search_space_factor();
            if cli.json {
                let blocks: Vec<_> = p
                    .blocks()
                    .iter()
                    .map(|b| json!({ "key": b.key_hash(), "members": b.members }))
                    .collect();
                out = json!({
                    "criterion": c.name(),
                    "blocks": blocks,
                    "search_space": factor.to_string(),
                })
                .to_string();
                out.push('\n');
            } else {
                writeln!(out, "CRITERION: {}", c.name()).unwrap();
                writeln!(out, "BLOCKS: {}", p.len()).unwrap();
                out.push_str(&p.to_string());
                writeln!(out, "SEARCH-SPACE: {factor}").unwrap();
            }
        }
        Command::Verify {
            file1,
            file2,
            criterion,
        } => {
            let c = criterion_by_name(&criterion.criterion)?;
            let verdict = verify_criterion(&load(file1, cli.format)?, &load(file2, cli.format)?, c.as_ref())?;
            out = render_verdict(&verdict, cli);
        }
        Command::Match {
            file1,
            file2,
            criterion,
            no_prealign,
            open_neighborhood,
            anchored_cap,
            time_budget,
        } => {
            let c = criterion_by_name(&criterion.criterion)?;
            let time_budget = match time_budget {
                Some(s) if !(s.is_finite() && *s >= 0.0) => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("invalid time budget {s}"),
                    })
                }
                Some(s) => Some(Duration::from_secs_f64(*s)),
                None => None,
            };
            let options = SearchOptions {
                closed_neighborhood: !open_neighborhood,
                anchored_cap: *anchored_cap,
                prealign: !no_prealign,
                time_budget,
            };
            let verdict = search_isomorphism(
                &load(file1, cli.format)?,
                &load(file2, cli.format)?,
                c.as_ref(),
                &options,
            )?;
            out = render_verdict(&verdict, cli);
        }
        Command::Oracle {
            file1,
            file2,
            anchors,
            cap,
        } => {
            let (g1, g2) = (load(file1, cli.format)?, load(file2, cli.format)?);
            let oracle = Oracle {
                exhaustive_cap: *cap,
                anchored_cap: *cap,
            };
            let mapping = match anchors {
                Some(anchors) => {
                    let found = oracle.anchored_isomorphic(&g1, &g2, anchors)?;
                    found.then(|| anchors.clone())
                }
                None => oracle.exhaustive_isomorphic(&g1, &g2)?,
            };
            let kind = if mapping.is_some() {
                "ISOMORPHIC"
            } else {
                "NOT-ISOMORPHIC"
            };
            if cli.json {
                out = json!({ "verdict": kind, "mapping": mapping }).to_string();
                out.push('\n');
            } else {
                writeln!(out, "VERDICT: {kind}").unwrap();
                if anchors.is_none() {
                    for &(u, v) in mapping.iter().flatten() {
                        writeln!(out, "PAIR: {u} {v} (u{} v{})", u + 1, v + 1).unwrap();
                    }
                }
            }
        }
        Command::Fixtures => {
            let listing: Vec<_> = fixtures::names()
                .map(|name| {
                    let g = fixtures::fixture(name)?;
                    Ok((name, g.order(), g.edge_count()))
                })
                .collect::<Result<_, Error>>()?;
            if cli.json {
                let items: Vec<_> = listing
                    .iter()
                    .map(|(name, n, m)| json!({ "name": name, "order": n, "edges": m }))
                    .collect();
                out = json!(items).to_string();
                out.push('\n');
            } else {
                for (name, n, m) in listing {
                    writeln!(out, "{name}: {n} vertices, {m} edges").unwrap();
                }
            }
        }
    }
    Ok(out)
}

fn render_verdict(verdict: &Verdict, cli: &Cli) -> String {
    if cli.json {
        let mut value = serde_json::to_value(verdict).expect("verdict serializes");
        if !cli.timing {
            value["stats"].as_object_mut().expect("stats object").remove("elapsed");
        }
        return value.to_string() + "\n";
    }
    let mut out = String::new();
    writeln!(out, "CRITERION: {}", verdict.criterion).unwrap();
    writeln!(out, "VERDICT: {}", verdict.kind()).unwrap();
    match &verdict.outcome {
        Outcome::Isomorphic { mapping } => {
            for &(u, v) in mapping {
                writeln!(out, "PAIR: {u} {v} (u{} v{})", u + 1, v + 1).unwrap();
            }
        }
        Outcome::NotIsomorphic { evidence } => writeln!(out, "EVIDENCE: {evidence}").unwrap(),
        Outcome::NotSufficientNecessary { witness } => {
            for &(u, v) in &witness.mapping {
                writeln!(out, "PAIR: {u} {v} (u{} v{})", u + 1, v + 1).unwrap();
            }
            writeln!(out, "WITNESS: {} (u{})", witness.vertex, witness.vertex + 1).unwrap();
            for r in &witness.rejections {
                writeln!(out, "REJECTED: {} (v{}) {}", r.candidate, r.candidate + 1, r.reason).unwrap();
            }
        }
    }
    render_stats(&mut out, &verdict.stats, cli.timing);
    out
}

fn render_stats(out: &mut String, stats: &SearchStats, timing: bool) {
    writeln!(out, "candidates: {}", stats.candidates).unwrap();
    writeln!(out, "zeta-evals: {}", stats.zeta_evals).unwrap();
    writeln!(out, "dead-ends: {}", stats.dead_ends).unwrap();
    writeln!(out, "backtracks: {}", stats.backtracks).unwrap();
    writeln!(out, "anchored-checks: {}", stats.anchored_checks).unwrap();
    writeln!(out, "anchored-skipped: {}", stats.anchored_skipped).unwrap();
    let [s8, s9, s11, s12] = stats.rejected;
    writeln!(out, "rejected: step8={s8} step9={s9} step11={s11} step12={s12}").unwrap();
    if timing {
        writeln!(out, "elapsed: {:.6}s", stats.elapsed.as_secs_f64()).unwrap();
    }
}
