use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use immersion::audit::AuditLog;
use immersion::certificate::{parse_certificate, verify, write_certificate, Fingerprint, Verdict};
use immersion::gen;
use immersion::multigraph::{parse_dimacs, parse_graph, write_edge_list, MultiGraph};
use immersion::oracle::{exact_chromatic, immersion_search, ChiOutcome, SearchBudget, SearchOutcome};
use immersion::suite::{self, Level, Status, SuiteConfig};

mod report;
mod strategies;

use report::{AttemptSummary, InputInfo, Outcome, Parameters, RunReport};
use strategies::{Failure, Request, Strategy};

const ACCEPT: u8 = 0;
const REJECT: u8 = 1;
const IO_ERROR: u8 = 2;
const ANOMALY: u8 = 3;

#[derive(Parser)]
#[command(name = "immerse", version, about = "Find and check clique immersions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated graph as an edge list.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file; stdout when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Construct a clique immersion and write its certificate.
    Find {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: Strategy,
        /// Clique order to aim for; each strategy has its own default.
        #[arg(long)]
        t: Option<usize>,
        /// Require routes to avoid branch vertices internally.
        #[arg(long)]
        strong: bool,
        /// Recorded in the report; every strategy is deterministic.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Certificate path; defaults to `<graph>.cert`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add wall time to the report, which then differs between runs.
        #[arg(long)]
        timing: bool,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: PathBuf,
        cert: PathBuf,
        /// Also require the certificate to be strong.
        #[arg(long)]
        strong: bool,
    },
    /// Exhaustive reference searches.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Run the acceptance criteria and print a JSON summary.
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Random simple graph with minimum degree at least `d`.
    RandomMindeg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// `K_{2m}` minus a perfect matching.
    Cocktail { m: usize },
    Complete { n: usize },
    /// Mycielski graph with chromatic number `k`.
    Mycielski { k: usize },
    /// Complement of a random triangle-free graph.
    Cotriangle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Convert a DIMACS file.
    ReadDimacs { file: PathBuf },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Decide whether the graph immerses `K_t`.
    Immersion {
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        strong: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the certificate here when one is found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact chromatic number.
    Chi {
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct BudgetArgs {
    /// Node limit for exhaustive searches.
    #[arg(long, default_value_t = 20_000_000)]
    nodes: u64,
    /// Wall-clock limit for exhaustive searches.
    #[arg(long, default_value_t = 60.0)]
    seconds: f64,
}

impl BudgetArgs {
    fn budget(self) -> SearchBudget {
        SearchBudget {
            nodes: self.nodes,
            seconds: self.seconds,
            ..SearchBudget::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<MultiGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError(format!("{}: {e}", p.display()))),
        None => {
            let _ = io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn print_json(value: &impl Serialize) {
    let text = serde_json::to_string_pretty(value).expect("report serialises");
    // a closed pipe downstream is not an error worth a panic
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Gen { kind, out } => generate(kind, out.as_deref()),
        Cmd::Find {
            graph,
            strategy,
            t,
            strong,
            seed,
            budget,
            out,
            timing,
        } => find(&graph, strategy, t, strong, seed, budget, out, timing),
        Cmd::Verify { graph, cert, strong } => check(&graph, &cert, strong),
        Cmd::Oracle { query } => oracle(query),
        Cmd::Selftest { level, seed } => Ok(selftest(level, seed)),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(IO_ERROR)
        }
    }
}

fn generate(kind: GenKind, out: Option<&Path>) -> Result<u8, CliError> {
    let g = match kind {
        GenKind::RandomMindeg { n, d, p, seed } => gen::random_mindeg(n, d, p, &mut gen::rng(seed))?,
        GenKind::Cocktail { m } => gen::cocktail(m),
        GenKind::Complete { n } => gen::complete(n),
        GenKind::Mycielski { k } => gen::mycielski(k)?,
        GenKind::Cotriangle { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError(format!("edge probability {p} outside [0, 1]")));
            }
            gen::cotriangle(n, p, &mut gen::rng(seed))
        }
        GenKind::ReadDimacs { file } => {
            let text = fs::read_to_string(&file).map_err(|e| CliError(format!("{}: {e}", file.display())))?;
            parse_dimacs(&text)?
        }
    };
    write_out(out, &write_edge_list(&g))?;
    Ok(ACCEPT)
}

#[allow(clippy::too_many_arguments)]
fn find(
    path: &Path,
    strategy: Strategy,
    t: Option<usize>,
    strong: bool,
    seed: u64,
    budget: BudgetArgs,
    out: Option<PathBuf>,
    timing: bool,
) -> Result<u8, CliError> {
    let started = Instant::now();
    let g = read_graph(path)?;
    let cert_path = out.unwrap_or_else(|| {
        let mut p = path.as_os_str().to_owned();
        p.push(".cert");
        PathBuf::from(p)
    });
    let req = Request {
        t,
        strong,
        budget: budget.budget(),
    };
    let mut log = AuditLog::new();
    let mut attempts = Vec::new();
    let mut saw_anomaly = false;
    let result = if strategy == Strategy::Auto {
        let mut run = strategies::auto(&g, &req, &mut log);
        for (name, a) in &run.attempts {
            let (order, note) = match a {
                Ok(f) => (Some(f.cert.branch.len()), f.exit.clone()),
                Err(Failure::Reject(r)) => (None, r.clone()),
                Err(Failure::Anomaly(an)) => {
                    saw_anomaly = true;
                    (None, an.to_string())
                }
            };
            attempts.push(AttemptSummary {
                strategy: name.clone(),
                order,
                note,
            });
        }
        match run.best {
            Some(i) => {
                let (name, a) = run.attempts.swap_remove(i);
                a.map(|f| strategies::Found {
                    exit: format!("{name}: {}", f.exit),
                    cert: f.cert,
                })
            }
            None => Err(Failure::Reject("no strategy produced a certificate".into())),
        }
    } else {
        strategies::run(&g, strategy, &req, &mut log)
    };

    let (outcome, code) = match result {
        Ok(f) => {
            write_out(Some(&cert_path), &write_certificate(&f.cert))?;
            let code = if saw_anomaly { ANOMALY } else { ACCEPT };
            (
                Outcome::Certificate {
                    order: f.cert.branch.len(),
                    strong: f.cert.strong,
                    exit: f.exit,
                    path: cert_path.display().to_string(),
                },
                code,
            )
        }
        Err(Failure::Reject(reason)) => (Outcome::None { reason }, if saw_anomaly { ANOMALY } else { REJECT }),
        Err(Failure::Anomaly(a)) => (
            Outcome::Anomaly {
                claim: a.claim.to_string(),
                detail: a.detail,
            },
            ANOMALY,
        ),
    };
    print_json(&RunReport {
        input: InputInfo::of(&path.display().to_string(), &g),
        strategy: strategy.name().to_string(),
        parameters: Parameters {
            t,
            strong,
            seed,
            nodes: budget.nodes,
            seconds: budget.seconds,
        },
        outcome,
        claims: report::claims(&log),
        attempts,
        wall_seconds: timing.then(|| started.elapsed().as_secs_f64()),
    });
    Ok(code)
}

fn check(graph: &Path, cert: &Path, strong: bool) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    let text = fs::read_to_string(cert).map_err(|e| CliError(format!("{}: {e}", cert.display())))?;
    let c = parse_certificate(&text).map_err(|e| CliError(format!("{}: {e}", cert.display())))?;
    if c.host != Fingerprint::of(&g) {
        return Err(CliError(format!(
            "{} was issued for a different host graph than {}",
            cert.display(),
            graph.display()
        )));
    }
    if strong && !c.strong {
        println!("reject: certificate is not marked strong");
        return Ok(REJECT);
    }
    match verify(&g, &c) {
        Verdict::Accept => {
            println!(
                "accept: {}K{} immersion",
                if c.strong { "strong " } else { "" },
                c.branch.len()
            );
            Ok(ACCEPT)
        }
        Verdict::Reject(vs) => {
            println!("reject: {} violation(s)", vs.len());
            for v in &vs {
                println!("  {v}");
            }
            Ok(REJECT)
        }
    }
}

#[derive(Serialize)]
struct OracleReport {
    input: InputInfo,
    query: String,
    result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<usize>,
}

fn oracle(query: OracleQuery) -> Result<u8, CliError> {
    match query {
        OracleQuery::Immersion {
            graph,
            t,
            strong,
            budget,
            out,
        } => {
            let g = read_graph(&graph)?;
            let (result, code) = match immersion_search(&g, t, strong, &budget.budget()) {
                SearchOutcome::Found(c) => {
                    if let Some(p) = &out {
                        write_out(Some(p), &write_certificate(&c))?;
                    }
                    ("found", ACCEPT)
                }
                SearchOutcome::NotFound => ("not_found", REJECT),
                SearchOutcome::Exhausted => ("exhausted", REJECT),
            };
            print_json(&OracleReport {
                input: InputInfo::of(&graph.display().to_string(), &g),
                query: format!("{}K{t}", if strong { "strong " } else { "" }),
                result: result.into(),
                value: None,
            });
            Ok(code)
        }
        OracleQuery::Chi { graph, budget } => {
            let g = read_graph(&graph)?;
            let (result, value, code) = match exact_chromatic(&g, &budget.budget()) {
                ChiOutcome::Exact(k) => ("exact".to_string(), Some(k), ACCEPT),
                ChiOutcome::Exhausted { lower, upper } => (format!("exhausted between {lower} and {upper}"), None, REJECT),
            };
            print_json(&OracleReport {
                input: InputInfo::of(&graph.display().to_string(), &g),
                query: "chromatic number".into(),
                result,
                value,
            });
            Ok(code)
        }
    }
}

#[derive(Serialize)]
struct SelftestEntry {
    id: usize,
    name: &'static str,
    status: &'static str,
    instances: usize,
    detail: String,
}

#[derive(Serialize)]
struct SelftestReport {
    seed: u64,
    level: &'static str,
    passed: bool,
    criteria: Vec<SelftestEntry>,
}

fn selftest(level: LevelArg, seed: u64) -> u8 {
    let cfg = SuiteConfig {
        seed,
        level: match level {
            LevelArg::Quick => Level::Quick,
            LevelArg::Full => Level::Full,
        },
    };
    let reports = suite::run_all(&cfg);
    let passed = reports.iter().all(|r| r.status != Status::Fail);
    let criteria = reports
        .into_iter()
        .map(|r| SelftestEntry {
            id: r.id,
            name: r.name,
            status: match r.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skip => "skip",
            },
            instances: r.instances,
            detail: r.detail,
        })
        .collect();
    print_json(&SelftestReport {
        seed,
        level: match level {
            LevelArg::Quick => "quick",
            LevelArg::Full => "full",
        },
        passed,
        criteria,
    });
    if passed {
        ACCEPT
    } else {
        REJECT
    }
}
