//! The `nsw` command line.
//!
//! Exit codes: 0 when a result was computed (negative width answers
//! included), 10 / 20 for satisfiable / unsatisfiable instances of the
//! solver commands, 2 for unusable input, 3 when `--oracle` disagrees and 1
//! for internal errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use nsw_core::cqneg::{evaluate_traced, parse_query, Database, QueryInstance};
use nsw_core::decomposition::{ghtd_from_neo, validate_ghtd};
use nsw_core::nestset::{check_neo, compute_neo, nsw_at_most};
use nsw_core::oracles::{
    brute_force_eval, brute_force_sat, brute_nsw, gen_cycle, gen_random, gen_vc_reduction,
    CnfParams, HypergraphParams, QueryParams, RandomInstance, RandomParams, SimpleGraph,
};
use nsw_core::sat::{sat_to_cqneg, solve, CnfFormula, Verdict};
use nsw_core::{Error, Hypergraph, Neo, NestVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Parser, Debug)]
#[command(
    name = "nsw",
    version,
    about = "Nest-set width of hypergraphs and NEO-driven solving"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nest-set width and a witnessing NEO.
    Nsw {
        hypergraph: PathBuf,
        /// Stop searching above this width.
        #[arg(long)]
        max_k: Option<usize>,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Whether a vertex set is a nest-set, and its guard.
    NestSet {
        hypergraph: PathBuf,
        /// Comma-separated vertex names.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
    /// A k-NEO in the NEO file format.
    Neo {
        hypergraph: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Checks a NEO file against a hypergraph.
    ValidateNeo {
        hypergraph: PathBuf,
        neo: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// A decomposition of width at most k built from a k-NEO.
    Ghtd {
        hypergraph: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Whether the hypergraph is beta-acyclic.
    BetaAcyclic { hypergraph: PathBuf },
    /// Decides whether a query with negation has an answer on a database.
    CqEval {
        query: PathBuf,
        database: PathBuf,
        /// Print the sizes before and after every elimination step.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        oracle: bool,
    },
    /// Decides a DIMACS CNF formula by nest-set resolution.
    Sat {
        cnf: PathBuf,
        /// Decide the reduced query with negation instead.
        #[arg(long)]
        via_cq: bool,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Instance generators; output goes to stdout.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// The cycle v1 - ... - vn - v1.
    Cycle {
        #[arg(short)]
        n: usize,
    },
    /// The vertex-cover reduction hypergraph of a graph file (`u v` per edge).
    Vc {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Seeded random instances.
    Random(RandomArgs),
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    kind: RandomKind,
}

#[derive(Subcommand, Debug)]
enum RandomKind {
    Hypergraph {
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 5)]
        edges: usize,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
    },
    Cnf {
        #[arg(long, default_value_t = 10)]
        vars: u32,
        #[arg(long, default_value_t = 20)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        clause_len: usize,
    },
    /// Writes PREFIX.q and PREFIX.db.
    Query {
        #[arg(long, default_value_t = 4)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        literals: usize,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
        #[arg(long, default_value_t = 2)]
        domain: u32,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn oracle(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_ORACLE,
            message: message.into(),
        }
    }

    fn core(context: &Path, e: Error) -> Self {
        let code = match e {
            Error::Invariant(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: format!("{}: {e}", context.display()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut report = String::new();
    let outcome = dispatch(cli.command, &mut report, err);
    let _ = out.write_all(report.as_bytes());
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    read(path)?.parse().map_err(|e| Failure::core(path, e))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        let _ = writeln!($out, $($arg)*);
    }};
}

fn dispatch(command: Command, out: &mut String, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Nsw {
            hypergraph,
            max_k,
            oracle,
            format,
        } => cmd_nsw(&hypergraph, max_k, oracle, format, out, err),
        Command::NestSet { hypergraph, set } => {
            let h = load_hypergraph(&hypergraph)?;
            let s = h
                .vertex_set(&set)
                .map_err(|e| Failure::input(e.to_string()))?;
            match h
                .nest_verdict(&s)
                .map_err(|e| Failure::core(&hypergraph, e))?
            {
                NestVerdict::NotNestSet => say!(out, "{} is not a nest-set", h.fmt_set(&s)),
                NestVerdict::NestSet { guard } => {
                    say!(out, "{} is a nest-set", h.fmt_set(&s));
                    match guard {
                        Some(g) => say!(
                            out,
                            "guard {} {}",
                            h.edge(g).label(),
                            h.fmt_set(h.edge(g).vertices())
                        ),
                        None => say!(out, "no incident edges"),
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Neo { hypergraph, k } => {
            let h = load_hypergraph(&hypergraph)?.without_isolated();
            match compute_neo(&h, k) {
                Some(neo) => out.push_str(&neo.to_text(&h)),
                None => say!(out, "# no {k}-NEO exists: nsw > {k}"),
            }
            Ok(EXIT_OK)
        }
        Command::ValidateNeo { hypergraph, neo, k } => {
            let h = load_hypergraph(&hypergraph)?;
            let o = Neo::parse(&h, &read(&neo)?).map_err(|e| Failure::core(&neo, e))?;
            match check_neo(&h.without_isolated(), &o, k) {
                Ok(()) => say!(out, "valid {k}-NEO {}", o.display(&h)),
                Err(v) => say!(out, "invalid {k}-NEO: {v}"),
            }
            Ok(EXIT_OK)
        }
        Command::Ghtd { hypergraph, k } => {
            let h = load_hypergraph(&hypergraph)?.without_isolated();
            let Some(neo) = compute_neo(&h, k) else {
                say!(out, "no {k}-NEO exists: nsw > {k}");
                return Ok(EXIT_OK);
            };
            let d = ghtd_from_neo(&h, &neo).map_err(|e| Failure::core(&hypergraph, e))?;
            let report = validate_ghtd(&h, &d);
            say!(out, "neo {}", neo.display(&h));
            out.push_str(&d.display(&h).to_string());
            say!(out, "width = {}", d.width());
            if report.is_valid() {
                say!(out, "valid");
                Ok(EXIT_OK)
            } else {
                for v in &report.violations {
                    say!(out, "violation: {v}");
                }
                Err(Failure {
                    code: EXIT_INTERNAL,
                    message: "the decomposition is invalid".into(),
                })
            }
        }
        Command::BetaAcyclic { hypergraph } => {
            let h = load_hypergraph(&hypergraph)?;
            say!(
                out,
                "beta-acyclic: {}",
                if h.is_beta_acyclic() { "yes" } else { "no" }
            );
            Ok(EXIT_OK)
        }
        Command::CqEval {
            query,
            database,
            trace,
            oracle,
        } => cmd_cq_eval(&query, &database, trace, oracle, out, err),
        Command::Sat {
            cnf,
            via_cq,
            stats,
            oracle,
            format,
        } => cmd_sat(&cnf, via_cq, stats, oracle, format, out, err),
        Command::Gen(g) => cmd_gen(g, out),
    }
}

fn cmd_nsw(
    path: &Path,
    max_k: Option<usize>,
    oracle: bool,
    format: Format,
    out: &mut String,
    err: &mut dyn Write,
) -> Outcome {
    let h = load_hypergraph(path)?;
    let isolated = h.isolated_vertices();
    let result = nsw_at_most(&h, max_k.unwrap_or(usize::MAX));
    let trimmed = h.without_isolated();
    match (&result, format) {
        (Some((k, neo)), Format::Text) => {
            say!(out, "nsw = {k}");
            say!(out, "neo = {}", neo.display(&trimmed));
        }
        (Some((k, neo)), Format::Tsv) => {
            say!(out, "nsw\t{k}");
            let sets: Vec<String> = neo
                .sets()
                .iter()
                .map(|s| trimmed.names(s).collect::<Vec<_>>().join(","))
                .collect();
            say!(out, "neo\t{}", sets.join(";"));
        }
        (None, Format::Text) => say!(out, "nsw > {}", max_k.unwrap_or(0)),
        (None, Format::Tsv) => say!(out, "nsw\t>{}", max_k.unwrap_or(0)),
    }
    if !isolated.is_empty() {
        match format {
            Format::Text => say!(out, "isolated vertices dropped: {}", h.fmt_set(&isolated)),
            Format::Tsv => say!(
                out,
                "isolated\t{}",
                h.names(&isolated).collect::<Vec<_>>().join(",")
            ),
        }
    }
    if oracle {
        match brute_nsw(&h) {
            Ok(b) => {
                let agrees = match &result {
                    Some((k, _)) => *k == b,
                    None => b > max_k.unwrap_or(0),
                };
                if !agrees {
                    return Err(Failure::oracle(format!("brute-force width is {b}")));
                }
                say!(out, "oracle agrees");
            }
            Err(e) => {
                let _ = writeln!(err, "oracle skipped: {e}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_cq_eval(
    query: &Path,
    database: &Path,
    trace: bool,
    oracle: bool,
    out: &mut String,
    err: &mut dyn Write,
) -> Outcome {
    let specs = parse_query(&read(query)?).map_err(|e| Failure::core(query, e))?;
    let db: Database = read(database)?
        .parse()
        .map_err(|e| Failure::core(database, e))?;
    let q = QueryInstance::from_parts(&specs, &db).map_err(|e| Failure::core(database, e))?;
    let e = evaluate_traced(&q).map_err(|e| Failure::core(query, e))?;
    if trace {
        say!(out, "nsw = {}", e.width);
        for (i, step) in e.steps.iter().enumerate() {
            let (b, a) = (step.before, step.after);
            say!(
                out,
                "step {}: eliminate {{{}}} literals {}->{} max-arity {}->{} max-relation {}->{} total {}->{} positive {} |{}|",
                i + 1,
                step.eliminated.join(","),
                b.literals,
                a.literals,
                b.max_arity,
                a.max_arity,
                b.max_relation,
                a.max_relation,
                b.total,
                a.total,
                step.positive,
                step.positive_size
            );
        }
    }
    say!(out, "{}", if e.satisfiable { "SAT" } else { "UNSAT" });
    if oracle {
        match brute_force_eval(&q) {
            Ok(b) if b != e.satisfiable => {
                return Err(Failure::oracle(format!("brute force says {b}")))
            }
            Ok(_) => say!(out, "oracle agrees"),
            Err(e) => {
                let _ = writeln!(err, "oracle skipped: {e}");
            }
        }
    }
    Ok(if e.satisfiable { EXIT_SAT } else { EXIT_UNSAT })
}

fn cmd_sat(
    path: &Path,
    via_cq: bool,
    stats: bool,
    oracle: bool,
    format: Format,
    out: &mut String,
    err: &mut dyn Write,
) -> Outcome {
    let f: CnfFormula = read(path)?.parse().map_err(|e| Failure::core(path, e))?;
    let stat = |out: &mut String, key: &str, value: String| match format {
        Format::Text => say!(out, "c {key} {value}"),
        Format::Tsv => say!(out, "{key}\t{value}"),
    };
    let verdict = if via_cq {
        let e = evaluate_traced(&sat_to_cqneg(&f)).map_err(|e| Failure::core(path, e))?;
        if stats {
            stat(out, "nsw", e.width.to_string());
            let neo: Vec<String> = e
                .neo
                .iter()
                .map(|s| format!("{{{}}}", s.join(",")))
                .collect();
            stat(out, "neo", neo.join(" "));
            stat(out, "steps", e.steps.len().to_string());
            let max_total = e.steps.iter().map(|s| s.before.total).max().unwrap_or(0);
            stat(out, "max-total", max_total.to_string());
        }
        if e.satisfiable {
            Verdict::Sat
        } else {
            Verdict::Unsat
        }
    } else {
        let r = solve(&f).map_err(|e| Failure::core(path, e))?;
        if stats {
            stat(out, "nsw", r.width.to_string());
            let neo: Vec<String> = r
                .neo
                .iter()
                .map(|s| {
                    format!(
                        "{{{}}}",
                        s.iter()
                            .map(|v| format!("x{v}"))
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect();
            stat(out, "neo", neo.join(" "));
            stat(out, "clauses", f.len().to_string());
            stat(out, "max-clauses", r.max_clauses.to_string());
        }
        r.verdict
    };
    say!(
        out,
        "s {}",
        if verdict == Verdict::Sat {
            "SATISFIABLE"
        } else {
            "UNSATISFIABLE"
        }
    );
    if oracle {
        match brute_force_sat(&f) {
            Ok(b) if b != verdict => {
                return Err(Failure::oracle(format!("brute force says {b:?}")))
            }
            Ok(_) => say!(out, "c oracle agrees"),
            Err(e) => {
                let _ = writeln!(err, "oracle skipped: {e}");
            }
        }
    }
    Ok(if verdict == Verdict::Sat {
        EXIT_SAT
    } else {
        EXIT_UNSAT
    })
}

fn cmd_gen(g: Gen, out: &mut String) -> Outcome {
    match g {
        Gen::Cycle { n } => {
            let h = gen_cycle(n).map_err(|e| Failure::input(e.to_string()))?;
            out.push_str(&h.to_string());
        }
        Gen::Vc { graph, k } => {
            let g: SimpleGraph = read(&graph)?
                .parse()
                .map_err(|e| Failure::core(&graph, e))?;
            let h = gen_vc_reduction(&g, k).map_err(|e| Failure::core(&graph, e))?;
            out.push_str(&h.to_string());
        }
        Gen::Random(RandomArgs { seed, kind }) => {
            let (params, prefix) = match kind {
                RandomKind::Hypergraph {
                    vertices,
                    edges,
                    max_arity,
                } => (
                    RandomParams::Hypergraph(HypergraphParams {
                        vertices,
                        edges,
                        max_arity,
                    }),
                    None,
                ),
                RandomKind::Cnf {
                    vars,
                    clauses,
                    clause_len,
                } => (
                    RandomParams::Cnf(CnfParams {
                        variables: vars,
                        clauses,
                        clause_len,
                    }),
                    None,
                ),
                RandomKind::Query {
                    vars,
                    literals,
                    max_arity,
                    domain,
                    density,
                    out: prefix,
                } => {
                    if domain == 0 || !(0.0..=1.0).contains(&density) {
                        return Err(Failure::input(
                            "need a domain of at least 1 and a density in [0, 1]",
                        ));
                    }
                    (
                        RandomParams::Query(QueryParams {
                            variables: vars,
                            literals,
                            max_arity,
                            domain,
                            density,
                        }),
                        Some(prefix),
                    )
                }
            };
            match gen_random(seed, &params) {
                RandomInstance::Hypergraph(h) => out.push_str(&h.to_string()),
                RandomInstance::Cnf(f) => out.push_str(&f.to_dimacs()),
                RandomInstance::Query(q) => {
                    let prefix = prefix.expect("query parameters carry an output prefix");
                    let (qp, dp) = (prefix.with_extension("q"), prefix.with_extension("db"));
                    let write = |p: &Path, text: String| {
                        fs::write(p, text)
                            .map_err(|e| Failure::input(format!("{}: {e}", p.display())))
                    };
                    write(&qp, q.query_text())?;
                    write(&dp, q.database().to_string())?;
                    say!(out, "wrote {} and {}", qp.display(), dp.display());
                }
            }
        }
    }
    Ok(EXIT_OK)
}
