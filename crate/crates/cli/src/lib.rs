//! The `ktx` command line. [`run`] takes the argument list and output
//! streams so the whole surface can be driven from tests.
//!
//! Exit statuses:
//!
//! | status | meaning |
//! |---|---|
//! | 0 | success, or a positive verdict |
//! | 1 | negative verdict: not excellent, no cover, not a 2-tree, or an explorer contradiction |
//! | 2 | input error: unreadable or malformed file (with its line number), bad arguments |
//! | 3 | the exact oracle refused the instance because its order exceeds the budget |

use std::collections::HashSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ktree_excellent::construct::{self, ExplorationRecord, ExploreConfig, GenMode, GenSpec};
use ktree_excellent::family::{self, LabeledTwoTree};
use ktree_excellent::io::{self as kio, GraphFile};
use ktree_excellent::oracle::{self, Oracle};
use ktree_excellent::{cover, ktree, Error, Graph, Triangle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ktx", version, about = "alpha-excellent k-trees: oracles, covers, certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Graph file, or `-` for standard input.
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Excellence verdict for a 2-tree via the linear-time path.
    Check {
        #[command(flatten)]
        input: Input,
        /// Also print the perfect 3-cover and a construction certificate.
        #[arg(long)]
        certify: bool,
    },
    /// Perfect (k+1)-cover, one part per line, or "none".
    Cover {
        #[command(flatten)]
        input: Input,
        /// Clique order minus one; defaults to the k in the file header.
        #[arg(long)]
        k: Option<usize>,
        /// Count covers up to --limit instead of printing one.
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = 2)]
        limit: usize,
    },
    /// Construction certificate for an alpha-excellent 2-tree.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// A 2-tree with a perfect 3-cover containing the input as induced subgraph.
    Embed {
        #[command(flatten)]
        input: Input,
    },
    /// Random or exhaustive k-trees.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Every k-tree of order n up to isomorphism.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Exact independence parameters.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// One JSON object instead of key=value lines.
        #[arg(long)]
        json: bool,
    },
    /// Search k-trees for an excellent one without a perfect cover.
    Explore {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: usize,
        /// Number of random instances.
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Earlier output; instances with a listed fingerprint are skipped.
        #[arg(long)]
        resume_from: Option<PathBuf>,
        /// Random instances only.
        #[arg(long)]
        no_exhaustive: bool,
    },
    /// Rewrite a graph file, or render it as DOT.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dot: bool,
        /// Vertex ids as node labels.
        #[arg(long)]
        labels: bool,
    },
}

/// Failure carrying its exit status.
struct Exit(i32, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let status = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::NotAKTree { .. } | Error::OrderTooSmall { .. } | Error::Contradiction(_) => EXIT_NEGATIVE,
            _ => EXIT_INPUT,
        };
        Exit(status, e.to_string())
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Exit {
        Exit(EXIT_INPUT, e.to_string())
    }
}

type Outcome = Result<i32, Exit>;

/// Runs `ktx` with `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return status;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(status) => status,
        Err(Exit(status, message)) => {
            let _ = writeln!(err, "error: {message}");
            status
        }
    }
}

fn read_text(path: &PathBuf) -> Result<String, Exit> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Exit(EXIT_INPUT, format!("{}: {e}", path.display())))
    }
}

fn load(input: &Input) -> Result<GraphFile, Exit> {
    let text = read_text(&input.file)?;
    kio::parse_graph(&text).map_err(|e| Exit(EXIT_INPUT, format!("{}: {e}", input.file.display())))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Check { input, certify } => check(&load(&input)?.graph, certify, out),
        Command::Cover { input, k, count, limit } => {
            let file = load(&input)?;
            let k = k.or(file.k).ok_or_else(|| Exit(EXIT_INPUT, "no --k given and no k in the file header".into()))?;
            cover_cmd(&file.graph, k, count.then_some(limit), out)
        }
        Command::Decompose { input } => decompose(&load(&input)?.graph, out),
        Command::Embed { input } => embed(&load(&input)?.graph, out),
        Command::Gen { n, k, seed, exhaustive } => {
            let mode = if exhaustive { GenMode::Exhaustive } else { GenMode::Random };
            let graphs = construct::generate(&GenSpec { n, k, seed, mode })?;
            for (i, g) in graphs.iter().enumerate() {
                if exhaustive {
                    writeln!(out, "# graph {} of {}", i + 1, graphs.len())?;
                }
                write!(out, "{}", kio::write_graph(g, Some(k)))?;
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { input, json } => oracle_cmd(&load(&input)?.graph, json, out),
        Command::Explore { k, nmax, budget, seed, resume_from, no_exhaustive } => {
            let mut cfg = ExploreConfig::new(k, nmax, budget, seed);
            cfg.oracle = Oracle::from_env();
            cfg.exhaustive = !no_exhaustive;
            if let Some(path) = resume_from {
                cfg.skip = resume_set(&path)?;
            }
            explore(&cfg, out, err)
        }
        Command::Convert { input, dot, labels } => {
            let file = load(&input)?;
            if dot {
                let (red, blue) = labels_of(&file.graph);
                write!(out, "{}", kio::to_dot(&file.graph, &red, &blue, labels))?;
            } else {
                write!(out, "{}", kio::write_graph(&file.graph, file.k))?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn check(g: &Graph, certify: bool, out: &mut dyn Write) -> Outcome {
    let excellent = oracle::fast_excellent_2tree(g)?;
    writeln!(out, "{}", if excellent { "excellent" } else { "not excellent" })?;
    if !excellent {
        return Ok(EXIT_NEGATIVE);
    }
    if certify {
        let cert = family::decompose(g)?
            .ok_or_else(|| Exit(EXIT_NEGATIVE, "excellent 2-tree without a certificate".into()))?;
        let t = family::replay_certificate(&cert)?;
        writeln!(out, "# cover")?;
        write_parts(&t.red_cover().parts, out)?;
        writeln!(out, "# certificate")?;
        write!(out, "{}", kio::write_certificate(&cert))?;
    }
    Ok(EXIT_OK)
}

fn write_parts(parts: &[Vec<usize>], out: &mut dyn Write) -> io::Result<()> {
    for p in parts {
        let ids: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", ids.join(" "))?;
    }
    Ok(())
}

fn cover_cmd(g: &Graph, k: usize, count: Option<usize>, out: &mut dyn Write) -> Outcome {
    if let Some(limit) = count {
        let c = cover::count_perfect_covers(g, k, limit)?;
        writeln!(out, "covers {c}{}", if c == limit { " (limit reached)" } else { "" })?;
        return Ok(if c == 0 { EXIT_NEGATIVE } else { EXIT_OK });
    }
    match cover::find_perfect_cover(g, k)? {
        Some(c) => {
            write_parts(&c.parts, out)?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "none")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn decompose(g: &Graph, out: &mut dyn Write) -> Outcome {
    match family::decompose(g)? {
        Some(cert) => {
            write!(out, "{}", kio::write_certificate(&cert))?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "not alpha-excellent")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn embed(g: &Graph, out: &mut dyn Write) -> Outcome {
    let (h, map) = construct::embed_excellent(g)?;
    writeln!(out, "# vertex map: original -> supergraph")?;
    for (v, w) in map.iter().enumerate() {
        writeln!(out, "# map {v} {w}")?;
    }
    write!(out, "{}", kio::write_graph(&h, Some(2)))?;
    Ok(EXIT_OK)
}

fn oracle_cmd(g: &Graph, json: bool, out: &mut dyn Write) -> Outcome {
    let r = Oracle::from_env().classify(g)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&r).map_err(|e| Exit(EXIT_INPUT, e.to_string()))?)?;
    } else {
        let per: Vec<String> = r.per_vertex_max.iter().map(|x| x.to_string()).collect();
        writeln!(out, "n={}", r.n)?;
        writeln!(out, "alpha={}", r.alpha)?;
        writeln!(out, "i={}", r.i_dom)?;
        writeln!(out, "alpha_c={}", r.alpha_c)?;
        writeln!(out, "well_covered={}", r.well_covered)?;
        writeln!(out, "excellent={}", r.excellent)?;
        writeln!(out, "per_vertex_max={}", per.join(" "))?;
    }
    Ok(EXIT_OK)
}

/// Fingerprints from an earlier `explore` output. Lines that are not
/// records are ignored.
fn resume_set(path: &PathBuf) -> Result<HashSet<String>, Exit> {
    let text = read_text(path)?;
    Ok(text
        .lines()
        .filter_map(|l| serde_json::from_str::<ExplorationRecord>(l).ok())
        .map(|r| r.fingerprint)
        .collect())
}

fn explore(cfg: &ExploreConfig, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let summary = construct::explore_converse(cfg)?;
    for r in &summary.records {
        writeln!(out, "{}", serde_json::to_string(r).map_err(|e| Exit(EXIT_INPUT, e.to_string()))?)?;
        if r.is_finding() {
            writeln!(err, "finding: instance {} ({}) is excellent without a perfect cover", r.index, r.fingerprint)?;
        }
    }
    writeln!(
        err,
        "explored {} instances: {} findings, {} over the oracle budget, {} already seen",
        summary.records.len(),
        summary.findings().count(),
        summary.skipped_budget,
        summary.skipped_seen
    )?;
    Ok(EXIT_OK)
}

/// Red and blue triangles from a certificate when the graph is an
/// alpha-excellent 2-tree; otherwise none.
fn labels_of(g: &Graph) -> (Vec<Triangle>, Vec<Triangle>) {
    if g.order() < 3 || !ktree::is_ktree(g, 2) {
        return (Vec::new(), Vec::new());
    }
    let labelled: Option<LabeledTwoTree> = family::decompose(g)
        .ok()
        .flatten()
        .and_then(|c| family::replay_certificate(&c).ok());
    match labelled {
        Some(t) => (t.red().iter().copied().collect(), t.blue().iter().copied().collect()),
        None => (Vec::new(), Vec::new()),
    }
}
