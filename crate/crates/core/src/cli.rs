//! The `meshcolor` command line.
//!
//! Exit codes: 0 valid / found, 1 invalid / absent, 2 usage or input error,
//! 3 search budget exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_table, write_csv};
use crate::coloring::{verify_interval, Color};
use crate::constructions::{spectrum_sweep, MeshFamily};
use crate::format::{coloring_to_json, parse_coloring, to_csv, to_dot};
use crate::search::{exact_max_colors, exact_min_colors, find_interval_coloring, SearchBudget, SearchError, SearchOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Overrides the default `--max-edges` for `search` and `--oracle-budget` for `bounds`.
pub const MAX_EDGES_ENV: &str = "MESHCOLOR_MAX_EDGES";

#[derive(Debug, Parser)]
#[command(name = "meshcolor", version, about = "Interval edge colorings of bipartite cylinders and tori")]
pub struct Cli {
    /// Write a JSON run manifest to this path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Cylinder,
    Torus,
}

impl From<FamilyArg> for MeshFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Cylinder => MeshFamily::Cylinder,
            FamilyArg::Torus => MeshFamily::Torus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the explicit coloring of a cylinder or torus as JSON.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        n: u32,
        /// Palette size; tori accept any value in 4..=max{3m+n, 3n+m}.
        #[arg(long)]
        t: Option<Color>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring JSON file ("-" for stdin); exit 0 iff it is an interval coloring.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Tabulate lower and upper bounds over ranges of m and n.
    Bounds {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Inclusive range A..B
        #[arg(long = "m-range", value_parser = parse_range)]
        m_range: RangeInclusive<u32>,
        #[arg(long = "n-range", value_parser = parse_range)]
        n_range: RangeInclusive<u32>,
        /// Fill exact w and W for instances with at most this many edges.
        #[arg(long = "oracle-budget")]
        oracle_budget: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Exhaustive search for interval colorings of a small instance.
    #[command(group(ArgGroup::new("goal").required(true).args(["t", "exact_w", "exact_big_w"])))]
    Search {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        n: u32,
        #[arg(long)]
        t: Option<Color>,
        #[arg(long = "exact-w")]
        exact_w: bool,
        #[arg(long = "exact-W")]
        exact_big_w: bool,
        #[arg(long = "max-edges")]
        max_edges: Option<usize>,
        /// Seconds
        #[arg(long)]
        timeout: Option<u64>,
    },
    /// Emit verified torus colorings for every t from max{3m+n, 3n+m} down to 4.
    Sweep {
        #[arg(short)]
        m: u32,
        #[arg(short)]
        n: u32,
        /// Write one file per t instead of a JSON array on stdout.
        #[arg(long = "output-dir")]
        output_dir: Option<PathBuf>,
    },
    /// Render a coloring JSON file as DOT or CSV.
    Export {
        path: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

/// Parse an inclusive range written `A..B` (or a single value `A`).
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let s = s.trim();
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

/// Record of one invocation, enough to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Arguments after the program name, excluding `--manifest`.
    pub parameters: Vec<String>,
    pub tool_version: String,
    pub inputs: Vec<PathBuf>,
    pub output: Option<PathBuf>,
    pub wall_time_ms: u128,
    pub exit_code: i32,
    pub summary: String,
}

impl RunManifest {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

struct Outcome {
    code: i32,
    summary: String,
}

impl Outcome {
    fn new(code: i32, summary: impl Into<String>) -> Self {
        Outcome { code, summary: summary.into() }
    }
}

fn usage(err: &mut dyn Write, msg: impl std::fmt::Display) -> Outcome {
    let _ = writeln!(err, "error: {msg}");
    Outcome::new(EXIT_USAGE, msg.to_string())
}

fn env_max_edges() -> Option<usize> {
    std::env::var(MAX_EDGES_ENV).ok()?.parse().ok()
}

/// Run the CLI on `args` (including the program name) and return the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let started = Instant::now();
    let outcome = dispatch(&cli.command, out, err);
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            subcommand: subcommand_name(&cli.command).to_string(),
            parameters: strip_manifest_flag(&args[1..]),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: inputs_of(&cli.command),
            output: output_of(&cli.command),
            wall_time_ms: started.elapsed().as_millis(),
            exit_code: outcome.code,
            summary: outcome.summary.clone(),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        if let Err(e) = fs::write(path, text) {
            let _ = writeln!(err, "error: cannot write manifest {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    outcome.code
}

fn strip_manifest_flag(args: &[String]) -> Vec<String> {
    let mut kept = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--manifest" {
            skip = true;
        } else if !a.starts_with("--manifest=") {
            kept.push(a.clone());
        }
    }
    kept
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Generate { .. } => "generate",
        Command::Verify { .. } => "verify",
        Command::Bounds { .. } => "bounds",
        Command::Search { .. } => "search",
        Command::Sweep { .. } => "sweep",
        Command::Export { .. } => "export",
        Command::Replay { .. } => "replay",
    }
}

fn inputs_of(c: &Command) -> Vec<PathBuf> {
    match c {
        Command::Verify { path, .. } | Command::Export { path, .. } => vec![path.clone()],
        Command::Replay { manifest } => vec![manifest.clone()],
        _ => Vec::new(),
    }
}

fn output_of(c: &Command) -> Option<PathBuf> {
    match c {
        Command::Generate { output, .. } => output.clone(),
        Command::Sweep { output_dir, .. } => output_dir.clone(),
        _ => None,
    }
}

fn read_input(path: &Path) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Generate { family, m, n, t, output } => generate((*family).into(), *m, *n, *t, output.as_deref(), out, err),
        Command::Verify { path, format } => verify(path, *format, out, err),
        Command::Bounds { family, m_range, n_range, oracle_budget, format } => {
            bounds((*family).into(), m_range.clone(), n_range.clone(), *oracle_budget, *format, out, err)
        }
        Command::Search { family, m, n, t, exact_w, exact_big_w, max_edges, timeout } => {
            let goal = match (t, exact_w, exact_big_w) {
                (Some(t), _, _) => Goal::Palette(*t),
                (None, true, _) => Goal::Least,
                _ => Goal::Greatest,
            };
            let mut budget = SearchBudget::with_max_edges(max_edges.or_else(env_max_edges).unwrap_or(crate::search::DEFAULT_MAX_EDGES));
            if let Some(s) = timeout {
                budget.time_cap = Some(Duration::from_secs(*s));
            }
            search((*family).into(), *m, *n, goal, &budget, out, err)
        }
        Command::Sweep { m, n, output_dir } => sweep(*m, *n, output_dir.as_deref(), out, err),
        Command::Export { path, format } => export(path, *format, out, err),
        Command::Replay { manifest } => replay(manifest, out, err),
    }
}

fn generate(
    family: MeshFamily,
    m: u32,
    n: u32,
    t: Option<Color>,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let built = match family.construct(m, n) {
        Ok(b) => b,
        Err(e) => return usage(err, e),
    };
    let top = built.claimed_t;
    let text = match (family, t) {
        (_, None) => coloring_to_json(&built.coloring, built.rule_trace.as_deref()),
        (_, Some(t)) if t == top => coloring_to_json(&built.coloring, built.rule_trace.as_deref()),
        (MeshFamily::Cylinder, Some(t)) => {
            return usage(err, format!("t = {t} out of range: the cylinder construction gives exactly t = {top}"));
        }
        (MeshFamily::Torus, Some(t)) => {
            let delta = built.coloring.graph().max_degree() as Color;
            if !(delta..=top).contains(&t) {
                return usage(err, format!("t = {t} out of range: valid palettes are {delta}..={top}"));
            }
            let sweep = match spectrum_sweep(m, n) {
                Ok(s) => s,
                Err(e) => return usage(err, e),
            };
            let member = sweep.iter().find(|c| c.palette_size() == t).expect("sweep covers every t");
            coloring_to_json(member, None)
        }
    };
    let chosen = t.unwrap_or(top);
    if let Some(path) = output {
        if let Err(e) = fs::write(path, &text) {
            return usage(err, format!("cannot write {}: {e}", path.display()));
        }
    } else {
        let _ = writeln!(out, "{text}");
    }
    Outcome::new(EXIT_OK, format!("{family} m={m} n={n} t={chosen}"))
}

fn verify(path: &Path, format: ReportFormat, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => return usage(err, format!("cannot read {}: {e}", path.display())),
    };
    let (coloring, _) = match parse_coloring(&text) {
        Ok(c) => c,
        Err(e) => return usage(err, e),
    };
    let report = verify_interval(&coloring);
    match format {
        ReportFormat::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        ReportFormat::Table => {
            let _ = write!(out, "{report}");
        }
    }
    if report.interval {
        Outcome::new(EXIT_OK, format!("interval {}-coloring", report.palette_size))
    } else {
        let which = report
            .first_violation()
            .map(|v| format!("vertex {} spectrum {:?}", v.vertex, v.colors))
            .unwrap_or_else(|| format!("unused colors {:?}", report.missing_colors));
        let _ = writeln!(err, "not an interval coloring: {which}");
        Outcome::new(EXIT_INVALID, format!("not an interval coloring: {which}"))
    }
}

#[allow(clippy::too_many_arguments)]
fn bounds(
    family: MeshFamily,
    ms: RangeInclusive<u32>,
    ns: RangeInclusive<u32>,
    oracle_budget: Option<usize>,
    format: TableFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let budget = oracle_budget.or_else(env_max_edges).map(SearchBudget::with_max_edges);
    let rows = match bounds_table(family, ms, ns, budget.as_ref()) {
        Ok(r) => r,
        Err(e) => return usage(err, e),
    };
    let written = match format {
        TableFormat::Csv => write_csv(&rows, &mut *out).map_err(|e| e.to_string()),
        TableFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("rows serialize")).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        return usage(err, e);
    }
    let inconsistent = rows.iter().filter(|r| !r.is_consistent()).count();
    if inconsistent > 0 {
        let _ = writeln!(err, "{inconsistent} rows violate their bounds");
        return Outcome::new(EXIT_INVALID, format!("{} rows, {inconsistent} inconsistent", rows.len()));
    }
    Outcome::new(EXIT_OK, format!("{} rows", rows.len()))
}

enum Goal {
    Palette(Color),
    Least,
    Greatest,
}

fn search(
    family: MeshFamily,
    m: u32,
    n: u32,
    goal: Goal,
    budget: &SearchBudget,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let graph = match family.build_graph(m, n) {
        Ok(g) => Arc::new(g),
        Err(e) => return usage(err, e),
    };
    let exact = |r: Result<Color, SearchError>, what: &str, out: &mut dyn Write, err: &mut dyn Write| match r {
        Ok(v) => {
            let _ = writeln!(out, "{v}");
            Outcome::new(EXIT_OK, format!("{what} = {v}"))
        }
        Err(SearchError::BudgetExceeded(limit)) => {
            let _ = writeln!(err, "budget exceeded: {limit}");
            Outcome::new(EXIT_BUDGET, format!("budget exceeded: {limit}"))
        }
        Err(SearchError::NotColorable(t)) => {
            let _ = writeln!(err, "no interval coloring with at most {t} colors");
            Outcome::new(EXIT_INVALID, "not interval colorable")
        }
        Err(e) => usage(err, e),
    };
    match goal {
        Goal::Least => exact(exact_min_colors(&graph, budget), "w", out, err),
        Goal::Greatest => exact(exact_max_colors(&graph, budget), "W", out, err),
        Goal::Palette(t) => match find_interval_coloring(&graph, t, budget) {
            Ok(SearchOutcome::Found(c)) => {
                let _ = writeln!(out, "{}", coloring_to_json(&c, None));
                Outcome::new(EXIT_OK, format!("found t={t}"))
            }
            Ok(SearchOutcome::Absent) => {
                let _ = writeln!(err, "no interval {t}-coloring exists");
                Outcome::new(EXIT_INVALID, format!("absent t={t}"))
            }
            Ok(SearchOutcome::BudgetExceeded(limit)) => {
                let _ = writeln!(err, "budget exceeded: {limit}");
                Outcome::new(EXIT_BUDGET, format!("budget exceeded: {limit}"))
            }
            Err(e) => usage(err, e),
        },
    }
}

fn sweep(m: u32, n: u32, dir: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let colorings = match spectrum_sweep(m, n) {
        Ok(s) => s,
        Err(e) => return usage(err, e),
    };
    match dir {
        Some(dir) => {
            if let Err(e) = fs::create_dir_all(dir) {
                return usage(err, format!("cannot create {}: {e}", dir.display()));
            }
            for c in &colorings {
                let path = dir.join(format!("torus_{m}_{n}_t{}.json", c.palette_size()));
                if let Err(e) = fs::write(&path, coloring_to_json(c, None)) {
                    return usage(err, format!("cannot write {}: {e}", path.display()));
                }
            }
        }
        None => {
            let docs: Vec<_> = colorings.iter().map(|c| crate::format::ColoringDoc::from_coloring(c, None)).collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&docs).expect("documents serialize"));
        }
    }
    let ts: Vec<Color> = colorings.iter().map(|c| c.palette_size()).collect();
    Outcome::new(EXIT_OK, format!("t = {}..={}", ts.last().unwrap(), ts[0]))
}

fn export(path: &Path, format: ExportFormat, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => return usage(err, format!("cannot read {}: {e}", path.display())),
    };
    let (coloring, rules) = match parse_coloring(&text) {
        Ok(c) => c,
        Err(e) => return usage(err, e),
    };
    let report = verify_interval(&coloring);
    if !report.interval {
        let _ = writeln!(err, "refusing to export: input is not an interval coloring");
        return Outcome::new(EXIT_INVALID, "input is not an interval coloring");
    }
    let rendered = match format {
        ExportFormat::Dot => to_dot(&coloring),
        ExportFormat::Csv => match to_csv(&coloring, rules.as_deref()) {
            Ok(s) => s,
            Err(e) => return usage(err, e),
        },
    };
    let _ = write!(out, "{rendered}");
    Outcome::new(EXIT_OK, format!("{} edges", coloring.graph().edge_count()))
}

fn replay(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage(err, format!("cannot read {}: {e}", path.display())),
    };
    let manifest = match RunManifest::parse(&text) {
        Ok(m) => m,
        Err(e) => return usage(err, format!("bad manifest: {e}")),
    };
    if manifest.subcommand == "replay" {
        return usage(err, "refusing to replay a replay");
    }
    let args = std::iter::once("meshcolor".to_string()).chain(manifest.parameters.iter().cloned());
    let code = run(args, out, err);
    Outcome::new(code, format!("replayed {}", manifest.subcommand))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("meshcolor").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3"), Ok(1..=3));
        assert_eq!(parse_range("2..=5"), Ok(2..=5));
        assert_eq!(parse_range("4"), Ok(4..=4));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..b").is_err());
        assert!(parse_range("..").is_err());
    }

    #[test]
    fn generate_cylinder() {
        let (code, out, _) = call(&["generate", "--family", "cylinder", "-m", "2", "-n", "2"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["t"], 6);
    }

    #[test]
    fn generate_ranges() {
        let (code, out, _) = call(&["generate", "--family", "torus", "-m", "2", "-n", "2", "--t", "5"]);
        assert_eq!(code, EXIT_OK);
        let (c, _) = parse_coloring(&out).unwrap();
        assert!(verify_interval(&c).interval);
        assert_eq!(c.palette_size(), 5);

        let (code, _, err) = call(&["generate", "--family", "torus", "-m", "2", "-n", "2", "--t", "3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("4..=8"), "{err}");

        let (code, _, _) = call(&["generate", "--family", "cylinder", "-m", "2", "-n", "2", "--t", "5"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn search_exit_codes() {
        assert_eq!(call(&["search", "--family", "cylinder", "-m", "1", "-n", "2", "--t", "3"]).0, EXIT_OK);
        assert_eq!(call(&["search", "--family", "cylinder", "-m", "1", "-n", "2", "--t", "4"]).0, EXIT_INVALID);
        assert_eq!(call(&["search", "--family", "torus", "-m", "2", "-n", "2", "--t", "8"]).0, EXIT_BUDGET);
        let (code, out, _) = call(&["search", "--family", "cylinder", "-m", "1", "-n", "3", "--exact-W"]);
        assert_eq!((code, out.trim()), (EXIT_OK, "4"));
        assert_eq!(call(&["search", "--family", "cylinder", "-m", "1", "-n", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn manifest_flag_is_stripped() {
        let args: Vec<String> = ["bounds", "--manifest", "x.json", "--family", "torus", "--manifest=y"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(strip_manifest_flag(&args), vec!["bounds", "--family", "torus"]);
    }
}
