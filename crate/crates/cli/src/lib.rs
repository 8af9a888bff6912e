//! Command-line front end: generate graphs, analyze them, run pipelines,
//! sweep degree thresholds and re-verify reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use vcchrom::io::{self, GraphDocument, FORMAT_VERSION};
use vcchrom::registry::{metric_value, Registry};
use vcchrom::{Coloring, Error, Graph};

pub mod sweep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Dimacs,
}

#[derive(Debug, Parser)]
#[command(
    name = "vcchrom",
    version,
    about = "Dense triangle-free graph coloring experiments"
)]
pub struct Cli {
    /// Seed for every randomized step (ChaCha8).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Refuse graphs with more vertices than this.
    #[arg(long = "guard-vertices", global = true)]
    pub guard_vertices: Option<usize>,
    /// Refuse graphs with more edges than this.
    #[arg(long = "guard-edges", global = true)]
    pub guard_edges: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph: `generate kneser --n 2 --k 1`.
    Generate {
        generator: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Compute metrics: `analyze g.json --chi --chistar` (`--all`, `--timings`).
    Analyze {
        file: PathBuf,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        metrics: Vec<String>,
    },
    /// Run a pipeline: `pipeline tricube g.json --c 2/5`.
    Pipeline {
        name: String,
        file: PathBuf,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        config: Vec<String>,
    },
    /// Tabulate a family over minimum-degree fractions: `sweep kneser --grid 0.3,0.4`.
    Sweep {
        family: String,
        #[arg(long, value_delimiter = ',')]
        grid: Vec<String>,
    },
    /// Re-check a pipeline report against its graph.
    Verify { report: PathBuf, graph: PathBuf },
    /// List registered generators, metrics and pipelines.
    List,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Validation(_) | Error::Parse(_) | Error::Precondition(_) => 2,
            Error::GuardExceeded { .. } => 3,
            Error::Verification(_) => 4,
            Error::Infeasible | Error::Unbounded => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: msg.into(),
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses arguments, runs, and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

/// Global options that may also appear among trailing `--key value` pairs.
struct Globals {
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    guard_vertices: Option<usize>,
    guard_edges: Option<usize>,
}

/// Turns `--key value` / `--key=value` / bare `--flag` tokens into a JSON
/// object. Keys have `-` replaced by `_`; integers and booleans are typed,
/// everything else (rationals such as `1/30`) stays a string.
pub fn parse_pairs(tokens: &[String]) -> CliResult<serde_json::Map<String, Value>> {
    let mut out = serde_json::Map::new();
    let mut i = 0;
    while i < tokens.len() {
        let tok = &tokens[i];
        let Some(body) = tok.strip_prefix("--") else {
            return Err(usage(format!("expected --key, found {tok:?}")));
        };
        let (key, value) = match body.split_once('=') {
            Some((k, v)) => (k.to_string(), Some(v.to_string())),
            None => {
                let next = tokens.get(i + 1).filter(|t| !t.starts_with("--"));
                if next.is_some() {
                    i += 1;
                }
                (body.to_string(), next.cloned())
            }
        };
        let v = match value {
            None => Value::Bool(true),
            Some(v) => typed(&v),
        };
        out.insert(key.replace('-', "_"), v);
        i += 1;
    }
    Ok(out)
}

fn typed(v: &str) -> Value {
    if let Ok(i) = v.parse::<u64>() {
        json!(i)
    } else if v == "true" || v == "false" {
        json!(v == "true")
    } else if v == "none" {
        Value::Null
    } else {
        json!(v)
    }
}

fn take_globals(map: &mut serde_json::Map<String, Value>, g: &mut Globals) -> CliResult<()> {
    if let Some(v) = map.remove("seed") {
        g.seed = Some(v.as_u64().ok_or_else(|| usage("--seed needs an integer"))?);
    }
    if let Some(v) = map.remove("out") {
        g.out = Some(PathBuf::from(
            v.as_str()
                .map(str::to_string)
                .unwrap_or_else(|| v.to_string()),
        ));
    }
    if let Some(v) = map.remove("format") {
        let s = v.as_str().ok_or_else(|| usage("--format needs a value"))?;
        g.format = Some(Format::from_str(s, true).map_err(usage)?);
    }
    for (key, slot) in [
        ("guard_vertices", &mut g.guard_vertices),
        ("guard_edges", &mut g.guard_edges),
    ] {
        if let Some(v) = map.remove(key) {
            *slot = Some(
                v.as_u64()
                    .ok_or_else(|| usage(format!("--{key} needs an integer")))?
                    as usize,
            );
        }
    }
    Ok(())
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(globals: &Globals, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match &globals.out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn check_guards(globals: &Globals, g: &Graph) -> CliResult<()> {
    let over = |what: &'static str, actual: usize, limit: Option<usize>| match limit {
        Some(limit) if actual > limit => Err(CliError::from(Error::GuardExceeded {
            what,
            limit,
            actual,
        })),
        _ => Ok(()),
    };
    over("vertices", g.n(), globals.guard_vertices)?;
    over("edges", g.edge_count(), globals.guard_edges)
}

fn load_graph(globals: &Globals, path: &Path) -> CliResult<(GraphDocument, Graph)> {
    let doc = io::read_graph_any(&read_text(path)?)?;
    let g = doc.graph()?;
    check_guards(globals, &g)?;
    Ok((doc, g))
}

fn unsupported(what: &str, f: Format) -> CliError {
    usage(format!("{what} cannot be written as {f:?}").to_lowercase())
}

/// One `analyze` result; rationals are `"p/q"` strings.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub format_version: u32,
    pub id: String,
    pub n: usize,
    pub metrics: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtimes_ms: Option<BTreeMap<String, u128>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| usage(format!("csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let reg = Registry::standard();
    let mut globals = Globals {
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
        guard_vertices: cli.guard_vertices,
        guard_edges: cli.guard_edges,
    };
    match cli.command {
        Command::List => {
            let text = format!(
                "generators: {}\nmetrics: {}\npipelines: {}\n",
                reg.generator_names().join(", "),
                reg.metric_names().join(", "),
                reg.pipeline_names().join(", ")
            );
            emit(&globals, &text, stdout)
        }
        Command::Generate { generator, params } => {
            let mut map = parse_pairs(&params)?;
            take_globals(&mut map, &mut globals)?;
            let doc = reg
                .generator(&generator)?
                .generate(&Value::Object(map), globals.seed)?;
            let g = doc.graph()?;
            check_guards(&globals, &g)?;
            let text = match globals.format.unwrap_or(Format::Json) {
                Format::Json => io::to_json(&doc)?,
                Format::Dimacs => io::write_dimacs(&g),
                Format::Dot => io::graph_to_dot(&g, doc.labels.as_deref(), None),
                f => return Err(unsupported("a graph", f)),
            };
            emit(&globals, &text, stdout)
        }
        Command::Analyze { file, metrics } => {
            let mut map = parse_pairs(&metrics)?;
            take_globals(&mut map, &mut globals)?;
            let timings = map.remove("timings").is_some();
            let all = map.remove("all").is_some();
            let mut names: Vec<String> = if all {
                reg.metric_names().iter().map(|s| s.to_string()).collect()
            } else {
                map.keys().map(|k| k.replace('_', "-")).collect()
            };
            if names.is_empty() {
                return Err(usage("no metrics requested (try --chi or --all)"));
            }
            names.sort();
            let (_, g) = load_graph(&globals, &file)?;
            let mut row = ReportRow {
                format_version: FORMAT_VERSION,
                id: file
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                n: g.n(),
                metrics: BTreeMap::new(),
                runtimes_ms: timings.then(BTreeMap::new),
            };
            for name in &names {
                let m = reg.metric(name)?;
                let start = Instant::now();
                // under --all, metrics that do not apply to this graph are null
                let v = match metric_value(m, &g) {
                    Err(Error::Precondition(_)) if all => Value::Null,
                    r => r?,
                };
                if let Some(t) = row.runtimes_ms.as_mut() {
                    t.insert(name.clone(), start.elapsed().as_millis());
                }
                row.metrics.insert(name.clone(), v);
            }
            let text = match globals.format.unwrap_or(Format::Json) {
                Format::Json => io::to_json(&row)?,
                Format::Csv => {
                    let mut header = vec!["format_version".to_string(), "id".into(), "n".into()];
                    header.extend(names.iter().cloned());
                    let mut r = vec![
                        FORMAT_VERSION.to_string(),
                        row.id.clone(),
                        row.n.to_string(),
                    ];
                    r.extend(names.iter().map(|k| cell(&row.metrics[k])));
                    if let Some(t) = &row.runtimes_ms {
                        header.extend(names.iter().map(|k| format!("ms_{k}")));
                        r.extend(names.iter().map(|k| t[k].to_string()));
                    }
                    csv_text(&header, &[r])?
                }
                f => return Err(unsupported("a report row", f)),
            };
            emit(&globals, &text, stdout)
        }
        Command::Pipeline { name, file, config } => {
            let mut map = parse_pairs(&config)?;
            take_globals(&mut map, &mut globals)?;
            let pipe = reg.pipeline(&name)?;
            let (doc, g) = load_graph(&globals, &file)?;
            let report = pipe.run(&g, &Value::Object(map), globals.seed.unwrap_or(0))?;
            let text = match globals.format.unwrap_or(Format::Json) {
                Format::Json => io::to_json(&report)?,
                Format::Dot if name == "booster" => {
                    let tree = serde_json::from_value(report["report"].clone())
                        .map_err(|e| usage(e.to_string()))?;
                    io::booster_tree_to_dot(&tree)
                }
                Format::Dot if name == "tricube" => {
                    let c: Coloring = serde_json::from_value(report["report"]["coloring"].clone())
                        .map_err(|e| usage(e.to_string()))?;
                    io::graph_to_dot(&g, doc.labels.as_deref(), Some(&c))
                }
                f => return Err(unsupported("this pipeline report", f)),
            };
            emit(&globals, &text, stdout)
        }
        Command::Sweep { family, grid } => {
            let grid: Vec<&String> = grid.iter().filter(|s| !s.trim().is_empty()).collect();
            let cs = grid
                .iter()
                .map(|s| vcchrom::rational::parse_rational(s))
                .collect::<vcchrom::Result<Vec<_>>>()?;
            let rows = sweep::sweep(&reg, &family, &cs, globals.seed.unwrap_or(0))?;
            let text = match globals.format.unwrap_or(Format::Csv) {
                Format::Csv => sweep::to_csv(&rows)?,
                Format::Json => io::to_json(&rows)?,
                f => return Err(unsupported("a sweep", f)),
            };
            emit(&globals, &text, stdout)
        }
        Command::Verify { report, graph } => {
            let report: Value = io::from_json(&read_text(&report)?)?;
            let name = report
                .get("pipeline")
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::from(Error::parse("report names no pipeline")))?;
            let (_, g) = load_graph(&globals, &graph)?;
            reg.pipeline(name)?.verify(&g, &report)?;
            emit(&globals, &format!("ok: {name} report verified\n"), stdout)
        }
    }
}
