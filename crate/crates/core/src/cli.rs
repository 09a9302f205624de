//! The `bnk` command line. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::affine::w_of_splitting;
use crate::braid::braid_graph;
use crate::chain::{enumerate_positive, ChainModel};
use crate::counting::{cache_load, cache_save, count_reduced_words, MemoCache};
use crate::error::{Error, Result};
use crate::filling::enumerate_efficient_fillings;
use crate::splitting::{bn_class_coefficient, factorial, imbalance_u, staircase, BnParams, SplittingType};
use crate::young::{u_core, window_from_core, Diagram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bnk", version, about = "Brill–Noether invariants of splitting loci on k-gonal curves")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Word-count cache file, read before and written after counting
    #[arg(long, global = true, env = "BNK_CACHE")]
    pub cache: Option<PathBuf>,
    /// Largest number of fillings, models or memo states to produce
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub limit: u64,
    /// Ignore --limit
    #[arg(long, global = true)]
    pub force: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl GlobalArgs {
    fn limit(&self) -> Option<u64> {
        (!self.force).then_some(self.limit)
    }
}

#[derive(Debug, Args)]
pub struct SplittingArg {
    /// Splitting type, e.g. -2,0,0,2
    #[arg(long = "e", allow_hyphen_values = true, value_parser = parse_splitting)]
    pub e: SplittingType,
}

#[derive(Debug, Args)]
pub struct CoreArgs {
    /// Rows of a k-core, e.g. 4,2,1,1
    #[arg(long, value_parser = parse_rows)]
    pub rows: Diagram,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ShapeSource {
    #[arg(long = "e", allow_hyphen_values = true, value_parser = parse_splitting)]
    pub e: Option<SplittingType>,
    /// Rows of a k-core (needs --k)
    #[arg(long, value_parser = parse_rows, requires = "k")]
    pub rows: Option<Diagram>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// N(ē) in full decimal
    N(SplittingArg),
    /// Staircase rows, u(ē) and the window of w(ē)
    Staircase(SplittingArg),
    /// Efficient fillings in lexicographic word order
    Fillings {
        #[command(flatten)]
        shape: ShapeSource,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Window of w(ē)
    Word(SplittingArg),
    /// Number of reduced words of a k-core
    Count(CoreArgs),
    /// Braid graph on the efficient fillings and its connectivity
    Braid {
        #[command(flatten)]
        shape: ShapeSource,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Brute-force positive chain models against the filling models
    Oracle(SplittingArg),
    /// ρ, ρ_k and the splitting-type decomposition of W^r_d
    Bn {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        k: usize,
    },
}

fn parse_splitting(s: &str) -> std::result::Result<SplittingType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rows(s: &str) -> std::result::Result<Diagram, String> {
    Diagram::parse(s).map_err(|e| e.to_string())
}

/// Output of a subcommand: the JSON value and its text rendering.
struct Report {
    json: Value,
    text: String,
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match cli.global.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => {
                let _ = writeln!(err, "error: cannot start {n} threads: {e}");
                return EXIT_INVALID;
            }
        },
        None => execute(&cli),
    };
    match result {
        Ok(report) => {
            let body = if cli.global.json {
                serde_json::to_string_pretty(&report.json).expect("reports serialize")
            } else {
                report.text
            };
            let _ = writeln!(out, "{body}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource_limit() {
                EXIT_RESOURCE
            } else {
                EXIT_INVALID
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::N(arg) => cmd_n(g, &arg.e),
        Command::Staircase(arg) => cmd_staircase(&arg.e),
        Command::Word(arg) => cmd_word(&arg.e),
        Command::Fillings { shape, k } => {
            let (diagram, k) = resolve_shape(shape, *k)?;
            cmd_fillings(g, &diagram, k)
        }
        Command::Count(args) => cmd_count(g, &args.rows, args.k),
        Command::Braid { shape, k } => {
            let (diagram, k) = resolve_shape(shape, *k)?;
            cmd_braid(g, &diagram, k)
        }
        Command::Oracle(arg) => cmd_oracle(g, &arg.e),
        Command::Bn { g: genus, r, d, k } => cmd_bn(g, BnParams { g: *genus, r: *r, d: *d, k: *k }),
    }
}

fn resolve_shape(shape: &ShapeSource, k: Option<usize>) -> Result<(Diagram, usize)> {
    match (&shape.e, &shape.rows) {
        (Some(e), _) => {
            if let Some(k) = k.filter(|&k| k != e.k()) {
                return Err(Error::SplittingType(format!("--k {k} disagrees with the {} parts of {e}", e.k())));
            }
            Ok((staircase(e), e.k()))
        }
        (None, Some(rows)) => Ok((rows.clone(), k.expect("clap enforces --k with --rows"))),
        (None, None) => unreachable!("clap enforces one shape source"),
    }
}

fn open_cache(g: &GlobalArgs, k: usize) -> Result<MemoCache> {
    let cache = match &g.cache {
        Some(path) if path.exists() => cache_load(path, Some(k))?,
        _ => MemoCache::new(k),
    };
    Ok(match g.limit() {
        Some(limit) => cache.with_state_limit(limit),
        None => cache,
    })
}

fn close_cache(g: &GlobalArgs, cache: &MemoCache) -> Result<()> {
    match &g.cache {
        Some(path) if cache.new_states() > 0 => cache_save(cache, Path::new(path)),
        _ => Ok(()),
    }
}

fn count_with_cache(g: &GlobalArgs, diagram: &Diagram, k: usize) -> Result<BigUint> {
    if k < 2 {
        return count_reduced_words(diagram, k, &mut MemoCache::new(k));
    }
    let mut cache = open_cache(g, k)?;
    let n = count_reduced_words(diagram, k, &mut cache)?;
    close_cache(g, &cache)?;
    Ok(n)
}

fn list<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_n(g: &GlobalArgs, e: &SplittingType) -> Result<Report> {
    let n = count_with_cache(g, &staircase(e), e.k())?;
    Ok(Report {
        json: json!({ "splitting_type": e, "k": e.k(), "u": imbalance_u(e), "n": n.to_string() }),
        text: n.to_string(),
    })
}

fn cmd_staircase(e: &SplittingType) -> Result<Report> {
    let d = staircase(e);
    let u = imbalance_u(e);
    let window = if e.k() >= 2 { Some(w_of_splitting(e)?.values().to_vec()) } else { None };
    let window_text = window.as_deref().map_or("none".to_string(), |w| format!("({})", list(w)));
    Ok(Report {
        json: json!({ "splitting_type": e, "k": e.k(), "rows": d.rows(), "u": u, "window": window }),
        text: format!("rows: {d}\nu: {u}\nwindow: {window_text}"),
    })
}

fn cmd_word(e: &SplittingType) -> Result<Report> {
    let w = w_of_splitting(e)?;
    Ok(Report {
        json: json!({ "splitting_type": e, "k": e.k(), "window": w.values(), "length": w.length() }),
        text: list(w.values()),
    })
}

fn cmd_fillings(g: &GlobalArgs, diagram: &Diagram, k: usize) -> Result<Report> {
    let fillings = enumerate_efficient_fillings(diagram, k, g.limit())?;
    let mut text = format!("{} efficient filling(s) of {diagram}, k = {k}", fillings.len());
    for f in &fillings {
        text.push_str(&format!("\n\n{f}\n{}", f.render()));
    }
    Ok(Report {
        json: json!({ "k": k, "rows": diagram.rows(), "count": fillings.len().to_string(), "fillings": fillings }),
        text,
    })
}

fn cmd_count(g: &GlobalArgs, diagram: &Diagram, k: usize) -> Result<Report> {
    let window = window_from_core(diagram, k)?;
    let n = count_with_cache(g, diagram, k)?;
    Ok(Report {
        json: json!({
            "k": k,
            "rows": diagram.rows(),
            "window": window.values(),
            "u": u_core(diagram, k),
            "count": n.to_string(),
        }),
        text: n.to_string(),
    })
}

fn cmd_braid(g: &GlobalArgs, diagram: &Diagram, k: usize) -> Result<Report> {
    let graph = braid_graph(diagram, k, g.limit())?;
    let json = graph.to_json();
    let mut text = format!("nodes: {}\n", graph.nodes.len());
    for (i, f) in graph.nodes.iter().enumerate() {
        text.push_str(&format!("  {i}: {f}\n"));
    }
    text.push_str(&format!("edges: {}\n", graph.edges.len()));
    for e in &graph.edges {
        text.push_str(&format!("  {} -- {} {}\n", e.from, e.to, e.mv.tag()));
    }
    text.push_str(&format!("connected: {}", json.connected));
    let mut value = serde_json::to_value(&json).expect("graph serializes");
    value["rows"] = json!(diagram.rows());
    Ok(Report { json: value, text })
}

fn cmd_oracle(g: &GlobalArgs, e: &SplittingType) -> Result<Report> {
    let positive = enumerate_positive(e, g.limit())?;
    let fillings = enumerate_efficient_fillings(&staircase(e), e.k(), g.limit())?;
    let mut from_fillings = fillings.iter().map(|f| ChainModel::from_filling(f, e)).collect::<Result<Vec<_>>>()?;
    from_fillings.sort_by(|a, b| a.states().cmp(b.states()));
    let matched = positive == from_fillings;
    let show = |models: &[ChainModel]| models.iter().map(|m| format!("  {m}")).collect::<Vec<_>>().join("\n");
    let text = format!(
        "g = u = {}\npositive models: {}\n{}\nmodels from fillings: {}\n{}\nmatch: {matched}",
        imbalance_u(e),
        positive.len(),
        show(&positive),
        from_fillings.len(),
        show(&from_fillings),
    );
    Ok(Report {
        json: json!({
            "splitting_type": e,
            "g": imbalance_u(e),
            "positive": positive,
            "from_fillings": from_fillings,
            "count": fillings.len().to_string(),
            "match": matched,
        }),
        text,
    })
}

fn cmd_bn(g: &GlobalArgs, p: BnParams) -> Result<Report> {
    if p.k == 0 {
        return Err(Error::SplittingType("gonality must be positive".into()));
    }
    let class = match bn_class_coefficient(p.g, p.r, p.d) {
        Ok(c) => Some(c),
        Err(Error::NegativeExponent(_)) => None,
        Err(e) => return Err(e),
    };
    let mut rows = Vec::new();
    let mut text = format!("rho = {}\nrho_k = {}\n", p.rho(), p.rho_k());
    if let Some(c) = &class {
        text.push_str(&format!(
            "class coefficient = {} (theta^{}), {}! * coefficient = {}\n",
            c.coefficient,
            c.exponent,
            c.exponent,
            c.point_count()
        ));
    }
    let types = p.splitting_types();
    text.push_str(&format!("splitting types: {}", types.len()));
    for e in &types {
        let u = imbalance_u(e);
        let n = count_with_cache(g, &staircase(e), e.k())?;
        let dim = p.g - u as i64;
        text.push_str(&format!("\n  ({e})  u = {u}  dim = {dim}  N = {n}  u! = {}", factorial(u)));
        rows.push(json!({
            "splitting_type": e,
            "u": u,
            "dimension": dim,
            "n": n.to_string(),
            "u_factorial": factorial(u).to_string(),
        }));
    }
    let class_json = class.map(|c| {
        json!({
            "coefficient": c.coefficient.to_string(),
            "exponent": c.exponent,
            "scaled": c.point_count().to_string(),
        })
    });
    Ok(Report {
        json: json!({
            "g": p.g, "r": p.r, "d": p.d, "k": p.k,
            "rho": p.rho(),
            "rho_k": p.rho_k(),
            "class": class_json,
            "types": rows,
        }),
        text,
    })
}
