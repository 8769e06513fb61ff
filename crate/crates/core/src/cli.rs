//! Command-line interface.
//!
//! Every command prints one machine-parsable summary line first, then
//! human-readable detail. Exit codes: 0 holds/accepted/verified, 1
//! fails/refuted, 2 usage or input error, 3 resource guard.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arrows::{decide_arrow, ramsey_number, ArrowError, ArrowKind, ArrowQuery, Engine};
use crate::certificate::{verify, Certificate, ColoringRef};
use crate::colorings::{
    delta_coloring, ek_coloring, load_coloring, random_coloring, save_coloring, varrho_coloring,
    ColorValue, Coloring, Source,
};
use crate::graphs::color_graph;
use crate::ordinal::{enumerate_below, parse_ordinal, sample_below, Ordinal, OrdinalDomain};
use crate::walks::{rho, rho_fiber, varrho};
use crate::wellconn::{branches, is_well_connected, max_wc, wc_tree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

pub const THREADS_ENV: &str = "ARROWLAB_THREADS";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ArrowError> for CliError {
    fn from(e: ArrowError) -> Self {
        if e.is_resource_guard() {
            CliError::Guard(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "arrowlab",
    version,
    about = "Finite partition-calculus laboratory"
)]
struct Cli {
    /// Worker threads (default: $ARROWLAB_THREADS, then 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Single-threaded canonical search order; outputs are reproducible.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Partition arrows on finite instances.
    #[command(subcommand)]
    Arrow(ArrowCmd),
    /// Generate or inspect coloring files.
    #[command(subcommand)]
    Coloring(ColoringCmd),
    /// Well-connectedness.
    #[command(subcommand)]
    Wc(WcCmd),
    /// Highly-connected sets.
    #[command(subcommand)]
    Hc(HcCmd),
    /// Monochromatic graph measurements.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Walks on ordinals.
    #[command(subcommand)]
    Walks(WalksCmd),
    /// Re-check a certificate.
    Verify { certificate: PathBuf },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: ArrowKind,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    colors: usize,
    #[arg(long, value_parser = parse_engine, default_value = "backtrack")]
    engine: Engine,
    /// Abort after this many search nodes (exit 3).
    #[arg(long)]
    node_budget: Option<u64>,
    /// Abort after this many milliseconds (exit 3).
    #[arg(long)]
    time_budget_ms: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum ArrowCmd {
    /// Decide n -> (m)^2_colors.
    Decide {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
        /// Where to write a counterexample when the arrow fails.
        #[arg(long, default_value = "counterexample.clr")]
        out: PathBuf,
        /// Write an arrow-verdict certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Least n <= n-max for which the arrow holds.
    Number {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ek,
    Varrho,
    Delta,
    Random,
}

#[derive(Debug, Subcommand)]
enum ColoringCmd {
    /// Generate a coloring file.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Ordinal bound of the domain, e.g. "w^2".
        #[arg(long)]
        domain: Option<String>,
        /// Draw this many ordinals below the bound instead of taking all of it.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Domain size for random colorings.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        arity: u64,
        #[arg(long)]
        bits: Option<u32>,
        /// Write the file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a coloring as a matrix.
    Show { coloring: PathBuf },
}

#[derive(Debug, Args)]
struct ColorArgs {
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long, value_parser = parse_color)]
    color: ColorValue,
}

#[derive(Debug, Subcommand)]
enum WcCmd {
    /// Check that a set is well-connected and emit a certificate.
    Check {
        #[command(flatten)]
        target: ColorArgs,
        /// Comma-separated ordinals.
        #[arg(long)]
        set: String,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Print the tree order of one color.
    Tree {
        #[command(flatten)]
        target: ColorArgs,
    },
    /// Largest well-connected set in each color.
    Max {
        #[arg(long)]
        coloring: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum HcCmd {
    /// Check that a set spans a highly connected monochromatic graph.
    Check {
        #[command(flatten)]
        target: ColorArgs,
        #[arg(long)]
        set: String,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCmd {
    /// Vertex connectivity of a monochromatic graph.
    Connectivity {
        #[command(flatten)]
        target: ColorArgs,
        /// Restrict to this comma-separated set.
        #[arg(long)]
        set: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum WalksCmd {
    /// rho(a, b) for a < b.
    Rho { a: String, b: String },
    /// varrho(a, b) for a < b.
    Varrho { a: String, b: String },
    /// { x <= a : rho(x, a) <= n } together with a.
    Fiber { a: String, n: u64 },
}

fn parse_kind(s: &str) -> Result<ArrowKind, String> {
    s.parse()
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse()
}

fn parse_color(s: &str) -> Result<ColorValue, String> {
    s.parse()
}

fn parse_set(s: &str) -> Result<Vec<Ordinal>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_ordinal(t).map_err(CliError::usage))
        .collect()
}

fn parse_ord(s: &str) -> Result<Ordinal, CliError> {
    parse_ordinal(s).map_err(CliError::usage)
}

fn show_set(v: &[Ordinal]) -> String {
    let items: Vec<String> = v.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn read_coloring(path: &Path) -> Result<Coloring, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    load_coloring(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn thread_count(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n.max(1));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| n.max(1))
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v} is not a thread count"))),
        Err(_) => Ok(1),
    }
}

/// Runs the CLI on `argv` (including the program name), writing to `out`
/// and `err`, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = thread_count(cli.threads).and_then(|threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(CliError::usage)?;
        let deterministic = cli.deterministic || threads == 1;
        pool.install(|| dispatch(cli.command, deterministic, &mut buf))
    });
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let (code, tag) = match e {
                CliError::Usage(_) => (EXIT_USAGE, "ERROR"),
                CliError::Guard(_) => (EXIT_GUARD, "GUARD"),
            };
            let _ = writeln!(out, "{tag} {e}");
            let _ = writeln!(err, "arrowlab: {e}");
            code
        }
    }
}

fn dispatch(cmd: Command, deterministic: bool, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Arrow(ArrowCmd::Decide {
            n,
            search,
            out: cex_path,
            cert,
        }) => arrow_decide(n, &search, deterministic, &cex_path, cert.as_deref(), out),
        Command::Arrow(ArrowCmd::Number { n_max, search }) => arrow_number(n_max, &search, out),
        Command::Coloring(ColoringCmd::Gen {
            family,
            domain,
            sample,
            seed,
            n,
            arity,
            bits,
            out: path,
        }) => coloring_gen(
            family,
            domain.as_deref(),
            sample,
            seed,
            n,
            arity,
            bits,
            path.as_deref(),
            out,
        ),
        Command::Coloring(ColoringCmd::Show { coloring }) => {
            coloring_show(&read_coloring(&coloring)?, out)
        }
        Command::Wc(WcCmd::Check { target, set, cert }) => {
            wc_check(&target, &set, cert.as_deref(), out)
        }
        Command::Wc(WcCmd::Tree { target }) => wc_tree_cmd(&target, out),
        Command::Wc(WcCmd::Max { coloring }) => wc_max(&read_coloring(&coloring)?, out),
        Command::Hc(HcCmd::Check { target, set }) => hc_check(&target, &set, out),
        Command::Graph(GraphCmd::Connectivity { target, set }) => {
            connectivity(&target, set.as_deref(), out)
        }
        Command::Walks(w) => walks(w, out),
        Command::Verify { certificate } => verify_cmd(&certificate, out),
    }
}

fn query(n: usize, s: &SearchArgs, deterministic: bool) -> ArrowQuery {
    let mut q = ArrowQuery::new(s.kind, n, s.m, s.colors).with_engine(s.engine);
    q.deterministic = deterministic;
    q.node_budget = s.node_budget;
    q.time_budget_ms = s.time_budget_ms;
    q
}

fn arrow_decide(
    n: usize,
    s: &SearchArgs,
    deterministic: bool,
    cex_path: &Path,
    cert: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    let v = decide_arrow(&query(n, s, deterministic))?;
    writeln!(out, "{}", v.summary())?;
    writeln!(
        out,
        "engine {}: {} nodes, {} prunes, {} complete colorings",
        v.query.engine, v.stats.nodes, v.stats.prunes, v.stats.leaves
    )?;
    if let Some(k) = v.witness_stats.min_max_witness {
        writeln!(
            out,
            "every coloring has a monochromatic witness of size >= {k}"
        )?;
    }
    let mut cex_ref = None;
    if let Some(c) = &v.counterexample {
        let text = save_coloring(c).map_err(CliError::usage)?;
        std::fs::write(cex_path, &text)?;
        writeln!(out, "counterexample written to {}", cex_path.display())?;
        cex_ref = Some(ColoringRef::Inline(text));
    }
    if let Some(path) = cert {
        std::fs::write(path, Certificate::from_verdict(&v, cex_ref).to_json())?;
        writeln!(out, "certificate written to {}", path.display())?;
    }
    Ok(if v.holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn arrow_number(n_max: usize, s: &SearchArgs, out: &mut dyn Write) -> CliResult {
    let scan = ramsey_number(s.kind, s.m, s.colors, n_max, s.engine)?;
    let label = format!("R_{}({};{})", s.kind, s.m, s.colors);
    match scan.value {
        Some(n) => writeln!(out, "NUMBER {label} = {n}")?,
        None => writeln!(out, "NUMBER {label} > {n_max}")?,
    }
    for v in &scan.verdicts {
        writeln!(out, "{}", v.summary())?;
    }
    Ok(if scan.value.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn sampled_domain(
    bound: &str,
    sample: Option<usize>,
    seed: u64,
) -> Result<OrdinalDomain, CliError> {
    let bound = parse_ord(bound)?;
    let elements = match (sample, bound.as_nat()) {
        (Some(k), _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample_below(&bound, k, &mut rng).map_err(CliError::usage)?
        }
        (None, Some(n)) => (0..n)
            .map(|k| enumerate_below(&bound, k))
            .collect::<Result<_, _>>()
            .map_err(CliError::usage)?,
        (None, None) => {
            return Err(CliError::Usage(format!(
                "domain below {bound} is infinite; pass --sample"
            )))
        }
    };
    OrdinalDomain::explicit(elements).map_err(CliError::usage)
}

#[allow(clippy::too_many_arguments)]
fn coloring_gen(
    family: FamilyArg,
    domain: Option<&str>,
    sample: Option<usize>,
    seed: u64,
    n: Option<usize>,
    arity: u64,
    bits: Option<u32>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    let ordinal_domain = || match (domain, n) {
        (Some(d), _) => sampled_domain(d, sample, seed),
        (None, Some(n)) => OrdinalDomain::initial(n).map_err(CliError::usage),
        (None, None) => Err(CliError::Usage("pass --domain or --n".into())),
    };
    let c = match family {
        FamilyArg::Ek => ek_coloring(ordinal_domain()?),
        FamilyArg::Varrho => varrho_coloring(ordinal_domain()?),
        FamilyArg::Delta => {
            let bits = bits.ok_or_else(|| CliError::Usage("delta needs --bits".into()))?;
            delta_coloring(bits).map_err(CliError::usage)?
        }
        FamilyArg::Random => {
            let n = n.ok_or_else(|| CliError::Usage("random needs --n".into()))?;
            random_coloring(n, arity, seed).map_err(CliError::usage)?
        }
    };
    let text = save_coloring(&c).map_err(CliError::usage)?;
    match path {
        Some(p) => {
            std::fs::write(p, &text)?;
            writeln!(
                out,
                "COLORING n={} arity={} written to {}",
                c.len(),
                c.arity(),
                p.display()
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn coloring_show(c: &Coloring, out: &mut dyn Write) -> CliResult {
    let source = match c.source() {
        Source::Dense(_) => "dense",
        Source::Generated(f) => f.name(),
    };
    writeln!(
        out,
        "COLORING n={} arity={} source={source}",
        c.len(),
        c.arity()
    )?;
    let labels = c.domain().elements();
    let cells: Vec<Vec<String>> = (0..c.len())
        .map(|j| (0..j).map(|i| c.eval_index(i, j).to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain(labels.iter().map(|a| a.to_string().len()))
        .max()
        .unwrap_or(1);
    write!(out, "{:>width$} |", "")?;
    for a in &labels {
        write!(out, " {:>width$}", a.to_string())?;
    }
    writeln!(out)?;
    for (j, b) in labels.iter().enumerate() {
        write!(out, "{:>width$} |", b.to_string())?;
        for cell in &cells[j] {
            write!(out, " {cell:>width$}")?;
        }
        writeln!(out)?;
    }
    Ok(EXIT_OK)
}

fn wc_check(t: &ColorArgs, set: &str, cert_path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let c = read_coloring(&t.coloring)?;
    let set = parse_set(set)?;
    let domain = c.domain().clone();
    let wc = is_well_connected(&c, t.color, &set, &domain).map_err(CliError::usage)?;
    let cert = Certificate::from_wc(
        &wc,
        &domain,
        ColoringRef::inline(&c).map_err(CliError::usage)?,
    );
    let shown = show_set(&wc.witness);
    if wc.accepted() {
        writeln!(out, "ACCEPTED wc color={} set={shown}", t.color)?;
    } else if let Certificate::WcRefutation {
        failing_pair: (a, b),
        ..
    } = &cert
    {
        writeln!(
            out,
            "REFUTED wc color={} set={shown} pair=({a},{b})",
            t.color
        )?;
    }
    match cert_path {
        Some(p) => {
            std::fs::write(p, cert.to_json())?;
            writeln!(out, "certificate written to {}", p.display())?;
        }
        None => out.write_all(cert.to_json().as_bytes())?,
    }
    Ok(if wc.accepted() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn wc_tree_cmd(t: &ColorArgs, out: &mut dyn Write) -> CliResult {
    let c = read_coloring(&t.coloring)?;
    let tree = wc_tree(&c, c.domain(), t.color).map_err(CliError::usage)?;
    writeln!(
        out,
        "TREE color={} n={} tree={}",
        t.color,
        tree.len(),
        if tree.is_tree() { "yes" } else { "no" }
    )?;
    for b in 0..tree.len() {
        let chain: Vec<Ordinal> = tree
            .chain_to(b)
            .into_iter()
            .map(|v| tree.labels()[v].clone())
            .collect();
        writeln!(out, "{}: {}", tree.labels()[b], show_set(&chain))?;
    }
    for branch in branches(&tree) {
        writeln!(out, "branch {}", show_set(&branch))?;
    }
    Ok(EXIT_OK)
}

fn wc_max(c: &Coloring, out: &mut dyn Write) -> CliResult {
    let all = max_wc(c, c.domain()).map_err(CliError::usage)?;
    let best = all
        .iter()
        .max_by(|x, y| x.size.cmp(&y.size).then(y.color.cmp(&x.color)));
    match best {
        Some(b) => writeln!(
            out,
            "MAXWC size={} color={} witness={}",
            b.size,
            b.color,
            show_set(&b.witness)
        )?,
        None => writeln!(out, "MAXWC size=0")?,
    }
    for m in &all {
        writeln!(
            out,
            "color {}: size {} witness {}",
            m.color,
            m.size,
            show_set(&m.witness)
        )?;
    }
    Ok(EXIT_OK)
}

fn hc_check(t: &ColorArgs, set: &str, out: &mut dyn Write) -> CliResult {
    let c = read_coloring(&t.coloring)?;
    let mut set = parse_set(set)?;
    set.sort();
    set.dedup();
    let sub = OrdinalDomain::explicit(set.clone()).map_err(CliError::usage)?;
    let g = color_graph(&c, &sub, t.color).map_err(CliError::usage)?;
    let ok = g.is_highly_connected();
    let word = if ok { "ACCEPTED" } else { "REFUTED" };
    writeln!(out, "{word} hc color={} set={}", t.color, show_set(&set))?;
    let (size, clique) = g.max_clique();
    let clique: Vec<Ordinal> = clique.into_iter().map(|v| g.label(v).clone()).collect();
    writeln!(out, "vertex connectivity {}", g.vertex_connectivity())?;
    writeln!(out, "largest clique {size}: {}", show_set(&clique))?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn connectivity(t: &ColorArgs, set: Option<&str>, out: &mut dyn Write) -> CliResult {
    let c = read_coloring(&t.coloring)?;
    let sub = match set {
        Some(s) => {
            let mut v = parse_set(s)?;
            v.sort();
            v.dedup();
            OrdinalDomain::explicit(v).map_err(CliError::usage)?
        }
        None => c.domain().clone(),
    };
    let g = color_graph(&c, &sub, t.color).map_err(CliError::usage)?;
    writeln!(out, "CONNECTIVITY {}", g.vertex_connectivity())?;
    writeln!(
        out,
        "{} vertices, {} edges, connected: {}, complete: {}",
        g.len(),
        g.edge_count(),
        g.is_connected(),
        g.is_complete()
    )?;
    Ok(EXIT_OK)
}

fn walks(w: WalksCmd, out: &mut dyn Write) -> CliResult {
    match w {
        WalksCmd::Rho { a, b } => {
            let r = rho(&parse_ord(&a)?, &parse_ord(&b)?).map_err(CliError::usage)?;
            writeln!(out, "RHO {r}")?;
        }
        WalksCmd::Varrho { a, b } => {
            let (r, k) = varrho(&parse_ord(&a)?, &parse_ord(&b)?).map_err(CliError::usage)?;
            writeln!(out, "VARRHO ({r},{k})")?;
        }
        WalksCmd::Fiber { a, n } => {
            let f = rho_fiber(&parse_ord(&a)?, n);
            writeln!(out, "FIBER {}", show_set(&f.members))?;
            writeln!(out, "{} members", f.members.len())?;
        }
    }
    Ok(EXIT_OK)
}

fn verify_cmd(path: &Path, out: &mut dyn Write) -> CliResult {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let cert = Certificate::from_json(&text).map_err(CliError::usage)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let v = verify(&cert, base).map_err(|e| match e {
        crate::certificate::CertificateError::Arrow(a) => CliError::from(a),
        other => CliError::usage(other),
    })?;
    let word = if v.ok { "VERIFIED" } else { "REJECTED" };
    writeln!(out, "{word} {}", cert.kind())?;
    writeln!(out, "{}", v.detail)?;
    Ok(if v.ok { EXIT_OK } else { EXIT_NEGATIVE })
}
