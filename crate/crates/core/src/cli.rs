//! Command-line front end. Exit codes: 0 success, 1 a verification or
//! search came out negative, 2 usage, parse or I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::andnet::AndNet;
use crate::andnet_analysis::Digraph;
use crate::constructions::{
    fig1_network, fully_padded_antipodal_network, negative_cycles, pure_antipodal_network, reduction_example,
    theorem_a_counterexample, theorem_a_prime_digraph, theorem_a_seed, theorem_b_network,
};
use crate::error::{Error, Result};
use crate::expr::{parse_network, render_network};
use crate::interaction::{global_graph, local_graph, SignFilter};
use crate::network::BooleanNetwork;
use crate::report::{analyze, async_dot, AnalysisOptions};
use crate::state::{check_dim, State};
use crate::transform::{expand_delocalize, find_quasi_delocalizing, reduce};
use crate::verify::{self, Verification};

#[derive(Parser, Debug)]
#[command(name = "bnscope", version, about = "Exhaustive analysis of Boolean networks")]
struct Cli {
    /// Worker threads for state-space sweeps.
    #[arg(long, global = true, env = "BNSCOPE_THREADS")]
    threads: Option<usize>,

    /// Lift the dimension guard on exhaustive sweeps.
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fixed points, attractors, interaction graphs and cycle locality.
    Analyze(AnalyzeArgs),
    /// Run a named verification.
    Verify(VerifyArgs),
    /// Write one of the built-in networks.
    Construct(ConstructArgs),
    /// Eliminate one variable.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        var: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Expand a negative and-net so that its negative cycles stop being local.
    ExpandDelocalize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Write the expansion trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Export a graph in DOT.
    Export {
        file: PathBuf,
        /// async, global or local:<bitstring>.
        #[arg(long)]
        what: String,
        /// Output path, `-` for stdout.
        #[arg(long)]
        dot: PathBuf,
    },
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long)]
    fixed_points: bool,
    #[arg(long)]
    attractors: bool,
    #[arg(long)]
    global_graph: bool,
    /// pos, neg or all.
    #[arg(long, value_name = "FILTER")]
    local_cycles: Option<SignFilter>,
    #[arg(long)]
    nonexpansive: bool,
    #[arg(long)]
    json: bool,
    /// Also write global.dot and async.dot into this directory.
    #[arg(long, value_name = "DIR")]
    dot: Option<PathBuf>,
    /// Include per-phase timings (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(subcommand)]
    target: VerifyTarget,
    /// Print the checks as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Debug, Clone, Copy)]
struct Sampling {
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Three-variable example: dynamics and drawn transitions.
    Fig1,
    /// The 4-cycle seed and its quasi-delocalizing function.
    TheoremASeed,
    /// 12-dimensional and-net: no fixed point, no local negative cycle.
    TheoremA,
    /// Kernel-free digraph whose odd cycles all have killing triples.
    TheoremAPrime,
    /// Antipodal attractive cycle without local negative cycle.
    TheoremB {
        #[arg(long = "n", required = true)]
        n: Vec<usize>,
    },
    /// Delocalizing triples against witness search.
    Prop1(Sampling),
    /// Fixed points under reduction.
    Prop2(Sampling),
    /// Reduced Jacobian identity.
    Prop4(Sampling),
    /// Cycle sign parity law.
    Parity(Sampling),
    /// Hooping parity against Jacobian invertibility.
    Hoopings(Sampling),
    /// Classical negative-cycle and single-cycle results.
    KnownTheorems(Sampling),
    /// Cube isometries and equivariance.
    Isometries,
    /// Named points near a^0, b^0, c^0, d^0.
    NeighborLists {
        #[arg(long = "n", required = true)]
        n: Vec<usize>,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(subcommand)]
    what: ConstructTarget,
    /// Output file; the extension picks the format (.bn, .anet, .dot, .edges).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ConstructTarget {
    Fig1,
    ThmaSeed,
    Thma,
    /// Transposed subdivided digraph of the 12-dimensional and-net.
    ThmaPrime,
    Antipodal {
        #[arg(long)]
        n: usize,
        /// Pull every neighbour of the cycle back onto it.
        #[arg(long)]
        padded: bool,
    },
    Thmb {
        #[arg(long)]
        n: usize,
    },
    /// f0 = !x1, f1 = x0, f2 = x0 ^ x1.
    ReductionExample,
}

/// Parses `argv` (program name first) and runs, writing to `out` and `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return 2;
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn extension(path: &Path) -> String {
    path.extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase()
}

/// Reads a `.anet` file as an and-net and anything else as `.bn`.
pub fn load_network(path: &Path) -> Result<BooleanNetwork> {
    let text = std::fs::read_to_string(path)?;
    if extension(path) == "anet" {
        Ok(AndNet::parse(&text)?.to_network())
    } else {
        Ok(parse_network(&text)?)
    }
}

fn load_andnet(path: &Path) -> Result<AndNet> {
    let text = std::fs::read_to_string(path)?;
    if extension(path) == "anet" {
        AndNet::parse(&text)
    } else {
        AndNet::from_network(&parse_network(&text)?)
    }
}

/// Writes a network in the format named by the output extension.
fn write_network(f: &BooleanNetwork, path: &Path) -> Result<()> {
    let text = match extension(path).as_str() {
        "anet" => AndNet::from_network(f)?.render(),
        "dot" => global_graph(f).to_dot("global"),
        "bn" | "" => render_network(f),
        other => return Err(Error::Format(format!("unknown network format .{other}"))),
    };
    write_text(path, &text)
}

fn write_andnet(a: &AndNet, path: &Path) -> Result<()> {
    match extension(path).as_str() {
        "anet" => write_text(path, &a.render()),
        "dot" => write_text(path, &a.to_signed_digraph().to_dot("andnet")),
        _ => write_network(&a.to_network(), path),
    }
}

fn write_digraph(d: &Digraph, path: &Path) -> Result<()> {
    match extension(path).as_str() {
        "dot" => write_text(path, &d.to_dot("digraph")),
        "edges" | "txt" | "" => write_text(path, &d.to_edge_list()),
        other => Err(Error::Format(format!("unknown digraph format .{other}"))),
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Analyze(a) => run_analyze(a, cli.force, out),
        Command::Verify(v) => run_verify(v, out),
        Command::Construct(c) => run_construct(c, out),
        Command::Reduce { file, var, output } => {
            let f = load_network(file)?;
            let r = reduce(&f, *var)?;
            write_network(&r, output)?;
            writeln!(out, "reduced coordinate {var}: n = {} -> {}", f.dim(), r.dim())?;
            Ok(0)
        }
        Command::ExpandDelocalize { file, output, trace } => {
            let a = load_andnet(file)?;
            let cycles = negative_cycles(&a)?;
            let Some(chi) = find_quasi_delocalizing(&a, &cycles)? else {
                writeln!(out, "no quasi-delocalizing function for the {} negative cycles", cycles.len())?;
                return Ok(1);
            };
            let (g, t) = expand_delocalize(&a, &chi)?;
            write_andnet(&g, output)?;
            if let Some(p) = trace {
                write_text(p, &t.to_json()?)?;
            }
            writeln!(out, "expanded n = {} -> {} along {} cycles", a.dim(), g.dim(), chi.choices.len())?;
            Ok(0)
        }
        Command::Export { file, what, dot } => {
            let f = load_network(file)?;
            check_dim(f.dim(), cli.force)?;
            let text = if what == "async" {
                async_dot(&f)
            } else if what == "global" {
                global_graph(&f).to_dot("global")
            } else if let Some(bits) = what.strip_prefix("local:") {
                let x: State = bits.parse()?;
                local_graph(&f, &x)?.to_dot("local")
            } else {
                return Err(Error::Format(format!("unknown export {what:?} (async|global|local:<state>)")));
            };
            write_text(dot, &text)?;
            Ok(0)
        }
    }
}

fn run_analyze(a: &AnalyzeArgs, force: bool, out: &mut dyn Write) -> Result<i32> {
    let f = load_network(&a.file)?;
    check_dim(f.dim(), force)?;
    let mut opts = AnalysisOptions {
        fixed_points: a.fixed_points,
        attractors: a.attractors,
        global_graph: a.global_graph,
        local_cycles: a.local_cycles,
        nonexpansive: a.nonexpansive,
        timings: a.timings,
    };
    if !(a.fixed_points || a.attractors || a.global_graph || a.local_cycles.is_some() || a.nonexpansive) {
        opts = AnalysisOptions {
            timings: a.timings,
            ..AnalysisOptions::standard()
        };
    }
    let source = a.file.display().to_string();
    let report = analyze(&f, &source, &opts)?;
    if a.json {
        writeln!(out, "{}", report.to_json()?)?;
    } else {
        write!(out, "{}", report.render_text())?;
    }
    if let Some(dir) = &a.dot {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("global.dot"), global_graph(&f).to_dot("global"))?;
        std::fs::write(dir.join("async.dot"), async_dot(&f))?;
    }
    Ok(0)
}

fn run_verify(v: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let results: Vec<Verification> = match &v.target {
        VerifyTarget::Fig1 => vec![verify::verify_fig1()?],
        VerifyTarget::TheoremASeed => vec![verify::verify_theorem_a_seed()?],
        VerifyTarget::TheoremA => vec![verify::verify_theorem_a()?],
        VerifyTarget::TheoremAPrime => vec![verify::verify_theorem_a_prime()?],
        VerifyTarget::TheoremB { n } => n.iter().map(|&n| verify::verify_theorem_b(n)).collect::<Result<_>>()?,
        VerifyTarget::Prop1(s) => vec![verify::verify_prop1(s.samples, s.seed)?],
        VerifyTarget::Prop2(s) => vec![verify::verify_prop2(s.samples, s.seed)?],
        VerifyTarget::Prop4(s) => vec![verify::verify_prop4(s.samples, s.seed)?],
        VerifyTarget::Parity(s) => vec![verify::verify_parity(s.samples, s.seed)?],
        VerifyTarget::Hoopings(s) => vec![verify::verify_hoopings(s.samples, s.seed)?],
        VerifyTarget::KnownTheorems(s) => vec![verify::verify_known_theorems(s.samples, s.seed)?],
        VerifyTarget::Isometries => vec![verify::verify_isometries()?],
        VerifyTarget::NeighborLists { n } => n
            .iter()
            .map(|&n| verify::verify_neighbor_lists_report(n))
            .collect::<Result<_>>()?,
    };
    if v.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&results)?)?;
    } else {
        for r in &results {
            write!(out, "{}", r.render())?;
        }
    }
    Ok(if results.iter().all(Verification::passed) { 0 } else { 1 })
}

fn run_construct(c: &ConstructArgs, out: &mut dyn Write) -> Result<i32> {
    let Some(path) = &c.output else {
        return Err(Error::Format("construct needs -o <file>".into()));
    };
    let summary = match &c.what {
        ConstructTarget::Fig1 => {
            write_network(&fig1_network(), path)?;
            "three-variable example".to_string()
        }
        ConstructTarget::ThmaSeed => {
            write_andnet(&theorem_a_seed(), path)?;
            "4-dimensional seed and-net".to_string()
        }
        ConstructTarget::Thma => {
            write_andnet(&theorem_a_counterexample()?, path)?;
            "12-dimensional and-net".to_string()
        }
        ConstructTarget::ThmaPrime => {
            let d = theorem_a_prime_digraph()?;
            write_digraph(&d, path)?;
            format!("digraph on {} vertices", d.vertex_count())
        }
        ConstructTarget::Antipodal { n, padded } => {
            let f = if *padded {
                fully_padded_antipodal_network(*n)?
            } else {
                pure_antipodal_network(*n)?
            };
            write_network(&f, path)?;
            format!("antipodal network, n = {n}")
        }
        ConstructTarget::Thmb { n } => {
            write_network(&theorem_b_network(*n)?, path)?;
            format!("trajectory network, n = {n}")
        }
        ConstructTarget::ReductionExample => {
            write_network(&reduction_example(), path)?;
            "reduction example".to_string()
        }
    };
    if path.as_os_str() != "-" {
        writeln!(out, "wrote {summary} to {}", path.display())?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bnscope").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["--bogus"]).0, 2);
        assert_eq!(run_capture(&["verify"]).0, 2);
        assert_eq!(run_capture(&["verify", "theorem-b"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn verify_fig1_passes() {
        let (code, out, _) = run_capture(&["verify", "fig1"]);
        assert_eq!(code, 0);
        assert!(out.lines().all(|l| l.starts_with("PASS")));
    }

    #[test]
    fn missing_file_is_an_error() {
        let (code, _, err) = run_capture(&["analyze", "/nonexistent/x.bn"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
    }
}
