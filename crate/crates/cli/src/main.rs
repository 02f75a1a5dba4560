use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use domrecon::general::{general_transform, general_transform_within};
use domrecon::instances;
use domrecon::invariants::{forest_independence_number, forest_upper_domination};
use domrecon::minor_sparse::{minor_sparse_transform, suggested_density, SparseClass};
use domrecon::oracle::{build_reconfig_graph, threshold_scan, OracleConfig};
use domrecon::sequence::verify_sequence_at;
use domrecon::treewidth::{treewidth_transform, TreeDecomposition};
use domrecon::{
    exact_invariants, verify_sequence, Error, Graph, ReconfigSequence, VertexSet,
    DEFAULT_INVARIANT_LIMIT, DEFAULT_ORACLE_LIMIT,
};

const EXIT_INVALID_INPUT: u8 = 1;
const EXIT_VERIFICATION_FAILED: u8 = 2;
const EXIT_RESOURCE_LIMIT: u8 = 3;
const EXIT_ASSUMPTION_VIOLATED: u8 = 4;

/// Reconfiguration of dominating sets under token addition/removal.
#[derive(Parser)]
#[command(name = "domrecon", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, m, γ, Γ and α with witnesses.
    Stats {
        graph: PathBuf,
        /// Largest vertex count for brute force (default: $DOMRECON_LIMIT or 24).
        #[arg(long)]
        limit: Option<usize>,
        /// One CSV header line and one data line.
        #[arg(long)]
        csv: bool,
    },
    /// Build a reconfiguration sequence between two dominating sets.
    Transform(TransformArgs),
    /// Replay a sequence file and report the first violation.
    Verify {
        graph: PathBuf,
        sequence: PathBuf,
        /// Check against this budget instead of the one in the file.
        #[arg(long)]
        k: Option<usize>,
        /// Expected final set (comma-separated, 1-based).
        #[arg(long)]
        to: Option<String>,
    },
    /// Inspect the k-dominating graph of a small graph.
    Oracle(OracleArgs),
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Output file (default: stdout).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    General,
    MinorSparse,
    Treewidth,
}

#[derive(Args)]
struct TransformArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    /// Start set (comma-separated, 1-based).
    #[arg(long, conflicts_with = "from_file")]
    from: Option<String>,
    /// File holding the start set.
    #[arg(long)]
    from_file: Option<PathBuf>,
    /// Target set (comma-separated, 1-based).
    #[arg(long, conflicts_with = "to_file")]
    to: Option<String>,
    /// File holding the target set.
    #[arg(long)]
    to_file: Option<PathBuf>,
    /// Explicit budget (general method only).
    #[arg(long)]
    k: Option<usize>,
    /// Density parameter (minor-sparse method).
    #[arg(long, conflicts_with = "planar")]
    d: Option<usize>,
    /// Use the planar density parameter d = 4.
    #[arg(long)]
    planar: bool,
    /// Tree decomposition file (treewidth method).
    #[arg(long)]
    td: Option<PathBuf>,
    /// Root bag of the decomposition (1-based; default: last bag).
    #[arg(long)]
    root: Option<usize>,
    /// Upper domination number, when known; computed otherwise.
    #[arg(long)]
    gamma_upper: Option<usize>,
    /// Minimum dominating set to sweep into (treewidth method).
    #[arg(long, conflicts_with = "min_ds_file")]
    min_ds: Option<String>,
    #[arg(long)]
    min_ds_file: Option<PathBuf>,
    /// Brute-force vertex limit (default: $DOMRECON_LIMIT or 24).
    #[arg(long)]
    limit: Option<usize>,
    /// Sequence output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    graph: PathBuf,
    /// Build R_k for this budget.
    #[arg(long, conflicts_with = "scan", required_unless_present = "scan")]
    k: Option<usize>,
    /// Scan k = γ..=KMAX and print one CSV row per k.
    #[arg(long)]
    scan: Option<usize>,
    /// Distance between two sets (comma-separated, 1-based) in R_k.
    #[arg(long, num_args = 2, value_names = ["A", "B"], requires = "k")]
    distance: Option<Vec<String>>,
    /// List isolated nodes of R_k.
    #[arg(long, requires = "k")]
    frozen: bool,
    /// Print the diameter of R_k.
    #[arg(long, requires = "k")]
    diameter: bool,
    /// Vertex limit (default: $DOMRECON_LIMIT or 20).
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Subcommand)]
enum Family {
    /// K_{1,n}.
    Star { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Grid { rows: usize, cols: usize },
    /// Uniform random labeled tree.
    Tree {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The graph G_{ℓ,ℓ−1} on ℓ² + 1 vertices.
    Mynhardt {
        ell: usize,
        /// Also write its width-ℓ tree decomposition here.
        #[arg(long)]
        td: Option<PathBuf>,
        /// Also write its width-(2ℓ−1) path decomposition here.
        #[arg(long)]
        pd: Option<PathBuf>,
    },
    /// Nine-vertex planar graph with R_{Γ+1} disconnected.
    Suzuki,
}

/// Failure of a replayed sequence.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("sequence is not valid")
    }
}

impl std::error::Error for VerificationFailed {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_INVALID_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if let Some(Error::NotMinorSparse(w)) = err.downcast_ref::<Error>() {
                eprint!("{}", w.to_text());
            }
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return EXIT_VERIFICATION_FAILED;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::GraphTooLarge { .. } | Error::ResourceLimit(_)) => EXIT_RESOURCE_LIMIT,
        Some(Error::NotMinorSparse(_) | Error::ClaimViolated(_) | Error::Unreachable(_)) => {
            EXIT_ASSUMPTION_VIOLATED
        }
        _ => EXIT_INVALID_INPUT,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Stats { graph, limit, csv } => stats(&graph, limit, csv),
        Command::Transform(args) => transform(args),
        Command::Verify { graph, sequence, k, to } => verify(&graph, &sequence, k, to.as_deref()),
        Command::Oracle(args) => oracle(args),
        Command::Gen { family, output } => generate(family, output.as_deref()),
    }
}

fn env_limit(flag: Option<usize>, default: usize) -> anyhow::Result<usize> {
    if let Some(l) = flag {
        return Ok(l);
    }
    match std::env::var("DOMRECON_LIMIT") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!(Error::Precondition(format!("DOMRECON_LIMIT `{v}` is not a number")))),
        Err(_) => Ok(default),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path)
        .map_err(Error::from)
        .with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let g = Graph::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if !g.is_connected() {
        eprintln!("warning: graph has {} connected components", g.component_count());
    }
    Ok(g)
}

fn load_set(flag: Option<&str>, file: Option<&Path>, what: &str, n: usize) -> anyhow::Result<Option<VertexSet>> {
    let (text, origin) = match (flag, file) {
        (Some(_), Some(_)) => bail!(Error::Precondition(format!("{what} given both inline and as a file"))),
        (Some(t), None) => (t.to_string(), what.to_string()),
        (None, Some(p)) => (read(p)?, p.display().to_string()),
        (None, None) => return Ok(None),
    };
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('c'))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Some(VertexSet::parse(&body, Some(n)).with_context(|| format!("parsing {origin}"))?))
}

fn write_out(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(Error::from)
            .with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn stats(path: &Path, limit: Option<usize>, csv: bool) -> anyhow::Result<()> {
    let g = load_graph(path)?;
    let limit = env_limit(limit, DEFAULT_INVARIANT_LIMIT)?;
    let inv = exact_invariants(&g, limit)?;
    if csv {
        println!("n,m,gamma,gamma_upper,alpha,connected");
        println!(
            "{},{},{},{},{},{}",
            g.n(),
            g.m(),
            inv.gamma_min,
            inv.gamma_upper,
            inv.alpha,
            g.is_connected()
        );
    } else {
        println!("n: {}", g.n());
        println!("m: {}", g.m());
        println!("connected: {}", g.is_connected());
        println!("γ: {} {}", inv.gamma_min, inv.witness_min_ds.braced());
        println!("Γ: {} {}", inv.gamma_upper, inv.witness_upper_ds.braced());
        println!("α: {} {}", inv.alpha, inv.witness_max_is.braced());
    }
    Ok(())
}

/// Γ from the flag, a forest formula, or brute force.
fn upper_domination(g: &Graph, flag: Option<usize>, limit: usize) -> anyhow::Result<usize> {
    if let Some(gamma) = flag {
        return Ok(gamma);
    }
    if g.is_forest() {
        return Ok(forest_upper_domination(g)?);
    }
    Ok(exact_invariants(g, limit)?.gamma_upper)
}

fn transform(args: TransformArgs) -> anyhow::Result<()> {
    let g = load_graph(&args.graph)?;
    let limit = env_limit(args.limit, DEFAULT_INVARIANT_LIMIT)?;
    let ds = load_set(args.from.as_deref(), args.from_file.as_deref(), "--from", g.n())?
        .ok_or_else(|| anyhow!(Error::Precondition("missing --from or --from-file".into())))?;
    let dt = load_set(args.to.as_deref(), args.to_file.as_deref(), "--to", g.n())?
        .ok_or_else(|| anyhow!(Error::Precondition("missing --to or --to-file".into())))?;
    let reject = |flag: &str, set: bool| -> anyhow::Result<()> {
        if set {
            bail!(Error::Precondition(format!("{flag} does not apply to this method")));
        }
        Ok(())
    };

    let (seq, bound) = match args.method {
        Method::General => {
            reject("--d/--planar", args.d.is_some() || args.planar)?;
            reject("--td/--root/--min-ds", args.td.is_some() || args.root.is_some() || args.min_ds.is_some() || args.min_ds_file.is_some())?;
            general(&g, &ds, &dt, args.k, args.gamma_upper, limit)?
        }
        Method::MinorSparse => {
            reject("--k", args.k.is_some())?;
            reject("--td/--root/--min-ds", args.td.is_some() || args.root.is_some() || args.min_ds.is_some() || args.min_ds_file.is_some())?;
            let d = match (args.d, args.planar) {
                (Some(d), _) => d,
                (None, true) => suggested_density(SparseClass::Planar)?,
                (None, false) => bail!(Error::Precondition("minor-sparse needs --d or --planar".into())),
            };
            let gamma = upper_domination(&g, args.gamma_upper, limit)?;
            let seq = minor_sparse_transform(&g, &ds, &dt, d, gamma)?;
            let bound = if d <= gamma {
                format!("2Γ(d−1)+2(Γ−1) = {}", 2 * gamma * (d - 1) + 2 * (gamma - 1))
            } else {
                format!("d > Γ, general bound 10n = {}", 10 * g.n())
            };
            (seq, bound)
        }
        Method::Treewidth => {
            reject("--k", args.k.is_some())?;
            reject("--d/--planar", args.d.is_some() || args.planar)?;
            let td_path = args
                .td
                .as_deref()
                .ok_or_else(|| anyhow!(Error::Precondition("treewidth needs --td".into())))?;
            let (td, n) = TreeDecomposition::parse(&read(td_path)?)
                .with_context(|| format!("parsing {}", td_path.display()))?;
            if n != g.n() {
                bail!(Error::InvalidDecomposition(format!(
                    "decomposition is for {n} vertices, graph has {}",
                    g.n()
                )));
            }
            let root = match args.root {
                Some(0) => bail!(Error::Precondition("bag ids are 1-based".into())),
                r => r.map(|r| r - 1),
            };
            let target = load_set(args.min_ds.as_deref(), args.min_ds_file.as_deref(), "--min-ds", g.n())?;
            let gamma = upper_domination(&g, args.gamma_upper, limit)?;
            let out = treewidth_transform(&g, &td, &ds, &dt, gamma, target.as_ref(), root)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            (out.sequence, format!("4(n+1)(tw+1) = {}", out.bound))
        }
    };

    let report = verify_sequence(&g, &seq, Some(&dt));
    if !report.valid {
        eprint!("{report}");
        return Err(anyhow!(VerificationFailed));
    }
    write_out(args.output.as_deref(), &seq.to_text())?;
    eprintln!(
        "length {}, max size {}, k {}, bound {bound}",
        report.length, report.max_size, seq.k
    );
    Ok(())
}

fn general(
    g: &Graph,
    ds: &VertexSet,
    dt: &VertexSet,
    k: Option<usize>,
    gamma_flag: Option<usize>,
    limit: usize,
) -> anyhow::Result<(ReconfigSequence, String)> {
    if let Some(k) = k {
        return Ok((general_transform_within(g, ds, dt, k)?, "none (explicit k)".into()));
    }
    let bound = format!("10n = {}", 10 * g.n());
    if g.n() <= limit {
        let mut inv = exact_invariants(g, limit)?;
        if let Some(gamma) = gamma_flag {
            inv.gamma_upper = gamma;
        }
        return Ok((general_transform(g, ds, dt, &inv)?, bound));
    }
    if g.is_forest() {
        let gamma = upper_domination(g, gamma_flag, limit)?;
        let k = gamma + forest_independence_number(g)? - 1;
        let seq = general_transform_within(g, ds, dt, k)?;
        if seq.len() >= 10 * g.n() {
            bail!(Error::ClaimViolated(format!("sequence has {} moves, not below {bound}", seq.len())));
        }
        return Ok((seq, bound));
    }
    bail!(Error::GraphTooLarge { n: g.n(), limit })
}

fn verify(graph: &Path, sequence: &Path, k: Option<usize>, to: Option<&str>) -> anyhow::Result<()> {
    let g = load_graph(graph)?;
    let seq = ReconfigSequence::parse(&read(sequence)?)
        .with_context(|| format!("parsing {}", sequence.display()))?;
    let expected = load_set(to, None, "--to", g.n())?;
    let report = verify_sequence_at(&g, &seq, k.unwrap_or(seq.k), expected.as_ref());
    print!("{report}");
    if report.valid {
        Ok(())
    } else {
        Err(anyhow!(VerificationFailed))
    }
}

fn oracle(args: OracleArgs) -> anyhow::Result<()> {
    let g = load_graph(&args.graph)?;
    let cfg = OracleConfig {
        vertex_limit: env_limit(args.limit, DEFAULT_ORACLE_LIMIT)?,
        ..OracleConfig::default()
    };
    if let Some(kmax) = args.scan {
        let report = threshold_scan(&g, kmax, &cfg)?;
        print!("{}", report.to_csv());
        match report.d0 {
            Some(d0) => eprintln!("connected for every scanned k >= {d0}"),
            None => eprintln!("R_{kmax} is disconnected"),
        }
        if !report.monotonicity_violations.is_empty() {
            eprintln!("connectivity lost after k = {:?}", report.monotonicity_violations);
        }
        return Ok(());
    }
    let k = args.k.expect("clap requires --k without --scan");
    let rg = build_reconfig_graph(&g, k, &cfg)?;
    println!("k,nodes,edges,components,connected");
    println!(
        "{},{},{},{},{}",
        k,
        rg.node_count(),
        rg.edge_count(),
        rg.component_count(),
        rg.is_connected()
    );
    if let Some(pair) = &args.distance {
        let a = VertexSet::parse(&pair[0], Some(g.n()))?;
        let b = VertexSet::parse(&pair[1], Some(g.n()))?;
        println!("distance {} {}: {}", a.braced(), b.braced(), rg.distance(&a, &b)?);
    }
    if args.frozen {
        for s in rg.frozen_sets() {
            println!("frozen {}", s.braced());
        }
    }
    if args.diameter {
        let d = rg.diameter();
        println!("diameter: {}", d.diameter);
        println!("max component diameter: {}", d.max_component_diameter);
    }
    Ok(())
}

fn generate(family: Family, output: Option<&Path>) -> anyhow::Result<()> {
    let g = match family {
        Family::Star { n } => instances::gen_star(n)?,
        Family::Path { n } => instances::gen_path(n)?,
        Family::Cycle { n } => instances::gen_cycle(n)?,
        Family::Complete { n } => instances::gen_complete(n)?,
        Family::Grid { rows, cols } => instances::gen_grid(rows, cols)?,
        Family::Tree { n, seed } => instances::gen_random_tree(n, seed)?,
        Family::Suzuki => instances::gen_suzuki_planar(),
        Family::Mynhardt { ell, td, pd } => {
            let g = instances::gen_mynhardt(ell)?;
            if let Some(p) = td {
                write_out(Some(&p), &instances::gen_mynhardt_td(ell)?.to_text(g.n()))?;
            }
            if let Some(p) = pd {
                write_out(Some(&p), &instances::gen_mynhardt_pd(ell)?.to_text(g.n()))?;
            }
            g
        }
    };
    write_out(output, &g.to_text())
}
