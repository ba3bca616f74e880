use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use clutterlab::clutter::{
    complement_connected_clutter, connected_clutter, find_elimination_order, verify_certificate, Clutter, SearchOutcome,
    Strategy,
};
use clutterlab::families::{
    assemble_co_chordal_cactus, complete, complete_multipartite, cycle, gamma_graph, generate_2k2c4_free, grid,
    partially_split, path, random_block_graph, random_cactus_decomposition, random_tree_max_degree,
    regularity_jump_graph, SkeletonShape,
};
use clutterlab::ideal::{connected_ideal, MonomialIdeal, QuotientOutcome};
use clutterlab::io as formats;
use clutterlab::resolution::{betti, betti_general, BettiTable, Field};
use clutterlab::verifier::{run_all, run_check, CheckSpec, Coverage, Outcome, TheoremId, Verdict};
use clutterlab::Graph;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "clutterlab", version, about = "Connected clutters, chordality certificates and Betti numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from one of the built-in families.
    Gen(GenArgs),
    /// Search for a chordality certificate of a graph's clutter.
    Certify(CertifyArgs),
    /// Print the connected clutter or its complement.
    Clutter(ClutterArgs),
    /// Replay a certificate against a clutter.
    VerifyCert(VerifyCertArgs),
    /// Build a connected ideal or a power of it, optionally checking an exchange property.
    Ideal(IdealArgs),
    /// Graded Betti table as CSV or JSON.
    Betti(BettiArgs),
    /// Regularity and linearity summary.
    Reg(BettiArgs),
    /// Run theorem checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Output path; standard output when omitted.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the complement of the generated graph.
    #[arg(long, global = true)]
    complement: bool,
}

#[derive(Subcommand)]
enum Family {
    Grid { n: usize, m: usize },
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    /// Complete multipartite graph with the given part sizes.
    Multipartite {
        #[arg(required = true)]
        parts: Vec<usize>,
    },
    /// Cliques of sizes p + m_i glued along a common p-clique.
    Gamma {
        p: usize,
        #[arg(required = true)]
        ms: Vec<usize>,
    },
    PartiallySplit { k: usize, s: usize, kprime: usize },
    /// Random tree with bounded maximum degree.
    Tree { n: usize, max_degree: usize },
    /// Random block graph.
    Block { max_n: usize },
    /// Random co-chordal-cactus graph on a skeleton (K2, P3, P4, C3, C4, C5).
    Cactus {
        shape: String,
        #[arg(default_value_t = 11)]
        max_n: usize,
        /// Also write the filled decomposition of the complement.
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Random (2K2, C4)-free graph: independent part, clique part, optional C5.
    Free {
        n1: usize,
        n2: usize,
        #[arg(long)]
        c5: bool,
    },
    /// Seven-vertex graph whose I_2 has regularity 5.
    Jump,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Connected,
    Complement,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Greedy,
    Backtracking,
}

#[derive(Args)]
struct ClutterSource {
    /// Graph JSON (`-` for standard input).
    #[arg(short, long, conflicts_with = "clutter")]
    input: Option<String>,
    /// Clutter JSON instead of a graph.
    #[arg(long)]
    clutter: Option<String>,
    #[arg(short, long, default_value_t = 1)]
    r: usize,
    #[arg(long, value_enum, default_value_t = Target::Complement)]
    target: Target,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    source: ClutterSource,
    #[arg(long, value_enum, default_value_t = StrategyArg::Backtracking)]
    strategy: StrategyArg,
    /// Node budget; accepts K, M and G suffixes.
    #[arg(long, value_parser = parse_budget, default_value = "10M")]
    budget: u64,
    /// Certificate path; standard output when omitted.
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long, default_value = "witness.json")]
    witness: PathBuf,
    /// Exit 3 when the budget runs out.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct ClutterArgs {
    #[command(flatten)]
    source: ClutterSource,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyCertArgs {
    #[command(flatten)]
    source: ClutterSource,
    /// Certificate JSON (`-` for standard input).
    #[arg(long)]
    cert: String,
    #[arg(long, default_value = "witness.json")]
    witness: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealCheck {
    Polymatroidal,
    WeaklyPolymatroidal,
    LinearQuotients,
}

#[derive(Args)]
struct IdealSource {
    /// Graph JSON; the ideal is I_r of the graph.
    #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
    graph: Option<String>,
    /// Ideal JSON.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(short, long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    power: u32,
}

#[derive(Args)]
struct IdealArgs {
    #[command(flatten)]
    source: IdealSource,
    #[arg(long, value_enum)]
    check: Option<IdealCheck>,
    /// Variable order for the weak exchange check, e.g. `2,0,1`.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    #[arg(long, value_parser = parse_budget, default_value = "10M")]
    budget: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "witness.json")]
    witness: PathBuf,
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    source: IdealSource,
    /// gf2, gf<p> or q.
    #[arg(long, default_value = "gf2")]
    field: Field,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Refuse lcm lattices larger than this; applies to non-squarefree ideals.
    #[arg(long)]
    lattice_cap: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id such as T4.13.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    check: Option<TheoremId>,
    /// Every theorem with default parameters.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    min_n: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_r: Option<usize>,
    #[arg(long)]
    max_q: Option<u32>,
    /// Seeds as a list (`1,2,3`) or a range (`0..5`).
    #[arg(long, value_parser = parse_seeds)]
    seeds: Option<Seeds>,
    #[arg(long, value_parser = parse_budget, default_value = "10M")]
    budget: u64,
    #[arg(long, default_value = "gf2")]
    field: Field,
    /// Write all verdicts as a JSON array.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Format of the verdict listing on standard output.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value = "witness.json")]
    witness: PathBuf,
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Debug)]
struct Seeds(Vec<u64>);

fn parse_budget(s: &str) -> Result<u64, String> {
    let t = s.trim().replace('_', "");
    let (digits, scale) = match t.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&t[..t.len() - 1], 1_000),
        Some('M') => (&t[..t.len() - 1], 1_000_000),
        Some('G') => (&t[..t.len() - 1], 1_000_000_000),
        _ => (&t[..], 1),
    };
    let base: u64 = digits.parse().map_err(|_| format!("invalid budget `{s}`"))?;
    base.checked_mul(scale).filter(|&b| b > 0).ok_or_else(|| format!("invalid budget `{s}`"))
}

fn parse_seeds(s: &str) -> Result<Seeds, String> {
    let bad = || format!("invalid seeds `{s}`");
    let seeds: Vec<u64> = if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        (a..b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if seeds.is_empty() {
        return Err(bad());
    }
    Ok(Seeds(seeds))
}

/// A failure that maps to an exit code; the message goes to standard error.
struct Exit(u8, String);

impl From<clutterlab::Error> for Exit {
    fn from(e: clutterlab::Error) -> Self {
        Exit(EXIT_USAGE, e.to_string())
    }
}

type CliResult = Result<(), Exit>;

fn read_source(path: &str) -> Result<String, Exit> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Exit(EXIT_USAGE, format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Exit(EXIT_USAGE, format!("reading {path}: {e}")))
    }
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Exit(EXIT_USAGE, format!("writing {}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Exit(EXIT_USAGE, format!("writing output: {e}"))),
    }
}

fn write_witness(path: &Path, value: &serde_json::Value) -> CliResult {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    write_out(Some(path), &s)?;
    eprintln!("witness written to {}", path.display());
    Ok(())
}

fn load_graph(path: &str) -> Result<Graph, Exit> {
    Ok(formats::graph_from_json(&read_source(path)?)?)
}

fn load_clutter(src: &ClutterSource) -> Result<Clutter, Exit> {
    if let Some(p) = &src.clutter {
        return Ok(formats::clutter_from_json(&read_source(p)?)?);
    }
    let Some(p) = &src.input else {
        return Err(Exit(EXIT_USAGE, "one of --input or --clutter is required".into()));
    };
    let g = load_graph(p)?;
    Ok(match src.target {
        Target::Connected => connected_clutter(&g, src.r)?,
        Target::Complement => complement_connected_clutter(&g, src.r)?,
    })
}

fn load_ideal(src: &IdealSource) -> Result<MonomialIdeal, Exit> {
    let base = match (&src.graph, &src.ideal) {
        (Some(g), _) => connected_ideal(&load_graph(g)?, src.r)?,
        (None, Some(i)) => formats::ideal_from_json(&read_source(i)?)?,
        (None, None) => return Err(Exit(EXIT_USAGE, "one of --graph or --ideal is required".into())),
    };
    if src.power == 1 {
        Ok(base)
    } else {
        Ok(base.power(src.power)?)
    }
}

fn gen(args: &GenArgs) -> CliResult {
    let seed = args.seed;
    let g = match &args.family {
        Family::Grid { n, m } => grid(*n, *m)?,
        Family::Cycle { n } => cycle(*n)?,
        Family::Path { n } => path(*n)?,
        Family::Complete { n } => complete(*n)?,
        Family::Multipartite { parts } => complete_multipartite(parts)?,
        Family::Gamma { p, ms } => gamma_graph(*p, ms)?,
        Family::PartiallySplit { k, s, kprime } => partially_split(*k, *s, *kprime)?,
        Family::Tree { n, max_degree } => random_tree_max_degree(*n, *max_degree, seed)?,
        Family::Block { max_n } => random_block_graph(*max_n, seed)?,
        Family::Cactus { shape, max_n, decomposition } => {
            let shape = SkeletonShape::ALL
                .iter()
                .copied()
                .find(|s| s.name().eq_ignore_ascii_case(shape))
                .ok_or_else(|| Exit(EXIT_USAGE, format!("unknown skeleton `{shape}`; use K2, P3, P4, C3, C4 or C5")))?;
            let d = random_cactus_decomposition(shape, *max_n, seed)?;
            let (g, filled) = assemble_co_chordal_cactus(&d, seed)?;
            if let Some(p) = decomposition {
                write_out(Some(p), &formats::decomposition_to_json(&filled))?;
            }
            g
        }
        Family::Free { n1, n2, c5 } => generate_2k2c4_free(*n1, *n2, *c5, seed)?,
        Family::Jump => regularity_jump_graph(),
    };
    let g = if args.complement { g.complement() } else { g };
    write_out(args.output.as_deref(), &formats::graph_to_json(&g))
}

fn certify(args: &CertifyArgs) -> CliResult {
    let c = load_clutter(&args.source)?;
    let strategy = match args.strategy {
        StrategyArg::Greedy => Strategy::Greedy,
        StrategyArg::Backtracking => Strategy::Backtracking,
    };
    let (outcome, stats) = find_elimination_order(&c, strategy, args.budget);
    match outcome {
        SearchOutcome::Found(cert) => {
            eprintln!("chordal: {} steps, {} nodes expanded", cert.steps.len(), stats.nodes);
            write_out(args.emit.as_deref(), &formats::certificate_to_json(&cert))
        }
        SearchOutcome::Refuted => {
            write_witness(&args.witness, &json!({ "outcome": "refuted", "clutter": clutter_value(&c) }))?;
            Err(Exit(EXIT_FAIL, "not chordal: the search space was exhausted without a certificate".into()))
        }
        other => {
            let msg = format!("inconclusive: {} after {} nodes", other.name(), stats.nodes);
            if args.strict {
                Err(Exit(EXIT_EXHAUSTED, msg))
            } else {
                eprintln!("{msg}");
                Ok(())
            }
        }
    }
}

fn clutter_value(c: &Clutter) -> serde_json::Value {
    serde_json::from_str(&formats::clutter_to_json(c)).expect("emitted json parses")
}

fn clutter_cmd(args: &ClutterArgs) -> CliResult {
    let c = load_clutter(&args.source)?;
    write_out(args.output.as_deref(), &formats::clutter_to_json(&c))
}

fn verify_cert(args: &VerifyCertArgs) -> CliResult {
    if args.cert == "-" && args.source.input.as_deref() == Some("-") {
        return Err(Exit(EXIT_USAGE, "only one input can come from standard input".into()));
    }
    let c = load_clutter(&args.source)?;
    let cert = formats::certificate_from_json(&read_source(&args.cert)?)?;
    match verify_certificate(&c, &cert) {
        Ok(()) => {
            println!("valid: {} steps", cert.steps.len());
            Ok(())
        }
        Err(v) => {
            write_witness(&args.witness, &json!({ "violation": v.to_string(), "clutter": clutter_value(&c) }))?;
            Err(Exit(EXIT_FAIL, format!("invalid certificate: {v}")))
        }
    }
}

fn ideal_cmd(args: &IdealArgs) -> CliResult {
    let i = load_ideal(&args.source)?;
    let Some(check) = args.check else {
        return write_out(args.output.as_deref(), &formats::ideal_to_json(&i));
    };
    if let Some(p) = &args.output {
        write_out(Some(p), &formats::ideal_to_json(&i))?;
    }
    if args.order.is_some() && !matches!(check, IdealCheck::WeaklyPolymatroidal) {
        return Err(Exit(EXIT_USAGE, "--order only applies to --check weakly-polymatroidal".into()));
    }
    let (name, witness) = match check {
        IdealCheck::Polymatroidal => (
            "polymatroidal",
            i.is_polymatroidal()?.err().map(|w| json!({ "u": w.u.exps(), "v": w.v.exps(), "i": w.i })),
        ),
        IdealCheck::WeaklyPolymatroidal => {
            let order = args.order.clone().unwrap_or_else(|| (0..i.n()).collect());
            let res = i.is_weakly_polymatroidal(&order)?;
            ("weakly-polymatroidal", res.err().map(|w| json!({ "f": w.f.exps(), "g": w.g.exps(), "t": w.t })))
        }
        IdealCheck::LinearQuotients => match i.has_linear_quotients(args.budget)? {
            QuotientOutcome::Found(order) => {
                println!("linear-quotients=true order={}", join(&order));
                return Ok(());
            }
            QuotientOutcome::Refuted => ("linear-quotients", Some(json!({ "outcome": "refuted" }))),
            QuotientOutcome::Exhausted => {
                let msg = "linear-quotients=inconclusive (budget exhausted)".to_string();
                println!("{msg}");
                return if args.strict { Err(Exit(EXIT_EXHAUSTED, msg)) } else { Ok(()) };
            }
        },
    };
    println!("{name}={}", witness.is_none());
    match witness {
        None => Ok(()),
        Some(w) => {
            let ideal: serde_json::Value = serde_json::from_str(&formats::ideal_to_json(&i)).expect("emitted json parses");
            write_witness(&args.witness, &json!({ "check": name, "ideal": ideal, "witness": w }))?;
            Err(Exit(EXIT_FAIL, format!("{name} check failed")))
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn table_for(args: &BettiArgs) -> Result<(BettiTable, Option<u32>), Exit> {
    let i = load_ideal(&args.source)?;
    let t = match args.lattice_cap {
        Some(cap) if !i.is_squarefree() => betti_general(&i, args.field, Some(cap))?,
        _ => betti(&i, args.field)?,
    };
    Ok((t, i.degree_pure()))
}

fn betti_cmd(args: &BettiArgs) -> CliResult {
    let (t, degree) = table_for(args)?;
    let text = match args.format {
        Format::Csv => format!("{}{}\n", t.to_csv(), t.summary(degree)),
        Format::Json => {
            let entries: Vec<_> = t.entries().map(|(i, j, rank)| json!({ "i": i, "j": j, "rank": rank })).collect();
            let linear = degree.is_some_and(|d| !t.is_empty() && t.is_linear(d as usize));
            let v = json!({ "field": t.field().to_string(), "entries": entries, "regularity": t.regularity(), "linear": linear });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
        }
    };
    write_out(None, &text)
}

fn reg_cmd(args: &BettiArgs) -> CliResult {
    let (t, degree) = table_for(args)?;
    println!("{}", t.summary(degree));
    Ok(())
}

fn verify(args: &VerifyArgs) -> CliResult {
    let verdicts: Vec<Verdict> = match args.check {
        Some(id) => {
            let mut spec = CheckSpec::new(id);
            spec.min_n = args.min_n;
            spec.max_n = args.max_n;
            spec.max_r = args.max_r;
            spec.max_q = args.max_q;
            if let Some(s) = &args.seeds {
                spec.seeds = s.0.clone();
            }
            spec.budget = args.budget;
            spec.field = args.field;
            run_check(&spec)?
        }
        None => {
            let ranged = args.min_n.is_some() || args.max_n.is_some() || args.max_r.is_some() || args.max_q.is_some();
            if ranged || args.seeds.is_some() {
                return Err(Exit(EXIT_USAGE, "--all runs default ranges; range and seed flags need --check".into()));
            }
            run_all(args.budget, args.field)?
        }
    };
    if let Some(p) = &args.json {
        let mut s = serde_json::to_string_pretty(&verdicts).expect("verdicts serialize");
        s.push('\n');
        write_out(Some(p), &s)?;
    }
    let listing = match args.format {
        Format::Csv => {
            let mut s = String::from("theorem,instance,outcome,runtime_ms\n");
            for v in &verdicts {
                s += &v.csv_row();
                s.push('\n');
            }
            s
        }
        Format::Json => format!("{}\n", serde_json::to_string(&verdicts).expect("verdicts serialize")),
    };
    write_out(None, &listing)?;
    let count = |f: fn(&Verdict) -> bool| verdicts.iter().filter(|v| f(v)).count();
    let (pass, fail) = (count(Verdict::is_pass), count(Verdict::is_fail));
    let inconclusive = verdicts.len() - pass - fail;
    eprintln!("{pass} pass, {fail} fail, {inconclusive} inconclusive");
    if args.all {
        let cov = Coverage::of(&verdicts);
        eprintln!("suite green: {}", cov.suite_green());
        if !cov.missing.is_empty() {
            eprintln!("no passing verdict: {}", cov.missing.iter().map(|t| t.code()).collect::<Vec<_>>().join(" "));
        }
    }
    if fail > 0 {
        let failing: Vec<&Verdict> = verdicts.iter().filter(|v| v.is_fail()).collect();
        write_witness(&args.witness, &serde_json::to_value(&failing).expect("verdicts serialize"))?;
        return Err(Exit(EXIT_FAIL, format!("{fail} failing verdicts")));
    }
    if inconclusive > 0 && args.strict {
        let first = verdicts.iter().find_map(|v| match &v.outcome {
            Outcome::Inconclusive { reason, .. } => Some(format!("{} {}: {reason}", v.theorem, v.instance)),
            _ => None,
        });
        return Err(Exit(EXIT_EXHAUSTED, format!("inconclusive verdicts, first: {}", first.unwrap_or_default())));
    }
    Ok(())
}

fn configure_threads() -> CliResult {
    let Ok(raw) = std::env::var("CLUTTERLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Exit(EXIT_USAGE, format!("CLUTTERLAB_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Exit(EXIT_USAGE, format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Certify(a) => certify(a),
        Command::Clutter(a) => clutter_cmd(a),
        Command::VerifyCert(a) => verify_cert(a),
        Command::Ideal(a) => ideal_cmd(a),
        Command::Betti(a) => betti_cmd(a),
        Command::Reg(a) => reg_cmd(a),
        Command::Verify(a) => verify(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
