use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lcalab_cli::{
    answers_csv, ascending, color_sweep, gen_graph, gen_hypergraph_cycle, mis_sweep, run_consistency_check,
    run_full_verify, run_gw_stats, run_tree_stats, Answer, Instance, ParamOverrides, Report,
};
use lcalab_core::coloring::ColoringContext;
use lcalab_core::mis::MisContext;
use lcalab_core::query_tree::RootRankMode;
use lcalab_core::{EntropyStream, Error};

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_PARAM: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "lcalab", about = "Local computation algorithms: query-local MIS and hypergraph coloring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QueryArgs {
    /// Instance file (hypergraph `H ...` or graph `G ...`)
    #[arg(long)]
    instance: PathBuf,
    /// Master seed as a hex string
    #[arg(long, default_value = "00")]
    seed: String,
    /// JSON parameter overrides, e.g. '{"k1":7,"k2":7,"k3":5}'
    #[arg(long)]
    params: Option<String>,
    /// Dispatch queries to this many workers
    #[arg(long)]
    parallel: Option<usize>,
    /// Output path (CSV for answers, JSON for reports); stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Query these vertices only (comma separated); default is all
    #[arg(long, value_delimiter = ',')]
    queries: Option<Vec<u32>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeMode {
    Uniform,
    Worst,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a k-uniform hyperedge cycle (d = 2)
    GenHypergraph {
        #[arg(long)]
        edges: u64,
        #[arg(long)]
        uniformity: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random graph with a maximum-degree bound
    GenGraph {
        #[arg(long)]
        vertices: u64,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value = "00")]
        seed: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Answer coloring queries; writes `vertex,color,phase` CSV
    Color(QueryArgs),
    /// Answer MIS queries; writes `vertex,in_mis,phase` CSV
    Mis(QueryArgs),
    /// Sweep every vertex and verify the full answer vector
    Verify(QueryArgs),
    /// Replay the query set under permutations and a parallel batch
    Consistency {
        #[command(flatten)]
        common: QueryArgs,
        #[arg(long, default_value_t = 5)]
        permutations: u64,
    },
    /// Random query tree size statistics
    TreeStats {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = TreeMode::Uniform)]
        mode: TreeMode,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value = "00")]
        seed: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Branching-process total-progeny statistics and tail fit
    GwStats {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value = "00")]
        seed: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::param(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_instance(path: &PathBuf) -> Result<Instance, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::param(format!("reading {}: {e}", path.display())))?;
    Instance::parse(&text)
}

fn emit_report(out: &Option<PathBuf>, report: &Report) -> Result<u8, Error> {
    emit(out, &(report.to_json() + "\n"))?;
    Ok(if report.passed() { 0 } else { EXIT_VERIFY_FAIL })
}

fn answers_exit(answers: &[(u32, Answer)]) -> u8 {
    if answers.iter().any(|(_, a)| a.is_fail()) {
        EXIT_BUDGET
    } else {
        0
    }
}

fn query_order(args: &QueryArgs, m: u64) -> Result<Vec<u32>, Error> {
    match &args.queries {
        None => Ok(ascending(m)),
        Some(qs) => {
            for &q in qs {
                if q as u64 >= m {
                    return Err(Error::param(format!("query vertex {q} out of range 0..{m}")));
                }
            }
            Ok(qs.clone())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::GenHypergraph { edges, uniformity, out } => {
            let h = gen_hypergraph_cycle(edges, uniformity)?;
            emit(&out, &h.to_text())?;
            Ok(0)
        }
        Command::GenGraph { vertices, degree, density, seed, out } => {
            let master = lcalab_core::parse_hex_seed(&seed)?;
            let mut entropy = EntropyStream::new(&master, "harness.gen-graph");
            let g = gen_graph(vertices, degree, density, &mut entropy)?;
            emit(&out, &g.to_text())?;
            Ok(0)
        }
        Command::Color(args) => {
            let master = lcalab_core::parse_hex_seed(&args.seed)?;
            let overrides = ParamOverrides::parse(args.params.as_deref())?;
            match load_instance(&args.instance)? {
                Instance::Hypergraph(h) => {
                    let order = query_order(&args, h.m())?;
                    let params = overrides.coloring(&h);
                    let ctx = ColoringContext::new(h, params, &master)?;
                    for w in ctx.warnings() {
                        eprintln!("warning: {w}");
                    }
                    let answers = color_sweep(&ctx, &order, args.parallel)?;
                    emit(&args.out, &answers_csv("vertex,color,phase", &answers))?;
                    Ok(answers_exit(&answers))
                }
                Instance::Graph(_) => Err(Error::param("color needs a hypergraph instance")),
            }
        }
        Command::Mis(args) => {
            let master = lcalab_core::parse_hex_seed(&args.seed)?;
            let overrides = ParamOverrides::parse(args.params.as_deref())?;
            match load_instance(&args.instance)? {
                Instance::Graph(g) => {
                    let order = query_order(&args, g.n())?;
                    let ctx = MisContext::new(g, overrides.mis(), &master)?;
                    let answers = mis_sweep(&ctx, &order, args.parallel)?;
                    emit(&args.out, &answers_csv("vertex,in_mis,phase", &answers))?;
                    Ok(answers_exit(&answers))
                }
                Instance::Hypergraph(_) => Err(Error::param("mis needs a graph instance")),
            }
        }
        Command::Verify(args) => {
            let overrides = ParamOverrides::parse(args.params.as_deref())?;
            let instance = load_instance(&args.instance)?;
            let (report, answers) =
                run_full_verify(&instance, &args.seed, &overrides, args.parallel)?;
            let code = emit_report(&args.out, &report)?;
            Ok(if code == 0 {
                0
            } else if answers.iter().any(|(_, a)| a.is_fail()) {
                EXIT_BUDGET
            } else {
                code
            })
        }
        Command::Consistency { common, permutations } => {
            let overrides = ParamOverrides::parse(common.params.as_deref())?;
            let instance = load_instance(&common.instance)?;
            let report = run_consistency_check(
                &instance,
                &common.seed,
                &overrides,
                permutations,
                common.parallel.unwrap_or(8),
            )?;
            emit_report(&common.out, &report)
        }
        Command::TreeStats { degree, mode, samples, seed, out } => {
            let mode = match mode {
                TreeMode::Uniform => RootRankMode::UniformRandom,
                TreeMode::Worst => RootRankMode::WorstCaseOne,
            };
            let (report, csv) = run_tree_stats(degree, mode, samples, &seed)?;
            emit(&out, &csv)?;
            if out.is_some() {
                println!("{}", report.to_json());
            }
            Ok(0)
        }
        Command::GwStats { degree, samples, seed, out } => {
            let report = run_gw_stats(degree, samples, &seed)?;
            emit_report(&out, &report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget(_) => ExitCode::from(EXIT_BUDGET),
                _ => ExitCode::from(EXIT_PARAM),
            }
        }
    }
}
