use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use infocent::harness::{self, GeneratorSpec, RunConfig};
use infocent::Error;

#[derive(Parser)]
#[command(name = "infocent", version, about = "Raise a node's information centrality by adding edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured optimizers and write traces and a report.
    Optimize(RunArgs),
    /// Compare approximate and exact greedy in time and result quality.
    ComparePerf(RunArgs),
    /// Write a generated graph as an edge list, e.g. `gen ws 50 4 0.1`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` config file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generator spec, `ws N K P` or `ba N M`.
    #[arg(long)]
    generate: Option<String>,
    /// Read a weight column from the edge list.
    #[arg(long)]
    weighted: bool,
    #[arg(long)]
    name: Option<String>,
    /// Target node label; repeatable.
    #[arg(long = "target")]
    targets: Vec<u64>,
    #[arg(long)]
    random_targets: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// exact, approx, random, top-degree, top-cent or oracle; repeatable.
    #[arg(long = "algo")]
    algos: Vec<String>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    weight: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// literal (worst-case bound tolerances) or practical.
    #[arg(long)]
    solver_mode: Option<String>,
    #[arg(long)]
    m_cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json or csv; repeatable.
    #[arg(long = "format")]
    formats: Vec<String>,
}

impl RunArgs {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let mut o = Vec::new();
        let mut put = |k, v: Option<String>| {
            if let Some(v) = v {
                o.push((k, v));
            }
        };
        let join = |v: &[String]| (!v.is_empty()).then(|| v.join(","));
        put("graph", self.graph.as_ref().map(|p| p.display().to_string()));
        put("generate", self.generate.clone());
        put("weighted", self.weighted.then(|| "true".into()));
        put("name", self.name.clone());
        put("random_targets", self.random_targets.map(|n| n.to_string()));
        let targets: Vec<String> = self.targets.iter().map(u64::to_string).collect();
        put("target", join(&targets));
        put("k", self.k.map(|k| k.to_string()));
        put("algo", join(&self.algos));
        put("epsilon", self.epsilon.map(|e| e.to_string()));
        put("weight", self.weight.map(|w| w.to_string()));
        put("seed", self.seed.map(|s| s.to_string()));
        put("solver_mode", self.solver_mode.clone());
        put("m_cap", self.m_cap.map(|m| m.to_string()));
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("format", join(&self.formats));
        o
    }

    fn config(&self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.apply(self.overrides())?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Optimize(args) => {
            let report = harness::cmd_optimize(&args.config()?)?;
            for p in &report.series {
                println!("k={} {:?}", p.k, p.mean_centrality);
            }
        }
        Command::ComparePerf(args) => {
            let row = harness::cmd_compare_perf(&args.config()?)?;
            println!("{}\n{}", harness::PERF_HEADER, row.csv_line());
        }
        Command::Gen { spec, seed, out } => {
            let spec: GeneratorSpec = spec.join(" ").parse()?;
            let g = harness::cmd_gen(&spec, seed, &out)?;
            println!("wrote {} nodes, {} edges to {}", g.node_count(), g.edge_count(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(harness::exit_code(&e) as u8)
        }
    }
}
