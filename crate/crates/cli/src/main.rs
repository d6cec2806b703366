//! `hitbench`: generate graphs, run the estimators and oracles, and write
//! benchmark tables.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{auto_from_toml, Auto, FileConfig};

#[derive(Parser, Debug)]
#[command(name = "hitbench", version, about = "Hitting-time estimator benchmarks")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Edge-list file, or `builtin:<name>` (football, er1000, ba1000, sbm1000, ba10k).
    #[arg(long, global = true)]
    graph: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, env = "HITBENCH_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true)]
    walks: Option<usize>,
    #[arg(long, global = true)]
    t_max: Option<usize>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Spectral parameter, a number or `auto`.
    #[arg(long, global = true)]
    lambda: Option<Auto<f64>>,
    /// Mixing time, a number or `auto`.
    #[arg(long, global = true)]
    t_mix: Option<Auto<usize>>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with defaults for the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Model {
    Er,
    Ba,
    Sbm,
    Barbell,
    Football,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write a generated graph as an edge list.
    Generate {
        #[arg(value_enum)]
        model: Model,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        /// Block sizes for `sbm`, comma separated.
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<usize>,
        #[arg(long)]
        p_intra: Option<f64>,
        #[arg(long)]
        p_inter: Option<f64>,
    },
    /// Exact H(u,v), H(v,u) and effective resistance.
    Exact { u: u64, v: u64 },
    /// One estimate of H(u,v).
    Estimate {
        u: u64,
        v: u64,
        #[arg(long, default_value = "meeting")]
        algo: String,
        /// Step cap for walk sampling.
        #[arg(long, default_value_t = 1_000_000)]
        sampling_cap: u64,
        /// Doublings of t_max after a failed meeting-time run.
        #[arg(long, default_value_t = 3)]
        retries: u32,
        /// Cap on the theoretical walks per level of the cutoff estimator.
        #[arg(long, default_value_t = 1_000_000)]
        max_walks_per_level: u64,
    },
    /// Estimator accuracy against the oracle over sampled pairs.
    Bench {
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        /// Pair samplers, comma separated (default: all five).
        #[arg(long, value_delimiter = ',')]
        samplers: Vec<String>,
        /// Algorithms, comma separated (default: all three).
        #[arg(long, value_delimiter = ',')]
        algos: Vec<String>,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        /// Score against the mean of repeated meeting-time runs.
        #[arg(long)]
        no_exact: bool,
        #[arg(long, default_value_t = 100)]
        reference_runs: usize,
        #[arg(long, default_value_t = 1_000_000)]
        sampling_cap: u64,
        #[arg(long, default_value_t = 3)]
        retries: u32,
        /// Record wall times (output is then no longer reproducible).
        #[arg(long)]
        time: bool,
        /// Run on Erdos-Renyi graphs of these sizes instead of --graph.
        #[arg(long, value_delimiter = ',')]
        sweep_sizes: Vec<usize>,
        #[arg(long, default_value_t = 10.0)]
        avg_degree: f64,
        /// Repeat the bench for each walk count.
        #[arg(long, value_delimiter = ',')]
        sweep_walks: Vec<usize>,
    },
    /// Barbell hitting-time and variance growth.
    Lowerbound {
        #[arg(long, value_delimiter = ',', default_value = "4,6,8,10,12")]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1,10,100")]
        r_list: Vec<u64>,
        #[arg(long, default_value_t = 200)]
        repeats: usize,
    },
    /// Meeting-time wall time against thread count.
    ParallelBench {
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        threads_list: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        u: Option<u64>,
        #[arg(long)]
        v: Option<u64>,
    },
    /// Test whether t-step distributions from all starts are close.
    MixTest {
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Binary-search the smallest accepted t in [1, t_hi].
        #[arg(long)]
        t_hi: Option<usize>,
    },
}

/// Common flags after merging the config file.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub graph: Option<String>,
    pub seed: u64,
    pub threads: Option<usize>,
    pub walks: Option<usize>,
    pub t_max: Option<usize>,
    pub epsilon: Option<f64>,
    pub lambda: Option<Auto<f64>>,
    pub t_mix: Option<Auto<usize>>,
    pub out: Option<PathBuf>,
}

fn settings(c: Common) -> anyhow::Result<Settings> {
    let file = match &c.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    Ok(Settings {
        graph: c.graph.or(file.graph),
        seed: c.seed.or(file.seed).unwrap_or(0),
        threads: c.threads.or(file.threads),
        walks: c.walks.or(file.walks),
        t_max: c.t_max.or(file.t_max),
        epsilon: c.epsilon.or(file.epsilon),
        lambda: match c.lambda {
            Some(l) => Some(l),
            None => file.lambda.as_ref().map(auto_from_toml).transpose()?,
        },
        t_mix: match c.t_mix {
            Some(t) => Some(t),
            None => file.t_mix.as_ref().map(auto_from_toml).transpose()?,
        },
        out: c.out.or(file.out),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = settings(cli.common).and_then(|s| {
        if let Some(t) = s.threads {
            anyhow::ensure!(t > 0, commands::usage("--threads must be positive"));
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
        }
        commands::run(cli.cmd, &s)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
