//! Subcommand bodies. Everything substantive lives in the library.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::json;

use hitlocal::bench::{
    default_t_max, lower_bound_experiment, parallel_bench, run_bench, size_sweep, validate_summary,
    walk_sweep, write_records, BenchConfig, BenchOutput,
};
use hitlocal::datasets::{football, load_edge_list, table3_ba, table3_er, table3_sbm};
use hitlocal::estimators::{
    cutoff_estimate, meeting_time_estimate, walk_sampling_estimate, Algorithm, CutoffOptions,
    Diagnostics, EstimatorParams, HtEstimate, DEFAULT_WALKS,
};
use hitlocal::exact::{exact_effective_resistance, exact_hitting_to, spectral_info, DEFAULT_TOL};
use hitlocal::generate::{generate_ba, generate_barbell, generate_er, generate_sbm};
use hitlocal::mixing::{binary_search_mixing, mixing_test};
use hitlocal::{Graph, PairSampler, PairStrategy};

use super::{Auto, Cmd, Model, Settings};

/// An error carrying its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for Failure {}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

fn estimator_failure(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

/// 0 ok, 1 usage, 2 estimator failure after retries, 3 infeasible oracle.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(f) = e.downcast_ref::<Failure>() {
        return f.code;
    }
    match e.downcast_ref::<hitlocal::Error>() {
        Some(hitlocal::Error::TooLarge { .. }) => 3,
        _ => 1,
    }
}

struct Loaded {
    name: String,
    graph: Graph,
    /// Original id of each dense node.
    ids: Vec<u64>,
}

impl Loaded {
    fn dense(&self, id: u64) -> Result<usize> {
        self.ids
            .binary_search(&id)
            .map_err(|_| usage(format!("node {id} is not in graph {}", self.name)).into())
    }
}

fn load(s: &Settings) -> Result<Loaded> {
    let Some(spec) = &s.graph else {
        bail!(usage("--graph is required"));
    };
    let graph = if let Some(name) = spec.strip_prefix("builtin:") {
        match name {
            "football" => football()?.0,
            "er1000" => table3_er(s.seed)?,
            "ba1000" => table3_ba(s.seed)?,
            "sbm1000" => table3_sbm(s.seed)?,
            "ba10k" => generate_ba(10_000, 10, s.seed)?,
            _ => bail!(usage(format!("unknown builtin graph {name:?}"))),
        }
    } else {
        let path = Path::new(spec);
        let ing = load_edge_list(path, false).with_context(|| format!("reading {spec}"))?;
        let name = path.file_stem().map_or(spec.clone(), |s| s.to_string_lossy().into_owned());
        return Ok(Loaded { name, graph: ing.graph, ids: ing.ids });
    };
    let ids = (0..graph.n() as u64).collect();
    Ok(Loaded {
        name: spec.trim_start_matches("builtin:").to_string(),
        graph,
        ids,
    })
}

fn output(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn resolve_lambda(g: &Graph, l: Option<Auto<f64>>) -> Result<f64> {
    Ok(match l.unwrap_or(Auto::Auto) {
        Auto::Value(x) => x,
        Auto::Auto => spectral_info(g, 1e-9)?.lambda,
    })
}

fn resolve_t_mix(g: &Graph, t: Option<Auto<usize>>) -> Result<usize> {
    match t.unwrap_or(Auto::Auto) {
        Auto::Value(x) => Ok(x),
        Auto::Auto => Ok(spectral_info(g, 1e-9)?.t_mix.ok_or(hitlocal::Error::Periodic)?),
    }
}

pub fn run(cmd: Cmd, s: &Settings) -> Result<()> {
    match cmd {
        Cmd::Generate { model, n, p, k, blocks, p_intra, p_inter } => {
            generate(model, n, p, k, &blocks, p_intra, p_inter, s)
        }
        Cmd::Exact { u, v } => exact(s, u, v),
        Cmd::Estimate { u, v, algo, sampling_cap, retries, max_walks_per_level } => {
            estimate(s, u, v, &algo, sampling_cap, retries, max_walks_per_level)
        }
        Cmd::Bench {
            pairs,
            samplers,
            algos,
            repeats,
            no_exact,
            reference_runs,
            sampling_cap,
            retries,
            time,
            sweep_sizes,
            avg_degree,
            sweep_walks,
        } => {
            let cfg = BenchConfig {
                pairs,
                samplers: parse_list(&samplers, &PairStrategy::ALL)?,
                algorithms: parse_list(&algos, &Algorithm::ALL)?,
                repeats,
                seed: s.seed,
                walks: s.walks.unwrap_or(DEFAULT_WALKS),
                t_max: s.t_max,
                t_mix: match s.t_mix {
                    Some(Auto::Value(t)) => Some(t),
                    _ => None,
                },
                lambda: match s.lambda {
                    Some(Auto::Value(l)) => Some(l),
                    _ => None,
                },
                epsilon: s.epsilon.unwrap_or(0.1),
                sampling_cap,
                no_exact,
                reference_runs,
                max_retries: retries,
                record_time: time,
                ..BenchConfig::default()
            };
            bench(s, cfg, &sweep_sizes, avg_degree, &sweep_walks)
        }
        Cmd::Lowerbound { n_list, r_list, repeats } => {
            let rep = lower_bound_experiment(&n_list, &r_list, repeats, s.seed)?;
            write_records(output(&s.out)?, &rep.points)?;
            eprintln!("H exponent {:.3} (R^2 {:.4})", rep.h_fit.slope, rep.h_fit.r2);
            eprintln!("single-walk variance exponent {:.3} (R^2 {:.4})", rep.var_fit.slope, rep.var_fit.r2);
            if let Some(f) = rep.empirical_var_fit {
                eprintln!("empirical variance exponent {:.3} (R^2 {:.4})", f.slope, f.r2);
            }
            Ok(())
        }
        Cmd::ParallelBench { threads_list, repeats, u, v } => {
            let l = load(s)?;
            let (u, v) = match (u, v) {
                (Some(u), Some(v)) => (l.dense(u)?, l.dense(v)?),
                (None, None) => PairSampler::new(PairStrategy::Uniform, s.seed).sample(&l.graph, 1)?[0],
                _ => bail!(usage("give both --u and --v or neither")),
            };
            let t_max = match s.t_max {
                Some(t) => t,
                None => default_t_max(&l.graph, resolve_t_mix(&l.graph, s.t_mix)?),
            };
            let params = EstimatorParams::practical(s.walks.unwrap_or(DEFAULT_WALKS), t_max, s.seed);
            let rep = parallel_bench(&l.graph, u, v, &params, &threads_list, repeats)?;
            write_records(output(&s.out)?, &rep.rows)?;
            eprintln!("host threads available: {}", rep.available_parallelism);
            if !rep.deterministic {
                bail!(estimator_failure("estimates differ across thread counts"));
            }
            Ok(())
        }
        Cmd::MixTest { t, delta, t_hi } => {
            let l = load(s)?;
            let eps = s.epsilon.unwrap_or(0.5);
            let line = match (t, t_hi) {
                (Some(t), None) => {
                    let m = mixing_test(&l.graph, t, eps, delta, s.seed)?;
                    json!({
                        "t": t,
                        "epsilon": eps,
                        "verdict": m.verdict,
                        "comparisons": m.comparisons,
                        "sampled_starts": m.sampled_starts,
                        "samples_used": m.samples_used,
                        "rejected_by": m.rejected_by.map(|x| l.ids[x]),
                    })
                }
                (None, Some(hi)) => {
                    let m = binary_search_mixing(&l.graph, eps, delta, hi, s.seed)?;
                    json!({ "t": m.t, "found": m.found, "epsilon": eps, "probes": m.probes })
                }
                _ => bail!(usage("give exactly one of --t and --t-hi")),
            };
            writeln!(output(&s.out)?, "{line}")?;
            Ok(())
        }
    }
}

fn parse_list<T: Copy + std::str::FromStr>(raw: &[String], all: &[T]) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    if raw.is_empty() {
        return Ok(all.to_vec());
    }
    raw.iter()
        .map(|x| x.trim().parse::<T>().map_err(|e| usage(e.to_string()).into()))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn generate(
    model: Model,
    n: Option<usize>,
    p: Option<f64>,
    k: Option<usize>,
    blocks: &[usize],
    p_intra: Option<f64>,
    p_inter: Option<f64>,
    s: &Settings,
) -> Result<()> {
    let need_n = || n.ok_or_else(|| usage("--n is required"));
    let mut landmarks = None;
    let g = match model {
        Model::Er => generate_er(need_n()?, p.ok_or_else(|| usage("--p is required"))?, s.seed)?,
        Model::Ba => generate_ba(need_n()?, k.ok_or_else(|| usage("--k is required"))?, s.seed)?,
        Model::Sbm => {
            if blocks.is_empty() {
                bail!(usage("--blocks is required"));
            }
            let pi = p_intra.ok_or_else(|| usage("--p-intra is required"))?;
            let po = p_inter.ok_or_else(|| usage("--p-inter is required"))?;
            generate_sbm(blocks, pi, po, s.seed)?
        }
        Model::Barbell => {
            let (g, lm) = generate_barbell(need_n()?)?;
            landmarks = Some(json!({
                "u1": lm.u1,
                "un": lm.un,
                "clique": [lm.clique.start, lm.clique.end],
                "path": [lm.path.start, lm.path.end],
                "leaves": [lm.leaves.start, lm.leaves.end],
            }));
            g
        }
        Model::Football => football()?.0,
    };
    g.write_edge_list(output(&s.out)?)?;
    match (landmarks, &s.out) {
        (Some(lm), Some(out)) => {
            let side = out.with_extension("landmarks.json");
            std::fs::write(&side, format!("{lm}\n"))?;
        }
        (Some(lm), None) => eprintln!("landmarks {lm}"),
        _ => {}
    }
    eprintln!("n={} m={}", g.n(), g.m());
    Ok(())
}

fn exact(s: &Settings, u: u64, v: u64) -> Result<()> {
    let l = load(s)?;
    let (du, dv) = (l.dense(u)?, l.dense(v)?);
    let g = &l.graph;
    let h_uv = exact_hitting_to(g, dv, DEFAULT_TOL)?.h[du];
    let h_vu = exact_hitting_to(g, du, DEFAULT_TOL)?.h[dv];
    let r = exact_effective_resistance(g, du, dv)?;
    let line = json!({ "u": u, "v": v, "h_uv": h_uv, "h_vu": h_vu, "r_eff": r });
    writeln!(output(&s.out)?, "{line}")?;
    Ok(())
}

fn estimate(
    s: &Settings,
    u: u64,
    v: u64,
    algo: &str,
    sampling_cap: u64,
    retries: u32,
    max_walks_per_level: u64,
) -> Result<()> {
    let l = load(s)?;
    let g = &l.graph;
    let (du, dv) = (l.dense(u)?, l.dense(v)?);
    let alg: Algorithm = algo.parse().map_err(|e: hitlocal::Error| usage(e.to_string()))?;
    let epsilon = s.epsilon.unwrap_or(0.1);
    let mut attempts = 0;
    let est: HtEstimate = match alg {
        Algorithm::Meeting => {
            let mut params = EstimatorParams {
                epsilon,
                walks: Some(s.walks.unwrap_or(DEFAULT_WALKS)),
                t_max: s.t_max,
                t_mix: if s.t_max.is_none() { Some(resolve_t_mix(g, s.t_mix)?) } else { None },
                seed: s.seed,
                ..EstimatorParams::default()
            };
            loop {
                let est = meeting_time_estimate(g, du, dv, &params)?;
                if !est.failed || attempts == retries {
                    break est;
                }
                attempts += 1;
                let used = match est.diagnostics {
                    Diagnostics::Meeting { t_max, .. } => t_max,
                    _ => unreachable!("meeting estimator diagnostics"),
                };
                params.t_max = Some(used.saturating_mul(2));
            }
        }
        Algorithm::Cutoff => {
            let opts = CutoffOptions {
                walks_per_level: s.walks.map(|w| w as u64),
                max_walks_per_level: Some(max_walks_per_level),
                seed: s.seed,
                ..CutoffOptions::default()
            };
            cutoff_estimate(g, du, dv, resolve_lambda(g, s.lambda)?, epsilon, &opts)?
        }
        Algorithm::Sampling => {
            let r = s.walks.unwrap_or(DEFAULT_WALKS) as u64;
            if r == 1 {
                eprintln!("warning: a single walk gives an unbiased but very high-variance estimate");
            }
            walk_sampling_estimate(g, du, dv, r, sampling_cap, s.seed)?
        }
    };
    let line = json!({
        "algorithm": alg,
        "u": u,
        "v": v,
        "value": est.value,
        "failed": est.failed,
        "retries": attempts,
        "walks_used": est.walks_used,
        "total_steps": est.total_steps,
        "wall_time_s": est.wall_time.as_secs_f64(),
        "diagnostics": format!("{:?}", est.diagnostics),
    });
    writeln!(output(&s.out)?, "{line}")?;
    if est.failed {
        bail!(estimator_failure(format!("{alg} estimator failed after {attempts} retries")));
    }
    Ok(())
}

fn bench(s: &Settings, cfg: BenchConfig, sizes: &[usize], avg_degree: f64, walks: &[usize]) -> Result<()> {
    let out: BenchOutput = if !sizes.is_empty() {
        size_sweep(sizes, avg_degree, &cfg)?
    } else {
        let l = load(s)?;
        let cfg = BenchConfig { graph_id: l.name.clone(), ..cfg };
        let mut out = if walks.is_empty() {
            run_bench(&l.graph, &cfg)?
        } else {
            walk_sweep(&l.graph, walks, &cfg)?
        };
        for r in &mut out.records {
            r.u = l.ids[r.u] as usize;
            r.v = l.ids[r.v] as usize;
        }
        out
    };
    validate_summary(&out.records, &out.summary)?;
    write_records(output(&s.out)?, &out.records)?;
    match &s.out {
        Some(p) => {
            let stem = p.file_stem().map_or("bench".into(), |x| x.to_string_lossy().into_owned());
            let path = p.with_file_name(format!("{stem}_summary.csv"));
            write_records(output(&Some(path))?, &out.summary)?;
        }
        None => write_records(std::io::stderr().lock(), &out.summary)?,
    }
    if out.any_failed {
        let n = out.records.iter().filter(|r| r.failed).count();
        bail!(estimator_failure(format!("{n} estimator runs failed after retries")));
    }
    Ok(())
}
