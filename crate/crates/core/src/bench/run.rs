//! The estimator-versus-oracle benchmark.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::{summarize, BenchRecord, Reference, SummaryRow};
use crate::error::{Error, Result};
use crate::estimators::{
    cutoff_estimate, meeting_time_estimate, walk_sampling_estimate, Algorithm, CutoffOptions,
    EstimatorParams, HtEstimate,
};
use crate::exact::{exact_hitting_to, spectral_info, DEFAULT_TOL, SPECTRAL_CAP};
use crate::generate::generate_er;
use crate::graph::Graph;
use crate::pairs::{PairSampler, PairStrategy};
use crate::rng::derive_seed;

/// Largest graph for which the bench solves for exact hitting times.
pub const EXACT_MAX_NODES: usize = 5000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchConfig {
    pub graph_id: String,
    pub pairs: usize,
    pub samplers: Vec<PairStrategy>,
    pub algorithms: Vec<Algorithm>,
    pub repeats: usize,
    pub seed: u64,
    /// Walk pairs for the meeting estimator, walks per level for the cutoff
    /// estimator, samples for walk sampling.
    pub walks: usize,
    /// Meeting-time step cap; derived from `t_mix` when absent.
    pub t_max: Option<usize>,
    pub t_mix: Option<usize>,
    /// Spectral parameter for the cutoff estimator; computed when absent.
    pub lambda: Option<f64>,
    /// Accuracy fed to the cutoff level count.
    pub epsilon: f64,
    pub sampling_cap: u64,
    /// Use the mean of `reference_runs` meeting-time runs as the reference.
    pub no_exact: bool,
    pub reference_runs: usize,
    /// Doublings of `t_max` tried after a meeting-time failure.
    pub max_retries: u32,
    pub record_time: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            graph_id: "graph".into(),
            pairs: 50,
            samplers: PairStrategy::ALL.to_vec(),
            algorithms: Algorithm::ALL.to_vec(),
            repeats: 1,
            seed: 0,
            walks: 10_000,
            t_max: None,
            t_mix: None,
            lambda: None,
            epsilon: 0.1,
            sampling_cap: 1_000_000,
            no_exact: false,
            reference_runs: 100,
            max_retries: 3,
            record_time: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutput {
    pub records: Vec<BenchRecord>,
    pub summary: Vec<SummaryRow>,
    /// Any estimator run that still failed after all retries.
    pub any_failed: bool,
}

/// Parameters resolved once per graph.
struct Resolved {
    t_max: usize,
    lambda: Option<f64>,
}

fn resolve(g: &Graph, cfg: &BenchConfig) -> Result<Resolved> {
    let wants_cutoff = cfg.algorithms.contains(&Algorithm::Cutoff);
    let needs_spectrum = (cfg.t_max.is_none() && cfg.t_mix.is_none())
        || (wants_cutoff && cfg.lambda.is_none());
    let spec = if needs_spectrum {
        if g.n() > SPECTRAL_CAP {
            return Err(Error::TooLarge {
                what: "automatic t_mix / lambda",
                n: g.n(),
                cap: SPECTRAL_CAP,
            });
        }
        Some(spectral_info(g, 1e-9)?)
    } else {
        None
    };
    let t_mix = cfg.t_mix.or(spec.as_ref().and_then(|s| s.t_mix));
    let t_max = match (cfg.t_max, t_mix) {
        (Some(t), _) => t,
        (None, Some(tm)) => default_t_max(g, tm),
        (None, None) => return Err(Error::Periodic),
    };
    let lambda = cfg.lambda.or(spec.map(|s| s.lambda));
    Ok(Resolved { t_max, lambda })
}

/// Practical step cap: `100 t_mix / ||pi||^2`, the theoretical cap without
/// its logarithmic factor. The estimator stops early once all walkers have
/// met, so a generous cap costs little.
pub fn default_t_max(g: &Graph, t_mix: usize) -> usize {
    let two_m = 2.0 * g.m() as f64;
    let norm_sq: f64 = (0..g.n()).map(|v| (g.degree(v) as f64 / two_m).powi(2)).sum();
    (100.0 * t_mix as f64 / norm_sq).ceil() as usize
}

fn run_one(
    g: &Graph,
    cfg: &BenchConfig,
    res: &Resolved,
    alg: Algorithm,
    u: usize,
    v: usize,
    seed: u64,
) -> Result<(HtEstimate, u32)> {
    match alg {
        Algorithm::Meeting => {
            let mut t_max = res.t_max;
            let mut retries = 0;
            loop {
                let params = EstimatorParams::practical(cfg.walks, t_max, seed);
                let est = meeting_time_estimate(g, u, v, &params)?;
                if !est.failed || retries == cfg.max_retries {
                    return Ok((est, retries));
                }
                retries += 1;
                t_max = t_max.saturating_mul(2);
            }
        }
        Algorithm::Cutoff => {
            let lambda = res.lambda.ok_or(Error::Periodic)?;
            let opts = CutoffOptions {
                walks_per_level: Some(cfg.walks as u64),
                seed,
                ..CutoffOptions::default()
            };
            Ok((cutoff_estimate(g, u, v, lambda, cfg.epsilon, &opts)?, 0))
        }
        Algorithm::Sampling => Ok((
            walk_sampling_estimate(g, u, v, cfg.walks as u64, cfg.sampling_cap, seed)?,
            0,
        )),
    }
}

/// Samples `cfg.pairs` pairs per strategy and runs every algorithm
/// `cfg.repeats` times on each, scoring against exact hitting times (or,
/// with `no_exact`, the mean of repeated meeting-time runs).
///
/// Rows come out in a fixed order (strategy, pair, algorithm, repeat) and
/// every run has its own derived seed, so the output depends only on the
/// configuration.
pub fn run_bench(g: &Graph, cfg: &BenchConfig) -> Result<BenchOutput> {
    g.require_connected()?;
    if cfg.pairs == 0 || cfg.repeats == 0 || cfg.walks == 0 {
        return Err(Error::InvalidParameter("pairs, repeats and walks must be positive".into()));
    }
    if !cfg.no_exact && g.n() > EXACT_MAX_NODES {
        return Err(Error::TooLarge {
            what: "exact hitting-time reference",
            n: g.n(),
            cap: EXACT_MAX_NODES,
        });
    }
    let res = resolve(g, cfg)?;

    let mut pairs: Vec<(PairStrategy, usize, usize)> = Vec::new();
    for (si, &s) in cfg.samplers.iter().enumerate() {
        let sampled = PairSampler::new(s, derive_seed(cfg.seed, si as u64)).sample(g, cfg.pairs)?;
        pairs.extend(sampled.into_iter().map(|(u, v)| (s, u, v)));
    }

    let reference: HashMap<(usize, usize), f64> = if cfg.no_exact {
        let distinct: BTreeSet<(usize, usize)> = pairs.iter().map(|p| (p.1, p.2)).collect();
        distinct
            .into_par_iter()
            .map(|(u, v)| -> Result<((usize, usize), f64)> {
                let mut sum = 0.0;
                let mut ok = 0usize;
                for k in 0..cfg.reference_runs {
                    let seed = derive_seed(derive_seed(cfg.seed ^ 0x7265_6600, (u as u64) << 32 | v as u64), k as u64);
                    let (est, _) = run_one(g, cfg, &res, Algorithm::Meeting, u, v, seed)?;
                    if let Some(x) = est.value {
                        sum += x;
                        ok += 1;
                    }
                }
                if ok == 0 {
                    return Err(Error::NoConvergence {
                        what: "meeting-time reference",
                        iterations: cfg.reference_runs,
                        residual: f64::NAN,
                    });
                }
                Ok(((u, v), sum / ok as f64))
            })
            .collect::<Result<_>>()?
    } else {
        let targets: BTreeSet<usize> = pairs.iter().map(|p| p.2).collect();
        let solved: HashMap<usize, Vec<f64>> = targets
            .into_par_iter()
            .map(|t| Ok((t, exact_hitting_to(g, t, DEFAULT_TOL)?.h)))
            .collect::<Result<_>>()?;
        pairs.iter().map(|p| ((p.1, p.2), solved[&p.2][p.1])).collect()
    };
    let ref_kind = if cfg.no_exact { Reference::MeetingMean } else { Reference::Exact };

    let mut tasks = Vec::new();
    for (si, &(s, u, v)) in pairs.iter().enumerate() {
        for &alg in &cfg.algorithms {
            for rep in 0..cfg.repeats {
                tasks.push((si, s, u, v, alg, rep));
            }
        }
    }
    let records: Vec<BenchRecord> = tasks
        .into_par_iter()
        .map(|(si, s, u, v, alg, rep)| -> Result<BenchRecord> {
            let key = ((si as u64) << 40) ^ ((alg as u64) << 32) ^ rep as u64;
            let seed = derive_seed(cfg.seed, key);
            let (est, retries) = run_one(g, cfg, &res, alg, u, v, seed)?;
            Ok(BenchRecord {
                graph: cfg.graph_id.clone(),
                n: g.n(),
                m: g.m(),
                u,
                v,
                sampler: s.to_string(),
                algorithm: alg,
                repeat: rep,
                walks: cfg.walks as u64,
                estimate: est.value,
                exact: Some(reference[&(u, v)]),
                reference: ref_kind,
                rel_error: None,
                abs_error: None,
                steps: est.total_steps,
                wall_time: cfg.record_time.then_some(est.wall_time.as_secs_f64()),
                seed,
                failed: est.failed,
                retries,
            }
            .with_errors())
        })
        .collect::<Result<_>>()?;
    let any_failed = records.iter().any(|r| r.failed);
    let summary = summarize(&records);
    Ok(BenchOutput {
        records,
        summary,
        any_failed,
    })
}

/// Runs [`run_bench`] on Erdos-Renyi graphs of each size with expected
/// degree `avg_degree`, keeping the largest component. Graph ids are
/// `er-n<size>`.
pub fn size_sweep(sizes: &[usize], avg_degree: f64, cfg: &BenchConfig) -> Result<BenchOutput> {
    let mut records = Vec::new();
    for (k, &n) in sizes.iter().enumerate() {
        let p = (avg_degree / (n as f64 - 1.0)).min(1.0);
        let (g, _) = generate_er(n, p, derive_seed(cfg.seed, k as u64))?.largest_component();
        let sub = BenchConfig {
            graph_id: format!("er-n{n}"),
            ..cfg.clone()
        };
        records.extend(run_bench(&g, &sub)?.records);
    }
    Ok(finish(records))
}

/// Runs [`run_bench`] once per walk count. Graph ids get a `-w<walks>`
/// suffix so the summary has one cell per walk count.
pub fn walk_sweep(g: &Graph, walk_counts: &[usize], cfg: &BenchConfig) -> Result<BenchOutput> {
    let mut records = Vec::new();
    for &w in walk_counts {
        let sub = BenchConfig {
            graph_id: format!("{}-w{w}", cfg.graph_id),
            walks: w,
            ..cfg.clone()
        };
        records.extend(run_bench(g, &sub)?.records);
    }
    Ok(finish(records))
}

fn finish(records: Vec<BenchRecord>) -> BenchOutput {
    let any_failed = records.iter().any(|r| r.failed);
    let summary = summarize(&records);
    BenchOutput {
        records,
        summary,
        any_failed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::record::{validate_summary, write_records};
    use crate::graph::fixtures::*;

    fn small_cfg() -> BenchConfig {
        BenchConfig {
            pairs: 3,
            walks: 2000,
            t_max: Some(5000),
            seed: 11,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn table_shape_and_validation() {
        let g = triangle_with_pendant();
        let out = run_bench(&g, &small_cfg()).unwrap();
        assert_eq!(out.records.len(), 5 * 3 * 3);
        assert_eq!(out.summary.len(), 15);
        validate_summary(&out.records, &out.summary).unwrap();
        assert!(out.records.iter().all(|r| r.reference == Reference::Exact && r.u != r.v));
        let meeting: Vec<f64> = out
            .records
            .iter()
            .filter(|r| r.algorithm == Algorithm::Meeting)
            .map(|r| r.rel_error.unwrap())
            .collect();
        assert!(crate::stats::mean(&meeting) < 0.1);
    }

    #[test]
    fn output_is_byte_identical_for_a_seed() {
        let g = complete(5);
        let csv = |cfg: &BenchConfig| {
            let mut buf = Vec::new();
            write_records(&mut buf, &run_bench(&g, cfg).unwrap().records).unwrap();
            buf
        };
        let cfg = small_cfg();
        assert_eq!(csv(&cfg), csv(&cfg));
        let other = BenchConfig { seed: 12, ..small_cfg() };
        assert_ne!(csv(&cfg), csv(&other));
    }

    #[test]
    fn no_exact_uses_meeting_mean() {
        let cfg = BenchConfig {
            no_exact: true,
            reference_runs: 5,
            samplers: vec![PairStrategy::Uniform],
            algorithms: vec![Algorithm::Sampling],
            ..small_cfg()
        };
        let out = run_bench(&complete(4), &cfg).unwrap();
        for r in &out.records {
            assert_eq!(r.reference, Reference::MeetingMean);
            assert!((r.exact.unwrap() - 3.0).abs() < 0.3);
        }
    }

    #[test]
    fn retries_double_the_cap() {
        let cfg = BenchConfig {
            t_max: Some(1),
            max_retries: 20,
            samplers: vec![PairStrategy::Uniform],
            algorithms: vec![Algorithm::Meeting],
            lambda: Some(0.5),
            ..small_cfg()
        };
        let out = run_bench(&complete(4), &cfg).unwrap();
        assert!(!out.any_failed);
        assert!(out.records.iter().any(|r| r.retries > 0));
    }

    #[test]
    fn periodic_graph_needs_manual_parameters() {
        assert!(matches!(run_bench(&cycle(6), &BenchConfig::default()), Err(Error::Periodic)));
    }

    #[test]
    fn sweeps_label_cells() {
        let cfg = BenchConfig {
            samplers: vec![PairStrategy::Uniform],
            algorithms: vec![Algorithm::Sampling],
            pairs: 2,
            walks: 100,
            lambda: Some(0.5),
            ..small_cfg()
        };
        let out = walk_sweep(&complete(4), &[10, 100], &cfg).unwrap();
        let ids: Vec<&str> = out.summary.iter().map(|s| s.graph.as_str()).collect();
        assert_eq!(ids, vec!["graph-w10", "graph-w100"]);
        let out = size_sweep(&[30, 40], 8.0, &cfg).unwrap();
        assert_eq!(out.summary.len(), 2);
    }
}
