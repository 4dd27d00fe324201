use std::time::Instant;

use persiansort::{
    counting_comparator, verify_stable_sort, wp_for_k_nearly, Algorithm, AlgorithmKind, FailReason, Family,
    GeneratorSpec, PersiansortParams, Record, SortStats, Verdict,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ConfigError, Experiment, ExperimentConfig, GridPoint, Metric, WpPolicy};
use crate::trials::{adaptive_trials, TrialSummary};

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub experiment: Experiment,
    pub algorithm: AlgorithmKind,
    pub n: usize,
    pub param: String,
    pub metric: Metric,
    pub mean: f64,
    pub trials: u64,
    pub rel_err: f64,
    /// `mean` over the M2 mean at the same grid point, when M2 was run.
    pub ratio_vs_m2: Option<f64>,
    /// Hit `max_trials` before reaching `rel_tol`.
    pub flagged: bool,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment: {0}")]
    Config(#[from] ConfigError),

    #[error("{algorithm} failed verification ({reason} at {witness:?}) on {param}, n={n}, seed={seed}")]
    Verification { algorithm: String, param: String, n: usize, seed: u64, reason: FailReason, witness: (usize, usize) },

    #[error(transparent)]
    Core(#[from] persiansort::Error),
}

/// Worker cap from `PSRT_THREADS`, else the machine's parallelism.
pub fn worker_threads() -> usize {
    std::env::var("PSRT_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs every grid point and algorithm of `config` and returns the rows in
/// grid order, algorithms in [`AlgorithmKind::ALL`] order.
///
/// Trial `t` of every cell sorts the dataset generated with seed
/// `base_seed ^ t`, so all algorithms at a grid point see the same inputs.
/// Count metrics run cells in parallel; wall time runs on one thread.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ReportRow>, HarnessError> {
    config.validate()?;
    let points = config.grid_points();
    let algorithms: Vec<AlgorithmKind> =
        AlgorithmKind::ALL.into_iter().filter(|k| config.algorithms.contains(k)).collect();
    let cells: Vec<(GridPoint, AlgorithmKind)> =
        points.iter().flat_map(|&p| algorithms.iter().map(move |&k| (p, k))).collect();

    let threads = config.threads.unwrap_or_else(worker_threads).max(1);
    let summaries: Vec<Result<TrialSummary, HarnessError>> = if config.metric.is_count() && threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| cells.par_iter().map(|&(p, k)| measure_cell(config, p, k)).collect())
    } else {
        cells.iter().map(|&(p, k)| measure_cell(config, p, k)).collect()
    };

    let mut rows = Vec::with_capacity(cells.len());
    for (&(point, algorithm), summary) in cells.iter().zip(summaries) {
        let s = summary?;
        rows.push(ReportRow {
            experiment: config.experiment,
            algorithm,
            n: point.n,
            param: point.param(),
            metric: config.metric,
            mean: s.mean,
            trials: s.trials,
            rel_err: s.rel_err,
            ratio_vs_m2: None,
            flagged: s.capped,
        });
    }
    for chunk in rows.chunks_mut(algorithms.len()) {
        let base = chunk.iter().find(|r| r.algorithm == AlgorithmKind::M2).map(|r| r.mean);
        if let Some(base) = base.filter(|&b| b != 0.0) {
            for row in chunk {
                row.ratio_vs_m2 = Some(row.mean / base);
            }
        }
    }
    Ok(rows)
}

fn algorithm_for(config: &ExperimentConfig, point: GridPoint, kind: AlgorithmKind) -> Result<Algorithm, HarnessError> {
    let wp = match (config.wp, point.family) {
        (WpPolicy::KFormula, Family::KNearly { k }) => wp_for_k_nearly(point.n, k)?,
        (WpPolicy::Fixed(wp), _) => wp,
        (WpPolicy::KFormula, _) => unreachable!("validated"),
    };
    Ok(Algorithm::from_kind(kind, PersiansortParams::new(wp)?))
}

fn measure_cell(
    config: &ExperimentConfig,
    point: GridPoint,
    kind: AlgorithmKind,
) -> Result<TrialSummary, HarnessError> {
    let algorithm = algorithm_for(config, point, kind)?;
    adaptive_trials(
        |trial| {
            let seed = config.base_seed ^ trial;
            let input = GeneratorSpec::new(point.family, point.n, seed).generate()?;
            let (value, output) = measure_once(&algorithm, &input, config.metric);
            match verify_stable_sort(&input, &output, |a: &f64, b: &f64| a < b) {
                Verdict::Ok => Ok(value),
                Verdict::Fail { reason, witness } => Err(HarnessError::Verification {
                    algorithm: algorithm.to_string(),
                    param: point.param(),
                    n: point.n,
                    seed,
                    reason,
                    witness,
                }),
            }
        },
        config.rel_tol,
        config.max_trials,
    )
}

fn measure_once(algorithm: &Algorithm, input: &[Record<f64>], metric: Metric) -> (f64, Vec<Record<f64>>) {
    let mut data = input.to_vec();
    if metric == Metric::WallTime {
        let start = Instant::now();
        algorithm.sort_by(&mut data, Record::key_less, &());
        return (start.elapsed().as_secs_f64(), data);
    }
    let stats = SortStats::new();
    algorithm.sort_by(&mut data, counting_comparator(Record::key_less, &stats), &stats);
    let value = match metric {
        Metric::Comparisons => stats.comparisons(),
        Metric::Moves => stats.moves(),
        _ => stats.comparisons() + stats.moves(),
    };
    (value as f64, data)
}
