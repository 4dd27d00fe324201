use std::fmt;
use std::str::FromStr;

use persiansort::{AlgorithmKind, Direction, Family, DEFAULT_WP};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    RandomSweep,
    RunsSweep,
    KNearlySweep,
    PrefixSweep,
}

impl Experiment {
    pub const ALL: [Experiment; 4] =
        [Experiment::RandomSweep, Experiment::RunsSweep, Experiment::KNearlySweep, Experiment::PrefixSweep];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::RandomSweep => "random_sweep",
            Experiment::RunsSweep => "runs_sweep",
            Experiment::KNearlySweep => "k_nearly_sweep",
            Experiment::PrefixSweep => "prefix_sweep",
        }
    }

    /// Name of the swept parameter, used as the markdown row header.
    pub fn param_name(self) -> &'static str {
        match self {
            Experiment::RandomSweep => "param",
            Experiment::RunsSweep => "R",
            Experiment::KNearlySweep => "k",
            Experiment::PrefixSweep => "pp",
        }
    }

    /// Default parameter grid.
    pub fn default_grid(self) -> Vec<u64> {
        match self {
            Experiment::RandomSweep => Vec::new(),
            Experiment::RunsSweep => vec![30, 50, 100, 200, 500, 1000, 2000, 5000, 10_000],
            Experiment::KNearlySweep => vec![2, 5, 10, 20, 35, 50, 75, 100, 200],
            Experiment::PrefixSweep => vec![65, 70, 75, 80, 85, 90, 93, 96, 99],
        }
    }

    pub fn default_algorithms(self) -> Vec<AlgorithmKind> {
        let mut algos = vec![AlgorithmKind::M1, AlgorithmKind::M2, AlgorithmKind::Timsort];
        if self == Experiment::KNearlySweep {
            algos.push(AlgorithmKind::Insertion);
        }
        algos.push(AlgorithmKind::Persiansort);
        algos
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s || e.name().trim_end_matches("_sweep") == s)
            .ok_or_else(|| ConfigError(format!("unknown experiment `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Seconds per sort.
    WallTime,
    Comparisons,
    /// Element writes to data or buffer.
    Moves,
    /// Comparisons plus moves.
    Operations,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::WallTime => "wall_time",
            Metric::Comparisons => "comparisons",
            Metric::Moves => "moves",
            Metric::Operations => "operations",
        }
    }

    pub fn is_count(self) -> bool {
        self != Metric::WallTime
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wall_time" | "time" => Ok(Metric::WallTime),
            "comparisons" => Ok(Metric::Comparisons),
            "moves" => Ok(Metric::Moves),
            "operations" => Ok(Metric::Operations),
            _ => bad(format!("unknown metric `{s}`")),
        }
    }
}

/// How persiansort's warp factor is chosen at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpPolicy {
    Fixed(usize),
    /// `wp_for_k_nearly(n, k)`; only meaningful for the k-nearly sweep.
    KFormula,
}

impl FromStr for WpPolicy {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "k" {
            return Ok(WpPolicy::KFormula);
        }
        s.parse().map(WpPolicy::Fixed).map_err(|_| ConfigError(format!("--wp takes an integer or `k`, got `{s}`")))
    }
}

/// Preset problem sizes: `Full` goes up to 10^6,
/// `Desk` caps every size at 10^5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Desk,
    Full,
}

impl Scale {
    pub fn max_n(self) -> usize {
        match self {
            Scale::Desk => 100_000,
            Scale::Full => 1_000_000,
        }
    }

    pub fn default_sizes(self, experiment: Experiment) -> Vec<usize> {
        match experiment {
            Experiment::RandomSweep => {
                [1_000, 2_000, 5_000, 10_000, 20_000, 50_000, 100_000, 200_000, 500_000, 1_000_000]
                    .into_iter()
                    .filter(|&n| n <= self.max_n())
                    .collect()
            }
            _ => vec![self.max_n()],
        }
    }
}

impl FromStr for Scale {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "desk" => Ok(Scale::Desk),
            "full" => Ok(Scale::Full),
            _ => bad(format!("unknown scale `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub algorithms: Vec<AlgorithmKind>,
    pub sizes: Vec<usize>,
    /// R, k or pp values; ignored by the random sweep.
    pub grid: Vec<u64>,
    /// Run directions for the runs sweep.
    pub directions: Vec<Direction>,
    /// Share of a runs dataset covered by sorted blocks.
    pub run_percent: u32,
    pub wp: WpPolicy,
    pub metric: Metric,
    pub rel_tol: f64,
    pub max_trials: u64,
    pub base_seed: u64,
    /// Allows insertion sort outside the k-nearly sweep.
    pub force_insertion: bool,
    /// Worker cap; `None` defers to [`worker_threads`](crate::worker_threads).
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, scale: Scale) -> Self {
        Self {
            experiment,
            algorithms: experiment.default_algorithms(),
            sizes: scale.default_sizes(experiment),
            grid: experiment.default_grid(),
            directions: vec![Direction::Ascending, Direction::Descending],
            run_percent: 60,
            wp: if experiment == Experiment::KNearlySweep { WpPolicy::KFormula } else { WpPolicy::Fixed(DEFAULT_WP) },
            metric: Metric::Comparisons,
            rel_tol: 0.001,
            max_trials: 1000,
            base_seed: 0,
            force_insertion: false,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return bad(format!("rel_tol must be positive, got {}", self.rel_tol));
        }
        if self.max_trials == 0 {
            return bad("max_trials must be at least 1");
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms selected");
        }
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return bad("sizes must be a nonempty list of positive values");
        }
        if self.experiment != Experiment::RandomSweep && self.grid.is_empty() {
            return bad(format!("{} needs a nonempty grid", self.experiment));
        }
        if self.experiment == Experiment::RunsSweep && self.directions.is_empty() {
            return bad("runs_sweep needs at least one direction");
        }
        if self.algorithms.contains(&AlgorithmKind::Insertion)
            && self.experiment != Experiment::KNearlySweep
            && !self.force_insertion
        {
            return bad(format!(
                "insertion sort is only run in k_nearly_sweep unless forced (got {})",
                self.experiment
            ));
        }
        match self.wp {
            WpPolicy::Fixed(wp) if wp < 4 => return bad(format!("warp factor must be at least 4, got {wp}")),
            WpPolicy::KFormula if self.experiment != Experiment::KNearlySweep => {
                return bad("--wp k only applies to k_nearly_sweep")
            }
            _ => {}
        }
        for point in self.grid_points() {
            point.spec_check()?;
        }
        Ok(())
    }

    /// Grid points in report order: sizes outermost, then directions, then
    /// the parameter grid.
    pub fn grid_points(&self) -> Vec<GridPoint> {
        let mut points = Vec::new();
        for &n in &self.sizes {
            match self.experiment {
                Experiment::RandomSweep => points.push(GridPoint { n, family: Family::Random }),
                Experiment::RunsSweep => {
                    for &direction in &self.directions {
                        for &r in &self.grid {
                            let family = Family::Runs { run_len: r as usize, run_percent: self.run_percent, direction };
                            points.push(GridPoint { n, family });
                        }
                    }
                }
                Experiment::KNearlySweep => {
                    for &k in &self.grid {
                        points.push(GridPoint { n, family: Family::KNearly { k: k as usize } });
                    }
                }
                Experiment::PrefixSweep => {
                    for &pp in &self.grid {
                        let percent = u32::try_from(pp).unwrap_or(u32::MAX);
                        points.push(GridPoint { n, family: Family::PrefixSorted { percent } });
                    }
                }
            }
        }
        points
    }
}

/// One dataset shape in a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub n: usize,
    pub family: Family,
}

impl GridPoint {
    /// The `param` report column: `R=30/ascending`, `k=200`, `pp=99` or `none`.
    pub fn param(&self) -> String {
        match self.family {
            Family::Random => "none".into(),
            Family::Runs { run_len, direction, .. } => format!("R={run_len}/{direction}"),
            Family::KNearly { k } => format!("k={k}"),
            Family::PrefixSorted { percent } => format!("pp={percent}"),
        }
    }

    fn spec_check(&self) -> Result<(), ConfigError> {
        persiansort::GeneratorSpec::new(self.family, self.n, 0)
            .validate()
            .map_err(|e| ConfigError(format!("{} at n={}: {e}", self.param(), self.n)))?;
        if let Family::KNearly { k } = self.family {
            persiansort::wp_for_k_nearly(self.n, k).map_err(|e| ConfigError(e.to_string()))?;
        }
        Ok(())
    }
}
