//! Seeded synthetic datasets: uniform random, embedded runs, k-nearly sorted
//! and sorted-prefix.
//!
//! Randomness comes from ChaCha8 seeded with the spec's 64-bit seed. Each
//! purpose draws from its own ChaCha stream, so changing how one family
//! shuffles never perturbs the key values of another. Uniform keys take the
//! top 53 bits of one 64-bit output, scaled to `[0, 1)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instrument::{records_from_keys, Record};

const STREAM_VALUES: u64 = 1;
const STREAM_SHUFFLE: u64 = 2;
const STREAM_LAYOUT: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Ascending,
    Descending,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Ascending => "ascending",
            Direction::Descending => "descending",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascending" | "asc" => Ok(Direction::Ascending),
            "descending" | "desc" => Ok(Direction::Descending),
            other => Err(Error::Generator(format!("unknown direction `{other}`"))),
        }
    }
}

/// Where keys are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KeyDomain {
    /// Uniform doubles on `[0, 1)`.
    #[default]
    Uniform,
    /// `floor(u * m)` for uniform `u`: integers `0..m` stored as doubles,
    /// giving many equal keys for stability stress tests.
    SmallInts(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    /// `run_percent`% of the elements sit in sorted blocks of `run_len`.
    Runs {
        run_len: usize,
        run_percent: u32,
        direction: Direction,
    },
    /// Every element at most `k` places from its sorted position.
    KNearly {
        k: usize,
    },
    /// The first `percent`% of the elements are in ascending order.
    PrefixSorted {
        percent: u32,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Runs { .. } => "runs",
            Family::KNearly { .. } => "k_nearly",
            Family::PrefixSorted { .. } => "prefix_sorted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub keys: KeyDomain,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self { family, n, seed, keys: KeyDomain::Uniform }
    }

    pub fn with_keys(self, keys: KeyDomain) -> Self {
        Self { keys, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Generator(msg));
        if let KeyDomain::SmallInts(0) = self.keys {
            return bad("integer key domain must be nonempty".into());
        }
        match self.family {
            Family::Random => Ok(()),
            Family::Runs { run_len, run_percent, .. } => {
                if run_percent > 100 {
                    bad(format!("run_percent {run_percent} exceeds 100"))
                } else if run_len < 1 || run_len > self.n {
                    bad(format!("run length R={run_len} must satisfy 1 <= R <= n={}", self.n))
                } else {
                    Ok(())
                }
            }
            Family::KNearly { k } => {
                if k >= self.n {
                    bad(format!("k={k} must be below n={}", self.n))
                } else {
                    Ok(())
                }
            }
            Family::PrefixSorted { percent } => {
                if percent > 100 {
                    bad(format!("pre-sorted percent {percent} exceeds 100"))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Keys only, in dataset order.
    pub fn generate_keys(&self) -> Result<Vec<f64>> {
        self.validate()?;
        Ok(match self.family {
            Family::Random => self.values(self.n),
            Family::Runs { run_len, run_percent, direction } => self.runs(run_len, run_percent, direction),
            Family::KNearly { k } => self.k_nearly(k),
            Family::PrefixSorted { percent } => self.prefix_sorted(percent),
        })
    }

    /// Keys tagged with positions `0..n`.
    pub fn generate(&self) -> Result<Vec<Record<f64>>> {
        Ok(records_from_keys(self.generate_keys()?))
    }

    /// `PSRT v1 <family> n=<n> seed=<seed> ...` (the text dataset header).
    pub fn header_line(&self) -> String {
        let mut line = format!("PSRT v1 {} n={} seed={}", self.family.name(), self.n, self.seed);
        match self.family {
            Family::Random => {}
            Family::Runs { run_len, run_percent, direction } => {
                line.push_str(&format!(" R={run_len} run_percent={run_percent} direction={direction}"));
            }
            Family::KNearly { k } => line.push_str(&format!(" k={k}")),
            Family::PrefixSorted { percent } => line.push_str(&format!(" pp={percent}")),
        }
        if let KeyDomain::SmallInts(m) = self.keys {
            line.push_str(&format!(" keys=int:{m}"));
        }
        line
    }

    /// Number of sorted blocks a runs dataset contains.
    pub fn run_blocks(n: usize, run_len: usize, run_percent: u32) -> usize {
        let want = (run_percent as usize * n).div_ceil(100 * run_len);
        want.min(n / run_len)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn values(&self, count: usize) -> Vec<f64> {
        let mut rng = self.rng(STREAM_VALUES);
        match self.keys {
            KeyDomain::Uniform => (0..count).map(|_| unit_f64(&mut rng)).collect(),
            KeyDomain::SmallInts(m) => (0..count).map(|_| rng.random_range(0..m) as f64).collect(),
        }
    }

    fn runs(&self, run_len: usize, run_percent: u32, direction: Direction) -> Vec<f64> {
        let n = self.n;
        let blocks = Self::run_blocks(n, run_len, run_percent);
        let filler = n - blocks * run_len;
        // `true` marks a whole block, `false` one filler element.
        let mut units: Vec<bool> =
            std::iter::repeat_n(true, blocks).chain(std::iter::repeat_n(false, filler)).collect();
        units.shuffle(&mut self.rng(STREAM_LAYOUT));

        let mut keys = self.values(n);
        let mut at = 0;
        for block in units {
            if block {
                let seg = &mut keys[at..at + run_len];
                seg.sort_unstable_by(f64::total_cmp);
                if direction == Direction::Descending {
                    seg.reverse();
                }
                at += run_len;
            } else {
                at += 1;
            }
        }
        keys
    }

    fn k_nearly(&self, k: usize) -> Vec<f64> {
        let mut keys = self.values(self.n);
        keys.sort_unstable_by(f64::total_cmp);
        let mut rng = self.rng(STREAM_SHUFFLE);
        for window in keys.chunks_mut(k + 1) {
            window.shuffle(&mut rng);
        }
        keys
    }

    fn prefix_sorted(&self, percent: u32) -> Vec<f64> {
        let mut keys = self.values(self.n);
        let sorted = (percent as usize * self.n).div_ceil(100);
        keys[..sorted].sort_unstable_by(f64::total_cmp);
        keys
    }
}

fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn gen_random(n: usize, seed: u64) -> Vec<Record<f64>> {
    GeneratorSpec::new(Family::Random, n, seed).generate().expect("random spec is always valid")
}

pub fn gen_runs(
    n: usize,
    run_len: usize,
    run_percent: u32,
    direction: Direction,
    seed: u64,
) -> Result<Vec<Record<f64>>> {
    GeneratorSpec::new(Family::Runs { run_len, run_percent, direction }, n, seed).generate()
}

pub fn gen_k_nearly(n: usize, k: usize, seed: u64) -> Result<Vec<Record<f64>>> {
    GeneratorSpec::new(Family::KNearly { k }, n, seed).generate()
}

pub fn gen_prefix_sorted(n: usize, percent: u32, seed: u64) -> Result<Vec<Record<f64>>> {
    GeneratorSpec::new(Family::PrefixSorted { percent }, n, seed).generate()
}
