//! Shared inputs for the criterion benchmarks.

use persiansort::{Algorithm, AlgorithmKind, Direction, Family, GeneratorSpec, PersiansortParams, Record};

pub const SEED: u64 = 0x5EED;

/// Named dataset shapes at size `n`, one per generator family.
pub fn shapes(n: usize) -> Vec<(&'static str, Family)> {
    vec![
        ("random", Family::Random),
        ("runs_asc_100", Family::Runs { run_len: 100.min(n), run_percent: 60, direction: Direction::Ascending }),
        ("runs_desc_100", Family::Runs { run_len: 100.min(n), run_percent: 60, direction: Direction::Descending }),
        ("k_nearly_100", Family::KNearly { k: 100.min(n - 1) }),
        ("prefix_90", Family::PrefixSorted { percent: 90 }),
    ]
}

pub fn dataset(family: Family, n: usize) -> Vec<Record<f64>> {
    GeneratorSpec::new(family, n, SEED).generate().expect("valid bench spec")
}

/// The four sorts compared on every shape; insertion sort is quadratic and
/// only benchmarked separately.
pub fn contenders() -> Vec<Algorithm> {
    [AlgorithmKind::M1, AlgorithmKind::M2, AlgorithmKind::Timsort, AlgorithmKind::Persiansort]
        .into_iter()
        .map(|k| Algorithm::from_kind(k, PersiansortParams::default()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_generate() {
        for n in [2, 1000] {
            for (name, family) in shapes(n) {
                assert_eq!(dataset(family, n).len(), n, "{name}");
            }
        }
    }
}
