//! Persiansort and friends.
//!
//! * [`persian`]: persiansort, its buffer sizing and the k-nearly warp factor.
//! * [`reference`]: mergesort with full and half auxiliary memory, a
//!   natural-runs timsort, insertion sort, and an independent oracle.
//! * [`instrument`]: records, operation counters and the stable-sort verifier.
//! * [`datagen`] and [`dataset`]: seeded generators and the dataset file format.
//!
//! All sorts take a strict weak order `is_less` and a [`Probe`]; pass `&()`
//! when no counting is wanted.
//!
//! ```
//! use persiansort::{persiansort_by, PersiansortParams};
//!
//! let mut v = vec![5, 1, 4, 1, 3];
//! persiansort_by(&mut v, &PersiansortParams::new(9).unwrap(), |a, b| a < b, &());
//! assert_eq!(v, [1, 1, 3, 4, 5]);
//! ```

pub mod algorithm;
pub mod datagen;
pub mod dataset;
mod error;
pub mod instrument;
pub mod persian;
pub mod reference;

pub use algorithm::{Algorithm, AlgorithmKind};
pub use datagen::{gen_k_nearly, gen_prefix_sorted, gen_random, gen_runs, Direction, Family, GeneratorSpec, KeyDomain};
pub use dataset::{Dataset, Format, Header};
pub use error::{Error, Result};
pub use instrument::{
    counting_comparator, records_from_keys, verify_stable_sort, FailReason, Probe, Record, Region, SortStats,
    StatsSnapshot, Verdict,
};
pub use persian::{
    auxiliary_size, jumpinsert, persiansort, persiansort_by, reverse_range, warping, wp_for_k_nearly, BufferLayout,
    PersiansortParams, SegmentBounds, DEFAULT_HYBRID_THRESHOLD, DEFAULT_WP,
};
pub use reference::{
    insertion_sort, mergesort_full_aux, mergesort_half_aux, oracle_stable_sort, timsort_like, TimsortConfig,
};
