//! Baseline sorts the benchmarks compare against, and the verification
//! oracle. All of them report through the same [`Probe`](crate::Probe).

mod insertion;
mod mergesort;
mod oracle;
mod timsort;

pub use insertion::insertion_sort;
pub use mergesort::{mergesort_full_aux, mergesort_half_aux};
pub use oracle::oracle_stable_sort;
pub use timsort::{timsort_like, TimsortConfig};
