use std::fmt;
use std::str::FromStr;

use crate::instrument::Probe;
use crate::persian::{persiansort_by, PersiansortParams};
use crate::reference::{insertion_sort, mergesort_full_aux, mergesort_half_aux, timsort_like, TimsortConfig};

/// Which sort to run, without its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmKind {
    /// Mergesort with `n` auxiliary elements.
    M1,
    /// Mergesort with `ceil(n / 2)` auxiliary elements.
    M2,
    Timsort,
    Insertion,
    Persiansort,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 5] = [
        AlgorithmKind::M1,
        AlgorithmKind::M2,
        AlgorithmKind::Timsort,
        AlgorithmKind::Insertion,
        AlgorithmKind::Persiansort,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::M1 => "m1",
            AlgorithmKind::M2 => "m2",
            AlgorithmKind::Timsort => "timsort",
            AlgorithmKind::Insertion => "insertion",
            AlgorithmKind::Persiansort => "persiansort",
        }
    }

    /// Column label used in the report tables.
    pub fn label(self) -> &'static str {
        match self {
            AlgorithmKind::M1 => "T-M1",
            AlgorithmKind::M2 => "T-M2",
            AlgorithmKind::Timsort => "T-TIMS",
            AlgorithmKind::Insertion => "T-INS",
            AlgorithmKind::Persiansort => "T-PER",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "m1" | "mergesort1" => Ok(AlgorithmKind::M1),
            "m2" | "mergesort2" => Ok(AlgorithmKind::M2),
            "timsort" | "tims" => Ok(AlgorithmKind::Timsort),
            "insertion" | "ins" => Ok(AlgorithmKind::Insertion),
            "persiansort" | "per" => Ok(AlgorithmKind::Persiansort),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// A fully configured sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Persiansort(PersiansortParams),
    MergesortFullAux,
    MergesortHalfAux,
    Timsort(TimsortConfig),
    Insertion,
}

impl Algorithm {
    pub fn kind(&self) -> AlgorithmKind {
        match self {
            Algorithm::Persiansort(_) => AlgorithmKind::Persiansort,
            Algorithm::MergesortFullAux => AlgorithmKind::M1,
            Algorithm::MergesortHalfAux => AlgorithmKind::M2,
            Algorithm::Timsort(_) => AlgorithmKind::Timsort,
            Algorithm::Insertion => AlgorithmKind::Insertion,
        }
    }

    /// Default configuration of `kind`; persiansort gets `params`.
    pub fn from_kind(kind: AlgorithmKind, params: PersiansortParams) -> Self {
        match kind {
            AlgorithmKind::Persiansort => Algorithm::Persiansort(params),
            AlgorithmKind::M1 => Algorithm::MergesortFullAux,
            AlgorithmKind::M2 => Algorithm::MergesortHalfAux,
            AlgorithmKind::Timsort => Algorithm::Timsort(TimsortConfig::default()),
            AlgorithmKind::Insertion => Algorithm::Insertion,
        }
    }

    pub fn sort_by<T, F, P>(&self, data: &mut [T], is_less: F, probe: &P)
    where
        T: Clone,
        F: FnMut(&T, &T) -> bool,
        P: Probe + ?Sized,
    {
        match self {
            Algorithm::Persiansort(params) => persiansort_by(data, params, is_less, probe),
            Algorithm::MergesortFullAux => mergesort_full_aux(data, is_less, probe),
            Algorithm::MergesortHalfAux => mergesort_half_aux(data, is_less, probe),
            Algorithm::Timsort(cfg) => timsort_like(data, cfg, is_less, probe),
            Algorithm::Insertion => insertion_sort(data, is_less, probe),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Persiansort(p) => match p.hybrid_threshold() {
                Some(t) => write!(f, "persiansort(wp={}, hybrid={t})", p.wp()),
                None => write!(f, "persiansort(wp={})", p.wp()),
            },
            other => f.write_str(other.kind().name()),
        }
    }
}
