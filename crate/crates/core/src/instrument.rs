//! Operation counting and stable-sort verification.
//!
//! Every sort in this crate reports element writes and auxiliary memory use
//! through a [`Probe`]. The unit probe `()` compiles to nothing, so the same
//! code path is used for timing and for counting. Comparisons are counted by
//! wrapping the comparator with [`counting_comparator`] rather than by the
//! sorts themselves, which keeps a single definition of "one comparison".

use std::cell::Cell;
use std::fmt;

/// A key tagged with its index in the original input.
///
/// The position takes no part in ordering; it only exists so that stability
/// can be checked after the fact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Record<K> {
    pub key: K,
    pub position: usize,
}

impl<K> Record<K> {
    pub fn new(key: K, position: usize) -> Self {
        Self { key, position }
    }
}

impl<K: PartialOrd> Record<K> {
    /// Natural order on keys, ignoring positions.
    #[inline]
    pub fn key_less(a: &Self, b: &Self) -> bool {
        a.key < b.key
    }
}

/// Tags `keys` with positions `0..n`.
pub fn records_from_keys<K, I: IntoIterator<Item = K>>(keys: I) -> Vec<Record<K>> {
    keys.into_iter().enumerate().map(|(position, key)| Record { key, position }).collect()
}

/// Which array an element write lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// The caller's slice.
    Data,
    /// The auxiliary buffer; `offset` is the buffer index of the first
    /// element of the slice being written.
    Buffer { offset: usize },
}

/// Sink for the events a sort reports.
///
/// All methods default to no-ops. "Move" means any element write: a shift
/// counts once, a block copy counts once per element and a swap counts twice.
pub trait Probe {
    /// `count` consecutive writes starting at index `first` of `region`.
    #[inline(always)]
    fn write(&self, _region: Region, _first: usize, _count: usize) {}
    /// One exchange of two elements in `region` (two writes).
    #[inline(always)]
    fn swap(&self, _region: Region, _a: usize, _b: usize) {}
    /// `elements` auxiliary slots became live.
    #[inline(always)]
    fn alloc(&self, _elements: usize) {}
    /// `elements` auxiliary slots were released.
    #[inline(always)]
    fn release(&self, _elements: usize) {}
    /// One merge step of a merge-based sort started.
    #[inline(always)]
    fn merge(&self) {}
    /// One whole-run reversal.
    #[inline(always)]
    fn reversal(&self) {}
    /// One comparator evaluation.
    #[inline(always)]
    fn compare(&self) {}
}

impl Probe for () {}

impl<P: Probe + ?Sized> Probe for &P {
    #[inline(always)]
    fn write(&self, region: Region, first: usize, count: usize) {
        (**self).write(region, first, count)
    }
    #[inline(always)]
    fn swap(&self, region: Region, a: usize, b: usize) {
        (**self).swap(region, a, b)
    }
    #[inline(always)]
    fn alloc(&self, elements: usize) {
        (**self).alloc(elements)
    }
    #[inline(always)]
    fn release(&self, elements: usize) {
        (**self).release(elements)
    }
    #[inline(always)]
    fn merge(&self) {
        (**self).merge()
    }
    #[inline(always)]
    fn reversal(&self) {
        (**self).reversal()
    }
    #[inline(always)]
    fn compare(&self) {
        (**self).compare()
    }
}

/// Counters for one sort invocation.
///
/// Interior mutability lets the same instance be shared by the comparator
/// wrapper and the sort at once. Not `Sync`: one instance per invocation.
#[derive(Debug, Default)]
pub struct SortStats {
    comparisons: Cell<u64>,
    moves: Cell<u64>,
    swaps: Cell<u64>,
    buffer_writes: Cell<u64>,
    aux_live: Cell<u64>,
    aux_peak: Cell<u64>,
    max_buffer_index: Cell<Option<usize>>,
    merges: Cell<u64>,
    reversals: Cell<u64>,
}

fn bump(cell: &Cell<u64>, by: u64) {
    cell.set(cell.get() + by);
}

impl SortStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comparisons(&self) -> u64 {
        self.comparisons.get()
    }

    pub fn moves(&self) -> u64 {
        self.moves.get()
    }

    pub fn swaps(&self) -> u64 {
        self.swaps.get()
    }

    pub fn buffer_writes(&self) -> u64 {
        self.buffer_writes.get()
    }

    pub fn aux_peak(&self) -> u64 {
        self.aux_peak.get()
    }

    /// Highest auxiliary offset written, if the buffer was written at all.
    pub fn max_buffer_index(&self) -> Option<usize> {
        self.max_buffer_index.get()
    }

    pub fn merges(&self) -> u64 {
        self.merges.get()
    }

    pub fn reversals(&self) -> u64 {
        self.reversals.get()
    }

    pub fn snapshot(&self) -> StatsSnapshot {
        StatsSnapshot {
            comparisons: self.comparisons(),
            moves: self.moves(),
            swaps: self.swaps(),
            buffer_writes: self.buffer_writes(),
            aux_peak: self.aux_peak(),
            max_buffer_index: self.max_buffer_index(),
            merges: self.merges(),
            reversals: self.reversals(),
        }
    }

    fn touch_buffer(&self, last: usize) {
        let max = self.max_buffer_index.get().map_or(last, |m| m.max(last));
        self.max_buffer_index.set(Some(max));
    }
}

impl Probe for SortStats {
    fn write(&self, region: Region, first: usize, count: usize) {
        if count == 0 {
            return;
        }
        bump(&self.moves, count as u64);
        if let Region::Buffer { offset } = region {
            bump(&self.buffer_writes, count as u64);
            self.touch_buffer(offset + first + count - 1);
        }
    }

    fn swap(&self, region: Region, a: usize, b: usize) {
        bump(&self.swaps, 1);
        bump(&self.moves, 2);
        if let Region::Buffer { offset } = region {
            bump(&self.buffer_writes, 2);
            self.touch_buffer(offset + a.max(b));
        }
    }

    fn alloc(&self, elements: usize) {
        let live = self.aux_live.get() + elements as u64;
        self.aux_live.set(live);
        if live > self.aux_peak.get() {
            self.aux_peak.set(live);
        }
    }

    fn release(&self, elements: usize) {
        self.aux_live.set(self.aux_live.get().saturating_sub(elements as u64));
    }

    fn merge(&self) {
        bump(&self.merges, 1);
    }

    fn reversal(&self) {
        bump(&self.reversals, 1);
    }

    fn compare(&self) {
        bump(&self.comparisons, 1);
    }
}

/// Plain-value copy of [`SortStats`], suitable for aggregation and reports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StatsSnapshot {
    pub comparisons: u64,
    pub moves: u64,
    pub swaps: u64,
    pub buffer_writes: u64,
    pub aux_peak: u64,
    pub max_buffer_index: Option<usize>,
    pub merges: u64,
    pub reversals: u64,
}

impl StatsSnapshot {
    /// Comparisons plus element writes.
    pub fn operations(&self) -> u64 {
        self.comparisons + self.moves
    }
}

impl fmt::Display for StatsSnapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "comparisons={}", self.comparisons)?;
        writeln!(f, "moves={}", self.moves)?;
        writeln!(f, "swaps={}", self.swaps)?;
        writeln!(f, "buffer_writes={}", self.buffer_writes)?;
        writeln!(f, "aux_peak={}", self.aux_peak)?;
        match self.max_buffer_index {
            Some(i) => writeln!(f, "max_buffer_index={i}")?,
            None => writeln!(f, "max_buffer_index=none")?,
        }
        writeln!(f, "merges={}", self.merges)?;
        write!(f, "reversals={}", self.reversals)
    }
}

/// Wraps `base` so that each evaluation reports one comparison to `probe`.
///
/// The returned relation answers exactly as `base` does.
pub fn counting_comparator<'a, T, F, P>(mut base: F, probe: &'a P) -> impl FnMut(&T, &T) -> bool + 'a
where
    F: FnMut(&T, &T) -> bool + 'a,
    P: Probe + ?Sized,
{
    move |a, b| {
        probe.compare();
        base(a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailReason {
    NotSorted,
    NotPermutation,
    NotStable,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailReason::NotSorted => "not_sorted",
            FailReason::NotPermutation => "not_permutation",
            FailReason::NotStable => "not_stable",
        })
    }
}

/// Outcome of [`verify_stable_sort`].
///
/// Witness indices: for `NotSorted` and `NotStable`, the adjacent output
/// indices `(i, i + 1)` that violate the property. For `NotPermutation`,
/// `(output index, input index)` of the first mismatch; a length mismatch is
/// reported as `(output.len(), input.len())`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Fail { reason: FailReason, witness: (usize, usize) },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    fn fail(reason: FailReason, witness: (usize, usize)) -> Self {
        Verdict::Fail { reason, witness }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => f.write_str("ok"),
            Verdict::Fail { reason, witness } => {
                write!(f, "fail({reason}, witness ({}, {}))", witness.0, witness.1)
            }
        }
    }
}

/// Checks that `output` is a stable sort of `input` under `is_less`.
///
/// Checks run in order: ascending, then same multiset of `(key, position)`
/// pairs, then increasing positions within runs of equal keys. Total: any
/// `output` (wrong length, duplicated or foreign records) yields a verdict.
pub fn verify_stable_sort<K, F>(input: &[Record<K>], output: &[Record<K>], mut is_less: F) -> Verdict
where
    K: PartialEq,
    F: FnMut(&K, &K) -> bool,
{
    for (i, pair) in output.windows(2).enumerate() {
        if is_less(&pair[1].key, &pair[0].key) {
            return Verdict::fail(FailReason::NotSorted, (i, i + 1));
        }
    }

    if let Some(witness) = permutation_mismatch(input, output) {
        return Verdict::fail(FailReason::NotPermutation, witness);
    }

    for (i, pair) in output.windows(2).enumerate() {
        let equal = !is_less(&pair[0].key, &pair[1].key);
        if equal && pair[1].position < pair[0].position {
            return Verdict::fail(FailReason::NotStable, (i, i + 1));
        }
    }
    Verdict::Ok
}

fn permutation_mismatch<K: PartialEq>(input: &[Record<K>], output: &[Record<K>]) -> Option<(usize, usize)> {
    if input.len() != output.len() {
        return Some((output.len(), input.len()));
    }
    let n = input.len();

    // Fast path: input positions are exactly 0..n in order, so each output
    // record can be looked up by its position.
    if input.iter().enumerate().all(|(i, r)| r.position == i) {
        let mut seen = vec![false; n];
        for (i, r) in output.iter().enumerate() {
            if r.position >= n || seen[r.position] || input[r.position].key != r.key {
                return Some((i, r.position.min(n)));
            }
            seen[r.position] = true;
        }
        return None;
    }

    // General path: match records by position, then by key equality.
    let mut pending: Vec<usize> = (0..n).collect();
    pending.sort_by_key(|&j| input[j].position);
    let mut used = vec![false; n];
    for (i, r) in output.iter().enumerate() {
        let lo = pending.partition_point(|&j| input[j].position < r.position);
        let found = pending[lo..]
            .iter()
            .take_while(|&&j| input[j].position == r.position)
            .find(|&&j| !used[j] && input[j].key == r.key);
        match found {
            Some(&j) => used[j] = true,
            None => return Some((i, pending.get(lo).copied().unwrap_or(n))),
        }
    }
    None
}
