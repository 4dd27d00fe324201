//! Persiansort.
//!
//! A segment is scanned left to right. A leading strictly-descending run is
//! reversed, and ascending runs simply extend the sorted prefix. Each time the
//! prefix is broken, the next block of `max_jump = len / wp + 1` elements is
//! copied out, sorted recursively, and merged back into the gap behind the
//! prefix by [`jumpinsert`], working from the largest elements down.
//!
//! A block taken from the caller's slice goes to the start of one auxiliary
//! buffer. Blocks taken from a segment that already lives in the buffer go
//! to the slots just past that segment's end. The buffer is therefore used as
//! a stack, and one allocation of [`auxiliary_size`] elements serves the
//! whole recursion.
//!
//! Buffer offsets are 0-based. Capacity is exactly `auxiliary_size(n, wp)`.
//! With `max_jump = len / wp + 1` the deepest recursion can need a few slots
//! more than the recurrence provides, so each warping call caps its block
//! size at the largest value whose worst-case subtree still fits in the
//! free part of the buffer (see [`BufferLayout::fit_block`]).

use crate::error::{Error, Result};
use crate::instrument::{Probe, Region};

/// Warp factor used by the benchmarks unless told otherwise.
pub const DEFAULT_WP: usize = 9;

/// Segment length below which the optional insertion hybrid takes over.
pub const DEFAULT_HYBRID_THRESHOLD: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PersiansortParams {
    wp: usize,
    hybrid_threshold: Option<usize>,
}

impl PersiansortParams {
    /// Plain persiansort with warp factor `wp` (`wp >= 4`).
    pub fn new(wp: usize) -> Result<Self> {
        if wp < 4 {
            return Err(Error::WarpFactor(wp));
        }
        Ok(Self { wp, hybrid_threshold: None })
    }

    /// Enables binary insertion for segments shorter than `threshold`.
    pub fn with_hybrid(self, threshold: usize) -> Result<Self> {
        if threshold < 2 {
            return Err(Error::HybridThreshold(threshold));
        }
        Ok(Self { hybrid_threshold: Some(threshold), ..self })
    }

    pub fn wp(&self) -> usize {
        self.wp
    }

    pub fn hybrid_threshold(&self) -> Option<usize> {
        self.hybrid_threshold
    }

    fn use_insertion(&self, len: usize) -> bool {
        self.hybrid_threshold.is_some_and(|t| len < t)
    }
}

impl Default for PersiansortParams {
    fn default() -> Self {
        Self { wp: DEFAULT_WP, hybrid_threshold: None }
    }
}

/// Total auxiliary elements for a top-level sort of `n` elements:
/// `2` when `n / wp == 0`, else `1 + m + auxiliary_size(m, wp)` with `m = n / wp`.
///
/// # Panics
///
/// If `wp < 2` (the recursion would not shrink).
pub fn auxiliary_size(n: usize, wp: usize) -> usize {
    assert!(wp >= 2, "warp factor {wp} does not shrink");
    let m = n / wp;
    if m == 0 {
        2
    } else {
        1 + m + auxiliary_size(m, wp)
    }
}

/// Warp factor for data whose elements are at most `k` places from home:
/// `max(4, round(n / (1.5 * sqrt(k))))`, which makes the top-level block
/// about `1.5 * sqrt(k) + 1` elements.
pub fn wp_for_k_nearly(n: usize, k: usize) -> Result<usize> {
    if k < 1 || k >= n {
        return Err(Error::KOutOfRange { n, k });
    }
    let wp = (n as f64 / (1.5 * (k as f64).sqrt())).round() as usize;
    Ok(wp.max(4))
}

/// Buffer sizing for one top-level call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BufferLayout {
    /// Elements allocated: `auxiliary_size(n, wp)`.
    pub capacity: usize,
    /// `capacity`, or 1 when `n < wp` (every block is then a single element).
    pub effective_aux_size: usize,
}

impl BufferLayout {
    pub fn new(n: usize, wp: usize) -> Self {
        let capacity = auxiliary_size(n, wp);
        let effective_aux_size = if n < wp { 1 } else { capacity };
        Self { capacity, effective_aux_size }
    }

    /// Worst-case buffer slots used past the end of an in-buffer segment of
    /// `len` elements, assuming every block is full sized.
    pub fn reach(len: usize, params: &PersiansortParams) -> usize {
        // A two-element segment is always settled by the run scans, and a
        // hybrid segment is sorted where it lies.
        if len <= 2 || params.use_insertion(len) {
            return 0;
        }
        let block = len / params.wp + 1;
        block + Self::reach(block, params)
    }

    /// Largest block size `<= wanted` whose own slots plus worst-case
    /// recursion fit in `free` buffer slots.
    pub fn fit_block(wanted: usize, free: usize, params: &PersiansortParams) -> usize {
        let mut block = wanted;
        while block > 1 && block + Self::reach(block, params) > free {
            block -= 1;
        }
        block
    }
}

/// Inclusive bounds of a segment being warped, with its block size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentBounds {
    pub start: usize,
    pub end: usize,
    pub max_jump: usize,
}

impl SegmentBounds {
    /// Bounds for `start..=end` with the unclamped block size `len / wp + 1`.
    pub fn new(start: usize, end: usize, wp: usize) -> Self {
        debug_assert!(start <= end);
        let len = end - start + 1;
        Self { start, end, max_jump: (len / wp + 1).min(len) }
    }
}

/// Sorts `data` stably with the default parameters and natural order.
pub fn persiansort<T: Clone + Ord>(data: &mut [T]) {
    persiansort_by(data, &PersiansortParams::default(), T::lt, &());
}

/// Sorts `data` stably under the strict weak order `is_less`.
///
/// Allocates exactly `auxiliary_size(data.len(), wp)` auxiliary elements,
/// or nothing for fewer than two elements.
pub fn persiansort_by<T, F, P>(data: &mut [T], params: &PersiansortParams, mut is_less: F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    let n = data.len();
    if n < 2 {
        return;
    }
    let layout = BufferLayout::new(n, params.wp);
    let mut buffer: Vec<T> = Vec::with_capacity(layout.capacity);
    probe.alloc(layout.capacity);
    let mut ctx = Warp { params, capacity: layout.capacity, is_less: &mut is_less, probe };
    ctx.warp_data(data, &mut buffer);
    debug_assert!(buffer.len() <= layout.capacity);
    probe.release(layout.capacity);
}

/// Warps a whole top-level slice using `buffer` (its capacity is the free
/// auxiliary space). Exposed for tests that drive a single segment.
pub fn warping<T, F, P>(data: &mut [T], buffer: &mut Vec<T>, params: &PersiansortParams, mut is_less: F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    buffer.clear();
    let mut ctx = Warp { params, capacity: buffer.capacity(), is_less: &mut is_less, probe };
    ctx.warp_data(data, buffer);
}

struct Warp<'a, F, P: ?Sized> {
    params: &'a PersiansortParams,
    capacity: usize,
    is_less: &'a mut F,
    probe: &'a P,
}

impl<F, P: Probe + ?Sized> Warp<'_, F, P> {
    fn warp_data<T: Clone>(&mut self, data: &mut [T], buffer: &mut Vec<T>)
    where
        F: FnMut(&T, &T) -> bool,
    {
        let len = data.len();
        if len < 2 {
            return;
        }
        if self.params.use_insertion(len) {
            binary_insertion_sort(data, 1, self.is_less, self.probe, Region::Data);
            return;
        }
        let end = len - 1;
        let seg = SegmentBounds::new(0, end, self.params.wp);
        let mut max_jump = BufferLayout::fit_block(seg.max_jump, self.capacity, self.params);

        let mut i = 0;
        while i < end && (self.is_less)(&data[i + 1], &data[i]) {
            i += 1;
        }
        if i > 0 {
            reverse_probed(data, 0, i, self.probe, Region::Data);
        }
        while i < end {
            while i < end && !(self.is_less)(&data[i + 1], &data[i]) {
                i += 1;
            }
            if i == end {
                return;
            }
            if i + max_jump > end {
                max_jump = end - i;
            }
            buffer.clear();
            buffer.extend_from_slice(&data[i + 1..=i + max_jump]);
            self.probe.write(Region::Buffer { offset: 0 }, 0, max_jump);
            if max_jump > 1 {
                self.warp_buffer(buffer, 0, max_jump - 1);
            }
            jump_insert_probed(
                &mut data[..=i + max_jump],
                i + 1,
                &buffer[..max_jump],
                self.is_less,
                self.probe,
                Region::Data,
            );
            i += max_jump;
        }
    }

    /// Warps `buffer[start..=end]`; blocks go to `buffer[end + 1..]`.
    fn warp_buffer<T: Clone>(&mut self, buffer: &mut Vec<T>, start: usize, end: usize)
    where
        F: FnMut(&T, &T) -> bool,
    {
        if start >= end {
            return;
        }
        let len = end - start + 1;
        let here = Region::Buffer { offset: start };
        if self.params.use_insertion(len) {
            binary_insertion_sort(&mut buffer[start..=end], 1, self.is_less, self.probe, here);
            return;
        }
        let free = self.capacity - (end + 1);
        let seg = SegmentBounds::new(start, end, self.params.wp);
        let mut max_jump = BufferLayout::fit_block(seg.max_jump, free, self.params);

        let mut i = start;
        while i < end && (self.is_less)(&buffer[i + 1], &buffer[i]) {
            i += 1;
        }
        if i > start {
            reverse_probed(&mut buffer[start..=i], 0, i - start, self.probe, here);
        }
        while i < end {
            while i < end && !(self.is_less)(&buffer[i + 1], &buffer[i]) {
                i += 1;
            }
            if i == end {
                return;
            }
            if i + max_jump > end {
                max_jump = end - i;
            }
            let low = end + 1;
            debug_assert!(low + max_jump <= self.capacity, "buffer overrun");
            buffer.truncate(low);
            buffer.extend_from_within(i + 1..=i + max_jump);
            self.probe.write(Region::Buffer { offset: low }, 0, max_jump);
            if max_jump > 1 {
                self.warp_buffer(buffer, low, low + max_jump - 1);
            }
            let (head, tail) = buffer.split_at_mut(low);
            jump_insert_probed(
                &mut head[start..=i + max_jump],
                i - start + 1,
                &tail[..max_jump],
                self.is_less,
                self.probe,
                here,
            );
            i += max_jump;
        }
    }
}

/// Merges the sorted `source` into `dest`, whose first `prefix_len` elements
/// are sorted and whose remaining `source.len()` slots are a writable gap.
///
/// Works from the largest elements down. A prefix element moves only when it
/// is strictly greater than the source element being placed, so on ties the
/// prefix element ends up first.
///
/// # Panics
///
/// If `dest.len() != prefix_len + source.len()`.
pub fn jumpinsert<T: Clone, F: FnMut(&T, &T) -> bool>(dest: &mut [T], prefix_len: usize, source: &[T], mut is_less: F) {
    jump_insert_probed(dest, prefix_len, source, &mut is_less, &(), Region::Data);
}

fn jump_insert_probed<T, F, P>(
    dest: &mut [T],
    prefix_len: usize,
    source: &[T],
    is_less: &mut F,
    probe: &P,
    region: Region,
) where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    assert_eq!(dest.len(), prefix_len + source.len(), "gap must match source length");
    // `i` prefix elements and `jump` source elements remain unplaced; the
    // next free slot is `i + jump - 1`.
    let mut i = prefix_len;
    let mut jump = source.len();
    while jump > 0 {
        let item = &source[jump - 1];
        while i > 0 && is_less(item, &dest[i - 1]) {
            dest[i + jump - 1] = dest[i - 1].clone();
            probe.write(region, i + jump - 1, 1);
            i -= 1;
        }
        dest[i + jump - 1] = item.clone();
        probe.write(region, i + jump - 1, 1);
        jump -= 1;
    }
}

/// Reverses `data[s..=e]` with `(e - s + 1) / 2` swaps.
pub fn reverse_range<T>(data: &mut [T], s: usize, e: usize) {
    reverse_probed(data, s, e, &(), Region::Data);
}

pub(crate) fn reverse_probed<T, P: Probe + ?Sized>(
    data: &mut [T],
    mut s: usize,
    mut e: usize,
    probe: &P,
    region: Region,
) {
    probe.reversal();
    while s < e {
        data.swap(s, e);
        probe.swap(region, s, e);
        s += 1;
        e -= 1;
    }
}

/// Binary insertion sort of `data`, whose first `sorted` elements are
/// already in order. Inserts after any equal elements, so it is stable.
pub(crate) fn binary_insertion_sort<T, F, P>(data: &mut [T], sorted: usize, is_less: &mut F, probe: &P, region: Region)
where
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    for i in sorted.max(1)..data.len() {
        let (head, tail) = data.split_at(i);
        let item = &tail[0];
        let pos = head.partition_point(|x| !is_less(item, x));
        if pos < i {
            data[pos..=i].rotate_right(1);
            probe.write(region, pos, i - pos + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::{counting_comparator, records_from_keys, Record, SortStats};

    // Independent of everything above: stable by construction.
    fn oracle(keys: &[i32]) -> Vec<(i32, usize)> {
        let mut v: Vec<(i32, usize)> = keys.iter().copied().zip(0..).collect();
        v.sort_unstable();
        v
    }

    fn run(keys: &[i32], params: PersiansortParams) -> (Vec<(i32, usize)>, SortStats) {
        let mut recs = records_from_keys(keys.iter().copied());
        let stats = SortStats::new();
        persiansort_by(&mut recs, &params, counting_comparator(Record::key_less, &stats), &stats);
        (recs.into_iter().map(|r| (r.key, r.position)).collect(), stats)
    }

    fn wp(w: usize) -> PersiansortParams {
        PersiansortParams::new(w).unwrap()
    }

    #[test]
    fn rejects_small_warp_factor() {
        assert!(matches!(PersiansortParams::new(3), Err(Error::WarpFactor(3))));
        assert!(PersiansortParams::new(4).is_ok());
        assert!(matches!(wp(9).with_hybrid(1), Err(Error::HybridThreshold(1))));
    }

    #[test]
    fn empty_and_single_do_not_allocate() {
        for keys in [&[][..], &[42][..]] {
            let (out, stats) = run(keys, wp(9));
            assert_eq!(out, oracle(keys));
            assert_eq!(stats.aux_peak(), 0);
            assert_eq!(stats.comparisons(), 0);
        }
    }

    #[test]
    fn equal_pair_keeps_order() {
        let (out, _) = run(&[7, 7], wp(9));
        assert_eq!(out, vec![(7, 0), (7, 1)]);
    }

    #[test]
    fn small_example_matches_oracle() {
        let keys = [5, 1, 4, 1, 3];
        let (out, _) = run(&keys, wp(4));
        assert_eq!(out, vec![(1, 1), (1, 3), (3, 4), (4, 2), (5, 0)]);
        assert_eq!(out, oracle(&keys));
        for w in [5, 9, 16] {
            assert_eq!(run(&keys, wp(w)).0, oracle(&keys));
        }
    }

    #[test]
    fn sorted_ten_takes_at_most_twenty_comparisons() {
        let keys: Vec<i32> = (1..=10).collect();
        let (out, stats) = run(&keys, wp(9));
        assert_eq!(out, oracle(&keys));
        // one failed descending test plus nine ascending steps
        assert_eq!(stats.comparisons(), 10);
        assert_eq!(stats.buffer_writes(), 0);
    }

    #[test]
    fn auxiliary_size_examples() {
        assert_eq!(auxiliary_size(5, 9), 2);
        assert_eq!(auxiliary_size(81, 9), 14);
        assert_eq!(auxiliary_size(100, 9), 16);
    }

    #[test]
    fn layout_forces_unit_aux_when_short() {
        assert_eq!(BufferLayout::new(5, 9), BufferLayout { capacity: 2, effective_aux_size: 1 });
        assert_eq!(BufferLayout::new(81, 9), BufferLayout { capacity: 14, effective_aux_size: 14 });
    }

    #[test]
    fn fit_block_only_shrinks_when_needed() {
        let p = wp(9);
        // 10^4 / 9 + 1 = 1112 fits in auxiliary_size(10^4, 9) = 1254.
        assert_eq!(BufferLayout::fit_block(1112, auxiliary_size(10_000, 9), &p), 1112);
        // At 10^6 the unclamped block would overrun by one slot.
        let cap = auxiliary_size(1_000_000, 9);
        let b = BufferLayout::fit_block(111_112, cap, &p);
        assert_eq!(b, 111_111);
        assert!(b + BufferLayout::reach(b, &p) <= cap);
    }

    #[test]
    fn warping_three_elements() {
        // [3,1,2]: 1 < 3 reverses the leading pair, then [2] is jump-inserted.
        let mut data = vec![3, 1, 2];
        let mut buf = Vec::with_capacity(auxiliary_size(3, 4));
        let stats = SortStats::new();
        warping(&mut data, &mut buf, &wp(4), counting_comparator(|a: &i32, b: &i32| a < b, &stats), &stats);
        assert_eq!(data, vec![1, 2, 3]);
        assert_eq!(stats.reversals(), 1);
        assert_eq!(stats.buffer_writes(), 1);
    }

    #[test]
    fn warping_strictly_descending_is_one_reversal() {
        let mut data = vec![9, 7, 5, 3];
        let mut buf = Vec::with_capacity(auxiliary_size(4, 4));
        let stats = SortStats::new();
        warping(&mut data, &mut buf, &wp(4), |a: &i32, b: &i32| a < b, &stats);
        assert_eq!(data, vec![3, 5, 7, 9]);
        assert_eq!(stats.swaps(), 2);
        assert_eq!(stats.buffer_writes(), 0);
    }

    #[test]
    fn warping_sorted_writes_nothing() {
        let mut data: Vec<i32> = (0..50).collect();
        let mut buf = Vec::with_capacity(auxiliary_size(50, 9));
        let stats = SortStats::new();
        warping(&mut data, &mut buf, &wp(9), |a: &i32, b: &i32| a < b, &stats);
        assert_eq!(stats.moves(), 0);
    }

    #[test]
    fn jumpinsert_examples() {
        // keys tagged with provenance: 0 = prefix, 1 = source
        let mut dest = vec![(1, 0), (3, 0), (5, 0), (7, 0), (0, 9), (0, 9)];
        jumpinsert(&mut dest, 4, &[(2, 1), (7, 1)], |a, b| a.0 < b.0);
        assert_eq!(dest, vec![(1, 0), (2, 1), (3, 0), (5, 0), (7, 0), (7, 1)]);

        let mut dest = vec![1, 2, 3];
        jumpinsert(&mut dest, 3, &[], |a: &i32, b: &i32| a < b);
        assert_eq!(dest, vec![1, 2, 3]);

        let mut dest = vec![5, 6, 0, 0];
        jumpinsert(&mut dest, 2, &[1, 2], |a: &i32, b: &i32| a < b);
        assert_eq!(dest, vec![1, 2, 5, 6]);
    }

    #[test]
    fn reverse_range_examples() {
        let mut one = vec![1];
        reverse_range(&mut one, 0, 0);
        assert_eq!(one, vec![1]);
        let mut four = vec![4, 3, 2, 1];
        reverse_range(&mut four, 0, 3);
        assert_eq!(four, vec![1, 2, 3, 4]);
    }

    #[test]
    fn descending_with_ties_is_not_reversed_whole() {
        // [9,7,7,5] must not be reversed as a block: that would swap the 7s.
        let (out, _) = run(&[9, 7, 7, 5], wp(4));
        assert_eq!(out, vec![(5, 3), (7, 1), (7, 2), (9, 0)]);
    }

    #[test]
    fn wp_for_k_nearly_examples() {
        assert_eq!(wp_for_k_nearly(1_000_000, 100).unwrap(), 66_667);
        assert_eq!(wp_for_k_nearly(20, 1).unwrap(), 13);
        assert!(matches!(wp_for_k_nearly(100, 10_000), Err(Error::KOutOfRange { .. })));
        assert!(wp_for_k_nearly(100, 0).is_err());
        // floor at 4
        assert_eq!(wp_for_k_nearly(10, 9).unwrap(), 4);
    }

    #[test]
    fn degenerate_wp_is_buffered_insertion() {
        let keys = [4, 8, 1, 9, 3, 3, 0, 7, 2, 6];
        let params = wp(keys.len() + 1);
        let (out, stats) = run(&keys, params);
        assert_eq!(out, oracle(&keys));
        assert_eq!(stats.aux_peak(), 2);
        assert_eq!(stats.max_buffer_index(), Some(0));
    }

    #[test]
    fn hybrid_matches_oracle() {
        let keys: Vec<i32> = (0..300).map(|i| i * 7919 % 61).collect();
        let params = wp(9).with_hybrid(DEFAULT_HYBRID_THRESHOLD).unwrap();
        assert_eq!(run(&keys, params).0, oracle(&keys));
    }
}
