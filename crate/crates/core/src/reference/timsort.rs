//! Natural-runs mergesort in the style of timsort, without galloping.

use crate::error::{Error, Result};
use crate::instrument::{Probe, Region};
use crate::persian::{binary_insertion_sort, reverse_probed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimsortConfig {
    pub minrun_low: usize,
    pub minrun_high: usize,
}

impl Default for TimsortConfig {
    fn default() -> Self {
        Self { minrun_low: 32, minrun_high: 64 }
    }
}

impl TimsortConfig {
    /// `minrun_high` must be `2 * minrun_low`, so the halving in
    /// [`minrun`](Self::minrun) lands in `[low, high]`.
    pub fn new(minrun_low: usize, minrun_high: usize) -> Result<Self> {
        if minrun_low < 1 || minrun_high != 2 * minrun_low {
            return Err(Error::TimsortConfig(format!(
                "need 1 <= low and high = 2 * low, got [{minrun_low}, {minrun_high}]"
            )));
        }
        Ok(Self { minrun_low, minrun_high })
    }

    /// Minimum run length for `n` elements: `n` itself below `minrun_high`,
    /// otherwise the top bits of `n`, plus one if any lower bit is set.
    pub fn minrun(&self, n: usize) -> usize {
        let mut n = n;
        let mut r = 0;
        while n >= self.minrun_high {
            r |= n & 1;
            n >>= 1;
        }
        n + r
    }
}

#[derive(Clone, Copy, Debug)]
struct Run {
    start: usize,
    len: usize,
}

pub fn timsort_like<T, F, P>(data: &mut [T], config: &TimsortConfig, mut is_less: F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    let n = data.len();
    if n < 2 {
        return;
    }
    let minrun = config.minrun(n);
    let mut runs: Vec<Run> = Vec::new();
    let mut scratch: Vec<T> = Vec::new();
    let mut lo = 0;
    while lo < n {
        let mut len = count_run(&mut data[lo..], &mut is_less, probe);
        if len < minrun {
            let forced = minrun.min(n - lo);
            binary_insertion_sort(&mut data[lo..lo + forced], len, &mut is_less, probe, Region::Data);
            len = forced;
        }
        runs.push(Run { start: lo, len });
        lo += len;
        merge_collapse(data, &mut runs, &mut scratch, &mut is_less, probe);
    }
    while runs.len() > 1 {
        let at = runs.len() - 2;
        let at = if at > 0 && runs[at - 1].len < runs[at + 1].len { at - 1 } else { at };
        merge_at(data, &mut runs, at, &mut scratch, &mut is_less, probe);
    }
}

/// Length of the run starting at `data[0]`; a strictly descending run is
/// reversed in place so it becomes ascending.
fn count_run<T, F, P>(data: &mut [T], is_less: &mut F, probe: &P) -> usize
where
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    let n = data.len();
    if n < 2 {
        return n;
    }
    let mut end = 2;
    if is_less(&data[1], &data[0]) {
        while end < n && is_less(&data[end], &data[end - 1]) {
            end += 1;
        }
        reverse_probed(data, 0, end - 1, probe, Region::Data);
    } else {
        while end < n && !is_less(&data[end], &data[end - 1]) {
            end += 1;
        }
    }
    end
}

/// Restores `len[i-2] > len[i-1] + len[i]` and `len[i-1] > len[i]` for the
/// top of the stack, including the fourth-from-top check.
fn merge_collapse<T, F, P>(data: &mut [T], runs: &mut Vec<Run>, scratch: &mut Vec<T>, is_less: &mut F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    while runs.len() > 1 {
        let n = runs.len();
        let at = if (n >= 3 && runs[n - 3].len <= runs[n - 2].len + runs[n - 1].len)
            || (n >= 4 && runs[n - 4].len <= runs[n - 3].len + runs[n - 2].len)
        {
            if runs[n - 3].len < runs[n - 1].len {
                n - 3
            } else {
                n - 2
            }
        } else if runs[n - 2].len <= runs[n - 1].len {
            n - 2
        } else {
            break;
        };
        merge_at(data, runs, at, scratch, is_less, probe);
    }
}

/// Merges stack entries `at` and `at + 1`, copying the shorter one out.
fn merge_at<T, F, P>(data: &mut [T], runs: &mut Vec<Run>, at: usize, scratch: &mut Vec<T>, is_less: &mut F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    let a = runs[at];
    let b = runs[at + 1];
    debug_assert_eq!(a.start + a.len, b.start);
    runs[at] = Run { start: a.start, len: a.len + b.len };
    runs.remove(at + 1);

    probe.merge();
    let seg = &mut data[a.start..b.start + b.len];
    let mid = a.len;
    scratch.clear();
    if a.len <= b.len {
        scratch.extend_from_slice(&seg[..mid]);
        probe.alloc(mid);
        probe.write(Region::Buffer { offset: 0 }, 0, mid);
        let (mut i, mut j, mut k) = (0, mid, 0);
        while i < scratch.len() && j < seg.len() {
            if is_less(&seg[j], &scratch[i]) {
                seg[k] = seg[j].clone();
                j += 1;
            } else {
                seg[k] = scratch[i].clone();
                i += 1;
            }
            k += 1;
        }
        let rest = scratch.len() - i;
        seg[k..k + rest].clone_from_slice(&scratch[i..]);
        probe.write(Region::Data, a.start, k + rest);
        probe.release(mid);
    } else {
        scratch.extend_from_slice(&seg[mid..]);
        let rlen = scratch.len();
        probe.alloc(rlen);
        probe.write(Region::Buffer { offset: 0 }, 0, rlen);
        // Backward: on ties the right-hand element goes last.
        let (mut i, mut j, mut k) = (mid, rlen, seg.len());
        while i > 0 && j > 0 {
            k -= 1;
            if is_less(&scratch[j - 1], &seg[i - 1]) {
                seg[k] = seg[i - 1].clone();
                i -= 1;
            } else {
                seg[k] = scratch[j - 1].clone();
                j -= 1;
            }
        }
        seg[..j].clone_from_slice(&scratch[..j]);
        probe.write(Region::Data, a.start, seg.len() - i);
        probe.release(rlen);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::SortStats;

    fn lt(a: &(u32, usize), b: &(u32, usize)) -> bool {
        a.0 < b.0
    }

    fn lcg(seed: u64, n: usize, modulo: u32) -> Vec<(u32, usize)> {
        let mut s = seed;
        (0..n)
            .map(|i| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (((s >> 33) as u32) % modulo, i)
            })
            .collect()
    }

    fn sorted_copy(v: &[(u32, usize)]) -> Vec<(u32, usize)> {
        let mut e = v.to_vec();
        e.sort_unstable();
        e
    }

    #[test]
    fn minrun_bounds() {
        let cfg = TimsortConfig::default();
        for n in [63usize, 64, 65, 1 << 20, (1 << 20) + 1] {
            let m = cfg.minrun(n);
            assert!((32..=64).contains(&m), "n={n} minrun={m}");
        }
        for n in 32..5000 {
            assert!((32..=64).contains(&cfg.minrun(n)));
        }
        assert_eq!(cfg.minrun(50), 50);
        assert!(TimsortConfig::new(32, 60).is_err());
    }

    #[test]
    fn short_input_is_one_insertion_run() {
        let mut v = lcg(3, 50, 1000);
        let want = sorted_copy(&v);
        let stats = SortStats::new();
        timsort_like(&mut v, &TimsortConfig::default(), lt, &stats);
        assert_eq!(v, want);
        assert_eq!(stats.merges(), 0);
    }

    #[test]
    fn two_sorted_halves_merge_once() {
        let mut left = lcg(5, 500, 1_000_000);
        let mut right = lcg(6, 500, 1_000_000);
        left.sort_unstable();
        right.sort_unstable();
        let mut v: Vec<(u32, usize)> = left.into_iter().chain(right).enumerate().map(|(i, (k, _))| (k, i)).collect();
        let want = sorted_copy(&v);
        let stats = SortStats::new();
        timsort_like(&mut v, &TimsortConfig::default(), lt, &stats);
        assert_eq!(v, want);
        assert_eq!(stats.merges(), 1);
    }

    #[test]
    fn duplicate_heavy_is_stable() {
        for seed in 0..20 {
            let mut v = lcg(seed, 1000, 10);
            let want = sorted_copy(&v);
            timsort_like(&mut v, &TimsortConfig::default(), lt, &());
            assert_eq!(v, want);
        }
    }
}
