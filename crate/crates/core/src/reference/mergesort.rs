//! Top-down mergesort baselines with two run knots: a strictly-descending
//! segment is reversed in one pass, and the merge is skipped when the two
//! sorted halves are already in order.

use crate::instrument::{Probe, Region};
use crate::persian::reverse_probed;

/// Mergesort with an auxiliary copy of the whole input (M1).
///
/// Recursion alternates the roles of `data` and the auxiliary copy, so each
/// level merges straight into its destination without copying back.
pub fn mergesort_full_aux<T, F, P>(data: &mut [T], mut is_less: F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    let n = data.len();
    if n < 2 {
        return;
    }
    probe.alloc(n);
    // Both arrays must hold the input before the first split.
    let mut aux = data.to_vec();
    probe.write(Region::Buffer { offset: 0 }, 0, n);
    m1(data, &mut aux, 0, n - 1, Side::Data, &mut is_less, probe);
    probe.release(n);
}

#[derive(Clone, Copy)]
enum Side {
    Data,
    Aux,
}

impl Side {
    fn other(self) -> Self {
        match self {
            Side::Data => Side::Aux,
            Side::Aux => Side::Data,
        }
    }

    fn region(self) -> Region {
        match self {
            Side::Data => Region::Data,
            Side::Aux => Region::Buffer { offset: 0 },
        }
    }
}

/// Sorts `a[start..=end]` into `a`. On entry `a` and `b` hold the same
/// elements over that range; `b` is scratch. `side` says which array `a` is.
fn m1<T, F, P>(a: &mut [T], b: &mut [T], start: usize, end: usize, side: Side, is_less: &mut F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    if start >= end {
        return;
    }
    if strictly_descending(&a[start..=end], is_less) {
        reverse_probed(a, start, end, probe, side.region());
        return;
    }
    let m = start + (end - start) / 2;
    m1(b, a, start, m, side.other(), is_less, probe);
    m1(b, a, m + 1, end, side.other(), is_less, probe);

    if !is_less(&b[m + 1], &b[m]) {
        a[start..=end].clone_from_slice(&b[start..=end]);
        probe.write(side.region(), start, end - start + 1);
        return;
    }
    probe.merge();
    merge_into(&b[start..=m], &b[m + 1..=end], &mut a[start..=end], is_less, probe, side.region(), start);
}

/// Mergesort with an auxiliary buffer of `ceil(n / 2)` elements (M2).
///
/// Merges in place: the left half is copied out and merged back with the
/// right half, which is still in `data`.
pub fn mergesort_half_aux<T, F, P>(data: &mut [T], mut is_less: F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    let n = data.len();
    if n < 2 {
        return;
    }
    let cap = n.div_ceil(2);
    probe.alloc(cap);
    let mut aux: Vec<T> = Vec::with_capacity(cap);
    m2(data, &mut aux, 0, n - 1, &mut is_less, probe);
    debug_assert!(aux.capacity() == cap);
    probe.release(cap);
}

fn m2<T, F, P>(ar: &mut [T], aux: &mut Vec<T>, start: usize, end: usize, is_less: &mut F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    if start >= end {
        return;
    }
    if strictly_descending(&ar[start..=end], is_less) {
        reverse_probed(ar, start, end, probe, Region::Data);
        return;
    }
    let m = start + (end - start) / 2;
    m2(ar, aux, start, m, is_less, probe);
    m2(ar, aux, m + 1, end, is_less, probe);

    if !is_less(&ar[m + 1], &ar[m]) {
        return;
    }
    probe.merge();
    aux.clear();
    aux.extend_from_slice(&ar[start..=m]);
    probe.write(Region::Buffer { offset: 0 }, 0, aux.len());

    // Forward merge: the write cursor never passes the right-half cursor.
    let (mut i, mut j, mut k) = (0, m + 1, start);
    while i < aux.len() && j <= end {
        if is_less(&ar[j], &aux[i]) {
            ar[k] = ar[j].clone();
            j += 1;
        } else {
            ar[k] = aux[i].clone();
            i += 1;
        }
        probe.write(Region::Data, k, 1);
        k += 1;
    }
    let rest = aux.len() - i;
    ar[k..k + rest].clone_from_slice(&aux[i..]);
    probe.write(Region::Data, k, rest);
}

fn strictly_descending<T, F: FnMut(&T, &T) -> bool>(seg: &[T], is_less: &mut F) -> bool {
    seg.windows(2).all(|w| is_less(&w[1], &w[0]))
}

/// Stable two-way merge of `left` and `right` into `out`.
fn merge_into<T, F, P>(left: &[T], right: &[T], out: &mut [T], is_less: &mut F, probe: &P, region: Region, base: usize)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    let (mut i, mut j) = (0, 0);
    for slot in out.iter_mut() {
        let take_right = i == left.len() || (j < right.len() && is_less(&right[j], &left[i]));
        if take_right {
            *slot = right[j].clone();
            j += 1;
        } else {
            *slot = left[i].clone();
            i += 1;
        }
    }
    probe.write(region, base, out.len());
}
