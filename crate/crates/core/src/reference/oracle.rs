use std::cmp::Ordering;

/// Returns a stably sorted copy of `data`.
///
/// Decorates each element with its index and sorts the indices by
/// `(element, index)` with the standard library's unstable sort, so it
/// shares no code with any sort in this crate.
pub fn oracle_stable_sort<T: Clone, F: FnMut(&T, &T) -> bool>(data: &[T], mut is_less: F) -> Vec<T> {
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.sort_unstable_by(|&a, &b| {
        if is_less(&data[a], &data[b]) {
            Ordering::Less
        } else if is_less(&data[b], &data[a]) {
            Ordering::Greater
        } else {
            a.cmp(&b)
        }
    });
    order.into_iter().map(|i| data[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(oracle_stable_sort(&[2, 1], |a, b| a < b), vec![1, 2]);
        let v = [(2, 0), (1, 1), (2, 2)];
        assert_eq!(oracle_stable_sort(&v, |a, b| a.0 < b.0), vec![(1, 1), (2, 0), (2, 2)]);
    }
}
