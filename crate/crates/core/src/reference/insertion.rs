use crate::instrument::{Probe, Region};

/// Classic linear insertion sort: stable, in place, no auxiliary memory.
pub fn insertion_sort<T, F, P>(data: &mut [T], mut is_less: F, probe: &P)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    P: Probe + ?Sized,
{
    for i in 1..data.len() {
        if !is_less(&data[i], &data[i - 1]) {
            continue;
        }
        let item = data[i].clone();
        data[i] = data[i - 1].clone();
        let mut j = i - 1;
        while j > 0 && is_less(&item, &data[j - 1]) {
            data[j] = data[j - 1].clone();
            j -= 1;
        }
        data[j] = item;
        probe.write(Region::Data, j, i - j + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::{counting_comparator, SortStats};

    #[test]
    fn empty_is_fine() {
        let mut v: Vec<i32> = vec![];
        insertion_sort(&mut v, |a, b| a < b, &());
        assert!(v.is_empty());
    }

    #[test]
    fn reversed_five_costs_ten_comparisons() {
        let mut v = vec![5, 4, 3, 2, 1];
        let stats = SortStats::new();
        insertion_sort(&mut v, counting_comparator(|a: &i32, b: &i32| a < b, &stats), &stats);
        assert_eq!(v, vec![1, 2, 3, 4, 5]);
        assert_eq!(stats.comparisons(), 10);
        assert_eq!(stats.aux_peak(), 0);
    }

    #[test]
    fn stable_on_ties() {
        let mut v = vec![(2, 0), (1, 1), (2, 2), (1, 3)];
        insertion_sort(&mut v, |a, b| a.0 < b.0, &());
        assert_eq!(v, vec![(1, 1), (1, 3), (2, 0), (2, 2)]);
    }
}
