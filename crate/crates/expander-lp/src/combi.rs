//! Zero-allocation enumeration of k-subsets in lexicographic order.
//!
//! Certification, Hall checks, and exhaustive error sweeps all iterate
//! millions of subsets; they share this one loop so every caller agrees
//! on the order (size ascending is the caller's job, lex within a size
//! happens here).

/// Calls `visit` with each k-subset of {0,..,n-1} as a sorted slice, in
/// lexicographic order. `visit` returns false to stop early; the return
/// value reports whether enumeration ran to completion.
pub(crate) fn for_each_combination<F>(n: usize, k: usize, mut visit: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if k > n {
        return true;
    }
    if k == 0 {
        return visit(&[]);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        // Advance the rightmost index that still has room.
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            if idx[pos] != pos + n - k {
                break;
            }
        }
        if idx[pos] == pos + n - k {
            return true;
        }
        idx[pos] += 1;
        for later in pos + 1..k {
            idx[later] = idx[later - 1] + 1;
        }
    }
}

/// Number of k-subsets of an n-set, saturating at u64::MAX.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lex_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn handles_edge_sizes() {
        let mut count = 0;
        for_each_combination(5, 0, |s| {
            assert!(s.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);

        count = 0;
        for_each_combination(3, 5, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 0);

        count = 0;
        for_each_combination(3, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn early_stop_reports_incomplete() {
        let mut count = 0;
        let complete = for_each_combination(6, 3, |_| {
            count += 1;
            count < 5
        });
        assert!(!complete);
        assert_eq!(count, 5);
    }

    #[test]
    fn counts_match_enumeration() {
        for n in 0..=8 {
            for k in 0..=n {
                let mut count = 0u64;
                for_each_combination(n, k, |_| {
                    count += 1;
                    true
                });
                assert_eq!(count, binomial(n, k), "n={n} k={k}");
            }
        }
        assert_eq!(binomial(52, 5), 2_598_960);
    }
}
