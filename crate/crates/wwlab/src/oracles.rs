//! Small self-contained brute-force counters, written directly from the
//! combinatorial definitions. They share no code with the series engine or
//! the coloured enumeration, which is what makes them usable as independent
//! cross-checks.

/// `p(n)` for `n = 0..=n_max`, counted by enumerating partitions by largest
/// part.
pub fn ordinary_partition_counts(n_max: usize) -> Vec<u64> {
    fn count(n: usize, max_part: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=n.min(max_part)).map(|k| count(n - k, k)).sum()
    }
    (0..=n_max).map(|n| count(n, n)).collect()
}

/// Partitions of `n` into distinct parts not congruent to 1 or 5 mod 6.
pub fn distinct_not_pm1_mod6_counts(n_max: usize) -> Vec<u64> {
    fn allowed(k: usize) -> bool {
        k % 6 != 1 && k % 6 != 5
    }
    fn count(n: usize, max_part: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=n.min(max_part))
            .filter(|&k| allowed(k))
            .map(|k| count(n - k, k - 1))
            .sum()
    }
    (0..=n_max).map(|n| count(n, n)).collect()
}

/// Partitions of `n` into parts greater than 1 where consecutive parts
/// differ by at least 2, and by at least 4 unless they add up to a multiple
/// of 3 — the original Capparelli condition, enumerated verbatim.
pub fn capparelli_statement_counts(n_max: usize) -> Vec<u64> {
    fn count(n: usize, prev: Option<usize>) -> u64 {
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for k in 2..=n {
            if let Some(p) = prev {
                if k + 2 > p {
                    continue;
                }
                if k + 4 > p && (p + k) % 3 != 0 {
                    continue;
                }
            }
            total += count(n - k, Some(k));
        }
        total
    }
    // Build downward: choose the largest part first.
    fn count_top(n: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (2..=n).map(|k| count(n - k, Some(k))).sum()
    }
    (0..=n_max).map(count_top).collect()
}

/// `counts[n][i]` = partitions of `n` into `i` distinct odd parts.
pub fn distinct_odd_by_count(n_max: usize) -> Vec<Vec<u64>> {
    let mut counts = vec![vec![0u64; n_max + 2]; n_max + 1];
    fn rec(remaining: usize, max_part: usize, parts: usize, n: usize, counts: &mut [Vec<u64>]) {
        counts[n - remaining][parts] += 1;
        let mut k = max_part.min(remaining);
        if k.is_multiple_of(2) {
            k = k.saturating_sub(1);
        }
        while k >= 1 {
            rec(remaining - k, k.saturating_sub(2), parts + 1, n, counts);
            k = k.saturating_sub(2);
            if k == 0 {
                break;
            }
        }
    }
    // One sweep from the full budget marks every reachable (weight, count).
    rec(n_max, n_max, 0, n_max, &mut counts);
    counts
}

/// Partitions of `n` into odd parts.
pub fn odd_parts_counts(n_max: usize) -> Vec<u64> {
    fn count(n: usize, max_part: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        let mut k = max_part.min(n);
        if k.is_multiple_of(2) {
            k -= 1;
        }
        while k >= 1 {
            total += count(n - k, k);
            if k == 1 {
                break;
            }
            k -= 2;
        }
        total
    }
    (0..=n_max).map(|n| count(n, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_numbers() {
        assert_eq!(
            ordinary_partition_counts(11),
            vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56]
        );
    }

    #[test]
    fn capparelli_series_small_values() {
        // C(n) for n = 0..: 1,0,1,1,1,1,2,...; e.g. C(6) counts {6} and {4,2}.
        let c = capparelli_statement_counts(12);
        assert_eq!(c[..7], [1, 0, 1, 1, 1, 1, 2]);
        let d = distinct_not_pm1_mod6_counts(12);
        assert_eq!(c, d);
    }

    #[test]
    fn distinct_odd_counts() {
        let t = distinct_odd_by_count(8);
        // 8 = 7+1 = 5+3 are the two ways into two distinct odd parts.
        assert_eq!(t[8][2], 2);
        assert_eq!(t[8][1], 0);
        assert_eq!(t[0][0], 1);
        // Row sums match the distinct-odd partition numbers 1,1,0,1,1,1,1,1,2.
        let sums: Vec<u64> = t.iter().map(|row| row.iter().sum()).collect();
        assert_eq!(sums, vec![1, 1, 0, 1, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn odd_part_counts_match_distinct_counts() {
        // Euler: partitions into odd parts = partitions into distinct parts.
        fn distinct(n: usize, max: usize) -> u64 {
            if n == 0 {
                return 1;
            }
            (1..=n.min(max)).map(|k| distinct(n - k, k - 1)).sum()
        }
        let odd = odd_parts_counts(14);
        for (n, &count) in odd.iter().enumerate() {
            assert_eq!(count, distinct(n, n), "n={n}");
        }
    }
}
