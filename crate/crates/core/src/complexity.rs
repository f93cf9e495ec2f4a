//! Subword complexity on finite prefixes and eventual-periodicity detection.
//!
//! Factor counts come from a suffix array with its LCP array: the number of
//! distinct factors of length `n` in `P` is `|P| − n + 1` minus the number of
//! adjacent suffix pairs whose common prefix has length at least `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{SequenceSource, Symbol};

/// Suffix array by prefix doubling.
pub fn suffix_array(s: &[Symbol]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return sa;
    }
    let mut rank: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    let mut tmp = vec![0usize; n];
    let mut k = 1;
    loop {
        // rank of i+k, shifted so "past the end" sorts first
        let key = |i: usize, rank: &[usize]| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i, &rank));
        tmp[sa[0]] = 0;
        for w in 1..n {
            let bump = usize::from(key(sa[w - 1], &rank) != key(sa[w], &rank));
            tmp[sa[w]] = tmp[sa[w - 1]] + bump;
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 {
            return sa;
        }
        k *= 2;
    }
}

/// Kasai's algorithm: `lcp[i]` is the common prefix length of suffixes
/// `sa[i-1]` and `sa[i]`; `lcp[0] = 0`.
pub fn lcp_array(s: &[Symbol], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p] = i;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// `counts[n-1]` = number of distinct factors of length `n`, `1 ≤ n ≤ n_max`.
pub fn factor_counts(p: &[Symbol], n_max: usize) -> Vec<usize> {
    let len = p.len();
    let n_max = n_max.min(len);
    let sa = suffix_array(p);
    let lcp = lcp_array(p, &sa);
    // at_least[n] = #{i : lcp[i] ≥ n}
    let mut hist = vec![0usize; n_max + 2];
    for &h in lcp.iter().skip(1) {
        hist[h.min(n_max + 1)] += 1;
    }
    let mut at_least = vec![0usize; n_max + 2];
    for n in (0..=n_max).rev() {
        at_least[n] = at_least[n + 1] + hist[n + 1];
    }
    // at_least[n] currently counts lcp > n; shift by one
    (1..=n_max).map(|n| (len - n + 1) - at_least[n - 1]).collect()
}

/// Number of distinct length-`n` factors of `p`.
pub fn factor_count(p: &[Symbol], n: usize) -> Result<usize> {
    if n == 0 || n > p.len() {
        return Err(Error::WindowTooShort { n, len: p.len() });
    }
    Ok(factor_counts(p, n)[n - 1])
}

/// `p_L(n)` for `1 ≤ n ≤ n_max`, measured on the prefix of length `L`.
///
/// Counts are lower bounds for the true complexity: a factor can first
/// appear beyond any finite window. `stable[n-1]` records whether the count
/// was already reached on the prefix of length `L/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub n_max: usize,
    pub window: usize,
    pub counts: Vec<usize>,
    pub stable: Vec<bool>,
}

impl ComplexityProfile {
    pub fn count(&self, n: usize) -> usize {
        self.counts[n - 1]
    }

    pub fn all_stable(&self) -> bool {
        self.stable.iter().all(|&s| s)
    }
}

/// Default window: `max(10^5, 64·n_max)`.
pub fn default_window(n_max: usize) -> usize {
    100_000usize.max(64 * n_max)
}

pub fn complexity_profile(a: &SequenceSource, n_max: usize, window: usize) -> Result<ComplexityProfile> {
    if n_max == 0 || window < 2 * n_max {
        return Err(Error::WindowTooShort { n: n_max, len: window });
    }
    let (full, half) = a.with_prefix(window, |p| (factor_counts(p, n_max), factor_counts(&p[..window / 2], n_max)));
    let stable = full.iter().zip(&half).map(|(f, h)| f == h).collect();
    Ok(ComplexityProfile { n_max, window, counts: full, stable })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EventualPeriod {
    pub preperiod: usize,
    pub period: usize,
}

/// Smallest `(q, s)`, ordered by `q + s` then `s`, with `P[i] = P[i+s]` for
/// every `q < i ≤ |P| − s` (1-based). Only reported when the period repeats
/// at least twice, i.e. `q + 2s ≤ |P|`.
pub fn detect_eventual_period(p: &[Symbol]) -> Option<EventualPeriod> {
    let len = p.len();
    let mut best: Option<EventualPeriod> = None;
    for s in 1..=len / 2 {
        if let Some(b) = best {
            if s > b.preperiod + b.period {
                break;
            }
        }
        // minimal preperiod for this period: last 1-based mismatch position
        let q = (0..len - s).rev().find(|&i| p[i] != p[i + s]).map_or(0, |i| i + 1);
        if q + 2 * s > len {
            continue;
        }
        let cand = EventualPeriod { preperiod: q, period: s };
        let better = match best {
            None => true,
            Some(b) => (q + s, s) < (b.preperiod + b.period, b.period),
        };
        if better {
            best = Some(cand);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;
    use std::collections::HashSet;

    fn brute_count(p: &[Symbol], n: usize) -> usize {
        p.windows(n).collect::<HashSet<_>>().len()
    }

    fn digits(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| (b - b'0') as Symbol).collect()
    }

    #[test]
    fn factor_count_examples() {
        assert_eq!(factor_count(&digits("0110100110010"), 2).unwrap(), 4);
        assert_eq!(factor_count(&digits("0000"), 2).unwrap(), 1);
        assert!(matches!(factor_count(&digits("01"), 3), Err(Error::WindowTooShort { .. })));
    }

    #[test]
    fn suffix_array_is_sorted() {
        let s = digits("2102210120112021");
        let sa = suffix_array(&s);
        for w in sa.windows(2) {
            assert!(s[w[0]..] < s[w[1]..]);
        }
    }

    #[test]
    fn factor_counts_match_brute_force_on_random_words() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as u32
        };
        for trial in 0..40 {
            let len = 1 + (next() as usize % 2000);
            let k = 1 + (next() % 4);
            let p: Vec<Symbol> = (0..len).map(|_| next() % k).collect();
            let n_max = len.min(40);
            let fast = factor_counts(&p, n_max);
            for n in 1..=n_max {
                assert_eq!(fast[n - 1], brute_count(&p, n), "trial {trial} len {len} n {n}");
            }
        }
    }

    #[test]
    fn periodic_source_profile_is_bounded() {
        // preperiod 3, period 4
        let head = vec![2, 2, 1];
        let per = vec![0, 1, 1, 2];
        let a = SequenceSource::eventually_periodic("ep", Alphabet::digits(3), head, per).unwrap();
        let prof = complexity_profile(&a, 20, 400).unwrap();
        for n in 1..=20 {
            assert!(prof.count(n) <= 3 + 4);
        }
    }

    #[test]
    fn detect_period_examples() {
        assert_eq!(detect_eventual_period(&digits("0111111")), Some(EventualPeriod { preperiod: 1, period: 1 }));
        assert_eq!(detect_eventual_period(&digits("01")), None);
        assert_eq!(detect_eventual_period(&digits("010101")), Some(EventualPeriod { preperiod: 0, period: 2 }));
        // 1/6 in base 10 by long division
        let mut r = 1u32;
        let d: Vec<Symbol> = (0..20)
            .map(|_| {
                r *= 10;
                let q = r / 6;
                r %= 6;
                q
            })
            .collect();
        assert_eq!(detect_eventual_period(&d), Some(EventualPeriod { preperiod: 1, period: 1 }));
    }

    #[test]
    fn detect_period_needs_two_repetitions() {
        // "0123" + "45": no period s with q + 2s ≤ 6 besides trivial failure
        assert_eq!(detect_eventual_period(&digits("012345")), None);
        assert_eq!(detect_eventual_period(&digits("0123423")), None);
        assert_eq!(detect_eventual_period(&digits("01234234")), Some(EventualPeriod { preperiod: 2, period: 3 }));
    }
}
