//! Digit sequences attached to numbers: base-`b` expansions, greedy
//! β-expansions, Hensel (p-adic) expansions, digit-pattern counts and
//! lacunary digit strings.

mod algebraic;
mod beta;
mod hensel;
mod quadratic;

pub use algebraic::{classify_algebraic_integer, root_discs, AlgebraicIntegerSpec, AlgebraicKind, RootDisc};
pub use beta::{beta_expansion, resum_field, resum_rational, Beta, BetaExpansion, BetaInput};
pub use hensel::{hensel_digits, HenselExpansion};
pub use quadratic::{QuadElem, QuadField};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::words::{Alphabet, SequenceSource, Symbol};

fn check_base(b: u64) -> Result<()> {
    if b < 2 || b > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!("base must be in 2..2^32, got {b}")));
    }
    Ok(())
}

fn check_unit_interval(xi: &Rational) -> Result<()> {
    if !xi.is_positive() || *xi >= Rational::from_integer(1.into()) {
        return Err(Error::OutOfRange(format!("{xi} is not in (0, 1)")));
    }
    Ok(())
}

/// Digits of `ξ ∈ (0,1)` in base `b` by long division. Terminating
/// expansions continue with zeros.
pub fn b_adic_digits(xi: &Rational, b: u64) -> Result<SequenceSource> {
    check_base(b)?;
    check_unit_interval(xi)?;
    let den = xi.denom().clone();
    let base = BigInt::from(b);
    let mut rem = xi.numer().clone();
    let id = format!("b-adic({xi},{b})");
    Ok(SequenceSource::from_fn(id, Alphabet::digits(b as u32), move |_| {
        let (q, r) = (&rem * &base).div_rem(&den);
        rem = r;
        q.to_u32().expect("digit below base")
    }))
}

/// Exponent sets for [`lacunary_digits`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentSet {
    /// `base^n`, `n ≥ 1`.
    Powers(u64),
    /// `n²`, `n ≥ 1`.
    Squares,
    /// A finite strictly increasing list of positive integers.
    Explicit(Vec<u64>),
}

impl ExponentSet {
    pub fn contains(&self, k: u64) -> bool {
        match self {
            ExponentSet::Powers(base) => {
                let mut x = k;
                if x < *base {
                    return false;
                }
                while x.is_multiple_of(*base) {
                    x /= base;
                }
                x == 1
            }
            ExponentSet::Squares => k >= 1 && k.sqrt() * k.sqrt() == k,
            ExponentSet::Explicit(v) => v.binary_search(&k).is_ok(),
        }
    }

    /// Parses `pow:B`, `squares` or a comma-separated list (possibly empty).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some(b) = t.strip_prefix("pow:") {
            let b: u64 = b.parse().map_err(|_| Error::InvalidArgument(format!("bad power base {b:?}")))?;
            if b < 2 {
                return Err(Error::InvalidArgument("power base must be at least 2".into()));
            }
            return Ok(ExponentSet::Powers(b));
        }
        if t == "squares" {
            return Ok(ExponentSet::Squares);
        }
        let v: std::result::Result<Vec<u64>, _> =
            t.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect();
        let v = v.map_err(|_| Error::InvalidArgument(format!("bad exponent list {t:?}")))?;
        if v.contains(&0) || v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("exponents must be positive and strictly increasing".into()));
        }
        Ok(ExponentSet::Explicit(v))
    }
}

/// Digit `k ≥ 1` is 1 when `k` is in the set, else 0.
pub fn lacunary_digits(exponents: ExponentSet, b: u64) -> Result<SequenceSource> {
    check_base(b)?;
    if let ExponentSet::Explicit(v) = &exponents {
        if v.contains(&0) || v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("exponents must be positive and strictly increasing".into()));
        }
    }
    let id = format!("lacunary({exponents:?},{b})");
    Ok(SequenceSource::from_fn(id, Alphabet::digits(b as u32), move |i| Symbol::from(exponents.contains(i as u64 + 1))))
}

/// Most significant digit first; `0` renders as a single zero.
pub fn msb_digits(mut n: u64, k: u64) -> Vec<u32> {
    if n == 0 {
        return vec![0];
    }
    let mut d = Vec::new();
    while n > 0 {
        d.push((n % k) as u32);
        n /= k;
    }
    d.reverse();
    d
}

/// Overlapping occurrences of `pattern` in the base-`k` digits of `n`.
pub fn count_occurrences(n: u64, k: u64, pattern: &[u32]) -> usize {
    let d = msb_digits(n, k);
    if pattern.len() > d.len() {
        return 0;
    }
    d.windows(pattern.len()).filter(|w| *w == pattern).count()
}

/// `e(n)`: occurrences of `pattern` in the base-`k` expansion of `n`, mod `b`.
/// Index `i` of the returned sequence holds `e(i − 1)`.
pub fn pattern_count_digits(k: u64, pattern: &[u32], b: u64) -> Result<SequenceSource> {
    check_base(k)?;
    check_base(b)?;
    if pattern.is_empty() || pattern.iter().all(|&d| d == 0) {
        return Err(Error::InvalidWord("pattern must be non-empty and not all zeros".into()));
    }
    if let Some(&d) = pattern.iter().find(|&&d| d as u64 >= k) {
        return Err(Error::InvalidWord(format!("digit {d} is not a base-{k} digit")));
    }
    let pat = pattern.to_vec();
    let id = format!("pattern(k={k},P={},b={b})", pat.iter().map(u32::to_string).collect::<Vec<_>>().join(""));
    Ok(SequenceSource::from_fn(id, Alphabet::digits(b as u32), move |i| {
        (count_occurrences(i as u64, k, &pat) as u64 % b) as Symbol
    }))
}

/// `Σ_{k=1}^{len} d_k b^{-k}` exactly.
pub fn digits_value(digits: &[i64], b: u64) -> Rational {
    let base = BigInt::from(b);
    let num = digits.iter().fold(BigInt::zero(), |acc, &d| acc * &base + d);
    Rational::new(num, num_traits::pow(base, digits.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{generate, KAutomaton};
    use crate::complexity::detect_eventual_period;
    use crate::numeric::{pow2, rat};

    #[test]
    fn b_adic_examples() {
        assert_eq!(b_adic_digits(&rat(1, 3), 10).unwrap().render_prefix(6), "333333");
        assert_eq!(b_adic_digits(&rat(1, 6), 10).unwrap().render_prefix(6), "166666");
        assert_eq!(b_adic_digits(&rat(1, 2), 2).unwrap().render_prefix(5), "10000");
        assert!(b_adic_digits(&rat(3, 2), 10).is_err());
        assert!(b_adic_digits(&rat(0, 1), 10).is_err());
        assert!(b_adic_digits(&rat(1, 2), 1).is_err());
    }

    #[test]
    fn b_adic_resummation() {
        for (n, d, b) in [(1, 7, 10), (5, 12, 10), (3, 11, 2), (22, 23, 3), (1, 1024, 2), (7, 360, 6)] {
            let xi = rat(n, d);
            let a = b_adic_digits(&xi, b).unwrap();
            let digits = a.digit_values(200);
            let p = a.with_prefix(200, detect_eventual_period).unwrap();
            let head = digits_value(&digits[..p.preperiod], b);
            let block = digits_value(&digits[p.preperiod..p.preperiod + p.period], b);
            // head + b^{-q} · block / (1 − b^{-s})
            let bq = Rational::from_integer(num_traits::pow(BigInt::from(b), p.preperiod));
            let bs = Rational::from_integer(num_traits::pow(BigInt::from(b), p.period));
            let tail = block * &bs / (&bs - Rational::from_integer(1.into())) / bq;
            assert_eq!(head + tail, xi, "{n}/{d} base {b}");
        }
    }

    #[test]
    fn lacunary_examples() {
        let kempner = lacunary_digits(ExponentSet::Powers(2), 2).unwrap();
        let ones: Vec<usize> = (1..=300).filter(|&i| kempner.get(i) == 1).collect();
        assert_eq!(ones, vec![2, 4, 8, 16, 32, 64, 128, 256]);
        let empty = lacunary_digits(ExponentSet::Explicit(vec![]), 10).unwrap();
        assert!((1..100).all(|i| empty.get(i) == 0));
        let sq = lacunary_digits(ExponentSet::Squares, 2).unwrap();
        let ones: Vec<usize> = (1..=50).filter(|&i| sq.get(i) == 1).collect();
        assert_eq!(ones, vec![1, 4, 9, 16, 25, 36, 49]);
        assert!(lacunary_digits(ExponentSet::Explicit(vec![3, 2]), 2).is_err());
        assert_eq!(ExponentSet::parse("pow:3").unwrap(), ExponentSet::Powers(3));
        assert_eq!(ExponentSet::parse("1, 5,7").unwrap(), ExponentSet::Explicit(vec![1, 5, 7]));
        assert_eq!(ExponentSet::parse("").unwrap(), ExponentSet::Explicit(vec![]));
        assert!(ExponentSet::parse("4,4").is_err());
    }

    fn brute_count(n: u64, k: u64, pat: &str) -> usize {
        let s: String = msb_digits(n, k).iter().map(|d| char::from_digit(*d, 36).unwrap()).collect();
        (0..s.len()).filter(|&i| s[i..].starts_with(pat)).count()
    }

    #[test]
    fn pattern_examples() {
        let e = pattern_count_digits(3, &[1], 2).unwrap();
        for n in 0..=100u64 {
            assert_eq!(e.get(n as usize + 1) as u64, n % 2);
        }
        let tm = pattern_count_digits(2, &[1], 2).unwrap();
        assert_eq!(tm.render_prefix(13), "0110100110010");
        let rs = pattern_count_digits(2, &[1, 1], 2).unwrap();
        for n in 0..(1u64 << 12) {
            assert_eq!(rs.get(n as usize + 1) as usize, brute_count(n, 2, "11") % 2);
        }
        assert!(pattern_count_digits(2, &[0, 0], 2).is_err());
        assert!(pattern_count_digits(2, &[2], 2).is_err());
        assert!(pattern_count_digits(2, &[], 2).is_err());
    }

    #[test]
    fn pattern_thue_morse_matches_automaton() {
        let tm = pattern_count_digits(2, &[1], 2).unwrap();
        let aut = generate(&KAutomaton::thue_morse());
        assert_eq!(tm.prefix(1 << 14), aut.prefix(1 << 14));
    }

    #[test]
    fn pattern_sum_is_two_thirds() {
        let e = pattern_count_digits(3, &[1], 2).unwrap();
        let digits: Vec<i64> = (0..=60).map(|n| e.get(n + 1) as i64).collect();
        // Σ e(n) 2^{-n} = 2 · Σ e(n) 2^{-(n+1)}
        let sum = digits_value(&digits, 2) * Rational::from_integer(2.into());
        let gap = (sum - rat(2, 3)).abs();
        assert!(gap <= pow2(-58));
    }
}
