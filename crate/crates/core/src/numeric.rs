//! Certified enclosures over exact rationals.
//!
//! Endpoints are rationals; operations that cannot stay exact (square roots,
//! logarithms, long products) round outward to dyadic rationals with a given
//! number of significant bits, so the true value always lies inside.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

fn bits(x: &BigInt) -> i64 {
    x.bits() as i64
}

/// Rough `log2 |x|`, within one of the truth.
pub fn log2_estimate(x: &Rational) -> i64 {
    bits(x.numer()) - bits(x.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Rounds `x` to a dyadic rational with about `prec` significant bits, in the
/// given direction.
pub fn round_dyadic(x: &Rational, prec: u32, dir: Round) -> Rational {
    if x.is_zero() || x.denom().is_one() && bits(x.numer()) <= prec as i64 {
        return x.clone();
    }
    let scale = prec as i64 - log2_estimate(x);
    let scaled = x * pow2(scale);
    let n = match dir {
        Round::Down => scaled.floor(),
        Round::Up => scaled.ceil(),
    };
    n * pow2(-scale)
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn round(&self, prec: u32) -> Self {
        Interval { lo: round_dyadic(&self.lo, prec, Round::Down), hi: round_dyadic(&self.hi, prec, Round::Up) }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        self.mul(&Interval::point(k.clone()))
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, o: &Interval) -> Interval {
        assert!(!o.contains_zero(), "division by an interval containing zero");
        let inv = Interval::new(o.hi.recip(), o.lo.recip());
        self.mul(&inv)
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval { lo: Rational::zero(), hi: self.lo.abs().max(self.hi.abs()) }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Interval containing `floor(x)` candidates: `(floor(lo), floor(hi))`.
    pub fn floors(&self) -> (BigInt, BigInt) {
        (self.lo.floor().to_integer(), self.hi.floor().to_integer())
    }

    /// `√x` for `x ≥ 0`, enclosed with about `prec` bits.
    pub fn sqrt(&self, prec: u32) -> Interval {
        Interval { lo: sqrt_bound(&self.lo, prec, Round::Down), hi: sqrt_bound(&self.hi, prec, Round::Up) }
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(&self, prec: u32) -> Interval {
        assert!(self.lo.is_positive(), "logarithm of a non-positive interval");
        Interval { lo: ln_bound(&self.lo, prec, Round::Down), hi: ln_bound(&self.hi, prec, Round::Up) }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64().unwrap_or(f64::NAN), self.hi.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_sci(&self.lo, 15, Round::Down), format_sci(&self.hi, 15, Round::Up))
    }
}

/// Directed bound on `√x`, `x ≥ 0`.
pub fn sqrt_bound(x: &Rational, prec: u32, dir: Round) -> Rational {
    assert!(!x.is_negative(), "square root of a negative number");
    if x.is_zero() {
        return Rational::zero();
    }
    // √(n/d) = √(n·d·4^m) / (d·2^m)
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let m = prec as usize + 2;
    let radicand: BigUint = (n * d) << (2 * m);
    let s = radicand.sqrt();
    let exact = &s * &s == radicand;
    let top = match dir {
        Round::Up if !exact => s + 1u32,
        _ => s,
    };
    Rational::new(BigInt::from_biguint(Sign::Plus, top), BigInt::from_biguint(Sign::Plus, d << m))
}

// 2·atanh(z) = ln((1+z)/(1−z)) for 0 ≤ z < 1, bounded in direction `dir`.
fn two_atanh(z: &Rational, prec: u32, dir: Round) -> Rational {
    if z.is_zero() {
        return Rational::zero();
    }
    let work = prec + 16;
    let z2 = round_dyadic(&(z * z), work, dir);
    let mut power = z.clone();
    let mut sum = Rational::zero();
    let mut j: u64 = 0;
    let eps = pow2(-(work as i64) - 4);
    loop {
        let term = round_dyadic(&(&power / int(2 * j + 1)), work, dir);
        sum = round_dyadic(&(sum + term), work, dir);
        power = round_dyadic(&(&power * &z2), work, dir);
        j += 1;
        if power < eps {
            break;
        }
    }
    if dir == Round::Up {
        // remaining terms: Σ_{i≥j} z^{2i+1}/(2i+1) ≤ power / ((2j+1)(1 − z²))
        let one = Rational::one();
        let tail = &power / (int(2 * j + 1) * (&one - &z2));
        sum = round_dyadic(&(sum + tail), work, Round::Up);
    }
    sum * int(2)
}

fn ln2_bound(prec: u32, dir: Round) -> Rational {
    two_atanh(&rat(1, 3), prec, dir)
}

/// Directed bound on `ln x`, `x > 0`.
pub fn ln_bound(x: &Rational, prec: u32, dir: Round) -> Rational {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    // x = 2^e · m with m in [1, 2)
    let mut e = log2_estimate(x);
    let mut m = x * pow2(-e);
    let two = int(2);
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < Rational::one() {
        m *= &two;
        e -= 1;
    }
    let extra = 64 - (e.unsigned_abs().leading_zeros()) + 8;
    let work = prec + extra;
    let m = round_dyadic(&m, work, dir);
    let one = Rational::one();
    let z = (&m - &one) / (&m + &one);
    let ln_m = two_atanh(&z, work, dir);
    // e·ln 2 rounds the opposite way when e is negative
    let ln2_dir = if (e >= 0) == (dir == Round::Up) { Round::Up } else { Round::Down };
    let ln2 = ln2_bound(work, ln2_dir);
    round_dyadic(&(ln2 * int(e) + ln_m), prec, dir)
}

/// Scientific notation with `digits` significant digits, rounded toward
/// `-∞` (`Down`) or `+∞` (`Up`).
pub fn format_sci(x: &Rational, digits: usize, dir: Round) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let mag = x.abs();
    // rounding of the magnitude
    let mag_dir = match (neg, dir) {
        (false, d) => d,
        (true, Round::Down) => Round::Up,
        (true, Round::Up) => Round::Down,
    };
    let ten = BigInt::from(10);
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    let mut exp10 = (log2_estimate(&mag) as f64 * std::f64::consts::LOG10_2).floor() as i64;
    while pow10(exp10) > mag {
        exp10 -= 1;
    }
    while pow10(exp10 + 1) <= mag {
        exp10 += 1;
    }
    let scaled = &mag * pow10(digits as i64 - 1 - exp10);
    let mut mant = match mag_dir {
        Round::Down => scaled.floor().to_integer(),
        Round::Up => scaled.ceil().to_integer(),
    };
    if mant == num_traits::pow(ten.clone(), digits) {
        mant = num_traits::pow(ten.clone(), digits - 1);
        exp10 += 1;
    }
    let s = mant.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exp10}")
    } else {
        format!("{sign}{head}.{tail}e{exp10}")
    }
}

/// `v_p(n)` for a non-zero integer.
pub fn valuation(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// `v_p(x)` for a non-zero rational.
pub fn valuation_rat(x: &Rational, p: u64) -> i64 {
    valuation(x.numer(), p) as i64 - valuation(x.denom(), p) as i64
}

/// Distinct prime factors of `n ≥ 1`, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}
