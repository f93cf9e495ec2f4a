use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::quadratic::{QuadElem, QuadField};
use crate::complexity::EventualPeriod;
use crate::error::{Error, Result};
use crate::numeric::{Interval, Rational};
use crate::poly::{count_real_roots, largest_real_root, IntPoly};

/// A base `β > 1` for greedy expansions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Beta {
    Integer(u64),
    /// Larger root of a monic quadratic.
    Quadratic(QuadField),
    /// Largest real root of a monic polynomial of degree at least 3.
    Algebraic(IntPoly),
}

impl Beta {
    pub fn golden() -> Beta {
        Beta::Quadratic(QuadField::new(-1, -1).expect("golden ratio field"))
    }

    /// `β` as the largest real root of a monic integer polynomial.
    pub fn from_poly(p: &IntPoly) -> Result<Beta> {
        if !p.is_monic() || p.degree() == 0 {
            return Err(Error::InvalidArgument(format!("{p} is not a monic non-constant polynomial")));
        }
        let beta = match p.degree() {
            1 => {
                let c = -p.coeff(0);
                match c.to_u64() {
                    Some(c) if c >= 2 => Beta::Integer(c),
                    _ => return Err(Error::InvalidArgument(format!("root of {p} is not an integer ≥ 2"))),
                }
            }
            2 => Beta::Quadratic(QuadField::from_poly(p)?),
            _ => Beta::Algebraic(p.clone()),
        };
        if count_real_roots(&beta.poly(), Some(&Rational::one()), None) == 0 {
            return Err(Error::InvalidArgument(format!("{p} has no real root above 1")));
        }
        Ok(beta)
    }

    pub fn poly(&self) -> IntPoly {
        match self {
            Beta::Integer(b) => IntPoly::new(vec![-BigInt::from(*b), BigInt::one()]),
            Beta::Quadratic(k) => k.poly(),
            Beta::Algebraic(p) => p.clone(),
        }
    }

    /// Enclosure of `β` of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> Interval {
        match self {
            Beta::Integer(b) => Interval::point(Rational::from_integer(BigInt::from(*b))),
            Beta::Quadratic(k) => {
                let (lo, hi) = k.bounds(&k.beta(), bits + 2);
                Interval::new(lo, hi)
            }
            Beta::Algebraic(p) => {
                let (lo, hi) = largest_real_root(p, bits).expect("checked on construction");
                Interval::new(lo, hi)
            }
        }
    }
}

/// The number being expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaInput {
    Rational(Rational),
    /// An element of `Q(β)`; only meaningful for a quadratic `β`.
    Field(QuadElem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaExpansion {
    pub digits: Vec<u32>,
    /// Certified by a repeated orbit element; only set by exact arithmetic.
    pub period: Option<EventualPeriod>,
    pub exact: bool,
    /// Working precision that resolved every floor, for the interval path.
    pub bits: Option<u32>,
}

fn greedy_exact<T: Clone + Eq + Hash>(
    x0: T,
    n: usize,
    mut step: impl FnMut(&T) -> (u32, T),
) -> (Vec<u32>, Option<EventualPeriod>) {
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut x = x0;
    seen.insert(x.clone(), 0);
    let mut digits = Vec::with_capacity(n);
    let mut period = None;
    while digits.len() < n {
        if let Some(p) = period {
            let EventualPeriod { preperiod, period } = p;
            let k = digits.len();
            digits.push(digits[preperiod + (k - preperiod) % period]);
            continue;
        }
        let (d, next) = step(&x);
        digits.push(d);
        x = next;
        let k = digits.len();
        if let Some(&j) = seen.get(&x) {
            period = Some(EventualPeriod { preperiod: j, period: k - j });
        } else {
            seen.insert(x.clone(), k);
        }
    }
    (digits, period)
}

/// First `n` digits `d_k = ⌊β·T^{k−1}(ξ)⌋` of the greedy expansion of
/// `ξ ∈ (0, 1)`, with `T(x) = βx − ⌊βx⌋`.
///
/// Integer and quadratic bases run in exact arithmetic, and a repeated orbit
/// element certifies the eventual period. Other bases use interval
/// arithmetic, doubling the precision from 64 bits up to `max_bits`.
pub fn beta_expansion(xi: &BetaInput, beta: &Beta, n: usize, max_bits: u32) -> Result<BetaExpansion> {
    let one = Rational::one();
    match (beta, xi) {
        (Beta::Integer(b), BetaInput::Rational(x)) => {
            if !x.is_positive() || *x >= one {
                return Err(Error::OutOfRange(format!("{x} is not in (0, 1)")));
            }
            let b = Rational::from_integer(BigInt::from(*b));
            let (digits, period) = greedy_exact(x.clone(), n, |x| {
                let y = x * &b;
                let d = y.floor();
                (d.to_integer().to_u32().expect("digit below base"), y - d)
            });
            Ok(BetaExpansion { digits, period, exact: true, bits: None })
        }
        (Beta::Integer(_), BetaInput::Field(_)) => {
            Err(Error::InvalidArgument("field elements need a quadratic base".into()))
        }
        (Beta::Quadratic(k), _) => {
            let x0 = match xi {
                BetaInput::Rational(x) => QuadElem::rational(x.clone()),
                BetaInput::Field(x) => x.clone(),
            };
            if k.signum(&x0) <= 0 || k.signum(&k.sub(&x0, &k.int(1))) >= 0 {
                return Err(Error::OutOfRange(format!("{x0} is not in (0, 1)")));
            }
            let b = k.beta();
            let (digits, period) = greedy_exact(x0, n, |x| {
                let y = k.mul(&b, x);
                let d = k.floor(&y);
                let rest = k.sub(&y, &QuadElem::rational(Rational::from_integer(d.clone())));
                (d.to_u32().expect("non-negative digit"), rest)
            });
            Ok(BetaExpansion { digits, period, exact: true, bits: None })
        }
        (Beta::Algebraic(_), BetaInput::Field(_)) => {
            Err(Error::InvalidArgument("field elements need a quadratic base".into()))
        }
        (Beta::Algebraic(_), BetaInput::Rational(x)) => {
            if !x.is_positive() || *x >= one {
                return Err(Error::OutOfRange(format!("{x} is not in (0, 1)")));
            }
            let mut bits = 64.min(max_bits).max(8);
            loop {
                match greedy_interval(x, beta, n, bits) {
                    Ok(digits) => return Ok(BetaExpansion { digits, period: None, exact: false, bits: Some(bits) }),
                    Err(k) if bits >= max_bits => return Err(Error::AmbiguousFloor { digit: k, bits }),
                    Err(_) => bits = (bits * 2).min(max_bits),
                }
            }
        }
    }
}

// Err(k): the floor for digit k could not be decided.
fn greedy_interval(xi: &Rational, beta: &Beta, n: usize, bits: u32) -> std::result::Result<Vec<u32>, usize> {
    let b = beta.enclosure(bits);
    let mut x = Interval::point(xi.clone());
    let mut digits = Vec::with_capacity(n);
    for k in 1..=n {
        let y = b.mul(&x).round(bits + 8);
        let (flo, fhi) = y.floors();
        if flo != fhi || flo.is_negative() {
            return Err(k);
        }
        let d = Rational::from_integer(flo.clone());
        x = Interval::new(y.lo() - &d, y.hi() - &d);
        digits.push(flo.to_u32().ok_or(k)?);
    }
    Ok(digits)
}

/// Closed-form value of an eventually periodic digit string in `Q(β)`:
/// `Σ_{k≤q} d_k β^{−k} + β^{−q}·(Σ_{k=1}^{s} d_{q+k} β^{−k}) / (1 − β^{−s})`.
pub fn resum_field(k: &QuadField, digits: &[u32], period: EventualPeriod) -> Result<QuadElem> {
    let EventualPeriod { preperiod: q, period: s } = period;
    if digits.len() < q + s {
        return Err(Error::InsufficientDigits { needed: q + s, got: digits.len() });
    }
    let inv = k.inv(&k.beta())?;
    let value = |ds: &[u32]| {
        let mut acc = k.int(0);
        let mut p = k.int(1);
        for &d in ds {
            p = k.mul(&p, &inv);
            acc = k.add(&acc, &k.mul(&k.int(d as i64), &p));
        }
        acc
    };
    let head = value(&digits[..q]);
    let block = value(&digits[q..q + s]);
    let denom = k.sub(&k.int(1), &k.pow(&inv, s));
    let tail = k.mul(&k.pow(&inv, q), &k.div(&block, &denom)?);
    Ok(k.add(&head, &tail))
}

/// The same closed form for an integer base.
pub fn resum_rational(b: u64, digits: &[u32], period: EventualPeriod) -> Result<Rational> {
    let EventualPeriod { preperiod: q, period: s } = period;
    if digits.len() < q + s {
        return Err(Error::InsufficientDigits { needed: q + s, got: digits.len() });
    }
    let ds: Vec<i64> = digits.iter().map(|&d| d as i64).collect();
    let head = super::digits_value(&ds[..q], b);
    let block = super::digits_value(&ds[q..q + s], b);
    let bq = Rational::from_integer(num_traits::pow(BigInt::from(b), q));
    let bs = Rational::from_integer(num_traits::pow(BigInt::from(b), s));
    Ok(head + block * &bs / (bs - Rational::one()) / bq)
}
