//! Integer polynomials: exact evaluation, Sturm sequences, and an
//! irreducibility test over the rationals.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Polynomial with integer coefficients, lowest degree first, no trailing
/// zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Coefficients given from the highest degree down, e.g. `[1, -1, -1]`
    /// for `x² − x − 1`.
    pub fn from_high_first(c: &[i64]) -> Self {
        IntPoly::new(c.iter().rev().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_low_first(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `c_k = c_{n−k}` for all `k`.
    pub fn is_self_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        n > 0 && (0..n).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient when `d` (with leading coefficient ±1) divides `self` exactly.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let lead = d.leading();
        if d.is_zero() || !lead.abs().is_one() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dn = d.coeffs.len();
        if r.len() < dn {
            return if self.is_zero() { Some(IntPoly::new(vec![])) } else { None };
        }
        let mut q = vec![BigInt::zero(); r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn - 1] * &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Parses comma-separated coefficients, highest degree first.
    pub fn parse_high_first(text: &str) -> Result<IntPoly> {
        let coeffs: std::result::Result<Vec<BigInt>, _> = text.split(',').map(|t| t.trim().parse::<BigInt>()).collect();
        let mut coeffs = coeffs.map_err(|e| Error::InvalidArgument(format!("bad polynomial {text:?}: {e}")))?;
        coeffs.reverse();
        let p = IntPoly::new(coeffs);
        if p.is_zero() {
            return Err(Error::InvalidArgument("zero polynomial".into()));
        }
        Ok(p)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

type RatPoly = Vec<Rational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rat_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let lead = b.last().expect("division by the zero polynomial").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() / &lead;
        let shift = r.len() - b.len();
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &c * bc;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn rat_eval(p: &RatPoly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Sturm sequence `p, p', −rem(p, p'), …`.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let to_rat = |q: &IntPoly| q.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect::<RatPoly>();
        let mut chain = vec![to_rat(p), to_rat(&p.derivative())];
        trim(&mut chain[1]);
        while !chain.last().unwrap().is_empty() {
            let n = chain.len();
            let mut r = rat_rem(&chain[n - 2], &chain[n - 1]);
            for c in r.iter_mut() {
                *c = -c.clone();
            }
            // positive rescaling keeps sign patterns and tames coefficient growth
            if let Some(lead) = r.last().cloned() {
                let scale = lead.abs();
                for c in r.iter_mut() {
                    *c /= &scale;
                }
            }
            chain.push(r);
        }
        chain.pop();
        SturmChain { chain }
    }

    fn changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn sign(x: &Rational) -> i8 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Sign variations at `x`; `None` means `+∞`.
    pub fn variations_at(&self, x: Option<&Rational>) -> usize {
        match x {
            Some(x) => Self::changes(self.chain.iter().map(|p| Self::sign(&rat_eval(p, x)))),
            None => Self::changes(self.chain.iter().map(|p| Self::sign(p.last().unwrap()))),
        }
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::changes(self.chain.iter().map(|p| {
            let s = Self::sign(p.last().unwrap());
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`; `None` bounds are infinite.
    pub fn count(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        let vlo = match lo {
            Some(x) => self.variations_at(Some(x)),
            None => self.variations_at_neg_inf(),
        };
        vlo - self.variations_at(hi)
    }
}

/// Distinct real roots of `p` in `(lo, hi]`.
pub fn count_real_roots(p: &IntPoly, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
    SturmChain::new(p).count(lo, hi)
}

/// Cauchy bound: every complex root has modulus below `1 + max|c_i/c_n|`.
pub fn root_bound(p: &IntPoly) -> Rational {
    let lead = Rational::from_integer(p.leading().abs());
    let m = p.coeffs[..p.degree()].iter().map(|c| Rational::from_integer(c.abs()) / &lead).max().unwrap_or_default();
    m + Rational::one()
}

/// Isolating interval `(lo, hi]` of width at most `2^-bits` around the
/// largest real root, if there is one.
pub fn largest_real_root(p: &IntPoly, bits: u32) -> Option<(Rational, Rational)> {
    let sturm = SturmChain::new(p);
    let mut hi = root_bound(p);
    let mut lo = -hi.clone();
    if sturm.count(Some(&lo), Some(&hi)) == 0 {
        return None;
    }
    let eps = crate::numeric::pow2(-(bits as i64));
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        if sturm.count(Some(&mid), Some(&hi)) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo, hi))
}

// Arithmetic in F_p[x], lowest degree first, no trailing zeros.
mod modp {
    pub type P = Vec<u64>;

    pub fn trim(a: &mut P) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        let mut r: P =
            (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect();
        trim(&mut r);
        r
    }

    pub fn mul(a: &P, b: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        trim(&mut r);
        r
    }

    pub fn divrem(a: &P, b: &P, p: u64) -> (P, P) {
        let mut r = a.clone();
        let lead_inv = inv(*b.last().unwrap(), p);
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * lead_inv % p;
            q[shift] = c;
            for (j, &bc) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * bc % p) % p;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn gcd(a: &P, b: &P, p: u64) -> P {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b, p);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = inv(l, p);
            for c in a.iter_mut() {
                *c = *c * li % p;
            }
        }
        a
    }

    pub fn powmod(base: &P, mut e: u64, m: &P, p: u64) -> P {
        let mut r: P = vec![1];
        let mut b = divrem(base, m, p).1;
        while e > 0 {
            if e & 1 == 1 {
                r = divrem(&mul(&r, &b, p), m, p).1;
            }
            b = divrem(&mul(&b, &b, p), m, p).1;
            e >>= 1;
        }
        r
    }

    pub fn derivative(a: &P, p: u64) -> P {
        let mut r: P = a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
        trim(&mut r);
        r
    }

    /// Degrees of the irreducible factors of a squarefree monic `f`.
    pub fn factor_degrees(f: &P, p: u64) -> Vec<usize> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: P = vec![0, 1];
        let mut h = x.clone();
        let mut i = 0;
        while f.len() > 1 {
            i += 1;
            if 2 * i > f.len() - 1 {
                out.push(f.len() - 1);
                break;
            }
            h = powmod(&h, p, &f, p);
            let g = gcd(&sub(&h, &x, p), &f, p);
            if g.len() > 1 {
                for _ in 0..(g.len() - 1) / i {
                    out.push(i);
                }
                f = divrem(&f, &g, p).0;
                h = divrem(&h, &f, p).1;
            }
        }
        out
    }
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Degrees `0 < d < n` that a factor over `Z` could have, given the factor
/// degrees modulo the small primes where the reduction stays squarefree.
pub fn possible_factor_degrees(f: &IntPoly) -> BTreeSet<usize> {
    let n = f.degree();
    let mut possible: BTreeSet<usize> = (1..n).collect();
    for &p in SMALL_PRIMES.iter().chain(std::iter::once(&2)) {
        let pb = BigInt::from(p);
        let mut fp: modp::P = f.coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
        modp::trim(&mut fp);
        if fp.len() != n + 1 {
            continue;
        }
        let lead_inv = modp::inv(*fp.last().unwrap(), p);
        for c in fp.iter_mut() {
            *c = *c * lead_inv % p;
        }
        let d = modp::derivative(&fp, p);
        if modp::gcd(&fp, &d, p).len() != 1 {
            continue;
        }
        let degs = modp::factor_degrees(&fp, p);
        let mut sums = BTreeSet::from([0usize]);
        for d in degs {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        possible.retain(|d| sums.contains(d));
        if possible.is_empty() {
            break;
        }
    }
    possible
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper factor, certified by exact division.
    Reducible(IntPoly),
    Undecided,
}

/// Largest degree for which candidate factors are searched from numerical
/// roots.
const FACTOR_SEARCH_DEGREE: usize = 16;

/// Decides irreducibility over `Q` for a monic polynomial.
pub fn irreducibility(f: &IntPoly, roots: Option<&[(f64, f64)]>) -> Irreducibility {
    let n = f.degree();
    if n <= 1 {
        return Irreducibility::Irreducible;
    }
    let possible = possible_factor_degrees(f);
    if possible.is_empty() {
        return Irreducibility::Irreducible;
    }
    let Some(roots) = roots else { return Irreducibility::Undecided };
    if n > FACTOR_SEARCH_DEGREE || roots.len() != n {
        return Irreducibility::Undecided;
    }
    for &d in possible.iter().filter(|&&d| 2 * d <= n) {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != d {
                continue;
            }
            // Π (x − r_i) over the chosen roots, rounded to integers
            let mut c: Vec<(f64, f64)> = vec![(1.0, 0.0)];
            for (i, &(re, im)) in roots.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let mut next = vec![(0.0, 0.0); c.len() + 1];
                for (k, &(a, b)) in c.iter().enumerate() {
                    next[k + 1].0 += a;
                    next[k + 1].1 += b;
                    next[k].0 -= a * re - b * im;
                    next[k].1 -= a * im + b * re;
                }
                c = next;
            }
            if c.iter().any(|&(a, b)| b.abs() > 1e-6 || !a.is_finite() || a.abs() > 1e15) {
                continue;
            }
            let cand = IntPoly::new(c.iter().map(|&(a, _)| BigInt::from(a.round() as i64)).collect());
            if cand.degree() == d && f.div_exact(&cand).is_some() {
                return Irreducibility::Reducible(cand);
            }
        }
    }
    Irreducibility::Undecided
}
