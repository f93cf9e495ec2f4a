//! Truncate-and-periodize approximants, their p-adic analogue, heights over
//! `Q`, and the audit of the three-variable linear-form product.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::complexity::{detect_eventual_period, EventualPeriod};
use crate::error::{Error, Result};
use crate::expansions::{Beta, QuadElem};
use crate::morphisms::Morphism;
use crate::numeric::{format_sci, int, ln_bound, prime_factors, sqrt_bound, valuation, Interval, Rational, Round};
use crate::poly::IntPoly;
use crate::stammer::{
    verify_witness, witness_hunt, witnesses_for_morphic, StammerWitness, WitnessReport, WitnessSequence,
};
use crate::words::{Exponent, SequenceSource, Symbol};

/// Working precision for square roots and logarithms in audit reports.
pub const REPORT_BITS: u32 = 96;

fn bpow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// `⌈w·s⌉`.
pub fn ceil_ws(w: Exponent, s: usize) -> usize {
    (w * Exponent::from_integer(s as u64)).ceil().to_integer() as usize
}

fn check_len(a: &[i64], r: usize, s: usize) -> Result<()> {
    if a.len() < r + s {
        return Err(Error::InsufficientDigits { needed: r + s, got: a.len() });
    }
    Ok(())
}

/// `P(X) = Σ_{k≤r} a_k X^{r−k}(X^s − 1) + Σ_{k≤s} a_{r+k} X^{s−k}`.
pub fn build_polynomial(a: &[i64], r: usize, s: usize) -> Result<IntPoly> {
    check_len(a, r, s)?;
    if s == 0 {
        return Err(Error::InvalidArgument("period length s must be at least 1".into()));
    }
    let mut c = vec![BigInt::zero(); r + s];
    for k in 1..=r {
        let ak = BigInt::from(a[k - 1]);
        c[r - k + s] += &ak;
        c[r - k] -= ak;
    }
    for k in 1..=s {
        c[s - k] += a[r + k - 1];
    }
    Ok(IntPoly::new(c))
}

/// Value of an approximant, exact whenever the base allows it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApproxValue {
    Exact(Rational),
    Field(QuadElem),
    Enclosure(Interval),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicApproximant {
    pub r: usize,
    pub s: usize,
    pub digits: Vec<i64>,
    pub poly: IntPoly,
    pub value: ApproxValue,
}

impl PeriodicApproximant {
    /// Enclosure of the value, whatever its representation.
    pub fn enclosure(&self, beta: &Beta, bits: u32) -> Interval {
        match (&self.value, beta) {
            (ApproxValue::Exact(x), _) => Interval::point(x.clone()),
            (ApproxValue::Field(x), Beta::Quadratic(k)) => {
                let (lo, hi) = k.bounds(x, bits);
                Interval::new(lo, hi)
            }
            (ApproxValue::Enclosure(i), _) => i.clone(),
            (ApproxValue::Field(_), _) => unreachable!("field values only arise for quadratic bases"),
        }
    }
}

fn horner(poly: &IntPoly, x: &Interval, bits: u32) -> Interval {
    let mut acc = Interval::point(Rational::zero());
    for c in poly.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Interval::point(Rational::from_integer(c.clone()))).round(bits);
    }
    acc
}

/// `P(β) / (β^r (β^s − 1))` for the first `r + s` digits of `a`.
pub fn periodic_approximant(a: &[i64], r: usize, s: usize, beta: &Beta, bits: u32) -> Result<PeriodicApproximant> {
    let poly = build_polynomial(a, r, s)?;
    let value = match beta {
        Beta::Integer(b) => {
            let bb = BigInt::from(*b);
            let den: BigInt = bpow(&bb, r) * (bpow(&bb, s) - 1);
            ApproxValue::Exact(Rational::new(poly.eval_int(&bb), den))
        }
        Beta::Quadratic(k) => {
            let b = k.beta();
            let num = poly.coeffs().iter().rev().fold(k.int(0), |acc, c| {
                k.add(&k.mul(&acc, &b), &QuadElem::rational(Rational::from_integer(c.clone())))
            });
            let den = k.mul(&k.pow(&b, r), &k.sub(&k.pow(&b, s), &k.int(1)));
            ApproxValue::Field(k.div(&num, &den)?)
        }
        Beta::Algebraic(_) => {
            // enough guard bits to absorb the growth of β^(r+s)
            let hi = beta.enclosure(8).hi().ceil().to_integer();
            let guard = (hi.bits() as u32 + 1) * (r + s) as u32 + 32;
            let work = bits + guard;
            let x = beta.enclosure(work);
            let num = horner(&poly, &x, work);
            let bs = horner(&IntPoly::new(monomial(s)), &x, work);
            let br = horner(&IntPoly::new(monomial(r)), &x, work);
            let den = br.mul(&bs.sub(&Interval::point(Rational::one()))).round(work);
            ApproxValue::Enclosure(num.div(&den).round(bits))
        }
    };
    Ok(PeriodicApproximant { r, s, digits: a[..r + s].to_vec(), poly, value })
}

fn monomial(e: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); e + 1];
    c[e] = BigInt::one();
    c
}

/// `b^{(n)}`: `a` on `1..=r+s`, then `a_{r+1} … a_{r+s}` repeated.
pub fn periodize(a: &SequenceSource, r: usize, s: usize) -> SequenceSource {
    assert!(s >= 1, "period length must be at least 1");
    let head: Vec<Symbol> = a.prefix(r + s).into_inner();
    let id = format!("periodize({},{r},{s})", a.id());
    SequenceSource::from_fn(id, a.alphabet().clone(), move |i| if i < r + s { head[i] } else { head[r + (i - r) % s] })
}

/// First index where a sequence and its periodization differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Agreement {
    /// The first disagreement, or the scan bound plus one when `truncated`.
    pub index: usize,
    pub truncated: bool,
}

pub fn agreement_length(a: &SequenceSource, ws: &StammerWitness, scan_limit: usize) -> Agreement {
    let (r, s) = (ws.u.len(), ws.v.len());
    let limit = scan_limit.max(r + s);
    let b = periodize(a, r, s);
    let first = a.with_prefix(limit, |p| b.with_prefix(limit, |q| p.iter().zip(q).position(|(x, y)| x != y)));
    match first {
        Some(i) => Agreement { index: i + 1, truncated: false },
        None => Agreement { index: limit + 1, truncated: true },
    }
}

/// `v_p` of a p-adic difference, exact or a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PadicValuation {
    pub value: u64,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselApproximant {
    pub prime: u64,
    pub r: usize,
    pub s: usize,
    /// `p_n`.
    pub numerator: BigInt,
    /// `p_n / (p^s − 1)`.
    pub value: Rational,
    /// `v_p(α′ − α_n)` from the digits supplied.
    pub valuation: PadicValuation,
}

/// `r + ⌈w·s⌉ + 1`.
pub fn required_valuation(r: usize, s: usize, w: Exponent) -> u64 {
    (r + ceil_ws(w, s) + 1) as u64
}

impl HenselApproximant {
    pub fn certifies(&self, w: Exponent) -> bool {
        self.valuation.value >= required_valuation(self.r, self.s, w)
    }
}

/// The approximant `α_n = p_n/(p^s − 1)` of `α′ = Σ_{k≥1} a_k p^k`, with
/// `a = (a_1, a_2, …)`. Every supplied digit beyond `a_{r+s}` sharpens the
/// valuation of `α′ − α_n`.
pub fn hensel_approximant(a: &[i64], r: usize, s: usize, p: u64) -> Result<HenselApproximant> {
    check_len(a, r, s)?;
    if s == 0 {
        return Err(Error::InvalidArgument("period length s must be at least 1".into()));
    }
    if !crate::numeric::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if let Some(d) = a.iter().find(|&&d| d < 0 || d as u64 >= p) {
        return Err(Error::InvalidArgument(format!("digit {d} is not in 0..{p}")));
    }
    let pb = BigInt::from(p);
    let ps1: BigInt = bpow(&pb, s) - 1;
    let head: BigInt = (1..=r).map(|k| BigInt::from(a[k - 1]) * bpow(&pb, k)).sum();
    let block: BigInt = (1..=s).map(|k| BigInt::from(a[r + k - 1]) * bpow(&pb, r + k)).sum();
    let numerator: BigInt = &head * &ps1 - block;
    let value = Rational::new(numerator.clone(), ps1.clone());
    // (T_N − α_n)(p^s − 1) with T_N the truncation of α′ at N digits
    let n = a.len();
    let t: BigInt = a.iter().enumerate().map(|(k, &d)| BigInt::from(d) * bpow(&pb, k + 1)).sum();
    let diff = t * &ps1 - &numerator;
    let valuation = if diff.is_zero() {
        PadicValuation { value: n as u64 + 1, exact: false }
    } else {
        let v = valuation(&diff, p);
        if v <= n as u64 {
            PadicValuation { value: v, exact: true }
        } else {
            PadicValuation { value: n as u64 + 1, exact: false }
        }
    };
    Ok(HenselApproximant { prime: p, r, s, numerator, value, valuation })
}

/// A place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `|x|_v`, with `|x|_p = p^{−v_p(x)}`.
pub fn abs_at(x: &Rational, place: Place) -> Rational {
    match place {
        Place::Infinite => x.abs(),
        Place::Prime(_) if x.is_zero() => Rational::zero(),
        Place::Prime(p) => {
            let v = crate::numeric::valuation_rat(x, p);
            let pp = BigInt::from(p);
            if v >= 0 {
                Rational::new(BigInt::one(), bpow(&pp, v as usize))
            } else {
                Rational::from_integer(bpow(&pp, (-v) as usize))
            }
        }
    }
}

/// The places where a non-zero integer `m` has absolute value `≠ 1`, with
/// `∞` first.
pub fn support(m: u64) -> Vec<Place> {
    let mut ps: Vec<u64> = prime_factors(m);
    ps.dedup();
    std::iter::once(Place::Infinite).chain(ps.into_iter().map(Place::Prime)).collect()
}

/// `Π_v |m|_v` over every place of `Q`.
pub fn product_over_places(m: &BigInt) -> Result<Rational> {
    let mag = m.magnitude().to_u64().ok_or_else(|| Error::InvalidArgument("integer too large to factor".into()))?;
    if mag == 0 {
        return Err(Error::InvalidArgument("product formula needs a non-zero integer".into()));
    }
    let x = Rational::from_integer(m.clone());
    Ok(support(mag).into_iter().map(|v| abs_at(&x, v)).product())
}

/// `H(x) = scale · √radicand`: the Euclidean norm of the primitive integer
/// vector proportional to `x`.
#[derive(Debug, Clone)]
pub struct Height {
    pub scale: Rational,
    pub radicand: BigInt,
}

impl Height {
    pub fn squared(&self) -> Rational {
        &self.scale * &self.scale * Rational::from_integer(self.radicand.clone())
    }

    pub fn enclosure(&self, bits: u32) -> Interval {
        let r = Rational::from_integer(self.radicand.clone());
        Interval::new(sqrt_bound(&r, bits, Round::Down) * &self.scale, sqrt_bound(&r, bits, Round::Up) * &self.scale)
    }

    pub fn ln(&self, bits: u32) -> Interval {
        let r = Rational::from_integer(self.radicand.clone());
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let ls = Interval::new(ln_bound(&self.scale, bits, Round::Down), ln_bound(&self.scale, bits, Round::Up));
        let lr = Interval::new(ln_bound(&r, bits, Round::Down), ln_bound(&r, bits, Round::Up));
        lr.scale(&half).add(&ls)
    }
}

impl PartialEq for Height {
    fn eq(&self, o: &Self) -> bool {
        self.squared() == o.squared()
    }
}

impl Eq for Height {}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.scale, self.radicand)
        }
    }
}

/// Height of a non-zero rational vector over `Q` with the Euclidean norm at
/// the infinite place.
pub fn height(x: &[Rational]) -> Result<Height> {
    if x.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("height of the zero vector".into()));
    }
    let l = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let y: Vec<BigInt> = x.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = y.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let radicand: BigInt = y.iter().map(|c| c * c).sum();
    Ok(Height { scale: Rational::new(BigInt::one(), g), radicand })
}

pub fn height_int(x: &[BigInt]) -> Result<Height> {
    height(&x.iter().cloned().map(Rational::from_integer).collect::<Vec<_>>())
}

/// `(b^{r+s}, −b^r, −P(b))`.
pub fn audit_vector(b: u64, r: usize, s: usize, poly: &IntPoly) -> [BigInt; 3] {
    let bb = BigInt::from(b);
    [bpow(&bb, r + s), -bpow(&bb, r), -poly.eval_int(&bb)]
}

/// Absolute values at one place of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceRecord {
    pub place: Place,
    /// `|x_i|_v`.
    pub coords: [Rational; 3],
    /// `|x|_v`: Euclidean at `∞`, max at a prime.
    pub norm: Interval,
    /// `|L_{3,v}(x)|_v`.
    pub l3: Interval,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceAuditReport {
    pub x: [BigInt; 3],
    pub base: u64,
    pub places: Vec<PlaceRecord>,
    pub height: Height,
    pub height_enclosure: Interval,
    pub pi: Interval,
    pub exponent: Interval,
    /// Digits of `α` that made `L_{3,∞}` bounded away from zero.
    pub digits_used: usize,
}

/// Enclosure of `Σ_{k≥1} a_k b^{−k}` from the first `n` digits.
pub fn alpha_enclosure(alpha: &SequenceSource, b: u64, n: usize) -> Interval {
    let digits = alpha.digit_values(n);
    let head = crate::expansions::digits_value(&digits, b);
    let al = alpha.alphabet();
    let vals: Vec<i64> = (0..al.len()).map(|i| al.digit_value(i as Symbol)).collect();
    let (dmin, dmax) = (*vals.iter().min().unwrap(), *vals.iter().max().unwrap());
    // tail Σ_{k>n} d b^{−k} = d · b^{−n} / (b − 1)
    let unit = Rational::new(BigInt::one(), bpow(&BigInt::from(b), n) * (b - 1));
    Interval::new(&head + &unit * int(dmin.min(0)), &head + &unit * int(dmax.max(0)))
}

fn bits_per_digit(b: u64) -> usize {
    (63 - b.leading_zeros()) as usize
}

/// Audit of `x = (x₁, x₂, x₃)` against `α = Σ a_k b^{−k}` over `K = Q` with
/// `S = {∞} ∪ {p | b}`.
///
/// Starts from `start_digits` digits of `α` and doubles while
/// `L_{3,∞}(x) = α x₁ + α x₂ + x₃` is not bounded away from zero, up to
/// about `precision_bits` bits of `α`.
pub fn subspace_audit(
    x: &[BigInt; 3],
    alpha: &SequenceSource,
    b: u64,
    start_digits: usize,
    precision_bits: u32,
) -> Result<SubspaceAuditReport> {
    if b < 2 {
        return Err(Error::InvalidArgument(format!("base must be at least 2, got {b}")));
    }
    if x[2].is_zero() {
        return Err(Error::InvalidArgument("x₃ = 0: the product vanishes".into()));
    }
    let max_digits = start_digits.max(precision_bits as usize / bits_per_digit(b)).max(1);
    let xr: Vec<Rational> = x.iter().cloned().map(Rational::from_integer).collect();
    let mut n = start_digits.max(1);
    let l3 = loop {
        let a = alpha_enclosure(alpha, b, n);
        let l3 = a.scale(&(&xr[0] + &xr[1])).add(&Interval::point(xr[2].clone()));
        if !l3.contains_zero() {
            break l3.abs();
        }
        if n >= max_digits {
            return Err(Error::NeedMoreDigits { digits: n });
        }
        n = (2 * n).min(max_digits);
    };
    let h = height_int(x)?;
    let ln_h = h.ln(REPORT_BITS);
    if !ln_h.is_positive() {
        return Err(Error::InvalidArgument("height 1: the exponent is undefined".into()));
    }
    let bits = REPORT_BITS;
    let point = |q: Rational| Interval::point(q);
    let mut places = vec![PlaceRecord {
        place: Place::Infinite,
        coords: [xr[0].abs(), xr[1].abs(), xr[2].abs()],
        norm: height_int(x).map(|e| {
            let r = Rational::from_integer(e.radicand);
            Interval::new(sqrt_bound(&r, bits, Round::Down), sqrt_bound(&r, bits, Round::Up))
        })?,
        l3: l3.round(bits),
    }];
    let mut primes = prime_factors(b);
    primes.dedup();
    // Π = |L₃,∞| Π_p |x₃|_p / H³ once the S-units x₁, x₂ cancel
    let mut finite = Rational::one();
    let mut ln_finite = Interval::point(Rational::zero());
    for &p in &primes {
        let c: Vec<Rational> = xr.iter().map(|q| abs_at(q, Place::Prime(p))).collect();
        let norm = c.iter().max().unwrap().clone();
        finite *= &c[2];
        let v = valuation(&x[2], p);
        let lp = Interval::new(ln_bound(&int(p), bits, Round::Down), ln_bound(&int(p), bits, Round::Up));
        ln_finite = ln_finite.sub(&lp.scale(&int(v)));
        places.push(PlaceRecord {
            place: Place::Prime(p),
            coords: [c[0].clone(), c[1].clone(), c[2].clone()],
            norm: point(norm),
            l3: point(c[2].clone()),
        });
    }
    let h_enc = h.enclosure(bits);
    let h3 = h_enc.mul(&h_enc).mul(&h_enc);
    let pi = l3.scale(&finite).div(&h3).round(bits);
    let ln_l3 = l3.ln(bits);
    let ln_pi = ln_l3.add(&ln_finite).sub(&ln_h.scale(&int(3)));
    let exponent = ln_pi.div(&ln_h).round(bits);
    Ok(SubspaceAuditReport {
        x: x.clone(),
        base: b,
        places,
        height: h,
        height_enclosure: h_enc,
        pi,
        exponent,
        digits_used: n,
    })
}

/// Audit for the approximant attached to a witness, starting from
/// `4·(r + ⌈w·s⌉)` digits.
pub fn audit_witness(
    alpha: &SequenceSource,
    b: u64,
    ws: &StammerWitness,
    precision_bits: u32,
) -> Result<SubspaceAuditReport> {
    let (r, s) = (ws.u.len(), ws.v.len());
    let digits = alpha.digit_values(r + s);
    let poly = build_polynomial(&digits, r, s)?;
    let x = audit_vector(b, r, s, &poly);
    subspace_audit(&x, alpha, b, 4 * (r + ceil_ws(ws.w, s)), precision_bits)
}

/// Endpoints of an enclosure, rounded outward to 12 significant digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnclosureText {
    pub lo: String,
    pub hi: String,
}

impl From<&Interval> for EnclosureText {
    fn from(i: &Interval) -> Self {
        EnclosureText { lo: format_sci(i.lo(), 12, Round::Down), hi: format_sci(i.hi(), 12, Round::Up) }
    }
}

/// The base attached to a digit sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSpec {
    Integer(u64),
    Beta(Beta),
    /// `α′ = Σ a_k p^k` in `Q_p`.
    Prime(u64),
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpec::Integer(b) => write!(f, "b={b}"),
            BaseSpec::Beta(beta) => write!(f, "beta=root({})", beta.poly()),
            BaseSpec::Prime(p) => write!(f, "p={p}"),
        }
    }
}

/// Where the witnesses of a report come from.
#[derive(Debug, Clone)]
pub enum WitnessSource {
    Given(WitnessSequence),
    Hunt {
        w_min: Exponent,
        ratio_cap: Exponent,
        prefix: usize,
    },
    /// The max-growth-letter construction, falling back to a hunt when it
    /// does not apply.
    Morphic {
        phi: Morphism,
        start: Symbol,
        count: usize,
        fallback: (Exponent, Exponent, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PeriodicityCheck {
    pub scanned: usize,
    pub eventually_periodic: bool,
    pub period: Option<EventualPeriod>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AgreementEntry {
    pub r: usize,
    pub s: usize,
    /// `r + ⌈w·s⌉`.
    pub bound: usize,
    pub first_disagreement: usize,
    pub truncated: bool,
    pub exceeds_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    #[serde(rename = "rPlusS")]
    pub r_plus_s: usize,
    #[serde(rename = "H")]
    pub height: String,
    #[serde(rename = "H_enclosure")]
    pub h_enclosure: EnclosureText,
    #[serde(rename = "Pi_enclosure")]
    pub pi_enclosure: EnclosureText,
    pub exponent_enclosure: EnclosureText,
    #[serde(rename = "digitsUsed")]
    pub digits_used: usize,
}

impl AuditEntry {
    pub fn new(r_plus_s: usize, a: &SubspaceAuditReport) -> Self {
        AuditEntry {
            r_plus_s,
            height: a.height.to_string(),
            h_enclosure: (&a.height_enclosure).into(),
            pi_enclosure: (&a.pi).into(),
            exponent_enclosure: (&a.exponent).into(),
            digits_used: a.digits_used,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HenselEntry {
    pub r: usize,
    pub s: usize,
    pub p_n: String,
    pub valuation: PadicValuation,
    pub required: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ApproximantEntry {
    pub r: usize,
    pub s: usize,
    pub value_enclosure: EnclosureText,
}

/// Evidence for the stammering hypothesis on a finite set of witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionReport {
    pub source: String,
    pub base: String,
    pub periodicity: PeriodicityCheck,
    pub applicable: bool,
    pub not_applicable: Option<String>,
    pub ratio_bound: Option<String>,
    pub witnesses: Vec<WitnessReport>,
    pub agreement: Vec<AgreementEntry>,
    pub audit: Vec<AuditEntry>,
    pub audit_errors: Vec<String>,
    pub hensel: Vec<HenselEntry>,
    pub approximants: Vec<ApproximantEntry>,
    pub scope: String,
}

const SCOPE: &str = "finitely many witnesses checked; the hypothesis asks for infinitely many";

/// Bundles the periodicity scan, witnesses, agreement lengths and the
/// base-specific checks.
pub fn criterion_report(
    a: &SequenceSource,
    base: &BaseSpec,
    source: &WitnessSource,
    scan_limit: usize,
    precision_bits: u32,
) -> Result<CriterionReport> {
    let period = a.with_prefix(scan_limit, detect_eventual_period);
    let mut report = CriterionReport {
        source: a.id().to_string(),
        base: base.to_string(),
        periodicity: PeriodicityCheck { scanned: scan_limit, eventually_periodic: period.is_some(), period },
        applicable: period.is_none(),
        not_applicable: None,
        ratio_bound: None,
        witnesses: Vec::new(),
        agreement: Vec::new(),
        audit: Vec::new(),
        audit_errors: Vec::new(),
        hensel: Vec::new(),
        approximants: Vec::new(),
        scope: SCOPE.to_string(),
    };
    if let Some(p) = period {
        report.not_applicable =
            Some(format!("eventually periodic with preperiod {} and period {}", p.preperiod, p.period));
        return Ok(report);
    }
    let ws = match source {
        WitnessSource::Given(w) => w.clone(),
        WitnessSource::Hunt { w_min, ratio_cap, prefix } => witness_hunt(a, *w_min, *ratio_cap, *prefix)?,
        WitnessSource::Morphic { phi, start, count, fallback } => {
            match witnesses_for_morphic(phi, *start, *count, scan_limit) {
                Ok(w) => w,
                Err(e @ Error::NotApplicable(_)) => {
                    report.applicable = false;
                    report.not_applicable = Some(e.to_string());
                    let (w_min, ratio_cap, prefix) = *fallback;
                    witness_hunt(a, w_min, ratio_cap, prefix)?
                }
                Err(e) => return Err(e),
            }
        }
    };
    if !ws.is_empty() {
        report.ratio_bound = Some(format!("{}/{}", ws.ratio_bound.numer(), ws.ratio_bound.denom()));
    }
    for w in &ws.witnesses {
        let verified = verify_witness(a, w);
        report.witnesses.push(WitnessReport::new(w, None, verified));
        let (r, s) = (w.u.len(), w.v.len());
        let bound = r + ceil_ws(w.w, s);
        let ag = agreement_length(a, w, scan_limit.max(2 * (r + s) + bound));
        report.agreement.push(AgreementEntry {
            r,
            s,
            bound,
            first_disagreement: ag.index,
            truncated: ag.truncated,
            exceeds_bound: ag.index > bound,
        });
        if !verified {
            continue;
        }
        match base {
            BaseSpec::Integer(b) => match audit_witness(a, *b, w, precision_bits) {
                Ok(rep) => report.audit.push(AuditEntry::new(r + s, &rep)),
                Err(e) => report.audit_errors.push(format!("r+s={}: {}: {e}", r + s, e.name())),
            },
            BaseSpec::Prime(p) => {
                let digits = a.digit_values(2 * (bound + 1));
                let h = hensel_approximant(&digits, r, s, *p)?;
                let required = required_valuation(r, s, w.w);
                report.hensel.push(HenselEntry {
                    r,
                    s,
                    p_n: h.numerator.to_string(),
                    valuation: h.valuation,
                    required,
                    holds: h.certifies(w.w),
                });
            }
            BaseSpec::Beta(beta) => {
                let digits = a.digit_values(r + s);
                let ap = periodic_approximant(&digits, r, s, beta, REPORT_BITS)?;
                report.approximants.push(ApproximantEntry {
                    r,
                    s,
                    value_enclosure: (&ap.enclosure(beta, REPORT_BITS)).into(),
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{generate, KAutomaton};
    use crate::morphisms::fixed_point;
    use crate::numeric::rat;
    use crate::words::Alphabet;

    fn fib() -> SequenceSource {
        let phi = Morphism::endo(Alphabet::digits(2), &["01", "0"]).unwrap();
        fixed_point(&phi, 0).unwrap()
    }

    fn witness(u: &str, v: &str, w: Exponent) -> StammerWitness {
        let al = Alphabet::digits(10);
        StammerWitness {
            u: al.parse_word(u).unwrap(),
            v: al.parse_word(v).unwrap(),
            w,
            source_id: "test".into(),
            index: 0,
        }
    }

    #[test]
    fn polynomial_examples() {
        let p = build_polynomial(&[1, 2], 1, 1).unwrap();
        assert_eq!(p, IntPoly::from_high_first(&[1, 1]));
        let ap = periodic_approximant(&[1, 2], 1, 1, &Beta::Integer(10), 64).unwrap();
        assert_eq!(ap.value, ApproxValue::Exact(rat(11, 90)));
        assert!(build_polynomial(&[0; 7], 3, 4).unwrap().is_zero());
        assert_eq!(build_polynomial(&[1, 2], 2, 1), Err(Error::InsufficientDigits { needed: 3, got: 2 }));
    }

    #[test]
    fn golden_approximant_matches_rational_digits() {
        // digits 1,0 repeated: Σ β^{-2k+1} = β/(β² − 1) = 1
        let beta = Beta::golden();
        let ap = periodic_approximant(&[1, 0], 0, 2, &beta, 64).unwrap();
        let Beta::Quadratic(k) = &beta else { unreachable!() };
        assert_eq!(ap.value, ApproxValue::Field(k.int(1)));
        // same number through the interval path (plastic ratio)
        let plastic = Beta::from_poly(&IntPoly::from_high_first(&[1, 0, -1, -1])).unwrap();
        let ap = periodic_approximant(&[1, 0, 0, 1, 1], 2, 3, &plastic, 80).unwrap();
        let enc = ap.enclosure(&plastic, 80);
        assert!(enc.width() < crate::numeric::pow2(-70));
    }

    #[test]
    fn periodize_examples() {
        let f = fib();
        let b = periodize(&f, 2, 3);
        assert_eq!(b.render_prefix(14), "01001001001001");
        let c = periodize(&f, 0, 1);
        assert!((1..50).all(|i| c.get(i) == 0));
    }

    #[test]
    fn thue_morse_agreement() {
        let tm = generate(&KAutomaton::thue_morse());
        let ag = agreement_length(&tm, &witness("0", "1", Exponent::from_integer(2)), 100);
        assert_eq!(ag, Agreement { index: 4, truncated: false });
        let per = SequenceSource::eventually_periodic("p", Alphabet::digits(2), vec![1], vec![0, 1]).unwrap();
        let ag = agreement_length(&per, &witness("1", "01", Exponent::new(3, 2)), 500);
        assert!(ag.truncated);
    }

    #[test]
    fn hensel_examples() {
        // Σ_{j≥0} 2^{2j+1} = −2/3 in Q_2
        let h = hensel_approximant(&[1, 0, 1, 0, 1, 0, 1, 0], 0, 2, 2).unwrap();
        assert!(!h.valuation.exact);
        assert_eq!(h.value, rat(-2, 3));
        let z = hensel_approximant(&[0; 10], 2, 3, 5).unwrap();
        assert!(z.numerator.is_zero());
        // a = 1,0,0 | 1: periodization 1 0 0 0 0 …, first disagreement at k = 4
        let h = hensel_approximant(&[1, 0, 0, 1, 0, 0], 1, 2, 2).unwrap();
        assert_eq!(h.valuation, PadicValuation { value: 4, exact: true });
        assert!(hensel_approximant(&[2], 0, 1, 2).is_err());
    }

    #[test]
    fn heights() {
        let h = height_int(&[2.into(), 4.into(), 6.into()]).unwrap();
        assert_eq!(h, height_int(&[1.into(), 2.into(), 3.into()]).unwrap());
        assert_eq!(h.squared(), int(14));
        let x = [int(3), int(-1), int(-7)];
        let x2: Vec<Rational> = x.iter().map(|c| c * int(2)).collect();
        assert_eq!(height(&x).unwrap(), height(&x2).unwrap());
        assert!(height(&[Rational::zero(), Rational::zero()]).is_err());
        assert_eq!(product_over_places(&BigInt::from(-360)).unwrap(), Rational::one());
    }

    #[test]
    fn fibonacci_audit_is_below_minus_three() {
        let f = fib();
        let ws = witness("", "01", Exponent::new(3, 2));
        assert!(verify_witness(&f, &ws));
        let rep = audit_witness(&f, 2, &ws, 4096).unwrap();
        assert!(rep.exponent.hi() < &int(-3), "{}", rep.exponent);
        assert_eq!(rep.places.len(), 2);
        let phi = Morphism::endo(Alphabet::digits(2), &["01", "0"]).unwrap();
        let seq = witnesses_for_morphic(&phi, 0, 8, 1 << 14).unwrap();
        for w in seq.witnesses.iter().filter(|w| w.v.len() >= 30) {
            let rep = audit_witness(&f, 2, w, 1 << 16).unwrap();
            assert!(rep.exponent.hi() < &int(-3), "s={} {}", w.v.len(), rep.exponent);
        }
    }

    #[test]
    fn periodic_source_report() {
        let third = crate::expansions::b_adic_digits(&rat(1, 3), 10).unwrap();
        let rep = criterion_report(
            &third,
            &BaseSpec::Integer(10),
            &WitnessSource::Hunt { w_min: Exponent::new(3, 2), ratio_cap: Exponent::from_integer(1), prefix: 200 },
            400,
            4096,
        )
        .unwrap();
        assert!(rep.periodicity.eventually_periodic);
        assert_eq!(rep.periodicity.period, Some(EventualPeriod { preperiod: 0, period: 1 }));
        assert!(!rep.applicable);
        assert!(rep.witnesses.is_empty());
    }
}
