//! Pisot and Salem recognition for monic integer polynomials.
//!
//! Root enclosures are discs `D(z_i, n·|W_i|)` with Weierstrass corrections
//! `W_i = f(z_i) / Π_{j≠i}(z_i − z_j)`, computed exactly at dyadic centres.
//! The discs cover every root, and when they are pairwise disjoint each one
//! holds exactly one root.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{pow2, sqrt_bound, Rational, Round};
use crate::poly::{count_real_roots, irreducibility, possible_factor_degrees, root_bound, IntPoly, Irreducibility};

/// A monic integer polynomial standing for its roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicIntegerSpec {
    poly: IntPoly,
}

impl AlgebraicIntegerSpec {
    pub fn new(poly: IntPoly) -> Result<Self> {
        if !poly.is_monic() || poly.degree() == 0 {
            return Err(Error::InvalidArgument(format!("{poly} is not monic of positive degree")));
        }
        Ok(AlgebraicIntegerSpec { poly })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlgebraicKind {
    Pisot,
    Salem,
    Neither,
}

type C = (Rational, Rational);

fn cadd(a: &C, b: &C) -> C {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn csub(a: &C, b: &C) -> C {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cmul(a: &C, b: &C) -> C {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn cnorm(a: &C) -> Rational {
    &a.0 * &a.0 + &a.1 * &a.1
}

fn cdiv(a: &C, b: &C) -> C {
    let n = cnorm(b);
    let conj = (b.0.clone(), -b.1.clone());
    let p = cmul(a, &conj);
    (p.0 / &n, p.1 / n)
}

fn ceval(p: &IntPoly, z: &C) -> C {
    p.coeffs().iter().rev().fold((Rational::zero(), Rational::zero()), |acc, c| {
        let m = cmul(&acc, z);
        (m.0 + Rational::from_integer(c.clone()), m.1)
    })
}

fn round_abs(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits as i64);
    (x * &s).round() / s
}

/// A closed disc `|z − centre|² ≤ radius_sq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDisc {
    pub re: Rational,
    pub im: Rational,
    pub radius_sq: Rational,
}

const CERT_BITS: u32 = 64;

impl RootDisc {
    fn center(&self) -> C {
        (self.re.clone(), self.im.clone())
    }

    fn radius_up(&self) -> Rational {
        sqrt_bound(&self.radius_sq, CERT_BITS, Round::Up)
    }

    /// Every point of the disc has modulus below 1.
    pub fn inside_unit_circle(&self) -> bool {
        sqrt_bound(&cnorm(&self.center()), CERT_BITS, Round::Up) + self.radius_up() < Rational::one()
    }

    /// Every point of the disc has modulus above 1.
    pub fn outside_unit_circle(&self) -> bool {
        sqrt_bound(&cnorm(&self.center()), CERT_BITS, Round::Down) - self.radius_up() > Rational::one()
    }

    fn disjoint(&self, o: &RootDisc) -> bool {
        let d2 = cnorm(&csub(&self.center(), &o.center()));
        let cross = sqrt_bound(&(&self.radius_sq * &o.radius_sq), CERT_BITS, Round::Up);
        d2 > &self.radius_sq + &o.radius_sq + cross * Rational::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> (f64, f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
            self.radius_up().to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Floating-point root approximations by the Aberth–Ehrlich iteration.
fn aberth(p: &IntPoly) -> Vec<Complex64> {
    let n = p.degree();
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + c;
        }
        (v, d)
    };
    let radius = root_bound(p).to_f64().unwrap_or(2.0).min(1e6) * 0.9;
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Durand–Kerner steps at absolute precision `2^-bits`.
fn refine(p: &IntPoly, z: &mut [C], bits: u32) {
    let n = z.len();
    let tol = pow2(-2 * bits as i64);
    for _ in 0..60 {
        let mut worst = Rational::zero();
        for i in 0..n {
            let mut den: C = (Rational::one(), Rational::zero());
            for j in 0..n {
                if j != i {
                    den = cmul(&den, &csub(&z[i], &z[j]));
                }
            }
            if cnorm(&den).is_zero() {
                continue;
            }
            let step = cdiv(&ceval(p, &z[i]), &den);
            let next = csub(&z[i], &step);
            z[i] = (round_abs(&next.0, bits), round_abs(&next.1, bits));
            worst = worst.max(cnorm(&step));
        }
        if worst < tol {
            break;
        }
    }
}

fn discs_at(p: &IntPoly, z: &[C]) -> Option<Vec<RootDisc>> {
    let n = z.len();
    let n2 = Rational::from_integer(BigInt::from(n * n));
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut den = Rational::one();
        for j in 0..n {
            if j != i {
                den *= cnorm(&csub(&z[i], &z[j]));
            }
        }
        if den.is_zero() {
            return None;
        }
        let w2 = cnorm(&ceval(p, &z[i])) / den;
        out.push(RootDisc { re: z[i].0.clone(), im: z[i].1.clone(), radius_sq: w2 * &n2 });
    }
    for i in 0..n {
        for j in i + 1..n {
            if !out[i].disjoint(&out[j]) {
                return None;
            }
        }
    }
    Some(out)
}

fn start_points(p: &IntPoly, bits: u32) -> Vec<C> {
    let exact = |x: f64| Rational::from_float(x).unwrap_or_default();
    aberth(p).into_iter().map(|c| (round_abs(&exact(c.re), bits), round_abs(&exact(c.im), bits))).collect()
}

/// Pairwise disjoint root discs, refining from 64 bits up to `max_bits`.
/// `None` if the discs never separate.
pub fn root_discs(spec: &AlgebraicIntegerSpec, max_bits: u32) -> Option<Vec<RootDisc>> {
    DiscRefiner::new(spec.poly(), max_bits).find_map(|d| d)
}

// Yields the disc set (or None) at each precision.
struct DiscRefiner<'a> {
    p: &'a IntPoly,
    z: Vec<C>,
    bits: u32,
    max_bits: u32,
    done: bool,
}

impl<'a> DiscRefiner<'a> {
    fn new(p: &'a IntPoly, max_bits: u32) -> Self {
        let bits = 64.min(max_bits.max(16));
        DiscRefiner { p, z: start_points(p, bits), bits, max_bits, done: false }
    }
}

impl Iterator for DiscRefiner<'_> {
    type Item = Option<Vec<RootDisc>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        refine(self.p, &mut self.z, self.bits);
        let discs = discs_at(self.p, &self.z);
        if self.bits >= self.max_bits {
            self.done = true;
        } else {
            self.bits = (self.bits * 2).min(self.max_bits);
        }
        Some(discs)
    }
}

// A disc containing the values of one coefficient of a candidate factor.
struct CDisc {
    c: C,
    r: Rational,
}

fn may_be_integer(d: &CDisc) -> bool {
    let r2 = &d.r * &d.r;
    let y2 = &d.c.1 * &d.c.1;
    [d.c.0.floor(), d.c.0.ceil()].iter().any(|m| {
        let dx = &d.c.0 - m;
        &dx * &dx + &y2 <= r2
    })
}

fn modulus_up(c: &C) -> Rational {
    sqrt_bound(&cnorm(c), CERT_BITS, Round::Up)
}

/// Coefficient enclosures of `Π_{i ∈ S}(x − z_i)` by circular arithmetic.
fn factor_coeffs(discs: &[RootDisc], subset: &[usize]) -> Vec<CDisc> {
    let mut coeffs = vec![CDisc { c: (Rational::one(), Rational::zero()), r: Rational::zero() }];
    for &i in subset {
        let z = discs[i].center();
        let rz = discs[i].radius_up();
        let mz = modulus_up(&z);
        let mut next: Vec<CDisc> = (0..=coeffs.len())
            .map(|_| CDisc { c: (Rational::zero(), Rational::zero()), r: Rational::zero() })
            .collect();
        for (k, a) in coeffs.iter().enumerate() {
            next[k + 1].c = cadd(&next[k + 1].c, &a.c);
            next[k + 1].r += &a.r;
            // −z·a: centre −z·c, radius |z|·r_a + |c_a|·r_z + r_z·r_a
            let prod = cmul(&z, &a.c);
            next[k].c = csub(&next[k].c, &prod);
            next[k].r += &mz * &a.r + modulus_up(&a.c) * &rz + &rz * &a.r;
        }
        coeffs = next;
    }
    coeffs
}

fn subsets(n: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n))
        .filter(move |m| m.count_ones() as usize == d)
        .map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

const SUBSET_SEARCH_DEGREE: usize = 16;

/// Uses certified discs to rule out every factor degree left open by the
/// modular test, or to exhibit a factor.
fn irreducibility_from_discs(f: &IntPoly, discs: &[RootDisc]) -> Irreducibility {
    let n = f.degree();
    if n > SUBSET_SEARCH_DEGREE {
        return Irreducibility::Undecided;
    }
    let mut open = false;
    for d in possible_factor_degrees(f).into_iter().filter(|&d| 2 * d <= n) {
        for s in subsets(n, d) {
            let coeffs = factor_coeffs(discs, &s);
            if coeffs.iter().all(may_be_integer) {
                let cand = IntPoly::new(coeffs.iter().map(|c| c.c.0.round().to_integer()).collect());
                if cand.degree() == d && f.div_exact(&cand).is_some() {
                    return Irreducibility::Reducible(cand);
                }
                open = true;
            }
        }
    }
    if open {
        Irreducibility::Undecided
    } else {
        Irreducibility::Irreducible
    }
}

fn check_irreducible(f: &IntPoly, max_bits: u32) -> Result<()> {
    let verdict = match irreducibility(f, None) {
        Irreducibility::Undecided => {
            let mut v = Irreducibility::Undecided;
            for discs in DiscRefiner::new(f, max_bits).flatten() {
                v = irreducibility_from_discs(f, &discs);
                if v != Irreducibility::Undecided {
                    break;
                }
            }
            v
        }
        v => v,
    };
    match verdict {
        Irreducibility::Irreducible => Ok(()),
        Irreducibility::Reducible(g) => Err(Error::Reducible(format!("{f} is divisible by {g}"))),
        Irreducibility::Undecided => Err(Error::Undecided(format!("irreducibility of {f} at {max_bits} bits"))),
    }
}

/// `g` with `z^{−m} f(z) = g(z + 1/z)` for a self-reciprocal `f` of degree `2m`.
pub fn trace_polynomial(f: &IntPoly) -> IntPoly {
    let m = f.degree() / 2;
    let add = |a: &[BigInt], b: &[BigInt], k: &BigInt| -> Vec<BigInt> {
        let n = a.len().max(b.len());
        (0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default() * k).collect()
    };
    // t_0 = 2, t_1 = y, t_{k+1} = y·t_k − t_{k−1}
    let mut t_prev: Vec<BigInt> = vec![BigInt::from(2)];
    let mut t: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    let mut g: Vec<BigInt> = vec![f.coeff(m)];
    for k in 1..=m {
        g = add(&g, &t, &f.coeff(m + k));
        let mut yt = vec![BigInt::zero()];
        yt.extend(t.iter().cloned());
        let next = add(&yt, &t_prev, &-BigInt::one());
        t_prev = std::mem::replace(&mut t, next);
    }
    IntPoly::new(g)
}

/// Pisot, Salem or neither, for an irreducible monic polynomial.
///
/// Salem numbers are recognised through the trace polynomial of a
/// self-reciprocal `f`: one root above 2 and all others in `(−2, 2)`.
/// Pisot numbers need one real root above 1 and every other root in a disc
/// certified inside the unit circle.
pub fn classify_algebraic_integer(spec: &AlgebraicIntegerSpec, max_bits: u32) -> Result<AlgebraicKind> {
    let f = spec.poly();
    let n = f.degree();
    if n == 1 {
        let c = -f.coeff(0);
        return Ok(if c >= BigInt::from(2) { AlgebraicKind::Pisot } else { AlgebraicKind::Neither });
    }
    check_irreducible(f, max_bits)?;
    let one = Rational::one();
    if count_real_roots(f, Some(&one), None) != 1 {
        return Ok(AlgebraicKind::Neither);
    }
    if f.is_self_reciprocal() {
        let g = trace_polynomial(f);
        let two = Rational::from_integer(BigInt::from(2));
        let above = count_real_roots(&g, Some(&two), None);
        let inner = count_real_roots(&g, Some(&-two.clone()), Some(&two)) - usize::from(g.eval(&two).is_zero());
        let m = g.degree();
        return Ok(match (n, above, inner) {
            (2, 1, _) => AlgebraicKind::Pisot,
            (_, 1, k) if n >= 4 && k == m - 1 => AlgebraicKind::Salem,
            _ => AlgebraicKind::Neither,
        });
    }
    for discs in DiscRefiner::new(f, max_bits).flatten() {
        let outside = discs.iter().filter(|d| d.outside_unit_circle()).count();
        let inside = discs.iter().filter(|d| d.inside_unit_circle()).count();
        if outside + inside == n {
            return Ok(if outside == 1 { AlgebraicKind::Pisot } else { AlgebraicKind::Neither });
        }
        if outside >= 2 {
            return Ok(AlgebraicKind::Neither);
        }
    }
    Err(Error::Undecided(format!("root discs of {f} not separated from the unit circle at {max_bits} bits")))
}
