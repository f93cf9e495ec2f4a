use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{round_dyadic, sqrt_bound, Rational, Round};
use crate::poly::IntPoly;

/// `Q(β)` for `β` the larger root of `x² + c₁x + c₀` with a non-square
/// positive discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadField {
    c1: BigInt,
    c0: BigInt,
    disc: BigInt,
}

/// `a + b·β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
}

impl QuadElem {
    pub fn rational(a: Rational) -> Self {
        QuadElem { a, b: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}β", self.a, self.b)
    }
}

fn r(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

impl QuadField {
    pub fn new(c1: i64, c0: i64) -> Result<Self> {
        Self::from_coeffs(BigInt::from(c1), BigInt::from(c0))
    }

    pub fn from_coeffs(c1: BigInt, c0: BigInt) -> Result<Self> {
        let disc = &c1 * &c1 - BigInt::from(4) * &c0;
        if !disc.is_positive() {
            return Err(Error::InvalidArgument(format!("x² + {c1}x + {c0} has no real roots")));
        }
        let s = disc.sqrt();
        if &s * &s == disc {
            return Err(Error::Reducible(format!("x² + {c1}x + {c0} has rational roots")));
        }
        Ok(QuadField { c1, c0, disc })
    }

    pub fn from_poly(p: &IntPoly) -> Result<Self> {
        if p.degree() != 2 || !p.is_monic() {
            return Err(Error::InvalidArgument(format!("{p} is not a monic quadratic")));
        }
        Self::from_coeffs(p.coeff(1), p.coeff(0))
    }

    pub fn poly(&self) -> IntPoly {
        IntPoly::new(vec![self.c0.clone(), self.c1.clone(), BigInt::one()])
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn beta(&self) -> QuadElem {
        QuadElem { a: Rational::zero(), b: Rational::one() }
    }

    pub fn int(&self, n: i64) -> QuadElem {
        QuadElem::rational(r(BigInt::from(n)))
    }

    pub fn add(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    pub fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    /// Uses `β² = −c₁β − c₀`.
    pub fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let bb = &x.b * &y.b;
        QuadElem { a: &x.a * &y.a - r(self.c0.clone()) * &bb, b: &x.a * &y.b + &x.b * &y.a - r(self.c1.clone()) * bb }
    }

    /// `N(a + bβ) = a² − c₁ab + c₀b²`.
    pub fn norm(&self, x: &QuadElem) -> Rational {
        &x.a * &x.a - r(self.c1.clone()) * &x.a * &x.b + r(self.c0.clone()) * &x.b * &x.b
    }

    pub fn inv(&self, x: &QuadElem) -> Result<QuadElem> {
        if x.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        let n = self.norm(x);
        // conjugate: a + bβ' with β' = −c₁ − β
        let conj = QuadElem { a: &x.a - r(self.c1.clone()) * &x.b, b: -x.b.clone() };
        Ok(QuadElem { a: conj.a / &n, b: conj.b / n })
    }

    pub fn div(&self, x: &QuadElem, y: &QuadElem) -> Result<QuadElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &QuadElem, e: usize) -> QuadElem {
        (0..e).fold(self.int(1), |acc, _| self.mul(&acc, x))
    }

    // a + bβ = u + v√D with u = a − b·c₁/2, v = b/2
    fn surd(&self, x: &QuadElem) -> (Rational, Rational) {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        (&x.a - &x.b * r(self.c1.clone()) * &half, &x.b * half)
    }

    /// Exact sign of the real value.
    pub fn signum(&self, x: &QuadElem) -> i32 {
        let (u, v) = self.surd(x);
        let su = sgn(&u);
        let sv = sgn(&v);
        if su == 0 || sv == 0 || su == sv {
            return if su != 0 { su } else { sv };
        }
        // opposite signs: compare u² with v²·D
        let lhs = &u * &u;
        let rhs = &v * &v * r(self.disc.clone());
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => su,
            std::cmp::Ordering::Less => sv,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Rational bounds `lo ≤ x ≤ hi` with about `bits` bits.
    pub fn bounds(&self, x: &QuadElem, bits: u32) -> (Rational, Rational) {
        let (u, v) = self.surd(x);
        let d = r(self.disc.clone());
        let (slo, shi) = (sqrt_bound(&d, bits, Round::Down), sqrt_bound(&d, bits, Round::Up));
        let (lo, hi) = if v.is_negative() { (&u + &v * shi, &u + &v * slo) } else { (&u + &v * slo, &u + &v * shi) };
        (round_dyadic(&lo, bits, Round::Down), round_dyadic(&hi, bits, Round::Up))
    }

    /// Exact `⌊x⌋`.
    pub fn floor(&self, x: &QuadElem) -> BigInt {
        let (lo, _) = self.bounds(x, 64);
        let mut n = lo.floor().to_integer();
        loop {
            // x − n ≥ 0 and x − (n+1) < 0
            let below = self.signum(&self.sub(x, &QuadElem::rational(r(n.clone())))) >= 0;
            if !below {
                n -= 1;
                continue;
            }
            let next: BigInt = &n + 1;
            if self.signum(&self.sub(x, &QuadElem::rational(r(next.clone())))) >= 0 {
                n = next;
                continue;
            }
            return n;
        }
    }

    pub fn to_f64(&self, x: &QuadElem) -> f64 {
        use num_traits::ToPrimitive;
        let (lo, hi) = self.bounds(x, 64);
        ((lo + hi) / r(BigInt::from(2))).to_f64().unwrap_or(f64::NAN)
    }
}

fn sgn(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn golden() -> QuadField {
        QuadField::new(-1, -1).unwrap()
    }

    #[test]
    fn field_identities() {
        let k = golden();
        let b = k.beta();
        // β² = β + 1
        assert_eq!(k.mul(&b, &b), k.add(&b, &k.int(1)));
        assert_eq!(k.norm(&b), rat(-1, 1));
        let x = QuadElem { a: rat(3, 7), b: rat(-2, 5) };
        assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.int(1));
        assert!(k.inv(&k.int(0)).is_err());
    }

    #[test]
    fn sign_and_floor() {
        let k = golden();
        let b = k.beta();
        assert_eq!(k.floor(&b), BigInt::from(1));
        assert_eq!(k.signum(&k.sub(&b, &QuadElem::rational(rat(161803, 100000)))), 1);
        assert_eq!(k.signum(&k.sub(&b, &QuadElem::rational(rat(161804, 100000)))), -1);
        // β − 1 = 1/β
        let x = k.sub(&b, &k.int(1));
        assert_eq!(k.mul(&x, &b), k.int(1));
        assert_eq!(k.floor(&k.mul(&b, &k.int(1000))), BigInt::from(1618));
        assert_eq!(k.floor(&k.sub(&k.int(0), &b)), BigInt::from(-2));
        assert_eq!(k.signum(&k.int(0)), 0);
    }

    #[test]
    fn rejects_degenerate_fields() {
        assert!(QuadField::new(-3, 2).is_err());
        assert!(QuadField::new(0, 1).is_err());
    }
}
