use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{is_prime, valuation_rat, Rational};
use crate::words::{Alphabet, SequenceSource, Symbol};

/// `α = Σ_{k ≥ −m} a_k p^k` with digits in `0..p`.
#[derive(Debug, Clone)]
pub struct HenselExpansion {
    pub prime: u64,
    /// The expansion starts at `k = −m`.
    pub m: usize,
    /// `a_{−m}, a_{−m+1}, …` at indices `1, 2, …`.
    pub digits: SequenceSource,
}

impl HenselExpansion {
    /// `a_k` for `k ≥ −m`.
    pub fn digit(&self, k: i64) -> Symbol {
        let idx = k + self.m as i64 + 1;
        assert!(idx >= 1, "digit index below the start of the expansion");
        self.digits.get(idx as usize)
    }

    /// The tail `a_1, a_2, …` (the digits `a_{−m} … a_0` are dropped).
    pub fn tail(&self) -> SequenceSource {
        let digits = self.digits.clone();
        let shift = self.m + 2;
        SequenceSource::from_fn(format!("{}[k>=1]", self.digits.id()), self.digits.alphabet().clone(), move |i| {
            digits.get(i + shift)
        })
    }
}

/// `(n mod p) / (d mod p)` in `F_p`.
fn residue(x: &Rational, p: &BigInt) -> BigInt {
    let n = x.numer().mod_floor(p);
    let d = x.denom().mod_floor(p);
    // d is a unit: Fermat inverse
    let inv = d.modpow(&(p - 2u32), p);
    (n * inv).mod_floor(p)
}

/// Hensel expansion of a rational number in `Q_p`.
pub fn hensel_digits(alpha: &Rational, p: u64) -> Result<HenselExpansion> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!("{p} is not a supported prime")));
    }
    let m = if alpha.is_zero() { 0 } else { (-valuation_rat(alpha, p)).max(0) as usize };
    let pb = BigInt::from(p);
    let mut current = alpha * Rational::from_integer(num_traits::pow(pb.clone(), m));
    let id = format!("hensel({alpha},{p})");
    let digits = SequenceSource::from_fn(id, Alphabet::digits(p as u32), move |_| {
        let d = residue(&current, &pb);
        current = (&current - Rational::from_integer(d.clone())) / Rational::from_integer(pb.clone());
        d.to_u32().expect("digit below p")
    });
    Ok(HenselExpansion { prime: p, m, digits })
}
