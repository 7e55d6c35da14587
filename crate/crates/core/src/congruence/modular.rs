use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// Arithmetic modulo `p^e` for an odd prime `p`.
///
/// Residues are `u128`; products are formed natively while the modulus fits
/// in 64 bits and through `BigUint` beyond that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModContext {
    p: u64,
    e: u32,
    modulus: u128,
}

impl ModContext {
    pub fn new(p: u64, e: u32) -> Result<ModContext> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not an odd prime")));
        }
        if !(1..=5).contains(&e) {
            return Err(Error::Precondition(format!("exponent {e} outside 1..=5")));
        }
        let modulus = (p as u128).checked_pow(e).filter(|m| m.leading_zeros() >= 2);
        let modulus = modulus.ok_or_else(|| Error::Precondition(format!("{p}^{e} is too large")))?;
        Ok(ModContext { p, e, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn reduce_i128(&self, a: i128) -> u128 {
        a.rem_euclid(self.modulus as i128) as u128
    }

    pub fn add(&self, a: u128, b: u128) -> u128 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u128, b: u128) -> u128 {
        (a + self.modulus - b) % self.modulus
    }

    pub fn neg(&self, a: u128) -> u128 {
        (self.modulus - a % self.modulus) % self.modulus
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        if self.modulus <= u64::MAX as u128 {
            (a * b) % self.modulus
        } else {
            let r = BigUint::from(a) * BigUint::from(b) % BigUint::from(self.modulus);
            r.to_u128().expect("residue below modulus")
        }
    }

    pub fn pow(&self, base: u128, mut exp: u64) -> u128 {
        let mut b = base % self.modulus;
        let mut acc = 1 % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Residue of an arbitrary integer.
    pub fn reduce_big(&self, n: &BigInt) -> u128 {
        n.mod_floor(&BigInt::from(self.modulus)).to_u128().expect("residue below modulus")
    }
}

/// Inverse of `a` modulo `p^e`.
pub fn mod_inv(a: u128, ctx: &ModContext) -> Result<u128> {
    let m = ctx.modulus as i128;
    let (mut r0, mut r1) = (m, (a % ctx.modulus) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { value: a.to_string(), modulus: ctx.modulus.to_string() });
    }
    Ok(s0.rem_euclid(m) as u128)
}

/// Residue of a rational modulo `p^e`; the rational is already in lowest
/// terms, so a factor `p` in the denominator means the value is not
/// `p`-integral.
pub fn rational_residue(q: &BigRational, ctx: &ModContext) -> Result<u128> {
    if q.is_zero() {
        return Ok(0);
    }
    let den = ctx.reduce_big(q.denom());
    let inv = mod_inv(den, ctx)
        .map_err(|_| Error::NotInvertible { value: q.to_string(), modulus: ctx.modulus.to_string() })?;
    Ok(ctx.mul(ctx.reduce_big(q.numer()), inv))
}
