//! Empirical checks of prime congruences for sums of central binomial
//! coefficients weighted by harmonic numbers.
//!
//! Left-hand sides are summed in one pass modulo `p^e`. Right-hand sides are
//! reduced exactly as rationals first, so a `p` left in a reduced denominator
//! marks the check inapplicable instead of producing a spurious failure.

mod modular;
mod primes;
mod quantities;

pub use modular::{mod_inv, rational_residue, ModContext};
pub use primes::{is_prime, primes_in, sieve, SIEVE_LIMIT};
pub use quantities::{
    bernoulli_mod, euler_mod, fermat_quotient2, fib_quotient, harmonic1_mod, legendre5, legendre_minus2,
    wolstenholme_quotient,
};

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CongruenceId {
    /// `sum_{k<p} C(2k,k) H2_k / k = 2H_{p-1}/(3p^2) + (76/135) p^2 B_{p-5} (mod p^3)`
    C1a,
    /// `sum_{k<=(p-1)/2} C(2k,k) Hbar_k / 8^k = (-2/p) E_{p-3}/4 (mod p)`
    C1b,
    /// `sum_{k<p} (-2)^k C(2k,k) H2_k = (2/3) q_p(2)^2 (mod p)`
    C2a,
    /// `sum_{k<p} (-1)^k C(2k,k) H2_k = (5/2) (p/5) F_{p-(p/5)}^2 / p^2 (mod p)`
    C2b,
    /// `sum_{k<p} C(2k,k) H2_k / 2^k = -E_{p-3} (mod p)`
    Cs6,
}

impl CongruenceId {
    pub const ALL: [CongruenceId; 5] =
        [CongruenceId::C1a, CongruenceId::C1b, CongruenceId::C2a, CongruenceId::C2b, CongruenceId::Cs6];

    pub fn name(self) -> &'static str {
        match self {
            CongruenceId::C1a => "C1a",
            CongruenceId::C1b => "C1b",
            CongruenceId::C2a => "C2a",
            CongruenceId::C2b => "C2b",
            CongruenceId::Cs6 => "CS6",
        }
    }

    /// Smallest admissible prime.
    pub fn min_prime(self) -> u64 {
        match self {
            CongruenceId::C2b => 7,
            _ => 5,
        }
    }

    /// Exponent of the modulus `p^e`.
    pub fn exponent(self) -> u32 {
        match self {
            CongruenceId::C1a => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CongruenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CongruenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CongruenceId> {
        CongruenceId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

impl Serialize for CongruenceId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CongruenceStatus {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for CongruenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CongruenceStatus::Pass => "pass",
            CongruenceStatus::Fail => "fail",
            CongruenceStatus::Inapplicable => "inapplicable",
        })
    }
}

/// One congruence at one prime. Residues are modulo `modulus`; `rhs` is
/// absent when the right side is not `p`-integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub id: CongruenceId,
    pub p: u64,
    #[serde(serialize_with = "ser_u128")]
    pub lhs: u128,
    #[serde(serialize_with = "ser_opt_u128")]
    pub rhs: Option<u128>,
    pub status: CongruenceStatus,
    #[serde(skip)]
    pub modulus: u128,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

// residues mod p^5 can exceed 2^64, so keep JSON numbers exact via u64 when
// they fit and strings otherwise
fn ser_u128<S: Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(*v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.collect_str(v),
    }
}

fn ser_opt_u128<S: Serializer>(v: &Option<u128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser_u128(x, s),
        None => s.serialize_none(),
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// One pass over `k = 1..=last` with `C(2k,k)` and the harmonic weights kept
/// modulo `p^e`. `C(2k,k)` is advanced by `2(2k-1)/k`, which only needs
/// inverses of `k < p`.
fn lhs_sum(id: CongruenceId, ctx: &ModContext) -> Result<u128> {
    let p = ctx.p();
    let last = if id == CongruenceId::C1b { (p - 1) / 2 } else { p - 1 };
    let factor = match id {
        CongruenceId::C1a => 1,
        CongruenceId::C1b => mod_inv(8, ctx)?,
        CongruenceId::C2a => ctx.reduce_i128(-2),
        CongruenceId::C2b => ctx.reduce_i128(-1),
        CongruenceId::Cs6 => mod_inv(2, ctx)?,
    };
    let (mut binom, mut power, mut h2, mut hbar, mut sum) = (1u128, 1u128, 0u128, 0u128, 0u128);
    for k in 1..=last {
        let kk = k as u128;
        binom = ctx.mul(binom, ctx.mul(2, 2 * kk - 1));
        let inv_k = mod_inv(kk, ctx)?;
        binom = ctx.mul(binom, inv_k);
        power = ctx.mul(power, factor);
        h2 = ctx.add(h2, ctx.mul(inv_k, inv_k));
        let term = match id {
            CongruenceId::C1a => ctx.mul(ctx.mul(binom, inv_k), h2),
            CongruenceId::C1b => {
                let inv_odd = mod_inv(2 * kk - 1, ctx)?;
                hbar = ctx.add(hbar, ctx.mul(inv_odd, inv_odd));
                ctx.mul(ctx.mul(binom, power), hbar)
            }
            _ => ctx.mul(ctx.mul(binom, power), h2),
        };
        sum = ctx.add(sum, term);
    }
    Ok(sum)
}

/// Right side as a residue, or `None` if a reduced denominator contains `p`.
fn rhs_residue(id: CongruenceId, ctx: &ModContext) -> Result<Option<u128>> {
    let p = ctx.p();
    let rr = |x: &BigRational| match rational_residue(x, ctx) {
        Ok(r) => Ok(Some(r)),
        Err(Error::NotInvertible { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let mul_opt = |a: Option<u128>, b: u128| a.map(|a| ctx.mul(a, b));
    Ok(match id {
        CongruenceId::C1a => {
            let w = wolstenholme_quotient(p)?;
            let p2 = BigRational::from_integer((p as u128 * p as u128).into());
            let c = q(76, 135) * p2;
            // B_{p-5} is p-integral for p >= 7 and c = 0 mod p^2 there, so B
            // mod p suffices; at p = 5, B_0 = 1 is exact.
            let cb = mul_opt(rr(&c)?, bernoulli_mod(p)?);
            let two_thirds = rr(&q(2, 3))?;
            match (two_thirds, cb) {
                (Some(t), Some(cb)) => Some(ctx.add(ctx.mul(t, w), cb)),
                _ => None,
            }
        }
        CongruenceId::C1b => {
            let e = euler_mod(p)?;
            let sign = legendre_minus2(p);
            mul_opt(rr(&q(sign as i64, 4))?, e)
        }
        CongruenceId::C2a => {
            let f = fermat_quotient2(p)?;
            mul_opt(rr(&q(2, 3))?, ctx.mul(f, f))
        }
        CongruenceId::C2b => {
            let f = fib_quotient(p)?;
            let sign = legendre5(p)? as i64;
            mul_opt(rr(&q(5 * sign, 2))?, ctx.mul(f, f))
        }
        CongruenceId::Cs6 => Some(ctx.neg(euler_mod(p)?)),
    })
}

/// Checks congruence `id` at the prime `p`.
pub fn check_congruence(id: CongruenceId, p: u64) -> Result<CongruenceReport> {
    if p < id.min_prime() {
        return Err(Error::Precondition(format!("{id} needs a prime p >= {}, got {p}", id.min_prime())));
    }
    let ctx = ModContext::new(p, id.exponent())?;
    let lhs = lhs_sum(id, &ctx)?;
    let rhs = rhs_residue(id, &ctx)?;
    let status = match rhs {
        None => CongruenceStatus::Inapplicable,
        Some(r) if r == lhs => CongruenceStatus::Pass,
        Some(_) => CongruenceStatus::Fail,
    };
    let mut notes = Vec::new();
    if id == CongruenceId::C1b {
        notes.push("sum truncated at k = (p-1)/2; later terms are not p-integral".to_string());
    }
    if rhs.is_none() {
        notes.push("p divides a reduced denominator of the right side".to_string());
    }
    Ok(CongruenceReport { id, p, lhs, rhs, status, modulus: ctx.modulus(), notes: notes.join("; ") })
}

/// Primes in `p_min..=p_max` admissible for `id`.
pub fn sweep_primes(id: CongruenceId, p_min: u64, p_max: u64) -> Result<Vec<u64>> {
    if p_min < 3 || p_min > p_max {
        return Err(Error::Precondition(format!("need 3 <= p_min <= p_max, got {p_min}..{p_max}")));
    }
    primes_in(p_min.max(id.min_prime()), p_max)
}

/// Checks `id` at every admissible prime in `p_min..=p_max`, in ascending
/// order.
pub fn sweep(id: CongruenceId, p_min: u64, p_max: u64) -> Result<Vec<CongruenceReport>> {
    sweep_primes(id, p_min, p_max)?.into_iter().map(|p| check_congruence(id, p)).collect()
}
