//! Reference constants and elementary functions on balls.
//!
//! π comes only from Machin's arctangent formula and logarithms only from
//! atanh series, so none of the values produced here share a route with
//! the cataloged series they are compared against.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ball::Ball;
use super::mag::Mag;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElemFn {
    Ln,
    Arctan,
    Arcsin,
    Arcsinh,
}

pub fn elem_fn(f: ElemFn, x: &Ball, prec: u64) -> Result<Ball> {
    match f {
        ElemFn::Ln => ln(x, prec),
        ElemFn::Arctan => Ok(arctan(x, prec)),
        ElemFn::Arcsin => arcsin(x, prec),
        ElemFn::Arcsinh => arcsinh(x, prec),
    }
}

fn guard_bits(prec: u64) -> u64 {
    24 + 64 - prec.leading_zeros() as u64
}

/// Fixed-point `scale * sum_j s^j / ((2j+1) n^(2j+1))` with `s = -1`
/// (arctan) or `s = +1` (atanh), `scale = 2^bits`. Returns the sum and an
/// error bound in units of the last place.
fn inverse_series_fixed(n: u64, bits: u64, alternating: bool) -> (BigInt, u64) {
    let n2 = BigInt::from(n) * n;
    let mut power = (BigInt::one() << bits) / n;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * j + 1);
        if alternating && j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power /= &n2;
        j += 1;
        terms += 1;
    }
    // The computed powers stay within 2 ulps of the exact ones; each term adds
    // one more truncation. The omitted tail is below 2 ulps (alternating) or
    // 2/(1 - 1/n^2) <= 3 ulps.
    (sum, 3 * terms + 3)
}

/// π with radius at most `2^(2-prec)`, from `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn const_pi(prec: u64) -> Ball {
    let prec = prec.max(16);
    let bits = prec + guard_bits(prec);
    let (a5, e5) = inverse_series_fixed(5, bits, true);
    let (a239, e239) = inverse_series_fixed(239, bits, true);
    let mid = a5 * 16 - a239 * 4;
    let err = Mag::from_u64(16 * e5 + 4 * e239).mul_2exp(-(bits as i64));
    Ball::from_dyadic(mid, -(bits as i64)).with_added_radius(err).rounded(prec + 1)
}

/// ln 2 from `18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749)`.
pub fn const_ln2(prec: u64) -> Ball {
    let bits = prec + guard_bits(prec);
    let (a, ea) = inverse_series_fixed(26, bits, false);
    let (b, eb) = inverse_series_fixed(4801, bits, false);
    let (c, ec) = inverse_series_fixed(8749, bits, false);
    let mid = a * 18 - b * 2 + c * 8;
    let err = Mag::from_u64(18 * ea + 2 * eb + 8 * ec).mul_2exp(-(bits as i64));
    Ball::from_dyadic(mid, -(bits as i64)).with_added_radius(err).rounded(prec + 1)
}

/// Sums `sum_j sign^j t^(2j+1)/(2j+1)` for `|t| <= 1/2` and adds the tail bound
/// `|t|^(2N+3) / (1 - t^2) <= 2 |t|^(2N+3)`.
fn odd_power_series(t: &Ball, alternating: bool, wp: u64) -> Ball {
    assert!(t.abs_upper() <= Mag::pow2(-1), "series argument must satisfy |t| <= 1/2");
    let t2 = t.sqr(wp);
    let mut power = t.clone();
    let mut sum = Ball::zero();
    let cutoff = Mag::pow2(-(wp as i64) - 4);
    let mut j = 0i64;
    loop {
        let term = power.div_small(2 * j + 1, wp);
        sum = if alternating && j % 2 == 1 { sum.sub(&term, wp) } else { sum.add(&term, wp) };
        power = power.mul(&t2, wp);
        j += 1;
        let bound = power.abs_upper();
        if bound < cutoff {
            return sum.with_added_radius(bound.mul_2exp(1));
        }
    }
}

pub fn arctan(x: &Ball, prec: u64) -> Ball {
    let mut wp = prec + guard_bits(prec);
    let mut t = x.clone();
    let mut halvings = 0i64;
    let eighth = Mag::pow2(-3);
    // atan t = 2 atan(t / (1 + sqrt(1 + t^2)))
    while t.abs_upper() >= eighth {
        let root = t.sqr(wp).add(&Ball::one(), wp).sqrt(wp).expect("1 + t^2 > 0");
        t = t.div(&root.add(&Ball::one(), wp), wp).expect("denominator >= 2");
        halvings += 1;
        wp += 1;
    }
    odd_power_series(&t, true, wp).mul_2exp(halvings).rounded(prec)
}

/// `arcsin` on `[-1, 1]`; the exact endpoints map to `±π/2`.
pub fn arcsin(y: &Ball, prec: u64) -> Result<Ball> {
    let one = Mag::from_u64(1);
    if y.is_exact() && y.abs_upper() == one {
        let half_pi = const_pi(prec + 2).mul_2exp(-1);
        return Ok(if y.is_negative() { half_pi.neg() } else { half_pi }.rounded(prec));
    }
    if y.abs_upper() >= one {
        return Err(Error::domain("arcsin argument must lie within [-1, 1]"));
    }
    let wp = prec + guard_bits(prec);
    let cos = Ball::one().sub(&y.sqr(wp), wp).sqrt(wp)?;
    Ok(arctan(&y.div(&cos, wp)?, wp).rounded(prec))
}

/// Natural logarithm of a strictly positive ball.
pub fn ln(y: &Ball, prec: u64) -> Result<Ball> {
    if !y.is_positive() {
        return Err(Error::domain("ln argument must be strictly positive"));
    }
    const ROOTS: i64 = 8;
    let wp = prec + guard_bits(prec) + ROOTS as u64;
    // y = z * 2^e with z in [2/3, 4/3)
    let top = y.exp() + y.mid().bits() as i64;
    let mut e = top;
    let mut z = y.mul_2exp(-top);
    if z.mid_upper() < Mag::from_u64(2).div_down(Mag::from_u64(3)) {
        z = z.mul_2exp(1);
        e -= 1;
    }
    for _ in 0..ROOTS {
        z = z.sqrt(wp)?;
    }
    let u = z.sub(&Ball::one(), wp).div(&z.add(&Ball::one(), wp), wp)?;
    let log_z = odd_power_series(&u, false, wp).mul_2exp(ROOTS + 1);
    let log_2e = const_ln2(wp).mul_small(e, wp);
    Ok(log_z.add(&log_2e, wp).rounded(prec))
}

pub fn arcsinh(t: &Ball, prec: u64) -> Result<Ball> {
    let wp = prec + guard_bits(prec);
    if t.is_negative() {
        return Ok(arcsinh(&t.neg(), prec)?.neg());
    }
    let root = t.sqr(wp).add(&Ball::one(), wp).sqrt(wp)?;
    ln(&t.add(&root, wp), prec)
}
