//! Midpoint-radius arbitrary-precision reals.
//!
//! A [`Ball`] represents every real in `[mid*2^exp - rad, mid*2^exp + rad]`.
//! All operations take an explicit precision in bits and return a ball that
//! contains the exact image of their inputs.

use std::borrow::Cow;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mag::Mag;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    exp: i64,
    rad: Mag,
}

impl Ball {
    pub fn zero() -> Ball {
        Ball { mid: BigInt::zero(), exp: 0, rad: Mag::ZERO }
    }

    pub fn one() -> Ball {
        Ball::from_int(BigInt::one())
    }

    /// Exact ball for an integer; no rounding.
    pub fn from_int(n: impl Into<BigInt>) -> Ball {
        Ball { mid: n.into(), exp: 0, rad: Mag::ZERO }
    }

    /// `n` rounded to `prec` bits.
    pub fn from_int_prec(n: &BigInt, prec: u64) -> Ball {
        let mid_bits = n.bits();
        if mid_bits <= prec {
            return Ball::from_int(n.clone());
        }
        let s = mid_bits - prec;
        Ball { mid: n >> s, exp: s as i64, rad: Mag::pow2(s as i64) }
    }

    /// `m * 2^e` exactly.
    pub fn from_dyadic(m: impl Into<BigInt>, e: i64) -> Ball {
        Ball { mid: m.into(), exp: e, rad: Mag::ZERO }
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, prec: u64) -> Ball {
        Ball::from_rational(&BigRational::new(num.into(), den.into()), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Ball {
        let (num, den) = (q.numer(), q.denom());
        if den.is_one() {
            return Ball::from_int_prec(num, prec);
        }
        let s = (prec as i64 + 2 + den.bits() as i64 - num.bits() as i64).max(0) as u64;
        let (mid, rem) = (num << s).div_rem(den);
        let rad = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(-(s as i64)) };
        Ball { mid, exp: -(s as i64), rad }.round(prec)
    }

    /// Adds `r` to the radius.
    pub fn with_added_radius(mut self, r: Mag) -> Ball {
        self.rad = self.rad.add_up(r);
        self
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn mid_upper(&self) -> Mag {
        Mag::from_biguint_up(self.mid.magnitude(), self.exp)
    }

    pub fn mid_lower(&self) -> Mag {
        Mag::from_biguint_down(self.mid.magnitude(), self.exp)
    }

    /// Upper bound of `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid_upper().add_up(self.rad)
    }

    /// Lower bound of `|x|` over the ball (zero if it may contain zero).
    pub fn abs_lower(&self) -> Mag {
        self.mid_lower().sub_down(self.rad)
    }

    /// Conservative: true unless the ball provably excludes zero.
    pub fn contains_zero(&self) -> bool {
        self.mid.is_zero() || self.mid_lower() <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.mid.is_positive() && !self.contains_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && !self.contains_zero()
    }

    /// Bits of relative accuracy implied by the radius, roughly.
    pub fn rel_accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            return i64::MAX;
        }
        if self.mid.is_zero() {
            return i64::MIN;
        }
        (self.exp + self.mid.bits() as i64) - self.rad.log2_ceil()
    }

    fn round(mut self, prec: u64) -> Ball {
        let bits = self.mid.bits();
        if bits > prec {
            let s = bits - prec;
            let inexact = self.mid.trailing_zeros().unwrap_or(0) < s;
            self.mid >>= s; // floor; the error is below 2^(exp+s)
            self.exp += s as i64;
            if inexact {
                self.rad = self.rad.add_up(Mag::pow2(self.exp));
            }
        }
        if self.mid.is_zero() {
            self.exp = 0;
        }
        self
    }

    /// Copy rounded to `prec` bits.
    pub fn rounded(&self, prec: u64) -> Ball {
        self.clone().round(prec)
    }

    fn top(&self) -> i64 {
        self.exp + self.mid.bits() as i64
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, exp: self.exp, rad: self.rad }
    }

    pub fn add(&self, other: &Ball, prec: u64) -> Ball {
        let rad = self.rad.add_up(other.rad);
        if other.mid.is_zero() {
            return Ball { mid: self.mid.clone(), exp: self.exp, rad }.round(prec);
        }
        if self.mid.is_zero() {
            return Ball { mid: other.mid.clone(), exp: other.exp, rad }.round(prec);
        }
        let margin = prec as i64 + 8;
        if other.top() + margin < self.top() {
            let rad = rad.add_up(other.mid_upper());
            return Ball { mid: self.mid.clone(), exp: self.exp, rad }.round(prec);
        }
        if self.top() + margin < other.top() {
            let rad = rad.add_up(self.mid_upper());
            return Ball { mid: other.mid.clone(), exp: other.exp, rad }.round(prec);
        }
        let e = self.exp.min(other.exp);
        let mid = (&self.mid << (self.exp - e) as u64) + (&other.mid << (other.exp - e) as u64);
        Ball { mid, exp: e, rad }.round(prec)
    }

    pub fn sub(&self, other: &Ball, prec: u64) -> Ball {
        self.add(&other.neg(), prec)
    }

    fn trimmed(&self, prec: u64) -> Cow<'_, Ball> {
        if self.mid.bits() > 2 * prec + 16 {
            Cow::Owned(self.rounded(prec + 8))
        } else {
            Cow::Borrowed(self)
        }
    }

    pub fn mul(&self, other: &Ball, prec: u64) -> Ball {
        let (a, b) = (self.trimmed(prec), other.trimmed(prec));
        let rad = a.mid_upper().mul_up(b.rad).add_up(b.mid_upper().mul_up(a.rad)).add_up(a.rad.mul_up(b.rad));
        Ball { mid: &a.mid * &b.mid, exp: a.exp + b.exp, rad }.round(prec)
    }

    pub fn sqr(&self, prec: u64) -> Ball {
        self.mul(self, prec)
    }

    pub fn mul_int(&self, n: &BigInt, prec: u64) -> Ball {
        let nm = Mag::from_biguint_up(n.magnitude(), 0);
        Ball { mid: &self.mid * n, exp: self.exp, rad: self.rad.mul_up(nm) }.round(prec)
    }

    pub fn mul_small(&self, n: i64, prec: u64) -> Ball {
        self.mul_int(&BigInt::from(n), prec)
    }

    pub fn div_int(&self, n: &BigInt, prec: u64) -> Result<Ball> {
        if n.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        let s = (prec as i64 + 2 + n.bits() as i64 - self.mid.bits() as i64).max(0) as u64;
        let (mid, rem) = (&self.mid << s).div_rem(n);
        let exp = self.exp - s as i64;
        let nm = Mag::from_biguint_down(n.magnitude(), 0);
        let trunc = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        let rad = self.rad.div_up(nm).add_up(trunc);
        Ok(Ball { mid, exp, rad }.round(prec))
    }

    pub fn div_small(&self, n: i64, prec: u64) -> Ball {
        assert!(n != 0, "division by zero");
        self.div_int(&BigInt::from(n), prec).expect("nonzero divisor")
    }

    /// Multiply by the exact rational `num/den`.
    pub fn mul_ratio(&self, num: &BigInt, den: &BigInt, prec: u64) -> Ball {
        self.mul_int(num, prec + 4).div_int(den, prec).expect("nonzero denominator")
    }

    pub fn div(&self, other: &Ball, prec: u64) -> Result<Ball> {
        if other.contains_zero() {
            return Err(Error::domain("divisor ball contains zero"));
        }
        let (a, b) = (self.trimmed(prec), other.trimmed(prec));
        let (q, qexp, trunc) = if a.mid.is_zero() {
            (BigInt::zero(), 0, Mag::ZERO)
        } else {
            let s = (prec as i64 + 2 + b.mid.bits() as i64 - a.mid.bits() as i64).max(0) as u64;
            let qexp = a.exp - s as i64 - b.exp;
            ((&a.mid << s) / &b.mid, qexp, Mag::pow2(qexp))
        };
        let b_low = b.mid_lower();
        let num = a.mid_upper().mul_up(b.rad).add_up(b.mid_upper().mul_up(a.rad));
        let den = b_low.mul_down(b_low.sub_down(b.rad));
        let rad = num.div_up(den).add_up(trunc);
        Ok(Ball { mid: q, exp: qexp, rad }.round(prec))
    }

    pub fn recip(&self, prec: u64) -> Result<Ball> {
        Ball::one().div(self, prec)
    }

    pub fn sqrt(&self, prec: u64) -> Result<Ball> {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(Ball::zero());
        }
        if !self.is_positive() {
            return Err(Error::domain("square root of a ball that is not strictly positive"));
        }
        let mut mid = self.mid.magnitude().clone();
        let mut exp = self.exp;
        if exp.rem_euclid(2) != 0 {
            mid <<= 1u32;
            exp -= 1;
        }
        let mut s = (2 * prec as i64 + 4 - mid.bits() as i64).max(0);
        if s % 2 != 0 {
            s += 1;
        }
        let root = (mid << s as u64).sqrt();
        let rexp = (exp - s) / 2;
        let low = self.mid_lower().sub_down(self.rad);
        let prop = self.rad.div_up(low.sqrt_down().mul_2exp(1));
        let rad = prop.add_up(Mag::pow2(rexp));
        Ok(Ball { mid: BigInt::from_biguint(Sign::Plus, root), exp: rexp, rad }.round(prec))
    }

    /// Integer power by squaring.
    pub fn pow(&self, e: u32, prec: u64) -> Ball {
        let wp = prec + 2 * (32 - e.leading_zeros()) as u64 + 4;
        let mut result = Ball::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, wp);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr(wp);
            }
        }
        result.round(prec)
    }

    /// Exact multiplication by `2^e`.
    pub fn mul_2exp(&self, e: i64) -> Ball {
        if self.mid.is_zero() {
            return Ball { mid: BigInt::zero(), exp: 0, rad: self.rad.mul_2exp(e) };
        }
        Ball { mid: self.mid.clone(), exp: self.exp + e, rad: self.rad.mul_2exp(e) }
    }

    /// Upper bound of `|mid(self) - mid(other)|`.
    pub fn mid_distance(&self, other: &Ball) -> Mag {
        let e = self.exp.min(other.exp);
        let d = (&self.mid << (self.exp - e) as u64) - (&other.mid << (other.exp - e) as u64);
        Mag::from_biguint_up(d.magnitude(), e)
    }

    /// Upper bound of `|mid gap| + both radii`: how far apart any two points
    /// of the balls can be.
    pub fn gap_bound(&self, other: &Ball) -> Mag {
        self.mid_distance(other).add_up(self.rad).add_up(other.rad)
    }

    /// True if the balls share at least one point (conservative: may report
    /// an overlap for balls that only come within rounding of each other).
    pub fn overlaps(&self, other: &Ball) -> bool {
        self.mid_distance(other) <= self.rad.add_up(other.rad)
    }

    /// True if `other` lies inside `self` (conservative: may say no).
    pub fn contains(&self, other: &Ball) -> bool {
        let e = self.exp.min(other.exp);
        let d = (&self.mid << (self.exp - e) as u64) - (&other.mid << (other.exp - e) as u64);
        let dist = BigRational::new(d.abs(), BigInt::one()) * Mag::pow2(e).to_rational() + other.rad.to_rational();
        dist <= self.rad.to_rational()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let dist = (self.mid_rational() - q).abs();
        dist <= self.rad.to_rational()
    }

    pub fn mid_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mid << self.exp as u64)
        } else {
            BigRational::new(self.mid.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Exact upper endpoint as a rational.
    pub fn upper_rational(&self) -> BigRational {
        self.mid_rational() + self.rad.to_rational()
    }

    pub fn lower_rational(&self) -> BigRational {
        self.mid_rational() - self.rad.to_rational()
    }

    pub fn to_f64(&self) -> f64 {
        if self.mid.is_zero() {
            return 0.0;
        }
        let bits = self.mid.bits();
        let shift = bits.saturating_sub(60);
        let top: BigInt = &self.mid >> shift;
        let t: i64 = i64::try_from(&top).unwrap_or(0);
        t as f64 * 2f64.powi((self.exp + shift as i64).clamp(-1100, 1100) as i32)
    }

    /// Approximate `log10 |mid|`.
    fn log10_mid(&self) -> f64 {
        let bits = self.mid.bits();
        let shift = bits.saturating_sub(60);
        let top: BigInt = self.mid.abs() >> shift;
        let t: i64 = i64::try_from(&top).unwrap_or(1);
        (t as f64).log10() + (self.exp + shift as i64) as f64 * std::f64::consts::LOG10_2
    }

    /// Decimal rendering `d.ddd…e±x (±radius)` showing at most `max_digits`
    /// significant digits, and only as many as the radius certifies: the
    /// printed value is within one unit of its last digit of every point in
    /// the ball.
    pub fn to_decimal(&self, max_digits: usize) -> String {
        if self.contains_zero() {
            return format!("0e+0 (±{})", self.rad);
        }
        let mut e10 = self.log10_mid().floor() as i64;
        let digits = |e10: i64| -> usize {
            let n = if self.rad.is_zero() {
                max_digits as i64
            } else {
                (e10 as f64 - std::f64::consts::LOG10_2 - self.rad.log10()).floor() as i64 + 1
            };
            n.clamp(1, max_digits.max(1) as i64) as usize
        };
        let mag = self.mid.abs();
        let (mut n, mut d): (usize, BigInt);
        loop {
            n = digits(e10);
            let k = n as i64 - 1 - e10;
            let ten = |p: i64| num_traits::pow(BigInt::from(10), p as usize);
            let mut num = mag.clone();
            let mut den = BigInt::one();
            if k >= 0 {
                num *= ten(k);
            } else {
                den *= ten(-k);
            }
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            d = (num * 2 + &den) / (den * 2);
            let digits_str = d.to_string();
            if digits_str.len() > n {
                e10 += 1;
            } else if digits_str.len() < n {
                e10 -= 1;
            } else {
                break;
            }
        }
        let s = d.to_string();
        let sign = if self.mid.is_negative() { "-" } else { "" };
        let body = if s.len() > 1 { format!("{}.{}", &s[..1], &s[1..]) } else { s };
        let es = if e10 < 0 { '-' } else { '+' };
        format!("{sign}{body}e{es}{} (±{})", e10.abs(), self.rad)
    }

    /// Ball from a decimal literal such as `-3.1415e-2`, rounded to `prec` bits.
    pub fn from_decimal_str(s: &str, prec: u64) -> Result<Ball> {
        Ok(Ball::from_rational(&parse_decimal(s)?, prec))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(30)))
    }
}

/// Exact rational value of a decimal literal.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
    let t = s.trim();
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| err("bad exponent"))?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("invalid digit"));
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| err("no digits"))?;
    let digits = digits / 10;
    let scale = exp - frac_part.len() as i64;
    let ten = |p: i64| num_traits::pow(BigInt::from(10), p as usize);
    let value =
        if scale >= 0 { BigRational::from_integer(digits * ten(scale)) } else { BigRational::new(digits, ten(-scale)) };
    Ok(if neg { -value } else { value })
}

/// Bits needed to hold `digits` decimal digits.
pub fn digits_to_bits(digits: u64) -> u64 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u64
}

/// Upper bound `2^(-bits)`-style tolerance for a decimal digit target.
pub fn pow10_neg_mag(digits: i64) -> Mag {
    // 10^-d <= 2^-floor(d log2 10)
    Mag::pow2(-((digits as f64 * std::f64::consts::LOG2_10).floor() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_integer_arithmetic() {
        let one = Ball::one();
        let two = one.add(&one, 64);
        assert!(two.contains_rational(&q(2, 1)));
        assert!(two.rad() <= Mag::pow2(2 - 64));
        let root = Ball::from_int(4).sqrt(64).unwrap();
        assert!(root.contains_rational(&q(2, 1)));
        assert!(root.rad() <= Mag::pow2(-60));
    }

    #[test]
    fn one_third() {
        let third = Ball::one().div(&Ball::from_int(3), 64).unwrap();
        assert!(third.contains_rational(&q(1, 3)));
        assert!(third.rad() <= Mag::pow2(-62));
    }

    #[test]
    fn domain_errors() {
        assert!(Ball::one().div(&Ball::zero(), 64).is_err());
        let straddle = Ball::zero().with_added_radius(Mag::pow2(-10));
        assert!(Ball::one().div(&straddle, 64).is_err());
        assert!(Ball::from_int(-1).sqrt(64).is_err());
        assert!(straddle.sqrt(64).is_err());
        assert_eq!(Ball::zero().sqrt(64).unwrap(), Ball::zero());
    }

    #[test]
    fn decimal_round_trip() {
        let x = parse_decimal("3.14159").unwrap();
        assert_eq!(x, q(314159, 100000));
        assert_eq!(parse_decimal("-2.5e-3").unwrap(), q(-1, 400));
        assert_eq!(parse_decimal("12").unwrap(), q(12, 1));
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("abc").is_err());
        let b = Ball::from_decimal_str("0.1", 200).unwrap();
        assert!(b.contains_rational(&q(1, 10)));
        assert_eq!(b.to_decimal(5), format!("1.0000e-1 (±{})", b.rad()));
    }

    #[test]
    fn decimal_printing_respects_radius() {
        let third = Ball::from_ratio(1, 3, 40); // ~12 certified digits
        let s = third.to_decimal(50);
        let mantissa = s.split('e').next().unwrap();
        assert!(mantissa.starts_with("3.333333333"));
        assert!(mantissa.len() <= 15, "{s}");
        assert_eq!(Ball::from_int(-250).to_decimal(3), "-2.50e+2 (±0)");
        assert!(Ball::from_ratio(999_999, 1_000_000, 200).to_decimal(3).starts_with("1.00e+0 (±"));
    }

    #[test]
    fn far_apart_addition_keeps_containment() {
        let big = Ball::from_int(BigInt::one() << 500u32);
        let tiny = Ball::from_dyadic(1, -500);
        let s = big.add(&tiny, 64);
        let exact = big.mid_rational() + tiny.mid_rational();
        assert!(s.contains_rational(&exact));
    }

    fn arb_ball() -> impl Strategy<Value = (BigRational, Ball)> {
        (-1_000_000i64..1_000_000, 1i64..1_000_000, 0u32..20).prop_map(|(n, d, r)| {
            let exact = q(n, d);
            let ball = Ball::from_rational(&exact, 48).with_added_radius(Mag::pow2(-(r as i64) - 30));
            (exact, ball)
        })
    }

    // Every operation applied to points of the input balls must land in the
    // output ball; exercised at the ball endpoints and midpoints.
    proptest! {
        #[test]
        fn arithmetic_containment((xa, a) in arb_ball(), (xb, b) in arb_ball()) {
            let prec = 53;
            let pts_a = [a.lower_rational(), a.mid_rational(), a.upper_rational(), xa];
            let pts_b = [b.lower_rational(), b.mid_rational(), b.upper_rational(), xb];
            let sum = a.add(&b, prec);
            let diff = a.sub(&b, prec);
            let prod = a.mul(&b, prec);
            let quot = a.div(&b, prec);
            for pa in &pts_a {
                for pb in &pts_b {
                    prop_assert!(sum.contains_rational(&(pa + pb)));
                    prop_assert!(diff.contains_rational(&(pa - pb)));
                    prop_assert!(prod.contains_rational(&(pa * pb)));
                    if let Ok(qb) = &quot {
                        prop_assert!(qb.contains_rational(&(pa / pb)));
                    }
                }
            }
        }

        #[test]
        fn sqrt_containment(n in 1u64..1_000_000_000, d in 1u64..1_000_000, prec in 20u64..300) {
            let x = Ball::from_ratio(n, d, prec);
            let r = x.sqrt(prec).unwrap();
            // square the endpoints of r: the interval [lo^2, hi^2] must cover x
            let lo = r.lower_rational();
            let hi = r.upper_rational();
            prop_assert!(&lo * &lo <= x.lower_rational() || lo <= BigRational::zero());
            prop_assert!(&hi * &hi >= x.upper_rational());
        }

        #[test]
        fn rounding_never_loses_the_value(n in any::<i64>(), prec in 4u64..64) {
            let b = Ball::from_int_prec(&(BigInt::from(n) * BigInt::from(n)), prec);
            prop_assert!(b.contains_rational(&BigRational::from_integer(BigInt::from(n) * BigInt::from(n))));
        }
    }
}
