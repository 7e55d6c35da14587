//! Low-precision unsigned magnitudes with directed rounding, used for ball radii.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

const MAG_BITS: u32 = 30;

/// `man * 2^exp` with a 30-bit normalized mantissa, or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn norm(v: u128, exp: i64, up: bool) -> Mag {
        if v == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - v.leading_zeros();
        if bits <= MAG_BITS {
            let s = MAG_BITS - bits;
            return Mag { man: (v << s) as u64, exp: exp - s as i64 };
        }
        let s = bits - MAG_BITS;
        let mut q = v >> s;
        let mut e = exp + s as i64;
        if up && (q << s) != v {
            q += 1;
            if q == 1u128 << MAG_BITS {
                q >>= 1;
                e += 1;
            }
        }
        Mag { man: q as u64, exp: e }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1 << (MAG_BITS - 1), exp: e - (MAG_BITS as i64 - 1) }
    }

    pub fn from_u64(v: u64) -> Mag {
        Mag::norm(v as u128, 0, true)
    }

    /// Upper bound of `n * 2^exp`.
    pub fn from_biguint_up(n: &BigUint, exp: i64) -> Mag {
        Self::from_biguint(n, exp, true)
    }

    /// Lower bound of `n * 2^exp`.
    pub fn from_biguint_down(n: &BigUint, exp: i64) -> Mag {
        Self::from_biguint(n, exp, false)
    }

    fn from_biguint(n: &BigUint, exp: i64, up: bool) -> Mag {
        let bits = n.bits();
        if bits <= 64 {
            let v = n.iter_u64_digits().next().unwrap_or(0);
            return Mag::norm(v as u128, exp, up);
        }
        let shift = bits - 64;
        let top: BigUint = n >> shift;
        let mut v = top.iter_u64_digits().next().unwrap_or(0) as u128;
        if up && n.trailing_zeros().unwrap_or(0) < shift {
            v += 1;
        }
        Mag::norm(v, exp + shift as i64, up)
    }

    /// Upper bound of a non-negative rational.
    pub fn from_rational_up(q: &BigRational) -> Mag {
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        if num.is_zero() {
            return Mag::ZERO;
        }
        let shift = 64 + den.bits() as i64 - num.bits() as i64;
        let (n, d) =
            if shift >= 0 { (num << shift as u64, den.clone()) } else { (num.clone(), den << (-shift) as u64) };
        let q = &n / &d;
        let inexact = !(&q * &d == n);

        Self::from_biguint_up(&(q + u32::from(inexact)), -shift)
    }

    fn aligned(a: Mag, b: Mag) -> (Mag, Mag) {
        if a.exp >= b.exp {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn add_up(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (x, y) = Self::aligned(self, other);
        let d = x.exp - y.exp;
        if d > 90 {
            return Mag::norm(((x.man as u128) << 2) + 1, x.exp - 2, true);
        }
        Mag::norm(((x.man as u128) << d) + y.man as u128, y.exp, true)
    }

    pub fn add_down(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (x, y) = Self::aligned(self, other);
        let d = x.exp - y.exp;
        if d > 90 {
            return x;
        }
        Mag::norm(((x.man as u128) << d) + y.man as u128, y.exp, false)
    }

    /// Lower bound of `max(self - other, 0)`.
    pub fn sub_down(self, other: Mag) -> Mag {
        if other.is_zero() {
            return self;
        }
        if self <= other {
            return Mag::ZERO;
        }
        // self > other > 0, so self.exp >= other.exp
        let d = self.exp - other.exp;
        if d > 90 {
            return Mag::norm(((self.man as u128) << 2) - 1, self.exp - 2, false);
        }
        Mag::norm(((self.man as u128) << d) - other.man as u128, other.exp, false)
    }

    pub fn mul_up(self, other: Mag) -> Mag {
        Mag::norm(self.man as u128 * other.man as u128, self.exp + other.exp, true)
    }

    pub fn mul_down(self, other: Mag) -> Mag {
        Mag::norm(self.man as u128 * other.man as u128, self.exp + other.exp, false)
    }

    pub fn div_up(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "division of magnitude by zero");
        let n = (self.man as u128) << 64;
        let d = other.man as u128;
        let q = n / d + u128::from(!n.is_multiple_of(d));
        Mag::norm(q, self.exp - 64 - other.exp, true)
    }

    pub fn div_down(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "division of magnitude by zero");
        let n = (self.man as u128) << 64;
        Mag::norm(n / other.man as u128, self.exp - 64 - other.exp, false)
    }

    fn sqrt_dir(self, up: bool) -> Mag {
        if self.is_zero() {
            return self;
        }
        let shift = if (self.exp - 60).rem_euclid(2) == 0 { 60 } else { 61 };
        let v = (self.man as u128) << shift;
        let e = self.exp - shift as i64;
        let mut r = v.sqrt();
        if up && r * r != v {
            r += 1;
        }
        Mag::norm(r, e / 2, up)
    }

    pub fn sqrt_up(self) -> Mag {
        self.sqrt_dir(true)
    }

    pub fn sqrt_down(self) -> Mag {
        self.sqrt_dir(false)
    }

    /// Multiply by `2^e` exactly.
    pub fn mul_2exp(self, e: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { man: self.man, exp: self.exp + e }
        }
    }

    /// Smallest `e` with `self <= 2^e` (for zero, `i64::MIN`).
    pub fn log2_ceil(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        let pow = self.man.is_power_of_two();
        self.exp + MAG_BITS as i64 - i64::from(pow)
    }

    pub fn to_f64(&self) -> f64 {
        (self.man as f64) * 2f64.powi(self.exp.clamp(-1100, 1100) as i32)
    }

    /// Approximate `log10(self)`; `-inf` for zero.
    pub fn log10(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.man as f64).log10() + self.exp as f64 * std::f64::consts::LOG10_2
    }

    pub fn to_rational(&self) -> BigRational {
        let m = BigInt::from(self.man);
        if self.exp >= 0 {
            BigRational::from_integer(m << self.exp as u64)
        } else {
            BigRational::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Exact test `self < 10^(-n)`.
    pub fn lt_pow10_neg(&self, n: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        // man * 2^exp * 10^n < 1
        let mut lhs = BigInt::from(self.man);
        let mut rhs = BigInt::one();
        if n >= 0 {
            lhs *= num_traits::pow(BigInt::from(10), n as usize);
        } else {
            rhs *= num_traits::pow(BigInt::from(10), (-n) as usize);
        }
        if self.exp >= 0 {
            lhs <<= self.exp as u64;
        } else {
            rhs <<= (-self.exp) as u64;
        }
        lhs < rhs
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            // both normalized to the same mantissa width
            _ => self.exp.cmp(&other.exp).then(self.man.cmp(&other.man)),
        }
    }
}

impl fmt::Display for Mag {
    /// Two significant digits, rounded away from zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let l = self.log10();
        let mut e = l.floor();
        let mut m = (10f64.powf(l - e) * 10.0 * (1.0 + 1e-12)).ceil() / 10.0;
        if m >= 10.0 {
            m /= 10.0;
            e += 1.0;
        }
        write!(f, "{m:.1}e{}{}", if e < 0.0 { "-" } else { "+" }, e.abs() as i64)
    }
}
