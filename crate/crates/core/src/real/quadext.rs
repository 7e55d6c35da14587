//! Exact numbers `(a + b*sqrt(d)) / c` with `d` in `{0, 2, 3, 5}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::ball::Ball;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u32,
}

impl QuadExt {
    /// Canonicalizes: `c > 0`, `gcd(a, b, c) = 1`, perfect-square radicands
    /// folded into `a`, and `d = 0` whenever `b = 0`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: u32) -> Result<QuadExt> {
        if c.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        let (mut a, mut b, mut d) = (a, b, d);
        match d {
            0 => {
                if !b.is_zero() {
                    return Err(Error::domain("sqrt(0) term must have zero coefficient"));
                }
            }
            1 => {
                a += &b;
                b = BigInt::zero();
                d = 0;
            }
            4 => {
                a += &b * 2;
                b = BigInt::zero();
                d = 0;
            }
            2 | 3 | 5 => {}
            _ => return Err(Error::domain(format!("unsupported radicand {d}; expected 0, 2, 3 or 5"))),
        }
        if b.is_zero() {
            d = 0;
        }
        let (mut a, mut b, mut c) = (a, b, c);
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Ok(QuadExt { a, b, c, d })
    }

    pub fn from_rational(q: &BigRational) -> QuadExt {
        QuadExt { a: q.numer().clone(), b: BigInt::zero(), c: q.denom().clone(), d: 0 }
    }

    pub fn from_int(n: i64) -> QuadExt {
        QuadExt::from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, m: i64) -> QuadExt {
        QuadExt::from_rational(&BigRational::new(n.into(), m.into()))
    }

    /// `(a + b sqrt(d)) / c` from machine integers; panics on invalid input.
    pub fn surd(a: i64, b: i64, c: i64, d: u32) -> QuadExt {
        QuadExt::new(a.into(), b.into(), c.into(), d).expect("valid surd literal")
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, u32) {
        (&self.a, &self.b, &self.c, self.d)
    }

    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.a.clone(), self.c.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Largest coefficient size in bits.
    pub fn bits(&self) -> u64 {
        self.a.bits().max(self.b.bits()).max(self.c.bits())
    }

    fn common_radicand(&self, other: &QuadExt) -> Result<u32> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::domain(format!("cannot combine sqrt({x}) and sqrt({y})"))),
        }
    }

    pub fn add(&self, other: &QuadExt) -> Result<QuadExt> {
        let d = self.common_radicand(other)?;
        QuadExt::new(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        )
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d }
    }

    pub fn sub(&self, other: &QuadExt) -> Result<QuadExt> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QuadExt) -> Result<QuadExt> {
        let d = self.common_radicand(other)?;
        // (a1 + b1 s)(a2 + b2 s) = a1 a2 + d b1 b2 + (a1 b2 + a2 b1) s
        QuadExt::new(
            &self.a * &other.a + &self.b * &other.b * d,
            &self.a * &other.b + &other.a * &self.b,
            &self.c * &other.c,
            d,
        )
    }

    pub fn mul_rational(&self, q: &BigRational) -> QuadExt {
        self.mul(&QuadExt::from_rational(q)).expect("rational factor")
    }

    pub fn square(&self) -> QuadExt {
        self.mul(self).expect("same radicand")
    }

    /// `c (a - b sqrt d) / (a^2 - d b^2)`.
    pub fn inv(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        let norm = &self.a * &self.a - &self.b * &self.b * self.d;
        QuadExt::new(&self.c * &self.a, -(&self.c * &self.b), norm, self.d)
    }

    pub fn div(&self, other: &QuadExt) -> Result<QuadExt> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> QuadExt {
        (0..e).fold(QuadExt::from_int(1), |acc, _| acc.mul(self).expect("same radicand"))
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.sign_ord();
        let sb = self.b.sign_ord();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with d b^2
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * self.d;
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_value(&self, other: &QuadExt) -> Result<Ordering> {
        Ok(self.sub(other)?.signum())
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        self.sub(&QuadExt::from_rational(q)).expect("rational operand").signum()
    }

    pub fn abs(&self) -> QuadExt {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Ball containing the value.
    pub fn eval(&self, prec: u64) -> Ball {
        let wp = prec + 16;
        let mut num = Ball::from_int_prec(&self.a, wp);
        if !self.b.is_zero() {
            let root = Ball::from_int(self.d).sqrt(wp + self.b.bits()).expect("positive radicand");
            num = num.add(&root.mul_int(&self.b, wp), wp);
        }
        num.div_int(&self.c, prec).expect("positive denominator")
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Ball containing `(a + b sqrt d) / c`.
pub fn eval_quadext(x: &QuadExt, prec: u64) -> Ball {
    x.eval(prec)
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return if self.c.is_one() { write!(f, "{}", self.a) } else { write!(f, "{}/{}", self.a, self.c) };
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-&self.b).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b, self.d)
        };
        let body = if self.a.is_zero() {
            surd
        } else if self.b.is_negative() {
            format!("({}{})", self.a, surd)
        } else {
            format!("({}+{})", self.a, surd)
        };
        if self.c.is_one() {
            write!(f, "{body}")
        } else if self.a.is_zero() && !body.starts_with('(') {
            write!(f, "({body})/{}", self.c)
        } else {
            write!(f, "{body}/{}", self.c)
        }
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Accepts `a`, `a/c`, `sqrt(d)`, `b*sqrt(d)`, `(a+b*sqrt(d))/c`,
    /// `(a-sqrt(d))/c`, `-sqrt(d)/c` and so on; whitespace is ignored.
    fn from_str(input: &str) -> Result<QuadExt> {
        let err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty expression"));
        }
        // split off a trailing "/c" that is outside parentheses
        let (body, den) = match s.rfind('/') {
            Some(i) if !s[i..].contains(')') => {
                let c: BigInt = s[i + 1..].parse().map_err(|_| err("denominator must be an integer"))?;
                (&s[..i], c)
            }
            _ => (s.as_str(), BigInt::one()),
        };
        let body = match body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            Some(inner) => inner,
            None => body,
        };
        if body.contains(['(', ')']) && !body.contains("sqrt(") {
            return Err(err("unbalanced parentheses"));
        }
        let (mut a, mut b, mut d) = (BigInt::zero(), BigInt::zero(), 0u32);
        let mut seen_surd = false;
        for (sign, term) in split_signed_terms(body).ok_or_else(|| err("malformed sum"))? {
            if let Some(pos) = term.find("sqrt(") {
                if seen_surd {
                    return Err(err("at most one sqrt term is supported"));
                }
                seen_surd = true;
                let inner = term[pos + 5..].strip_suffix(')').ok_or_else(|| err("missing ')'"))?;
                d = inner.parse().map_err(|_| err("radicand must be a small integer"))?;
                let coeff = match &term[..pos] {
                    "" => BigInt::one(),
                    c => c
                        .strip_suffix('*')
                        .ok_or_else(|| err("expected '*' before sqrt"))?
                        .parse()
                        .map_err(|_| err("bad sqrt coefficient"))?,
                };
                b = coeff * sign;
            } else {
                let v: BigInt = term.parse().map_err(|_| err("bad integer term"))?;
                a += v * sign;
            }
        }
        QuadExt::new(a, b, den, d).map_err(|e| err(&e.to_string()))
    }
}

fn split_signed_terms(body: &str) -> Option<Vec<(i32, &str)>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut sign = 1;
    let bytes = body.as_bytes();
    let mut depth = 0;
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if i > start {
                    out.push((sign, &body[start..i]));
                } else if i != 0 {
                    return None;
                }
                sign = if ch == b'-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= body.len() {
        return None;
    }
    out.push((sign, &body[start..]));
    Some(out)
}
