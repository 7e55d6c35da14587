use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Baseline, Family, Harmonic, IntWeight, SeriesSpec};
use crate::real::{Ball, QuadExt};
use crate::seq;

/// Exact surd powers are demoted to balls past this coefficient size.
const EXACT_POWER_BITS: u64 = 512;

impl Family {
    /// Index of the first term.
    pub fn k_start(self) -> u64 {
        match self {
            Family::Baseline(Baseline::Gosper | Baseline::Log2NineK | Baseline::Leibniz) => 0,
            _ => 1,
        }
    }

    /// Hypergeometric part at `k_start`, without the argument power.
    pub(crate) fn h_start(self) -> BigRational {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        match self {
            Family::InvCb { .. } => q(1, 2),
            Family::CbOdd => q(2, 3),
            Family::CbPlain => q(2, 1),
            Family::Baseline(b) => match b {
                Baseline::Gosper | Baseline::Leibniz | Baseline::Zeta2 | Baseline::Zeta4 | Baseline::Log2Alt => q(1, 1),
                Baseline::Zeilberger => q(1, 8),
                Baseline::Bbb => q(1, 2),
                Baseline::Log2NineK => q(2, 3),
            },
        }
    }

    /// Exact ratio `h_{k+1} / h_k` of the hypergeometric part as `(num, den)`.
    pub(crate) fn step(self, k: u64) -> (BigInt, BigInt) {
        let k = BigInt::from(k);
        let k1 = &k + 1u32;
        let two_k1 = &k * 2u32 + 1u32;
        match self {
            Family::InvCb { m: 1 } => (k, &two_k1 * 2u32),
            Family::InvCb { .. } => (&k * &k, &k1 * &two_k1 * 2u32),
            Family::CbOdd => (&two_k1 * &two_k1 * 2u32, &k1 * (&k * 2u32 + 3u32)),
            Family::CbPlain => (two_k1 * 2u32, k1),
            Family::Baseline(b) => match b {
                Baseline::Gosper => (&k1 * &two_k1, (&k * 3u32 + 1u32) * (&k * 3u32 + 2u32) * 3u32),
                Baseline::Zeilberger => (&k * &k * &k, &two_k1 * &two_k1 * &two_k1 * 8u32),
                Baseline::Bbb => (k.pow(4), k1.pow(3) * two_k1 * 2u32),
                Baseline::Log2NineK => (two_k1, (&k * 2u32 + 3u32) * 9u32),
                Baseline::Leibniz => (-two_k1, &k * 2u32 + 3u32),
                Baseline::Zeta2 => (&k * &k, &k1 * &k1),
                Baseline::Zeta4 => (k.pow(4), k1.pow(4)),
                Baseline::Log2Alt => (-k, k1),
            },
        }
    }

    /// Limit of `|step(k)|` as `k -> oo`.
    pub(crate) fn step_limit(self) -> BigRational {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        match self {
            Family::InvCb { .. } => q(1, 4),
            Family::CbOdd | Family::CbPlain => q(4, 1),
            Family::Baseline(b) => match b {
                Baseline::Gosper => q(2, 27),
                Baseline::Zeilberger => q(1, 64),
                Baseline::Bbb => q(1, 4),
                Baseline::Log2NineK => q(1, 9),
                Baseline::Leibniz | Baseline::Zeta2 | Baseline::Zeta4 | Baseline::Log2Alt => q(1, 1),
            },
        }
    }

    /// Linear polynomial factor `a k + b` of the term, if any.
    pub(crate) fn poly(self) -> Option<(i64, i64)> {
        match self {
            Family::Baseline(Baseline::Gosper) => Some((25, -3)),
            Family::Baseline(Baseline::Zeilberger) => Some((21, -8)),
            _ => None,
        }
    }
}

impl IntWeight {
    /// Exact value at index `k`.
    pub fn value(self, k: u64) -> BigInt {
        match self {
            IntWeight::One => BigInt::one(),
            IntWeight::Luc2k => seq::lucas(2 * k),
            IntWeight::Fib2k => seq::fib(2 * k),
            IntWeight::U => seq::weight_u(k),
            IntWeight::V => seq::weight_v(k),
            IntWeight::Fib2k1 => seq::fib(2 * k + 1),
            IntWeight::Luc2k1 => seq::lucas(2 * k + 1),
        }
    }

    /// `(p, q)` with `w_{k+1} = p w_k - q w_{k-1}`.
    fn recurrence(self) -> (i64, i64) {
        match self {
            IntWeight::One => (1, 0),
            IntWeight::U | IntWeight::V => (5, 5),
            _ => (3, 1),
        }
    }

    /// Dominant root of the recurrence.
    pub(crate) fn growth(self) -> QuadExt {
        match self {
            IntWeight::One => QuadExt::from_int(1),
            IntWeight::U | IntWeight::V => QuadExt::surd(5, 1, 2, 5),
            _ => QuadExt::surd(3, 1, 2, 5),
        }
    }
}

/// Integer weights stepped by their linear recurrence.
#[derive(Clone, Debug)]
struct WeightIter {
    p: i64,
    q: i64,
    cur: BigInt,
    next: BigInt,
}

impl WeightIter {
    fn new(w: IntWeight, k: u64) -> WeightIter {
        let (p, q) = w.recurrence();
        WeightIter { p, q, cur: w.value(k), next: w.value(k + 1) }
    }

    fn advance(&mut self) {
        let after = &self.next * self.p - &self.cur * self.q;
        self.cur = std::mem::replace(&mut self.next, after);
    }
}

#[derive(Clone, Debug)]
enum XPower {
    /// Rational argument, folded into the hypergeometric part.
    Folded,
    Exact {
        x: QuadExt,
        pow: QuadExt,
        root: Ball,
    },
    Approx {
        x: Ball,
        pow: Ball,
    },
}

/// Terms `t_k` of a series in ball arithmetic, in order from `k_start`.
#[derive(Clone, Debug)]
pub struct TermStream {
    family: Family,
    harmonic: Harmonic,
    prec: u64,
    k: u64,
    hyper: Ball,
    xpow: XPower,
    xn: BigInt,
    xd: BigInt,
    hsum: Ball,
    weight: Option<WeightIter>,
}

impl TermStream {
    pub fn new(spec: &SeriesSpec, prec: u64) -> TermStream {
        let k = spec.k_start;
        let family = spec.family;
        let mut h = family.h_start();
        let (xn, xd, xpow) = match spec.x.to_rational() {
            Some(x) => {
                h *= num_traits::pow(x.clone(), k as usize);
                (x.numer().clone(), x.denom().clone(), XPower::Folded)
            }
            None => {
                let pow = spec.x.pow(k as u32);
                let root = Ball::from_int(spec.x.radicand())
                    .sqrt(prec + 2 * EXACT_POWER_BITS + 96)
                    .expect("positive radicand");
                (BigInt::one(), BigInt::one(), XPower::Exact { x: spec.x.clone(), pow, root })
            }
        };
        let weight = (spec.weight.int != IntWeight::One).then(|| WeightIter::new(spec.weight.int, k));
        TermStream {
            family,
            harmonic: spec.weight.harmonic,
            prec,
            k,
            hyper: Ball::from_rational(&h, prec),
            xpow,
            xn,
            xd,
            hsum: Ball::zero(),
            weight,
        }
    }

    fn add_recip_square(&mut self, j: u64) {
        let j = BigInt::from(j);
        let r = Ball::from_ratio(1, &j * &j, self.prec);
        self.hsum = self.hsum.add(&r, self.prec);
    }

    /// Returns `(k, t_k)` and moves to `k + 1`.
    pub fn next_term(&mut self) -> (u64, Ball) {
        let (k, prec) = (self.k, self.prec);
        if self.harmonic == Harmonic::HBar {
            self.add_recip_square(2 * k - 1);
        }
        let mut t = self.hyper.clone();
        match &self.xpow {
            XPower::Folded => {}
            XPower::Exact { pow, root, .. } => t = t.mul(&surd_ball(pow, root, prec), prec),
            XPower::Approx { pow, .. } => t = t.mul(pow, prec),
        }
        if self.harmonic != Harmonic::None {
            t = t.mul(&self.hsum, prec);
        }
        if let Some(w) = &self.weight {
            t = t.mul(&Ball::from_int_prec(&w.cur, prec), prec);
        }
        if let Some((a, b)) = self.family.poly() {
            t = t.mul_int(&BigInt::from(a * k as i64 + b), prec);
        }
        if self.harmonic == Harmonic::H2Prev {
            self.add_recip_square(k);
        }

        let (n, d) = self.family.step(k);
        self.hyper = self.hyper.mul_ratio(&(n * &self.xn), &(d * &self.xd), prec);
        self.xpow = match std::mem::replace(&mut self.xpow, XPower::Folded) {
            XPower::Folded => XPower::Folded,
            XPower::Exact { x, pow, root } => {
                let next = pow.mul(&x).expect("same radicand");
                if next.bits() < EXACT_POWER_BITS {
                    XPower::Exact { x, pow: next, root }
                } else {
                    let xb = surd_ball(&x, &root, prec);
                    XPower::Approx { pow: surd_ball(&next, &root, prec), x: xb }
                }
            }
            XPower::Approx { x, pow } => {
                let pow = pow.mul(&x, prec);
                XPower::Approx { x, pow }
            }
        };
        if let Some(w) = &mut self.weight {
            w.advance();
        }
        self.k += 1;
        (k, t)
    }
}

/// `(a + b r) / c` where `r` encloses the square root of the radicand. The
/// extra bits cover cancellation in `a + b r` for small conjugate powers.
fn surd_ball(q: &QuadExt, root: &Ball, prec: u64) -> Ball {
    let (a, b, c, _) = q.parts();
    let wp = prec + 2 * q.bits() + 32;
    let num = Ball::from_int_prec(a, wp).add(&root.mul_int(b, wp), wp);
    num.div_int(c, prec).expect("positive denominator")
}

/// Exact ratio `|t_{k+1} / t_k|` ignoring the harmonic factor, for tests and
/// diagnostics.
pub fn exact_term_ratio(spec: &SeriesSpec, k: u64) -> Option<BigRational> {
    let (n, d) = spec.family.step(k);
    let mut r = BigRational::new(n, d);
    let x = spec.x.to_rational()?;
    r *= x;
    if let Some((a, b)) = spec.family.poly() {
        r *= BigRational::new((a * (k as i64 + 1) + b).into(), (a * k as i64 + b).into());
    }
    let w = spec.weight.int;
    r *= BigRational::new(w.value(k + 1), w.value(k));
    Some(r.abs())
}
