//! Exact oracles shared by the integration tests.
#![allow(dead_code)]

use constforge::real::Ball;
use constforge::seq::{binomial, central_binom, fib, harmonic2, hbar2, lucas, weight_u, weight_v};
use constforge::series::{Baseline, Family, Harmonic, IntWeight, SeriesSpec, TermStream};
use constforge::QuadExt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Exact coefficient of `x^k` in term `k`, straight from the definitions.
pub fn coefficient(spec: &SeriesSpec, k: u64) -> BigRational {
    let kk = int(k.into());
    let cb = int(central_binom(k));
    let w = match spec.weight.int {
        IntWeight::One => BigInt::one(),
        IntWeight::Luc2k => lucas(2 * k),
        IntWeight::Fib2k => fib(2 * k),
        IntWeight::U => weight_u(k),
        IntWeight::V => weight_v(k),
        IntWeight::Fib2k1 => fib(2 * k + 1),
        IntWeight::Luc2k1 => lucas(2 * k + 1),
    };
    let h = match spec.weight.harmonic {
        Harmonic::None => BigRational::one(),
        Harmonic::H2Prev => harmonic2(k - 1),
        Harmonic::HBar => hbar2(k),
    };
    let w = int(w) * h;
    let sign = |odd: bool| if odd { -BigRational::one() } else { BigRational::one() };
    match spec.family {
        Family::InvCb { m } => w / (num_traits::pow(kk, m as usize) * cb),
        Family::CbOdd => cb * w / int((2 * k + 1).into()),
        Family::CbPlain => cb * w,
        Family::Baseline(b) => match b {
            Baseline::Gosper => q(25 * k as i64 - 3, 1) / (int(binomial(3 * k, k)) * int(BigInt::one() << k)),
            Baseline::Zeilberger => q(21 * k as i64 - 8, 1) / num_traits::pow(kk * cb, 3),
            Baseline::Bbb => BigRational::one() / (num_traits::pow(kk, 4) * cb),
            Baseline::Log2NineK => {
                q(2, 3) / (int((2 * k + 1).into()) * int(num_traits::pow(BigInt::from(9), k as usize)))
            }
            Baseline::Leibniz => sign(k % 2 == 1) / int((2 * k + 1).into()),
            Baseline::Zeta2 => BigRational::one() / (&kk * &kk),
            Baseline::Zeta4 => BigRational::one() / num_traits::pow(kk, 4),
            Baseline::Log2Alt => sign(k.is_multiple_of(2)) / kk,
        },
    }
}

/// Exact partial sum through `k_start + n - 1` in `Q(sqrt d)`.
pub fn exact_prefix(spec: &SeriesSpec, n: u64) -> QuadExt {
    let mut sum = QuadExt::from_int(0);
    for k in spec.k_start..spec.k_start + n {
        let term = spec.x.pow(k as u32).mul_rational(&coefficient(spec, k));
        sum = sum.add(&term).unwrap();
    }
    sum
}

pub fn ball_prefix(spec: &SeriesSpec, n: u64, prec: u64) -> Ball {
    let mut s = TermStream::new(spec, prec);
    (0..n).fold(Ball::zero(), |acc, _| acc.add(&s.next_term().1, prec))
}

pub fn contains_surd(b: &Ball, v: &QuadExt) -> bool {
    if let Some(r) = v.to_rational() {
        return b.contains_rational(&r);
    }
    // compare against a much tighter enclosure of the surd
    let tight = v.eval(b.rel_accuracy_bits().max(0) as u64 + 400);
    b.contains(&tight)
}
