use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Harmonic, IntWeight, SeriesSpec};
use crate::error::{Error, Result};
#[cfg(test)]
use crate::real::Ball;
use crate::real::{Mag, QuadExt};

/// Bits used when bounding surds from above.
const BOUND_PREC: u64 = 96;

fn surd_upper(q: &QuadExt) -> BigRational {
    match q.to_rational() {
        Some(r) => r.abs(),
        None => q.abs().eval(BOUND_PREC).upper_rational(),
    }
}

fn round_up(q: &BigRational) -> BigRational {
    Mag::from_rational_up(q).to_rational()
}

/// Upper bound on the limiting term ratio `|x| * lim step * growth(w)`.
pub fn limit_ratio(spec: &SeriesSpec) -> BigRational {
    round_up(&(surd_upper(&spec.x) * spec.family.step_limit() * surd_upper(&spec.weight.int.growth())))
}

pub(crate) fn boundary_message(spec: &SeriesSpec, rho: &BigRational) -> String {
    format!(
        "{}: term-ratio bound {} >= 1 at x = {}; the argument is at or beyond the geometric-convergence boundary",
        spec.id,
        Mag::from_rational_up(rho),
        spec.x
    )
}

/// Upward-rounded `rho < 1` with `|t_{k+1} / t_k| <= rho` for all `k >= k0`.
///
/// Every factor of the term ratio is monotone in `k`, so its supremum over
/// `k >= k0` is the larger of its value at `k0` and its limit.
pub fn tail_bound(spec: &SeriesSpec, k0: u64) -> Result<BigRational> {
    if k0 < spec.k_start + 1 {
        return Err(Error::Precondition(format!("tail bound needs k0 >= {}", spec.k_start + 1)));
    }
    let limit = limit_ratio(spec);
    if limit >= BigRational::one() {
        return Err(Error::Refuse(boundary_message(spec, &limit)));
    }
    let family = spec.family;
    let (n, d) = family.step(k0);
    let step = BigRational::new(n, d).abs().max(family.step_limit());
    let mut rho = surd_upper(&spec.x) * step;

    if let Some((a, b)) = family.poly() {
        let r = BigRational::new(BigInt::from(a * (k0 as i64 + 1) + b), BigInt::from(a * k0 as i64 + b)).abs();
        rho *= r.max(BigRational::one());
    }

    let k = BigInt::from(k0);
    rho *= match spec.weight.harmonic {
        Harmonic::None => BigRational::one(),
        Harmonic::H2Prev => BigRational::one() + BigRational::new(BigInt::one(), &k * &k),
        Harmonic::HBar => {
            let j = &k * 2u32 + 1u32;
            BigRational::one() + BigRational::new(BigInt::one(), &j * &j)
        }
    };

    let w = spec.weight.int;
    if w != IntWeight::One {
        let r_k0 = round_up(&BigRational::new(w.value(k0 + 1), w.value(k0)));
        rho *= r_k0.max(surd_upper(&w.growth()));
    }

    let rho = round_up(&rho);
    if rho >= BigRational::one() {
        return Err(Error::Refuse(boundary_message(spec, &rho)));
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{binomial, central_binom, harmonic2, hbar2};
    use crate::series::{catalog, lookup, Baseline, Family};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Exact term straight from the definitions, rational arguments only.
    fn exact_term(spec: &SeriesSpec, k: u64) -> BigRational {
        let x = spec.x.to_rational().unwrap();
        let xk = num_traits::pow(x, k as usize);
        let cb = BigRational::from_integer(central_binom(k));
        let kk = BigRational::from_integer(k.into());
        let w = BigRational::from_integer(spec.weight.int.value(k))
            * match spec.weight.harmonic {
                Harmonic::None => BigRational::one(),
                Harmonic::H2Prev => harmonic2(k - 1),
                Harmonic::HBar => hbar2(k),
            };
        let two_k1 = BigRational::from_integer((2 * k + 1).into());
        match spec.family {
            Family::InvCb { m } => w * xk / (num_traits::pow(kk, m as usize) * cb),
            Family::CbOdd => cb * w * xk / two_k1,
            Family::CbPlain => cb * w * xk,
            Family::Baseline(Baseline::Gosper) => {
                q(25 * k as i64 - 3, 1) / (BigRational::from_integer(binomial(3 * k, k)) * q(1 << k.min(62), 1))
            }
            Family::Baseline(Baseline::Zeilberger) => q(21 * k as i64 - 8, 1) / num_traits::pow(kk * cb, 3),
            Family::Baseline(Baseline::Bbb) => BigRational::one() / (num_traits::pow(kk, 4) * cb),
            Family::Baseline(Baseline::Log2NineK) => q(2, 3) / (two_k1 * num_traits::pow(q(9, 1), k as usize)),
            Family::Baseline(_) => unreachable!("slow baselines are not bounded"),
        }
    }

    #[test]
    fn documented_bounds() {
        assert!(tail_bound(&lookup("S1.1").unwrap(), 2).unwrap() <= q(5, 16));
        assert!(tail_bound(&lookup("S1.2L").unwrap(), 4).unwrap() < q(70, 100));
        assert!(matches!(tail_bound(&lookup("S1.1").unwrap(), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn boundary_is_refused() {
        let mut spec = lookup("S1.1").unwrap();
        spec.x = QuadExt::from_int(4);
        assert!(matches!(tail_bound(&spec, 10), Err(Error::Refuse(_))));
        let mut spec = lookup("S1.11").unwrap();
        spec.x = QuadExt::ratio(-1, 4);
        assert!(matches!(tail_bound(&spec, 10), Err(Error::Refuse(_))));
        assert!(matches!(tail_bound(&lookup("B-LEIBNIZ").unwrap(), 5), Err(Error::Refuse(_))));
    }

    #[test]
    fn bound_dominates_exact_ratios() {
        // early weight ratios can exceed 1, so start at the first certified k0
        for spec in catalog().into_iter().filter(|s| !s.profile_only) {
            let (k0, rho) = (spec.k_start + 1..60).find_map(|k| tail_bound(&spec, k).ok().map(|r| (k, r))).unwrap();
            let mut prev = exact_term(&spec, k0);
            for k in k0..k0 + 40 {
                let next = exact_term(&spec, k + 1);
                assert!((&next / &prev).abs() <= rho, "{} at k = {k}", spec.id);
                prev = next;
            }
        }
    }

    #[test]
    fn step_factors_are_monotone() {
        // The bound takes max(value at k0, limit) for each factor, which is
        // only sound for monotone factors.
        for spec in catalog().into_iter().filter(|s| !s.profile_only) {
            let f = |k: u64| {
                let (n, d) = spec.family.step(k);
                BigRational::new(n, d).abs()
            };
            let up = f(2) <= f(3);
            for k in 1.max(spec.k_start)..3000 {
                let (a, b) = (f(k), f(k + 1));
                assert!(if up { a <= b } else { a >= b } || k == 1, "{} at k = {k}", spec.id);
            }
            let lim = spec.family.step_limit();
            assert!(if up { f(3000) <= lim } else { f(3000) >= lim }, "{}", spec.id);
        }
    }

    #[test]
    fn weight_ratios_approach_growth_monotonically() {
        for w in [IntWeight::Luc2k, IntWeight::Fib2k, IntWeight::U, IntWeight::V, IntWeight::Fib2k1, IntWeight::Luc2k1]
        {
            let lam = w.growth().eval(200);
            let r = |k: u64| BigRational::new(w.value(k + 1), w.value(k));
            let above = Ball::from_rational(&r(1), 200).sub(&lam, 200).is_positive();
            for k in 1..200 {
                let (a, b) = (r(k), r(k + 1));
                assert!(if above { a >= b } else { a <= b }, "{w:?} at {k}");
            }
        }
    }
}
