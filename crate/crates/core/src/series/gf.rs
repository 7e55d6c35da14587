use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;

use super::eval::rhs_precision;
use super::{eval_series, EvalReport, Family, IntWeight, SeriesSpec, Weight};
use crate::error::{Error, Result};
use crate::real::ball::pow10_neg_mag;
use crate::real::{arcsin, ln, Ball, ClosedForm, QuadExt};

/// Generating functions that can be spot-checked at a user argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GfFamily {
    /// `sum H2_{k-1} x^k / (k C(2k,k)) = (4/3) sqrt(x/(4-x)) arcsin^3(sqrt(x)/2)`
    Gf1_4,
    /// `sum C(2k,k) Hbar_k (x/16)^k / (2k+1) = arcsin^3(sqrt(x)/2) / (3 sqrt(x))`
    Gf1_7,
    /// `sum C(2k,k) Hbar_k / ((2k+1) (-4x)^k) = (sqrt(x)/6) ln^3((sqrt(x+1)-1)/sqrt(x))`
    Gf1_10,
    /// `sum C(2k,k) Hbar_k (x/4)^(2k) = arcsin^2(x/2) / sqrt(4-x^2)`
    Gf1_17,
    /// `sum H2_{k-1} x^k / (k^2 C(2k,k)) = (2/3) arcsin^4(sqrt(x)/2)`
    Gf2_1,
    /// `sum H2_{k-1} (-1/x)^k / (k C(2k,k))`, a cubed logarithm
    Dk3,
    /// `sum H2_{k-1} (-1/x)^k / (k^2 C(2k,k))`, a fourth-power logarithm
    Dk4,
}

impl GfFamily {
    pub const ALL: [GfFamily; 7] = [
        GfFamily::Gf1_4,
        GfFamily::Gf1_7,
        GfFamily::Gf1_10,
        GfFamily::Gf1_17,
        GfFamily::Gf2_1,
        GfFamily::Dk3,
        GfFamily::Dk4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GfFamily::Gf1_4 => "GF1.4",
            GfFamily::Gf1_7 => "GF1.7",
            GfFamily::Gf1_10 => "GF1.10",
            GfFamily::Gf1_17 => "GF1.17",
            GfFamily::Gf2_1 => "GF2.1",
            GfFamily::Dk3 => "GF-DK3",
            GfFamily::Dk4 => "GF-DK4",
        }
    }

    /// Human-readable certified domain.
    pub fn domain(self) -> &'static str {
        match self {
            GfFamily::Gf1_4 | GfFamily::Gf1_7 | GfFamily::Gf2_1 => "0 < x < 4",
            GfFamily::Gf1_10 => "x > 1",
            GfFamily::Gf1_17 => "0 <= x < 2",
            GfFamily::Dk3 | GfFamily::Dk4 => "x > 1/4",
        }
    }

    /// Checks `x` against the open certified domain. The convergence
    /// boundary itself is refused rather than rejected.
    fn check_domain(self, x: &QuadExt) -> Result<()> {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let (lo, lo_open, hi): (BigRational, bool, Option<BigRational>) = match self {
            GfFamily::Gf1_4 | GfFamily::Gf1_7 | GfFamily::Gf2_1 => (q(0, 1), true, Some(q(4, 1))),
            GfFamily::Gf1_10 => (q(1, 1), true, None),
            GfFamily::Gf1_17 => (q(0, 1), false, Some(q(2, 1))),
            GfFamily::Dk3 | GfFamily::Dk4 => (q(1, 4), true, None),
        };
        let refuse = |b: &BigRational| {
            Error::Refuse(format!(
                "{}: x = {b} is the convergence boundary (limiting term ratio 1); certified mode needs {}",
                self.name(),
                self.domain()
            ))
        };
        let reject = || {
            let need = match self {
                GfFamily::Gf1_10 => "x ≥ 1 required".to_string(),
                _ => format!("{} required", self.domain()),
            };
            Error::Domain(format!("{}: {need}, got x = {x}", self.name()))
        };
        match x.cmp_rational(&lo) {
            Ordering::Less => return Err(reject()),
            Ordering::Equal if lo_open => {
                return Err(if matches!(self, GfFamily::Gf1_10 | GfFamily::Dk3 | GfFamily::Dk4) {
                    refuse(&lo)
                } else {
                    reject()
                })
            }
            _ => {}
        }
        if let Some(hi) = hi {
            match x.cmp_rational(&hi) {
                Ordering::Greater => return Err(reject()),
                Ordering::Equal => return Err(refuse(&hi)),
                Ordering::Less => {}
            }
        }
        Ok(())
    }

    fn function_side(self, x: &QuadExt, prec: u64) -> Result<Ball> {
        let wp = prec + 32;
        let xb = x.eval(wp);
        let half_root = || -> Result<Ball> { Ok(xb.sqrt(wp)?.mul_2exp(-1)) };
        let dk_root = || -> Result<Ball> { xb.mul_small(4, wp).add(&Ball::one(), wp).sqrt(wp) };
        let log_arg = || -> Result<Ball> {
            let s = dk_root()?;
            let one = Ball::one();
            ln(&s.add(&one, wp).div(&s.sub(&one, wp), wp)?, wp)
        };
        let v = match self {
            GfFamily::Gf1_4 => {
                let a = arcsin(&half_root()?, wp)?;
                let four_minus = Ball::from_int(4).sub(&xb, wp);
                let root = xb.div(&four_minus, wp)?.sqrt(wp)?;
                root.mul(&a.pow(3, wp), wp).mul_small(4, wp).div_small(3, wp)
            }
            GfFamily::Gf1_7 => {
                let a = arcsin(&half_root()?, wp)?;
                a.pow(3, wp).div(&xb.sqrt(wp)?.mul_small(3, wp), wp)?
            }
            GfFamily::Gf1_10 => {
                let rx = xb.sqrt(wp)?;
                let r1 = xb.add(&Ball::one(), wp).sqrt(wp)?;
                let l = ln(&r1.sub(&Ball::one(), wp).div(&rx, wp)?, wp)?;
                rx.mul(&l.pow(3, wp), wp).div_small(6, wp)
            }
            GfFamily::Gf1_17 => {
                let a = arcsin(&xb.mul_2exp(-1), wp)?;
                let d = Ball::from_int(4).sub(&xb.sqr(wp), wp).sqrt(wp)?;
                a.sqr(wp).div(&d, wp)?
            }
            GfFamily::Gf2_1 => {
                let a = arcsin(&half_root()?, wp)?;
                a.pow(4, wp).mul_small(2, wp).div_small(3, wp)
            }
            GfFamily::Dk3 => log_arg()?.pow(3, wp).div(&dk_root()?.mul_small(6, wp), wp)?,
            GfFamily::Dk4 => log_arg()?.pow(4, wp).div_small(24, wp),
        };
        Ok(v.rounded(prec))
    }
}

impl fmt::Display for GfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GfFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<GfFamily> {
        GfFamily::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Series side of `family` at argument `x`, after domain checks.
///
/// The returned spec carries a placeholder closed form: the function side
/// involves `arcsin` and is evaluated by [`gf_check`] directly.
pub fn gf_series_spec(family: GfFamily, x: &QuadExt) -> Result<SeriesSpec> {
    family.check_domain(x)?;
    let h2 = Weight::h2_prev(IntWeight::One);
    let hb = Weight::hbar(IntWeight::One);
    let neg_inv = || x.inv().map(|r| r.neg());
    let (fam, weight, arg) = match family {
        GfFamily::Gf1_4 => (Family::InvCb { m: 1 }, h2, x.clone()),
        GfFamily::Gf2_1 => (Family::InvCb { m: 2 }, h2, x.clone()),
        GfFamily::Gf1_7 => (Family::CbOdd, hb, x.mul_rational(&BigRational::new(1.into(), 16.into()))),
        GfFamily::Gf1_10 => (Family::CbOdd, hb, neg_inv()?.mul_rational(&BigRational::new(1.into(), 4.into()))),
        GfFamily::Gf1_17 => (Family::CbPlain, hb, x.square().mul_rational(&BigRational::new(1.into(), 16.into()))),
        GfFamily::Dk3 => (Family::InvCb { m: 1 }, h2, neg_inv()?),
        GfFamily::Dk4 => (Family::InvCb { m: 2 }, h2, neg_inv()?),
    };
    Ok(SeriesSpec {
        id: format!("{family}@x={x}"),
        family: fam,
        weight,
        x: arg,
        rhs: ClosedForm::default(),
        k_start: fam.k_start(),
        profile_only: false,
        summand: String::new(),
    })
}

/// Evaluates both sides of a generating-function identity at `x`.
pub fn gf_check(family: GfFamily, x: &QuadExt, digits: u64) -> Result<EvalReport> {
    let start = Instant::now();
    let spec = gf_series_spec(family, x)?;
    let lhs = eval_series(&spec, digits)?;
    let target = pow10_neg_mag(digits as i64 + 1);
    let mut prec = rhs_precision(digits);
    let rhs = loop {
        let v = family.function_side(x, prec)?;
        if v.rad() <= target {
            break v;
        }
        prec += v.rad().div_up(target).log2_ceil().max(0) as u64 + 32;
    };
    Ok(EvalReport::new(spec.id, digits, lhs.terms, lhs.value, rhs, start))
}
