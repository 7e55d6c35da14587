use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use super::tail::boundary_message;
use super::{catalog::lookup, limit_ratio, tail_bound, SeriesSpec, TermStream};
use crate::error::{Error, Result};
use crate::real::ball::pow10_neg_mag;
use crate::real::{digits_to_bits, eval_closed_form, working_precision, Ball, Mag};

/// Hard cap on summed terms; far beyond anything a convergent catalog
/// argument needs at sane precisions.
const MAX_TERMS: u64 = 50_000_000;

/// A certified enclosure of a series sum.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Ball,
    /// Number of terms summed before the tail was certified.
    pub terms: u64,
    /// Working precision of the final pass, in bits.
    pub precision: u64,
}

fn estimate_terms(limit: &BigRational, digits: u64) -> u64 {
    let r = limit.to_f64().unwrap_or(0.5).max(1e-300);
    (digits as f64 / -r.log10()).ceil() as u64 + 32
}

fn sum_pass(spec: &SeriesSpec, limit: &BigRational, prec: u64, tail_target: Mag) -> Result<(Ball, u64)> {
    let mut stream = TermStream::new(spec, prec);
    let mut sum = Ball::zero();
    // rho(k0) never drops below the limiting ratio, so smaller tails are hopeless
    let one = BigRational::one();
    let factor = Mag::from_rational_up(&(limit / (&one - limit)));
    let prefilter = if factor.is_zero() { None } else { Some(tail_target.div_down(factor)) };
    loop {
        let (k, t) = stream.next_term();
        sum = sum.add(&t, prec);
        let n = k - spec.k_start + 1;
        if k > spec.k_start {
            let mag = t.abs_upper();
            if prefilter.is_none_or(|p| mag <= p) {
                if let Ok(rho) = tail_bound(spec, k) {
                    let factor = Mag::from_rational_up(&(&rho / (&one - &rho)));
                    let tail = mag.mul_up(factor);
                    if tail <= tail_target {
                        return Ok((sum.with_added_radius(tail), n));
                    }
                }
            }
        }
        if n >= MAX_TERMS {
            return Err(Error::Refuse(format!("{}: no tail certificate after {MAX_TERMS} terms", spec.id)));
        }
    }
}

/// Certified sum of `spec` with absolute radius at most `10^-digits`.
///
/// The working precision starts from the predicted term count and is raised
/// only if rounding, rather than truncation, dominates the radius.
pub fn eval_series(spec: &SeriesSpec, digits: u64) -> Result<Evaluation> {
    if spec.profile_only {
        return Err(Error::Precondition(format!(
            "{} converges too slowly for certified evaluation; use profile",
            spec.id
        )));
    }
    let limit = limit_ratio(spec);
    if limit >= BigRational::one() {
        return Err(Error::Refuse(boundary_message(spec, &limit)));
    }
    let target = pow10_neg_mag(digits as i64 + 1);
    let tail_target = target.mul_2exp(-1);
    let mut prec = working_precision(digits, estimate_terms(&limit, digits));
    loop {
        let (value, terms) = sum_pass(spec, &limit, prec, tail_target)?;
        if value.rad() <= target {
            return Ok(Evaluation { value, terms, precision: prec });
        }
        let excess = value.rad().div_up(target).log2_ceil().max(0) as u64;
        prec += excess + 16;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalStatus {
    Pass,
    Fail,
}

impl std::fmt::Display for EvalStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvalStatus::Pass => "pass",
            EvalStatus::Fail => "fail",
        })
    }
}

/// Outcome of comparing a series against its closed form.
///
/// Serializes as `{"id", "digits", "terms", "lhs", "rhs", "gap", "status",
/// "ms"}` with balls rendered as certified decimal strings.
#[derive(Clone, Debug)]
pub struct EvalReport {
    pub id: String,
    pub digits: u64,
    pub terms: u64,
    pub lhs: Ball,
    pub rhs: Ball,
    pub gap: Mag,
    pub status: EvalStatus,
    pub ms: u64,
}

impl Serialize for EvalReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let shown = self.digits as usize + 5;
        let mut st = s.serialize_struct("EvalReport", 8)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("digits", &self.digits)?;
        st.serialize_field("terms", &self.terms)?;
        st.serialize_field("lhs", &self.lhs.to_decimal(shown))?;
        st.serialize_field("rhs", &self.rhs.to_decimal(shown))?;
        st.serialize_field("gap", &self.gap.to_string())?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("ms", &self.ms)?;
        st.end()
    }
}

impl EvalReport {
    pub(crate) fn new(id: String, digits: u64, terms: u64, lhs: Ball, rhs: Ball, start: Instant) -> EvalReport {
        let gap = lhs.gap_bound(&rhs);
        let status = if gap.lt_pow10_neg(digits as i64 - 10) { EvalStatus::Pass } else { EvalStatus::Fail };
        EvalReport { id, digits, terms, lhs, rhs, gap, status, ms: start.elapsed().as_millis() as u64 }
    }

    pub fn passed(&self) -> bool {
        self.status == EvalStatus::Pass
    }
}

/// Bits for a closed-form side whose absolute radius must match `digits`.
pub(crate) fn rhs_precision(digits: u64) -> u64 {
    digits_to_bits(digits) + 40
}

/// Evaluates catalog entry `id` and its closed form at `digits` digits.
pub fn verify_identity(id: &str, digits: u64) -> Result<EvalReport> {
    let start = Instant::now();
    let spec = lookup(id)?;
    let lhs = eval_series(&spec, digits)?;
    let rhs = eval_closed_form(&spec.rhs, rhs_precision(digits))?;
    Ok(EvalReport::new(spec.id, digits, lhs.terms, lhs.value, rhs, start))
}
