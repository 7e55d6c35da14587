use num_traits::ToPrimitive;
use serde::Serialize;

use super::{catalog::lookup, limit_ratio, TermStream};
use crate::error::Result;
use crate::real::{digits_to_bits, eval_closed_form, Ball};

/// Correct digits of the partial sum through term `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub k: u64,
    /// `-log10 |partial sum - closed form|`, capped by the working precision.
    pub digits: f64,
}

fn is_checkpoint(n: u64) -> bool {
    let mut p = 1;
    while p <= n {
        if n == p || n == 2 * p || n == 5 * p {
            return true;
        }
        p *= 10;
    }
    false
}

/// Partial sums of catalog entry `id` over its first `terms` terms, compared
/// with the closed form at checkpoints `1, 2, 5, 10, 20, …` and the final term.
pub fn profile(id: &str, terms: u64) -> Result<Vec<ProfilePoint>> {
    let spec = lookup(id)?;
    if terms == 0 {
        return Ok(Vec::new());
    }
    let per_term = -limit_ratio(&spec).to_f64().unwrap_or(1.0).log10();
    let expected = if per_term > 0.0 { terms as f64 * per_term } else { 0.0 };
    let digits = (expected.min(1e5) as u64) + 40;
    let prec = digits_to_bits(digits) + 64;
    let exact = eval_closed_form(&spec.rhs, prec)?;

    let mut stream = TermStream::new(&spec, prec);
    let mut sum = Ball::zero();
    let mut out = Vec::new();
    for n in 1..=terms {
        let (k, t) = stream.next_term();
        sum = sum.add(&t, prec);
        if n == terms || is_checkpoint(n) {
            let err = sum.sub(&exact, prec).abs_upper();
            out.push(ProfilePoint { k, digits: -err.log10().max(-(digits as f64)) });
        }
    }
    Ok(out)
}
