//! Small expression trees for closed-form right-hand sides.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::Ball;
use super::elementary::{const_pi, ln};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    Const(BigRational),
    Pi,
    /// Square root of a positive rational.
    Sqrt(BigRational),
    Ln(Box<ClosedForm>),
    Pow(Box<ClosedForm>, u32),
    Neg(Box<ClosedForm>),
    Add(Vec<ClosedForm>),
    Mul(Vec<ClosedForm>),
    Div(Box<ClosedForm>, Box<ClosedForm>),
}

impl ClosedForm {
    pub fn int(n: i64) -> ClosedForm {
        ClosedForm::Const(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> ClosedForm {
        ClosedForm::Const(BigRational::new(n.into(), d.into()))
    }

    pub fn sqrt(n: i64) -> ClosedForm {
        ClosedForm::Sqrt(BigRational::from_integer(n.into()))
    }

    pub fn pi_pow(e: u32) -> ClosedForm {
        if e == 1 {
            ClosedForm::Pi
        } else {
            ClosedForm::Pi.pow(e)
        }
    }

    pub fn ln(self) -> ClosedForm {
        ClosedForm::Ln(Box::new(self))
    }

    pub fn pow(self, e: u32) -> ClosedForm {
        ClosedForm::Pow(Box::new(self), e)
    }

    pub fn neg(self) -> ClosedForm {
        ClosedForm::Neg(Box::new(self))
    }

    pub fn times(self, other: ClosedForm) -> ClosedForm {
        match self {
            ClosedForm::Mul(mut v) => {
                v.push(other);
                ClosedForm::Mul(v)
            }
            s => ClosedForm::Mul(vec![s, other]),
        }
    }

    pub fn over(self, other: ClosedForm) -> ClosedForm {
        ClosedForm::Div(Box::new(self), Box::new(other))
    }

    /// `(a + sqrt(b)) / c` as a tree.
    pub fn surd(a: i64, b: i64, c: i64) -> ClosedForm {
        ClosedForm::Add(vec![ClosedForm::int(a), ClosedForm::sqrt(b)]).over(ClosedForm::int(c))
    }

    fn depth(&self) -> u64 {
        use ClosedForm::*;
        match self {
            Const(_) | Pi | Sqrt(_) => 1,
            Ln(e) | Neg(e) | Pow(e, _) => 1 + e.depth(),
            Add(v) | Mul(v) => 1 + v.iter().map(ClosedForm::depth).max().unwrap_or(0),
            Div(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn eval_at(&self, wp: u64) -> Result<Ball> {
        use ClosedForm::*;
        Ok(match self {
            Const(q) => Ball::from_rational(q, wp),
            Pi => const_pi(wp),
            Sqrt(q) => {
                if !q.is_positive() {
                    return Err(Error::domain("sqrt of a non-positive constant"));
                }
                Ball::from_rational(q, wp + 4).sqrt(wp)?
            }
            Ln(e) => ln(&e.eval_at(wp)?, wp)?,
            Pow(e, k) => e.eval_at(wp)?.pow(*k, wp),
            Neg(e) => e.eval_at(wp)?.neg(),
            Add(v) => v.iter().try_fold(Ball::zero(), |acc, e| Ok::<_, Error>(acc.add(&e.eval_at(wp)?, wp)))?,
            Mul(v) => v.iter().try_fold(Ball::one(), |acc, e| Ok::<_, Error>(acc.mul(&e.eval_at(wp)?, wp)))?,
            Div(a, b) => a.eval_at(wp)?.div(&b.eval_at(wp)?, wp)?,
        })
    }
}

/// Ball containing the exact value of `e`, with relative accuracy close to
/// `prec` bits.
pub fn eval_closed_form(e: &ClosedForm, prec: u64) -> Result<Ball> {
    let wp = prec + 16 + 4 * e.depth();
    Ok(e.eval_at(wp)?.rounded(prec + 2))
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClosedForm::*;
        match self {
            Const(q) => {
                if q.denom().is_one() && !q.is_negative() {
                    fmt_rational(q, f)
                } else {
                    write!(f, "(")?;
                    fmt_rational(q, f)?;
                    write!(f, ")")
                }
            }
            Pi => write!(f, "pi"),
            Sqrt(q) => {
                write!(f, "sqrt(")?;
                fmt_rational(q, f)?;
                write!(f, ")")
            }
            Ln(e) => write!(f, "ln({e})"),
            Pow(e, k) => match **e {
                Pi | Const(_) | Sqrt(_) => write!(f, "{e}^{k}"),
                Ln(ref inner) => write!(f, "ln^{k}({inner})"),
                _ => write!(f, "({e})^{k}"),
            },
            Neg(e) => write!(f, "-{e}"),
            Add(v) => {
                write!(f, "(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Mul(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            Div(a, b) => match **b {
                Mul(_) | Div(..) => write!(f, "{a}/({b})"),
                _ => write!(f, "{a}/{b}"),
            },
        }
    }
}

impl From<BigInt> for ClosedForm {
    fn from(n: BigInt) -> Self {
        ClosedForm::Const(BigRational::from_integer(n))
    }
}

impl Default for ClosedForm {
    fn default() -> Self {
        ClosedForm::Const(BigRational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::ball::parse_decimal;

    #[test]
    fn zero_constant() {
        let z = eval_closed_form(&ClosedForm::int(0), 64).unwrap();
        assert_eq!(z, Ball::zero());
    }

    #[test]
    fn pi_fourth_over_1944() {
        let e = ClosedForm::pi_pow(4).over(ClosedForm::int(1944));
        let v = eval_closed_form(&e, 200).unwrap();
        let want = Ball::from_rational(&parse_decimal("0.050107557116256397755370541506535551054").unwrap(), 200);
        assert!(v.gap_bound(&want).to_f64() < 1e-38);
        assert_eq!(e.to_string(), "pi^4/1944");
    }

    #[test]
    fn log_cube_of_golden_ratio() {
        let e = ClosedForm::ratio(1, 3).times(ClosedForm::surd(1, 5, 2).ln().pow(3)).neg();
        let v = eval_closed_form(&e, 200).unwrap();
        // ln(phi) = 0.4812118250596034474977589134243684231352
        let ln_phi = parse_decimal("0.4812118250596034474977589134243684231352").unwrap();
        let want = -(&ln_phi * &ln_phi * &ln_phi) / BigRational::from_integer(3.into());
        assert!(v.gap_bound(&Ball::from_rational(&want, 200)).to_f64() < 1e-38);
        assert!(v.is_negative());
        assert!(v.to_decimal(8).starts_with("-3.7143910e-2"));
    }

    #[test]
    fn radius_tracks_requested_precision() {
        let e = ClosedForm::ratio(41, 7500).times(ClosedForm::pi_pow(4));
        for prec in [64u64, 256, 1024] {
            let v = eval_closed_form(&e, prec).unwrap();
            assert!(v.rel_accuracy_bits() >= prec as i64 - 2, "prec {prec}");
        }
    }

    #[test]
    fn domain_errors_propagate() {
        let bad = ClosedForm::int(0).ln();
        assert!(eval_closed_form(&bad, 64).is_err());
        let neg_sqrt = ClosedForm::Sqrt(BigRational::from_integer((-2).into()));
        assert!(eval_closed_form(&neg_sqrt, 64).is_err());
        let div0 = ClosedForm::int(1).over(ClosedForm::int(0));
        assert!(eval_closed_form(&div0, 64).is_err());
    }
}
