//! Exact truncated power series and the coefficient identities used to derive
//! the series in [`crate::series`].
//!
//! The central identity is
//! `z^3/6 = sin z * sum_{k>=1} C(2k,k) Hbar_k / ((2k+1) 4^k) * sin^{2k} z`
//! together with its hyperbolic counterpart obtained from `z -> iz`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::seq::{central_binom, hbar2};

/// Coefficients of `z^0 … z^N` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> PowerSeries {
        PowerSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    /// Series from explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> PowerSeries {
        assert!(!coeffs.is_empty(), "a power series needs at least one coefficient");
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Sum truncated at the smaller order.
    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }
}

fn taylor_odd(order: usize, alternating: bool) -> PowerSeries {
    let mut s = PowerSeries::zero(order);
    let mut fact = BigInt::one();
    for n in 1..=order {
        fact *= n;
        if n % 2 == 1 {
            let negative = alternating && n % 4 == 3;
            let c = BigRational::new(BigInt::one(), fact.clone());
            s.coeffs[n] = if negative { -c } else { c };
        }
    }
    s
}

/// Taylor series of `sin z` through `z^order`.
pub fn ps_sin(order: usize) -> PowerSeries {
    taylor_odd(order, true)
}

/// Taylor series of `sinh z` through `z^order`.
pub fn ps_sinh(order: usize) -> PowerSeries {
    taylor_odd(order, false)
}

/// Cauchy product truncated at the smaller of the two orders.
pub fn ps_mul(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    let n = a.order().min(b.order());
    let mut out = PowerSeries::zero(n);
    for (i, ai) in a.coeffs.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate().take(n + 1 - i) {
            if !bj.is_zero() {
                out.coeffs[i + j] += ai * bj;
            }
        }
    }
    out
}

/// `a^e` for `e >= 1` by repeated squaring.
pub fn ps_pow(a: &PowerSeries, e: u32) -> PowerSeries {
    assert!(e >= 1, "ps_pow needs a positive exponent");
    let mut result: Option<PowerSeries> = None;
    let mut base = a.clone();
    let mut e = e;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => ps_mul(&r, &base),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = ps_mul(&base, &base);
    }
    result.expect("e >= 1")
}

/// Polynomial in `a^2`: `coeffs[i]` multiplies `a^(2i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn one() -> RatPolynomial {
        RatPolynomial { coeffs: vec![BigRational::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `a^(2i)`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Multiplies by `1 - c a^2`.
    pub fn mul_one_minus(&mut self, c: &BigRational) {
        self.coeffs.push(BigRational::zero());
        for i in (1..self.coeffs.len()).rev() {
            let lower = &self.coeffs[i - 1] * c;
            self.coeffs[i] -= lower;
        }
    }
}

/// `prod_{j=1}^{k} (1 - a^2/(2j-1)^2)` expanded in `a^2`.
pub fn odd_square_product(k: u64) -> RatPolynomial {
    let mut p = RatPolynomial::one();
    for j in 1..=k {
        let d = BigInt::from(2 * j - 1);
        p.mul_one_minus(&BigRational::new(BigInt::one(), &d * &d));
    }
    p
}

/// Outcome of an exact coefficient comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsCheck {
    pub order: usize,
    pub passed: bool,
    /// Index of the first coefficient that differs from the target.
    pub first_failure: Option<usize>,
    #[serde(skip)]
    pub product: PowerSeries,
}

/// Default weight `C(2k,k) Hbar_k / ((2k+1) 4^k)`.
pub fn identity_weight(k: u64) -> BigRational {
    let den = BigInt::from(2 * k + 1) * (BigInt::one() << (2 * k));
    BigRational::new(central_binom(k), den) * hbar2(k)
}

/// `base(z) * sum_{k=1}^{(N-1)/2} w_k (sign * base(z)^2)^k` through `z^N`.
fn weighted_sum(order: usize, base: &PowerSeries, sign: i64, weight: &dyn Fn(u64) -> BigRational) -> PowerSeries {
    let sq = ps_mul(base, base).scale(&BigRational::from_integer(sign.into()));
    let mut inner = PowerSeries::zero(order);
    let mut power = PowerSeries::from_coeffs({
        let mut c = vec![BigRational::zero(); order + 1];
        c[0] = BigRational::one();
        c
    });
    for k in 1..=((order.saturating_sub(1)) / 2) as u64 {
        power = ps_mul(&power, &sq);
        inner = inner.add(&power.scale(&weight(k)));
    }
    ps_mul(base, &inner)
}

fn compare_cubic(product: PowerSeries, target: BigRational) -> PsCheck {
    let order = product.order();
    let first_failure =
        product.coeffs.iter().enumerate().position(|(n, c)| if n == 3 { *c != target } else { !c.is_zero() });
    PsCheck { order, passed: first_failure.is_none(), first_failure, product }
}

/// Checks `sin z * sum_k w_k sin^{2k} z = z^3/6` through `z^order` for a
/// caller-supplied weight, so mutated weights can be tested.
pub fn verify_sin_identity_with(order: usize, weight: &dyn Fn(u64) -> BigRational) -> PsCheck {
    assert!(order >= 3, "the identity starts at z^3");
    compare_cubic(weighted_sum(order, &ps_sin(order), 1, weight), BigRational::new(1.into(), 6.into()))
}

pub fn verify_sin_identity(order: usize) -> PsCheck {
    verify_sin_identity_with(order, &identity_weight)
}

/// Checks `sinh z * sum_k w_k (-sinh^2 z)^k = target * z^3` through
/// `z^order`.
pub fn verify_sinh_identity_with(order: usize, target: BigRational) -> PsCheck {
    assert!(order >= 3, "the identity starts at z^3");
    compare_cubic(weighted_sum(order, &ps_sinh(order), -1, &identity_weight), target)
}

/// Checks `sinh z * sum_k w_k (-sinh^2 z)^k = -z^3/6` through `z^order`.
pub fn verify_sinh_identity(order: usize) -> PsCheck {
    verify_sinh_identity_with(order, BigRational::new((-1).into(), 6.into()))
}

/// Per-index outcome of a coefficient check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KCheck {
    pub k: u64,
    pub passed: bool,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub expected: BigRational,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

/// For each `k <= k_max`, the `a^2` coefficient of the odd-square product
/// must equal `-Hbar_k` and its constant term must be 1.
pub fn verify_product_coeff(k_max: u64) -> Vec<KCheck> {
    let mut p = RatPolynomial::one();
    (1..=k_max)
        .map(|k| {
            let d = BigInt::from(2 * k - 1);
            p.mul_one_minus(&BigRational::new(BigInt::one(), &d * &d));
            let value = p.coeff(1);
            let expected = -hbar2(k);
            let passed = value == expected && p.coeff(0).is_one() && p.degree() == k as usize;
            KCheck { k, passed, value, expected }
        })
        .collect()
}

/// For each `k <= k_max`, checks
/// `prod_{j<k} (1/2+j)^2 / (k! prod_{j=1}^{k} (1/2+j)) = C(2k,k) / ((2k+1) 4^k)`.
pub fn verify_coeff_ratio(k_max: u64) -> Vec<KCheck> {
    let half = BigRational::new(1.into(), 2.into());
    let mut rising = BigRational::one();
    let mut shifted = BigRational::one();
    let mut fact = BigInt::one();
    (1..=k_max)
        .map(|k| {
            let j = BigRational::from_integer(BigInt::from(k - 1));
            let r = &half + j;
            rising *= &r * &r;
            shifted *= &half + BigRational::from_integer(BigInt::from(k));
            fact *= k;
            let value = &rising / (&shifted * BigRational::from_integer(fact.clone()));
            let expected = BigRational::new(central_binom(k), BigInt::from(2 * k + 1) * (BigInt::one() << (2 * k)));
            KCheck { k, passed: value == expected, value, expected }
        })
        .collect()
}
