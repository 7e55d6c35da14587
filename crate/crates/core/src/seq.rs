//! Exact integer and rational sequences.
//!
//! Everything here is computed in exact arithmetic; callers that need many
//! consecutive values should go through [`SequenceCache`], which keeps an
//! append-only prefix of the sequence.

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `H^(2)_n = sum_{0<j<=n} 1/j^2`.
pub fn harmonic2(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, j| acc + BigRational::new(BigInt::one(), BigInt::from(j) * j))
}

/// `sum_{0<j<=n} 1/(2j-1)^2`.
pub fn hbar2(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, j| {
        let odd = BigInt::from(2 * j - 1);
        acc + BigRational::new(BigInt::one(), &odd * &odd)
    })
}

/// Ordinary harmonic number `H_n`.
pub fn harmonic1(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, j| acc + BigRational::new(BigInt::one(), BigInt::from(j)))
}

/// `C(2k, k)`, built incrementally from `C(2j+2, j+1) = C(2j, j) * 2(2j+1)/(j+1)`.
pub fn central_binom(k: u64) -> BigInt {
    let mut c = BigInt::one();
    for j in 0..k {
        c = c * (2 * (2 * j + 1)) / (j + 1);
    }
    c
}

/// General binomial coefficient, exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for j in 0..k {
        c = c * (n - j) / (j + 1);
    }
    c
}

/// Returns `(F_n, F_{n+1})` by fast doubling.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    // F(2m) = F(m)(2F(m+1) - F(m)), F(2m+1) = F(m)^2 + F(m+1)^2
    let c = &a * (&b * 2 - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

pub fn fib(n: u64) -> BigInt {
    fib_pair(n).0
}

pub fn lucas(n: u64) -> BigInt {
    let (f, g) = fib_pair(n);
    g * 2 - f
}

fn pow5(e: u64) -> BigInt {
    num_traits::pow(BigInt::from(5), e as usize)
}

/// `u_k`: `5^(k/2) F_k` for even `k`, `5^((k-1)/2) L_k` for odd `k`.
pub fn weight_u(k: u64) -> BigInt {
    if k.is_multiple_of(2) {
        pow5(k / 2) * fib(k)
    } else {
        pow5((k - 1) / 2) * lucas(k)
    }
}

/// `v_k`: `5^(k/2) L_k` for even `k`, `5^((k+1)/2) F_k` for odd `k`.
pub fn weight_v(k: u64) -> BigInt {
    if k.is_multiple_of(2) {
        pow5(k / 2) * lucas(k)
    } else {
        pow5(k.div_ceil(2)) * fib(k)
    }
}

/// `B_0..=B_m` from `sum_{j=0}^{m} C(m+1, j) B_j = 0`, so `B_1 = -1/2`.
pub fn bernoulli_upto(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    for n in 1..=m {
        if n >= 3 && n % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        let mut c = BigInt::one(); // C(n+1, j)
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += bj * BigRational::from_integer(c.clone());
            }
            c = c * (n + 1 - j) / (j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// `E_0..=E_m` from `E_0 = 1` and `sum_{k even} C(n,k) E_{n-k} = 0` for `n >= 1`.
pub fn euler_upto(m: usize) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = Vec::with_capacity(m + 1);
    e.push(BigInt::one());
    for n in 1..=m {
        if n % 2 == 1 {
            e.push(BigInt::zero());
            continue;
        }
        let mut acc = BigInt::zero();
        let mut c = BigInt::one(); // C(n, k)
        for k in 1..=n {
            c = c * (n + 1 - k) / k;
            if k % 2 == 0 {
                acc += &c * &e[n - k];
            }
        }
        e.push(-acc);
    }
    e
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `(F_n mod m, F_{n+1} mod m)`.
fn fib_pair_mod(n: u64, m: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1 % m);
    }
    let (a, b) = fib_pair_mod(n / 2, m);
    let two_b_minus_a = (2 * (b as u128) + m as u128 - a as u128) % m as u128;
    let c = mul_mod(a, two_b_minus_a as u64, m);
    let d = ((mul_mod(a, a, m) as u128 + mul_mod(b, b, m) as u128) % m as u128) as u64;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        (d, ((c as u128 + d as u128) % m as u128) as u64)
    }
}

/// `F_n mod modulus` by fast doubling. `modulus >= 2`.
pub fn fib_mod(n: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "modulus must be at least 2");
    fib_pair_mod(n, modulus).0
}

/// `L_n mod modulus` via `L_n = 2F_{n+1} - F_n`.
pub fn lucas_mod(n: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "modulus must be at least 2");
    let (f, g) = fib_pair_mod(n, modulus);
    ((2 * g as u128 + modulus as u128 - f as u128) % modulus as u128) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    H2,
    HBar2,
    H1,
    CentralBinom,
    Fib,
    Lucas,
    U,
    V,
    Bernoulli,
    Euler,
}

/// Append-only prefix of one exact sequence.
///
/// Entries are never rewritten once computed; a cache is owned by one
/// consumer (clone it, or keep one per thread, to share).
#[derive(Debug, Clone)]
pub struct SequenceCache {
    kind: SequenceKind,
    values: Vec<BigRational>,
}

impl SequenceCache {
    pub fn new(kind: SequenceKind) -> Self {
        Self { kind, values: Vec::new() }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at index `n`, extending the prefix as needed.
    pub fn get(&mut self, n: usize) -> &BigRational {
        if n >= self.values.len() {
            self.extend_to(n);
        }
        &self.values[n]
    }

    pub fn prefix(&self) -> &[BigRational] {
        &self.values
    }

    fn extend_to(&mut self, n: usize) {
        use SequenceKind::*;
        let int = |v: BigInt| BigRational::from_integer(v);
        match self.kind {
            // recurrence-defined tables are rebuilt whole; old entries are unchanged
            Bernoulli => {
                let all = bernoulli_upto(n);
                self.values.extend(all.into_iter().skip(self.values.len()));
            }
            Euler => {
                let all = euler_upto(n);
                self.values.extend(all.into_iter().skip(self.values.len()).map(int));
            }
            _ => {
                while self.values.len() <= n {
                    let i = self.values.len() as u64;
                    let next = self.next_value(i);
                    self.values.push(next);
                }
            }
        }
    }

    fn next_value(&self, i: u64) -> BigRational {
        use SequenceKind::*;
        let prev = self.values.last();
        let int = |v: BigInt| BigRational::from_integer(v);
        let reciprocal = |d: BigInt| BigRational::new(BigInt::one(), d);
        match (self.kind, prev) {
            (H2 | HBar2 | H1, None) => BigRational::zero(),
            (H2, Some(p)) => p + reciprocal(BigInt::from(i) * i),
            (HBar2, Some(p)) => {
                let odd = BigInt::from(2 * i - 1);
                p + reciprocal(&odd * &odd)
            }
            (H1, Some(p)) => p + reciprocal(BigInt::from(i)),
            (CentralBinom, None) => BigRational::one(),
            (CentralBinom, Some(p)) => p * BigRational::new(BigInt::from(2 * (2 * i - 1)), BigInt::from(i)),
            (Fib, _) => int(fib(i)),
            (Lucas, _) => int(lucas(i)),
            (U, _) => int(weight_u(i)),
            (V, _) => int(weight_v(i)),
            (Bernoulli | Euler, _) => unreachable!("table kinds are filled in bulk"),
        }
    }
}

/// True when `q` is an integer (denominator one).
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// `|n|` as the number of bits, convenience for growth checks.
pub fn bit_len(n: &BigInt) -> u64 {
    n.abs().bits()
}
