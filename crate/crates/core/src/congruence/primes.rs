use crate::error::{Error, Result};

/// Upper bound accepted by [`primes_in`].
pub const SIEVE_LIMIT: u64 = 1_000_000;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes up to `n` inclusive by the sieve of Eratosthenes.
pub fn sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Primes in `lo..=hi`, for `hi` within [`SIEVE_LIMIT`].
pub fn primes_in(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if hi > SIEVE_LIMIT {
        return Err(Error::Precondition(format!("prime bound {hi} exceeds {SIEVE_LIMIT}")));
    }
    Ok(sieve(hi).into_iter().filter(|&p| p >= lo).collect())
}
