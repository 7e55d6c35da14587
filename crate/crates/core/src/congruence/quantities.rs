use super::modular::{mod_inv, ModContext};
use crate::error::{Error, Result};
use crate::seq::fib_mod;

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

/// `H_{p-1} mod p^e`, summed term by term with modular inverses.
pub fn harmonic1_mod(p: u64, e: u32) -> Result<u128> {
    let ctx = ModContext::new(p, e)?;
    let mut h = 0;
    for k in 1..p {
        h = ctx.add(h, mod_inv(k as u128, &ctx)?);
    }
    Ok(h)
}

/// `H_{p-1} / p^2 mod p^3` for `p > 3`.
pub fn wolstenholme_quotient(p: u64) -> Result<u128> {
    require(p > 3, || format!("Wolstenholme quotient needs p > 3, got {p}"))?;
    let h = harmonic1_mod(p, 5)?;
    let p2 = (p as u128) * (p as u128);
    if h % p2 != 0 {
        return Err(Error::WolstenholmeViolation { p, residue: h });
    }
    Ok(h / p2 % (p2 * p as u128))
}

/// `B_{p-5} mod p`, from `sum_{x<p} x^(p-5) = p B_{p-5} (mod p^2)`.
/// For `p = 5` this is `B_0 = 1`.
pub fn bernoulli_mod(p: u64) -> Result<u128> {
    require(p >= 5, || format!("B_(p-5) needs p >= 5, got {p}"))?;
    if p == 5 {
        return Ok(1);
    }
    let ctx = ModContext::new(p, 2)?;
    let s = (1..p as u128).fold(0, |acc, x| ctx.add(acc, ctx.pow(x, p - 5)));
    debug_assert_eq!(s % p as u128, 0);
    Ok(s / p as u128)
}

/// `E_{p-3} mod p` from `sum_{k even} C(n,k) E_{n-k} = 0`, with binomials
/// mod `p` from factorial tables (all indices stay below `p`).
pub fn euler_mod(p: u64) -> Result<u128> {
    require(p >= 5, || format!("E_(p-3) needs p >= 5, got {p}"))?;
    let ctx = ModContext::new(p, 1)?;
    let n = (p - 3) as usize;
    let mut fact = vec![1u128; n + 1];
    for i in 1..=n {
        fact[i] = ctx.mul(fact[i - 1], i as u128);
    }
    let inv_fact: Vec<u128> = fact.iter().map(|&f| mod_inv(f, &ctx)).collect::<Result<_>>()?;
    let binom = |a: usize, b: usize| ctx.mul(fact[a], ctx.mul(inv_fact[b], inv_fact[a - b]));
    let mut e = vec![0u128; n + 1];
    e[0] = 1;
    for m in (2..=n).step_by(2) {
        let s = (2..=m).step_by(2).fold(0, |acc, k| ctx.add(acc, ctx.mul(binom(m, k), e[m - k])));
        e[m] = ctx.neg(s);
    }
    Ok(e[n])
}

/// Fermat quotient `(2^(p-1) - 1) / p mod p`.
pub fn fermat_quotient2(p: u64) -> Result<u128> {
    let ctx = ModContext::new(p, 2)?;
    let r = ctx.sub(ctx.pow(2, p - 1), 1);
    Ok(r / p as u128 % p as u128)
}

/// Legendre symbol `(p/5)` for a prime `p != 5`.
pub fn legendre5(p: u64) -> Result<i8> {
    require(p != 5, || "(p/5) is 0 at p = 5".to_string())?;
    Ok(match p % 5 {
        1 | 4 => 1,
        _ => -1,
    })
}

/// Legendre symbol `(-2/p)` for an odd prime `p`: `+1` iff `p = 1, 3 mod 8`.
pub fn legendre_minus2(p: u64) -> i8 {
    match p % 8 {
        1 | 3 => 1,
        _ => -1,
    }
}

/// `F_{p-(p/5)} / p mod p` for `p > 5`.
pub fn fib_quotient(p: u64) -> Result<u128> {
    require(p > 5, || format!("Fibonacci quotient needs p > 5, got {p}"))?;
    ModContext::new(p, 1)?;
    let index = if legendre5(p)? == 1 { p - 1 } else { p + 1 };
    let f = fib_mod(index, p * p);
    if !f.is_multiple_of(p) {
        return Err(Error::DivisibilityViolation { p, index });
    }
    Ok((f / p) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::modular::rational_residue;
    use crate::congruence::primes::sieve;
    use crate::seq::{bernoulli_upto, euler_upto, harmonic1};
    use num_rational::BigRational;

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic1_mod(5, 2).unwrap(), 0);
        assert_eq!(harmonic1_mod(3, 1).unwrap(), 0);
        assert_eq!(harmonic1_mod(7, 2).unwrap(), 0);
        for p in [11u64, 13, 97] {
            let ctx = ModContext::new(p, 3).unwrap();
            assert_eq!(harmonic1_mod(p, 3).unwrap(), rational_residue(&harmonic1(p - 1), &ctx).unwrap());
        }
    }

    #[test]
    fn wolstenholme_examples() {
        let c = ModContext::new(5, 3).unwrap();
        let want = rational_residue(&BigRational::new(1.into(), 12.into()), &c).unwrap();
        assert_eq!(wolstenholme_quotient(5).unwrap(), want);
        let c = ModContext::new(7, 3).unwrap();
        let want = rational_residue(&BigRational::new(1.into(), 20.into()), &c).unwrap();
        assert_eq!(wolstenholme_quotient(7).unwrap(), want);
        assert!(matches!(wolstenholme_quotient(3), Err(Error::Precondition(_))));
        // exact oracle: H_{p-1}/p^2 reduced mod p^3
        for p in [11u64, 13, 17, 31] {
            let c = ModContext::new(p, 3).unwrap();
            let q = harmonic1(p - 1) / BigRational::from_integer((p * p).into());
            assert_eq!(wolstenholme_quotient(p).unwrap(), rational_residue(&q, &c).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn bernoulli_examples_and_oracle() {
        assert_eq!(bernoulli_mod(5).unwrap(), 1);
        assert_eq!(bernoulli_mod(7).unwrap(), 6);
        let b = bernoulli_upto(195);
        let c11 = ModContext::new(11, 1).unwrap();
        assert_eq!(bernoulli_mod(11).unwrap(), rational_residue(&BigRational::new(1.into(), 42.into()), &c11).unwrap());
        for p in sieve(200).into_iter().filter(|&p| p >= 7) {
            let ctx = ModContext::new(p, 1).unwrap();
            assert_eq!(bernoulli_mod(p).unwrap(), rational_residue(&b[(p - 5) as usize], &ctx).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn euler_examples_and_oracle() {
        assert_eq!(euler_mod(5).unwrap(), 4);
        assert_eq!(euler_mod(7).unwrap(), 5);
        assert_eq!(euler_mod(11).unwrap(), 1385 % 11);
        let e = euler_upto(200);
        for p in sieve(203).into_iter().filter(|&p| p >= 5) {
            let ctx = ModContext::new(p, 1).unwrap();
            assert_eq!(euler_mod(p).unwrap(), ctx.reduce_big(&e[(p - 3) as usize]), "p = {p}");
        }
    }

    #[test]
    fn fermat_examples() {
        assert_eq!(fermat_quotient2(7).unwrap(), 2);
        assert_eq!(fermat_quotient2(3).unwrap(), 1);
        assert_eq!(fermat_quotient2(5).unwrap(), 3);
        // 1093 is a Wieferich prime
        assert_eq!(fermat_quotient2(1093).unwrap(), 0);
    }

    #[test]
    fn fibonacci_quotient_examples() {
        assert_eq!(legendre5(7).unwrap(), -1);
        assert_eq!(fib_quotient(7).unwrap(), 3);
        assert_eq!(legendre5(11).unwrap(), 1);
        assert_eq!(fib_quotient(11).unwrap(), 5);
        assert_eq!(legendre5(13).unwrap(), -1);
        assert_eq!(fib_quotient(13).unwrap(), 3);
        assert!(fib_quotient(5).is_err());
    }

    #[test]
    fn legendre_by_euler_criterion() {
        for p in sieve(1000).into_iter().filter(|&p| p > 5) {
            let ctx = ModContext::new(p, 1).unwrap();
            let r = ctx.pow(5, (p - 1) / 2);
            let want = if r == 1 { 1 } else { -1 };
            assert_eq!(legendre5(p).unwrap(), want, "p = {p}");
            let r = ctx.pow(p as u128 - 2, (p - 1) / 2);
            assert_eq!(legendre_minus2(p), if r == 1 { 1 } else { -1 }, "p = {p}");
        }
    }
}
