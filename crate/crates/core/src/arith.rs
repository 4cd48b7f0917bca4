//! Machine-word number theory used by the residue rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Reduce an arbitrary integer into `[0, m)`.
pub fn reduce_bigint(a: &BigInt, m: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors in increasing order, by trial division.
///
/// Returns `None` when `n` has a cofactor beyond the trial bound that is not
/// itself prime.
pub fn prime_divisors(mut n: u64) -> Option<Vec<u64>> {
    const TRIAL_BOUND: u64 = 2_000_000;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n && d <= TRIAL_BOUND {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if d * d <= n && !is_prime(n) {
            return None;
        }
        out.push(n);
    }
    Some(out)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(a: &BigInt, p: u64) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut a = a.abs();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        a = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_twelve() {
        assert_eq!(inv_mod(5, 12), Some(5));
        assert_eq!(inv_mod(4, 12), None);
        assert_eq!(inv_mod(7, 12), Some(7));
    }

    #[test]
    fn primes_and_divisors() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(91) && !is_prime(1));
        assert!(is_prime(1_000_000_007));
        assert_eq!(prime_divisors(12), Some(vec![2, 3]));
        assert_eq!(prime_divisors(1), Some(vec![]));
        assert_eq!(prime_divisors(97 * 97 * 2), Some(vec![2, 97]));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(12), 2), Some(2));
        assert_eq!(valuation(&BigInt::from(-9), 3), Some(2));
        assert_eq!(valuation(&BigInt::from(0), 3), None);
    }
}
