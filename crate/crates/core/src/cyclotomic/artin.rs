use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::factor::is_prime;
use super::CycloError;

/// Exponent of the prime `p` in the nonzero integer `m`.
pub fn valuation(p: u64, m: &BigInt) -> u32 {
    assert!(!m.is_zero(), "valuation of zero is undefined");
    let mut m = m.abs();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

fn valuation_u64(p: u64, mut n: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `ord_p(a^n - b^n)` without expanding the power.
///
/// Requires `gcd(a, b) = 1` and `|a| >= |b| + 1 >= 2`; `p` may not divide `a` or `b`.
pub fn ord_p_power_diff(p: u64, a: i64, b: i64, n: u64) -> Result<u32, CycloError> {
    if !is_prime(&BigUint::from(p))? {
        return Err(CycloError::NotPrime(p.to_string()));
    }
    if n == 0 {
        return Err(CycloError::TooSmall("n", 1));
    }
    let (ua, ub) = (a.unsigned_abs(), b.unsigned_abs());
    if ub == 0 || ua < ub + 1 {
        return Err(CycloError::Precondition(format!(
            "need |a| >= |b| + 1 >= 2, got a = {a}, b = {b}"
        )));
    }
    if ua.gcd(&ub) != 1 {
        return Err(CycloError::Precondition(format!("gcd({a}, {b}) != 1")));
    }
    if ua % p == 0 || ub % p == 0 {
        return Err(CycloError::Precondition(format!("{p} divides a or b")));
    }
    let (a, b) = (i128::from(a), i128::from(b));
    if p == 2 {
        let vn = valuation_u64(2, n);
        let v2 = |x: i128| x.unsigned_abs().trailing_zeros();
        return Ok(if (a - b).rem_euclid(4) == 0 {
            v2(a - b) + vn
        } else if n % 2 == 1 {
            1
        } else {
            v2(a + b) + vn
        });
    }
    let pm = i128::from(p);
    let ratio = a.rem_euclid(pm) * mod_inverse(b.rem_euclid(pm), pm) % pm;
    let mut f = 1u64;
    let mut acc = ratio;
    while acc != 1 {
        acc = acc * ratio % pm;
        f += 1;
    }
    if n % f != 0 {
        return Ok(0);
    }
    let diff = num_traits::pow(BigInt::from(a), f as usize) - num_traits::pow(BigInt::from(b), f as usize);
    Ok(valuation(p, &diff) + valuation_u64(p, n))
}

fn mod_inverse(x: i128, m: i128) -> i128 {
    let e = x.extended_gcd(&m);
    e.x.rem_euclid(m)
}
