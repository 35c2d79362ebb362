use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::CycloError;

/// Inputs wider than this are refused by [`factorize`].
pub const MAX_FACTOR_BITS: u64 = 400;

const TRIAL_LIMIT: u64 = 1_000_000;

/// Miller–Rabin with the first 13 primes as bases is deterministic below this bound.
const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                for j in (i * i..=n).step_by(i) {
                    sieve[j] = false;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i as u64))
            .collect()
    })
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn miller_rabin(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return miller_rabin_u64(small);
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality with a deterministic answer. Numbers past the Miller–Rabin bound are
/// certified by Pocklington's criterion, which needs `n - 1` factored far enough.
pub fn is_prime(n: &BigUint) -> Result<bool, CycloError> {
    if n < &BigUint::from(2u32) {
        return Ok(false);
    }
    for &p in small_primes().iter().take(200) {
        if n == &BigUint::from(p) {
            return Ok(true);
        }
        if (n % p).is_zero() {
            return Ok(false);
        }
    }
    if !miller_rabin(n) {
        return Ok(false);
    }
    if n.to_u128().is_some_and(|v| v < MR_DETERMINISTIC_BOUND) {
        return Ok(true);
    }
    pocklington(n)
}

fn pocklington(n: &BigUint) -> Result<bool, CycloError> {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let factors = factorize(&n_minus_one).map_err(|_| CycloError::Uncertified(n.to_string()))?;
    for q in factors.keys() {
        let exp = &n_minus_one / q;
        let witness = (2u64..200).find(|&a| {
            let a = BigUint::from(a);
            a.modpow(&n_minus_one, n) == one && {
                let t = a.modpow(&exp, n);
                t != one && (t + n - &one).gcd(n) == one
            }
        });
        if witness.is_none() {
            return Err(CycloError::Uncertified(n.to_string()));
        }
    }
    Ok(true)
}

fn pollard_brent_u64(n: u64) -> Option<u64> {
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn pollard_brent(n: &BigUint) -> Option<BigUint> {
    if let Some(small) = n.to_u64() {
        return pollard_brent_u64(small).map(BigUint::from);
    }
    let one = BigUint::one();
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1..64u64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, mut q, mut g) = (BigUint::from(2u32), 1u64, one.clone(), one.clone());
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = f(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn split_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) -> Result<(), CycloError> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n)? {
        *out.entry(n).or_insert(0) += 1;
        return Ok(());
    }
    let d = pollard_brent(&n).ok_or_else(|| CycloError::Uncertified(n.to_string()))?;
    let rest = &n / &d;
    split_into(d, out)?;
    split_into(rest, out)
}

/// Prime factorization `p -> exponent`: trial division by primes below 10^6, then
/// Brent's variant of Pollard rho on the cofactor with every prime factor certified.
pub fn factorize(m: &BigUint) -> Result<BTreeMap<BigUint, u32>, CycloError> {
    if m.is_zero() {
        return Err(CycloError::TooSmall("m", 1));
    }
    if m.bits() > MAX_FACTOR_BITS {
        return Err(CycloError::TooLarge {
            bits: m.bits(),
            limit: MAX_FACTOR_BITS,
        });
    }
    let mut out = BTreeMap::new();
    let mut rest = m.clone();
    for &p in small_primes() {
        if BigUint::from(p * p) > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.insert(BigUint::from(p), e);
        }
    }
    split_into(rest, &mut out)?;
    Ok(out)
}

/// The largest power of `p` dividing `m`.
pub fn p_contribution(m: &BigUint, p: u64) -> Result<BigUint, CycloError> {
    if m.is_zero() {
        return Err(CycloError::TooSmall("m", 1));
    }
    if !is_prime(&BigUint::from(p))? {
        return Err(CycloError::NotPrime(p.to_string()));
    }
    let mut rest = m.clone();
    let mut acc = BigUint::one();
    while (&rest % p).is_zero() {
        rest /= p;
        acc *= p;
    }
    Ok(acc)
}

/// The prime `p` and exponent `e` maximizing `p^e` over the exact prime-power divisors of `m`.
pub fn largest_prime_power_divisor(m: &BigUint) -> Result<(BigUint, u32), CycloError> {
    if m < &BigUint::from(2u32) {
        return Err(CycloError::TooSmall("m", 2));
    }
    let factors = factorize(m)?;
    Ok(factors
        .into_iter()
        .max_by_key(|(p, e)| p.pow(*e))
        .expect("m >= 2 has a prime factor"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn primality_small() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(&big(n)).unwrap(), naive(n), "n = {n}");
        }
    }

    #[test]
    fn primality_large() {
        // 2^61 - 1 and 2^89 - 1 are Mersenne primes; 2^67 - 1 is not.
        assert!(is_prime(&((BigUint::one() << 61) - 1u32)).unwrap());
        assert!(!is_prime(&((BigUint::one() << 67) - 1u32)).unwrap());
        assert!(is_prime(&((BigUint::one() << 89) - 1u32)).unwrap());
        assert!(is_prime(&((BigUint::one() << 127) - 1u32)).unwrap());
    }

    #[test]
    fn factorization_examples() {
        let f = factorize(&big(720)).unwrap();
        assert_eq!(f, BTreeMap::from([(big(2), 4), (big(3), 2), (big(5), 1)]));
        // 2^67 - 1 = 193707721 * 761838257287
        let m = (BigUint::one() << 67) - 1u32;
        let f = factorize(&m).unwrap();
        assert_eq!(
            f,
            BTreeMap::from([(big(193707721), 1), (big(761838257287), 1)])
        );
        let semiprime = big(1_000_003) * big(1_000_033) * big(999_983);
        assert_eq!(factorize(&semiprime).unwrap().len(), 3);
        assert!(factorize(&BigUint::zero()).is_err());
        assert!(matches!(
            factorize(&(BigUint::one() << 401)),
            Err(CycloError::TooLarge { .. })
        ));
    }

    #[test]
    fn contributions() {
        assert_eq!(p_contribution(&big(720), 3).unwrap(), big(9));
        assert_eq!(p_contribution(&big(7), 2).unwrap(), big(1));
        assert_eq!(p_contribution(&big(51840), 2).unwrap(), big(128));
        assert!(p_contribution(&big(0), 2).is_err());
        assert!(p_contribution(&big(12), 4).is_err());
    }

    #[test]
    fn largest_prime_power() {
        assert_eq!(largest_prime_power_divisor(&big(720)).unwrap(), (big(2), 4));
        assert_eq!(largest_prime_power_divisor(&big(51840)).unwrap(), (big(2), 7));
        assert_eq!(largest_prime_power_divisor(&big(49)).unwrap(), (big(7), 2));
        assert!(largest_prime_power_divisor(&big(1)).is_err());
    }
}
