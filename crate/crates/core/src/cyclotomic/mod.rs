//! Exact integer polynomial and valuation arithmetic.
//!
//! Cyclotomic polynomials are built by exact division of `x^n - 1` by the
//! cyclotomic factors of its proper divisors and memoized process-wide. Every
//! Weyl group characteristic polynomial factors into cyclotomics, so those are
//! carried around as a [`CycloProduct`] (index to multiplicity) rather than as
//! expanded coefficient vectors.

mod artin;
mod factor;
mod poly;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use artin::{ord_p_power_diff, valuation};
pub use factor::{
    factorize, is_prime, largest_prime_power_divisor, p_contribution, MAX_FACTOR_BITS,
};
pub use poly::IntPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("cyclotomic index must be positive")]
    ZeroIndex,
    #[error("{0} must be at least {1}")]
    TooSmall(&'static str, u64),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input of {bits} bits exceeds the {limit}-bit factorization limit")]
    TooLarge { bits: u64, limit: u64 },
    #[error("could not certify primality of {0}")]
    Uncertified(String),
    #[error("polynomial is not a product of cyclotomic polynomials")]
    NotCyclotomic,
}

pub fn totient(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, of degree `totient(n)`.
pub fn cyclotomic(n: u64) -> Result<IntPoly, CycloError> {
    cyclotomic_shared(n).map(|p| (*p).clone())
}

pub(crate) fn cyclotomic_shared(n: u64) -> Result<Arc<IntPoly>, CycloError> {
    if n == 0 {
        return Err(CycloError::ZeroIndex);
    }
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let mut poly = IntPoly::x_pow_minus_one(n as usize);
    for e in divisors(n) {
        if e == n {
            break;
        }
        let phi_e = cyclotomic_shared(e)?;
        poly = poly
            .div_exact(&phi_e)
            .expect("x^n - 1 is divisible by the cyclotomic factors of its divisors");
    }
    let poly = Arc::new(poly);
    cyclotomic_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| poly.clone());
    Ok(poly)
}

/// A product of cyclotomic polynomials `∏ Φ_d^{t_d}`, stored as `d -> t_d` with
/// every multiplicity positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycloProduct {
    exponents: BTreeMap<u32, u32>,
}

impl CycloProduct {
    /// The empty product, i.e. the constant polynomial 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// `Φ_d^t`.
    pub fn single(d: u32, t: u32) -> Self {
        let mut p = Self::default();
        p.multiply_factor(d, t);
        p
    }

    /// Builds from `(index, multiplicity)` pairs; zero multiplicities are dropped,
    /// repeated indices accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self, CycloError> {
        let mut p = Self::default();
        for (d, t) in pairs {
            if d == 0 {
                return Err(CycloError::ZeroIndex);
            }
            p.multiply_factor(d, t);
        }
        Ok(p)
    }

    pub fn multiply_factor(&mut self, d: u32, t: u32) {
        assert!(d > 0, "cyclotomic index must be positive");
        if t > 0 {
            *self.exponents.entry(d).or_insert(0) += t;
        }
    }

    /// Removes `Φ_d^t`; returns `false` (leaving `self` untouched) if not divisible.
    pub fn divide_factor(&mut self, d: u32, t: u32) -> bool {
        match self.exponents.get_mut(&d) {
            _ if t == 0 => true,
            Some(e) if *e > t => {
                *e -= t;
                true
            }
            Some(e) if *e == t => {
                self.exponents.remove(&d);
                true
            }
            _ => false,
        }
    }

    pub fn exponent(&self, d: u32) -> u32 {
        self.exponents.get(&d).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.exponents
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.exponents.keys().copied()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Total degree `Σ t_d · φ(d)`.
    pub fn degree(&self) -> u64 {
        self.exponents
            .iter()
            .map(|(&d, &t)| u64::from(t) * totient(u64::from(d)))
            .sum()
    }

    pub fn mul(&self, other: &CycloProduct) -> CycloProduct {
        let mut out = self.clone();
        for (&d, &t) in &other.exponents {
            out.multiply_factor(d, t);
        }
        out
    }

    pub fn divides(&self, other: &CycloProduct) -> bool {
        self.exponents
            .iter()
            .all(|(&d, &t)| other.exponent(d) >= t)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &CycloProduct) -> Option<CycloProduct> {
        let mut out = self.clone();
        for (&d, &t) in &other.exponents {
            if !out.divide_factor(d, t) {
                return None;
            }
        }
        Some(out)
    }

    /// The part coprime to `Φ_1`, and the multiplicity of `Φ_1`.
    pub fn split_unit_root(&self) -> (CycloProduct, u32) {
        let mut rest = self.clone();
        let t = rest.exponents.remove(&1).unwrap_or(0);
        (rest, t)
    }

    pub fn to_poly(&self) -> IntPoly {
        self.exponents.iter().fold(IntPoly::one(), |acc, (&d, &t)| {
            let phi = cyclotomic_shared(u64::from(d)).expect("index is positive");
            (0..t).fold(acc, |a, _| &a * &phi)
        })
    }

    /// Factors a monic integer polynomial whose roots are all roots of unity.
    pub fn from_poly(poly: &IntPoly) -> Result<CycloProduct, CycloError> {
        let degree = poly.degree().ok_or(CycloError::NotCyclotomic)? as u64;
        let mut rest = poly.clone();
        let mut out = CycloProduct::one();
        let mut d = 1u64;
        while rest.degree() != Some(0) {
            // φ(d) >= sqrt(d / 2), so indices past 2·degree² can never divide.
            if d > 2 * degree * degree + 2 {
                return Err(CycloError::NotCyclotomic);
            }
            if totient(d) <= rest.degree().unwrap_or(0) as u64 {
                let phi = cyclotomic_shared(d)?;
                while let Some(q) = rest.div_exact(&phi) {
                    rest = q;
                    out.multiply_factor(d as u32, 1);
                }
            }
            d += 1;
        }
        if rest.coeffs()[0] != BigInt::one() {
            return Err(CycloError::NotCyclotomic);
        }
        Ok(out)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&d, &t) in &self.exponents {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if t == 1 {
                write!(f, "Φ{d}")?;
            } else {
                write!(f, "Φ{d}^{t}")?;
            }
        }
        Ok(())
    }
}

/// Serialized as a JSON object with decimal-string keys, e.g. `{"1": 2, "4": 1}`.
impl Serialize for CycloProduct {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.exponents.iter().map(|(d, t)| (d.to_string(), t)))
    }
}

/// `x^d - 1 = ∏_{e | d} Φ_e`.
pub fn factor_power_minus_one(d: u32) -> Result<CycloProduct, CycloError> {
    if d == 0 {
        return Err(CycloError::TooSmall("d", 1));
    }
    Ok(CycloProduct {
        exponents: divisors(u64::from(d))
            .into_iter()
            .map(|e| (e as u32, 1))
            .collect(),
    })
}

/// `x^d + 1 = ∏ Φ_e` over divisors `e` of `2d` that do not divide `d`.
pub fn factor_power_plus_one(d: u32) -> Result<CycloProduct, CycloError> {
    if d == 0 {
        return Err(CycloError::TooSmall("d", 1));
    }
    Ok(CycloProduct {
        exponents: divisors(2 * u64::from(d))
            .into_iter()
            .filter(|e| u64::from(d) % e != 0)
            .map(|e| (e as u32, 1))
            .collect(),
    })
}

/// `∏ Φ_d(q)^{t_d}` evaluated exactly.
pub fn eval_cyclo_product(p: &CycloProduct, q: &BigInt) -> BigInt {
    p.exponents.iter().fold(BigInt::one(), |acc, (&d, &t)| {
        let v = cyclotomic_shared(u64::from(d)).expect("index is positive").eval(q);
        acc * num_traits::pow(v, t as usize)
    })
}

/// Nonnegative variant of [`eval_cyclo_product`] for `q >= 2`, where every `Φ_d(q)` is positive.
pub fn eval_cyclo_product_unsigned(p: &CycloProduct, q: u64) -> BigUint {
    eval_cyclo_product(p, &BigInt::from(q))
        .to_biguint()
        .expect("cyclotomic values at q >= 2 are positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_pow_minus_one(d: usize) -> IntPoly {
        IntPoly::x_pow_minus_one(d)
    }

    #[test]
    fn first_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), IntPoly::from_coeffs([-1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), IntPoly::from_coeffs([1, -1, 1]));
        assert_eq!(cyclotomic(6).unwrap().eval(&BigInt::from(2)), BigInt::from(3));
        assert_eq!(cyclotomic(0), Err(CycloError::ZeroIndex));
    }

    #[test]
    fn phi_12_completes_two_to_the_twelve() {
        let phi12 = cyclotomic(12).unwrap();
        assert_eq!(phi12.degree(), Some(4));
        let two = BigInt::from(2);
        let product: BigInt = [1u64, 2, 3, 4, 6, 12]
            .iter()
            .map(|&e| cyclotomic(e).unwrap().eval(&two))
            .product();
        assert_eq!(product, BigInt::from(4095));
    }

    #[test]
    fn divisor_products_give_x_pow_minus_one() {
        for d in 1..=200u32 {
            let p = factor_power_minus_one(d).unwrap().to_poly();
            assert_eq!(p, naive_pow_minus_one(d as usize), "d = {d}");
            assert_eq!(
                cyclotomic(u64::from(d)).unwrap().degree(),
                Some(totient(u64::from(d)) as usize)
            );
        }
    }

    #[test]
    fn power_minus_one_examples() {
        let f = |pairs: &[(u32, u32)]| CycloProduct::from_pairs(pairs.iter().copied()).unwrap();
        assert_eq!(factor_power_minus_one(1).unwrap(), f(&[(1, 1)]));
        assert_eq!(
            factor_power_minus_one(6).unwrap(),
            f(&[(1, 1), (2, 1), (3, 1), (6, 1)])
        );
        assert_eq!(factor_power_minus_one(4).unwrap(), f(&[(1, 1), (2, 1), (4, 1)]));
        assert!(factor_power_minus_one(0).is_err());
    }

    #[test]
    fn power_plus_one() {
        for d in 1..=40u32 {
            assert_eq!(
                factor_power_plus_one(d).unwrap().to_poly(),
                IntPoly::x_pow_plus_one(d as usize)
            );
        }
    }

    #[test]
    fn evaluation_examples() {
        let eight = BigInt::from(8);
        assert_eq!(eval_cyclo_product(&CycloProduct::single(2, 1), &eight), BigInt::from(9));
        assert_eq!(eval_cyclo_product(&CycloProduct::one(), &BigInt::from(5)), BigInt::one());
        assert_eq!(
            eval_cyclo_product(&factor_power_minus_one(6).unwrap(), &BigInt::from(2)),
            BigInt::from(63)
        );
    }

    #[test]
    fn factoring_back_from_coefficients() {
        let p = CycloProduct::from_pairs([(1, 2), (3, 1), (12, 2)]).unwrap();
        assert_eq!(CycloProduct::from_poly(&p.to_poly()).unwrap(), p);
        assert!(CycloProduct::from_poly(&IntPoly::from_coeffs([-2, 1])).is_err());
        assert!(CycloProduct::from_poly(&IntPoly::from_coeffs([1, 0, 1, 1])).is_err());
    }

    #[test]
    fn product_arithmetic() {
        let a = CycloProduct::from_pairs([(1, 1), (2, 1)]).unwrap();
        let b = CycloProduct::single(2, 1);
        let ab = a.mul(&b);
        assert_eq!(ab.exponent(2), 2);
        assert_eq!(ab.checked_div(&a), Some(b.clone()));
        assert_eq!(b.checked_div(&a), None);
        assert!(b.divides(&a));
        assert_eq!(ab.degree(), 3);
        assert_eq!(ab.to_string(), "Φ1·Φ2^2");
    }
}
