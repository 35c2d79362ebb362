use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::cyclotomic::{factor_power_minus_one, factor_power_plus_one, CycloProduct};

/// Partitions of `n` as weakly decreasing part lists.
pub(crate) fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            current.push(part);
            go(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

fn multiplicities(parts: &[u32]) -> BTreeMap<u32, u32> {
    let mut m = BTreeMap::new();
    for &p in parts {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

/// `z_λ = ∏ k^{m_k} m_k!`, scaled by `scale^{m_k}` per part size.
fn centralizer(parts: &[u32], scale: u32) -> BigUint {
    multiplicities(parts)
        .into_iter()
        .map(|(k, m)| BigUint::from(scale * k).pow(m) * factorial(m))
        .fold(BigUint::one(), |a, b| a * b)
}

fn minus_parts(parts: &[u32]) -> CycloProduct {
    parts.iter().fold(CycloProduct::one(), |acc, &k| {
        acc.mul(&factor_power_minus_one(k).expect("parts are positive"))
    })
}

fn plus_parts(parts: &[u32]) -> CycloProduct {
    parts.iter().fold(CycloProduct::one(), |acc, &k| {
        acc.mul(&factor_power_plus_one(k).expect("parts are positive"))
    })
}

/// `W(A_n) = S_{n+1}` acting on the sum-zero hyperplane.
pub(crate) fn type_a(n: u32) -> BTreeMap<CycloProduct, BigUint> {
    let order = factorial(n + 1);
    let mut out = BTreeMap::new();
    for lambda in partitions(n + 1) {
        let mut poly = minus_parts(&lambda);
        assert!(poly.divide_factor(1, 1));
        let count = &order / centralizer(&lambda, 1);
        *out.entry(poly).or_insert_with(BigUint::default) += count;
    }
    out
}

/// Signed permutations, optionally restricted to an even number of negative cycles.
pub(crate) fn signed(n: u32, even_only: bool) -> BTreeMap<CycloProduct, BigUint> {
    let order = BigUint::from(2u32).pow(n) * factorial(n);
    let mut out = BTreeMap::new();
    for k in 0..=n {
        for lambda in partitions(k) {
            for mu in partitions(n - k) {
                if even_only && mu.len() % 2 == 1 {
                    continue;
                }
                let poly = minus_parts(&lambda).mul(&plus_parts(&mu));
                let count = &order / (centralizer(&lambda, 2) * centralizer(&mu, 2));
                *out.entry(poly).or_insert_with(BigUint::default) += count;
            }
        }
    }
    out
}
