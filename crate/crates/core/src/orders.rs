//! Orders of split simply connected semisimple groups over finite fields,
//! `|H(F_q)| = q^N ∏ (q^d - 1)`, and the characteristic/field determination checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{
    divisors, eval_cyclo_product_unsigned, factorize, is_prime, CycloError, CycloProduct,
};
use crate::rootsystem::{DegreeMultiset, Letter, SemisimpleType, SimpleType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("{0} is not a prime power")]
    NotPrimePower(String),
    #[error("{0} and {1} are powers of different primes")]
    DifferentCharacteristic(PrimePower, PrimePower),
    #[error(transparent)]
    Arithmetic(#[from] CycloError),
}

/// `q = p^t` with `p` prime and `t >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    p: u64,
    t: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self, OrderError> {
        if q < 2 {
            return Err(OrderError::NotPrimePower(q.to_string()));
        }
        let factors = factorize(&BigUint::from(q))?;
        match factors.into_iter().collect::<Vec<_>>().as_slice() {
            [(p, t)] => Ok(PrimePower {
                p: p.to_u64().expect("divides a u64"),
                t: *t,
            }),
            _ => Err(OrderError::NotPrimePower(q.to_string())),
        }
    }

    pub fn from_parts(p: u64, t: u32) -> Result<Self, OrderError> {
        if t == 0 || !is_prime(&BigUint::from(p))? {
            return Err(OrderError::NotPrimePower(format!("{p}^{t}")));
        }
        p.checked_pow(t)
            .ok_or_else(|| OrderError::NotPrimePower(format!("{p}^{t} overflows")))?;
        Ok(PrimePower { p, t })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn value(&self) -> u64 {
        self.p.pow(self.t)
    }

    /// `q^r`, the field of degree `r` over this one.
    pub fn extension(&self, r: u32) -> Result<Self, OrderError> {
        Self::from_parts(self.p, self.t * r)
    }

    /// Every prime power up to `bound`, ascending.
    pub fn up_to(bound: u64) -> Vec<PrimePower> {
        (2..=bound).filter_map(|q| PrimePower::new(q).ok()).collect()
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for PrimePower {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value())
    }
}

/// The order `q^N ∏ (q^d - 1)` kept in symbolic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredOrder {
    pub q: PrimePower,
    pub n_exp: u64,
    pub degrees: DegreeMultiset,
}

impl FactoredOrder {
    pub fn value(&self) -> BigUint {
        let q = BigUint::from(self.q.value());
        let mut acc = q.pow(self.n_exp as u32);
        for &d in self.degrees.as_slice() {
            acc *= q.pow(d) - 1u32;
        }
        acc
    }

    /// `∏ (x^d - 1)` as a product of cyclotomic polynomials.
    pub fn cyclotomic_part(&self) -> CycloProduct {
        self.degrees.as_slice().iter().fold(CycloProduct::one(), |acc, &d| {
            acc.mul(&crate::cyclotomic::factor_power_minus_one(d).expect("degrees are >= 2"))
        })
    }

    /// Prime factorization of the prime-to-`p` part, assembled from the values
    /// `Φ_e(q)` so that only small numbers are ever factored.
    pub fn prime_to_p_factorization(&self) -> Result<BTreeMap<BigUint, u32>, OrderError> {
        let mut out = BTreeMap::new();
        for (&e, &mult) in self.cyclotomic_part().exponents() {
            let v = eval_cyclo_product_unsigned(&CycloProduct::single(e, 1), self.q.value());
            if v.is_one() {
                continue;
            }
            for (r, k) in factorize(&v)? {
                *out.entry(r).or_insert(0) += k * mult;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FactoredOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.q, self.n_exp)?;
        for d in self.degrees.as_slice() {
            write!(f, "({}^{d} - 1)", self.q)?;
        }
        Ok(())
    }
}

pub fn order_factored(t: &SemisimpleType, q: u64) -> Result<FactoredOrder, OrderError> {
    let q = PrimePower::new(q)?;
    Ok(order_factored_pp(t, q))
}

pub fn order_factored_pp(t: &SemisimpleType, q: PrimePower) -> FactoredOrder {
    FactoredOrder {
        q,
        n_exp: t.positive_root_count(),
        degrees: t.degrees(),
    }
}

pub fn order_value(t: &SemisimpleType, q: u64) -> Result<BigUint, OrderError> {
    Ok(order_factored(t, q)?.value())
}

/// Equal degree multisets, which is the same as equal orders over every finite field.
pub fn same_order_all_extensions(t1: &SemisimpleType, t2: &SemisimpleType) -> bool {
    t1.degrees() == t2.degrees()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContributionWitness {
    #[serde(serialize_with = "ser_decimal")]
    pub p_part: BigUint,
    pub other_prime: u64,
    pub other_exponent: u32,
    #[serde(serialize_with = "ser_decimal")]
    pub other_part: BigUint,
}

pub(crate) fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Whether `q^N` is the largest prime power dividing `|H(F_q)|`, together with
/// the largest prime power coprime to `q`.
pub fn p_contribution_is_largest(
    t: &SemisimpleType,
    q: u64,
) -> Result<(bool, ContributionWitness), OrderError> {
    let order = order_factored(t, q)?;
    let p_part = BigUint::from(q).pow(order.n_exp as u32);
    let (r, k) = order
        .prime_to_p_factorization()?
        .into_iter()
        .max_by_key(|(r, k)| r.pow(*k))
        .unwrap_or((BigUint::one(), 0));
    let other_part = r.pow(k);
    Ok((
        p_part > other_part,
        ContributionWitness {
            p_part,
            other_prime: r.to_u64().expect("factors of cyclotomic values at small q"),
            other_exponent: k,
            other_part,
        },
    ))
}

fn is_power_of_two(n: u64) -> bool {
    n.is_power_of_two()
}

/// The cases in which the characteristic does not contribute the largest prime
/// power: `A1` over `F_8`, `F_9`, `F_{2^r}` with `2^r + 1` prime, `F_p` with
/// `p = 2^s ± 1`, and `B2` over `F_3`.
pub fn in_exception_list(t: SimpleType, q: u64) -> bool {
    let Ok(pp) = PrimePower::new(q) else {
        return false;
    };
    let t = t.canonical();
    if t == SimpleType::b(2) {
        return q == 3;
    }
    if t != SimpleType::a(1) {
        return false;
    }
    if q == 8 || q == 9 {
        return true;
    }
    if pp.p == 2 && is_prime(&(BigUint::from(q) + 1u32)).unwrap_or(false) {
        return true;
    }
    pp.t == 1 && (is_power_of_two(q - 1) || is_power_of_two(q + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldReport {
    pub left: String,
    pub right: String,
    #[serde(serialize_with = "ser_decimal")]
    pub left_order: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub right_order: BigUint,
    pub orders_equal: bool,
    pub fields_equal: bool,
    pub degrees_equal: bool,
    pub passed: bool,
}

/// If two groups over fields of the same characteristic have the same order,
/// the fields and the degree multisets agree.
pub fn check_field_determination(
    t1: &SemisimpleType,
    q1: u64,
    t2: &SemisimpleType,
    q2: u64,
) -> Result<FieldReport, OrderError> {
    let (a, b) = (PrimePower::new(q1)?, PrimePower::new(q2)?);
    if a.p != b.p {
        return Err(OrderError::DifferentCharacteristic(a, b));
    }
    let left_order = order_factored_pp(t1, a).value();
    let right_order = order_factored_pp(t2, b).value();
    let orders_equal = left_order == right_order;
    let fields_equal = q1 == q2;
    let degrees_equal = same_order_all_extensions(t1, t2);
    Ok(FieldReport {
        left: format!("{t1}({q1})"),
        right: format!("{t2}({q2})"),
        left_order,
        right_order,
        orders_equal,
        fields_equal,
        degrees_equal,
        passed: !orders_equal || (fields_equal && degrees_equal),
    })
}

/// Degree multisets `D` with `Σ (d - 1) = n_exp`, `|D| <= max_len`, `∏ (q^d - 1) = rest`.
fn degree_solutions(q: &BigUint, rest: &BigUint, n_exp: u64, max_len: u32) -> Vec<Vec<u32>> {
    fn go(
        q: &BigUint,
        rest: &BigUint,
        n_left: u64,
        len_left: u32,
        max_d: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if n_left == 0 {
            if rest.is_one() {
                out.push(current.clone());
            }
            return;
        }
        if len_left == 0 {
            return;
        }
        let top = max_d.min((n_left + 1) as u32);
        for d in (2..=top).rev() {
            let factor = q.pow(d) - 1u32;
            let (quot, rem) = rest.div_rem(&factor);
            if rem.is_zero() {
                current.push(d);
                go(q, &quot, n_left - u64::from(d - 1), len_left - 1, d, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    let top = (n_exp + 1).min(u64::from(u32::MAX)) as u32;
    go(q, rest, n_exp, max_len, top, &mut Vec::new(), &mut out);
    out
}

/// Every type with the given degrees, built by repeatedly choosing a simple
/// factor whose Coxeter number is the largest degree still uncovered.
pub fn types_with_degrees(degrees: &DegreeMultiset) -> Vec<SemisimpleType> {
    fn go(
        remaining: &mut Vec<u32>,
        max_factor: Option<SimpleType>,
        current: &mut Vec<SimpleType>,
        out: &mut BTreeSet<SemisimpleType>,
    ) {
        let Some(&h) = remaining.last() else {
            out.insert(SemisimpleType::new(current.iter().copied()));
            return;
        };
        for t in SimpleType::with_coxeter_number(h) {
            if max_factor.is_some_and(|m| (t.coxeter_number(), t) > (m.coxeter_number(), m)) {
                continue;
            }
            let mut next = remaining.clone();
            let fits = t.degrees().iter().all(|d| match next.iter().rposition(|x| x == d) {
                Some(pos) => {
                    next.remove(pos);
                    true
                }
                None => false,
            });
            if fits {
                current.push(t);
                go(&mut next, Some(t), current, out);
                current.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(&mut degrees.as_slice().to_vec(), None, &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

/// All `(type, q)` with total rank at most `rank_bound` and `|type(F_q)| = m`.
///
/// Since `∏ (q^d - 1)` is prime to `p`, `q^N` is exactly the `p`-part of `m`, which
/// leaves finitely many `(q, N)` to try for each prime divisor `p`.
pub fn recognize_order(
    m: &BigUint,
    rank_bound: u32,
) -> Result<Vec<(SemisimpleType, PrimePower)>, OrderError> {
    if m < &BigUint::from(2u32) {
        return Err(CycloError::TooSmall("m", 2).into());
    }
    let mut out = Vec::new();
    for (p, e) in factorize(m)? {
        let Some(p) = p.to_u64() else { continue };
        for t in divisors(u64::from(e)) {
            let Ok(q) = PrimePower::from_parts(p, t as u32) else {
                continue;
            };
            let n_exp = u64::from(e) / t;
            let qb = BigUint::from(q.value());
            let rest = m / qb.pow(n_exp as u32);
            for degrees in degree_solutions(&qb, &rest, n_exp, rank_bound) {
                for ty in types_with_degrees(&DegreeMultiset::new(degrees)) {
                    out.push((ty, q));
                }
            }
        }
    }
    out.retain(|(ty, q)| order_factored_pp(ty, *q).value() == *m);
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterCase {
    pub ty: SimpleType,
    pub q: PrimePower,
    pub largest: bool,
    pub in_exception_list: bool,
    pub witness: ContributionWitness,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CounterReport {
    pub rank_bound: u32,
    pub q_bound: u64,
    pub cases_checked: usize,
    /// Cases where the characteristic is not the largest contributor.
    pub exceptions_found: Vec<CounterCase>,
    /// Cases where that disagrees with the exception list.
    pub mismatches: Vec<CounterCase>,
}

/// For every simple type of rank at most `rank_bound` and prime power `q <= q_bound`,
/// compares "the characteristic is the largest prime power" with the exception list.
pub fn counter_sweep(rank_bound: u32, q_bound: u64) -> Result<CounterReport, OrderError> {
    let types = SimpleType::up_to_rank(rank_bound, &Letter::ALL);
    let qs = PrimePower::up_to(q_bound);
    let cases: Vec<(SimpleType, PrimePower)> = types
        .iter()
        .flat_map(|&t| qs.iter().map(move |&q| (t, q)))
        .collect();
    let results = cases
        .par_iter()
        .map(|&(t, q)| {
            let (largest, witness) = p_contribution_is_largest(&t.into(), q.value())?;
            Ok(CounterCase {
                ty: t,
                q,
                largest,
                in_exception_list: in_exception_list(t, q.value()),
                witness,
            })
        })
        .collect::<Result<Vec<_>, OrderError>>()?;
    let mut report = CounterReport {
        rank_bound,
        q_bound,
        cases_checked: results.len(),
        ..Default::default()
    };
    for case in results {
        if case.largest == case.in_exception_list {
            report.mismatches.push(case.clone());
        }
        if !case.largest {
            report.exceptions_found.push(case);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCollision {
    #[serde(serialize_with = "ser_decimal")]
    pub order: BigUint,
    pub groups: Vec<(SemisimpleType, PrimePower)>,
}

/// Equal orders over fields of different characteristic, among all types of rank
/// at most `rank_bound` and prime powers up to `q_bound`.
pub fn cross_characteristic_search(rank_bound: u32, q_bound: u64) -> Vec<OrderCollision> {
    let types = SemisimpleType::up_to_rank(rank_bound, &SimpleType::up_to_rank(rank_bound, &Letter::ALL));
    let mut by_order: BTreeMap<BigUint, Vec<(SemisimpleType, PrimePower)>> = BTreeMap::new();
    for q in PrimePower::up_to(q_bound) {
        for t in &types {
            by_order
                .entry(order_factored_pp(t, q).value())
                .or_default()
                .push((t.clone(), q));
        }
    }
    by_order
        .into_iter()
        .filter(|(_, groups)| groups.iter().any(|(_, q)| q.p != groups[0].1.p))
        .map(|(order, groups)| OrderCollision { order, groups })
        .collect()
}
