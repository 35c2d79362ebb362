//! Characteristic polynomials of Weyl group elements in the reflection
//! representation, and the invariants derived from them.
//!
//! Classical tables come from cycle types of (signed) permutations. `G2`, `F4`,
//! `E6` and `E7` are enumerated element by element and memoized per process.
//! `E8` is never enumerated: only degree-derived data is available unless a
//! table is supplied from outside.

mod classical;
mod enumerate;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{divisors, totient, CycloProduct};
use crate::rootsystem::{Letter, SemisimpleType, SimpleType};

pub const E8_REMEDIATION: &str = "W(E8) is too large to enumerate here; \
     place a precomputed table file E8.v1.json in the cache directory and pass --cache DIR";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("no characteristic polynomial table for E8. {}", E8_REMEDIATION)]
    E8WithoutTable,
    #[error("{0} is not available for exhaustive enumeration")]
    NotEnumerable(SemisimpleType),
    #[error("{0} is not a classical type")]
    NotClassical(SimpleType),
    #[error("{0} is not an exceptional type")]
    NotExceptional(SimpleType),
    #[error("matrix entry left the i8 range during enumeration")]
    Overflow,
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("{what} of {ty} needs an E8 table")]
    Unresolvable { what: String, ty: SemisimpleType },
    #[error("invalid index: {0}")]
    InvalidIndex(String),
}

/// The characteristic polynomials of all elements of a Weyl group, with the
/// number of elements having each one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyTable {
    type_label: SemisimpleType,
    entries: BTreeMap<CycloProduct, BigUint>,
    group_order: BigUint,
}

impl CharPolyTable {
    /// Builds a table and checks its certificates: counts sum to `|W|`, every
    /// polynomial has degree equal to the rank, and the identity is present.
    pub fn new(
        type_label: SemisimpleType,
        entries: BTreeMap<CycloProduct, BigUint>,
    ) -> Result<Self, WeylError> {
        let rank = u64::from(type_label.rank());
        let group_order: BigUint = entries.values().sum();
        if group_order != type_label.weyl_order() {
            return Err(WeylError::Certificate(format!(
                "{type_label}: counts sum to {group_order}, expected |W| = {}",
                type_label.weyl_order()
            )));
        }
        if let Some(bad) = entries.keys().find(|p| p.degree() != rank) {
            return Err(WeylError::Certificate(format!(
                "{type_label}: entry {bad} has degree {} instead of {rank}",
                bad.degree()
            )));
        }
        if entries.values().any(|c| c == &BigUint::default()) {
            return Err(WeylError::Certificate(format!("{type_label}: zero count")));
        }
        let identity = CycloProduct::single(1, rank as u32);
        if !entries.contains_key(&identity) {
            return Err(WeylError::Certificate(format!(
                "{type_label}: identity polynomial {identity} missing"
            )));
        }
        Ok(CharPolyTable {
            type_label,
            entries,
            group_order,
        })
    }

    /// The table of the trivial group: one element, constant polynomial.
    pub fn trivial() -> Self {
        CharPolyTable {
            type_label: SemisimpleType::empty(),
            entries: BTreeMap::from([(CycloProduct::one(), BigUint::one())]),
            group_order: BigUint::one(),
        }
    }

    pub fn type_label(&self) -> &SemisimpleType {
        &self.type_label
    }

    pub fn entries(&self) -> &BTreeMap<CycloProduct, BigUint> {
        &self.entries
    }

    pub fn group_order(&self) -> &BigUint {
        &self.group_order
    }

    pub fn rank(&self) -> u32 {
        self.type_label.rank()
    }

    /// The distinct polynomials, forgetting counts.
    pub fn polys(&self) -> BTreeSet<CycloProduct> {
        self.entries.keys().cloned().collect()
    }

    /// Every cyclotomic index occurring in some entry.
    pub fn indices(&self) -> BTreeSet<u32> {
        self.entries.keys().flat_map(|p| p.indices()).collect()
    }

    pub fn max_exponent(&self, i: u32) -> u32 {
        self.entries.keys().map(|p| p.exponent(i)).max().unwrap_or(0)
    }

    /// Table of the direct product.
    pub fn product(&self, other: &CharPolyTable) -> CharPolyTable {
        let mut entries = BTreeMap::new();
        for (p, c) in &self.entries {
            for (r, d) in &other.entries {
                *entries.entry(p.mul(r)).or_insert_with(BigUint::default) += c * d;
            }
        }
        CharPolyTable {
            type_label: self.type_label.product(&other.type_label),
            entries,
            group_order: &self.group_order * &other.group_order,
        }
    }
}

/// Table for `A_n`, `B_n` or `D_n` from conjugacy classes of (signed) permutations.
pub fn charpolys_classical(t: SimpleType) -> Result<CharPolyTable, WeylError> {
    let t = t.canonical();
    let entries = match t.letter() {
        Letter::A => classical::type_a(t.rank()),
        Letter::B => classical::signed(t.rank(), false),
        Letter::D => classical::signed(t.rank(), true),
        _ => return Err(WeylError::NotClassical(t)),
    };
    CharPolyTable::new(t.into(), entries)
}

/// Table obtained by generating every element of the group from its simple
/// reflections. Any simple type of rank at most 8 other than `E8`.
pub fn brute_force_table(t: SimpleType) -> Result<CharPolyTable, WeylError> {
    let t = t.canonical();
    if t == SimpleType::e(8) {
        return Err(WeylError::E8WithoutTable);
    }
    let (entries, order) = enumerate::enumerate(t)?;
    if order != t.weyl_order() {
        return Err(WeylError::Certificate(format!(
            "{t}: enumeration produced {order} elements, expected {}",
            t.weyl_order()
        )));
    }
    CharPolyTable::new(t.into(), entries)
}

type Slot = Arc<OnceLock<Result<Arc<CharPolyTable>, WeylError>>>;

fn table_slot(t: SimpleType) -> Slot {
    static SLOTS: OnceLock<Mutex<HashMap<SimpleType, Slot>>> = OnceLock::new();
    SLOTS
        .get_or_init(Default::default)
        .lock()
        .unwrap()
        .entry(t)
        .or_default()
        .clone()
}

fn is_exceptional(t: SimpleType) -> bool {
    matches!(t.letter(), Letter::E | Letter::F | Letter::G)
}

/// Table for `G2`, `F4`, `E6` or `E7` by exhaustive enumeration, memoized.
/// `E8` succeeds only if a table was registered with [`register_table`].
pub fn charpolys_exceptional(t: SimpleType) -> Result<Arc<CharPolyTable>, WeylError> {
    if !is_exceptional(t) {
        return Err(WeylError::NotExceptional(t));
    }
    if t == SimpleType::e(8) {
        return table_slot(t)
            .get()
            .cloned()
            .unwrap_or(Err(WeylError::E8WithoutTable));
    }
    table_slot(t)
        .get_or_init(|| brute_force_table(t).map(Arc::new))
        .clone()
}

/// Whether the table for `t` is already held in memory.
pub fn is_table_cached(t: SimpleType) -> bool {
    table_slot(t.canonical()).get().is_some_and(Result::is_ok)
}

/// Makes an externally obtained table (for instance read from disk) available
/// to later lookups. The table must be for a single exceptional type.
pub fn register_table(table: CharPolyTable) -> Result<(), WeylError> {
    let t = match table.type_label.factors() {
        [t] if is_exceptional(*t) => *t,
        _ => {
            return Err(WeylError::Certificate(format!(
                "registered tables must be for one exceptional type, got {}",
                table.type_label
            )))
        }
    };
    let table = CharPolyTable::new(table.type_label, table.entries)?;
    let slot = table_slot(t);
    let _ = slot.set(Ok(Arc::new(table)));
    Ok(())
}

/// Table of a simple factor; classical ones are cheap and rebuilt on demand.
pub fn simple_table(
    t: SimpleType,
    e8_table: Option<&CharPolyTable>,
) -> Result<Arc<CharPolyTable>, WeylError> {
    let t = t.canonical();
    if t == SimpleType::e(8) {
        if let Some(table) = e8_table {
            if table.type_label != SemisimpleType::from(t) {
                return Err(WeylError::Certificate(format!(
                    "supplied table is for {}, not E8",
                    table.type_label
                )));
            }
            return Ok(Arc::new(table.clone()));
        }
    }
    if is_exceptional(t) {
        charpolys_exceptional(t)
    } else {
        charpolys_classical(t).map(Arc::new)
    }
}

/// Table of a semisimple type as the product of its factors' tables.
pub fn charpolys(
    t: &SemisimpleType,
    e8_table: Option<&CharPolyTable>,
) -> Result<CharPolyTable, WeylError> {
    t.factors().iter().try_fold(CharPolyTable::trivial(), |acc, &f| {
        let table = simple_table(f, e8_table)?;
        Ok::<_, WeylError>(acc.product(&table))
    })
}

/// The set of distinct polynomials, built without tracking counts.
pub fn distinct_polys(
    t: &SemisimpleType,
    e8_table: Option<&CharPolyTable>,
) -> Result<BTreeSet<CycloProduct>, WeylError> {
    let mut acc = BTreeSet::from([CycloProduct::one()]);
    for &f in t.factors() {
        let table = simple_table(f, e8_table)?;
        acc = acc
            .iter()
            .flat_map(|p| table.entries.keys().map(move |r| p.mul(r)))
            .collect();
    }
    Ok(acc)
}

/// Indices of cyclotomic polynomials dividing some characteristic polynomial:
/// the divisors of the degrees.
pub fn ch_star(t: &SemisimpleType) -> BTreeSet<u32> {
    t.degrees()
        .as_slice()
        .iter()
        .flat_map(|&d| divisors(u64::from(d)))
        .map(|r| r as u32)
        .collect()
}

/// Largest exponent of `Φ_i` over all characteristic polynomials, which is the
/// number of degrees divisible by `i`.
pub fn mu(t: &SemisimpleType, i: u32) -> u32 {
    if i == 0 {
        return 0;
    }
    t.degrees().count_divisible_by(i)
}

fn simple_mu_prime(
    t: SimpleType,
    i: u32,
    e8_table: Option<&CharPolyTable>,
) -> Result<u32, WeylError> {
    let target = mu(&t.into(), i);
    if target == 0 {
        return Ok(0);
    }
    let table = simple_table(t, e8_table).map_err(|e| unresolvable(e, format!("mu'_{i}"), t))?;
    Ok(table
        .entries
        .keys()
        .filter(|p| p.exponent(i) == target)
        .map(|p| p.exponent(2))
        .min()
        .expect("the maximum is attained"))
}

fn simple_mu_joint(
    t: SimpleType,
    i: u32,
    j: u32,
    e8_table: Option<&CharPolyTable>,
) -> Result<u32, WeylError> {
    let st: SemisimpleType = t.into();
    let (mi, mj) = (mu(&st, i), mu(&st, j));
    if mi == 0 || mj == 0 {
        return Ok(mi + mj);
    }
    let table =
        simple_table(t, e8_table).map_err(|e| unresolvable(e, format!("mu_({i},{j})"), t))?;
    Ok(table
        .entries
        .keys()
        .map(|p| p.exponent(i) + p.exponent(j))
        .max()
        .unwrap_or(0))
}

fn unresolvable(e: WeylError, what: String, t: SimpleType) -> WeylError {
    match e {
        WeylError::E8WithoutTable => WeylError::Unresolvable { what, ty: t.into() },
        other => other,
    }
}

/// Smallest exponent of `Φ_2` among the polynomials in which `Φ_i` reaches its
/// maximal exponent `μ_i`. Defined for `i > 2`.
pub fn mu_prime(
    t: &SemisimpleType,
    i: u32,
    e8_table: Option<&CharPolyTable>,
) -> Result<u32, WeylError> {
    if i <= 2 {
        return Err(WeylError::InvalidIndex(format!("mu' needs i > 2, got {i}")));
    }
    t.factors()
        .iter()
        .map(|&f| simple_mu_prime(f, i, e8_table))
        .sum()
}

/// Largest value of `exp(Φ_i) + exp(Φ_j)` over all characteristic polynomials.
pub fn mu_joint(
    t: &SemisimpleType,
    i: u32,
    j: u32,
    e8_table: Option<&CharPolyTable>,
) -> Result<u32, WeylError> {
    if i == j || i == 0 || j == 0 {
        return Err(WeylError::InvalidIndex(format!(
            "mu_(i,j) needs distinct positive indices, got ({i}, {j})"
        )));
    }
    t.factors()
        .iter()
        .map(|&f| simple_mu_joint(f, i, j, e8_table))
        .sum()
}

/// All `μ_i`, `μ'_i` and `μ_{i,j}` up to an index bound. Zero values are
/// omitted; values that would need an unavailable `E8` table are listed as
/// unresolved instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantProfile {
    pub mu: BTreeMap<u32, u32>,
    pub mu_prime: BTreeMap<u32, u32>,
    pub mu_joint: BTreeMap<(u32, u32), u32>,
    pub unresolved_mu_prime: BTreeSet<u32>,
    pub unresolved_mu_joint: BTreeSet<(u32, u32)>,
    pub index_bound: u32,
}

impl InvariantProfile {
    pub fn mu(&self, i: u32) -> u32 {
        self.mu.get(&i).copied().unwrap_or(0)
    }

    /// `None` when unresolved or beyond the bound.
    pub fn mu_prime(&self, i: u32) -> Option<u32> {
        if i > self.index_bound || self.unresolved_mu_prime.contains(&i) {
            return None;
        }
        Some(self.mu_prime.get(&i).copied().unwrap_or(0))
    }

    pub fn mu_joint(&self, i: u32, j: u32) -> Option<u32> {
        let key = (i.min(j), i.max(j));
        if key.1 > self.index_bound || self.unresolved_mu_joint.contains(&key) {
            return None;
        }
        Some(self.mu_joint.get(&key).copied().unwrap_or(0))
    }
}

struct PairKey<'a>(&'a BTreeMap<(u32, u32), u32>);

impl Serialize for PairKey<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.0.iter().map(|((i, j), v)| (format!("{i},{j}"), v)))
    }
}

impl Serialize for InvariantProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let unresolved_joint: Vec<String> = self
            .unresolved_mu_joint
            .iter()
            .map(|(i, j)| format!("{i},{j}"))
            .collect();
        let mut map = serializer.serialize_map(Some(6))?;
        map.serialize_entry("index_bound", &self.index_bound)?;
        map.serialize_entry("mu", &self.mu)?;
        map.serialize_entry("mu_prime", &self.mu_prime)?;
        map.serialize_entry("mu_joint", &PairKey(&self.mu_joint))?;
        map.serialize_entry("unresolved_mu_prime", &self.unresolved_mu_prime)?;
        map.serialize_entry("unresolved_mu_joint", &unresolved_joint)?;
        map.end()
    }
}

/// Dense per-factor values; `None` marks an unresolved entry.
struct SimpleProfile {
    mu: Vec<u32>,
    mu_prime: Vec<Option<u32>>,
    joint: Vec<Option<u32>>,
}

fn simple_profile(
    t: SimpleType,
    bound: u32,
    e8_table: Option<&CharPolyTable>,
) -> Result<SimpleProfile, WeylError> {
    let b = bound as usize + 1;
    let st: SemisimpleType = t.into();
    let mu_v: Vec<u32> = (0..b as u32).map(|i| mu(&st, i)).collect();
    let table = match simple_table(t, e8_table) {
        Ok(table) => Some(table),
        Err(WeylError::E8WithoutTable) => None,
        Err(e) => return Err(e),
    };
    let mut mu_prime = vec![Some(0); b];
    let mut joint = vec![Some(0); b * b];
    match &table {
        Some(table) => {
            for p in table.entries.keys() {
                let exps: Vec<u32> = (0..b as u32).map(|i| p.exponent(i)).collect();
                for i in 1..b {
                    for j in i + 1..b {
                        let v = joint[i * b + j].as_mut().expect("resolved");
                        *v = (*v).max(exps[i] + exps[j]);
                    }
                }
            }
            for i in 3..b {
                mu_prime[i] = Some(simple_mu_prime(t, i as u32, Some(table))?);
            }
        }
        None => {
            for i in 3..b {
                mu_prime[i] = (mu_v[i] == 0).then_some(0);
            }
            for i in 1..b {
                for j in i + 1..b {
                    joint[i * b + j] = (mu_v[i] == 0 || mu_v[j] == 0).then_some(mu_v[i] + mu_v[j]);
                }
            }
        }
    }
    Ok(SimpleProfile {
        mu: mu_v,
        mu_prime,
        joint,
    })
}

fn cached_simple_profile(t: SimpleType, bound: u32) -> Result<Arc<SimpleProfile>, WeylError> {
    type Cache = Mutex<HashMap<(SimpleType, u32), Arc<SimpleProfile>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(t, bound)) {
        return Ok(p.clone());
    }
    let profile = Arc::new(simple_profile(t, bound, None)?);
    // An E8 profile computed before a table was registered must not stick.
    if t != SimpleType::e(8) || is_table_cached(t) {
        cache.lock().unwrap().insert((t, bound), profile.clone());
    }
    Ok(profile)
}

/// The default index bound: `max(30, 2·rank)`, which covers every divisor of every degree.
pub fn default_index_bound(t: &SemisimpleType) -> u32 {
    let largest = t.degrees().max_degree().unwrap_or(0);
    30.max(2 * t.rank()).max(largest)
}

pub fn invariant_profile(
    t: &SemisimpleType,
    e8_table: Option<&CharPolyTable>,
) -> Result<InvariantProfile, WeylError> {
    invariant_profile_with_bound(t, default_index_bound(t), e8_table)
}

/// Profile restricted to indices `1..=bound`; used to compare types of different ranks.
pub fn invariant_profile_with_bound(
    t: &SemisimpleType,
    bound: u32,
    e8_table: Option<&CharPolyTable>,
) -> Result<InvariantProfile, WeylError> {
    let b = bound as usize + 1;
    let mut mu_v = vec![0u32; b];
    let mut mu_prime = vec![Some(0u32); b];
    let mut joint = vec![Some(0u32); b * b];
    for &f in t.factors() {
        let p = match e8_table {
            Some(table) if f == SimpleType::e(8) => Arc::new(simple_profile(f, bound, Some(table))?),
            _ => cached_simple_profile(f, bound)?,
        };
        for i in 0..b {
            mu_v[i] += p.mu[i];
            mu_prime[i] = mu_prime[i].zip(p.mu_prime[i]).map(|(x, y)| x + y);
        }
        for k in 0..b * b {
            joint[k] = joint[k].zip(p.joint[k]).map(|(x, y)| x + y);
        }
    }
    let mut profile = InvariantProfile {
        mu: BTreeMap::new(),
        mu_prime: BTreeMap::new(),
        mu_joint: BTreeMap::new(),
        unresolved_mu_prime: BTreeSet::new(),
        unresolved_mu_joint: BTreeSet::new(),
        index_bound: bound,
    };
    for i in 1..b {
        if mu_v[i] > 0 {
            profile.mu.insert(i as u32, mu_v[i]);
        }
        if i > 2 {
            match mu_prime[i] {
                Some(0) => {}
                Some(v) => {
                    profile.mu_prime.insert(i as u32, v);
                }
                None => {
                    profile.unresolved_mu_prime.insert(i as u32);
                }
            }
        }
        for j in i + 1..b {
            match joint[i * b + j] {
                Some(0) => {}
                Some(v) => {
                    profile.mu_joint.insert((i as u32, j as u32), v);
                }
                None => {
                    profile.unresolved_mu_joint.insert((i as u32, j as u32));
                }
            }
        }
    }
    Ok(profile)
}

/// `φ(i) <= rank` is necessary for `Φ_i` to divide a polynomial of degree `rank`.
pub fn index_fits_rank(i: u32, rank: u32) -> bool {
    totient(u64::from(i)) <= u64::from(rank)
}
