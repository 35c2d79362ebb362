//! Pairs of types whose groups have the same order over every finite field, and
//! the abelian group they form under "multiply componentwise, cancel common factors".

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::orders::{order_value, OrderError};
use crate::rootsystem::{parse_type, DegreeMultiset, Letter, SemisimpleType, SimpleType, TypeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoincidenceError {
    #[error("{left} and {right} have different degrees")]
    NotCoincident {
        left: SemisimpleType,
        right: SemisimpleType,
    },
    #[error("no peeling element for {{{left}, {right}}} at degree {n}")]
    NoPeelingElement {
        n: u32,
        left: SimpleType,
        right: SimpleType,
    },
    #[error("invalid generator {0}")]
    InvalidGenerator(String),
    #[error("cannot parse pair {0:?}: expected LEFT:RIGHT")]
    Parse(String),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A reduced pair `(left, right)`: no simple factor in common, equal degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoincidencePair {
    left: SemisimpleType,
    right: SemisimpleType,
}

fn cancel_common(left: &SemisimpleType, right: &SemisimpleType) -> (SemisimpleType, SemisimpleType) {
    let mut l = left.clone();
    let mut r = Vec::new();
    for &t in right.factors() {
        if !l.remove_one(t) {
            r.push(t);
        }
    }
    (l, SemisimpleType::new(r))
}

/// Cancels common simple factors (with multiplicity) from two types with equal degrees.
pub fn reduce(h1: &SemisimpleType, h2: &SemisimpleType) -> Result<CoincidencePair, CoincidenceError> {
    if h1.degrees() != h2.degrees() {
        return Err(CoincidenceError::NotCoincident {
            left: h1.clone(),
            right: h2.clone(),
        });
    }
    let (left, right) = cancel_common(h1, h2);
    Ok(CoincidencePair { left, right })
}

impl CoincidencePair {
    pub fn new(h1: &SemisimpleType, h2: &SemisimpleType) -> Result<Self, CoincidenceError> {
        reduce(h1, h2)
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn left(&self) -> &SemisimpleType {
        &self.left
    }

    pub fn right(&self) -> &SemisimpleType {
        &self.right
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    pub fn degrees(&self) -> DegreeMultiset {
        self.left.degrees()
    }

    pub fn inverse(&self) -> Self {
        CoincidencePair {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// `(H1 × H1', H2 × H2')`, reduced.
    pub fn compose(&self, other: &CoincidencePair) -> CoincidencePair {
        let (left, right) =
            cancel_common(&self.left.product(&other.left), &self.right.product(&other.right));
        CoincidencePair { left, right }
    }

    /// The same pair with the smaller side on the left.
    pub fn unordered(&self) -> Self {
        if self.left <= self.right {
            self.clone()
        } else {
            self.inverse()
        }
    }

    pub fn rank(&self) -> u32 {
        self.left.rank()
    }

    pub fn is_valid(&self) -> bool {
        self.left.degrees() == self.right.degrees()
            && self.left.factors().iter().all(|&t| !self.right.contains(t))
    }
}

pub fn compose(p1: &CoincidencePair, p2: &CoincidencePair) -> CoincidencePair {
    p1.compose(p2)
}

impl fmt::Display for CoincidencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.left, self.right)
    }
}

impl Serialize for CoincidencePair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for CoincidencePair {
    type Err = CoincidenceError;

    /// `LEFT:RIGHT`, where an empty side may be written as `1` or left blank.
    fn from_str(s: &str) -> Result<Self, CoincidenceError> {
        let (l, r) = s
            .split_once(':')
            .ok_or_else(|| CoincidenceError::Parse(s.to_string()))?;
        let side = |x: &str| -> Result<SemisimpleType, CoincidenceError> {
            match x.trim() {
                "" | "1" => Ok(SemisimpleType::empty()),
                other => Ok(parse_type(other)?),
            }
        };
        reduce(&side(l)?, &side(r)?)
    }
}

/// Equal orders over `F_q`, compared as integers.
pub fn is_coincidence(h1: &SemisimpleType, h2: &SemisimpleType, q: u64) -> Result<bool, CoincidenceError> {
    Ok(order_value(h1, q)? == order_value(h2, q)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorId {
    /// `(A_{2n-2} B_n, A_{2n-1} B_{n-1})`, `n >= 2`, with `B_1 = A_1`.
    B(u32),
    /// `(A_{n-2} D_n, A_{n-1} B_{n-1})`, `n >= 4`.
    D(u32),
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl GeneratorId {
    pub fn pair(&self) -> Result<CoincidencePair, CoincidenceError> {
        use SimpleType as S;
        let (left, right): (Vec<S>, Vec<S>) = match *self {
            GeneratorId::B(n) if n >= 2 => (vec![S::a(2 * n - 2), S::b(n)], vec![S::a(2 * n - 1), S::b(n - 1)]),
            GeneratorId::D(n) if n >= 4 => (vec![S::a(n - 2), S::d(n)], vec![S::a(n - 1), S::b(n - 1)]),
            GeneratorId::G2 => (vec![S::a(2), S::b(3)], vec![S::a(3), S::g2()]),
            GeneratorId::F4 => (vec![S::a(1), S::b(4), S::b(6)], vec![S::b(2), S::b(5), S::f4()]),
            GeneratorId::E6 => (
                vec![S::a(4), S::g2(), S::a(8), S::b(6)],
                vec![S::a(3), S::a(6), S::b(5), S::e(6)],
            ),
            GeneratorId::E7 => (vec![S::a(1), S::b(7), S::b(9)], vec![S::b(2), S::b(8), S::e(7)]),
            GeneratorId::E8 => (
                vec![S::a(1), S::b(4), S::b(7), S::b(10), S::b(12), S::b(15)],
                vec![S::b(3), S::b(5), S::b(8), S::b(11), S::b(14), S::e(8)],
            ),
            other => return Err(CoincidenceError::InvalidGenerator(other.to_string())),
        };
        reduce(&SemisimpleType::new(left), &SemisimpleType::new(right))
    }

    /// The largest degree occurring in the pair.
    pub fn level(&self) -> u32 {
        match *self {
            GeneratorId::B(n) => 2 * n,
            GeneratorId::D(n) => 2 * n - 2,
            GeneratorId::G2 => 6,
            GeneratorId::F4 | GeneratorId::E6 => 12,
            GeneratorId::E7 => 18,
            GeneratorId::E8 => 30,
        }
    }

    /// Generators whose largest degree is `n`.
    pub fn at_level(n: u32) -> Vec<GeneratorId> {
        let mut out = Vec::new();
        if n % 2 == 0 && n >= 4 {
            out.push(GeneratorId::B(n / 2));
        }
        if n % 2 == 0 && n >= 6 {
            out.push(GeneratorId::D(n / 2 + 1));
        }
        match n {
            6 => out.push(GeneratorId::G2),
            12 => out.extend([GeneratorId::F4, GeneratorId::E6]),
            18 => out.push(GeneratorId::E7),
            30 => out.push(GeneratorId::E8),
            _ => {}
        }
        out
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::B(n) => write!(f, "B{n}"),
            GeneratorId::D(n) => write!(f, "D{n}"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The generators up to the given family index (`B_2..=B_n`, `D_4..=D_n`) and the five fixed ones.
pub fn generators(family_bound: u32) -> Result<BTreeMap<GeneratorId, CoincidencePair>, CoincidenceError> {
    let ids = (2..=family_bound)
        .map(GeneratorId::B)
        .chain((4..=family_bound).map(GeneratorId::D))
        .chain([
            GeneratorId::G2,
            GeneratorId::F4,
            GeneratorId::E6,
            GeneratorId::E7,
            GeneratorId::E8,
        ]);
    ids.map(|id| Ok((id, id.pair()?))).collect()
}

/// A product of generators and their inverses, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    pub letters: Vec<(GeneratorId, i8)>,
}

impl GeneratorWord {
    pub fn evaluate(&self) -> Result<CoincidencePair, CoincidenceError> {
        self.letters
            .iter()
            .try_fold(CoincidencePair::identity(), |acc, &(id, sign)| {
                let g = id.pair()?;
                Ok(acc.compose(&if sign < 0 { g.inverse() } else { g }))
            })
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord {
            letters: self.letters.iter().rev().map(|&(id, s)| (id, -s)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, (id, sign)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *sign < 0 {
                write!(f, "{id}^-1")?;
            } else {
                write!(f, "{id}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for GeneratorWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Letter {
            generator: GeneratorId,
            sign: i8,
        }
        serializer.collect_seq(self.letters.iter().map(|&(generator, sign)| Letter { generator, sign }))
    }
}

fn top_factors(t: &SemisimpleType, n: u32) -> Vec<SimpleType> {
    t.factors()
        .iter()
        .copied()
        .filter(|f| f.coxeter_number() == n)
        .collect()
}

/// The word `w` works for the pair `(h1, h2)` at level `n` if its value has `h1`
/// on the left and `h2` on the right as its only factors of largest degree `n`.
fn peels(word: &GeneratorWord, n: u32, h1: SimpleType, h2: SimpleType) -> bool {
    let Ok(p) = word.evaluate() else { return false };
    p.left.degrees().max_degree() == Some(n)
        && top_factors(&p.left, n) == [h1]
        && top_factors(&p.right, n) == [h2]
}

/// Known peeling words at level `n`, tried before the search.
fn seed_words(n: u32) -> Vec<GeneratorWord> {
    use GeneratorId as G;
    let w = |letters: &[(GeneratorId, i8)]| GeneratorWord {
        letters: letters.to_vec(),
    };
    if n % 2 != 0 || n < 4 {
        return Vec::new();
    }
    let m = n / 2;
    let mut out = vec![
        w(&[(G::B(m), 1)]),
        w(&[(G::D(m + 1), 1)]),
        w(&[(G::D(m + 1), 1), (G::B(m), 1)]),
    ];
    match n {
        6 => {
            out.push(w(&[(G::G2, 1)]));
            out.push(w(&[(G::D(4), 1), (G::G2, 1)]));
            out.push(w(&[(G::B(3), 1), (G::D(4), 1)]));
            out.push(w(&[(G::G2, 1), (G::B(3), -1)]));
        }
        12 | 18 | 30 => {
            let exceptional: &[GeneratorId] = match n {
                12 => &[G::F4, G::E6],
                18 => &[G::E7],
                _ => &[G::E8],
            };
            out.push(w(&[(G::B(m), 1), (G::D(m + 1), 1)]));
            for &e in exceptional {
                out.push(w(&[(e, 1)]));
                out.push(w(&[(G::D(m + 1), 1), (e, 1)]));
                out.push(w(&[(G::B(m), -1), (e, 1)]));
            }
            if n == 12 {
                out.push(w(&[(G::F4, -1), (G::E6, 1)]));
            }
        }
        _ => {}
    }
    out
}

/// Bounded search over words of length at most 3 in the generators of level `n`.
fn search_words(n: u32, h1: SimpleType, h2: SimpleType) -> Option<GeneratorWord> {
    let letters: Vec<(GeneratorId, i8)> = GeneratorId::at_level(n)
        .into_iter()
        .flat_map(|g| [(g, 1), (g, -1)])
        .collect();
    let mut frontier: Vec<Vec<(GeneratorId, i8)>> = vec![Vec::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for word in &frontier {
            for &l in &letters {
                let mut w = word.clone();
                w.push(l);
                let candidate = GeneratorWord { letters: w.clone() };
                if peels(&candidate, n, h1, h2) {
                    return Some(candidate);
                }
                next.push(w);
            }
        }
        frontier = next;
    }
    None
}

/// A word whose value has `h1` on the left, `h2` on the right, and every other
/// factor of smaller largest degree.
pub fn peeling_element(n: u32, h1: SimpleType, h2: SimpleType) -> Result<GeneratorWord, CoincidenceError> {
    for word in seed_words(n) {
        if peels(&word, n, h1, h2) {
            return Ok(word);
        }
        let inv = word.inverse();
        if peels(&inv, n, h1, h2) {
            return Ok(inv);
        }
    }
    search_words(n, h1, h2).ok_or(CoincidenceError::NoPeelingElement {
        n,
        left: h1,
        right: h2,
    })
}

/// Writes a pair as a product of generators: repeatedly take one factor of the
/// largest degree from each side and cancel both with a peeling element.
pub fn decompose(p: &CoincidencePair) -> Result<GeneratorWord, CoincidenceError> {
    if !p.is_valid() {
        return Err(CoincidenceError::NotCoincident {
            left: p.left.clone(),
            right: p.right.clone(),
        });
    }
    let mut rest = p.clone();
    let mut word = GeneratorWord::default();
    // Each step removes one top-degree factor from each side and adds only
    // lower ones, so the number of steps is bounded by this.
    let limit = 64 * (p.left.factors().len() + 1) * (p.rank() as usize + 1);
    for _ in 0..limit {
        let Some(n) = rest.left.degrees().max_degree() else {
            return Ok(word);
        };
        let h1 = top_factors(&rest.left, n)[0];
        let h2 = *top_factors(&rest.right, n).first().ok_or(CoincidenceError::NoPeelingElement {
            n,
            left: h1,
            right: h1,
        })?;
        let g = peeling_element(n, h1, h2)?;
        rest = rest.compose(&g.evaluate()?.inverse());
        word.letters.extend(g.letters);
    }
    Err(CoincidenceError::NoPeelingElement {
        n: rest.left.degrees().max_degree().unwrap_or(0),
        left: rest.left.factors()[0],
        right: rest.right.factors()[0],
    })
}

/// Reduced pairs with exactly two simple factors per side and rank at most
/// `rank_bound`, oriented with the smaller side on the left.
pub fn enumerate_two_factor_pairs(rank_bound: u32) -> Vec<CoincidencePair> {
    let simple = SimpleType::up_to_rank(rank_bound, &Letter::ALL);
    let mut buckets: HashMap<DegreeMultiset, Vec<SemisimpleType>> = HashMap::new();
    for (i, &a) in simple.iter().enumerate() {
        for &b in &simple[i..] {
            if a.rank() + b.rank() <= rank_bound {
                let t = SemisimpleType::new([a, b]);
                buckets.entry(t.degrees()).or_default().push(t);
            }
        }
    }
    let mut out: Vec<CoincidencePair> = buckets
        .into_par_iter()
        .flat_map_iter(|(_, types)| {
            let mut found = Vec::new();
            for (i, x) in types.iter().enumerate() {
                for y in &types[i + 1..] {
                    if x.factors().iter().all(|&f| !y.contains(f)) {
                        found.push(CoincidencePair { left: x.clone(), right: y.clone() }.unordered());
                    }
                }
            }
            found
        })
        .collect();
    out.sort();
    out
}

/// The eight families of two-factor pairs, instantiated up to `rank_bound`.
pub fn two_factor_families(rank_bound: u32) -> BTreeSet<CoincidencePair> {
    use SimpleType as S;
    let mut raw: Vec<(Vec<S>, Vec<S>)> = Vec::new();
    for n in 2..=rank_bound {
        raw.push((vec![S::a(2 * n - 2), S::b(n)], vec![S::a(2 * n - 1), S::b(n - 1)]));
        raw.push((vec![S::b(n - 1), S::d(2 * n)], vec![S::b(2 * n - 1), S::b(n)]));
    }
    for n in 4..=rank_bound {
        raw.push((vec![S::a(n - 2), S::d(n)], vec![S::a(n - 1), S::b(n - 1)]));
    }
    raw.extend([
        (vec![S::a(1), S::a(5)], vec![S::a(4), S::g2()]),
        (vec![S::a(1), S::b(3)], vec![S::b(2), S::g2()]),
        (vec![S::a(1), S::d(6)], vec![S::b(5), S::g2()]),
        (vec![S::a(2), S::b(3)], vec![S::a(3), S::g2()]),
        (vec![S::b(3), S::b(3)], vec![S::d(4), S::g2()]),
    ]);
    raw.into_iter()
        .map(|(l, r)| (SemisimpleType::new(l), SemisimpleType::new(r)))
        .filter(|(l, _)| l.rank() <= rank_bound)
        .map(|(l, r)| reduce(&l, &r).expect("family members are coincidences").unordered())
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupAxiomReport {
    pub samples: usize,
    pub rank_bound: u32,
    pub seed: u64,
    pub violations: Vec<String>,
}

fn random_word(rng: &mut ChaCha8Rng, pool: &[GeneratorId]) -> GeneratorWord {
    let len = rng.gen_range(1..=4);
    GeneratorWord {
        letters: (0..len)
            .map(|_| (pool[rng.gen_range(0..pool.len())], if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect(),
    }
}

/// Generators whose sides have rank at most `rank_bound`.
pub fn generator_pool(rank_bound: u32) -> Vec<GeneratorId> {
    let mut pool: Vec<GeneratorId> = generators(rank_bound)
        .expect("all listed generators are valid")
        .into_iter()
        .filter(|(_, p)| p.rank() <= rank_bound)
        .map(|(id, _)| id)
        .collect();
    pool.sort();
    pool
}

/// Group laws on pairs built from random generator words, plus the decomposition
/// round trip for each sample.
pub fn verify_group_axioms(samples: usize, rank_bound: u32, seed: u64) -> Result<GroupAxiomReport, CoincidenceError> {
    let pool = generator_pool(rank_bound);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = GroupAxiomReport {
        samples,
        rank_bound,
        seed,
        violations: Vec::new(),
    };
    let e = CoincidencePair::identity();
    for _ in 0..samples {
        let [a, b, c] = [(); 3].map(|_| random_word(&mut rng, &pool));
        let (pa, pb, pc) = (a.evaluate()?, b.evaluate()?, c.evaluate()?);
        let mut check = |ok: bool, what: &str| {
            if !ok {
                report.violations.push(format!("{what}: a = {pa}, b = {pb}, c = {pc}"));
            }
        };
        check(pa.is_valid() && pb.is_valid() && pc.is_valid(), "invalid pair");
        check(pa.compose(&pb).compose(&pc) == pa.compose(&pb.compose(&pc)), "associativity");
        check(pa.compose(&pb) == pb.compose(&pa), "commutativity");
        check(pa.compose(&e) == pa && e.compose(&pa) == pa, "identity");
        check(pa.compose(&pa.inverse()).is_identity(), "inverse");
        check(pa.inverse().inverse() == pa, "double inverse");
        check(a.inverse().evaluate()? == pa.inverse(), "word inverse");
        let round_trip = decompose(&pa).and_then(|w| w.evaluate());
        check(round_trip.as_ref() == Ok(&pa), "decompose round trip");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> SemisimpleType {
        parse_type(s).unwrap()
    }

    fn pair(s: &str) -> CoincidencePair {
        s.parse().unwrap()
    }

    #[test]
    fn reduction() {
        let p = reduce(&ty("A1xA3"), &ty("A2xB2")).unwrap();
        assert_eq!((p.left(), p.right()), (&ty("A1xA3"), &ty("A2xB2")));
        let p = reduce(&ty("A5xB2xA2xA1"), &ty("A3xA1xA5xA2xA1")).unwrap_err();
        assert!(matches!(p, CoincidenceError::NotCoincident { .. }));
        let p = reduce(&ty("A5xB2xA2xG2"), &ty("A3xA1xA5xG2")).unwrap();
        assert_eq!((p.left(), p.right()), (&ty("A2xB2"), &ty("A1xA3")));
        assert!(reduce(&ty("A2"), &ty("A2")).unwrap().is_identity());
        assert!(reduce(&ty("A2"), &ty("B2")).is_err());
    }

    #[test]
    fn composition() {
        let g2 = GeneratorId::G2.pair().unwrap();
        let d4 = GeneratorId::D(4).pair().unwrap();
        assert_eq!(g2.compose(&d4.inverse()), pair("B3xB3:D4xG2"));
        assert!(g2.compose(&g2.inverse()).is_identity());
        let b2 = GeneratorId::B(2).pair().unwrap();
        assert_eq!(b2.compose(&CoincidencePair::identity()), b2);
    }

    #[test]
    fn numeric_coincidence() {
        assert!(is_coincidence(&ty("A1xA3"), &ty("A2xB2"), 3).unwrap());
        assert!(is_coincidence(&ty("A2"), &ty("A2"), 5).unwrap());
        assert!(!is_coincidence(&ty("A2"), &ty("B2"), 2).unwrap());
    }

    #[test]
    fn generator_checks() {
        let gens = generators(16).unwrap();
        for (id, p) in &gens {
            assert!(p.is_valid(), "{id}");
            assert_eq!(p.degrees().max_degree(), Some(id.level()), "{id}");
        }
        assert_eq!(gens[&GeneratorId::B(2)], pair("A2xB2:A3xA1"));
        let e8 = &gens[&GeneratorId::E8];
        assert_eq!((e8.left().rank(), e8.right().rank()), (49, 49));
        assert!(GeneratorId::B(1).pair().is_err());
        assert!(GeneratorId::D(3).pair().is_err());
    }

    #[test]
    fn two_factor_enumeration() {
        assert!(enumerate_two_factor_pairs(3).is_empty());
        let four = enumerate_two_factor_pairs(4);
        assert!(four.contains(&pair("A1xA3:A2xB2")));
        let seven = enumerate_two_factor_pairs(7);
        assert!(seven.contains(&pair("A1xB3:B2xG2")));
        assert!(seven.contains(&pair("A2xB3:A3xG2")));
    }

    #[test]
    fn decomposition_examples() {
        let w = decompose(&pair("B3xB3:D4xG2")).unwrap();
        assert_eq!(w.evaluate().unwrap(), pair("B3xB3:D4xG2"));
        let used: BTreeSet<GeneratorId> = w.letters.iter().map(|l| l.0).collect();
        assert_eq!(used, BTreeSet::from([GeneratorId::G2, GeneratorId::D(4)]));
        assert!(decompose(&CoincidencePair::identity()).unwrap().is_empty());
        let p = pair("A1xD4:B2xB3");
        assert_eq!(decompose(&p).unwrap().evaluate().unwrap(), p);
    }

    #[test]
    fn peeling_tables_resolve() {
        for n in [4u32, 6, 8, 10, 12, 14, 18, 30] {
            let tops = SimpleType::with_coxeter_number(n);
            for &h1 in &tops {
                for &h2 in &tops {
                    if h1 != h2 {
                        let w = peeling_element(n, h1, h2).unwrap();
                        assert!(peels(&w, n, h1, h2));
                    }
                }
            }
        }
    }

    #[test]
    fn parsing_pairs() {
        assert_eq!(pair("1:1"), CoincidencePair::identity());
        assert!("A2xB2".parse::<CoincidencePair>().is_err());
        assert!("A2:B2".parse::<CoincidencePair>().is_err());
        assert_eq!(pair("A2xB2:A3xA1").to_string(), "A2xB2:A1xA3");
    }
}
