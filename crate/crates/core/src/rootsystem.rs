//! Split simple and semisimple types: degrees, root counts, Weyl orders,
//! Cartan data and integral reflection generators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("{letter}{rank}: rank out of range ({requirement})")]
    InvalidRank {
        letter: Letter,
        rank: u32,
        requirement: &'static str,
    },
    #[error("cannot parse type token {token:?}: {reason}")]
    Parse { token: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Letter {
    pub const ALL: [Letter; 7] = [
        Letter::A,
        Letter::B,
        Letter::C,
        Letter::D,
        Letter::E,
        Letter::F,
        Letter::G,
    ];

    fn from_char(c: char) -> Option<Letter> {
        Some(match c.to_ascii_uppercase() {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            'G' => Letter::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A split simple type such as `B3` or `E7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    letter: Letter,
    rank: u32,
}

impl SimpleType {
    pub fn new(letter: Letter, rank: u32) -> Result<Self, TypeError> {
        let requirement = match letter {
            Letter::A if rank >= 1 => None,
            Letter::A => Some("rank >= 1"),
            Letter::B if rank >= 2 => None,
            Letter::B => Some("rank >= 2"),
            Letter::C if rank >= 3 => None,
            Letter::C => Some("rank >= 3"),
            Letter::D if rank >= 4 => None,
            Letter::D => Some("rank >= 4"),
            Letter::E if (6..=8).contains(&rank) => None,
            Letter::E => Some("rank in 6..=8"),
            Letter::F if rank == 4 => None,
            Letter::F => Some("rank = 4"),
            Letter::G if rank == 2 => None,
            Letter::G => Some("rank = 2"),
        };
        match requirement {
            None => Ok(SimpleType { letter, rank }),
            Some(requirement) => Err(TypeError::InvalidRank {
                letter,
                rank,
                requirement,
            }),
        }
    }

    /// Panicking constructor for literals known to be valid.
    pub fn of(letter: Letter, rank: u32) -> Self {
        Self::new(letter, rank).expect("valid simple type")
    }

    pub fn a(n: u32) -> Self {
        Self::of(Letter::A, n)
    }

    /// `B_n` with the convention `B_1 = A_1`.
    pub fn b(n: u32) -> Self {
        if n == 1 {
            Self::a(1)
        } else {
            Self::of(Letter::B, n)
        }
    }

    pub fn d(n: u32) -> Self {
        Self::of(Letter::D, n)
    }

    pub fn g2() -> Self {
        Self::of(Letter::G, 2)
    }

    pub fn f4() -> Self {
        Self::of(Letter::F, 4)
    }

    pub fn e(n: u32) -> Self {
        Self::of(Letter::E, n)
    }

    pub fn letter(&self) -> Letter {
        self.letter
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `C_n` is stored as `B_n`; the two share degrees, Weyl group and group orders.
    pub fn canonical(self) -> Self {
        match self.letter {
            Letter::C => SimpleType {
                letter: Letter::B,
                rank: self.rank,
            },
            _ => self,
        }
    }

    /// Fundamental degrees in increasing order.
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank;
        let mut d: Vec<u32> = match self.letter {
            Letter::A => (2..=n + 1).collect(),
            Letter::B | Letter::C => (1..=n).map(|k| 2 * k).collect(),
            Letter::D => (1..n).map(|k| 2 * k).chain([n]).collect(),
            Letter::G => vec![2, 6],
            Letter::F => vec![2, 6, 8, 12],
            Letter::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
        };
        d.sort_unstable();
        d
    }

    /// The Coxeter number, i.e. the largest degree.
    pub fn coxeter_number(&self) -> u32 {
        *self.degrees().last().expect("rank >= 1")
    }

    pub fn positive_root_count(&self) -> u64 {
        self.degrees().iter().map(|&d| u64::from(d - 1)).sum()
    }

    pub fn weyl_order(&self) -> BigUint {
        self.degrees().iter().map(|&d| BigUint::from(d)).product()
    }

    /// Squared root lengths and nonzero off-diagonal inner products `(i, j, (α_i, α_j))`
    /// of the simple roots, in Bourbaki numbering (0-based here).
    fn gram_data(&self) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
        let n = self.rank as usize;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, -1)).collect::<Vec<_>>();
        match self.letter {
            Letter::A => (vec![2; n], chain(n)),
            Letter::B => {
                let mut lengths = vec![2; n];
                lengths[n - 1] = 1;
                (lengths, chain(n))
            }
            Letter::C => {
                let mut lengths = vec![2; n];
                lengths[n - 1] = 4;
                let mut edges = chain(n);
                edges[n - 2].2 = -2;
                (lengths, edges)
            }
            Letter::D => {
                let mut edges = chain(n - 1);
                edges.push((n - 3, n - 1, -1));
                (vec![2; n], edges)
            }
            Letter::G => (vec![2, 6], vec![(0, 1, -3)]),
            Letter::F => (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
            Letter::E => {
                let mut edges = vec![(0, 2, -1), (1, 3, -1)];
                edges.extend((2..n - 1).map(|i| (i, i + 1, -1)));
                (vec![2; n], edges)
            }
        }
    }

    /// Cartan pairing `c[j][i] = <α_j, α_i^∨> = 2(α_j, α_i) / (α_i, α_i)`.
    pub fn cartan_pairing(&self) -> Vec<Vec<i64>> {
        let n = self.rank as usize;
        let (lengths, edges) = self.gram_data();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram[i][i] = lengths[i];
        }
        for &(i, j, v) in &edges {
            gram[i][j] = v;
            gram[j][i] = v;
        }
        (0..n)
            .map(|j| (0..n).map(|i| 2 * gram[j][i] / gram[i][i]).collect())
            .collect()
    }

    /// Simple reflections on the root lattice, as row-major matrices acting on
    /// coordinate columns: `s_i(α_j) = α_j - c(j, i) α_i`.
    pub fn reflection_generators(&self) -> Vec<Vec<Vec<i64>>> {
        let n = self.rank as usize;
        let c = self.cartan_pairing();
        (0..n)
            .map(|i| {
                let mut m: Vec<Vec<i64>> = (0..n)
                    .map(|r| (0..n).map(|s| i64::from(r == s)).collect())
                    .collect();
                for j in 0..n {
                    m[i][j] -= c[j][i];
                }
                m
            })
            .collect()
    }

    /// The order of `s_i s_j` predicted by the Dynkin diagram bond.
    pub fn braid_order(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 1;
        }
        let c = self.cartan_pairing();
        match c[i][j] * c[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => 6,
        }
    }

    /// Simple types whose Coxeter number is `h`, canonical letters only.
    pub fn with_coxeter_number(h: u32) -> Vec<SimpleType> {
        let mut out = Vec::new();
        if h >= 2 {
            out.push(Self::a(h - 1));
        }
        if h % 2 == 0 && h >= 4 {
            out.push(Self::of(Letter::B, h / 2));
        }
        if h % 2 == 0 && h >= 6 {
            out.push(Self::d(h / 2 + 1));
        }
        match h {
            6 => out.push(Self::g2()),
            12 => out.extend([Self::f4(), Self::e(6)]),
            18 => out.push(Self::e(7)),
            30 => out.push(Self::e(8)),
            _ => {}
        }
        out.sort();
        out
    }

    /// All canonical simple types of rank at most `rank_bound` whose letter is in `letters`.
    pub fn up_to_rank(rank_bound: u32, letters: &[Letter]) -> Vec<SimpleType> {
        let mut out: Vec<SimpleType> = letters
            .iter()
            .filter(|&&l| l != Letter::C)
            .flat_map(|&l| (1..=rank_bound).filter_map(move |n| SimpleType::new(l, n).ok()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Fundamental degrees of a (semi)simple type, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeMultiset {
    degrees: Vec<u32>,
}

impl DegreeMultiset {
    pub fn new(mut degrees: Vec<u32>) -> Self {
        degrees.sort_unstable();
        DegreeMultiset { degrees }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.degrees.last().copied()
    }

    /// `N = Σ (d - 1)`.
    pub fn n_exp(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d) - 1).sum()
    }

    pub fn product(&self) -> BigUint {
        self.degrees.iter().map(|&d| BigUint::from(d)).product()
    }

    pub fn count_divisible_by(&self, i: u32) -> u32 {
        self.degrees.iter().filter(|&&d| d % i == 0).count() as u32
    }

    pub fn union(&self, other: &DegreeMultiset) -> DegreeMultiset {
        DegreeMultiset::new(self.degrees.iter().chain(&other.degrees).copied().collect())
    }
}

/// A multiset of simple factors in canonical sorted order. The empty type is
/// allowed (it is the trivial group, used by coincidence pairs).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemisimpleType {
    factors: Vec<SimpleType>,
}

impl SemisimpleType {
    pub fn new<I: IntoIterator<Item = SimpleType>>(factors: I) -> Self {
        let mut factors: Vec<SimpleType> = factors.into_iter().map(SimpleType::canonical).collect();
        factors.sort();
        SemisimpleType { factors }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn rank(&self) -> u32 {
        self.factors.iter().map(SimpleType::rank).sum()
    }

    pub fn degrees(&self) -> DegreeMultiset {
        DegreeMultiset::new(self.factors.iter().flat_map(SimpleType::degrees).collect())
    }

    pub fn positive_root_count(&self) -> u64 {
        self.factors.iter().map(SimpleType::positive_root_count).sum()
    }

    pub fn weyl_order(&self) -> BigUint {
        self.factors
            .iter()
            .map(SimpleType::weyl_order)
            .fold(BigUint::one(), |a, b| a * b)
    }

    pub fn product(&self, other: &SemisimpleType) -> SemisimpleType {
        SemisimpleType::new(self.factors.iter().chain(&other.factors).copied())
    }

    pub fn contains(&self, t: SimpleType) -> bool {
        self.factors.binary_search(&t.canonical()).is_ok()
    }

    /// Removes one copy of `t`, returning whether it was present.
    pub fn remove_one(&mut self, t: SimpleType) -> bool {
        match self.factors.binary_search(&t.canonical()) {
            Ok(pos) => {
                self.factors.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// All canonical semisimple types with total rank in `1..=rank_bound`, factors
    /// drawn from `simple`.
    pub fn up_to_rank(rank_bound: u32, simple: &[SimpleType]) -> Vec<SemisimpleType> {
        let mut simple: Vec<SimpleType> = simple.iter().map(|t| t.canonical()).collect();
        simple.sort();
        simple.dedup();
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn go(
            simple: &[SimpleType],
            start: usize,
            budget: u32,
            current: &mut Vec<SimpleType>,
            out: &mut Vec<SemisimpleType>,
        ) {
            if !current.is_empty() {
                out.push(SemisimpleType::new(current.iter().copied()));
            }
            for (k, &t) in simple.iter().enumerate().skip(start) {
                if t.rank() <= budget {
                    current.push(t);
                    go(simple, k, budget - t.rank(), current, out);
                    current.pop();
                }
            }
        }
        go(&simple, 0, rank_bound, &mut current, &mut out);
        out.sort();
        out
    }
}

impl From<SimpleType> for SemisimpleType {
    fn from(t: SimpleType) -> Self {
        SemisimpleType::new([t])
    }
}

impl fmt::Display for SemisimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, t) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl Serialize for SemisimpleType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for SemisimpleType {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, TypeError> {
        parse_type(s)
    }
}

fn parse_factor(token: &str) -> Result<SimpleType, TypeError> {
    let err = |reason: &str| TypeError::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let mut chars = token.chars();
    let letter = chars
        .next()
        .and_then(Letter::from_char)
        .ok_or_else(|| err("expected one of A, B, C, D, E, F, G"))?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(err("expected a rank after the letter"));
    }
    let rank: u32 = digits.parse().map_err(|_| err("rank too large"))?;
    match (letter, rank) {
        (Letter::B | Letter::C, 1) => Ok(SimpleType::a(1)),
        (Letter::C, 2) => Ok(SimpleType::of(Letter::B, 2)),
        _ => SimpleType::new(letter, rank)
            .map(SimpleType::canonical)
            .map_err(|e| err(&e.to_string())),
    }
}

/// Parses `factor ("x" factor)*` where a factor is a letter followed by a rank.
/// Whitespace is ignored and letters are case-insensitive.
pub fn parse_type(s: &str) -> Result<SemisimpleType, TypeError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(TypeError::Parse {
            token: s.to_string(),
            reason: "empty type expression".into(),
        });
    }
    let factors = compact
        .split(['x', 'X'])
        .map(parse_factor)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SemisimpleType::new(factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    fn identity(n: usize) -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    }

    fn order(m: &[Vec<i64>]) -> u32 {
        let id = identity(m.len());
        let mut acc = m.to_vec();
        let mut k = 1;
        while acc != id {
            acc = mat_mul(&acc, m);
            k += 1;
            assert!(k <= 12);
        }
        k
    }

    #[test]
    fn degree_examples() {
        assert_eq!(SimpleType::e(8).degrees(), [2, 8, 12, 14, 18, 20, 24, 30]);
        assert_eq!(SimpleType::a(1).degrees(), [2]);
        assert_eq!(SimpleType::d(4).degrees(), [2, 4, 4, 6]);
        assert_eq!(
            SimpleType::of(Letter::C, 5).degrees(),
            SimpleType::of(Letter::B, 5).degrees()
        );
    }

    #[test]
    fn roots_and_orders() {
        assert_eq!(SimpleType::e(8).positive_root_count(), 120);
        assert_eq!(SimpleType::a(1).positive_root_count(), 1);
        assert_eq!(parse_type("A2xB2").unwrap().positive_root_count(), 7);
        assert_eq!(SimpleType::f4().weyl_order(), BigUint::from(1152u32));
        assert_eq!(SimpleType::e(8).weyl_order(), BigUint::from(696_729_600u32));
        assert_eq!(SimpleType::a(1).weyl_order(), BigUint::from(2u32));
    }

    #[test]
    fn invalid_ranks() {
        assert!(SimpleType::new(Letter::D, 3).is_err());
        assert!(SimpleType::new(Letter::E, 9).is_err());
        assert!(SimpleType::new(Letter::G, 3).is_err());
        assert!(SimpleType::new(Letter::A, 0).is_err());
    }

    #[test]
    fn reflections_are_involutions_with_dynkin_braids() {
        let mut types = SimpleType::up_to_rank(8, &Letter::ALL);
        types.extend((3..=8).map(|n| SimpleType::of(Letter::C, n)));
        for t in types {
            let gens = t.reflection_generators();
            let n = t.rank() as usize;
            for (i, s) in gens.iter().enumerate() {
                assert_eq!(mat_mul(s, s), identity(n), "{t} s{i}");
                for (j, r) in gens.iter().enumerate() {
                    assert_eq!(order(&mat_mul(s, r)), t.braid_order(i, j), "{t} s{i}s{j}");
                }
            }
        }
    }

    #[test]
    fn small_generators() {
        assert_eq!(SimpleType::a(1).reflection_generators(), vec![vec![vec![-1]]]);
        let g = SimpleType::g2().reflection_generators();
        assert_eq!(order(&mat_mul(&g[0], &g[1])), 6);
    }

    #[test]
    fn bond_counts() {
        // One double bond in B/C/F, one triple bond in G, all single elsewhere.
        let bonds = |t: SimpleType| {
            let n = t.rank() as usize;
            let mut counts = [0usize; 7];
            for i in 0..n {
                for j in i + 1..n {
                    counts[t.braid_order(i, j) as usize] += 1;
                }
            }
            counts
        };
        assert_eq!(bonds(SimpleType::e(8))[3], 7);
        assert_eq!(bonds(SimpleType::f4())[4], 1);
        assert_eq!(bonds(SimpleType::f4())[3], 2);
        assert_eq!(bonds(SimpleType::d(6))[3], 5);
    }

    #[test]
    fn parsing() {
        let t = parse_type("A2xB3").unwrap();
        assert_eq!(t.factors(), [SimpleType::a(2), SimpleType::b(3)]);
        assert_eq!(parse_type("C3").unwrap(), parse_type("B3").unwrap());
        assert_eq!(parse_type("c2").unwrap(), parse_type("B2").unwrap());
        assert_eq!(parse_type("B1").unwrap(), parse_type("A1").unwrap());
        assert_eq!(parse_type(" b3 x a2 ").unwrap(), t);
        match parse_type("A2xD3") {
            Err(TypeError::Parse { token, .. }) => assert_eq!(token, "D3"),
            other => panic!("{other:?}"),
        }
        assert!(parse_type("").is_err());
        assert!(parse_type("A2x").is_err());
        assert!(parse_type("H3").is_err());
        assert!(parse_type("A").is_err());
    }

    #[test]
    fn render_round_trip() {
        let all = Letter::ALL;
        for t in SemisimpleType::up_to_rank(5, &SimpleType::up_to_rank(5, &all)) {
            assert_eq!(parse_type(&t.to_string()).unwrap(), t);
        }
        assert_eq!(parse_type("G2xA1xB2").unwrap().to_string(), "A1xB2xG2");
    }

    #[test]
    fn coxeter_catalogue() {
        assert_eq!(SimpleType::with_coxeter_number(2), [SimpleType::a(1)]);
        assert_eq!(
            SimpleType::with_coxeter_number(12),
            [
                SimpleType::a(11),
                SimpleType::b(6),
                SimpleType::d(7),
                SimpleType::e(6),
                SimpleType::f4()
            ]
        );
        for h in 2..=40 {
            for t in SimpleType::with_coxeter_number(h) {
                assert_eq!(t.coxeter_number(), h);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        // Rank 2 over all letters: A1xA1, A2, B2, G2 plus the rank-1 A1.
        let simple = SimpleType::up_to_rank(2, &Letter::ALL);
        let types = SemisimpleType::up_to_rank(2, &simple);
        assert_eq!(types.len(), 5);
    }
}
