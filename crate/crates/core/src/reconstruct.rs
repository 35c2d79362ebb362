//! Recovering a semisimple type from the set of characteristic polynomials of
//! its Weyl group.
//!
//! The largest degree `h` is the largest Coxeter number among the simple
//! factors. The polynomial in which `Φ_h` has maximal exponent and `Φ_1` has
//! maximal exponent is `f · Φ_1^k`, where `f` is the characteristic polynomial
//! of a Coxeter element of the factors with Coxeter number `h`. The eigenvalues
//! of `f` are `ζ_h^(d-1)` over the degrees `d` of those factors, which pins them
//! down; dividing the other extremal polynomials by `f` leaves the family of the
//! remaining factors.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::CycloProduct;
use crate::rootsystem::{DegreeMultiset, Letter, SemisimpleType, SimpleType};
use crate::weylchar::{self, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("not the polynomial family of a Weyl group: {0}")]
    NotAWeylFamily(String),
    #[error("degrees {degrees:?} with Coxeter number {h} admit several decompositions: {candidates:?}")]
    AmbiguousBlock {
        h: u32,
        degrees: Vec<u32>,
        candidates: Vec<String>,
    },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

fn not_weyl(msg: impl Into<String>) -> ReconstructError {
    ReconstructError::NotAWeylFamily(msg.into())
}

/// A set of characteristic polynomials, all of degree `rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPolyFamily {
    polys: BTreeSet<CycloProduct>,
    rank: u32,
}

impl CharPolyFamily {
    pub fn new(rank: u32, polys: BTreeSet<CycloProduct>) -> Result<Self, ReconstructError> {
        if let Some(p) = polys.iter().find(|p| p.degree() != u64::from(rank)) {
            return Err(not_weyl(format!("{p} does not have degree {rank}")));
        }
        if !polys.contains(&CycloProduct::single(1, rank)) {
            return Err(not_weyl(format!("identity polynomial Φ1^{rank} missing")));
        }
        Ok(CharPolyFamily { polys, rank })
    }

    /// The family of a type, from its characteristic polynomial tables.
    pub fn of_type(t: &SemisimpleType) -> Result<Self, ReconstructError> {
        Ok(CharPolyFamily {
            polys: weylchar::distinct_polys(t, None)?,
            rank: t.rank(),
        })
    }

    pub fn polys(&self) -> &BTreeSet<CycloProduct> {
        &self.polys
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    fn max_exponent(&self, d: u32) -> u32 {
        self.polys.iter().map(|p| p.exponent(d)).max().unwrap_or(0)
    }
}

/// The factors sharing the largest Coxeter number, split off from a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterBlock {
    pub h: u32,
    pub factors: Vec<SimpleType>,
    /// Characteristic polynomial of the Coxeter element of the block.
    pub f: CycloProduct,
    /// Rank of what is left after removing the block.
    pub residual_dim: u32,
}

/// Degrees from the maximal eigenspace dimensions `a(d) = max exp(Φ_d)`,
/// by downward induction: `v` occurs as a degree `a(v) - #{larger degrees divisible by v}` times.
pub fn degrees_from_family(family: &CharPolyFamily) -> Result<DegreeMultiset, ReconstructError> {
    let top = family
        .polys
        .iter()
        .flat_map(|p| p.indices())
        .max()
        .unwrap_or(0);
    let mut degrees: Vec<u32> = Vec::new();
    for v in (1..=top).rev() {
        let a = family.max_exponent(v);
        let larger = degrees.iter().filter(|&&d| d % v == 0).count() as u32;
        let mult = a
            .checked_sub(larger)
            .ok_or_else(|| not_weyl(format!("a({v}) = {a} is smaller than forced by larger degrees")))?;
        if v == 1 && mult != 0 {
            return Err(not_weyl("eigenvalue 1 multiplicity exceeds the number of degrees"));
        }
        degrees.extend(std::iter::repeat_n(v, mult as usize));
    }
    if degrees.len() != family.rank as usize {
        return Err(not_weyl(format!(
            "recovered {} degrees for rank {}",
            degrees.len(),
            family.rank
        )));
    }
    Ok(DegreeMultiset::new(degrees))
}

/// Degrees `e + 1` over the eigenvalues `ζ_h^e` of `f`.
fn block_degrees(f: &CycloProduct, h: u32) -> Result<Vec<u32>, ReconstructError> {
    let mut out = Vec::new();
    for (&d, &t) in f.exponents() {
        if d == 1 || h % d != 0 {
            return Err(not_weyl(format!("Coxeter polynomial {f} has factor Φ{d} with h = {h}")));
        }
        let step = h / d;
        for k in (1..d).filter(|&k| num_integer::gcd(k, d) == 1) {
            out.extend(std::iter::repeat_n(k * step + 1, t as usize));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Every multiset of catalogue types with Coxeter number `h` whose degrees are `target`.
fn covers(h: u32, target: &[u32]) -> Vec<Vec<SimpleType>> {
    let catalogue = SimpleType::with_coxeter_number(h);
    let mut out = Vec::new();
    fn go(
        catalogue: &[SimpleType],
        start: usize,
        remaining: &mut BTreeMap<u32, u32>,
        current: &mut Vec<SimpleType>,
        out: &mut Vec<Vec<SimpleType>>,
    ) {
        if remaining.values().all(|&m| m == 0) {
            out.push(current.clone());
            return;
        }
        for (k, &t) in catalogue.iter().enumerate().skip(start) {
            let degrees = t.degrees();
            let mut taken = Vec::new();
            let mut fits = true;
            for &d in &degrees {
                match remaining.get_mut(&d) {
                    Some(m) if *m > 0 => {
                        *m -= 1;
                        taken.push(d);
                    }
                    _ => {
                        fits = false;
                        break;
                    }
                }
            }
            if fits {
                current.push(t);
                go(catalogue, k, remaining, current, out);
                current.pop();
            }
            for d in taken {
                *remaining.get_mut(&d).expect("was present") += 1;
            }
        }
    }
    let mut remaining = BTreeMap::new();
    for &d in target {
        *remaining.entry(d).or_insert(0) += 1;
    }
    go(&catalogue, 0, &mut remaining, &mut Vec::new(), &mut out);
    out
}

/// Splits off the factors with the largest Coxeter number.
pub fn peel_max_coxeter(
    family: &CharPolyFamily,
) -> Result<(CoxeterBlock, CharPolyFamily), ReconstructError> {
    if family.rank == 0 {
        return Err(not_weyl("nothing to peel from a rank-0 family"));
    }
    let degrees = degrees_from_family(family)?;
    let h = degrees.max_degree().expect("rank >= 1");
    let b = family.max_exponent(h);
    let extremal: Vec<&CycloProduct> = family.polys.iter().filter(|p| p.exponent(h) == b).collect();
    let best_unit = extremal.iter().map(|p| p.exponent(1)).max().expect("nonempty");
    let mut top = extremal.iter().filter(|p| p.exponent(1) == best_unit);
    let p_star = top.next().expect("nonempty");
    if top.next().is_some() {
        return Err(not_weyl(format!(
            "several polynomials with maximal Φ{h} and Φ1 exponents"
        )));
    }
    let (f, residual_dim) = p_star.split_unit_root();
    let target = block_degrees(&f, h)?;
    if target.iter().filter(|&&d| d == h).count() as u32 != b {
        return Err(not_weyl(format!("Coxeter polynomial {f} disagrees with a({h}) = {b}")));
    }
    let residual = extremal
        .iter()
        .map(|p| {
            p.checked_div(&f)
                .ok_or_else(|| not_weyl(format!("{p} is not divisible by {f}")))
        })
        .collect::<Result<BTreeSet<_>, _>>()?;
    let residual = CharPolyFamily::new(residual_dim, residual)?;
    let mut found = covers(h, &target);
    if found.len() > 1 {
        // Equal degrees do not always force equal blocks (B3xB3 and D4xG2 share
        // {2, 2, 4, 4, 6, 6}); keep the candidates whose product with the
        // residual family reproduces the whole family.
        let mut matching = Vec::new();
        for candidate in found {
            let block = SemisimpleType::new(candidate.iter().copied());
            let predicted: BTreeSet<CycloProduct> = weylchar::distinct_polys(&block, None)?
                .iter()
                .flat_map(|p| residual.polys.iter().map(move |g| p.mul(g)))
                .collect();
            if predicted == family.polys {
                matching.push(candidate);
            }
        }
        found = matching;
    }
    let factors = match found.len() {
        0 => {
            return Err(not_weyl(format!(
                "no product of types with Coxeter number {h} has degrees {target:?}"
            )))
        }
        1 => found.pop().expect("one cover"),
        _ => {
            return Err(ReconstructError::AmbiguousBlock {
                h,
                degrees: target,
                candidates: found
                    .iter()
                    .map(|c| SemisimpleType::new(c.iter().copied()).to_string())
                    .collect(),
            })
        }
    };
    let block_rank: u32 = factors.iter().map(SimpleType::rank).sum();
    if block_rank + residual_dim != family.rank {
        return Err(not_weyl("block and residual ranks do not add up"));
    }
    Ok((
        CoxeterBlock {
            h,
            factors,
            f,
            residual_dim,
        },
        residual,
    ))
}

/// Peels blocks until nothing is left and collects their factors.
pub fn reconstruct(family: &CharPolyFamily) -> Result<SemisimpleType, ReconstructError> {
    let mut factors = Vec::new();
    let mut current = family.clone();
    while current.rank > 0 {
        let (block, rest) = peel_max_coxeter(&current)?;
        factors.extend(block.factors);
        current = rest;
    }
    Ok(SemisimpleType::new(factors))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DeterminationReport {
    pub rank_bound: u32,
    pub types_checked: usize,
    pub distinct_families: usize,
    pub distinct_profiles: usize,
    /// Same polynomial family for two different types.
    pub family_collisions: Vec<(SemisimpleType, SemisimpleType)>,
    /// Reconstruction returned another type, or failed.
    pub round_trip_failures: Vec<(SemisimpleType, String)>,
    /// Same invariant profile for two different types.
    pub profile_collisions: Vec<(SemisimpleType, SemisimpleType)>,
    /// Simple types left out because their tables are unavailable.
    pub skipped: Vec<SimpleType>,
}

impl DeterminationReport {
    pub fn violations(&self) -> usize {
        self.family_collisions.len() + self.round_trip_failures.len() + self.profile_collisions.len()
    }
}

/// Checks, for every canonical type of rank at most `rank_bound` over `letters`,
/// that its polynomial family is unique to it, reconstructs to it, and that its
/// invariant profile is unique to it.
pub fn verify_determination(
    rank_bound: u32,
    letters: &[Letter],
) -> Result<DeterminationReport, ReconstructError> {
    let mut simple = SimpleType::up_to_rank(rank_bound, letters);
    let e8 = SimpleType::e(8);
    let mut skipped = Vec::new();
    if simple.contains(&e8) && !weylchar::is_table_cached(e8) {
        simple.retain(|&t| t != e8);
        skipped.push(e8);
    }
    // Build the exceptional tables up front, one at a time.
    for &t in &simple {
        weylchar::simple_table(t, None)?;
    }
    let types = SemisimpleType::up_to_rank(rank_bound, &simple);
    let bound = 30.max(2 * rank_bound);

    type Row = (
        SemisimpleType,
        CharPolyFamily,
        Result<SemisimpleType, ReconstructError>,
        weylchar::InvariantProfile,
    );
    let rows: Vec<Row> = types
        .par_iter()
        .map(|t| {
            let family = CharPolyFamily::of_type(t)?;
            let rebuilt = reconstruct(&family);
            let profile = weylchar::invariant_profile_with_bound(t, bound, None)?;
            Ok((t.clone(), family, rebuilt, profile))
        })
        .collect::<Result<_, ReconstructError>>()?;

    let mut report = DeterminationReport {
        rank_bound,
        types_checked: rows.len(),
        skipped,
        ..Default::default()
    };
    let mut by_family: HashMap<&BTreeSet<CycloProduct>, &SemisimpleType> = HashMap::new();
    let mut by_profile: HashMap<&weylchar::InvariantProfile, &SemisimpleType> = HashMap::new();
    for (t, family, rebuilt, profile) in &rows {
        if let Some(other) = by_family.insert(&family.polys, t) {
            report.family_collisions.push((other.clone(), t.clone()));
        }
        if let Some(other) = by_profile.insert(profile, t) {
            report.profile_collisions.push((other.clone(), t.clone()));
        }
        match rebuilt {
            Ok(r) if r == t => {}
            Ok(r) => report.round_trip_failures.push((t.clone(), format!("reconstructed {r}"))),
            Err(e) => report.round_trip_failures.push((t.clone(), e.to_string())),
        }
    }
    report.distinct_families = by_family.len();
    report.distinct_profiles = by_profile.len();
    Ok(report)
}
