//! End-to-end acceptance checks. Run with `cargo test --test acceptance`; prints
//! one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use lietype_core::coincidence::{
    decompose, enumerate_two_factor_pairs, is_coincidence, verify_group_axioms, CoincidencePair, GeneratorId,
};
use lietype_core::compalg::verify_compalg;
use lietype_core::cyclotomic::ord_p_power_diff;
use lietype_core::orders::{counter_sweep, order_value, p_contribution_is_largest};
use lietype_core::reconstruct::verify_determination;
use lietype_core::weylchar::{brute_force_table, charpolys_classical, charpolys_exceptional, CharPolyTable};
use lietype_core::{parse_type, Letter, SemisimpleType, SimpleType};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn pow2(n: u32) -> BigUint {
    BigUint::one() << n
}

fn prime_powers(factors: &[(u32, u32)]) -> BigUint {
    factors
        .iter()
        .fold(BigUint::one(), |acc, &(p, k)| acc * BigUint::from(p).pow(k))
}

/// `(letter, rank, |W|, number of positive roots)` from the standard tables.
fn weyl_table() -> Vec<(Letter, u32, BigUint, u32)> {
    let mut rows = Vec::new();
    for n in 1..=30 {
        rows.push((Letter::A, n, factorial(n + 1), n * (n + 1) / 2));
    }
    for n in 2..=30 {
        rows.push((Letter::B, n, pow2(n) * factorial(n), n * n));
    }
    for n in 3..=30 {
        rows.push((Letter::C, n, pow2(n) * factorial(n), n * n));
    }
    for n in 4..=30 {
        rows.push((Letter::D, n, pow2(n - 1) * factorial(n), n * (n - 1)));
    }
    rows.push((Letter::G, 2, BigUint::from(12u32), 6));
    rows.push((Letter::F, 4, prime_powers(&[(2, 7), (3, 2)]), 24));
    rows.push((Letter::E, 6, prime_powers(&[(2, 7), (3, 4), (5, 1)]), 36));
    rows.push((Letter::E, 7, prime_powers(&[(2, 10), (3, 4), (5, 1), (7, 1)]), 63));
    rows.push((Letter::E, 8, prime_powers(&[(2, 14), (3, 5), (5, 2), (7, 1)]), 120));
    rows
}

fn c1_degree_table() -> Outcome {
    let start = Instant::now();
    let rows = weyl_table();
    for (letter, rank, order, positive) in &rows {
        let t = SimpleType::new(*letter, *rank).map_err(|e| e.to_string())?;
        let d = t.degrees();
        let prod: BigUint = d.iter().map(|&x| BigUint::from(x)).product();
        let n: u32 = d.iter().map(|x| x - 1).sum();
        ensure(prod == *order, || format!("{t}: product of degrees {prod} != {order}"))?;
        ensure(n == *positive, || format!("{t}: sum of d-1 = {n} != {positive}"))?;
    }
    let e8 = SimpleType::e(8).weyl_order();
    ensure(e8 == BigUint::from(696_729_600u64), || format!("|W(E8)| = {e8}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{} simple types, {elapsed:.2?}", rows.len()))
}

fn c2_enumeration() -> Outcome {
    let mut parts = Vec::new();
    for (t, expected, limit) in [
        (SimpleType::g2(), 12u64, 10),
        (SimpleType::f4(), 1152, 10),
        (SimpleType::e(6), 51840, 10),
        (SimpleType::e(7), 2_903_040, 600),
    ] {
        let start = Instant::now();
        let table = charpolys_exceptional(t).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let total: BigUint = table.entries().values().sum();
        ensure(total == BigUint::from(expected), || format!("{t}: {total} elements"))?;
        ensure(*table.group_order() == BigUint::from(expected), || format!("{t}: order field"))?;
        ensure(elapsed < Duration::from_secs(limit), || format!("{t}: took {elapsed:?}"))?;
        parts.push(format!("{t}={total} ({elapsed:.1?})"));
    }
    Ok(parts.join(", "))
}

fn indices(table: &CharPolyTable) -> BTreeSet<u32> {
    table.entries().keys().flat_map(|p| p.indices()).collect()
}

fn divisor_closure(degrees: &[u32]) -> BTreeSet<u32> {
    degrees
        .iter()
        .flat_map(|&d| (1..=d).filter(move |r| d % r == 0))
        .collect()
}

/// The sets of cyclotomic indices listed for each simple type.
fn listed_indices(t: SimpleType) -> BTreeSet<u32> {
    let n = t.rank();
    match (t.letter(), n) {
        (Letter::A, _) => (1..=n + 1).collect(),
        (Letter::B, _) => (1..=n).flat_map(|i| [i, 2 * i]).collect(),
        (Letter::D, _) => (1..=n).chain((1..n).map(|j| 2 * j)).collect(),
        (Letter::G, 2) => BTreeSet::from([1, 2, 3, 6]),
        (Letter::F, 4) => BTreeSet::from([1, 2, 3, 4, 6, 8, 12]),
        (Letter::E, 6) => BTreeSet::from([1, 2, 3, 4, 5, 6, 8, 9, 12]),
        (Letter::E, 7) => (1..=10).chain([12, 14, 18]).collect(),
        _ => unreachable!("no table for {t}"),
    }
}

fn all_tables() -> Result<Vec<(SimpleType, CharPolyTable)>, String> {
    let mut out = Vec::new();
    for n in 1..=10 {
        for t in [SimpleType::a(n)]
            .into_iter()
            .chain((n >= 2).then(|| SimpleType::b(n)))
            .chain((n >= 4).then(|| SimpleType::d(n)))
        {
            out.push((t, charpolys_classical(t).map_err(|e| e.to_string())?));
        }
    }
    for t in [SimpleType::g2(), SimpleType::f4(), SimpleType::e(6), SimpleType::e(7)] {
        out.push((t, (*charpolys_exceptional(t).map_err(|e| e.to_string())?).clone()));
    }
    Ok(out)
}

fn c3_springer() -> Outcome {
    let tables = all_tables()?;
    for (t, table) in &tables {
        let found = indices(table);
        ensure(found == divisor_closure(&t.degrees()), || format!("{t}: {found:?} vs divisor closure"))?;
        ensure(found == listed_indices(*t), || format!("{t}: {found:?} vs listed set"))?;
    }
    Ok(format!("{} tables", tables.len()))
}

fn c4_max_exponents() -> Outcome {
    let tables = all_tables()?;
    for (t, table) in &tables {
        for d in 1..=30u32 {
            let max = table.entries().keys().map(|p| p.exponent(d)).max().unwrap_or(0);
            let divisible = t.degrees().iter().filter(|&&x| x % d == 0).count() as u32;
            ensure(max == divisible, || format!("{t}, d = {d}: max exponent {max}, {divisible} degrees"))?;
        }
    }
    Ok(format!("{} tables, d <= 30", tables.len()))
}

fn c5_oracle() -> Outcome {
    let start = Instant::now();
    let types: Vec<SimpleType> = (1..=5)
        .map(SimpleType::a)
        .chain((2..=4).map(SimpleType::b))
        .chain([SimpleType::d(4)])
        .collect();
    for &t in &types {
        let brute = brute_force_table(t).map_err(|e| e.to_string())?;
        let combinatorial = charpolys_classical(t).map_err(|e| e.to_string())?;
        ensure(brute == combinatorial, || format!("{t}: tables differ"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} types, {elapsed:.2?}", types.len()))
}

/// Nonempty multisets of simple types of total rank at most `bound` over
/// A, B, D, G2, F4, E6, E7, counted with a generating function.
fn count_types(bound: usize) -> usize {
    let mut per_rank = vec![0usize; bound + 1];
    for r in 1..=bound {
        per_rank[r] = 1 + usize::from(r >= 2) + usize::from(r >= 4);
    }
    per_rank[2] += 1;
    per_rank[4] += 1;
    for r in [6, 7] {
        if r <= bound {
            per_rank[r] += 1;
        }
    }
    let mut poly = vec![0usize; bound + 1];
    poly[0] = 1;
    for r in 1..=bound {
        for _ in 0..per_rank[r] {
            for i in r..=bound {
                poly[i] += poly[i - r];
            }
        }
    }
    poly.iter().sum::<usize>() - 1
}

fn c6_determination() -> Outcome {
    let start = Instant::now();
    let letters = [Letter::A, Letter::B, Letter::D, Letter::G, Letter::F, Letter::E];
    let report = verify_determination(8, &letters).map_err(|e| e.to_string())?;
    ensure(report.skipped == [SimpleType::e(8)], || format!("skipped {:?}", report.skipped))?;
    ensure(report.family_collisions.is_empty(), || {
        format!("family collisions: {:?}", report.family_collisions)
    })?;
    ensure(report.round_trip_failures.is_empty(), || {
        format!("round trip failures: {:?}", report.round_trip_failures)
    })?;
    ensure(report.distinct_families == report.types_checked, || "family count".into())?;
    let expected = count_types(8);
    ensure(report.types_checked == expected, || {
        format!("{} types checked, {expected} expected", report.types_checked)
    })?;
    Ok(format!(
        "{} types, all families distinct and reconstructed, {} invariant-profile collisions, {:.1?}",
        report.types_checked,
        report.profile_collisions.len(),
        start.elapsed()
    ))
}

fn ty(parts: &[SimpleType]) -> SemisimpleType {
    SemisimpleType::new(parts.to_vec())
}

/// Rank <= 20 members of the eight two-factor families, smaller side first.
fn listed_pairs() -> BTreeSet<(SemisimpleType, SemisimpleType)> {
    use SimpleType as S;
    let mut raw = Vec::new();
    for n in 2..=20u32 {
        raw.push((ty(&[S::a(2 * n - 2), S::b(n)]), ty(&[S::a(2 * n - 1), S::b(n - 1)])));
        raw.push((ty(&[S::b(n - 1), S::d(2 * n)]), ty(&[S::b(2 * n - 1), S::b(n)])));
    }
    for n in 4..=20u32 {
        raw.push((ty(&[S::a(n - 2), S::d(n)]), ty(&[S::a(n - 1), S::b(n - 1)])));
    }
    for (l, r) in [
        ("A1xA5", "A4xG2"),
        ("A1xB3", "B2xG2"),
        ("A1xD6", "B5xG2"),
        ("A2xB3", "A3xG2"),
        ("B3xB3", "D4xG2"),
    ] {
        raw.push((parse_type(l).unwrap(), parse_type(r).unwrap()));
    }
    raw.into_iter()
        .filter(|(l, _)| l.rank() <= 20)
        .map(|(l, r)| if l <= r { (l, r) } else { (r, l) })
        .collect()
}

fn found_pairs() -> Vec<CoincidencePair> {
    enumerate_two_factor_pairs(20)
}

fn c7_pairs() -> Outcome {
    let found: BTreeSet<(SemisimpleType, SemisimpleType)> = found_pairs()
        .iter()
        .map(|p| (p.left().clone(), p.right().clone()))
        .collect();
    let listed = listed_pairs();
    let extra: Vec<_> = found.difference(&listed).collect();
    let missing: Vec<_> = listed.difference(&found).collect();
    ensure(extra.is_empty() && missing.is_empty(), || {
        format!("extra {extra:?}, missing {missing:?}")
    })?;
    Ok(format!("{} pairs, set equal", found.len()))
}

fn c8_generators() -> Outcome {
    let mut ids: Vec<GeneratorId> = (2..=12).map(GeneratorId::B).chain((4..=12).map(GeneratorId::D)).collect();
    ids.extend([GeneratorId::G2, GeneratorId::F4, GeneratorId::E6, GeneratorId::E7, GeneratorId::E8]);
    for id in &ids {
        let p = id.pair().map_err(|e| e.to_string())?;
        ensure(p.is_valid() && !p.is_identity(), || format!("{id}: {p}"))?;
        for q in [2, 3, 4, 5] {
            let same = is_coincidence(p.left(), p.right(), q).map_err(|e| e.to_string())?;
            ensure(same, || format!("{id}: orders differ at q = {q}"))?;
        }
    }
    let pairs = found_pairs();
    for p in &pairs {
        let word = decompose(p).map_err(|e| format!("{p}: {e}"))?;
        let value = word.evaluate().map_err(|e| e.to_string())?;
        ensure(value == *p, || format!("{p}: word {word} evaluates to {value}"))?;
    }
    let report = verify_group_axioms(100, 20, 0x5eed).map_err(|e| e.to_string())?;
    ensure(report.violations.is_empty(), || format!("{:?}", report.violations))?;
    Ok(format!(
        "{} generator instances valid, {} family pairs and 100 random products decomposed",
        ids.len(),
        pairs.len()
    ))
}

fn c9_orders() -> Outcome {
    let o = |s: &str, q| order_value(&parse_type(s).unwrap(), q).map_err(|e| e.to_string());
    ensure(o("A1", 9)? == BigUint::from(720u32), || "A1(9)".into())?;
    ensure(o("B2", 2)? == BigUint::from(720u32), || "B2(2)".into())?;
    ensure(o("B2", 3)? == BigUint::from(51840u32), || "B2(3)".into())?;
    let (largest, w) = p_contribution_is_largest(&parse_type("B2").unwrap(), 3).map_err(|e| e.to_string())?;
    ensure(!largest, || "3-part reported as largest".into())?;
    ensure(w.p_part == BigUint::from(81u32), || format!("p-part {}", w.p_part))?;
    ensure(w.other_prime == 2 && w.other_part == BigUint::from(128u32), || {
        format!("largest other {}^{}", w.other_prime, w.other_exponent)
    })?;
    // 51840 = 2^7 3^4 5, so 81 is second after 128.
    Ok("720, 720, 51840; 81 < 128".into())
}

fn c10_counter() -> Outcome {
    let start = Instant::now();
    let report = counter_sweep(6, 16).map_err(|e| e.to_string())?;
    ensure(report.mismatches.is_empty(), || format!("mismatches: {:?}", report.mismatches))?;
    let found: BTreeSet<(SimpleType, u64)> = report
        .exceptions_found
        .iter()
        .map(|c| (c.ty, c.q.value()))
        .collect();
    let expected: BTreeSet<(SimpleType, u64)> = [2, 3, 4, 5, 7, 8, 9, 16]
        .into_iter()
        .map(|q| (SimpleType::a(1), q))
        .chain([(SimpleType::b(2), 3)])
        .collect();
    ensure(found == expected, || format!("exceptions {found:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} cases, {} exceptions, {elapsed:.2?}", report.cases_checked, found.len()))
}

fn c11_extensions() -> Outcome {
    let pairs = found_pairs();
    let mut checked = 0;
    for p in &pairs {
        for q in [2u64, 3] {
            for r in [2u32, 3] {
                let qr = q.pow(r);
                let (l, rr) = (
                    order_value(p.left(), qr).map_err(|e| e.to_string())?,
                    order_value(p.right(), qr).map_err(|e| e.to_string())?,
                );
                ensure(l == rr, || format!("{p} at q = {qr}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} comparisons"))
}

fn direct_valuation(p: u64, a: i64, b: i64, n: u64) -> u32 {
    let diff = num_traits::pow(BigInt::from(a), n as usize) - num_traits::pow(BigInt::from(b), n as usize);
    let mut v = 0;
    let mut m = diff;
    let bp = BigInt::from(p);
    while (&m % &bp).is_zero() {
        m /= &bp;
        v += 1;
    }
    v
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c12_artin() -> Outcome {
    let mut compared = 0usize;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                let (ua, ub) = (a.unsigned_abs(), b.unsigned_abs());
                let admissible = ub >= 1 && ua > ub && gcd(ua, ub) == 1 && ua % p != 0 && ub % p != 0;
                for n in 1..=30u64 {
                    match ord_p_power_diff(p, a, b, n) {
                        Ok(v) => {
                            ensure(admissible, || format!("accepted p={p} a={a} b={b}"))?;
                            let w = direct_valuation(p, a, b, n);
                            ensure(v == w, || format!("p={p} a={a} b={b} n={n}: {v} vs {w}"))?;
                            compared += 1;
                        }
                        Err(e) => ensure(!admissible, || format!("p={p} a={a} b={b} n={n}: {e}"))?,
                    }
                }
            }
        }
    }
    Ok(format!("{compared} values"))
}

fn c13_compalg() -> Outcome {
    let report = verify_compalg(1000, 20240611).map_err(|e| e.to_string())?;
    let names: BTreeSet<&str> = report.checks.iter().map(|c| c.check.as_str()).collect();
    for required in [
        "norm multiplicativity",
        "x conj(x) = conj(x) x = N(x)",
        "Jordan commutativity and closure",
        "Q trace = Q explicit",
        "u × u = u, Q(u) = 1/2, Q(1) = 3/2",
        "E0 basis: dim 9, conditions, independence",
    ] {
        ensure(names.contains(required), || format!("missing check {required}"))?;
    }
    let failed: Vec<_> = report.checks.iter().filter(|c| c.failures > 0).collect();
    ensure(failed.is_empty(), || format!("{failed:?}"))?;
    Ok(format!("{} checks over Q, F_7, F_11", report.checks.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("degrees reproduce |W| and positive root counts", c1_degree_table),
        ("exhaustive enumeration of G2, F4, E6, E7", c2_enumeration),
        ("cyclotomic indices are the divisors of degrees", c3_springer),
        ("max exponent of Phi_d counts degrees divisible by d", c4_max_exponents),
        ("combinatorial and brute-force tables agree", c5_oracle),
        ("rank <= 8 types determined by their polynomials", c6_determination),
        ("two-factor pairs up to rank 20", c7_pairs),
        ("generators and decomposition", c8_generators),
        ("order values and p-contribution of B2(3)", c9_orders),
        ("p-contribution exceptions, rank <= 6, q <= 16", c10_counter),
        ("pairs agree over extensions", c11_extensions),
        ("valuation of a^n - b^n", c12_artin),
        ("composition and Albert algebra identities", c13_compalg),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
