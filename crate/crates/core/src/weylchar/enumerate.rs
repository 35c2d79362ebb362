use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use super::WeylError;
use crate::cyclotomic::{CycloProduct, IntPoly};
use crate::rootsystem::SimpleType;

const MAX_RANK: usize = 8;

/// Row-major `n × n` integer matrix padded to 8 × 8.
type Mat = [i8; MAX_RANK * MAX_RANK];

/// Characteristic polynomial coefficients, constant term first, padded.
type Coeffs = [i64; MAX_RANK + 1];

fn identity(n: usize) -> Mat {
    let mut m = [0; MAX_RANK * MAX_RANK];
    for i in 0..n {
        m[i * MAX_RANK + i] = 1;
    }
    m
}

/// Generator `s_i` is the identity outside row `i`, so only that row is stored.
struct Reflection {
    row: usize,
    coeffs: [i64; MAX_RANK],
}

fn left_multiply(s: &Reflection, w: &Mat, n: usize) -> Result<Mat, WeylError> {
    let mut out = *w;
    for c in 0..n {
        let v: i64 = (0..n)
            .map(|k| s.coeffs[k] * i64::from(w[k * MAX_RANK + c]))
            .sum();
        out[s.row * MAX_RANK + c] = i8::try_from(v).map_err(|_| WeylError::Overflow)?;
    }
    Ok(out)
}

/// Faddeev–LeVerrier; every division is exact for integer matrices.
fn char_poly(w: &Mat, n: usize) -> Coeffs {
    let a = |i: usize, j: usize| i64::from(w[i * MAX_RANK + j]);
    let mut coeffs = [0i64; MAX_RANK + 1];
    coeffs[n] = 1;
    let mut m = [[0i64; MAX_RANK]; MAX_RANK];
    for k in 1..=n {
        // m <- A m + c_{n-k+1} I
        let mut next = [[0i64; MAX_RANK]; MAX_RANK];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a(i, l) * m[l][j]).sum();
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        let trace: i64 = (0..n)
            .map(|i| (0..n).map(|l| a(i, l) * m[l][i]).sum::<i64>())
            .sum();
        coeffs[n - k] = -trace / k as i64;
    }
    coeffs
}

/// Breadth-first closure of the simple reflections, layer by Coxeter length.
///
/// Left multiplication by a simple reflection moves the length by exactly one,
/// so the next layer is everything reachable from the current one that is not in
/// the previous one. Only two layers are held at a time.
pub(crate) fn enumerate(t: SimpleType) -> Result<(BTreeMap<CycloProduct, BigUint>, BigUint), WeylError> {
    let n = t.rank() as usize;
    if n > MAX_RANK {
        return Err(WeylError::NotEnumerable(t.into()));
    }
    let gens: Vec<Reflection> = t
        .reflection_generators()
        .into_iter()
        .enumerate()
        .map(|(row, m)| {
            let mut coeffs = [0i64; MAX_RANK];
            coeffs[..n].copy_from_slice(&m[row]);
            Reflection { row, coeffs }
        })
        .collect();

    let mut poly_counts: HashMap<Coeffs, u64> = HashMap::new();
    let mut previous: Vec<Mat> = Vec::new();
    let mut current: Vec<Mat> = vec![identity(n)];
    let mut total: u64 = 0;
    while !current.is_empty() {
        total += current.len() as u64;
        let layer_counts = current
            .par_iter()
            .fold(HashMap::new, |mut acc: HashMap<Coeffs, u64>, w| {
                *acc.entry(char_poly(w, n)).or_insert(0) += 1;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
        for (k, v) in layer_counts {
            *poly_counts.entry(k).or_insert(0) += v;
        }
        let mut next: Vec<Mat> = current
            .par_iter()
            .flat_map_iter(|w| gens.iter().map(move |s| left_multiply(s, w, n)))
            .collect::<Result<_, _>>()?;
        next.par_sort_unstable();
        next.dedup();
        next.retain(|w| previous.binary_search(w).is_err());
        previous = std::mem::replace(&mut current, next);
    }

    let mut table = BTreeMap::new();
    for (coeffs, count) in poly_counts {
        let poly = IntPoly::from_coeffs(coeffs[..=n].iter().map(|&c| BigInt::from(c)));
        let factored = CycloProduct::from_poly(&poly).map_err(|_| WeylError::Certificate(format!(
            "{t}: characteristic polynomial {poly} is not a product of cyclotomics"
        )))?;
        *table.entry(factored).or_insert_with(BigUint::default) += count;
    }
    Ok((table, BigUint::from(total)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_rotation() {
        // [[0, -1], [1, -1]] has order 3 and characteristic polynomial x^2 + x + 1.
        let mut m = identity(2);
        m[0] = 0;
        m[1] = -1;
        m[MAX_RANK] = 1;
        m[MAX_RANK + 1] = -1;
        assert_eq!(&char_poly(&m, 2)[..3], &[1, 1, 1]);
    }

    #[test]
    fn small_group_orders() {
        let (_, order) = enumerate(SimpleType::g2()).unwrap();
        assert_eq!(order, BigUint::from(12u32));
        let (_, order) = enumerate(SimpleType::b(3)).unwrap();
        assert_eq!(order, BigUint::from(48u32));
        let (_, order) = enumerate(SimpleType::d(4)).unwrap();
        assert_eq!(order, BigUint::from(192u32));
    }
}
