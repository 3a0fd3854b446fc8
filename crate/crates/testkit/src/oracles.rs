//! Brute-force reference computations that share no code with the library.

use std::collections::BTreeMap;

use hurwitz_core::polytope::{weighted_minkowski_sum, Polytope, PolytopeError};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

/// Product of two sparse polynomials, dropping every monomial whose
/// exponent exceeds `dims` in some slot.
pub fn truncated_product(
    dims: &[u32],
    a: &BTreeMap<Vec<u32>, BigInt>,
    b: &BTreeMap<Vec<u32>, BigInt>,
) -> BTreeMap<Vec<u32>, BigInt> {
    let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().zip(dims).any(|(x, n)| x > n) {
                continue;
            }
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Number of fixed-point-free permutations of `0..n`, by enumeration.
pub fn derangements(n: usize) -> u64 {
    (0..n)
        .permutations(n)
        .filter(|p| p.iter().enumerate().all(|(i, &x)| i != x))
        .count() as u64
}

/// Genus of a smooth complete intersection of surfaces of degrees `a`, `b`
/// in `P^3`.
pub fn space_curve_genus(a: u32, b: u32) -> BigInt {
    let (a, b) = (i64::from(a), i64::from(b));
    BigInt::from(a * b * (a + b - 4) / 2 + 1)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::from(1), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Interior lattice points of `k * Delta_d`: vectors with positive entries
/// summing to less than `k`, counted one by one.
pub fn simplex_interior_points(k: u32, d: usize) -> u64 {
    (0..d)
        .map(|_| 1..k)
        .multi_cartesian_product()
        .filter(|z| z.iter().sum::<u32>() < k)
        .count() as u64
}

/// `{0, a e_1, ..., a e_d}`.
pub fn scaled_simplex_vertices(a: i64, d: usize) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![0; d]];
    for i in 0..d {
        let mut p = vec![0; d];
        p[i] = a;
        pts.push(p);
    }
    pts
}

/// All lattice points of `a * Delta_d`.
pub fn scaled_simplex_points(a: i64, d: usize) -> Vec<Vec<i64>> {
    (0..d)
        .map(|_| 0..=a)
        .multi_cartesian_product()
        .filter(|z| z.iter().sum::<i64>() <= a)
        .collect()
}

/// The genus sum read with index set `gamma <= index` and no binomial
/// multiplicities: `sum (-1)^{|index - gamma|} l*(P_gamma)`.
pub fn ungrouped_genus_sum(polytopes: &[Polytope], index: &[u32]) -> Result<BigInt, PolytopeError> {
    let total: u32 = index.iter().sum();
    let mut g = BigInt::zero();
    for gamma in index.iter().map(|&b| 0..=b).multi_cartesian_product() {
        if gamma.iter().all(|&x| x == 0) {
            continue;
        }
        let count = BigInt::from(weighted_minkowski_sum(polytopes, &gamma)?.interior_lattice_points()?);
        if (total - gamma.iter().sum::<u32>()).is_multiple_of(2) {
            g += count;
        } else {
            g -= count;
        }
    }
    Ok(g)
}

/// Whether generic equations with these supports cut an irreducible curve
/// in the torus: every partial sum `P_gamma`, `0 != gamma <= index`, must
/// have dimension at least `|gamma| + 1`.
pub fn is_nondegenerate(polytopes: &[Polytope], index: &[u32]) -> Result<bool, PolytopeError> {
    for gamma in index.iter().map(|&b| 0..=b).multi_cartesian_product() {
        let size: u32 = gamma.iter().sum();
        if size == 0 {
            continue;
        }
        if weighted_minkowski_sum(polytopes, &gamma)?.affine_dim() < size as i32 + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(
            (0..=6).map(derangements).collect::<Vec<_>>(),
            vec![1, 0, 1, 2, 9, 44, 265]
        );
        assert_eq!(space_curve_genus(2, 2), BigInt::from(1));
        assert_eq!(space_curve_genus(4, 4), BigInt::from(33));
        assert_eq!(simplex_interior_points(4, 3), 1);
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(scaled_simplex_points(2, 2).len(), 6);
    }
}
