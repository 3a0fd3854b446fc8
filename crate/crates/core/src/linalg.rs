//! Small exact linear-algebra kernels over `Q` and `Z`.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-reduces a copy of `rows` and returns the rank together with the pivot
/// columns, in increasing order.
pub(crate) fn rank_pivots(rows: &[Vec<BigRational>]) -> (usize, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][col].clone();
        for i in (r + 1)..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &lead;
            for j in col..ncols {
                let t = &f * &m[r][j];
                m[i][j] -= t;
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (r, pivots)
}

pub(crate) fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let lead = m[col][col].clone();
        det *= &lead;
        for i in (col + 1)..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &lead;
            for j in col..n {
                let t = &f * &m[col][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Solves `m x = rhs` for square nonsingular `m`; `None` if singular.
pub(crate) fn solve(m: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(p, col);
        let lead = a[col][col].clone();
        for j in col..=n {
            a[col][j] = &a[col][j] / &lead;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in col..=n {
                let t = &f * &a[col][j];
                a[i][j] -= t;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square matrix, `None` if singular.
pub(crate) fn inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == k {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        cols.push(solve(m, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|k| cols[k][i].clone()).collect()).collect())
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to the zero vector.
pub(crate) fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(ints)
}

pub(crate) fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x = &*x / &g;
        }
    }
    v
}

/// Whether the integer vectors in `gens` generate all of `Z^d`.
///
/// Brings the generator matrix to an integer echelon form using gcd row
/// operations (the Hermite normal form up to the off-pivot reduction) and
/// checks for `d` unit pivots.
pub(crate) fn generates_full_lattice(gens: &[Vec<i64>], d: usize) -> bool {
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut r = 0;
    for col in 0..d {
        // Euclid on the column until a single nonzero entry remains at or below r.
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&p) = nonzero.first() {
                    rows.swap(r, p);
                }
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            rows.swap(r, p);
            for i in (r + 1)..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                for j in col..d {
                    let t = &q * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        if r >= rows.len() || rows[r][col].is_zero() {
            return false;
        }
        if !rows[r][col].abs().is_one() {
            return false;
        }
        r += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank_pivots(&m), (2, vec![0, 1]));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = mat(&[&[2, 1], &[7, 4]]);
        assert_eq!(determinant(m.clone()), q(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, mat(&[&[4, -1], &[-7, 2]]));
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![
            BigRational::new(2.into(), 3.into()),
            BigRational::new((-4).into(), 9.into()),
        ];
        assert_eq!(primitive_integer(&v), vec![BigInt::from(3), BigInt::from(-2)]);
    }

    #[test]
    fn lattice_saturation() {
        assert!(generates_full_lattice(&[vec![1, 0], vec![0, 1]], 2));
        assert!(generates_full_lattice(&[vec![2, 0], vec![3, 0], vec![0, 1]], 2));
        assert!(!generates_full_lattice(&[vec![2, 0], vec![0, 1]], 2));
        assert!(!generates_full_lattice(&[vec![1, 1], vec![1, -1]], 2));
        assert!(!generates_full_lattice(&[vec![1, 0, 0], vec![0, 1, 0]], 3));
    }
}
