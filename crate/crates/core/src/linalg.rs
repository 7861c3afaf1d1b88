//! Exact dense linear algebra over the rationals.
//!
//! Ranks and determinants go through fraction-free (Bareiss) elimination on
//! integer matrices obtained by clearing each row's denominators; reduced
//! row echelon forms and kernels are computed over the rationals directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![BigRational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect()
        })
        .collect()
}

/// Bareiss elimination in place; returns the rank. `sign` tracks row swaps.
fn bareiss(a: &mut [Vec<BigInt>], sign: &mut i32) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            a.swap(pivot, rank);
            *sign = -*sign;
        }
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    let mut sign = 1;
    bareiss(&mut a, &mut sign)
}

pub fn determinant(m: &Matrix) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let denominators = m.iter().fold(BigInt::one(), |acc, row| {
        acc * row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()))
    });
    let mut a = integer_rows(m);
    let mut sign = 1;
    if bareiss(&mut a, &mut sign) < n {
        return BigRational::zero();
    }
    let det = a[n - 1][n - 1].clone() * BigInt::from(sign);
    BigRational::new(det, denominators)
}

/// Determinants of the leading `k x k` blocks, `k = 1..=n`.
pub fn leading_principal_minors(m: &Matrix) -> Vec<BigRational> {
    (1..=m.len())
        .map(|k| {
            let block: Matrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&block)
        })
        .collect()
}

/// Reduced row echelon form; zero rows are dropped. Also returns the pivot
/// columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of `{x : m x = 0}` for an `rows x cols` matrix.
pub fn nullspace(m: &Matrix, cols: usize) -> Matrix {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the span of `rows`.
pub fn in_row_space(rows: &Matrix, v: &[BigRational]) -> bool {
    let mut extended = rows.clone();
    extended.push(v.to_vec());
    rank(rows) == rank(&extended)
}

/// Coordinates of `v` in the (linearly independent) `basis`, if `v` lies in
/// its span.
pub fn coordinates(basis: &Matrix, v: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = v.len();
    // Solve basis^T c = v via rref of the augmented system.
    let aug: Matrix = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![BigRational::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Extends linearly independent `rows` of length `n` to a basis of `Q^n`
/// with standard basis vectors; returns only the added vectors.
pub fn complement_basis(rows: &Matrix, n: usize) -> Matrix {
    let mut current = rows.clone();
    let mut added = Vec::new();
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        if !in_row_space(&current, &e) {
            current.push(e.clone());
            added.push(e);
        }
    }
    added
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_singular_and_regular() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        let half = vec![vec![ratio(1, 2), ratio(1, 3)], vec![rat(3), rat(2)]];
        assert_eq!(rank(&half), 1);
    }

    #[test]
    fn determinant_with_swaps_and_fractions() {
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), rat(-1));
        assert_eq!(determinant(&m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]])), rat(24));
        let q = vec![vec![ratio(1, 2), rat(1)], vec![rat(1), ratio(1, 3)]];
        assert_eq!(determinant(&q), ratio(1, 6) - rat(1));
    }

    #[test]
    fn kernel_and_inverse() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(Zero::is_zero));
        let b = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&b).unwrap();
        assert_eq!(mat_mul(&b, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn coordinates_in_basis() {
        let basis = m(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(coordinates(&basis, &[rat(1), rat(3), rat(2)]), Some(vec![rat(1), rat(2)]));
        assert_eq!(coordinates(&basis, &[rat(1), rat(0), rat(0)]), None);
    }

    #[test]
    fn principal_minors_of_negative_definite() {
        let minors = leading_principal_minors(&m(&[&[-2, 0, 0], &[0, -2, 0], &[0, 0, -2]]));
        assert_eq!(minors, vec![rat(-2), rat(4), rat(-8)]);
    }
}
