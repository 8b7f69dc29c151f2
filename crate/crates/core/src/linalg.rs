//! Exact linear algebra over the integers and rationals.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Everything here is fraction-free or
//! uses `BigRational`, so results are exact for any input size.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// gcd of all entries (0 for the zero vector).
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of an integer matrix.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: IntMatrix = rows.to_vec();
    let ncols = a[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in (r + 1)..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (x, y) = (a[r][c].clone(), a[i][c].clone());
            for j in c..ncols {
                a[i][j] = &a[i][j] * &x - &a[r][j] * &y;
            }
            let g = gcd_all(&a[i]);
            if !g.is_zero() && !g.is_one() {
                a[i].iter_mut().for_each(|e| *e /= &g);
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Reduced row echelon form over Q; returns the matrix and pivot columns.
fn rref(m: &[Vec<BigInt>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a = to_rational(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        a[r].iter_mut().for_each(|e| *e *= &inv);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the rational null space `{x : rows·x = 0}`, each vector scaled to
/// a primitive integer vector.
pub fn rational_nullspace(rows: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let (a, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][f].clone();
            }
            let lcm = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let v: Vec<BigInt> = x.iter().map(|q| (q * &lcm).to_integer()).collect();
            primitive(&v)
        })
        .collect()
}

/// Z-basis of the integer kernel `{x ∈ Z^n : rows·x = 0}`.
///
/// Column operations reduce the matrix to column echelon form while the same
/// operations are tracked in a unimodular matrix; the columns of that matrix
/// sitting over zero columns span the kernel.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let mut a: IntMatrix = rows.to_vec();
    // u is stored column-major: u[c] is column c.
    let mut u: IntMatrix = (0..ncols)
        .map(|c| {
            (0..ncols)
                .map(|r| {
                    if r == c {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivot = 0;
    for row in 0..a.len() {
        if pivot == ncols {
            break;
        }
        loop {
            // smallest nonzero |entry| in this row among active columns
            let best = (pivot..ncols)
                .filter(|&c| !a[row][c].is_zero())
                .min_by(|&x, &y| a[row][x].abs().cmp(&a[row][y].abs()));
            let Some(best) = best else { break };
            swap_cols(&mut a, &mut u, pivot, best);
            let mut done = true;
            for c in (pivot + 1)..ncols {
                if a[row][c].is_zero() {
                    continue;
                }
                let q = a[row][c].div_floor(&a[row][pivot]);
                for r in 0..a.len() {
                    let t = &a[r][pivot] * &q;
                    a[r][c] -= t;
                }
                for r in 0..ncols {
                    let t = &u[pivot][r] * &q;
                    u[c][r] -= t;
                }
                if !a[row][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[row][pivot].is_zero() {
            pivot += 1;
        }
    }
    u.drain(pivot..).collect()
}

fn swap_cols(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}

/// Z-basis of `span_Q(rows) ∩ Z^n`, the saturation of the lattice spanned by
/// the rows.
pub fn saturated_basis(rows: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let complement = rational_nullspace(rows, ncols);
    integer_kernel(&complement, ncols)
}

/// Inverse over Q, or `None` if singular.
pub fn inverse(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let aug: IntMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let (a, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mat_vec(a: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
        a.iter().map(|r| dot(r, x)).collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            BigInt::zero()
        );
        assert_eq!(
            determinant(&m(&[&[2, -1, 0], &[1, 3, 2], &[0, 5, -4]])),
            BigInt::from(-48)
        );
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&m(&[&[2, 0], &[4, 0]])), 1);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank(&m(&[&[0, 0, 0]])), 0);
    }

    #[test]
    fn nullspace_is_primitive_and_annihilated() {
        let a = m(&[&[2, 4, 6]]);
        let ns = rational_nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
            assert!(gcd_all(v).is_one());
        }
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // kernel of (2, 2) over Z is generated by (1, -1), not (2, -2)
        let k = integer_kernel(&m(&[&[2, 2]]), 2);
        assert_eq!(k.len(), 1);
        assert!(gcd_all(&k[0]).is_one());
        assert!(dot(&k[0], &[BigInt::from(2), BigInt::from(2)]).is_zero());
    }

    #[test]
    fn saturation_of_even_vector() {
        // lattice spanned by (2, 4) saturates to the one spanned by (1, 2)
        let b = saturated_basis(&m(&[&[2, 4]]), 2);
        assert_eq!(b.len(), 1);
        let v = &b[0];
        assert!(
            v == &vec![BigInt::from(1), BigInt::from(2)]
                || v == &vec![BigInt::from(-1), BigInt::from(-2)]
        );
    }

    #[test]
    fn saturation_full_rank_has_unit_determinant() {
        let b = saturated_basis(&m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]), 3);
        assert_eq!(b.len(), 3);
        assert!(determinant(&b).abs().is_one());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], BigRational::from_integer(1.into()));
        assert_eq!(inv[0][1], BigRational::from_integer((-1).into()));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
