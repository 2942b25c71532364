//! Classical linear algebra over the rationals by exact elimination. These
//! serve as commutative oracles and as the inverse used for conjugation; they
//! share no code with the permutation-sum kernels.

use num_traits::{One, Zero};

use super::RingMatrix;
use crate::error::{Error, Result};
use crate::ring::{int, Rational};

/// Determinant by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn det(a: &RingMatrix<Rational>) -> Rational {
    let n = a.n();
    let mut m: Vec<Vec<Rational>> = a.rows().map(<[_]>::to_vec).collect();
    let mut acc = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        let p = m[col][col].clone();
        acc *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    acc
}

/// Classical adjugate: `adj(A)[i][j] = (-1)^(i+j) det(A with row j and column i removed)`.
pub fn adj(a: &RingMatrix<Rational>) -> RingMatrix<Rational> {
    let n = a.n();
    if n == 1 {
        return RingMatrix::from_fn(1, |_, _| Rational::one());
    }
    RingMatrix::from_fn(n, |i, j| {
        let d = det(&a.minor(j, i).expect("in range"));
        if (i + j) % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// Inverse by Gauss-Jordan elimination.
#[allow(clippy::needless_range_loop)]
pub fn inverse(a: &RingMatrix<Rational>) -> Result<RingMatrix<Rational>> {
    let n = a.n();
    let mut m: Vec<Vec<Rational>> = a
        .rows()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.to_vec();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
        m.swap(pivot, col);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..2 * n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Ok(RingMatrix::from_fn(n, |i, j| m[i][n + j].clone()))
}

/// Coefficients `c_0, ..., c_n` of the classical `det(t I - A)`, recovered by
/// evaluating the determinant at `t = 0, ..., n` and interpolating.
pub fn classical_char_poly(a: &RingMatrix<Rational>) -> Vec<Rational> {
    let n = a.n();
    let values: Vec<Rational> = (0..=n)
        .map(|t| {
            let shifted = RingMatrix::from_fn(n, |i, j| {
                let x = -a.get(i, j).clone();
                if i == j {
                    x + int(t as i64)
                } else {
                    x
                }
            });
            det(&shifted)
        })
        .collect();
    // Vandermonde system V c = values with V[t][k] = t^k.
    let vander = RingMatrix::from_fn(n + 1, |t, k| {
        let mut p = Rational::one();
        for _ in 0..k {
            p *= int(t as i64);
        }
        p
    });
    let v_inv = inverse(&vander).expect("Vandermonde on distinct nodes is invertible");
    (0..=n)
        .map(|k| (0..=n).map(|t| v_inv.get(k, t) * &values[t]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> RingMatrix<Rational> {
        RingMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn det_and_adj_of_small_matrices() {
        let a = q(&[&[2, 1], &[7, 4]]);
        assert_eq!(det(&a), int(1));
        assert_eq!(adj(&a), q(&[&[4, -1], &[-7, 2]]));
        assert_eq!(det(&q(&[&[1, 2], &[2, 4]])), int(0));
        assert_eq!(det(&q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])), int(-1));
    }

    #[test]
    fn inverse_round_trip_and_singular() {
        let a = q(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = inverse(&a).unwrap();
        let prod = RingMatrix::from_fn(3, |i, j| (0..3).map(|k| a.get(i, k) * inv.get(k, j)).sum::<Rational>());
        assert_eq!(prod, q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(inverse(&q(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn classical_char_poly_of_identity() {
        // det(tI - I_2) = t^2 - 2t + 1
        assert_eq!(
            classical_char_poly(&q(&[&[1, 0], &[0, 1]])),
            vec![int(1), int(-2), int(1)]
        );
    }
}
