use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactMatrix, RingSpec, Scalar};
use crate::error::{Error, Result};

/// Smith normal form `u * m * v = d` of an integer matrix.
///
/// `u` and `v` are unimodular, `d` is diagonal with non-negative entries
/// and `d[i] | d[i+1]` for the nonzero part.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: ExactMatrix,
    pub d: ExactMatrix,
    pub v: ExactMatrix,
    /// `u^{-1}`; kept because image bases are columns of it.
    pub u_inv: ExactMatrix,
    pub diagonal: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

type Dense = Vec<Vec<BigInt>>;

fn to_dense(m: &ExactMatrix) -> Dense {
    let ring = m.ring();
    let mut a = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
    for (i, j, v) in m.entries() {
        a[i][j] = ring.to_bigint(v);
    }
    a
}

fn eye(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn from_dense(a: &Dense, cols: usize) -> ExactMatrix {
    let ring = RingSpec::Integers;
    let trip: Vec<(usize, usize, Scalar)> = a
        .iter()
        .enumerate()
        .flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(j, v)| (i, j, ring.from_bigint(v)))
        })
        .collect();
    ExactMatrix::from_triplets(ring, a.len(), cols, trip)
}

// row_i -= q * row_k
fn row_axpy(a: &mut Dense, i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (src, dst) = if i < k {
        let (lo, hi) = a.split_at_mut(k);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[k], &mut hi[0])
    };
    for (x, y) in dst.iter_mut().zip(src.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_axpy(a: &mut Dense, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in a.iter_mut() {
        if !r[k].is_zero() {
            let t = q * &r[k];
            r[j] -= t;
        }
    }
}

fn swap_cols(a: &mut Dense, j: usize, k: usize) {
    for r in a.iter_mut() {
        r.swap(j, k);
    }
}

/// Computes the Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(m: &ExactMatrix) -> Result<Smith> {
    if m.ring() != RingSpec::Integers {
        return Err(Error::RingNotIntegers(m.ring().name()));
    }
    let (rows, cols) = m.shape();
    let mut a = to_dense(m);
    // u acts on rows of a; we track u and u^{-1} (column ops on u_inv).
    let mut u = eye(rows);
    let mut u_inv = eye(rows);
    let mut v = eye(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut u_inv, t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                // u_inv := u_inv * E^{-1}: col_t += q col_i
                col_axpy(&mut u_inv, t, i, &(-&q));
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/col t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                    swap_cols(&mut u_inv, t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    swap_cols(&mut v, t, best.1);
                }
                continue;
            }
            // divisibility: fold an offending row into row t
            let mut offending = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        offending = Some(i);
                        break 'outer;
                    }
                }
            }
            match offending {
                Some(i) => {
                    let m1 = -BigInt::one();
                    row_axpy(&mut a, t, i, &m1);
                    row_axpy(&mut u, t, i, &m1);
                    col_axpy(&mut u_inv, i, t, &BigInt::one());
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
            for r in u_inv.iter_mut() {
                r[t] = -&r[t];
            }
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    Ok(Smith {
        u: from_dense(&u, rows),
        d: from_dense(&a, cols),
        v: from_dense(&v, cols),
        u_inv: from_dense(&u_inv, rows),
        diagonal,
    })
}

/// Determinant over the integers via fraction-free elimination (Bareiss).
pub fn det_integer(m: &ExactMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_dense(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmat(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(RingSpec::Integers, rows)
    }

    #[test]
    fn diag_2_3_has_factors_1_6() {
        let s = smith_normal_form(&zmat(&[vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let m = zmat(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(s.u.mul(&s.u_inv).is_identity());
    }

    #[test]
    fn identity_is_its_own_form() {
        let id = ExactMatrix::identity(RingSpec::Integers, 3);
        let s = smith_normal_form(&id).unwrap();
        assert_eq!(s.d, id);
        assert_eq!(s.diagonal.len(), 3);
    }

    #[test]
    fn rejects_fields() {
        let m = ExactMatrix::identity(RingSpec::Rationals, 2);
        assert!(matches!(smith_normal_form(&m), Err(Error::RingNotIntegers(_))));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(det_integer(&zmat(&[vec![2, 1], vec![7, 4]])), BigInt::from(1));
        assert_eq!(det_integer(&zmat(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
        assert_eq!(
            det_integer(&zmat(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]])),
            BigInt::from(-3)
        );
    }
}
