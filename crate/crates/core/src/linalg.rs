//! Exact linear algebra over the integers and rationals: fraction-free
//! Bareiss determinants, an incremental rational row reducer used to grow
//! sample-index sets, and a dense rational solver.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rat;

/// Determinant of a square integer matrix by fraction-free Bareiss
/// elimination. Every intermediate value stays an exact integer.
pub fn bareiss_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by the Bareiss identity
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Incremental Gaussian reducer over the rationals. Vectors are appended
/// one at a time; each is reduced against the stored pivots, and kept only
/// if a nonzero residue remains.
pub struct RowReducer {
    dim: usize,
    /// Reduced rows together with their pivot column.
    rows: Vec<(usize, Vec<Rat>)>,
}

impl RowReducer {
    pub fn new(dim: usize) -> Self {
        RowReducer { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current pivots; if independent, absorb it and
    /// return true.
    pub fn absorb(&mut self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for j in 0..self.dim {
                    if !row[j].is_zero() {
                        let t = &row[j] * &factor;
                        v[j] -= t;
                    }
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            Some(pivot) => {
                let inv = Rat::one() / &v[pivot];
                for c in v.iter_mut() {
                    if !c.is_zero() {
                        *c *= &inv;
                    }
                }
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

/// Solve the dense square rational system `a x = b` by Gaussian
/// elimination with partial pivoting on the first nonzero entry.
/// Returns `None` when the matrix is singular.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut rhs: Vec<Rat> = b.to_vec();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, pivot);
        rhs.swap(k, pivot);
        let inv = Rat::one() / &m[k][k];
        for j in k..n {
            if !m[k][j].is_zero() {
                m[k][j] *= &inv;
            }
        }
        rhs[k] *= &inv;
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..n {
                    if !m[k][j].is_zero() {
                        let t = &m[k][j] * &f;
                        m[i][j] -= t;
                    }
                }
                let t = &rhs[k] * &f;
                rhs[i] -= t;
            }
        }
    }
    Some(rhs)
}
