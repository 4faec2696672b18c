//! Smith normal form over the integers.
//!
//! The elimination always pivots on a nonzero entry of minimal absolute
//! value in the active submatrix, ties broken by lowest row and then lowest
//! column. Every step is an elementary unimodular operation, so the row and
//! column certificates are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// A certified Smith decomposition `u * a * v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `d`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

type Dense = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct Work {
    a: Dense,
    rows: usize,
    cols: usize,
    // Row certificate (rows x rows) and column certificate (cols x cols).
    u: Option<Dense>,
    v: Option<Dense>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some(u) = &mut self.u {
            u.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in &mut self.a {
            row.swap(j, k);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(j, k);
            }
        }
    }

    /// row_i -= q * row_k, with columns below `from` known to be zero in row_k.
    fn row_axpy(&mut self, i: usize, k: usize, q: &BigInt, from: usize) {
        let (src, dst) = if i < k {
            let (lo, hi) = self.a.split_at_mut(k);
            (&hi[0], &mut lo[i])
        } else {
            let (lo, hi) = self.a.split_at_mut(i);
            (&lo[k], &mut hi[0])
        };
        for j in from..self.cols {
            if !src[j].is_zero() {
                dst[j] -= q * &src[j];
            }
        }
        if let Some(u) = &mut self.u {
            let row_k = u[k].clone();
            for (x, y) in u[i].iter_mut().zip(&row_k) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
    }

    /// col_j -= q * col_k, touching only rows at or below `from` of `a`.
    fn col_axpy(&mut self, j: usize, k: usize, q: &BigInt, from: usize) {
        for row in &mut self.a[from..] {
            if !row[k].is_zero() {
                let t = q * &row[k];
                row[j] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[k].is_zero() {
                    let t = q * &row[k];
                    row[j] -= t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut factors = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_abs_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t].clone();
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = &self.a[i][t] / &p;
                        if !q.is_zero() {
                            self.row_axpy(i, t, &q, t);
                        }
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = &self.a[t][j] / &p;
                        if !q.is_zero() {
                            self.col_axpy(j, t, &q, t);
                        }
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if !dirty {
                    // Pivot row and column are clear; enforce divisibility.
                    let offending = (t + 1..self.rows).find(|&i| {
                        (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p))
                    });
                    match offending {
                        None => break,
                        Some(i) => {
                            let minus_one = -BigInt::one();
                            self.row_axpy(t, i, &minus_one, t);
                        }
                    }
                }
                let (pi, pj) = self
                    .min_abs_entry(t)
                    .expect("active submatrix cannot vanish while the pivot is nonzero");
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a[t][t].clone());
            t += 1;
        }
        factors
    }
}

/// Certified Smith normal form of `a`.
///
/// ```
/// use mclag::linalg::{smith_normal_form, IntMatrix};
/// use num_bigint::BigInt;
///
/// let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
/// let snf = smith_normal_form(&a);
/// assert_eq!(snf.invariant_factors, vec![BigInt::from(2), BigInt::from(4)]);
/// assert_eq!(&(&snf.u * &a) * &snf.v, snf.d);
/// ```
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut work = Work {
        a: a.to_dense_rows(),
        rows,
        cols,
        u: Some(identity(rows)),
        v: Some(identity(cols)),
    };
    let factors = work.run();
    let u = work.u.take().unwrap();
    let v = work.v.take().unwrap();
    SmithDecomposition {
        d: IntMatrix::diagonal(rows, cols, &factors),
        u: IntMatrix::from_dense_rows(rows, rows, u).unwrap(),
        v: IntMatrix::from_dense_rows(cols, cols, v).unwrap(),
        invariant_factors: factors,
    }
}

/// Inverse of a unimodular matrix, from the certificates: `u a v = 1`
/// gives `a^-1 = v u`. `None` when `a` is not square with determinant +-1.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let snf = smith_normal_form(a);
    snf.d.is_identity().then(|| &snf.v * &snf.u)
}

/// Invariant factors of a dense matrix, without certificates.
pub(crate) fn dense_invariant_factors(a: Dense, cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut work = Work { a, rows, cols, u: None, v: None };
    work.run()
}

/// Determinant by fraction-free (Bareiss) elimination. `None` for
/// non-square input.
pub fn determinant(a: &IntMatrix) -> Option<BigInt> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    if n == 0 {
        return Some(BigInt::one());
    }
    let mut m = a.to_dense_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Some(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Some(sign * &m[n - 1][n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[[i64; 2]]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_rows(rows))
            .invariant_factors
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(factors(&[[1, 0], [0, 1]]), vec![1, 1]);
        let z = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert!(z.invariant_factors.is_empty());
        assert!(z.d.is_zero());
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2, |det| = 8.
        assert_eq!(factors(&[[2, 4], [6, 8]]), vec![2, 4]);
    }

    #[test]
    fn divisibility_is_enforced() {
        assert_eq!(factors(&[[2, 0], [0, 3]]), vec![1, 6]);
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (3, 0), (0, 4)] {
            let s = smith_normal_form(&IntMatrix::zeros(r, c));
            assert_eq!((s.u.rows(), s.v.rows()), (r, c));
            assert!(s.invariant_factors.is_empty());
        }
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
        assert_eq!(determinant(&m), Some(BigInt::from(4)));
        let p = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(determinant(&p), Some(BigInt::from(-1)));
        assert_eq!(determinant(&IntMatrix::zeros(2, 3)), None);
    }

    #[test]
    fn inverses() {
        let a = IntMatrix::from_rows(&[[2, 3], [1, 2]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(unimodular_inverse(&IntMatrix::from_rows(&[[2, 0], [0, 1]])), None);
    }
}
