use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

/// Column echelon form `a * v = h` with `v` unimodular.
///
/// Columns of `h` are either zero or pivot columns; the pivot column for
/// row `i` has its first nonzero entry in row `i`. The zero columns of `h`
/// select the columns of `v` forming a saturated kernel basis.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    rows: usize,
    reduced: Vec<SparseVec>,
    transform: Vec<SparseVec>,
    /// (row, column) pairs in increasing row order.
    pivots: Vec<(usize, usize)>,
    pivot_of_row: BTreeMap<usize, usize>,
    kernel_cols: Vec<usize>,
}

impl ColumnEchelon {
    pub fn new(a: &IntMatrix) -> Self {
        let n = a.cols();
        let mut reduced: Vec<SparseVec> = a.columns().to_vec();
        let mut transform: Vec<SparseVec> =
            (0..n).map(|j| SparseVec::unit(j, BigInt::from(1))).collect();

        // Columns bucketed by their leading row.
        let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut kernel_cols = Vec::new();
        for (j, c) in reduced.iter().enumerate() {
            match c.lead() {
                Some((i, _)) => buckets.entry(i).or_default().push(j),
                None => kernel_cols.push(j),
            }
        }

        let mut pivots = Vec::new();
        let mut pivot_of_row = BTreeMap::new();
        while let Some((row, mut active)) = buckets.pop_first() {
            while active.len() > 1 {
                // Minimal |entry| in this row, ties to the lowest column.
                let (pos, _) = active
                    .iter()
                    .enumerate()
                    .min_by(|a, b| {
                        let (x, y) = (*a.1, *b.1);
                        let ax = reduced[x].get(row).unwrap().abs();
                        let ay = reduced[y].get(row).unwrap().abs();
                        ax.cmp(&ay).then(x.cmp(&y))
                    })
                    .unwrap();
                let p = active.swap_remove(pos);
                let pivot_val = reduced[p].get(row).unwrap().clone();
                let mut still = vec![p];
                for c in active.drain(..) {
                    let q = reduced[c].get(row).unwrap() / &pivot_val;
                    let neg_q = -q;
                    let (pc, cc) = pair_mut(&mut reduced, p, c);
                    cc.add_scaled(&neg_q, pc);
                    let (pv, cv) = pair_mut(&mut transform, p, c);
                    cv.add_scaled(&neg_q, pv);
                    match reduced[c].lead() {
                        Some((i, _)) if i == row => still.push(c),
                        Some((i, _)) => buckets.entry(i).or_default().push(c),
                        None => kernel_cols.push(c),
                    }
                }
                active = still;
            }
            if let Some(&p) = active.first() {
                pivots.push((row, p));
                pivot_of_row.insert(row, p);
            }
        }
        kernel_cols.sort_unstable();
        ColumnEchelon { rows: a.rows(), reduced, transform, pivots, pivot_of_row, kernel_cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns of the unimodular transform spanning the integer kernel.
    pub fn kernel_basis(&self) -> IntMatrix {
        let cols = self.kernel_cols.iter().map(|&j| self.transform[j].clone()).collect();
        IntMatrix::from_columns(self.transform.len(), cols).unwrap()
    }

    /// An integer solution of `a * x = b`, if one exists.
    pub fn solve(&self, b: &SparseVec) -> Result<SparseVec> {
        if b.max_index().is_some_and(|i| i >= self.rows) {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side longer than {} rows",
                self.rows
            )));
        }
        let mut rest = b.clone();
        let mut x = SparseVec::new();
        while let Some((row, val)) = rest.lead() {
            let Some(&p) = self.pivot_of_row.get(&row) else {
                return Err(Error::NotInLattice);
            };
            let pivot_val = self.reduced[p].get(row).unwrap();
            let (q, r) = val.div_rem(pivot_val);
            if !r.is_zero() {
                return Err(Error::NotInLattice);
            }
            rest.add_scaled(&-&q, &self.reduced[p]);
            x.add_scaled(&q, &self.transform[p]);
        }
        Ok(x)
    }
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

/// Basis of the integer kernel `{x : a x = 0}` as matrix columns. The basis
/// is saturated: it spans the kernel of `a` itself, not a sublattice.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    ColumnEchelon::new(a).kernel_basis()
}

/// Solves `a x = b` over the integers.
///
/// Fails with [`Error::NotInLattice`] when `b` is not an integer combination
/// of the columns of `a`.
pub fn solve_in_column_lattice(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let x = ColumnEchelon::new(a).solve(&SparseVec::from_dense(b))?;
    Ok(x.to_dense(a.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn injective_map_has_empty_kernel() {
        let k = kernel_basis(&IntMatrix::identity(2));
        assert_eq!((k.rows(), k.cols()), (2, 0));
    }

    #[test]
    fn kernel_of_row_sum() {
        let a = IntMatrix::from_rows(&[[1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        let (x, y) = (k.get(0, 0), k.get(1, 0));
        assert_eq!(x.abs(), BigInt::from(1));
        assert_eq!(x, -y);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel spanned by (2,-1), not (4,-2).
        let a = IntMatrix::from_rows(&[[2, 4]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
        let v = [k.get(0, 0), k.get(1, 0)];
        assert_eq!(num_integer::Integer::gcd(&v[0], &v[1]), BigInt::from(1));
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(solve_in_column_lattice(&id, &ints(&[4, -5, 6])).unwrap(), ints(&[4, -5, 6]));
        let two = IntMatrix::from_rows(&[[2]]);
        assert_eq!(solve_in_column_lattice(&two, &ints(&[1])), Err(Error::NotInLattice));
        assert_eq!(solve_in_column_lattice(&two, &ints(&[6])).unwrap(), ints(&[3]));
        assert!(matches!(
            solve_in_column_lattice(&two, &ints(&[1, 2])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_uses_gcd_combinations() {
        let a = IntMatrix::from_rows(&[[6, 10, 15]]);
        let x = solve_in_column_lattice(&a, &ints(&[1])).unwrap();
        let lhs: BigInt = x.iter().zip([6, 10, 15]).map(|(x, c)| x * c).sum();
        assert_eq!(lhs, BigInt::from(1));
    }
}
