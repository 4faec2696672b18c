//! Factors-only Smith path for large sparse relation matrices.
//!
//! Unit pivots are eliminated first in Markowitz order (the +-1 entry whose
//! row and column counts minimize `(r - 1)(c - 1)`). Eliminating a unit pivot
//! removes one generator and one relation without changing the quotient, so
//! only the small remainder goes through the dense normal form.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::smith::dense_invariant_factors;
use super::sparse::SparseVec;
use crate::fgab::FgAbelianGroup;

/// Rank and nontrivial invariant factors of the column lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LatticeFactors {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

fn is_unit(x: &BigInt) -> bool {
    x.magnitude().is_one()
}

pub(crate) fn lattice_factors(rows: usize, columns: Vec<SparseVec>) -> LatticeFactors {
    let mut cols: Vec<Option<SparseVec>> =
        columns.into_iter().map(|c| (!c.is_zero()).then_some(c)).collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        if let Some(c) = c {
            for (i, _) in c.entries() {
                assert!(*i < rows, "column entry at row {i} outside {rows} rows");
                row_cols[*i].insert(j);
            }
        }
    }

    let mut units = 0usize;
    let mut row_alive = vec![true; rows];
    loop {
        // Markowitz search over unit entries; ties to the lowest (column, row).
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for (j, c) in cols.iter().enumerate() {
            let Some(c) = c else { continue };
            let cc = c.nnz() - 1;
            if best.is_some_and(|(cost, _, _)| cost == 0) {
                break;
            }
            for (i, v) in c.entries() {
                if !is_unit(v) {
                    continue;
                }
                let cost = cc * (row_cols[*i].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, *i, j));
                    if cost == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((_, r, j)) = best else { break };

        let pivot_col = cols[j].take().unwrap();
        let s = pivot_col.get(r).unwrap().clone();
        for (i, _) in pivot_col.entries() {
            row_cols[*i].remove(&j);
        }
        let others: Vec<usize> = row_cols[r].iter().copied().collect();
        for k in others {
            let col = cols[k].as_mut().unwrap();
            let factor = -(col.get(r).unwrap() * &s);
            for (i, _) in col.entries() {
                row_cols[*i].remove(&k);
            }
            col.add_scaled(&factor, &pivot_col);
            debug_assert!(col.get(r).is_none());
            for (i, _) in col.entries() {
                row_cols[*i].insert(k);
            }
            if col.is_zero() {
                cols[k] = None;
            }
        }
        row_alive[r] = false;
        units += 1;
    }

    // Dense remainder on the surviving rows.
    let mut new_index = vec![usize::MAX; rows];
    let mut live_rows = 0;
    for (i, alive) in row_alive.iter().enumerate() {
        if *alive {
            new_index[i] = live_rows;
            live_rows += 1;
        }
    }
    let rest: Vec<&SparseVec> = cols.iter().flatten().collect();
    let mut dense = vec![vec![BigInt::zero(); rest.len()]; live_rows];
    for (j, c) in rest.iter().enumerate() {
        for (i, v) in c.entries() {
            dense[new_index[*i]][j] = v.clone();
        }
    }
    let factors = dense_invariant_factors(dense, rest.len());
    LatticeFactors {
        rank: units + factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// The quotient of `Z^rows` by the column span of `a`.
///
/// ```
/// use mclag::linalg::{cokernel_invariants, IntMatrix};
///
/// let a = IntMatrix::from_rows(&[[1, 0], [0, 2]]);
/// assert_eq!(cokernel_invariants(&a).to_string(), "Z/2");
/// assert_eq!(cokernel_invariants(&IntMatrix::zeros(3, 0)).free_rank(), 3);
/// ```
pub fn cokernel_invariants(a: &IntMatrix) -> FgAbelianGroup {
    let f = lattice_factors(a.rows(), a.columns().to_vec());
    FgAbelianGroup::new(a.rows() - f.rank, f.torsion)
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    lattice_factors(a.rows(), a.columns().to_vec()).rank
}

/// True iff the vectors span all of `Z^ambient_rank`.
///
/// # Panics
///
/// If a vector has an entry at an index `>= ambient_rank`.
pub fn generates_full_lattice(vectors: &[SparseVec], ambient_rank: usize) -> bool {
    let f = lattice_factors(ambient_rank, vectors.to_vec());
    f.rank == ambient_rank && f.torsion.is_empty()
}

/// Square with determinant +-1, decided as "square with trivial cokernel".
pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.is_square() && generates_full_lattice(a.columns(), a.rows())
}
