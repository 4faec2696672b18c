//! Homology in degrees 0 and 1 of a finitely presented group with
//! coefficients in an integral representation, from the presentation
//! 2-complex.
//!
//! Chains are `C_0 = Z^r`, `C_1 = ⊕_gen Z^r`, `C_2 = ⊕_rel Z^r`, with the
//! coefficient index varying fastest inside each block and blocks in
//! presentation order. The boundaries are
//!
//! ```text
//! d1(<e> ⊗ c) = (e^-1 - 1) c
//! d2(<w> ⊗ c) = Σ_k <w_k> ⊗ (w_1 ... w_{k-1})^-1 c
//! ```
//!
//! with the convention `<e^-1> ⊗ c := -<e> ⊗ e c`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fgab::{FgAbelianGroup, Order, Subquotient};
use crate::linalg::{cokernel_invariants, IntMatrix, SparseVec};
use crate::presentation::{GroupPresentation, IntRepresentation};

/// `C_2 --d2--> C_1 --d1--> C_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub d1: IntMatrix,
    pub d2: IntMatrix,
}

/// Position of `<block> ⊗ coefficient` in `C_1` or `C_2`.
pub fn chain_index(block: usize, coefficient: usize, rank: usize) -> usize {
    block * rank + coefficient
}

/// Order of a cycle's class in `H_1`, and whether the class generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    pub order: Order,
    pub generates_h1: bool,
}

fn checked_rep(pres: &GroupPresentation, rep: &IntRepresentation) -> Result<IntRepresentation> {
    let rep = rep.with_presentation(pres.clone())?;
    let check = rep.validate();
    if !check.valid {
        return Err(Error::InvalidRepresentation(check.failure.unwrap_or_default()));
    }
    Ok(rep)
}

/// Boundary matrices of the presentation complex; `d1 * d2 = 0` is checked.
pub fn chain_boundaries(pres: &GroupPresentation, rep: &IntRepresentation) -> Result<ChainComplex> {
    let rep = checked_rep(pres, rep)?;
    let r = rep.rank();
    let n = pres.generator_count();
    let id = IntMatrix::identity(r);

    let mut d1_cols = Vec::with_capacity(n * r);
    for s in 0..n {
        let block = rep.inverse_image(s).try_sub(&id)?;
        d1_cols.extend(block.into_columns());
    }
    let d1 = IntMatrix::from_columns(r, d1_cols)?;

    let mut d2_cols = Vec::with_capacity(pres.relator_count() * r);
    for w in pres.relators() {
        let mut blocks: Vec<Option<IntMatrix>> = vec![None; n];
        let mut add = |s: usize, m: &IntMatrix, sign: bool| {
            let m = if sign { m.clone() } else { -m };
            blocks[s] = Some(match blocks[s].take() {
                None => m,
                Some(b) => b.try_add(&m).unwrap(),
            });
        };
        // Inverse of the prefix product.
        let mut pinv = IntMatrix::identity(r);
        for l in w.letters() {
            let s = l.generator;
            if l.inverse {
                pinv = rep.image(s) * &pinv;
                add(s, &pinv, false);
            } else {
                add(s, &pinv, true);
                pinv = rep.inverse_image(s) * &pinv;
            }
        }
        for c in 0..r {
            let mut entries = Vec::new();
            for (s, b) in blocks.iter().enumerate() {
                if let Some(b) = b {
                    for (i, v) in b.column(c).entries() {
                        entries.push((chain_index(s, *i, r), v.clone()));
                    }
                }
            }
            d2_cols.push(SparseVec::from_entries(entries));
        }
    }
    let d2 = IntMatrix::from_columns(n * r, d2_cols)?;
    if !d1.try_mul(&d2)?.is_zero() {
        return Err(Error::ComplexNotExact);
    }
    Ok(ChainComplex { d1, d2 })
}

impl ChainComplex {
    /// `(rank C_2, rank C_1, rank C_0)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d2.cols(), self.d1.cols(), self.d1.rows())
    }

    pub fn h0(&self) -> FgAbelianGroup {
        cokernel_invariants(&self.d1)
    }

    pub fn h1(&self) -> Result<FgAbelianGroup> {
        FgAbelianGroup::subquotient(&self.d2, &self.d1)
    }

    pub fn cycle_class_order(&self, cycle: &SparseVec) -> Result<CycleClass> {
        if cycle.max_index().is_some_and(|i| i >= self.d1.cols()) {
            return Err(Error::DimensionMismatch(format!("cycle longer than {}", self.d1.cols())));
        }
        if !self.d1.mul_vec(cycle).is_zero() {
            return Err(Error::NotACycle);
        }
        let sq = Subquotient::new(&self.d2, &self.d1)?;
        let (order, generates_h1) = sq.class_order(cycle)?;
        Ok(CycleClass { order, generates_h1 })
    }
}

/// `H_0 = C_0 / im d1`, the coinvariants of the coefficient module.
pub fn homology_h0(pres: &GroupPresentation, rep: &IntRepresentation) -> Result<FgAbelianGroup> {
    Ok(chain_boundaries(pres, rep)?.h0())
}

/// `H_1 = ker d1 / im d2`.
///
/// ```
/// use mclag::homology::homology_h1;
/// use mclag::symplectic::s2l_representation;
///
/// let rep = s2l_representation(3).unwrap();
/// let h1 = homology_h1(rep.presentation(), &rep).unwrap();
/// assert_eq!(h1.to_string(), "Z/2");
/// ```
pub fn homology_h1(pres: &GroupPresentation, rep: &IntRepresentation) -> Result<FgAbelianGroup> {
    chain_boundaries(pres, rep)?.h1()
}

pub fn cycle_class_order(
    pres: &GroupPresentation,
    rep: &IntRepresentation,
    cycle: &SparseVec,
) -> Result<CycleClass> {
    chain_boundaries(pres, rep)?.cycle_class_order(cycle)
}

/// The chain `<generator> ⊗ basis_vector` in `C_1`.
pub fn elementary_chain(generator: usize, coefficient: usize, rank: usize) -> SparseVec {
    SparseVec::unit(chain_index(generator, coefficient, rank), BigInt::one())
}
