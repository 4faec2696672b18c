//! Finitely generated abelian groups up to isomorphism.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{lattice_factors, ColumnEchelon, IntMatrix, SparseVec};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
///
/// The constructor canonicalizes, so `==` is isomorphism.
///
/// ```
/// use mclag::FgAbelianGroup;
///
/// let a = FgAbelianGroup::from_i64(0, &[2, 3]);
/// assert_eq!(a, FgAbelianGroup::cyclic(6));
/// assert_eq!(a.to_string(), "Z/6");
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct Repr {
    free_rank: usize,
    #[serde(with = "crate::json::bigint_seq")]
    invariant_factors: Vec<BigInt>,
}

impl TryFrom<Repr> for FgAbelianGroup {
    type Error = String;

    fn try_from(r: Repr) -> std::result::Result<Self, String> {
        if r.invariant_factors.iter().any(|d| !d.is_positive()) {
            return Err("invariant factors must be positive".into());
        }
        Ok(FgAbelianGroup::new(r.free_rank, r.invariant_factors))
    }
}

impl From<FgAbelianGroup> for Repr {
    fn from(g: FgAbelianGroup) -> Repr {
        Repr { free_rank: g.free_rank, invariant_factors: g.invariant_factors }
    }
}

/// Order of an element of an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl FgAbelianGroup {
    /// Builds the canonical form of `Z^free_rank ⊕ ⊕ Z/|t|`. Zero entries of
    /// `torsion` count as free summands and units are dropped.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut t: Vec<BigInt> = Vec::with_capacity(torsion.len());
        for d in torsion {
            if d.is_zero() {
                free_rank += 1;
            } else {
                let d = d.abs();
                if !d.is_one() {
                    t.push(d);
                }
            }
        }
        // Pairwise (gcd, lcm) leaves t[i] dividing every later entry.
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let g = t[i].gcd(&t[j]);
                let l = t[i].lcm(&t[j]);
                t[i] = g;
                t[j] = l;
            }
        }
        t.retain(|d| !d.is_one());
        FgAbelianGroup { free_rank, invariant_factors: t }
    }

    pub fn from_i64(free_rank: usize, torsion: &[i64]) -> Self {
        Self::new(free_rank, torsion.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn trivial() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Vec::new())
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(0, vec![BigInt::from(n)])
    }

    /// `(Z/n)^k`.
    pub fn elementary(n: u64, k: usize) -> Self {
        Self::new(0, vec![BigInt::from(n); k])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Number of cyclic summands of even order, i.e. the dimension of the
    /// group tensored with `Z/2` minus the free rank.
    pub fn two_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_even()).count()
    }

    /// `Z^generators / (column span of relations)`.
    pub fn from_relation_matrix(generators: usize, relations: &IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(Self::from_relations(generators, relations.columns().to_vec()))
    }

    pub(crate) fn from_relations(generators: usize, relations: Vec<SparseVec>) -> Self {
        let f = lattice_factors(generators, relations);
        Self::new(generators - f.rank, f.torsion)
    }

    /// `ker(d1) / im(d2)`.
    ///
    /// The kernel basis comes from a column echelon form, so it is saturated
    /// and every column of `d2` has integral coordinates in it.
    pub fn subquotient(d2: &IntMatrix, d1: &IntMatrix) -> Result<Self> {
        Ok(Subquotient::new(d2, d1)?.group())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut t = self.invariant_factors.clone();
        t.extend(other.invariant_factors.iter().cloned());
        Self::new(self.free_rank + other.free_rank, t)
    }

    pub fn iso_equal(&self, other: &Self) -> bool {
        self == other
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let k = self.invariant_factors[i..].iter().take_while(|e| *e == d).count();
            parts.push(if k == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{k}") });
            i += k;
        }
        f.write_str(&parts.join(" + "))
    }
}

/// A presented quotient `Z^n / R` together with its relation lattice, for
/// element-level questions about classes.
#[derive(Clone, Debug)]
pub(crate) struct PresentedGroup {
    generators: usize,
    relations: Vec<SparseVec>,
    group: FgAbelianGroup,
}

impl PresentedGroup {
    pub fn new(generators: usize, relations: Vec<SparseVec>) -> Self {
        let group = FgAbelianGroup::from_relations(generators, relations.clone());
        PresentedGroup { generators, relations, group }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Order of the class of `z` and whether that class generates.
    pub fn class_order(&self, z: &SparseVec) -> (Order, bool) {
        let mut rel = self.relations.clone();
        rel.push(z.clone());
        let quotient = FgAbelianGroup::from_relations(self.generators, rel);
        let generates = quotient.is_trivial();
        if quotient.free_rank < self.group.free_rank {
            return (Order::Infinite, generates);
        }
        let order = self.group.torsion_order() / quotient.torsion_order();
        (Order::Finite(order), generates)
    }
}

/// `ker(d1) / im(d2)` presented on a saturated kernel basis.
#[derive(Clone, Debug)]
pub(crate) struct Subquotient {
    kernel: ColumnEchelon,
    presented: PresentedGroup,
}

impl Subquotient {
    pub fn new(d2: &IntMatrix, d1: &IntMatrix) -> Result<Self> {
        if d1.cols() != d2.rows() {
            return Err(Error::DimensionMismatch(format!(
                "d1 is {}x{} but d2 is {}x{}",
                d1.rows(),
                d1.cols(),
                d2.rows(),
                d2.cols()
            )));
        }
        if !d1.try_mul(d2)?.is_zero() {
            return Err(Error::ComplexNotExact);
        }
        let k = crate::linalg::kernel_basis(d1);
        let kernel = ColumnEchelon::new(&k);
        let coords = d2
            .columns()
            .iter()
            .map(|c| kernel.solve(c))
            .collect::<Result<Vec<_>>>()?;
        let presented = PresentedGroup::new(k.cols(), coords);
        Ok(Subquotient { kernel, presented })
    }

    pub fn group(&self) -> FgAbelianGroup {
        self.presented.group().clone()
    }

    /// Coordinates of a cycle in the kernel basis; `NotACycle` otherwise.
    pub fn class_order(&self, cycle: &SparseVec) -> Result<(Order, bool)> {
        let coords = self.kernel.solve(cycle).map_err(|e| match e {
            Error::NotInLattice => Error::NotACycle,
            other => other,
        })?;
        Ok(self.presented.class_order(&coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(FgAbelianGroup::from_i64(0, &[2, 3]), FgAbelianGroup::cyclic(6));
        assert_eq!(FgAbelianGroup::from_i64(0, &[4, 6]).invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(FgAbelianGroup::from_i64(1, &[1, 0, -2]), FgAbelianGroup::from_i64(2, &[2]));
        assert_ne!(FgAbelianGroup::free(1), FgAbelianGroup::cyclic(2));
        assert_ne!(FgAbelianGroup::from_i64(2, &[4]), FgAbelianGroup::from_i64(2, &[2]));
    }

    #[test]
    fn relation_matrices() {
        let g = FgAbelianGroup::from_relation_matrix(2, &IntMatrix::from_rows(&[[2, 0], [0, 3]])).unwrap();
        assert_eq!(g, FgAbelianGroup::cyclic(6));
        let g = FgAbelianGroup::from_relation_matrix(3, &IntMatrix::zeros(3, 0)).unwrap();
        assert_eq!(g, FgAbelianGroup::free(3));
        let g = FgAbelianGroup::from_relation_matrix(1, &IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(g, FgAbelianGroup::cyclic(2));
        assert!(FgAbelianGroup::from_relation_matrix(2, &IntMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn subquotient_examples() {
        let n = 4;
        let z = IntMatrix::zeros(n, n);
        assert_eq!(FgAbelianGroup::subquotient(&z, &z).unwrap(), FgAbelianGroup::free(n));
        let id = IntMatrix::identity(n);
        assert!(FgAbelianGroup::subquotient(&id, &z).unwrap().is_trivial());
        assert_eq!(FgAbelianGroup::subquotient(&id, &id), Err(Error::ComplexNotExact));
    }

    #[test]
    fn sums() {
        let a = FgAbelianGroup::from_i64(4, &[2, 2, 2]);
        assert_eq!(a.direct_sum(&FgAbelianGroup::free(6)), FgAbelianGroup::from_i64(10, &[2, 2, 2]));
        assert_eq!(a.direct_sum(&FgAbelianGroup::trivial()), a);
        let two = FgAbelianGroup::cyclic(2);
        assert_eq!(two.direct_sum(&two).invariant_factors().len(), 2);
    }

    #[test]
    fn display_and_json() {
        let a = FgAbelianGroup::from_i64(10, &[2, 2, 2, 4]);
        assert_eq!(a.to_string(), "Z^10 + (Z/2)^3 + Z/4");
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        let text = a.to_json();
        assert_eq!(text, r#"{"free_rank":10,"invariant_factors":[2,2,2,4]}"#);
        assert_eq!(FgAbelianGroup::from_json(&text).unwrap(), a);
        assert!(FgAbelianGroup::from_json(r#"{"free_rank":0,"invariant_factors":[0]}"#).is_err());
    }

    #[test]
    fn element_orders() {
        // Z + Z/4 on generators (a, b) with relation 4b.
        let p = PresentedGroup::new(2, vec![SparseVec::from_i64(&[0, 4])]);
        assert_eq!(p.class_order(&SparseVec::from_i64(&[0, 2])), (Order::Finite(BigInt::from(2)), false));
        assert_eq!(p.class_order(&SparseVec::from_i64(&[1, 0])), (Order::Infinite, false));
        assert_eq!(p.class_order(&SparseVec::new()), (Order::Finite(BigInt::one()), false));
        let c = PresentedGroup::new(1, vec![SparseVec::from_i64(&[4])]);
        assert_eq!(c.class_order(&SparseVec::from_i64(&[3])), (Order::Finite(BigInt::from(4)), true));
    }
}
