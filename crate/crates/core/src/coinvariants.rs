//! Coinvariants `M_G = M / <σm - m>` of a module `Z^a ⊕ (Z/2)^b` under a
//! finite list of automorphisms.
//!
//! Only generators of the acting group are needed: `(στ)x - x` and
//! `σ^-1 x - x` lie in the span of `sx - x` over generators `s`, by
//! `(στ)x - x = σ(τx) - τx + (τx - x)` and `σ^-1 x - x = -(σ(σ^-1 x) - σ^-1 x)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{FgAbelianGroup, Order, PresentedGroup};
use crate::linalg::{is_unimodular, IntMatrix, SparseVec};
use crate::symplectic::{induced_rep, ul_map, ActingSet, Construction};

/// One acting element on `Z^a ⊕ (Z/2)^b`, in block form
///
/// ```text
/// free gen j    ↦ (column j of a, column j of b)
/// torsion gen k ↦ (0, column k of c)
/// ```
///
/// Entries of `b` and `c` are read mod 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleAutomorphism {
    pub label: String,
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub c: IntMatrix,
}

/// A module `Z^free_rank ⊕ (Z/2)^torsion2_rank` with acting elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionModule {
    pub free_rank: usize,
    pub torsion2_rank: usize,
    pub elements: Vec<ModuleAutomorphism>,
}

/// Order and generation status of a class in the coinvariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantWitness {
    pub order: Order,
    pub is_generator: bool,
}

fn mod2(x: &BigInt) -> bool {
    x.is_odd()
}

/// Invertibility over GF(2) by Gaussian elimination.
fn invertible_mod2(m: &IntMatrix) -> bool {
    let n = m.rows();
    if m.cols() != n {
        return false;
    }
    let mut rows: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for (j, col) in m.columns().iter().enumerate() {
        for (i, v) in col.entries() {
            rows[*i][j] = mod2(v);
        }
    }
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| rows[r][c]) else { return false };
        rows.swap(c, p);
        for r in 0..n {
            if r != c && rows[r][c] {
                let pivot = rows[c].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
    }
    true
}

impl ActionModule {
    /// Checks shapes, unimodularity of each `a` and invertibility of each
    /// `c` over GF(2).
    pub fn new(free_rank: usize, torsion2_rank: usize, elements: Vec<ModuleAutomorphism>) -> Result<Self> {
        let m = ActionModule { free_rank, torsion2_rank, elements };
        m.validate()?;
        Ok(m)
    }

    /// A free module `Z^rank` with the given acting matrices.
    pub fn free(rank: usize, elements: Vec<(String, IntMatrix)>) -> Result<Self> {
        let elements = elements
            .into_iter()
            .map(|(label, a)| ModuleAutomorphism { label, a, b: IntMatrix::zeros(0, rank), c: IntMatrix::zeros(0, 0) })
            .collect();
        Self::new(rank, 0, elements)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (self.free_rank, self.torsion2_rank);
        for e in &self.elements {
            let shape = |m: &IntMatrix| (m.rows(), m.cols());
            if shape(&e.a) != (a, a) || shape(&e.b) != (b, a) || shape(&e.c) != (b, b) {
                return Err(Error::InvalidAction(format!(
                    "{}: blocks have shapes {:?}, {:?}, {:?} for a = {a}, b = {b}",
                    e.label,
                    shape(&e.a),
                    shape(&e.b),
                    shape(&e.c)
                )));
            }
            if !is_unimodular(&e.a) {
                return Err(Error::InvalidAction(format!("{}: free block is not unimodular", e.label)));
            }
            if !invertible_mod2(&e.c) {
                return Err(Error::InvalidAction(format!("{}: torsion block is singular mod 2", e.label)));
            }
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion2_rank
    }

    /// Columns `2 t_k`, then `σ(gen) - gen` for each element and generator,
    /// torsion coordinates lifted to `{0, 1}`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let (a, b) = (self.free_rank, self.torsion2_rank);
        let mut cols = Vec::with_capacity(b + self.elements.len() * (a + b));
        for k in 0..b {
            cols.push(SparseVec::unit(a + k, BigInt::from(2)));
        }
        for e in &self.elements {
            for j in 0..a {
                let mut v = e.a.column(j).clone();
                v.sub(&SparseVec::unit(j, BigInt::one()));
                let tors: Vec<(usize, BigInt)> = e
                    .b
                    .column(j)
                    .entries()
                    .iter()
                    .filter(|(_, x)| mod2(x))
                    .map(|(i, _)| (a + i, BigInt::one()))
                    .collect();
                v.add(&SparseVec::from_entries(tors));
                cols.push(v);
            }
            for k in 0..b {
                let mut bits = vec![false; b];
                for (i, x) in e.c.column(k).entries() {
                    bits[*i] = mod2(x);
                }
                bits[k] ^= true;
                cols.push(SparseVec::from_entries(
                    bits.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| (a + i, BigInt::one())).collect(),
                ));
            }
        }
        IntMatrix::from_columns(a + b, cols).unwrap()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("module serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: ActionModule = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }
}

/// `M_G` as an abstract group.
///
/// ```
/// use mclag::coinvariants::{coinvariants, ActionModule};
/// use mclag::linalg::IntMatrix;
///
/// // Z^2 with the swap: coinvariants Z.
/// let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
/// let m = ActionModule::free(2, vec![("s".into(), swap)]).unwrap();
/// assert_eq!(coinvariants(&m).unwrap().to_string(), "Z");
/// ```
pub fn coinvariants(m: &ActionModule) -> Result<FgAbelianGroup> {
    m.validate()?;
    FgAbelianGroup::from_relation_matrix(m.generator_count(), &m.relation_matrix())
}

/// Order of the class of `element` (coordinates over the `a + b`
/// generators) in `M_G`, and whether it generates `M_G`.
pub fn coinvariant_witness(m: &ActionModule, element: &SparseVec) -> Result<CoinvariantWitness> {
    m.validate()?;
    if element.max_index().is_some_and(|i| i >= m.generator_count()) {
        return Err(Error::InvalidAction(format!("coordinate vector longer than {}", m.generator_count())));
    }
    let p = PresentedGroup::new(m.generator_count(), m.relation_matrix().into_columns());
    let (order, is_generator) = p.class_order(element);
    Ok(CoinvariantWitness { order, is_generator })
}

/// `∧^2(S^2 L)` with each element acting through `ul`, as `b ↦ a b ᵗa` on
/// `S^2 L` and then on its exterior square. Elements of the `S^2 L`
/// subgroup act trivially.
pub fn wedge2_s2l_module(g: usize, acting: ActingSet) -> Result<ActionModule> {
    let r = g * (g + 1) / 2;
    let mut elements = Vec::new();
    for (label, s) in acting.elements(g) {
        let a = ul_map(&s).map_err(|_| Error::InvalidAction(format!("{label} does not act on S^2 L")))?;
        let s2 = induced_rep(&a, Construction::Sym2OfGl)?;
        elements.push((label, induced_rep(&s2, Construction::Wedge2)?));
    }
    ActionModule::free(r * (r - 1) / 2, elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cokernel_invariants;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_unipotent_is_cokernel_of_a_minus_one() {
        let a = IntMatrix::from_rows(&[[1, 2, 0], [0, 1, 4], [0, 0, 1]]);
        let m = ActionModule::free(3, vec![("u".into(), a.clone())]).unwrap();
        let direct = cokernel_invariants(&a.try_sub(&IntMatrix::identity(3)).unwrap());
        assert_eq!(coinvariants(&m).unwrap(), direct);
        assert_eq!(direct, FgAbelianGroup::from_i64(1, &[2, 4]));
    }

    #[test]
    fn torsion_blocks() {
        // Z ⊕ Z/2 with the free generator sent to itself plus the torsion
        // generator: coinvariants Z.
        let e = ModuleAutomorphism {
            label: "t".into(),
            a: IntMatrix::identity(1),
            b: IntMatrix::from_rows(&[[1]]),
            c: IntMatrix::identity(1),
        };
        let m = ActionModule::new(1, 1, vec![e]).unwrap();
        assert_eq!(coinvariants(&m).unwrap(), FgAbelianGroup::free(1));
        let none = ActionModule::new(1, 1, vec![]).unwrap();
        assert_eq!(coinvariants(&none).unwrap(), FgAbelianGroup::from_i64(1, &[2]));
        let w = coinvariant_witness(&none, &SparseVec::from_i64(&[0, 1])).unwrap();
        assert_eq!(w, CoinvariantWitness { order: Order::Finite(2.into()), is_generator: false });
        let w = coinvariant_witness(&none, &SparseVec::new()).unwrap();
        assert_eq!(w.order, Order::Finite(BigInt::one()));
    }

    #[test]
    fn invalid_actions() {
        let bad = ActionModule::free(1, vec![("x".into(), IntMatrix::from_rows(&[[2]]))]);
        assert!(matches!(bad, Err(Error::InvalidAction(_))));
        let e = ModuleAutomorphism {
            label: "c".into(),
            a: IntMatrix::zeros(0, 0),
            b: IntMatrix::zeros(2, 0),
            c: IntMatrix::from_rows(&[[1, 1], [1, 1]]),
        };
        assert!(matches!(ActionModule::new(0, 2, vec![e]), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn lift_choice_is_immaterial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let e = ModuleAutomorphism {
            label: "t".into(),
            a: IntMatrix::from_rows(&[[1, 1], [0, 1]]),
            b: IntMatrix::from_rows(&[[1, 0], [1, 1]]),
            c: IntMatrix::from_rows(&[[1, 1], [0, 1]]),
        };
        let m = ActionModule::new(2, 2, vec![e]).unwrap();
        let rel = m.relation_matrix();
        let base = FgAbelianGroup::from_relation_matrix(4, &rel).unwrap();
        for _ in 0..20 {
            let cols = rel
                .columns()
                .iter()
                .map(|c| {
                    let mut v = c.clone();
                    for row in 2..4 {
                        let shift = 2 * rng.gen_range(-3i64..=3);
                        v.add(&SparseVec::unit(row, shift.into()));
                    }
                    v
                })
                .collect();
            let shifted = IntMatrix::from_columns(4, cols).unwrap();
            assert_eq!(FgAbelianGroup::from_relation_matrix(4, &shifted).unwrap(), base);
        }
    }

    #[test]
    fn json_round_trip() {
        let m = ActionModule::free(2, vec![("s".into(), IntMatrix::from_rows(&[[0, 1], [1, 0]]))]).unwrap();
        let text = m.to_json();
        assert_eq!(ActionModule::from_json(&text).unwrap(), m);
    }

    #[test]
    fn wedge2_s2l_genus_three() {
        let m = wedge2_s2l_module(3, ActingSet::Sl).unwrap();
        assert_eq!(m.free_rank, 15);
        assert_eq!(coinvariants(&m).unwrap(), FgAbelianGroup::cyclic(2));
        // X3^2 ∧ X2^2 = -(X2^2 ∧ X3^2), the pair (1, 2) among 2-subsets of 0..6.
        let idx = crate::symplectic::pair_rank(6, 1, 2);
        let w = coinvariant_witness(&m, &SparseVec::unit(idx, -BigInt::one())).unwrap();
        assert_eq!(w, CoinvariantWitness { order: Order::Finite(2.into()), is_generator: true });
    }
}
