//! Johnson's Boolean algebra `B` over `H ⊗ Z/2` and the fiber-product model
//! `∧^3 H ×_{∧^3(H ⊗ Z/2)} B^3` of `H_1` of the Torelli group, with the
//! action of `Sp(2g, Z)`.
//!
//! `B` is the commutative `Z/2`-algebra on symbols `v̄` with `v̄^2 = v̄` and
//! `(v + w)‾ = v̄ + w̄ + μ(v, w)`. On the basis `x_1..x_g, y_1..y_g` it is the
//! algebra of squarefree polynomials in `x̄_i, ȳ_i`, so an element is a set
//! of monomials, each a bit mask over the `2g` basis symbols.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::coinvariants::{ActionModule, ModuleAutomorphism};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, SparseVec};
use crate::symplectic::{combinations, induced_rep, Construction, SpMatrix};

/// An element of `B`: a sum of distinct squarefree monomials over `Z/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BElement {
    g: usize,
    terms: BTreeSet<u32>,
}

impl BElement {
    pub fn zero(g: usize) -> Self {
        assert!(2 * g <= 32, "genus {g} exceeds the 32-symbol monomial encoding");
        BElement { g, terms: BTreeSet::new() }
    }

    pub fn one(g: usize) -> Self {
        Self::monomial(g, 0)
    }

    /// The monomial whose symbols are the set bits of `mask`; bit `k` is
    /// basis vector `k` of `H`.
    pub fn monomial(g: usize, mask: u32) -> Self {
        let mut e = Self::zero(g);
        e.terms.insert(mask);
        e
    }

    /// Sum of monomials; repeated monomials cancel in pairs.
    pub fn from_monomials(g: usize, masks: impl IntoIterator<Item = u32>) -> Self {
        let mut e = Self::zero(g);
        for m in masks {
            e.toggle(m);
        }
        e
    }

    /// `x̄_i` (1-based).
    pub fn x(g: usize, i: usize) -> Self {
        Self::monomial(g, 1 << (i - 1))
    }

    /// `ȳ_i` (1-based).
    pub fn y(g: usize, i: usize) -> Self {
        Self::monomial(g, 1 << (g + i - 1))
    }

    fn toggle(&mut self, m: u32) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.iter().copied()
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.terms.contains(&mask)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|m| m.count_ones()).max()
    }

    /// Lies in the filtration level `B^i`.
    pub fn in_filtration(&self, i: u32) -> bool {
        self.degree().is_none_or(|d| d <= i)
    }

    pub fn add(&self, other: &BElement) -> BElement {
        assert_eq!(self.g, other.g, "genus mismatch");
        let terms = self.terms.symmetric_difference(&other.terms).copied().collect();
        BElement { g: self.g, terms }
    }

    pub fn mul(&self, other: &BElement) -> BElement {
        b_multiply(self, other)
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let g = self.g;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&m| {
                if m == 0 {
                    return "1".to_string();
                }
                (0..2 * g)
                    .filter(|k| m & (1 << k) != 0)
                    .map(|k| if k < g { format!("x{}", k + 1) } else { format!("y{}", k - g + 1) })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Product in `B`: monomials multiply by union of symbols (`v̄^2 = v̄`).
pub fn b_multiply(a: &BElement, b: &BElement) -> BElement {
    assert_eq!(a.g, b.g, "genus mismatch");
    let mut out = BElement::zero(a.g);
    for &p in &a.terms {
        for &q in &b.terms {
            out.toggle(p | q);
        }
    }
    out
}

/// Number of `i` with both `x_i` and `y_i` in the mask, mod 2. This is
/// `Σ_{a<b} μ(e_a, e_b)` over the basis vectors of the mask.
fn pairing_parity(g: usize, mask: u32) -> bool {
    let low = (1u32 << g) - 1;
    ((mask & low) & (mask >> g)).count_ones() % 2 == 1
}

/// `μ(v, w) mod 2` for vectors given as masks.
pub fn mu_mod2(g: usize, v: u32, w: u32) -> bool {
    let low = (1u32 << g) - 1;
    let a = (v & low) & (w >> g);
    let b = (v >> g) & (w & low);
    (a.count_ones() + b.count_ones()) % 2 == 1
}

/// `v̄` for `v ∈ H ⊗ Z/2` given as a bit mask, expanded over the basis in
/// coordinate order.
///
/// ```
/// use mclag::johnson::{bar_expand, BElement};
///
/// // x1 + y1 ↦ x̄1 + ȳ1 + 1
/// let v = bar_expand(3, 0b001_001);
/// let want = BElement::x(3, 1).add(&BElement::y(3, 1)).add(&BElement::one(3));
/// assert_eq!(v, want);
/// ```
pub fn bar_expand(g: usize, v: u32) -> BElement {
    let order: Vec<usize> = (0..2 * g).collect();
    bar_expand_in_order(g, v, &order)
}

/// `v̄` built one basis vector at a time in the given order, each step
/// applying `(u + e)‾ = ū + ē + μ(u, e)`.
pub fn bar_expand_in_order(g: usize, v: u32, order: &[usize]) -> BElement {
    let mut acc = BElement::zero(g);
    let mut partial = 0u32;
    for &k in order {
        if v & (1 << k) == 0 {
            continue;
        }
        let e = 1u32 << k;
        if partial == 0 {
            acc = BElement::monomial(g, e);
        } else {
            acc = acc.add(&BElement::monomial(g, e));
            if mu_mod2(g, partial, e) {
                acc = acc.add(&BElement::one(g));
            }
        }
        partial |= e;
    }
    debug_assert_eq!(partial, v);
    debug_assert_eq!(
        acc,
        BElement::from_monomials(
            g,
            (0..2 * g).filter(|k| v & (1 << k) != 0).map(|k| 1 << k).chain(pairing_parity(g, v).then_some(0))
        )
    );
    acc
}

/// Choice of lift `b_e ∈ B^3` for each basis triple `e = u ∧ v ∧ w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReferenceLift {
    /// `b_e = ū v̄ w̄`.
    Monomial,
    /// `b_e = ū v̄ w̄ + ū v̄`; a different lift for cross-checks.
    ShiftedByPair,
}

/// An element of the fiber product in canonical coordinates: the `B^3`
/// component is `Σ (n_e mod 2) b_e + beta` with `beta ∈ B^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorelliClass {
    pub n: Vec<BigInt>,
    pub beta: BElement,
}

impl TorelliClass {
    pub fn add(&self, other: &TorelliClass) -> TorelliClass {
        TorelliClass {
            n: self.n.iter().zip(&other.n).map(|(a, b)| a + b).collect(),
            beta: self.beta.add(&other.beta),
        }
    }

    pub fn sub(&self, other: &TorelliClass) -> TorelliClass {
        TorelliClass {
            n: self.n.iter().zip(&other.n).map(|(a, b)| a - b).collect(),
            beta: self.beta.add(&other.beta),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.n.iter().all(|x| x.is_zero()) && self.beta.is_zero()
    }
}

/// Bases and lifts for the fiber-product model at genus `g`.
#[derive(Clone, Debug)]
pub struct TorelliModel {
    g: usize,
    lift: ReferenceLift,
    triples: Vec<u32>,
    triple_index: HashMap<u32, usize>,
    /// `1`, then `ē_k`, then `ē_a ē_b` (`a < b`), in basis order.
    b2_basis: Vec<u32>,
    b2_index: HashMap<u32, usize>,
}

/// `σ` prepared for repeated action: its `∧^3` matrix and `ē_k ↦ (σ e_k)‾`.
#[derive(Clone, Debug)]
pub struct PreparedAction {
    wedge3: IntMatrix,
    images: Vec<BElement>,
}

fn masks_of(g: usize, k: usize) -> Vec<u32> {
    combinations(2 * g, k).iter().map(|c| c.iter().fold(0u32, |m, &i| m | (1 << i))).collect()
}

impl TorelliModel {
    pub fn new(g: usize) -> Self {
        Self::with_lift(g, ReferenceLift::Monomial)
    }

    pub fn with_lift(g: usize, lift: ReferenceLift) -> Self {
        assert!(2 * g <= 32, "genus {g} exceeds the 32-symbol monomial encoding");
        let triples = masks_of(g, 3);
        let triple_index = triples.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut b2_basis = vec![0u32];
        b2_basis.extend(masks_of(g, 1));
        b2_basis.extend(masks_of(g, 2));
        let b2_index = b2_basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        TorelliModel { g, lift, triples, triple_index, b2_basis, b2_index }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// `C(2g, 3)`.
    pub fn free_rank(&self) -> usize {
        self.triples.len()
    }

    /// `1 + 2g + C(2g, 2)`.
    pub fn torsion_rank(&self) -> usize {
        self.b2_basis.len()
    }

    /// Masks of the `∧^3 H` basis triples in coordinate order.
    pub fn triples(&self) -> &[u32] {
        &self.triples
    }

    pub fn b2_basis(&self) -> &[u32] {
        &self.b2_basis
    }

    pub fn triple_index(&self, mask: u32) -> Option<usize> {
        self.triple_index.get(&mask).copied()
    }

    fn lift_of(&self, e: usize) -> BElement {
        let m = self.triples[e];
        match self.lift {
            ReferenceLift::Monomial => BElement::monomial(self.g, m),
            ReferenceLift::ShiftedByPair => {
                // Drop the highest symbol to get ū v̄.
                let top = 31 - m.leading_zeros();
                BElement::from_monomials(self.g, [m, m & !(1 << top)])
            }
        }
    }

    /// The full `B^3` component.
    pub fn full(&self, t: &TorelliClass) -> BElement {
        let mut acc = t.beta.clone();
        for (e, n) in t.n.iter().enumerate() {
            if n.is_odd() {
                acc = acc.add(&self.lift_of(e));
            }
        }
        acc
    }

    /// Canonical coordinates of `(n, full)`; fails if `full` does not
    /// reduce to `n mod 2` modulo `B^2`.
    pub fn from_full(&self, n: Vec<BigInt>, full: &BElement) -> Result<TorelliClass> {
        if n.len() != self.free_rank() {
            return Err(Error::DimensionMismatch(format!("{} lattice coordinates for {}", n.len(), self.free_rank())));
        }
        let mut beta = full.clone();
        for (e, x) in n.iter().enumerate() {
            if x.is_odd() {
                beta = beta.add(&self.lift_of(e));
            }
        }
        if !beta.in_filtration(2) {
            return Err(Error::CompatibilityViolation(format!("B^3 part {full} does not match the lattice part mod 2")));
        }
        Ok(TorelliClass { n, beta })
    }

    /// `(e, b_e)` for each basis triple, then `(0, β)` for each `B^2`
    /// monomial.
    pub fn canonical_generators(&self) -> Vec<TorelliClass> {
        let a = self.free_rank();
        let mut out = Vec::with_capacity(a + self.torsion_rank());
        for e in 0..a {
            let mut n = vec![BigInt::zero(); a];
            n[e] = BigInt::one();
            out.push(TorelliClass { n, beta: BElement::zero(self.g) });
        }
        for &m in &self.b2_basis {
            out.push(TorelliClass { n: vec![BigInt::zero(); a], beta: BElement::monomial(self.g, m) });
        }
        out
    }

    pub fn prepare(&self, s: &SpMatrix) -> Result<PreparedAction> {
        if s.genus() != self.g {
            return Err(Error::DimensionMismatch(format!("genus {} element for genus {} model", s.genus(), self.g)));
        }
        let wedge3 = induced_rep(s.matrix(), Construction::Wedge3)?;
        let images = (0..2 * self.g)
            .map(|k| {
                let mask = s.matrix().column(k).entries().iter().filter(|(_, v)| v.is_odd()).fold(0u32, |m, (i, _)| m | (1 << i));
                bar_expand(self.g, mask)
            })
            .collect();
        Ok(PreparedAction { wedge3, images })
    }

    fn apply_algebra_map(&self, p: &PreparedAction, x: &BElement) -> BElement {
        let mut out = BElement::zero(self.g);
        for m in x.monomials() {
            let mut term = BElement::one(self.g);
            for k in 0..2 * self.g {
                if m & (1 << k) != 0 {
                    term = b_multiply(&term, &p.images[k]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn act_prepared(&self, p: &PreparedAction, t: &TorelliClass) -> Result<TorelliClass> {
        let n = p.wedge3.mul_vec(&SparseVec::from_dense(&t.n)).to_dense(self.free_rank());
        let full = self.apply_algebra_map(p, &self.full(t));
        self.from_full(n, &full)
    }

    /// `σ · t`, acting diagonally: `∧^3 σ` on the lattice part and the
    /// algebra map `ē_k ↦ (σ e_k)‾` on `B^3`.
    pub fn sp_act(&self, s: &SpMatrix, t: &TorelliClass) -> Result<TorelliClass> {
        self.act_prepared(&self.prepare(s)?, t)
    }

    /// Coordinates over [`Self::canonical_generators`]: lattice part, then
    /// indicators of the `B^2` monomials of `beta`.
    pub fn coordinates(&self, t: &TorelliClass) -> SparseVec {
        let a = self.free_rank();
        let mut entries: Vec<(usize, BigInt)> =
            t.n.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        for m in t.beta.monomials() {
            entries.push((a + self.b2_index[&m], BigInt::one()));
        }
        SparseVec::from_entries(entries)
    }

    /// The class with lattice part `±e` for a triple of basis vectors in any
    /// order and `B^3` part given explicitly.
    pub fn class(&self, lattice: &[(i64, [usize; 3])], full: &BElement) -> Result<TorelliClass> {
        let mut n = vec![BigInt::zero(); self.free_rank()];
        for (c, t) in lattice {
            let mut sorted = *t;
            let mut sign = *c;
            for i in 0..3 {
                for j in 0..2 - i {
                    if sorted[j] > sorted[j + 1] {
                        sorted.swap(j, j + 1);
                        sign = -sign;
                    } else if sorted[j] == sorted[j + 1] {
                        sign = 0;
                    }
                }
            }
            if sign != 0 {
                let mask = sorted.iter().fold(0u32, |m, &i| m | (1 << i));
                n[self.triple_index[&mask]] += sign;
            }
        }
        self.from_full(n, full)
    }

    /// The model with the given elements acting, for the coinvariants
    /// engine.
    pub fn action_module(&self, elements: &[(String, SpMatrix)]) -> Result<ActionModule> {
        let (a, b) = (self.free_rank(), self.torsion_rank());
        let gens = self.canonical_generators();
        let mut autos = Vec::with_capacity(elements.len());
        for (label, s) in elements {
            let p = self.prepare(s)?;
            let mut fa = Vec::with_capacity(a);
            let mut fb = Vec::with_capacity(a);
            let mut fc = Vec::with_capacity(b);
            for (k, t) in gens.iter().enumerate() {
                let img = self.act_prepared(&p, t)?;
                let coords = self.coordinates(&img);
                let free = coords.remap(|i| (i < a).then_some(i));
                let tors = coords.remap(|i| (i >= a).then(|| i - a));
                if k < a {
                    fa.push(free);
                    fb.push(tors);
                } else {
                    if !free.is_zero() {
                        return Err(Error::CompatibilityViolation(format!("{label} moves a B^2 class off B^2")));
                    }
                    fc.push(tors);
                }
            }
            autos.push(ModuleAutomorphism {
                label: label.clone(),
                a: IntMatrix::from_columns(a, fa)?,
                b: IntMatrix::from_columns(b, fb)?,
                c: IntMatrix::from_columns(b, fc)?,
            });
        }
        ActionModule::new(a, b, autos)
    }
}

/// [`TorelliModel::canonical_generators`] for the monomial lift.
pub fn canonical_generators(g: usize) -> Vec<TorelliClass> {
    TorelliModel::new(g).canonical_generators()
}

/// [`TorelliModel::sp_act`] for the monomial lift.
pub fn sp_act(s: &SpMatrix, t: &TorelliClass) -> Result<TorelliClass> {
    TorelliModel::new(s.genus()).sp_act(s, t)
}

/// The Torelli model with `elements` acting, monomial lift.
pub fn torelli_action_module(g: usize, elements: &[(String, SpMatrix)]) -> Result<ActionModule> {
    if g < 3 {
        return Err(Error::UnsupportedGenus { genus: g, min: 3, max: 16 });
    }
    TorelliModel::new(g).action_module(elements)
}
