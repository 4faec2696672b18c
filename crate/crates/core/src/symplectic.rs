//! Integral symplectic matrices, the upper-triangular subgroup urSp(2g),
//! the embeddings of `S^2 L` and `GL(g, Z)`, and induced representations.
//!
//! `H` has the ordered basis `x_1..x_g, y_1..y_g`; `L` is spanned by the
//! `x_i`. Matrices act on column vectors, so column `k` is the image of the
//! `k`-th basis vector.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{generates_full_lattice, rank, unimodular_inverse, IntMatrix, SparseVec};
use crate::presentation::{sl_generator_pairs, GroupPresentation, IntRepresentation};

/// A free module with named, ordered basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedModule {
    labels: Vec<String>,
}

fn pair_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("X{i}{j}")
    } else {
        format!("X{i},{j}")
    }
}

impl BasedModule {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DimensionMismatch(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(BasedModule { labels })
    }

    /// `H = H_1(Σ_{g,1})`: `x1..xg, y1..yg`.
    pub fn h(g: usize) -> Self {
        let labels = (1..=g).map(|i| format!("x{i}")).chain((1..=g).map(|i| format!("y{i}"))).collect();
        BasedModule { labels }
    }

    pub fn l(g: usize) -> Self {
        BasedModule { labels: (1..=g).map(|i| format!("x{i}")).collect() }
    }

    /// `S^2 L`: `X1^2..Xg^2`, then `Xij` for `i < j` lexicographically.
    pub fn s2l(g: usize) -> Self {
        let mut labels: Vec<String> = (1..=g).map(|i| format!("X{i}^2")).collect();
        for i in 1..=g {
            for j in i + 1..=g {
                labels.push(pair_label(i, j));
            }
        }
        BasedModule { labels }
    }

    /// `∧^k` of this module on sorted index tuples in lexicographic order.
    pub fn wedge(&self, k: usize) -> Self {
        let labels = combinations(self.rank(), k)
            .into_iter()
            .map(|c| c.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join("∧"))
            .collect();
        BasedModule { labels }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Index of `X_ij` (`i != j`, 0-based) or `X_i^2` (`i == j`) in `S^2 L`.
pub fn s2l_index(g: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i == j {
        return i;
    }
    // Pairs (a, b) with a < i come first: sum over a of (g - 1 - a).
    g + i * (2 * g - i - 1) / 2 + (j - i - 1)
}

/// The `S^2 L` vector of a symmetric `g x g` matrix: `X_i^2` gets `b_ii`,
/// `X_ij` gets `b_ij`.
pub fn s2l_from_symmetric(b: &IntMatrix) -> Result<SparseVec> {
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let g = b.rows();
    let mut entries = Vec::new();
    for (j, col) in b.columns().iter().enumerate() {
        for (i, v) in col.entries() {
            if *i <= j {
                entries.push((s2l_index(g, *i, j), v.clone()));
            }
        }
    }
    Ok(SparseVec::from_entries(entries))
}

/// Inverse of [`s2l_from_symmetric`].
pub fn symmetric_from_s2l(g: usize, v: &SparseVec) -> IntMatrix {
    let mut b = IntMatrix::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            if let Some(x) = v.get(s2l_index(g, i, j)) {
                b.set(i, j, x.clone());
                b.set(j, i, x.clone());
            }
        }
    }
    b
}

/// `J = (0 I; -I 0)`.
pub fn standard_j(g: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(i, g + i, BigInt::one());
        j.set(g + i, i, -BigInt::one());
    }
    j
}

/// `ᵗm J m = J`.
///
/// ```
/// use mclag::symplectic::{is_symplectic, standard_j};
///
/// assert!(is_symplectic(&standard_j(3), 3).unwrap());
/// ```
pub fn is_symplectic(m: &IntMatrix, g: usize) -> Result<bool> {
    if m.rows() != 2 * g || m.cols() != 2 * g {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix for genus {g}", m.rows(), m.cols())));
    }
    let j = standard_j(g);
    Ok(&(&m.transpose() * &j) * m == j)
}

/// A `2g x 2g` integral symplectic matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    g: usize,
    m: IntMatrix,
}

impl SpMatrix {
    pub fn new(g: usize, m: IntMatrix) -> Result<Self> {
        if !is_symplectic(&m, g)? {
            return Err(Error::NotSymplectic);
        }
        Ok(SpMatrix { g, m })
    }

    pub fn identity(g: usize) -> Self {
        SpMatrix { g, m: IntMatrix::identity(2 * g) }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        assert_eq!(self.g, other.g, "genus mismatch");
        SpMatrix { g: self.g, m: &self.m * &other.m }
    }

    /// `m^-1 = -J ᵗm J`.
    pub fn inverse(&self) -> SpMatrix {
        let j = standard_j(self.g);
        SpMatrix { g: self.g, m: -&(&(&j * &self.m.transpose()) * &j) }
    }

    fn blocks(&self) -> [IntMatrix; 4] {
        let g = self.g;
        [self.m.block(0, 0, g, g), self.m.block(0, g, g, g), self.m.block(g, 0, g, g), self.m.block(g, g, g, g)]
    }
}

/// The blocks `(A, B)` of `m = (A B; 0 D)` when `m ∈ urSp(2g)`, else `None`.
///
/// For symplectic `m` with `C = 0` the remaining conditions (`D = ᵗA^-1`,
/// `A^-1 B` symmetric) hold automatically; they are asserted here.
pub fn is_ursp(m: &SpMatrix) -> Option<(IntMatrix, IntMatrix)> {
    let [a, b, c, d] = m.blocks();
    if !c.is_zero() {
        return None;
    }
    let a_inv = unimodular_inverse(&a).expect("upper-left block of a symplectic matrix with C = 0 is unimodular");
    assert_eq!(d, a_inv.transpose(), "D = ᵗA^-1 must hold");
    assert!((&a_inv * &b).is_symmetric(), "A^-1 B must be symmetric");
    Some((a, b))
}

/// `(I b; 0 I)` for symmetric `b`.
pub fn embed_sym(b: &IntMatrix) -> Result<SpMatrix> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", b.rows(), b.cols())));
    }
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let g = b.rows();
    let mut m = IntMatrix::identity(2 * g);
    for (j, col) in b.columns().iter().enumerate() {
        for (i, v) in col.entries() {
            m.set(*i, g + j, v.clone());
        }
    }
    SpMatrix::new(g, m)
}

/// `diag(a, ᵗa^-1)` for unimodular `a`.
pub fn embed_gl(a: &IntMatrix) -> Result<SpMatrix> {
    let inv = unimodular_inverse(a).ok_or(Error::NotUnimodular)?;
    let g = a.rows();
    let it = inv.transpose();
    let mut m = IntMatrix::zeros(2 * g, 2 * g);
    for j in 0..g {
        for (i, v) in a.column(j).entries() {
            m.set(*i, j, v.clone());
        }
        for (i, v) in it.column(j).entries() {
            m.set(g + *i, g + j, v.clone());
        }
    }
    SpMatrix::new(g, m)
}

/// The upper-left block of an element of urSp(2g).
pub fn ul_map(m: &SpMatrix) -> Result<IntMatrix> {
    is_ursp(m).map(|(a, _)| a).ok_or(Error::NotUpperTriangularBlockForm)
}

/// Functorial constructions for [`induced_rep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `GL(L)` acting on `S^2 L`.
    Sym2OfGl,
    Wedge2,
    Wedge3,
    /// `ᵗa^-1`.
    Dual,
}

/// The matrix of `m` on the module built by `construction`.
///
/// ```
/// use mclag::linalg::IntMatrix;
/// use mclag::symplectic::{induced_rep, Construction};
///
/// let e12 = IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
/// let s = induced_rep(&e12, Construction::Sym2OfGl).unwrap();
/// // X2^2 -> X1^2 + X2^2 + X12
/// assert_eq!(s.column(1).to_dense(6), [1, 1, 0, 1, 0, 0].map(Into::into));
/// ```
pub fn induced_rep(m: &IntMatrix, construction: Construction) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    match construction {
        Construction::Sym2OfGl => Ok(sym2_of_gl(m)),
        Construction::Wedge2 => Ok(wedge_power(m, 2)),
        Construction::Wedge3 => Ok(wedge_power(m, 3)),
        Construction::Dual => unimodular_inverse(m).map(|i| i.transpose()).ok_or(Error::NotUnimodular),
    }
}

/// `b ↦ a b ᵗa` on symmetric matrices, in the `S^2 L` basis.
fn sym2_of_gl(a: &IntMatrix) -> IntMatrix {
    let g = a.rows();
    let mut cols = Vec::with_capacity(g * (g + 1) / 2);
    let mut push = |k: usize, l: usize| {
        let (ck, cl) = (a.column(k), a.column(l));
        let mut entries = Vec::new();
        // Image of x_k ⊗ x_l (+ x_l ⊗ x_k when k != l).
        for (i, u) in ck.entries() {
            for (j, w) in cl.entries() {
                let v = u * w;
                if k == l {
                    // x_i ⊗ x_j + x_j ⊗ x_i is one copy of X_ij.
                    if i <= j {
                        entries.push((s2l_index(g, *i, *j), v));
                    }
                } else if i == j {
                    entries.push((s2l_index(g, *i, *j), v * 2));
                } else {
                    entries.push((s2l_index(g, *i, *j), v));
                }
            }
        }
        cols.push(SparseVec::from_entries(entries));
    };
    for k in 0..g {
        push(k, k);
    }
    for k in 0..g {
        for l in k + 1..g {
            push(k, l);
        }
    }
    IntMatrix::from_columns(g * (g + 1) / 2, cols).unwrap()
}

/// `∧^k m` on sorted index tuples in lexicographic order.
fn wedge_power(m: &IntMatrix, k: usize) -> IntMatrix {
    let n = m.rows();
    let basis = combinations(n, k);
    let index: HashMap<&[usize], usize> = basis.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let cols = basis
        .iter()
        .map(|c| {
            let mut entries = Vec::new();
            let mut idx = Vec::with_capacity(k);
            let mut val = Vec::with_capacity(k);
            expand_wedge(m, c, 0, &mut idx, &mut val, &mut |idx: &[usize], coeff: BigInt| {
                let mut sorted = idx.to_vec();
                let sign = sort_sign(&mut sorted);
                entries.push((index[sorted.as_slice()], if sign { -coeff } else { coeff }));
            });
            SparseVec::from_entries(entries)
        })
        .collect();
    IntMatrix::from_columns(basis.len(), cols).unwrap()
}

fn expand_wedge(
    m: &IntMatrix,
    cols: &[usize],
    pos: usize,
    idx: &mut Vec<usize>,
    val: &mut Vec<BigInt>,
    emit: &mut impl FnMut(&[usize], BigInt),
) {
    if pos == cols.len() {
        emit(idx, val.iter().product());
        return;
    }
    for (i, v) in m.column(cols[pos]).entries() {
        if idx.contains(i) {
            continue;
        }
        idx.push(*i);
        val.push(v.clone());
        expand_wedge(m, cols, pos + 1, idx, val, emit);
        idx.pop();
        val.pop();
    }
}

/// Sorts in place; returns true when the permutation is odd.
fn sort_sign(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

/// Coordinates of `u ∧ v` in `∧^2` of a rank-`n` module.
pub fn wedge2_vector(n: usize, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let mut entries = Vec::new();
    for (i, a) in u.entries() {
        for (j, b) in v.entries() {
            if i == j {
                continue;
            }
            let (lo, hi, s) = if i < j { (*i, *j, BigInt::one()) } else { (*j, *i, -BigInt::one()) };
            entries.push((pair_rank(n, lo, hi), s * a * b));
        }
    }
    SparseVec::from_entries(entries)
}

/// Position of `{i < j}` among the 2-subsets of `0..n`.
pub fn pair_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// The elementary matrix `e_ij = I + E_ij` (1-based indices).
pub fn elementary(g: usize, i: usize, j: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(g);
    m.set(i - 1, j - 1, BigInt::one());
    m
}

/// `E_ij + E_ji`, or `E_ii` when `i == j` (1-based).
pub fn symmetric_unit(g: usize, i: usize, j: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(g, g);
    m.set(i - 1, j - 1, BigInt::one());
    m.set(j - 1, i - 1, BigInt::one());
    m
}

/// The transvections `X_j = embed_sym(E_jj)` for `j = 1..g`, then
/// `X_ij = embed_sym(E_ij + E_ji)` for `i < j`. They generate the `S^2 L`
/// subgroup.
pub fn s2l_transvections(g: usize) -> Vec<(String, SpMatrix)> {
    let mut out = Vec::new();
    for j in 1..=g {
        out.push((format!("X{j}"), embed_sym(&symmetric_unit(g, j, j)).unwrap()));
    }
    for i in 1..=g {
        for j in i + 1..=g {
            out.push((pair_label(i, j), embed_sym(&symmetric_unit(g, i, j)).unwrap()));
        }
    }
    out
}

/// `e_ij` for all `i != j`, generating `SL(g, Z)`.
pub fn sl_generators(g: usize) -> Vec<(String, IntMatrix)> {
    sl_generator_pairs(g)
        .into_iter()
        .map(|(i, j)| (crate::presentation::elementary_label(i, j), elementary(g, i, j)))
        .collect()
}

/// `e_ij` together with `diag(-1, 1, ..., 1)`, generating `GL(g, Z)`.
pub fn gl_generators(g: usize) -> Vec<(String, IntMatrix)> {
    let mut out = sl_generators(g);
    let mut r = IntMatrix::identity(g);
    r.set(0, 0, -BigInt::one());
    out.push(("r1".into(), r));
    out
}

/// Identity plus a `1` at `(y_g, x_g)`, so `x_g ↦ x_g + y_g`. Symplectic
/// but outside urSp(2g).
pub fn remark_matrix(g: usize) -> SpMatrix {
    let mut m = IntMatrix::identity(2 * g);
    m.set(2 * g - 1, g - 1, BigInt::one());
    SpMatrix::new(g, m).unwrap()
}

/// Named generating sets used as acting groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActingSet {
    /// The `S^2 L` transvections.
    S2l,
    /// `embed_gl` of the `e_ij`.
    Sl,
    /// `embed_gl` of the `GL(g, Z)` generators.
    Gl,
    /// `S^2 L` transvections and `embed_gl(GL(g, Z))`.
    Ursp,
    /// `Ursp` and [`remark_matrix`]; these generate `Sp(2g, Z)`.
    UrspPlusRemark,
}

impl ActingSet {
    pub const ALL: [ActingSet; 5] =
        [ActingSet::S2l, ActingSet::Sl, ActingSet::Gl, ActingSet::Ursp, ActingSet::UrspPlusRemark];

    pub fn name(self) -> &'static str {
        match self {
            ActingSet::S2l => "s2l",
            ActingSet::Sl => "sl",
            ActingSet::Gl => "gl",
            ActingSet::Ursp => "ursp",
            ActingSet::UrspPlusRemark => "ursp-plus-remark",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    pub fn elements(self, g: usize) -> Vec<(String, SpMatrix)> {
        let gl = |gens: Vec<(String, IntMatrix)>| -> Vec<(String, SpMatrix)> {
            gens.into_iter().map(|(l, a)| (l, embed_gl(&a).unwrap())).collect()
        };
        match self {
            ActingSet::S2l => s2l_transvections(g),
            ActingSet::Sl => gl(sl_generators(g)),
            ActingSet::Gl => gl(gl_generators(g)),
            ActingSet::Ursp => {
                let mut v = s2l_transvections(g);
                v.extend(gl(gl_generators(g)));
                v
            }
            ActingSet::UrspPlusRemark => {
                let mut v = ActingSet::Ursp.elements(g);
                v.push(("remark".into(), remark_matrix(g)));
                v
            }
        }
    }
}

/// `S^2 L` as a representation of the presentation [`GroupPresentation::sl`].
pub fn s2l_representation(g: usize) -> Result<IntRepresentation> {
    let p = GroupPresentation::sl(g)?;
    let images = sl_generators(g).iter().map(|(_, a)| sym2_of_gl(a)).collect();
    IntRepresentation::new(p, g * (g + 1) / 2, images)
}

/// The defining representation `L = Z^g` of [`GroupPresentation::sl`].
pub fn natural_representation(g: usize) -> Result<IntRepresentation> {
    let p = GroupPresentation::sl(g)?;
    let images = sl_generators(g).into_iter().map(|(_, a)| a).collect();
    IntRepresentation::new(p, g, images)
}

/// One row of [`twist_image_table`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistImage {
    /// `c_ij` or `c_k`; the `d`-curve twists have the same image.
    pub label: String,
    pub image: SparseVec,
    /// Number of twist families with this image (the `c`- and `d`-curves).
    pub multiplicity: usize,
}

/// `σ(T_{c_ij}) = X_i^2 - X_ij + X_j^2` for `i < j`, then `σ(T_{c_k}) = X_k^2`.
pub fn twist_image_table(g: usize) -> Vec<TwistImage> {
    let one = || BigInt::one();
    let mut out = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            let image = SparseVec::from_entries(vec![
                (s2l_index(g, i, i), one()),
                (s2l_index(g, j, j), one()),
                (s2l_index(g, i, j), -one()),
            ]);
            out.push(TwistImage { label: format!("c{}{}", i + 1, j + 1), image, multiplicity: 2 });
        }
    }
    for k in 0..g {
        out.push(TwistImage {
            label: format!("c{}", k + 1),
            image: SparseVec::unit(s2l_index(g, k, k), one()),
            multiplicity: 2,
        });
    }
    out
}

/// Result of [`lagrangian_generation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub generates_s2l: bool,
    pub wedge_rank: usize,
    pub expected_wedge_rank: usize,
    /// The wedges span `∧^2(S^2 L)` over `Z`, not only a finite-index
    /// sublattice.
    pub wedges_generate: bool,
}

impl GenerationReport {
    pub fn passes(&self) -> bool {
        self.generates_s2l && self.wedge_rank == self.expected_wedge_rank && self.wedges_generate
    }
}

/// Checks that the twist images generate `S^2 L` and that the wedges
/// `a ∧ b` of images of commuting twists span `∧^2(S^2 L)`.
///
/// This verifies generation of the target lattice; the commuting mapping
/// classes realizing each wedge are taken from the geometric argument.
pub fn lagrangian_generation_check(g: usize) -> Result<GenerationReport> {
    if g < 3 {
        return Err(Error::UnsupportedGenus { genus: g, min: 3, max: usize::MAX });
    }
    let r = g * (g + 1) / 2;
    let table = twist_image_table(g);
    let images: Vec<SparseVec> = table.iter().map(|t| t.image.clone()).collect();
    let generates_s2l = generates_full_lattice(&images, r);
    let mut wedges = Vec::new();
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            wedges.push(wedge2_vector(r, &images[a], &images[b]));
        }
    }
    let n = binomial(r, 2);
    let wedge_matrix = IntMatrix::from_columns(n, wedges.clone())?;
    Ok(GenerationReport {
        generates_s2l,
        wedge_rank: rank(&wedge_matrix),
        expected_wedge_rank: n,
        wedges_generate: generates_full_lattice(&wedges, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn s2l_indexing() {
        let m = BasedModule::s2l(4);
        assert_eq!(m.rank(), 10);
        for i in 0..4 {
            for j in i..4 {
                let want = if i == j { format!("X{}^2", i + 1) } else { format!("X{}{}", i + 1, j + 1) };
                assert_eq!(m.labels()[s2l_index(4, i, j)], want);
            }
        }
        for (k, c) in combinations(5, 2).iter().enumerate() {
            assert_eq!(pair_rank(5, c[0], c[1]), k);
        }
    }

    #[test]
    fn symplectic_examples() {
        assert!(is_symplectic(&IntMatrix::identity(6), 3).unwrap());
        assert!(is_symplectic(&standard_j(3), 3).unwrap());
        assert!(is_symplectic(remark_matrix(3).matrix(), 3).unwrap());
        assert!(is_symplectic(&IntMatrix::identity(4), 3).is_err());
        assert!(!is_symplectic(&IntMatrix::diagonal(2, 2, &ints(&[2, 1])), 1).unwrap());
    }

    #[test]
    fn remark_matrix_shape() {
        // Identity plus a 1 in the lower-left block at block position (3,3).
        let m = remark_matrix(3);
        assert_eq!(m.matrix().get(5, 2), BigInt::one());
        assert_eq!(m.matrix().nnz(), 7);
        assert!(is_ursp(&m).is_none());
    }

    #[test]
    fn ursp_membership() {
        assert!(is_ursp(&embed_gl(&elementary(3, 1, 2)).unwrap()).is_some());
        let b = symmetric_unit(3, 1, 1).try_add(&symmetric_unit(3, 2, 2)).unwrap();
        assert!(is_ursp(&embed_sym(&b).unwrap()).is_some());
        assert_eq!(embed_sym(&IntMatrix::from_rows(&[[0, 1], [0, 0]])), Err(Error::NotSymmetric));
        assert_eq!(embed_gl(&IntMatrix::from_rows(&[[2, 0], [0, 1]])), Err(Error::NotUnimodular));
    }

    #[test]
    fn ul_examples() {
        let e12 = elementary(3, 1, 2);
        assert_eq!(ul_map(&embed_gl(&e12).unwrap()).unwrap(), e12);
        assert!(ul_map(&embed_sym(&symmetric_unit(3, 1, 1)).unwrap()).unwrap().is_identity());
        let a = &e12 * &elementary(3, 3, 1);
        let p = embed_gl(&a).unwrap().mul(&embed_sym(&symmetric_unit(3, 2, 3)).unwrap());
        assert_eq!(ul_map(&p).unwrap(), a);
        assert_eq!(ul_map(&remark_matrix(3)), Err(Error::NotUpperTriangularBlockForm));
    }

    #[test]
    fn embed_gl_of_inverse_elementary() {
        // e_kl^-1 ⊕ e_lk: diag(e_kl^-1, ᵗ(e_kl^-1)^-1) = diag(e_kl^-1, e_lk).
        let inv = unimodular_inverse(&elementary(3, 1, 2)).unwrap();
        let m = embed_gl(&inv).unwrap();
        assert_eq!(m.matrix().block(0, 0, 3, 3), inv);
        assert_eq!(m.matrix().block(3, 3, 3, 3), elementary(3, 2, 1));
    }

    #[test]
    fn sym2_example() {
        let s = induced_rep(&elementary(3, 1, 2), Construction::Sym2OfGl).unwrap();
        let x2sq = s.column(s2l_index(3, 1, 1));
        assert_eq!(x2sq.to_dense(6), ints(&[1, 1, 0, 1, 0, 0]));
        assert_eq!(s.column(2).to_dense(6), ints(&[0, 0, 1, 0, 0, 0]));
    }

    #[test]
    fn sym2_matches_congruence() {
        // b ↦ a b ᵗa on symmetric matrices.
        let a = &(&elementary(3, 1, 2) * &elementary(3, 3, 1)) * &elementary(3, 2, 3);
        let s = sym2_of_gl(&a);
        for k in 0..3 {
            for l in k..3 {
                let b = symmetric_unit(3, k + 1, l + 1);
                let want = s2l_from_symmetric(&(&(&a * &b) * &a.transpose())).unwrap();
                assert_eq!(s.column(s2l_index(3, k, l)), &want);
            }
        }
    }

    #[test]
    fn wedge_and_dual() {
        assert!(induced_rep(&IntMatrix::identity(6), Construction::Wedge3).unwrap().is_identity());
        let a = elementary(3, 1, 2);
        let d = induced_rep(&a, Construction::Dual).unwrap();
        assert!((&d.transpose() * &a).is_identity());
        // ∧^2 of diag(2,3,5) is diag(6,10,15).
        let w = wedge_power(&IntMatrix::diagonal(3, 3, &ints(&[2, 3, 5])), 2);
        assert_eq!(w, IntMatrix::diagonal(3, 3, &ints(&[6, 10, 15])));
        // ∧^3 is the determinant on a 3-dimensional space.
        let m = IntMatrix::from_rows(&[[2, 1, 0], [1, 1, 4], [0, 3, 1]]);
        assert_eq!(wedge_power(&m, 3).get(0, 0), crate::linalg::determinant(&m).unwrap());
    }

    #[test]
    fn twist_table() {
        let t = twist_image_table(3);
        assert_eq!(t.len(), 6);
        assert_eq!(t[0].label, "c12");
        assert_eq!(t[0].image.to_dense(6), ints(&[1, 1, 0, -1, 0, 0]));
        assert_eq!(t[5].label, "c3");
        assert_eq!(t[5].image.to_dense(6), ints(&[0, 0, 1, 0, 0, 0]));
    }

    #[test]
    fn generation_small() {
        for (g, n) in [(3, 15), (4, 45)] {
            let r = lagrangian_generation_check(g).unwrap();
            assert!(r.generates_s2l);
            assert_eq!((r.wedge_rank, r.expected_wedge_rank), (n, n));
            assert!(r.passes());
        }
    }

    #[test]
    fn s2l_rep_is_valid() {
        let rep = s2l_representation(3).unwrap();
        assert_eq!(rep.validate().failure, None);
    }

    #[test]
    fn acting_sets_are_symplectic() {
        for a in ActingSet::ALL {
            for (_, m) in a.elements(3) {
                assert!(is_symplectic(m.matrix(), 3).unwrap());
            }
            assert_eq!(ActingSet::parse(a.name()), Some(a));
        }
        assert_eq!(ActingSet::Ursp.elements(3).len(), 6 + 7);
    }

    #[test]
    fn sp_inverse() {
        let m = remark_matrix(3).mul(&embed_gl(&elementary(3, 2, 3)).unwrap());
        assert_eq!(m.mul(&m.inverse()), SpMatrix::identity(3));
    }
}
