//! Finite presentations, words, and integer matrix representations.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::FgAbelianGroup;
use crate::linalg::{unimodular_inverse, IntMatrix, SparseVec};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A word in the generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// From `(generator, exponent)` pairs with exponent `1` or `-1`.
    ///
    /// # Panics
    ///
    /// On any other exponent.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        Word(
            pairs
                .iter()
                .map(|&(g, e)| match e {
                    1 => Letter::pos(g),
                    -1 => Letter::neg(g),
                    _ => panic!("exponent {e} is not +-1"),
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn power(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// `u w u^-1`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.concat(self).concat(&u.inverse())
    }
}

/// Generators and relators of a finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

/// Label of the elementary matrix `e_ij` (1-based).
pub fn elementary_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("e{i}{j}")
    } else {
        format!("e{i},{j}")
    }
}

/// Index pairs `(i, j)`, `i != j`, 1-based, in lexicographic order. This is
/// the generator order of [`GroupPresentation::sl`].
pub fn sl_generator_pairs(g: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(g * g.saturating_sub(1));
    for i in 1..=g {
        for j in 1..=g {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (k, label) in generators.iter().enumerate() {
            if seen.insert(label.clone(), k).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{label}`")));
            }
        }
        for (r, w) in relators.iter().enumerate() {
            if let Some(l) = w.letters().iter().find(|l| l.generator >= generators.len()) {
                return Err(Error::InvalidPresentation(format!(
                    "relator {r} uses generator {} of {}",
                    l.generator,
                    generators.len()
                )));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    /// The free group on `n` generators `a1, ..., an`.
    pub fn free(n: usize) -> Self {
        GroupPresentation { generators: (1..=n).map(|k| format!("a{k}")).collect(), relators: Vec::new() }
    }

    /// The Steinberg-type presentation of `SL(g, Z)`, `g >= 3`.
    ///
    /// Generators are `e_ij` in lexicographic `(i, j)` order. Relators come
    /// in three families, in this order:
    ///
    /// 1. `e_ij e_kl e_ij^-1 e_kl^-1` for each unordered pair of distinct
    ///    generators with `j != k` and `i != l`, the pair listed once with
    ///    the smaller generator first, pairs in lexicographic order;
    /// 2. `e_ik e_kj e_ik^-1 e_kj^-1 e_ij^-1` for every ordered triple of
    ///    distinct `(i, k, j)`, lexicographically;
    /// 3. `(e12 e21^-1 e12)^4`.
    ///
    /// ```
    /// use mclag::GroupPresentation;
    ///
    /// let p = GroupPresentation::sl(3).unwrap();
    /// assert_eq!((p.generator_count(), p.relator_count()), (6, 13));
    /// ```
    pub fn sl(g: usize) -> Result<Self> {
        if g < 3 {
            return Err(Error::UnsupportedGenus { genus: g, min: 3, max: usize::MAX });
        }
        let pairs = sl_generator_pairs(g);
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut relators = Vec::new();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate().skip(a + 1) {
                if j != k && i != l {
                    relators.push(Word::new(vec![
                        Letter::pos(a),
                        Letter::pos(b),
                        Letter::neg(a),
                        Letter::neg(b),
                    ]));
                }
            }
        }
        for i in 1..=g {
            for k in 1..=g {
                for j in 1..=g {
                    if i == k || k == j || i == j {
                        continue;
                    }
                    let (ik, kj, ij) = (index[&(i, k)], index[&(k, j)], index[&(i, j)]);
                    relators.push(Word::new(vec![
                        Letter::pos(ik),
                        Letter::pos(kj),
                        Letter::neg(ik),
                        Letter::neg(kj),
                        Letter::neg(ij),
                    ]));
                }
            }
        }
        let (e12, e21) = (index[&(1, 2)], index[&(2, 1)]);
        let w = Word::new(vec![Letter::pos(e12), Letter::neg(e21), Letter::pos(e12)]);
        relators.push(w.power(4));
        Ok(GroupPresentation { generators: pairs.iter().map(|&(i, j)| elementary_label(i, j)).collect(), relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|l| l == label)
    }

    /// Same generators, different relators.
    pub fn with_relators(&self, relators: Vec<Word>) -> Result<Self> {
        Self::new(self.generators.clone(), relators)
    }

    /// Exponent-sum matrix: one column per relator, one row per generator.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let cols = self
            .relators
            .iter()
            .map(|w| {
                SparseVec::from_entries(
                    w.letters().iter().map(|l| (l.generator, l.exponent().into())).collect(),
                )
            })
            .collect();
        IntMatrix::from_columns(self.generator_count(), cols).unwrap()
    }

    /// `H_1` of the presented group.
    pub fn abelianized_h1(&self) -> FgAbelianGroup {
        crate::linalg::cokernel_invariants(&self.abelianization_matrix())
    }

    pub fn to_json(&self) -> String {
        let repr = PresentationRepr {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|w| {
                    w.letters().iter().map(|l| (self.generators[l.generator].clone(), l.exponent())).collect()
                })
                .collect(),
        };
        serde_json::to_string(&repr).expect("presentation serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: PresentationRepr = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let index: HashMap<&str, usize> =
            repr.generators.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
        let mut relators = Vec::with_capacity(repr.relators.len());
        for r in &repr.relators {
            let mut letters = Vec::with_capacity(r.len());
            for (label, e) in r {
                let &g = index
                    .get(label.as_str())
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator `{label}`")))?;
                letters.push(match e {
                    1 => Letter::pos(g),
                    -1 => Letter::neg(g),
                    _ => return Err(Error::InvalidPresentation(format!("exponent {e} is not +-1"))),
                });
            }
            relators.push(Word::new(letters));
        }
        Self::new(repr.generators, relators)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|l| {
                let s = &self.generators[l.generator];
                if l.inverse {
                    format!("{s}^-1")
                } else {
                    s.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Invertible integer matrices assigned to the generators of a presentation.
///
/// Words act by matrix products read left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRepresentation {
    presentation: GroupPresentation,
    rank: usize,
    images: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
}

/// Outcome of [`IntRepresentation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationCheck {
    pub valid: bool,
    /// The first failing relator or generator, when invalid.
    pub failure: Option<String>,
}

impl IntRepresentation {
    /// Fails with `InvalidRepresentation` on a wrong image count, a wrong
    /// shape, or a non-invertible image. Relators are not checked here.
    pub fn new(presentation: GroupPresentation, rank: usize, images: Vec<IntMatrix>) -> Result<Self> {
        if images.len() != presentation.generator_count() {
            return Err(Error::InvalidRepresentation(format!(
                "{} images for {} generators",
                images.len(),
                presentation.generator_count()
            )));
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (k, m) in images.iter().enumerate() {
            let label = &presentation.generators()[k];
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidRepresentation(format!(
                    "image of {label} is {}x{}, expected {rank}x{rank}",
                    m.rows(),
                    m.cols()
                )));
            }
            let inv = unimodular_inverse(m)
                .ok_or_else(|| Error::InvalidRepresentation(format!("image of {label} is not unimodular")))?;
            inverses.push(inv);
        }
        Ok(IntRepresentation { presentation, rank, images, inverses })
    }

    /// Every generator acts as the identity on `Z^rank`.
    pub fn trivial(presentation: GroupPresentation, rank: usize) -> Self {
        let n = presentation.generator_count();
        let id = IntMatrix::identity(rank);
        IntRepresentation { presentation, rank, images: vec![id.clone(); n], inverses: vec![id; n] }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[IntMatrix] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &IntMatrix {
        &self.images[generator]
    }

    pub fn inverse_image(&self, generator: usize) -> &IntMatrix {
        &self.inverses[generator]
    }

    pub fn letter_image(&self, l: Letter) -> &IntMatrix {
        if l.inverse {
            &self.inverses[l.generator]
        } else {
            &self.images[l.generator]
        }
    }

    pub fn evaluate(&self, w: &Word) -> IntMatrix {
        w.letters()
            .iter()
            .fold(IntMatrix::identity(self.rank), |acc, &l| &acc * self.letter_image(l))
    }

    /// Checks invertibility of every image and that every relator evaluates
    /// to the identity; reports the first failure.
    pub fn validate(&self) -> RepresentationCheck {
        for (k, (m, inv)) in self.images.iter().zip(&self.inverses).enumerate() {
            if !(m * inv).is_identity() {
                return RepresentationCheck {
                    valid: false,
                    failure: Some(format!("image of {} is not invertible", self.presentation.generators()[k])),
                };
            }
        }
        for (r, w) in self.presentation.relators().iter().enumerate() {
            if !self.evaluate(w).is_identity() {
                return RepresentationCheck {
                    valid: false,
                    failure: Some(format!("relator {r} ({}) is not the identity", self.presentation.format_word(w))),
                };
            }
        }
        RepresentationCheck { valid: true, failure: None }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    /// Same images with one generator replaced; the inverse is recomputed.
    pub fn with_image(&self, generator: usize, image: IntMatrix) -> Result<Self> {
        let mut images = self.images.clone();
        images[generator] = image;
        Self::new(self.presentation.clone(), self.rank, images)
    }

    /// Same images over another presentation on the same generators.
    pub fn with_presentation(&self, presentation: GroupPresentation) -> Result<Self> {
        if presentation.generators() != self.presentation.generators() {
            return Err(Error::InvalidRepresentation("generator lists differ".into()));
        }
        Ok(IntRepresentation { presentation, ..self.clone() })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.inverse { format!("g{}^-1", l.generator) } else { format!("g{}", l.generator) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
