use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A sparse integer vector: `(index, value)` pairs sorted by index with no
/// stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vector from unsorted pairs; repeated indices are summed.
    pub fn from_entries(mut entries: Vec<(usize, BigInt)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        Self { entries: out }
    }

    pub fn from_dense(values: &[BigInt]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(i, v)| (i, BigInt::from(*v)))
                .collect(),
        }
    }

    pub fn unit(index: usize, value: BigInt) -> Self {
        if value.is_zero() {
            Self::new()
        } else {
            Self { entries: vec![(index, value)] }
        }
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, BigInt)> {
        self.entries
    }

    pub fn get(&self, index: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// First stored entry (smallest index).
    pub fn lead(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &BigInt, other: &SparseVec) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, factor * w));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    let s = v + factor * w;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, factor * w));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&mut self, other: &SparseVec) {
        self.add_scaled(&BigInt::one(), other);
    }

    pub fn sub(&mut self, other: &SparseVec) {
        self.add_scaled(&-BigInt::one(), other);
    }

    pub fn scale(&mut self, factor: &BigInt) {
        if factor.is_zero() {
            self.entries.clear();
        } else {
            for (_, v) in &mut self.entries {
                *v *= factor;
            }
        }
    }

    pub fn negate(&mut self) {
        for (_, v) in &mut self.entries {
            *v = -&*v;
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    /// Reindexes entries through `map`, dropping entries mapped to `None`.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, v)| map(*i).map(|j| (j, v.clone())))
                .collect(),
        )
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}
