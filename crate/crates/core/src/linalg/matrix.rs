use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{de::Error as _, ser::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::sparse::SparseVec;
use crate::error::{Error, Result};
use crate::json::{from_number, to_number};

/// An integer matrix with arbitrary-precision entries.
///
/// Storage is column-sparse; every operation has dense semantics. Matrices
/// with zero rows or zero columns are legal and behave as empty maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| SparseVec::unit(i, BigInt::one())).collect(),
        }
    }

    /// Builds a matrix from row slices. The column count is taken from the
    /// first row; an empty slice gives the 0x0 matrix.
    ///
    /// Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = vec![Vec::new(); cols];
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    entries[j].push((i, BigInt::from(*v)));
                }
            }
        }
        Self {
            rows: rows.len(),
            cols,
            columns: entries.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    /// Row-major dense data.
    pub fn from_dense(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let mut entries = vec![Vec::new(); cols];
        for (k, v) in data.into_iter().enumerate() {
            if !v.is_zero() {
                entries[k % cols.max(1)].push((k / cols.max(1), v));
            }
        }
        Ok(Self {
            rows,
            cols,
            columns: entries.into_iter().map(SparseVec::from_entries).collect(),
        })
    }

    pub fn from_dense_rows(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row data does not describe a {rows}x{cols} matrix"
            )));
        }
        Self::from_dense(rows, cols, data.into_iter().flatten().collect())
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.max_index().is_some_and(|i| i >= rows)) {
            return Err(Error::DimensionMismatch(format!(
                "column {bad} has an entry beyond row {rows}"
            )));
        }
        Ok(Self { rows, cols: columns.len(), columns })
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.columns[i] = SparseVec::unit(i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        assert!(row < self.rows && col < self.cols, "index ({row},{col}) out of range");
        self.columns[col].get(row).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        assert!(row < self.rows && col < self.cols, "index ({row},{col}) out of range");
        let mut entries = std::mem::take(&mut self.columns[col]).into_entries();
        entries.retain(|(i, _)| *i != row);
        entries.push((row, value));
        self.columns[col] = SparseVec::from_entries(entries);
    }

    pub fn column(&self, col: usize) -> &SparseVec {
        &self.columns[col]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.columns.iter().enumerate().all(|(j, c)| {
                c.nnz() == 1 && c.lead().is_some_and(|(i, v)| i == j && v.is_one())
            })
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut entries = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                entries[*i].push((j, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            columns: entries.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, v) in x.entries() {
            out.add_scaled(v, &self.columns[*k]);
        }
        out
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        })
    }

    pub fn try_add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.columns.iter_mut().zip(&other.columns) {
            a.add(b);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.try_add(&-other)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(IntMatrix { rows: self.rows, cols: columns.len(), columns })
    }

    pub fn push_column(&mut self, column: SparseVec) -> Result<()> {
        if column.max_index().is_some_and(|i| i >= self.rows) {
            return Err(Error::DimensionMismatch("column longer than matrix".into()));
        }
        self.columns.push(column);
        self.cols += 1;
        Ok(())
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: cols.len(),
            columns: cols.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    /// The block with rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> IntMatrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        IntMatrix {
            rows: nr,
            cols: nc,
            columns: self.columns[c0..c0 + nc]
                .iter()
                .map(|c| c.remap(|i| (i >= r0 && i < r0 + nr).then(|| i - r0)))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn map_entries(&self, f: impl Fn(&BigInt) -> BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| {
                    SparseVec::from_entries(c.entries().iter().map(|(i, v)| (*i, f(v))).collect())
                })
                .collect(),
        }
    }

    /// Plain-text form: a `rows cols` header line followed by one line of
    /// space-separated decimal entries per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for row in self.to_dense_rows() {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header `{header}`"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("header `{header}` is not `rows cols`")));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            let before = data.len();
            for tok in line.split_whitespace() {
                data.push(
                    BigInt::from_str(tok)
                        .map_err(|_| Error::Parse(format!("bad entry `{tok}` in row {r}")))?,
                );
            }
            if data.len() - before != cols {
                return Err(Error::Parse(format!(
                    "row {r} has {} entries, expected {cols}",
                    data.len() - before
                )));
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after matrix rows".into()));
        }
        Self::from_dense(rows, cols, data)
    }

    /// Compact JSON form `{"rows":r,"cols":c,"entries":[[...],...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on a dimension mismatch; use [`IntMatrix::try_mul`] otherwise.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        let mut out = self.clone();
        for c in &mut out.columns {
            c.negate();
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense_rows() {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            writeln!(f, "[{}]", line.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<serde_json::Number>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .to_dense_rows()
            .iter()
            .map(|r| r.iter().map(to_number).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(S::Error::custom)?;
        MatrixRepr { rows: self.rows, cols: self.cols, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        let data = repr
            .entries
            .iter()
            .map(|r| r.iter().map(from_number).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        IntMatrix::from_dense_rows(repr.rows, repr.cols, data).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format_is_bit_exact() {
        let m = IntMatrix::from_rows(&[[1, -2, 0], [0, 0, 123456789012]]);
        let text = m.to_text();
        assert_eq!(text, "2 3\n1 -2 0\n0 0 123456789012\n");
        assert_eq!(IntMatrix::from_text(&text).unwrap(), m);
    }

    #[test]
    fn json_format_is_bit_exact() {
        let m = IntMatrix::from_rows(&[[1, 0], [0, -7]]);
        let json = m.to_json();
        assert_eq!(json, r#"{"rows":2,"cols":2,"entries":[[1,0],[0,-7]]}"#);
        assert_eq!(IntMatrix::from_json(&json).unwrap(), m);
    }

    #[test]
    fn huge_entries_survive_json() {
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let m = IntMatrix::from_dense(1, 1, vec![big.clone()]).unwrap();
        let back = IntMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(back.get(0, 0), big);
    }

    #[test]
    fn empty_shapes() {
        let m = IntMatrix::zeros(3, 0);
        assert_eq!(m.to_text(), "3 0\n\n\n\n");
        assert_eq!(IntMatrix::from_text(&m.to_text()).unwrap(), m);
        let n = IntMatrix::zeros(0, 2);
        assert_eq!(IntMatrix::from_json(&n.to_json()).unwrap(), n);
        assert_eq!((&m * &n).rows(), 3);
        assert_eq!((&m * &n).cols(), 2);
    }

    #[test]
    fn rejects_malformed_text() {
        assert!(IntMatrix::from_text("2 2\n1 0\n").is_err());
        assert!(IntMatrix::from_text("1 2\n1 x\n").is_err());
        assert!(IntMatrix::from_text("1 1\n1 2\n").is_err());
    }

    #[test]
    fn multiplication_matches_hand_product() {
        let a = IntMatrix::from_rows(&[[1, 2], [3, 4]]);
        let b = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_rows(&[[2, 1], [4, 3]]));
        assert!(a.try_mul(&IntMatrix::zeros(3, 1)).is_err());
    }
}
