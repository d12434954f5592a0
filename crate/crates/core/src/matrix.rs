//! Sparse integer matrices with arbitrary-precision entries.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("entry ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate coordinate ({0}, {1})")]
    DuplicateCoordinate(usize, usize),
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
}

/// A sparse column: `(row, value)` pairs, rows strictly increasing, no zeros.
pub type IntColumn = Vec<(usize, BigInt)>;

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<IntColumn>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntegerMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, BigInt::one())]).collect(),
        }
    }

    /// Builds from `(row, col, value)` triples. Zero values are dropped.
    pub fn from_triplets<I, T>(rows: usize, cols: usize, triplets: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
        T: Into<BigInt>,
    {
        let mut columns: Vec<IntColumn> = vec![Vec::new(); cols];
        for (row, col, value) in triplets {
            if row >= rows || col >= cols {
                return Err(MatrixError::OutOfRange {
                    row,
                    col,
                    rows,
                    cols,
                });
            }
            columns[col].push((row, value.into()));
        }
        for (c, column) in columns.iter_mut().enumerate() {
            column.sort_by_key(|(r, _)| *r);
            if let Some(w) = column.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(MatrixError::DuplicateCoordinate(w[0].0, c));
            }
            column.retain(|(_, v)| !v.is_zero());
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            columns,
        })
    }

    /// Builds from columns that may contain repeated rows; repeats are summed.
    pub fn from_columns_accumulate(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut col| {
                col.sort_by_key(|(r, _)| *r);
                let mut out: IntColumn = Vec::with_capacity(col.len());
                for (r, v) in col {
                    debug_assert!(r < rows);
                    match out.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => out.push((r, BigInt::from(v))),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        IntegerMatrix {
            rows,
            cols,
            columns,
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(move |(j, v)| (i, j, *v))
        });
        Self::from_triplets(nrows, ncols, triplets).expect("dense input is well formed")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, c: usize) -> &IntColumn {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[IntColumn] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<IntColumn> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        match self.columns[col].binary_search_by_key(&row, |(r, _)| *r) {
            Ok(i) => self.columns[col][i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Triplets in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut columns: Vec<IntColumn> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            columns[r].push((c, v.clone()));
        }
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, rhs.rows, rhs.cols,
            ));
        }
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
                for (k, b) in rcol {
                    for (r, a) in &self.columns[*k] {
                        *acc.entry(*r).or_insert_with(BigInt::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        })
    }

    pub fn neg(&self) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, -v)).collect())
                .collect(),
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.triplets()
            .map(|(_, _, v)| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Coordinate-list dump: a `#` header followed by one `row col value` line
    /// per nonzero entry, column-major.
    pub fn to_coordinate_list(&self, header: &str) -> String {
        let mut out = String::new();
        for line in header.lines() {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "# shape {} {}", self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplet_validation() {
        assert!(matches!(
            IntegerMatrix::from_triplets(2, 2, [(2, 0, 1)]),
            Err(MatrixError::OutOfRange { .. })
        ));
        assert!(matches!(
            IntegerMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, 2)]),
            Err(MatrixError::DuplicateCoordinate(0, 0))
        ));
    }

    #[test]
    fn multiplication_and_transpose() {
        let a = IntegerMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        let b = IntegerMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, IntegerMatrix::from_dense(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose().get(0, 1), BigInt::from(3));
        assert!(a.mul(&IntegerMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn accumulate_cancels() {
        let m = IntegerMatrix::from_columns_accumulate(2, vec![vec![(1, 1), (0, 2), (1, -1)]]);
        assert_eq!(m.column(0), &vec![(0, BigInt::from(2))]);
    }

    #[test]
    fn coordinate_list_format() {
        let m = IntegerMatrix::from_dense(&[vec![0, -1], vec![1, 0]]);
        let text = m.to_coordinate_list("graph star\nbigrade (1,1) -> (0,1) mode reduced");
        assert_eq!(
            text,
            "# graph star\n# bigrade (1,1) -> (0,1) mode reduced\n# shape 2 2\n1 0 1\n0 1 -1\n"
        );
    }
}
