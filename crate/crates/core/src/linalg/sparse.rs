use alloc::vec;
use alloc::vec::Vec;

use super::{Coordinate, DenseVector};
use crate::{Error, Result};

/// Compressed sparse column matrix, square `N×N`.
///
/// Rows inside a column are sorted and unique, and no stored value is exactly
/// zero, so `nnz` is the true number of nonzeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseColumnMatrix {
    dim: usize,
    col_ptr: Vec<usize>,
    rows: Vec<usize>,
    values: Vec<f64>,
}

/// Borrowed view of one column.
#[derive(Debug, Clone, Copy)]
pub struct Column<'a> {
    rows: &'a [usize],
    values: &'a [f64],
}

impl<'a> Column<'a> {
    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &'a [usize] {
        self.rows
    }

    pub fn values(&self) -> &'a [f64] {
        self.values
    }

    /// `(row, value)` pairs in increasing row order, rows 0-based.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + 'a {
        self.rows.iter().copied().zip(self.values.iter().copied())
    }

    pub fn l1(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }
}

impl SparseColumnMatrix {
    /// Builds a matrix from 0-based `(row, col, value)` triplets.
    ///
    /// Zeros are dropped; duplicates, out-of-range indices and non-finite
    /// values are rejected.
    pub fn from_triplets<I>(dim: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut entries: Vec<(usize, usize, f64)> = Vec::new();
        for (row, col, value) in triplets {
            for idx in [row, col] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx + 1, dim });
                }
            }
            if !value.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: row + 1,
                    col: col + 1,
                });
            }
            entries.push((col, row, value));
        }
        entries.sort_by_key(|a| (a.0, a.1));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(Error::DuplicateEntry {
                    row: pair[0].1 + 1,
                    col: pair[0].0 + 1,
                });
            }
        }

        let mut col_ptr = vec![0usize; dim + 1];
        let mut rows = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        for (col, row, value) in entries {
            if value == 0.0 {
                continue;
            }
            col_ptr[col + 1] += 1;
            rows.push(row);
            values.push(value);
        }
        for j in 0..dim {
            col_ptr[j + 1] += col_ptr[j];
        }
        Ok(SparseColumnMatrix {
            dim,
            col_ptr,
            rows,
            values,
        })
    }

    /// Builds a matrix from a row-major dense slice of length `dim * dim`.
    pub fn from_dense(dim: usize, row_major: &[f64]) -> Result<Self> {
        if row_major.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: row_major.len(),
            });
        }
        Self::from_triplets(dim, row_major.iter().enumerate().map(|(k, &v)| (k / dim, k % dim, v)))
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::from_triplets(dim, core::iter::empty())
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_triplets(dim, (0..dim).map(|i| (i, i, 1.0)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn column(&self, j: Coordinate) -> Result<Column<'_>> {
        j.check(self.dim)?;
        Ok(self.column_unchecked(j.index()))
    }

    pub(crate) fn column_unchecked(&self, j: usize) -> Column<'_> {
        let span = self.col_ptr[j]..self.col_ptr[j + 1];
        Column {
            rows: &self.rows[span.clone()],
            values: &self.values[span],
        }
    }

    pub fn columns(&self) -> impl Iterator<Item = Column<'_>> {
        (0..self.dim).map(move |j| self.column_unchecked(j))
    }

    /// `Σ_i |m_ij|`, in `O(nnz(column j))`.
    pub fn column_l1(&self, j: Coordinate) -> Result<f64> {
        Ok(self.column(j)?.l1())
    }

    pub fn max_column_l1(&self) -> f64 {
        self.columns().map(|c| c.l1()).fold(0.0, f64::max)
    }

    /// Entry `m_ij`, zero when not stored.
    pub fn get(&self, row: Coordinate, col: Coordinate) -> Result<f64> {
        row.check(self.dim)?;
        let column = self.column(col)?;
        Ok(match column.rows.binary_search(&row.index()) {
            Ok(k) => column.values[k],
            Err(_) => 0.0,
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    /// `factor · M`. A zero factor yields the empty matrix.
    pub fn scaled(&self, factor: f64) -> Self {
        if factor == 0.0 {
            return SparseColumnMatrix {
                dim: self.dim,
                col_ptr: vec![0; self.dim + 1],
                rows: Vec::new(),
                values: Vec::new(),
            };
        }
        SparseColumnMatrix {
            dim: self.dim,
            col_ptr: self.col_ptr.clone(),
            rows: self.rows.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// `M v`, accumulated column by column.
    pub fn matvec(&self, v: &DenseVector) -> Result<DenseVector> {
        v.check_len(self.dim)?;
        let mut out = DenseVector::zeros(self.dim);
        for j in 0..self.dim {
            let vj = v[j];
            if vj == 0.0 {
                continue;
            }
            for (i, m) in self.column_unchecked(j).iter() {
                out[i] += m * vj;
            }
        }
        Ok(out)
    }

    /// `dest += scale · M[:, j]`, touching only the stored entries of column `j`.
    pub fn column_scaled_add(&self, dest: &mut DenseVector, j: Coordinate, scale: f64) -> Result<()> {
        dest.check_len(self.dim)?;
        let column = self.column(j)?;
        if scale == 0.0 {
            return Ok(());
        }
        for (i, m) in column.iter() {
            dest[i] += scale * m;
        }
        Ok(())
    }

    /// 0-based `(row, col, value)` triplets in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |j| self.column_unchecked(j).iter().map(move |(i, v)| (i, j, v)))
    }

    /// Row-major dense copy. Meant for small oracle computations.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim * self.dim];
        for (i, j, v) in self.triplets() {
            out[i * self.dim + j] = v;
        }
        out
    }
}
