use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::{Error, Result};

/// A coordinate of `Ω`, stored 0-based.
///
/// Also plays the role of the selector `J_i`: [`Coordinate::select`] keeps
/// entry `i` of a vector and zeroes the rest, without ever building an `N×N`
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate(usize);

impl Coordinate {
    pub const fn new(index: usize) -> Self {
        Coordinate(index)
    }

    pub fn from_one_based(index: usize) -> Result<Self> {
        match index {
            0 => Err(Error::IndexOutOfRange { index, dim: 0 }),
            i => Ok(Coordinate(i - 1)),
        }
    }

    pub const fn index(self) -> usize {
        self.0
    }

    pub const fn one_based(self) -> usize {
        self.0 + 1
    }

    /// Fails unless the coordinate lies in `0..dim`.
    pub fn check(self, dim: usize) -> Result<Self> {
        if self.0 < dim {
            Ok(self)
        } else {
            Err(Error::IndexOutOfRange {
                index: self.one_based(),
                dim,
            })
        }
    }

    /// `J_i v`: a vector equal to `v` at this coordinate and zero elsewhere.
    pub fn select(self, v: &DenseVector) -> Result<DenseVector> {
        self.check(v.len())?;
        let mut out = DenseVector::zeros(v.len());
        out[self] = v[self];
        Ok(out)
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based())
    }
}

/// A dense real vector (`X`, `B`, `F`, `H`, `e`, ...).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DenseVector {
    entries: Vec<f64>,
}

impl DenseVector {
    pub fn zeros(n: usize) -> Self {
        DenseVector { entries: vec![0.0; n] }
    }

    pub fn filled(n: usize, value: f64) -> Self {
        DenseVector {
            entries: vec![value; n],
        }
    }

    /// The uniform probability vector `e = (1/N, .., 1/N)`.
    pub fn uniform(n: usize) -> Self {
        Self::filled(n, 1.0 / n as f64)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.entries
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.entries
    }

    pub fn iter(&self) -> core::slice::Iter<'_, f64> {
        self.entries.iter()
    }

    pub fn l1_norm(&self) -> f64 {
        self.entries.iter().map(|x| x.abs()).sum()
    }

    /// `σ(v) = Σ v_i`.
    pub fn sigma(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.entries.iter().map(|x| x * factor).collect()
    }

    pub fn add(&self, other: &DenseVector) -> Result<Self> {
        self.check_len(other.len())?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DenseVector) -> Result<Self> {
        self.check_len(other.len())?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect())
    }

    /// `self += other`.
    pub fn add_assign(&mut self, other: &DenseVector) -> Result<()> {
        self.check_len(other.len())?;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(())
    }

    /// `|self - other|_1`.
    pub fn l1_distance(&self, other: &DenseVector) -> Result<f64> {
        self.check_len(other.len())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .sum())
    }

    pub fn max_abs_distance(&self, other: &DenseVector) -> Result<f64> {
        self.check_len(other.len())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.len(),
            })
        }
    }
}

impl From<Vec<f64>> for DenseVector {
    fn from(entries: Vec<f64>) -> Self {
        DenseVector { entries }
    }
}

impl From<&[f64]> for DenseVector {
    fn from(entries: &[f64]) -> Self {
        DenseVector {
            entries: entries.to_vec(),
        }
    }
}

impl FromIterator<f64> for DenseVector {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        DenseVector {
            entries: iter.into_iter().collect(),
        }
    }
}

impl Index<usize> for DenseVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.entries[i]
    }
}

impl IndexMut<usize> for DenseVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.entries[i]
    }
}

impl Index<Coordinate> for DenseVector {
    type Output = f64;

    fn index(&self, i: Coordinate) -> &f64 {
        &self.entries[i.0]
    }
}

impl IndexMut<Coordinate> for DenseVector {
    fn index_mut(&mut self, i: Coordinate) -> &mut f64 {
        &mut self.entries[i.0]
    }
}
