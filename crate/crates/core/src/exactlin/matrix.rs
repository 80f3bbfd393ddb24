use std::fmt;
use std::ops::{Index, IndexMut};

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
///
/// A linear map `V -> W` with `dim V = c`, `dim W = r` is an `r x c` matrix
/// acting on column vectors, so `g∘f` is `g.mul(f)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    /// Builds from nested rows; `cols` is needed to give shape to a matrix
    /// with zero rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dims(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(RationalMatrix { rows: r, cols, data })
    }

    /// Integer literal shorthand used throughout tests and the corpus.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged literal");
                r.iter().map(|&x| Rational::from(x))
            })
            .collect();
        RationalMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn column_vector(v: Vec<Rational>) -> Self {
        RationalMatrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn from_columns(ambient: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(ambient, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != ambient {
                return Err(Error::dims(format!(
                    "column {j} has length {}, expected {ambient}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product; zero entries of `self` are skipped, which matters for
    /// the very sparse Kronecker-structured operands used everywhere here.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::dims(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Self, what: &str, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    /// Kronecker product with left-factor-major flattening: the basis vector
    /// `e_i ⊗ e_j` of `A ⊗ B` has index `i * dim(B) + j`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// `kron(I_n, self) · rhs` without materializing the Kronecker factor.
    pub fn kron_identity_left_mul(&self, n: usize, rhs: &Self) -> Result<Self> {
        if rhs.rows != n * self.cols {
            return Err(Error::dims(format!(
                "kron(I_{n}, {}x{}) cannot act on {} rows",
                self.rows, self.cols, rhs.rows
            )));
        }
        let blocks: Vec<_> = (0..n)
            .map(|k| self.mul_unchecked(&rhs.row_block(k * self.cols, self.cols)))
            .collect();
        Ok(Self::vstack_all(rhs.cols, &blocks))
    }

    /// Rows `start..start + count`.
    pub fn row_block(&self, start: usize, count: usize) -> Self {
        RationalMatrix {
            rows: count,
            cols: self.cols,
            data: self.data[start * self.cols..(start + count) * self.cols].to_vec(),
        }
    }

    /// Columns `start..start + count`.
    pub fn col_block(&self, start: usize, count: usize) -> Self {
        let mut out = Self::zeros(self.rows, count);
        for i in 0..self.rows {
            for j in 0..count {
                out[(i, j)] = self[(i, start + j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(i, c)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        RationalMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::dims(format!(
                "cannot stack {} columns over {}",
                self.cols, rhs.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(RationalMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Stacks blocks vertically; `cols` fixes the shape when `blocks` is empty.
    pub fn vstack_all(cols: usize, blocks: &[Self]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack_all column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::dims(format!(
                "cannot place {} rows beside {}",
                self.rows, rhs.rows
            )));
        }
        Ok(Self::hstack_all(self.rows, &[self.clone(), rhs.clone()]))
    }

    /// Concatenates blocks horizontally; `rows` fixes the shape when `blocks` is empty.
    pub fn hstack_all(rows: usize, blocks: &[Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack_all row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.cols;
        }
        out
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// First column index where `self` and `other` differ, if any.
    pub fn first_differing_column(&self, other: &Self) -> Option<usize> {
        if self.shape() != other.shape() {
            return Some(0);
        }
        (0..self.cols).find(|&j| (0..self.rows).any(|i| self[(i, j)] != other[(i, j)]))
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
