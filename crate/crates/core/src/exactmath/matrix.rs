use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use super::Int;
use crate::error::{Error, Result};

/// Dense integer matrix, row-major. Dimensions are fixed at construction
/// except through [`IntMatrix::push_row`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows; `cols` is needed so that an empty row list
    /// still has a width.
    pub fn from_rows<T, R>(cols: usize, rows: R) -> Result<Self>
    where
        T: Into<Int>,
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
    {
        let mut m = Self::zeros(0, cols);
        for row in rows {
            let row: Vec<Int> = row.into_iter().map(Into::into).collect();
            m.push_row(row)?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Int]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: Vec<Int>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::dims(format!(
                "row of length {} appended to a matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::dims(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.rows {
            return Err(Error::dims(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![Int::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * &self[(i, j)];
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::dims(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn max_abs_entry(&self) -> Int {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = k * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = k * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;

    fn index(&self, (i, j): (usize, usize)) -> &Int {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.row_iter()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
