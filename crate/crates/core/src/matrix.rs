use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, GaussInt};

/// A dense row-major matrix over GI(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussInt>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![GaussInt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(n, GaussInt::ONE)
    }

    pub fn diagonal(n: usize, d: GaussInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[GaussInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GaussInt> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, values: &[GaussInt]) {
        assert_eq!(values.len(), self.rows);
        for (r, &v) in values.iter().enumerate() {
            self[(r, c)] = v;
        }
    }

    pub fn count_zeros(&self) -> usize {
        self.data.iter().filter(|x| x.is_zero()).count()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(GaussInt::ZERO, |acc, k| {
                ctx.add(acc, ctx.mul(self[(r, k)], other[(k, c)]))
            })
        }))
    }

    pub fn mul_vec(&self, ctx: &FieldCtx, v: &[GaussInt]) -> Result<Vec<GaussInt>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(GaussInt::ZERO, |acc, (&a, &x)| ctx.add(acc, ctx.mul(a, x)))
            })
            .collect())
    }

    /// First `(row, col)` where the two matrices differ, scanning row-major.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.cols, i % self.cols))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussInt;
    fn index(&self, (r, c): (usize, usize)) -> &GaussInt {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussInt {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

/// Right-aligned columns, one row per line.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_identity() {
        let ctx = FieldCtx::new(7).unwrap();
        let a = Matrix::from_fn(3, 3, |r, c| ctx.elem((r * 3 + c) as i64, r as i64));
        let i = Matrix::identity(3);
        assert_eq!(a.mul(&ctx, &i).unwrap(), a);
        assert_eq!(i.mul(&ctx, &a).unwrap(), a);
        let v = vec![ctx.real(1), ctx.real(0), ctx.real(0)];
        assert_eq!(a.mul_vec(&ctx, &v).unwrap(), a.column(0));
        assert!(a.mul_vec(&ctx, &v[..2]).is_err());
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn first_difference_is_row_major() {
        let ctx = FieldCtx::new(7).unwrap();
        let a = Matrix::identity(4);
        let mut b = a.clone();
        assert_eq!(a.first_difference(&b), None);
        b[(2, 1)] = ctx.real(3);
        b[(3, 0)] = ctx.real(3);
        assert_eq!(a.first_difference(&b), Some((2, 1)));
    }
}
