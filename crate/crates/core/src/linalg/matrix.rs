use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

use super::field::{Field, FieldElem};

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, field, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = field.from_i64(v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<FieldElem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero)
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.field.zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    pub fn scale(&self, c: &FieldElem) -> Matrix {
        self.with_data(self.data.iter().map(|a| a * c).collect())
    }

    fn with_data(&self, data: Vec<FieldElem>) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, data })
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// In-place Gauss–Jordan elimination. Returns the pivot columns.
    /// `limit_cols` restricts pivot search to the first columns (used for
    /// augmented systems).
    pub(crate) fn eliminate(&mut self, limit_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = &self[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<(usize, FieldElem)> = (c..self.cols)
                .filter(|&j| !self[(r, j)].is_zero())
                .map(|j| (j, self[(r, j)].clone()))
                .collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let t = &f * v;
                    self[(i, *j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.eliminate(m.cols);
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the null space `{x : self·x = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k[(f, idx)] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                k[(pc, idx)] = -&r[(row, f)];
            }
        }
        k
    }

    /// Solves `self·x = b` for a matrix right-hand side; `None` if inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::Shape(format!(
                "solve: {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let mut aug = self.hstack(b)?;
        let pivots = aug.eliminate(self.cols);
        let rank = pivots.len();
        for i in rank..aug.rows {
            for j in 0..b.cols {
                if !aug[(i, self.cols + j)].is_zero() {
                    return Ok(None);
                }
            }
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = aug[(row, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn solve_vec(&self, b: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        let rhs = Matrix::from_columns(self.field, b.len(), &[b.to_vec()]);
        Ok(self.solve(&rhs)?.map(|x| x.column(0)))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Indices of columns that are linearly independent of all earlier columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElem;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElem {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElem {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(field: Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let mut m = Matrix::zeros(field, r, c);
        for i in 0..r {
            for j in 0..c {
                m[(i, j)] = field.from_i64(rng.gen_range(-3..=3));
            }
        }
        m
    }

    #[test]
    fn rref_identity() {
        let f = Field::Rational;
        let (r, p) = Matrix::identity(f, 2).rref();
        assert_eq!(r, Matrix::identity(f, 2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let f = Field::Rational;
        let (r, p) = Matrix::from_i64(f, &[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, Matrix::from_i64(f, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_gf7_same_row_space() {
        // Row spaces agree iff stacking either onto the other does not raise the rank.
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random(f, 20, 20, &mut rng);
        let (r, _) = a.rref();
        let rank = a.rank();
        assert_eq!(r.rank(), rank);
        assert_eq!(a.vstack(&r).unwrap().rank(), rank);
        assert_eq!(r.vstack(&a).unwrap().rank(), rank);
        assert_eq!(r.rref().0, r);
    }

    #[test]
    fn solve_cases() {
        let f = Field::Rational;
        let b = Matrix::from_i64(f, &[&[3], &[-1]]);
        assert_eq!(Matrix::identity(f, 2).solve(&b).unwrap().unwrap(), b);
        assert!(Matrix::zeros(f, 2, 2).solve(&b).unwrap().is_none());
        assert!(Matrix::zeros(f, 3, 2).solve(&b).is_err());

        let g = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random(g, 12, 9, &mut rng);
        let x0 = random(g, 9, 2, &mut rng);
        let rhs = a.mul(&x0).unwrap();
        let x = a.solve(&rhs).unwrap().unwrap();
        assert!(a.mul(&x).unwrap().sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn kernel_cases() {
        let f = Field::Rational;
        assert_eq!(Matrix::identity(f, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(f, 3, 3).kernel_basis().cols(), 3);
        let k = Matrix::from_i64(f, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)], -k[(1, 0)].clone());
        assert!(!k[(0, 0)].is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::Rational;
        let a = Matrix::from_i64(f, &[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(f, 2));
        assert!(Matrix::from_i64(f, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn random_rationals_rank_nullity() {
        let f = Field::Rational;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10 {
            let r = rng.gen_range(1..7);
            let c = rng.gen_range(1..7);
            let a = random(f, r, c, &mut rng);
            let k = a.kernel_basis();
            assert_eq!(a.rank() + k.cols(), c);
            assert!(a.mul(&k).unwrap().is_zero());
        }
    }
}
