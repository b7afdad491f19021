use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{Chart, Scalar};

use super::TensorError;

/// Dense matrix of scalars on one chart, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    chart: Chart,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            let row: Vec<alloc::string::String> = self.row(i).iter().map(Scalar::to_expr).collect();
            list.entry(&row);
        }
        list.finish()
    }
}

impl Matrix {
    pub fn zeros(chart: &Chart, rows: usize, cols: usize) -> Matrix {
        Matrix { chart: chart.clone(), rows, cols, data: alloc::vec![Scalar::zero(chart); rows * cols] }
    }

    pub fn identity(chart: &Chart, n: usize) -> Matrix {
        let mut m = Matrix::zeros(chart, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(chart));
        }
        m
    }

    pub fn from_rows(chart: &Chart, rows: Vec<Vec<Scalar>>) -> Result<Matrix, TensorError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(TensorError::Dimension { expected: ncols, found: row.len() });
            }
            for s in row {
                if !s.chart().same(chart) {
                    return Err(TensorError::ChartMismatch);
                }
                data.push(s);
            }
        }
        Ok(Matrix { chart: chart.clone(), rows: nrows, cols: ncols, data })
    }

    /// Matrix whose column `j` is `cols[j]`.
    pub fn from_columns(chart: &Chart, cols: &[Vec<Scalar>]) -> Result<Matrix, TensorError> {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(chart, nrows, ncols);
        for (j, c) in cols.iter().enumerate() {
            if c.len() != nrows {
                return Err(TensorError::Dimension { expected: nrows, found: c.len() });
            }
            for (i, s) in c.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        Ok(m)
    }

    pub fn parse(chart: &Chart, rows: &[Vec<&str>]) -> Result<Matrix, TensorError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|t| Scalar::parse(t, chart)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(chart, parsed)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.chart, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix { chart: self.chart.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { chart: self.chart.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(&self.chart, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out.set(i, j, dot((0..self.cols).map(|k| (self.get(i, k), other.get(k, j))), &self.chart));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i).iter().zip(v), &self.chart)).collect()
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        let mw = self.mul_vec(w);
        dot(v.iter().zip(&mw), &self.chart)
    }

    /// Determinant by fraction-aware Gaussian elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Scalar::one(&self.chart);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Scalar::zero(&self.chart);
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = &det * &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pivot;
                for c in col..n {
                    let v = &a[r][c] - &(&factor * &a[col][c]);
                    a[r][c] = v;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix, TensorError> {
        if !self.is_square() {
            return Err(TensorError::Dimension { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(&self.chart, n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(TensorError::Singular)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot = a[col][col].recip()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &pivot;
                inv[col][c] = &inv[col][c] * &pivot;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let v = &a[r][c] - &(&factor * &a[col][c]);
                    a[r][c] = v;
                    let w = &inv[r][c] - &(&factor * &inv[col][c]);
                    inv[r][c] = w;
                }
            }
        }
        Matrix::from_rows(&self.chart, inv)
    }

    /// Entries whose `(i, j)` and `(j, i)` values violate `m_ij = sign * m_ji`.
    pub(crate) fn symmetry_defects(&self, sign: i64) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = if sign > 0 { self.get(i, j) - self.get(j, i) } else { self.get(i, j) + self.get(j, i) };
                if !d.is_zero() {
                    out.push((i, j, d));
                }
            }
        }
        out
    }
}

/// `Σ aᵢ bᵢ`, skipping zero factors.
pub fn dot<'a>(pairs: impl IntoIterator<Item = (&'a Scalar, &'a Scalar)>, chart: &Chart) -> Scalar {
    let mut acc = Scalar::zero(chart);
    for (a, b) in pairs {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = &acc + &(a * b);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let c = Chart::coordinates(["x", "y"]).unwrap();
        let m = Matrix::parse(&c, &[alloc::vec!["1 + y^2", "-y"], alloc::vec!["-y", "1"]]).unwrap();
        assert!(m.det().is_one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&c, 2));
        let singular = Matrix::parse(&c, &[alloc::vec!["x", "x*y"], alloc::vec!["1", "y"]]).unwrap();
        assert!(singular.det().is_zero());
        assert_eq!(singular.inverse(), Err(TensorError::Singular));
    }
}
