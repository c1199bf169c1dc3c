use std::ops::{Deref, Index, IndexMut};

use super::{hermitian_eigenvalues, is_finite, ComplexScalar, Spectrum};
use crate::tolerance::{EPS_EIG, EPS_MAT};
use crate::{Error, Result};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<ComplexScalar>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ComplexScalar::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ComplexScalar::new(1.0, 0.0);
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<ComplexScalar>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::NotSquare {
                entries: data.len(),
                dim,
            });
        }
        if !data.iter().all(|&z| is_finite(z)) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: Vec<Vec<ComplexScalar>>) -> Result<Self> {
        let dim = rows.len();
        let data: Vec<_> = rows.into_iter().flatten().collect();
        Self::from_row_major(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ComplexScalar]> {
        self.data.chunks(self.dim.max(1))
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(x, y)| x - y).collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self[(i, k)];
                for j in 0..n {
                    m[(i, j)] += x * rhs[(k, j)];
                }
            }
        }
        Ok(m)
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |m(i,j) − conj(m(j,i))|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = ComplexScalar;

    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        &mut self.data[i * self.dim + j]
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix. The spectrum is
/// computed once during validation and kept.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.dim == 0 {
            return Err(Error::NotDensityMatrix("empty matrix".into()));
        }
        let defect = m.hermiticity_defect();
        if defect > EPS_MAT {
            return Err(Error::NotHermitian(defect));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > EPS_MAT || tr.im.abs() > EPS_MAT {
            return Err(Error::NotDensityMatrix(format!("trace {tr}")));
        }
        let spectrum = hermitian_eigenvalues(&m)?;
        if let Some(&min) = spectrum.values().last() {
            if min < -EPS_EIG {
                return Err(Error::NotDensityMatrix(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(Self {
            matrix: m,
            spectrum,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl Deref for DensityMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn rejects_invalid_density_matrices() {
        let not_herm = Matrix::from_rows(vec![
            vec![c(0.5, 0.0), c(0.1, 0.0)],
            vec![c(0.2, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(DensityMatrix::new(not_herm), Err(Error::NotHermitian(_))));

        let bad_trace = Matrix::identity(2);
        assert!(matches!(DensityMatrix::new(bad_trace), Err(Error::NotDensityMatrix(_))));

        let negative = Matrix::from_rows(vec![
            vec![c(1.5, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(DensityMatrix::new(negative), Err(Error::NotDensityMatrix(_))));
    }

    #[test]
    fn rejects_non_finite_and_ragged() {
        assert!(Matrix::from_row_major(2, vec![c(0.0, 0.0); 3]).is_err());
        assert_eq!(
            Matrix::from_row_major(1, vec![c(f64::INFINITY, 0.0)]),
            Err(Error::NonFinite("matrix entries"))
        );
    }

    #[test]
    fn maximally_mixed_purity() {
        let rho = DensityMatrix::new(Matrix::identity(2).scale(c(0.5, 0.0))).unwrap();
        assert!((rho.purity() - 0.5).abs() < 1e-15);
    }
}
