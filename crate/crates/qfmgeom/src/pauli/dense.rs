//! Minimal dense complex matrix used at the numeric boundary.
//!
//! The symbolic layer does all the algebra; dense matrices only appear when
//! rendering operators, exponentiating, or cross-checking against oracles, so
//! a small row-major container is all that is needed.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> DenseMatrix {
        DenseMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    fn check_dim(&self, other: &DenseMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(DenseMatrix { dim: self.dim, data })
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(DenseMatrix { dim: self.dim, data })
    }

    pub fn scaled(&self, factor: Complex64) -> DenseMatrix {
        let data = self.data.iter().map(|a| a * factor).collect();
        DenseMatrix { dim: self.dim, data }
    }

    /// `self += factor * other`; dimensions must already agree.
    pub fn add_scaled_assign(&mut self, other: &DenseMatrix, factor: Complex64) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let n = self.dim;
        DenseMatrix::from_fn(n, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn fro_dist(&self, other: &DenseMatrix) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = DenseMatrix::zeros(n * m);
        for ra in 0..n {
            for ca in 0..n {
                let a = self.get(ra, ca);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for rb in 0..m {
                    for cb in 0..m {
                        out.set(ra * m + rb, ca * m + cb, a * other.get(rb, cb));
                    }
                }
            }
        }
        out
    }

    /// Residual of the Hermitian symmetry `||A - A^dagger||_F`.
    pub fn hermitian_residual(&self) -> f64 {
        let mut sum = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let d = self.get(r, c) - self.get(c, r).conj();
                sum += d.norm_sqr();
            }
        }
        sum.sqrt()
    }
}
