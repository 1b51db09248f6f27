//! Dense square complex matrices and their JSON exchange format.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

/// On-disk form: `{"n": 3, "re": [[..]], "im": [[..]]}`; `im` may be omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl ComplexMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "{} entries supplied for a {n}x{n} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        Ok(ComplexMatrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        assert!(n > 0);
        let data = (0..n * n).map(|i| f(i / n, i % n)).collect();
        ComplexMatrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |j, k| {
            if j == k {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| Complex64::new(1.0, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |j, k| self[(k, j)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |j, k| self[(k, j)])
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        Self::from_fn(n, |j, k| (0..n).map(|m| self[(j, m)] * other[(m, k)]).sum())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M - M†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |M† M - 1|`.
    pub fn unitary_deviation(&self) -> f64 {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.n))
    }

    /// Column `k` of the result is column `rho(k)` of `self`.
    pub fn permute_columns(&self, rho: &Permutation) -> Self {
        assert_eq!(rho.len(), self.n);
        Self::from_fn(self.n, |j, k| self[(j, rho.apply(k))])
    }

    /// Repeats column `k` `counts[k]` times, blocks in ascending `k`.
    /// `counts` must have one entry per column and sum to the dimension.
    pub fn repeat_columns(&self, counts: &[usize]) -> Result<Self> {
        if counts.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: counts.len(),
            });
        }
        let total: usize = counts.iter().sum();
        if total != self.n {
            return Err(Error::InvalidOccupation(format!(
                "occupation {counts:?} holds {total} particles, expected {}",
                self.n
            )));
        }
        let columns: Vec<usize> = counts
            .iter()
            .enumerate()
            .flat_map(|(k, &s)| std::iter::repeat_n(k, s))
            .collect();
        Ok(Self::from_fn(self.n, |j, k| self[(j, columns[k])]))
    }

    /// Entry-wise `|M_{jk}|²`.
    pub fn elementwise_abs2(&self) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|z| Complex64::new(z.norm_sqr(), 0.0)).collect(),
        }
    }

    /// Square block with rows and columns `start..start + len`.
    pub fn principal_block(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.n && len > 0);
        Self::from_fn(len, |j, k| self[(start + j, start + k)])
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.n, self.n, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        Self::from_fn(m.nrows(), |j, k| m[(j, k)])
    }

    /// Eigenvalues of the hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = self.hermitian_part().to_nalgebra();
        let mut values: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(|a, b| a.total_cmp(b));
        values
    }

    fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        Self::from_fn(self.n, |j, k| (self[(j, k)] + adj[(j, k)]) * 0.5)
    }

    /// Vectors `v_j` whose Gram matrix `⟨v_j|v_k⟩` reproduces this hermitian
    /// positive semi-definite matrix. Uses a Cholesky factor `L L†` and falls
    /// back to the eigen-decomposition square root when a pivot vanishes.
    pub fn gram_vectors(&self) -> Vec<Vec<Complex64>> {
        let factor = self.cholesky().unwrap_or_else(|| self.eigen_sqrt());
        (0..self.n)
            .map(|j| factor.row(j).iter().map(|z| z.conj()).collect())
            .collect()
    }

    fn cholesky(&self) -> Option<Self> {
        let n = self.n;
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut diag = self[(j, j)].re;
            for m in 0..j {
                diag -= l[j * n + m].norm_sqr();
            }
            if diag <= 1e-12 {
                return None;
            }
            let pivot = diag.sqrt();
            l[j * n + j] = Complex64::new(pivot, 0.0);
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for m in 0..j {
                    s -= l[i * n + m] * l[j * n + m].conj();
                }
                l[i * n + j] = s / pivot;
            }
        }
        Some(ComplexMatrix { n, data: l })
    }

    fn eigen_sqrt(&self) -> Self {
        let eig = self.hermitian_part().to_nalgebra().symmetric_eigen();
        let n = self.n;
        Self::from_fn(n, |j, m| eig.eigenvectors[(j, m)] * eig.eigenvalues[m].max(0.0).sqrt())
    }

    /// Haar-random unitary: QR of a complex Gaussian matrix with the phases
    /// of `R`'s diagonal moved into `Q`.
    pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let g = Self::random_gaussian(n, rng).to_nalgebra();
        let qr = g.qr();
        let (q, r) = (qr.q(), qr.r());
        Self::from_fn(n, |j, k| {
            let d = r[(k, k)];
            let phase = if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            q[(j, k)] * phase
        })
    }

    /// Entries with independent standard normal real and imaginary parts.
    pub fn random_gaussian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let data = (0..n * n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        ComplexMatrix { n, data }
    }

    pub fn to_json_value(&self) -> MatrixJson {
        let n = self.n;
        let re = (0..n).map(|j| self.row(j).iter().map(|z| z.re).collect()).collect();
        let im = (0..n).map(|j| self.row(j).iter().map(|z| z.im).collect()).collect();
        MatrixJson { n, re, im: Some(im) }
    }

    pub fn from_json_value(json: &MatrixJson) -> Result<Self> {
        let n = json.n;
        let check = |rows: &Vec<Vec<f64>>, name: &str| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidMatrix(format!("\"{name}\" is not {n}x{n}")));
            }
            Ok(())
        };
        check(&json.re, "re")?;
        if let Some(im) = &json.im {
            check(im, "im")?;
        }
        let data = (0..n * n)
            .map(|i| {
                let (j, k) = (i / n, i % n);
                let im = json.im.as_ref().map_or(0.0, |m| m[j][k]);
                Complex64::new(json.re[j][k], im)
            })
            .collect();
        Self::new(n, data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: MatrixJson = serde_json::from_str(text)?;
        Self::from_json_value(&json)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (j, k): (usize, usize)) -> &Complex64 {
        &self.data[j * self.n + k]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex64 {
        &mut self.data[j * self.n + k]
    }
}
