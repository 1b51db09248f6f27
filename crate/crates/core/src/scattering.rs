//! Transition probabilities for `n` partially distinguishable immanons
//! scattered by a linear network.
//!
//! Particle `j` enters mode `j` carrying internal state `φ_j`; the network
//! sends mode `j` to `Σ_k M_{jk} |k⟩`. The distinguishability matrix
//! `S_{jk} = ⟨φ_j|φ_k⟩` carries all dependence on the internal states.
//! For an output arrangement `s` the probability is
//!
//! ```text
//! P_λ(s) = 1/(χ_λ(e) ∏ s_k!) Σ_{τ,η} χ_λ(η) ∏_j M*_{j,τ(j)} M_{η(j),τ(j)} S_{j,η(j)}
//! ```
//!
//! with `M` column-expanded according to `s`. For fixed `η` the sum over `τ`
//! is the permanent of `A^η_{jk} = M*_{jk} M_{η(j),k}`, evaluated with Ryser.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::immanant::{
    all_normalized_immanants, column_permuted_immanants, determinant, normalized_immanant, permanent,
};
use crate::matrix::ComplexMatrix;
use crate::partition::{self, character, enumerate_partitions, factorial, hook_dimension, Partition};
use crate::perm::Permutation;
use crate::state::OccupationVector;

/// Largest particle number for the double sum over `S_n × S_n`.
pub const MAX_SCATTERING_PARTICLES: usize = 6;
/// Largest particle number for the purely classical probability.
pub const MAX_DISTINGUISHABLE_PARTICLES: usize = 20;

const HERMITIAN_TOLERANCE: f64 = 1e-12;
const DIAGONAL_TOLERANCE: f64 = 1e-12;
const PSD_TOLERANCE: f64 = 1e-10;
const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Hermitian positive semi-definite matrix with unit diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistinguishabilityMatrix(ComplexMatrix);

impl DistinguishabilityMatrix {
    /// Validates hermiticity, the unit diagonal and positive
    /// semi-definiteness, in that order.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        for j in 0..matrix.dim() {
            let v = matrix[(j, j)];
            if (v - Complex64::new(1.0, 0.0)).norm() > DIAGONAL_TOLERANCE {
                return Err(Error::DiagonalNotUnit {
                    index: j,
                    value: format!("{v}"),
                });
            }
        }
        let min_eigenvalue = matrix.hermitian_eigenvalues()[0];
        if min_eigenvalue < -PSD_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(DistinguishabilityMatrix(matrix))
    }

    /// Fully distinguishable particles.
    pub fn identity(n: usize) -> Self {
        DistinguishabilityMatrix(ComplexMatrix::identity(n))
    }

    /// Fully indistinguishable particles.
    pub fn ones(n: usize) -> Self {
        DistinguishabilityMatrix(ComplexMatrix::ones(n))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }
}

/// Single-particle mode map; unitarity is recorded, not required.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringMatrix {
    matrix: ComplexMatrix,
    unitary: bool,
}

impl ScatteringMatrix {
    pub fn new(matrix: ComplexMatrix) -> Self {
        let unitary = matrix.unitary_deviation() < 1e-10;
        ScatteringMatrix { matrix, unitary }
    }

    /// Balanced two-mode coupler `(1/√2) [[1, 1], [1, -1]]`.
    pub fn balanced_coupler() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(ComplexMatrix::from_real_rows(&[vec![h, h], vec![h, -h]]).expect("2x2"))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

fn check_dimensions(
    lambda: Option<&Partition>,
    m: &ScatteringMatrix,
    s: Option<&DistinguishabilityMatrix>,
) -> Result<usize> {
    let n = m.dim();
    if let Some(lambda) = lambda {
        if lambda.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: lambda.size(),
            });
        }
    }
    if let Some(s) = s {
        if s.dim() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: s.dim(),
            });
        }
    }
    Ok(n)
}

fn expanded(m: &ScatteringMatrix, s: &OccupationVector) -> Result<ComplexMatrix> {
    if s.modes() != m.dim() || s.total() != m.dim() {
        return Err(Error::InvalidOccupation(format!(
            "{s} does not place {} particles into {} modes",
            m.dim(),
            m.dim()
        )));
    }
    m.matrix().repeat_columns(s.counts())
}

/// `Σ_{τ,η} χ_λ(η) ∏_j M*_{j,τ(j)} M_{η(j),τ(j)} S_{j,η(j)}`.
fn interference_sum(lambda: &Partition, m: &ComplexMatrix, s: &ComplexMatrix) -> Result<Complex64> {
    let n = m.dim();
    let mut total = Complex64::new(0.0, 0.0);
    for eta in Permutation::lexicographic(n) {
        let chi = character(lambda, &eta.cycle_type())?;
        if chi == 0 {
            continue;
        }
        let overlap: Complex64 = (0..n).map(|j| s[(j, eta.apply(j))]).product();
        if overlap == Complex64::new(0.0, 0.0) {
            continue;
        }
        let a = ComplexMatrix::from_fn(n, |j, k| m[(j, k)].conj() * m[(eta.apply(j), k)]);
        total += permanent(&a)? * overlap * chi as f64;
    }
    Ok(total)
}

fn real_probability(value: Complex64, unitary: bool) -> Result<f64> {
    if value.im.abs() > IMAGINARY_TOLERANCE * value.re.abs().max(1.0) {
        return Err(Error::NonRealResult {
            real: value.re,
            imag: value.im,
        });
    }
    let mut p = value.re.max(0.0);
    if unitary {
        p = p.min(1.0 + 1e-9);
    }
    Ok(p)
}

/// Probability of finding one particle in every output mode.
pub fn coincidence_probability(lambda: &Partition, m: &ScatteringMatrix, s: &DistinguishabilityMatrix) -> Result<f64> {
    arrangement_probability(lambda, m, s, &OccupationVector::coincidence(m.dim()))
}

/// Probability of the output arrangement `s` (particles per mode).
pub fn arrangement_probability(
    lambda: &Partition,
    m: &ScatteringMatrix,
    s: &DistinguishabilityMatrix,
    occupation: &OccupationVector,
) -> Result<f64> {
    let n = check_dimensions(Some(lambda), m, Some(s))?;
    partition::check_range("particle number", n, 1, MAX_SCATTERING_PARTICLES)?;
    let effective = expanded(m, occupation)?;
    let sum = interference_sum(lambda, &effective, s.matrix())?;
    let norm = hook_dimension(lambda) as f64 * occupation.factorial_product();
    real_probability(sum / norm, m.is_unitary())
}

/// Every arrangement of `n` particles over the `n` output modes with its
/// probability, in reverse lexicographic order of the occupation vectors.
pub fn arrangement_distribution(
    lambda: &Partition,
    m: &ScatteringMatrix,
    s: &DistinguishabilityMatrix,
) -> Result<Vec<(OccupationVector, f64)>> {
    let n = m.dim();
    OccupationVector::enumerate(n, n)
        .into_iter()
        .map(|occ| {
            let p = arrangement_probability(lambda, m, s, &occ)?;
            Ok((occ, p))
        })
        .collect()
}

/// Fully indistinguishable particles (`S = J`):
/// `1/(n! ∏ s!) Σ_ρ |imm_λ(M_ρ)|²`.
pub fn indistinguishable_probability(
    lambda: &Partition,
    m: &ScatteringMatrix,
    occupation: &OccupationVector,
) -> Result<f64> {
    let n = check_dimensions(Some(lambda), m, None)?;
    partition::check_range("particle number", n, 1, MAX_SCATTERING_PARTICLES)?;
    let effective = expanded(m, occupation)?;
    let weight = occupation.factorial_product();
    let value = if lambda.is_trivial() {
        permanent(&effective)?.norm_sqr() / weight
    } else if lambda.is_alternating() {
        determinant(&effective).norm_sqr() / weight
    } else {
        let total: f64 = column_permuted_immanants(lambda, &effective)?
            .iter()
            .map(|z| z.norm_sqr())
            .sum();
        total / (factorial(n) as f64 * weight)
    };
    Ok(value)
}

/// Fully distinguishable particles: `perm(|M|²)/∏ s!`, independent of `λ`.
pub fn distinguishable_probability(m: &ScatteringMatrix, occupation: &OccupationVector) -> Result<f64> {
    let n = m.dim();
    partition::check_range("particle number", n, 1, MAX_DISTINGUISHABLE_PARTICLES)?;
    let effective = expanded(m, occupation)?.elementwise_abs2();
    Ok(permanent(&effective)?.re / occupation.factorial_product())
}

/// `imm_λ(S)/χ_λ(e)`, the factor multiplying the classical probability of
/// all particles leaving through one mode.
pub fn bunching_factor(lambda: &Partition, s: &DistinguishabilityMatrix) -> Result<f64> {
    if lambda.size() != s.dim() {
        return Err(Error::SizeMismatch {
            expected: s.dim(),
            found: lambda.size(),
        });
    }
    let value = normalized_immanant(lambda, s.matrix())?;
    hermitian_real(value)
}

fn hermitian_real(value: Complex64) -> Result<f64> {
    if value.im.abs() > IMAGINARY_TOLERANCE * value.re.abs().max(1.0) {
        return Err(Error::NonRealResult {
            real: value.re,
            imag: value.im,
        });
    }
    Ok(value.re)
}

/// Probability that every particle leaves through mode `mode`:
/// `∏_j |M_{j,mode}|² · imm_λ(S)/χ_λ(e)`.
pub fn bunching_probability(
    lambda: &Partition,
    m: &ScatteringMatrix,
    s: &DistinguishabilityMatrix,
    mode: usize,
) -> Result<f64> {
    let n = check_dimensions(Some(lambda), m, Some(s))?;
    if mode >= n {
        return Err(Error::OutOfRange {
            quantity: "mode",
            value: mode,
            min: 0,
            max: n - 1,
        });
    }
    let classical: f64 = (0..n).map(|j| m.matrix()[(j, mode)].norm_sqr()).product();
    Ok(classical * bunching_factor(lambda, s)?)
}

/// Unit diagonal, every off-diagonal entry equal to `x ∈ [0, 1]`.
pub fn transition_matrix(n: usize, x: f64) -> Result<DistinguishabilityMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange {
            quantity: "n",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ValueOutOfRange {
            quantity: "x",
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(DistinguishabilityMatrix(ComplexMatrix::from_fn(n, |j, k| {
        Complex64::new(if j == k { 1.0 } else { x }, 0.0)
    })))
}

/// One cell of a distinguishability sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: Partition,
    pub x: f64,
    pub bunching_factor: f64,
}

/// Largest particle number for [`transition_sweep`].
pub const MAX_SWEEP_PARTICLES: usize = 6;

/// Bunching factors of every partition of `n` along `x_grid`.
///
/// Rows run from `(1, …, 1)` up to `(n)` in lexicographic order, which is a
/// linear extension of majorization; within a partition they follow the grid.
pub fn transition_sweep(n: usize, x_grid: &[f64]) -> Result<Vec<SweepRow>> {
    partition::check_range("n", n, 1, MAX_SWEEP_PARTICLES)?;
    let mut partitions = enumerate_partitions(n)?;
    partitions.reverse();
    let per_x: Vec<Vec<(Partition, Complex64)>> = x_grid
        .par_iter()
        .map(|&x| all_normalized_immanants(transition_matrix(n, x)?.matrix()))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(partitions.len() * x_grid.len());
    for lambda in &partitions {
        for (&x, values) in x_grid.iter().zip(&per_x) {
            let value = values
                .iter()
                .find(|(l, _)| l == lambda)
                .map(|(_, v)| *v)
                .expect("every partition evaluated");
            rows.push(SweepRow {
                lambda: lambda.clone(),
                x,
                bunching_factor: hermitian_real(value)?,
            });
        }
    }
    Ok(rows)
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn linear_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    max
                } else {
                    min + (max - min) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

/// CSV with header `lambda,x,bunching_factor`.
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("lambda,x,bunching_factor\n");
    for row in rows {
        out.push_str(&format!("{},{},{}\n", row.lambda.label(), row.x, row.bunching_factor));
    }
    out
}
