//! Immanants `imm_λ(M) = Σ_σ χ_λ(σ) ∏_j M_{j,σ(j)}` and the two
//! one-dimensional special cases, the permanent and the determinant.
//!
//! The general kernel walks `S_n` depth-first in lexicographic order of
//! image tuples, carrying the running row product, and accumulates each
//! product into the sum of its conjugacy class. An immanant is then the
//! character-weighted sum over classes, so one walk serves every `λ`.
//! The walk is split by the image of row 0; the partial sums are combined in
//! that fixed order, so results are bitwise identical whether or not the
//! branches run on worker threads.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::partition::{self, character, enumerate_partitions, hook_dimension, Partition};
use crate::perm::{cycle_key, cycle_key_of_parts, Permutation};

/// Largest dimension for the general character-weighted sum.
pub const MAX_IMMANANT_SIZE: usize = 10;
/// Largest dimension for Ryser's formula.
pub const MAX_PERMANENT_SIZE: usize = 24;
/// Largest dimension for [`column_permuted_immanants`].
pub const MAX_COLUMN_PERMUTED_SIZE: usize = 7;

const PARALLEL_THRESHOLD: usize = 8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Sums of `∏_j M_{j,σ(j)}` over each conjugacy class of `S_n`.
#[derive(Clone, Debug)]
pub struct ClassSums {
    classes: Vec<Partition>,
    sums: Vec<Complex64>,
}

impl ClassSums {
    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    pub fn sums(&self) -> &[Complex64] {
        &self.sums
    }

    /// `imm_λ(M)` from the class sums.
    pub fn immanant(&self, lambda: &Partition) -> Result<Complex64> {
        let n = self.classes[0].size();
        if lambda.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: lambda.size(),
            });
        }
        let mut total = ZERO;
        for (class, &sum) in self.classes.iter().zip(&self.sums) {
            total += sum * character(lambda, class)? as f64;
        }
        Ok(total)
    }
}

/// Class index lookup keyed by the compact cycle-type code.
struct ClassIndex {
    classes: Vec<Partition>,
    index: HashMap<u64, usize>,
}

impl ClassIndex {
    fn new(n: usize) -> Result<Self> {
        let classes = enumerate_partitions(n)?;
        let index = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (cycle_key_of_parts(n, c.parts()), i))
            .collect();
        Ok(ClassIndex { classes, index })
    }

    #[inline]
    fn of(&self, images: &[usize], visited: &mut [bool]) -> usize {
        self.index[&cycle_key(images, visited)]
    }
}

pub fn class_sums(m: &ComplexMatrix) -> Result<ClassSums> {
    let n = m.dim();
    partition::check_range("matrix dimension", n, 1, MAX_IMMANANT_SIZE)?;
    let lookup = ClassIndex::new(n)?;

    let branch = |first: usize| -> Vec<Complex64> {
        let mut acc = vec![ZERO; lookup.classes.len()];
        let mut images = vec![0usize; n];
        let mut visited = vec![false; n];
        images[0] = first;
        walk(
            m,
            &lookup,
            1,
            1u32 << first,
            m[(0, first)],
            &mut images,
            &mut visited,
            &mut acc,
        );
        acc
    };
    let partials: Vec<Vec<Complex64>> = if n >= PARALLEL_THRESHOLD {
        (0..n).into_par_iter().map(branch).collect()
    } else {
        (0..n).map(branch).collect()
    };

    let mut sums = vec![ZERO; lookup.classes.len()];
    for partial in &partials {
        for (s, p) in sums.iter_mut().zip(partial) {
            *s += p;
        }
    }
    Ok(ClassSums {
        classes: lookup.classes,
        sums,
    })
}

#[allow(clippy::too_many_arguments)]
fn walk(
    m: &ComplexMatrix,
    lookup: &ClassIndex,
    row: usize,
    used: u32,
    product: Complex64,
    images: &mut [usize],
    visited: &mut [bool],
    acc: &mut [Complex64],
) {
    let n = m.dim();
    if row == n {
        acc[lookup.of(images, visited)] += product;
        return;
    }
    for (col, &entry) in m.row(row).iter().enumerate() {
        if used & (1 << col) != 0 {
            continue;
        }
        images[row] = col;
        walk(
            m,
            lookup,
            row + 1,
            used | (1 << col),
            product * entry,
            images,
            visited,
            acc,
        );
    }
}

fn check_square_for(lambda: &Partition, m: &ComplexMatrix) -> Result<()> {
    if lambda.size() != m.dim() {
        return Err(Error::SizeMismatch {
            expected: m.dim(),
            found: lambda.size(),
        });
    }
    Ok(())
}

/// `imm_λ(M)`. Dispatches to Ryser's permanent for `λ = (n)` and to LU
/// elimination for `λ = (1, …, 1)`.
pub fn immanant(lambda: &Partition, m: &ComplexMatrix) -> Result<Complex64> {
    check_square_for(lambda, m)?;
    if lambda.is_trivial() {
        return permanent(m);
    }
    if lambda.is_alternating() {
        return Ok(determinant(m));
    }
    class_sums(m)?.immanant(lambda)
}

/// `imm_λ(M) / χ_λ(e)`.
pub fn normalized_immanant(lambda: &Partition, m: &ComplexMatrix) -> Result<Complex64> {
    Ok(immanant(lambda, m)? / hook_dimension(lambda) as f64)
}

/// Normalized immanants for every partition of `n`, in reverse
/// lexicographic order, from a single pass over `S_n`.
pub fn all_normalized_immanants(m: &ComplexMatrix) -> Result<Vec<(Partition, Complex64)>> {
    let sums = class_sums(m)?;
    enumerate_partitions(m.dim())?
        .into_iter()
        .map(|lambda| {
            let value = sums.immanant(&lambda)? / hook_dimension(&lambda) as f64;
            Ok((lambda, value))
        })
        .collect()
}

/// Ryser's formula with Gray-code column updates, `O(2^n n)`.
pub fn permanent(m: &ComplexMatrix) -> Result<Complex64> {
    let n = m.dim();
    partition::check_range("matrix dimension", n, 1, MAX_PERMANENT_SIZE)?;
    let mut row_sums = vec![ZERO; n];
    let mut total = ZERO;
    let mut gray: u32 = 0;
    for k in 1u32..(1u32 << n) {
        let col = k.trailing_zeros() as usize;
        gray ^= 1 << col;
        if gray & (1 << col) != 0 {
            for (j, s) in row_sums.iter_mut().enumerate() {
                *s += m[(j, col)];
            }
        } else {
            for (j, s) in row_sums.iter_mut().enumerate() {
                *s -= m[(j, col)];
            }
        }
        let product: Complex64 = row_sums.iter().product();
        if gray.count_ones() % 2 == 1 {
            total -= product;
        } else {
            total += product;
        }
    }
    if n % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// LU elimination with partial pivoting, `O(n³)`.
pub fn determinant(m: &ComplexMatrix) -> Complex64 {
    let n = m.dim();
    let mut a: Vec<Complex64> = m.data().to_vec();
    let mut det = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
            .expect("non-empty range");
        let p = a[pivot * n + col];
        if p.norm() == 0.0 {
            return ZERO;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        det *= p;
        for row in col + 1..n {
            let factor = a[row * n + col] / p;
            if factor == ZERO {
                continue;
            }
            for k in col..n {
                let v = a[col * n + k];
                a[row * n + k] -= factor * v;
            }
        }
    }
    det
}

/// `imm_λ(M_ρ)` for every `ρ ∈ S_n` in lexicographic order, where column
/// `k` of `M_ρ` is column `ρ(k)` of `M`.
///
/// Uses `imm_λ(M_ρ) = Σ_π χ_λ(ρ⁻¹ π) ∏_j M_{j,π(j)}`: the `n!` row products
/// are computed once and re-weighted per `ρ`.
pub fn column_permuted_immanants(lambda: &Partition, m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    check_square_for(lambda, m)?;
    let n = m.dim();
    partition::check_range("matrix dimension", n, 1, MAX_COLUMN_PERMUTED_SIZE)?;

    let perms: Vec<Permutation> = Permutation::lexicographic(n).collect();
    let products: Vec<Complex64> = perms
        .iter()
        .map(|p| (0..n).map(|j| m[(j, p.apply(j))]).product())
        .collect();
    let lookup = ClassIndex::new(n)?;
    let chars: Vec<f64> = lookup
        .classes
        .iter()
        .map(|c| character(lambda, c).map(|v| v as f64))
        .collect::<Result<_>>()?;

    let values = perms
        .par_iter()
        .map(|rho| {
            let inv = rho.inverse();
            let mut images = vec![0usize; n];
            let mut visited = vec![false; n];
            let mut total = ZERO;
            for (pi, &prod) in perms.iter().zip(&products) {
                for (j, slot) in images.iter_mut().enumerate() {
                    *slot = inv.apply(pi.apply(j));
                }
                let chi = chars[lookup.of(&images, &mut visited)];
                if chi != 0.0 {
                    total += prod * chi;
                }
            }
            total
        })
        .collect();
    Ok(values)
}
