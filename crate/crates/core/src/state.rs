//! Explicit `n`-particle state vectors over `(ℂ^d)^{⊗n}`.
//!
//! Basis index layout is little-endian in the particle number:
//! `index = Σ_q digit_q · d^q`, where `digit_q` is the single-particle basis
//! index of particle `q`. With internal degrees of freedom the single-particle
//! index is `mode · d_int + internal`.
//!
//! Permutation operators act as `Q_σ |ψ_1, …, ψ_n⟩ = |ψ_σ(1), …, ψ_σ(n)⟩`,
//! which composes as `Q_σ Q_τ = Q_{τ∘σ}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::immanant::normalized_immanant;
use crate::matrix::ComplexMatrix;
use crate::partition::{self, character, factorial, hook_dimension, majorizes, Partition};
use crate::perm::Permutation;

/// Upper bound on `d^n`.
pub const MAX_DENSE_DIMENSION: usize = 10_000_000;
/// Largest particle number for dense symmetrizer application.
pub const MAX_SYMMETRIZER_PARTICLES: usize = 6;
/// Relative norm below which a projected state counts as vanishing.
pub const VANISHING_NORM: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleParticleSpace {
    pub external: usize,
    pub internal: usize,
}

impl SingleParticleSpace {
    pub fn new(external: usize, internal: usize) -> Result<Self> {
        if external == 0 || internal == 0 {
            return Err(Error::InvalidMatrix(format!(
                "single-particle space needs positive dimensions, got {external}x{internal}"
            )));
        }
        Ok(SingleParticleSpace { external, internal })
    }

    /// Space without internal label.
    pub fn modes(d: usize) -> Self {
        SingleParticleSpace {
            external: d,
            internal: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.external * self.internal
    }

    /// Single-particle basis index of `(mode, internal)`.
    pub fn index(&self, mode: usize, internal: usize) -> usize {
        mode * self.internal + internal
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    space: SingleParticleSpace,
    amplitudes: Vec<Complex64>,
}

/// One entry of the JSON debug dump.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AmplitudeEntry {
    pub digits: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

fn dense_dimension(n: usize, d: usize) -> Result<usize> {
    let dim = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if dim > MAX_DENSE_DIMENSION as u128 {
        return Err(Error::StateTooLarge {
            dimension: dim,
            limit: MAX_DENSE_DIMENSION,
        });
    }
    Ok(dim as usize)
}

impl DenseState {
    pub fn zeros(n: usize, space: SingleParticleSpace) -> Result<Self> {
        let len = dense_dimension(n, space.dim())?;
        Ok(DenseState {
            n,
            space,
            amplitudes: vec![ZERO; len],
        })
    }

    pub fn from_amplitudes(n: usize, space: SingleParticleSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = dense_dimension(n, space.dim())?;
        if amplitudes.len() != len {
            return Err(Error::SizeMismatch {
                expected: len,
                found: amplitudes.len(),
            });
        }
        Ok(DenseState { n, space, amplitudes })
    }

    /// `|v_1⟩ ⊗ … ⊗ |v_n⟩`, particle `q` in state `vectors[q]`.
    pub fn product(space: SingleParticleSpace, vectors: &[Vec<Complex64>]) -> Result<Self> {
        let d = space.dim();
        for v in vectors {
            if v.len() != d {
                return Err(Error::SizeMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
        }
        let mut state = Self::zeros(vectors.len(), space)?;
        for (index, amp) in state.amplitudes.iter_mut().enumerate() {
            let mut rest = index;
            let mut value = Complex64::new(1.0, 0.0);
            for v in vectors {
                value *= v[rest % d];
                rest /= d;
            }
            *amp = value;
        }
        Ok(state)
    }

    /// Product of single-particle basis states.
    pub fn basis(space: SingleParticleSpace, digits: &[usize]) -> Result<Self> {
        let d = space.dim();
        let vectors: Vec<Vec<Complex64>> = digits.iter().map(|&i| basis_vector(d, i)).collect();
        Self::product(space, &vectors)
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> SingleParticleSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState) -> Complex64 {
        assert_eq!(self.amplitudes.len(), other.amplitudes.len());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scaled(&self, c: Complex64) -> DenseState {
        DenseState {
            amplitudes: self.amplitudes.iter().map(|&z| z * c).collect(),
            ..self.clone()
        }
    }

    pub fn max_abs_diff(&self, other: &DenseState) -> f64 {
        assert_eq!(self.amplitudes.len(), other.amplitudes.len());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn add_scaled(&mut self, other: &DenseState, c: Complex64) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += b * c;
        }
    }

    /// Per-particle single-particle indices of a basis index.
    pub fn digits(&self, index: usize) -> Vec<usize> {
        let d = self.space.dim();
        let mut rest = index;
        (0..self.n)
            .map(|_| {
                let digit = rest % d;
                rest /= d;
                digit
            })
            .collect()
    }

    /// Amplitudes with modulus above `1e-14`.
    pub fn dump(&self) -> Vec<AmplitudeEntry> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 1e-14)
            .map(|(i, z)| AmplitudeEntry {
                digits: self.digits(i),
                re: z.re,
                im: z.im,
            })
            .collect()
    }

    pub fn dump_json(&self) -> String {
        serde_json::to_string(&self.dump()).expect("dump serializes")
    }
}

/// Unit vector `e_i` in `ℂ^d`.
pub fn basis_vector(d: usize, i: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; d];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

/// `Q_σ |state⟩`: the particle in slot `j` takes the state previously held by
/// slot `σ(j)`.
pub fn permutation_operator(sigma: &Permutation, state: &DenseState) -> Result<DenseState> {
    let n = state.n;
    if sigma.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: sigma.len(),
        });
    }
    let d = state.space.dim();
    let strides: Vec<usize> = (0..n).map(|q| d.pow(q as u32)).collect();
    // Source slot m reads the target digit at σ⁻¹(m).
    let target_stride: Vec<usize> = (0..n).map(|j| strides[sigma.apply(j)]).collect();
    let mut out = vec![ZERO; state.amplitudes.len()];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut rest = k;
        let mut source = 0;
        for &stride in &target_stride {
            source += (rest % d) * stride;
            rest /= d;
        }
        *slot = state.amplitudes[source];
    }
    Ok(DenseState {
        amplitudes: out,
        ..state.clone()
    })
}

/// `P_λ = (χ_λ(e)/n!) Σ_σ χ_λ(σ) Q_σ`.
pub fn symmetrizer(lambda: &Partition, state: &DenseState) -> Result<DenseState> {
    let weighted = character_weighted_sum(lambda, state)?;
    let prefactor = hook_dimension(lambda) as f64 / factorial(state.n) as f64;
    Ok(weighted.scaled(Complex64::new(prefactor, 0.0)))
}

/// `Σ_σ χ_λ(σ) Q_σ |state⟩`.
fn character_weighted_sum(lambda: &Partition, state: &DenseState) -> Result<DenseState> {
    let n = state.n;
    if lambda.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: lambda.size(),
        });
    }
    partition::check_range("particle number", n, 1, MAX_SYMMETRIZER_PARTICLES)?;
    let mut out = DenseState {
        amplitudes: vec![ZERO; state.amplitudes.len()],
        ..state.clone()
    };
    for sigma in Permutation::lexicographic(n) {
        let chi = character(lambda, &sigma.cycle_type())?;
        if chi == 0 {
            continue;
        }
        let permuted = permutation_operator(&sigma, state)?;
        out.add_scaled(&permuted, Complex64::new(chi as f64, 0.0));
    }
    Ok(out)
}

fn check_normalized(seed: &[Vec<Complex64>]) -> Result<()> {
    for (index, v) in seed.iter().enumerate() {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { index, norm });
        }
    }
    Ok(())
}

/// `(1/√n!) Σ_σ χ_λ(σ) ⊗_j |ψ_σ(j)⟩_j` with the seed vectors taken as
/// single-particle states of dimension `d = seed[0].len()`.
pub fn immanon_state(lambda: &Partition, seed: &[Vec<Complex64>]) -> Result<DenseState> {
    let d = seed.first().map_or(1, |v| v.len());
    immanon_state_in(lambda, SingleParticleSpace::modes(d), seed)
}

/// [`immanon_state`] in an explicit single-particle space.
pub fn immanon_state_in(lambda: &Partition, space: SingleParticleSpace, seed: &[Vec<Complex64>]) -> Result<DenseState> {
    if lambda.size() != seed.len() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            found: seed.len(),
        });
    }
    check_normalized(seed)?;
    let product = DenseState::product(space, seed)?;
    let weighted = character_weighted_sum(lambda, &product)?;
    let prefactor = 1.0 / (factorial(seed.len()) as f64).sqrt();
    Ok(weighted.scaled(Complex64::new(prefactor, 0.0)))
}

/// `⟨Φ_λ|Ψ_λ⟩ = imm_λ(M)/χ_λ(e)` with `M_{jk} = ⟨φ_j|ψ_k⟩`.
pub fn overlap(lambda: &Partition, phi_seed: &[Vec<Complex64>], psi_seed: &[Vec<Complex64>]) -> Result<Complex64> {
    let n = lambda.size();
    for seed in [phi_seed, psi_seed] {
        if seed.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: seed.len(),
            });
        }
    }
    check_normalized(phi_seed)?;
    check_normalized(psi_seed)?;
    let gram = ComplexMatrix::from_fn(n, |j, k| {
        phi_seed[j].iter().zip(&psi_seed[k]).map(|(a, b)| a.conj() * b).sum()
    });
    normalized_immanant(lambda, &gram)
}

/// Outcome of projecting a multiply occupied product state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliCheck {
    pub projection_norm: f64,
    pub majorization_allows: bool,
}

/// Projects `⊗_j |j⟩^{⊗η_j}` with `P_λ`. Returns
/// [`Error::PauliViolation`] if the projection survives although `η ⋠ λ`.
pub fn partial_pauli_check(lambda: &Partition, eta: &Partition) -> Result<PauliCheck> {
    let allows = majorizes(eta, lambda)?;
    let space = SingleParticleSpace::modes(eta.len());
    let digits: Vec<usize> = eta
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(mode, &k)| std::iter::repeat_n(mode, k))
        .collect();
    let state = DenseState::basis(space, &digits)?;
    let norm = symmetrizer(lambda, &state)?.norm();
    if !allows && norm >= VANISHING_NORM {
        return Err(Error::PauliViolation {
            lambda: lambda.label(),
            eta: eta.label(),
            norm,
        });
    }
    Ok(PauliCheck {
        projection_norm: norm,
        majorization_allows: allows,
    })
}

/// Result of [`seed_dependence_probe`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeedProbe {
    /// `1 - |⟨Ψ(seed)|Ψ(σ·seed)⟩| / (‖Ψ(seed)‖ ‖Ψ(σ·seed)‖)`.
    Value(f64),
    /// At least one of the two states vanishes.
    Degenerate,
}

/// Compares the immanon state built from `seed` with the one built from the
/// reordered seed `(ψ_σ(1), …, ψ_σ(n))`. A positive value means no scalar
/// relates the two.
pub fn seed_dependence_probe(lambda: &Partition, seed: &[Vec<Complex64>], sigma: &Permutation) -> Result<SeedProbe> {
    if lambda.is_trivial() || lambda.is_alternating() {
        return Err(Error::OneDimensionalRepresentation);
    }
    if sigma.len() != seed.len() {
        return Err(Error::SizeMismatch {
            expected: seed.len(),
            found: sigma.len(),
        });
    }
    let reordered: Vec<Vec<Complex64>> = (0..seed.len()).map(|j| seed[sigma.apply(j)].clone()).collect();
    let a = immanon_state(lambda, seed)?;
    let b = immanon_state(lambda, &reordered)?;
    let (na, nb) = (a.norm(), b.norm());
    if na < VANISHING_NORM || nb < VANISHING_NORM {
        return Ok(SeedProbe::Degenerate);
    }
    if sigma.is_identity() {
        return Ok(SeedProbe::Value(0.0));
    }
    Ok(SeedProbe::Value((1.0 - a.inner(&b).norm() / (na * nb)).max(0.0)))
}

/// Applies `U^{⊗n}`; `U` acts on the single-particle space.
pub fn evolve_one_body(u: &ComplexMatrix, state: &DenseState) -> Result<DenseState> {
    let d = state.space.dim();
    if u.dim() != d {
        return Err(Error::SizeMismatch {
            expected: d,
            found: u.dim(),
        });
    }
    let deviation = u.unitary_deviation();
    if deviation > 1e-10 {
        return Err(Error::NotUnitary { deviation });
    }
    let mut current = state.amplitudes.clone();
    let mut next = vec![ZERO; current.len()];
    let mut column = vec![ZERO; d];
    for q in 0..state.n {
        let stride = d.pow(q as u32);
        let block = stride * d;
        for base in (0..current.len()).step_by(block) {
            for low in 0..stride {
                for (i, c) in column.iter_mut().enumerate() {
                    *c = current[base + i * stride + low];
                }
                for k in 0..d {
                    let row = u.row(k);
                    next[base + k * stride + low] = row.iter().zip(&column).map(|(a, b)| a * b).sum();
                }
            }
        }
        std::mem::swap(&mut current, &mut next);
    }
    Ok(DenseState {
        amplitudes: current,
        ..state.clone()
    })
}

/// Single-particle unitary `exp(iθ(|a⟩⟨b| + |b⟩⟨a|))` on `d` modes, i.e. the
/// evolution under a hopping term between modes `a` and `b`.
pub fn mode_coupler(d: usize, a: usize, b: usize, angle: f64) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(d);
    let (c, s) = (angle.cos(), angle.sin());
    u[(a, a)] = Complex64::new(c, 0.0);
    u[(b, b)] = Complex64::new(c, 0.0);
    u[(a, b)] = Complex64::new(0.0, s);
    u[(b, a)] = Complex64::new(0.0, s);
    u
}

/// Particle counts per external mode.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector {
    counts: Vec<usize>,
}

impl OccupationVector {
    pub fn new(counts: Vec<usize>) -> Self {
        OccupationVector { counts }
    }

    /// One particle in each of `n` modes.
    pub fn coincidence(n: usize) -> Self {
        OccupationVector { counts: vec![1; n] }
    }

    /// All `n` particles in mode 0 of `modes`.
    pub fn bunched(n: usize, modes: usize) -> Self {
        let mut counts = vec![0; modes];
        counts[0] = n;
        OccupationVector { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn modes(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Sorted nonzero counts.
    pub fn multiplicity_partition(&self) -> Result<Partition> {
        Partition::from_unsorted(self.counts.clone())
    }

    /// `∏_j s_j!`.
    pub fn factorial_product(&self) -> f64 {
        self.counts.iter().map(|&s| factorial(s) as f64).product()
    }

    /// Every way of placing `n` particles into `modes` modes, in reverse
    /// lexicographic order.
    pub fn enumerate(n: usize, modes: usize) -> Vec<OccupationVector> {
        fn fill(remaining: usize, slots: usize, current: &mut Vec<usize>, out: &mut Vec<OccupationVector>) {
            if slots == 1 {
                current.push(remaining);
                out.push(OccupationVector::new(current.clone()));
                current.pop();
                return;
            }
            for k in (0..=remaining).rev() {
                current.push(k);
                fill(remaining - k, slots - 1, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        if modes > 0 {
            fill(n, modes, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", labels.join(","))
    }
}

impl fmt::Debug for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OccupationVector{self}")
    }
}

impl FromStr for OccupationVector {
    type Err = Error;

    /// Comma-separated counts, e.g. `"2,1,0"`.
    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .trim()
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidOccupation(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OccupationVector::new(counts))
    }
}

/// `Σ |amplitude|²` grouped by external-mode occupation; internal labels
/// are marginalized. Not renormalized.
pub fn mode_occupation_weights(state: &DenseState) -> BTreeMap<OccupationVector, f64> {
    let modes = state.space.external;
    let internal = state.space.internal;
    let mut out = BTreeMap::new();
    let mut counts = vec![0usize; modes];
    for (index, amp) in state.amplitudes.iter().enumerate() {
        let w = amp.norm_sqr();
        if w == 0.0 {
            continue;
        }
        counts.iter_mut().for_each(|c| *c = 0);
        for digit in state.digits(index) {
            counts[digit / internal] += 1;
        }
        *out.entry(OccupationVector::new(counts.clone())).or_insert(0.0) += w;
    }
    out
}

/// Occupation probabilities of a state, normalized to sum to one.
pub fn mode_occupation_distribution(state: &DenseState) -> Result<BTreeMap<OccupationVector, f64>> {
    let norm2 = state.norm().powi(2);
    if norm2 == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let mut weights = mode_occupation_weights(state);
    weights.values_mut().for_each(|w| *w /= norm2);
    Ok(weights)
}
