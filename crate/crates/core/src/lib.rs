//! Many-body quantities for particles with generalized exchange symmetry.
//!
//! Particles whose states live in the image of the symmetrizer
//! `P_λ = (χ_λ(e)/n!) Σ_σ χ_λ(σ) Q_σ` interpolate between bosons (`λ = (n)`)
//! and fermions (`λ = (1, …, 1)`). Their many-body scalar products are
//! immanants, they obey a partial Pauli principle governed by majorization,
//! and their bunching in a linear network is the normalized immanant of the
//! distinguishability matrix.
//!
//! - [`partition`]: partitions, majorization, conjugacy classes, characters.
//! - [`immanant`]: immanants, permanents, determinants.
//! - [`state`]: dense tensor-product states, symmetrizers, one-body evolution.
//! - [`scattering`]: closed-form scattering and bunching probabilities.
//! - [`inequality`]: Hadamard/Marcus/Lieb/Fisher/Schur checks and the
//!   permanental dominance campaign.

pub mod error;
pub mod immanant;
pub mod inequality;
pub mod matrix;
pub mod partition;
pub mod perm;
pub mod scattering;
pub mod state;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use partition::{CharacterTable, CycleType, Partition};
pub use perm::Permutation;
pub use scattering::{DistinguishabilityMatrix, ScatteringMatrix};
pub use state::{DenseState, OccupationVector, SingleParticleSpace};
