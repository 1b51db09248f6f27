//! Numerical checks of the determinant/immanant/permanent inequalities for
//! positive semi-definite unit-diagonal matrices, and a Monte-Carlo campaign
//! against the permanental dominance conjecture.

use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::immanant::{all_normalized_immanants, determinant, permanent};
use crate::matrix::{ComplexMatrix, MatrixJson};
use crate::partition::{self, factorial, Partition};
use crate::scattering::DistinguishabilityMatrix;

/// Slack below which a bound counts as violated (scaled per check).
pub const VIOLATION_TOLERANCE: f64 = 1e-9;
/// Largest dimension for [`check_schur_dominance`] and campaigns.
pub const MAX_DOMINANCE_SIZE: usize = 7;

/// Random hermitian PSD matrix with unit diagonal: `G G†` for a complex
/// Gaussian `G`, rescaled by `D^{-1/2}` on both sides. Deterministic per seed.
pub fn random_psd_unit_diagonal(n: usize, seed: u64) -> DistinguishabilityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ComplexMatrix::random_gaussian(n, &mut rng);
    let gram = g.matmul(&g.adjoint());
    let scale: Vec<f64> = (0..n).map(|j| gram[(j, j)].re.sqrt().recip()).collect();
    let s = ComplexMatrix::from_fn(n, |j, k| {
        if j == k {
            Complex64::new(1.0, 0.0)
        } else if j < k {
            gram[(j, k)] * (scale[j] * scale[k])
        } else {
            (gram[(k, j)] * (scale[j] * scale[k])).conj()
        }
    });
    DistinguishabilityMatrix::new(s).expect("Gram construction is PSD with unit diagonal")
}

/// One inequality `lhs ≤ rhs` with its scaled slack.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `(rhs - lhs) / scale`.
    pub slack: f64,
    pub holds: bool,
}

impl BoundCheck {
    fn new(name: &str, lhs: f64, rhs: f64, scale: f64) -> Self {
        let slack = (rhs - lhs) / scale;
        BoundCheck {
            name: name.to_string(),
            lhs,
            rhs,
            slack,
            holds: slack >= -VIOLATION_TOLERANCE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub n: usize,
    pub checks: Vec<BoundCheck>,
}

impl BoundsRecord {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn worst_slack(&self) -> f64 {
        self.checks.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min)
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn real_part(z: Complex64) -> f64 {
    z.re
}

/// `0 ≤ det S ≤ 1 ≤ perm S ≤ n!`.
pub fn check_hadamard_marcus(s: &DistinguishabilityMatrix) -> Result<BoundsRecord> {
    let n = s.dim();
    let det = real_part(determinant(s.matrix()));
    let perm = real_part(permanent(s.matrix())?);
    let nf = factorial(n) as f64;
    Ok(BoundsRecord {
        n,
        checks: vec![
            BoundCheck::new("0 <= det", 0.0, det, 1.0),
            BoundCheck::new("det <= 1", det, 1.0, 1.0),
            BoundCheck::new("1 <= perm", 1.0, perm, 1.0),
            BoundCheck::new("perm <= n!", perm, nf, nf),
        ],
    })
}

/// Whether `det S = 0` and `perm S = n!` hold, i.e. both outer bounds of
/// [`check_hadamard_marcus`] are saturated.
pub fn saturates_outer_bounds(record: &BoundsRecord) -> bool {
    let det = record.check("0 <= det").map_or(f64::NAN, |c| c.rhs);
    let perm = record.check("perm <= n!").map_or(f64::NAN, |c| c.lhs);
    let nf = factorial(record.n) as f64;
    det.abs() < 1e-9 && (perm - nf).abs() < 1e-9 * nf
}

/// Lieb and Fisher bounds for the block split `S = [[A, B], [B†, C]]` with a
/// leading `k × k` block `A`:
/// `perm S ≥ perm A · perm C ≥ 1` and `det S ≤ det A · det C ≤ 1`.
pub fn check_lieb_fisher(s: &DistinguishabilityMatrix, split: usize) -> Result<BoundsRecord> {
    let n = s.dim();
    if split == 0 || split >= n {
        return Err(Error::OutOfRange {
            quantity: "split",
            value: split,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    let a = s.matrix().principal_block(0, split);
    let c = s.matrix().principal_block(split, n - split);
    let perm_s = real_part(permanent(s.matrix())?);
    let perm_ac = real_part(permanent(&a)?) * real_part(permanent(&c)?);
    let det_s = real_part(determinant(s.matrix()));
    let det_ac = real_part(determinant(&a)) * real_part(determinant(&c));
    let scale = perm_s.max(1.0);
    Ok(BoundsRecord {
        n,
        checks: vec![
            BoundCheck::new("perm(A)perm(C) <= perm(S)", perm_ac, perm_s, scale),
            BoundCheck::new("1 <= perm(A)perm(C)", 1.0, perm_ac, scale),
            BoundCheck::new("det(S) <= det(A)det(C)", det_s, det_ac, 1.0),
            BoundCheck::new("det(A)det(C) <= 1", det_ac, 1.0, 1.0),
        ],
    })
}

/// Normalized immanants of one matrix against Schur's lower bound and the
/// permanental upper bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub seed: Option<u64>,
    pub n: usize,
    pub determinant: f64,
    pub permanent: f64,
    /// `(λ, imm_λ(S)/χ_λ(e))` in reverse lexicographic order.
    pub normalized_immanants: Vec<(Partition, f64)>,
    /// Largest `|Im imm_λ(S)| / max(1, |imm_λ(S)|)`.
    pub max_imaginary_residue: f64,
    /// `min_λ (value - det)` over `λ ≠ (1, …, 1)`; infinite if there is none.
    pub schur_margin: f64,
    /// `min_λ (perm - value) / perm` over `λ ≠ (n)`; infinite if there is none.
    pub dominance_margin: f64,
    pub schur_violations: Vec<Partition>,
    pub dominance_violations: Vec<Partition>,
}

impl InequalityReport {
    pub fn schur_holds(&self) -> bool {
        self.schur_violations.is_empty()
    }

    pub fn dominance_holds(&self) -> bool {
        self.dominance_violations.is_empty()
    }

    /// Smaller of the two margins.
    pub fn worst_margin(&self) -> f64 {
        self.schur_margin.min(self.dominance_margin)
    }
}

pub fn check_schur_dominance(s: &DistinguishabilityMatrix) -> Result<InequalityReport> {
    let n = s.dim();
    partition::check_range("matrix dimension", n, 1, MAX_DOMINANCE_SIZE)?;
    let det = real_part(determinant(s.matrix()));
    let perm = real_part(permanent(s.matrix())?);

    let mut report = InequalityReport {
        seed: None,
        n,
        determinant: det,
        permanent: perm,
        normalized_immanants: Vec::new(),
        max_imaginary_residue: 0.0,
        schur_margin: f64::INFINITY,
        dominance_margin: f64::INFINITY,
        schur_violations: Vec::new(),
        dominance_violations: Vec::new(),
    };
    for (lambda, value) in all_normalized_immanants(s.matrix())? {
        let residue = value.im.abs() / value.re.abs().max(1.0);
        report.max_imaginary_residue = report.max_imaginary_residue.max(residue);
        let v = value.re;
        if !lambda.is_alternating() {
            let schur = v - det;
            report.schur_margin = report.schur_margin.min(schur);
            if schur < -VIOLATION_TOLERANCE {
                report.schur_violations.push(lambda.clone());
            }
        }
        if !lambda.is_trivial() {
            let dominance = (perm - v) / perm;
            report.dominance_margin = report.dominance_margin.min(dominance);
            if dominance < -VIOLATION_TOLERANCE {
                report.dominance_violations.push(lambda.clone());
            }
        }
        report.normalized_immanants.push((lambda, v));
    }
    Ok(report)
}

/// Matrix that failed a check, with what is needed to regenerate it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationDump {
    pub seed: u64,
    #[serde(flatten)]
    pub matrix: MatrixJson,
    pub schur_violations: Vec<Partition>,
    pub dominance_violations: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub schur_violations: usize,
    pub dominance_violations: usize,
    /// `None` when no trial produced a finite margin.
    pub min_dominance_margin: Option<f64>,
    pub max_dominance_margin: Option<f64>,
    pub min_schur_margin: Option<f64>,
    /// `None` in deterministic mode, so repeated runs serialize identically.
    pub wall_time_s: Option<f64>,
    pub violation_found: bool,
    pub violations: Vec<ViolationDump>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CampaignOptions {
    /// Single worker and no wall-clock field in the summary.
    pub deterministic: bool,
}

/// Runs [`check_schur_dominance`] on `trials` random matrices; trial `i`
/// uses seed `seed + i`. Violations are recorded, never clamped.
pub fn dominance_campaign(n: usize, trials: usize, seed: u64, options: CampaignOptions) -> Result<CampaignSummary> {
    partition::check_range("n", n, 1, MAX_DOMINANCE_SIZE)?;
    let start = Instant::now();
    let run = |i: usize| -> Result<(u64, DistinguishabilityMatrix, InequalityReport)> {
        let trial_seed = seed.wrapping_add(i as u64);
        let s = random_psd_unit_diagonal(n, trial_seed);
        let mut report = check_schur_dominance(&s)?;
        report.seed = Some(trial_seed);
        Ok((trial_seed, s, report))
    };
    let results: Vec<_> = if options.deterministic {
        (0..trials).map(run).collect::<Result<_>>()?
    } else {
        (0..trials).into_par_iter().map(run).collect::<Result<_>>()?
    };

    let mut summary = CampaignSummary {
        n,
        trials,
        seed,
        schur_violations: 0,
        dominance_violations: 0,
        min_dominance_margin: None,
        max_dominance_margin: None,
        min_schur_margin: None,
        wall_time_s: None,
        violation_found: false,
        violations: Vec::new(),
    };
    for (trial_seed, s, report) in results {
        let fold = |acc: Option<f64>, v: f64, pick: fn(f64, f64) -> f64| {
            if v.is_finite() {
                Some(acc.map_or(v, |a| pick(a, v)))
            } else {
                acc
            }
        };
        summary.min_dominance_margin = fold(summary.min_dominance_margin, report.dominance_margin, f64::min);
        summary.max_dominance_margin = fold(summary.max_dominance_margin, report.dominance_margin, f64::max);
        summary.min_schur_margin = fold(summary.min_schur_margin, report.schur_margin, f64::min);
        if !report.schur_holds() {
            summary.schur_violations += 1;
        }
        if !report.dominance_holds() {
            summary.dominance_violations += 1;
        }
        if !report.schur_holds() || !report.dominance_holds() {
            log::warn!("inequality violation for n = {n}, seed = {trial_seed}");
            summary.violations.push(ViolationDump {
                seed: trial_seed,
                matrix: s.matrix().to_json_value(),
                schur_violations: report.schur_violations,
                dominance_violations: report.dominance_violations,
            });
        }
    }
    summary.violation_found = !summary.violations.is_empty();
    if !options.deterministic {
        summary.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(summary)
}
