//! Reference evaluators shared by the integration tests. Each one follows a
//! different route from the library code it is compared against.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use immanon::state::{evolve_one_body, immanon_state_in, mode_occupation_weights};
use immanon::{Complex64, ComplexMatrix, OccupationVector, Partition, SingleParticleSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(label: &str) -> Partition {
    label.parse().expect("valid partition label")
}

/// Sorted (non-increasing) cycle lengths of a zero-based image list.
pub fn cycles_of(images: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for s in 0..images.len() {
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = images[j];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Sign from the inversion count.
pub fn inversion_sign(images: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `n` points via Heap's algorithm.
pub fn heap_permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Frobenius formula: `χ_λ(μ)` is the coefficient of `x^{λ+δ}` in
/// `a_δ · p_μ`, expanded as `Σ_π sgn(π) [x^{λ+δ-π(δ)}] p_μ`.
pub fn frobenius_character(lambda: &[usize], mu: &[usize]) -> i64 {
    let len = lambda.len();
    let delta: Vec<i64> = (0..len).map(|i| (len - 1 - i) as i64).collect();
    let target: Vec<i64> = (0..len).map(|i| lambda[i] as i64 + delta[i]).collect();
    let mut total = 0;
    for pi in heap_permutations(len) {
        let exps: Option<Vec<usize>> = (0..len)
            .map(|i| {
                let e = target[i] - delta[pi[i]];
                (e >= 0).then_some(e as usize)
            })
            .collect();
        if let Some(exps) = exps {
            total += inversion_sign(&pi) * power_sum_coefficient(mu, &exps);
        }
    }
    total
}

/// Number of ways to distribute the parts of `mu` over variables so that
/// variable `i` receives total degree `exps[i]`.
fn power_sum_coefficient(mu: &[usize], exps: &[usize]) -> i64 {
    let Some((&first, rest)) = mu.split_first() else {
        return if exps.iter().all(|&e| e == 0) { 1 } else { 0 };
    };
    let mut count = 0;
    let mut remaining = exps.to_vec();
    for i in 0..exps.len() {
        if remaining[i] >= first {
            remaining[i] -= first;
            count += power_sum_coefficient(rest, &remaining);
            remaining[i] += first;
        }
    }
    count
}

/// Memoized [`frobenius_character`].
#[derive(Default)]
pub struct FrobeniusTable {
    cache: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl FrobeniusTable {
    pub fn get(&mut self, lambda: &[usize], mu: &[usize]) -> i64 {
        *self
            .cache
            .entry((lambda.to_vec(), mu.to_vec()))
            .or_insert_with(|| frobenius_character(lambda, mu))
    }
}

/// `Σ_σ χ_λ(σ) ∏_j M_{j,σ(j)}` from scratch over Heap's order.
pub fn naive_immanant(lambda: &Partition, m: &ComplexMatrix, chars: &mut FrobeniusTable) -> Complex64 {
    let n = m.dim();
    let mut total = Complex64::new(0.0, 0.0);
    for sigma in heap_permutations(n) {
        let chi = chars.get(lambda.parts(), &cycles_of(&sigma));
        if chi == 0 {
            continue;
        }
        let mut prod = Complex64::new(1.0, 0.0);
        for (j, &k) in sigma.iter().enumerate() {
            prod *= m[(j, k)];
        }
        total += prod * chi as f64;
    }
    total
}

/// Coincidence probability from the unreduced triple sum over
/// `(σ̄, σ, ρ)`.
pub fn triple_sum_coincidence(
    lambda: &Partition,
    m: &ComplexMatrix,
    s: &ComplexMatrix,
    chars: &mut FrobeniusTable,
) -> f64 {
    let n = m.dim();
    let perms = heap_permutations(n);
    let chi: Vec<f64> = perms
        .iter()
        .map(|q| chars.get(lambda.parts(), &cycles_of(q)) as f64)
        .collect();
    let nf: f64 = (1..=n).map(|k| k as f64).product();
    let mut total = Complex64::new(0.0, 0.0);
    for (sb, &cb) in perms.iter().zip(&chi) {
        if cb == 0.0 {
            continue;
        }
        for (sg, &cs) in perms.iter().zip(&chi) {
            if cs == 0.0 {
                continue;
            }
            for rho in &perms {
                let mut prod = Complex64::new(cb * cs / nf, 0.0);
                for j in 0..n {
                    prod *= m[(sb[j], rho[j])].conj() * m[(sg[j], rho[j])] * s[(sb[j], sg[j])];
                }
                total += prod;
            }
        }
    }
    total.re
}

/// Output distribution from an explicit state vector: internal states are
/// realized from the Gram factor of `s`, the initial state is symmetrized
/// with `P_λ`, every particle is propagated through `m`, and the squared
/// amplitudes are grouped by output mode occupation.
pub fn dense_scattering_distribution(
    lambda: &Partition,
    m: &ComplexMatrix,
    s: &ComplexMatrix,
) -> BTreeMap<OccupationVector, f64> {
    let n = m.dim();
    let internal = s.gram_vectors();
    let space = SingleParticleSpace::new(n, n).unwrap();
    let d = space.dim();
    let seed: Vec<Vec<Complex64>> = (0..n)
        .map(|p| {
            let mut v = vec![Complex64::new(0.0, 0.0); d];
            for (i, &a) in internal[p].iter().enumerate() {
                v[space.index(p, i)] = a;
            }
            v
        })
        .collect();
    let initial = immanon_state_in(lambda, space, &seed).unwrap();
    // |j, φ⟩ → Σ_k M_{jk} |k, φ⟩
    let mut u = ComplexMatrix::from_fn(d, |_, _| Complex64::new(0.0, 0.0));
    for j in 0..n {
        for k in 0..n {
            for i in 0..n {
                u[(space.index(k, i), space.index(j, i))] = m[(j, k)];
            }
        }
    }
    let evolved = evolve_one_body(&u, &initial).unwrap();
    mode_occupation_weights(&evolved)
}

pub fn random_unit_vector(d: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_seed(n: usize, d: usize, rng: &mut impl Rng) -> Vec<Vec<Complex64>> {
    (0..n).map(|_| random_unit_vector(d, rng)).collect()
}

pub fn relative_error(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Random normalized dense state of `n` particles on `d` modes.
pub fn random_dense_state(n: usize, d: usize, rng: &mut impl Rng) -> immanon::DenseState {
    let space = SingleParticleSpace::modes(d);
    let amps = random_unit_vector(d.pow(n as u32), rng);
    immanon::DenseState::from_amplitudes(n, space, amps).unwrap()
}

/// Largest deviation from `P_λ P_η = δ_{λη} P_λ` and `Σ_λ P_λ = 1` on one
/// state.
pub fn projector_deviation(state: &immanon::DenseState) -> f64 {
    use immanon::state::symmetrizer;
    let n = state.particles();
    let partitions = immanon::partition::enumerate_partitions(n).unwrap();
    let projected: Vec<_> = partitions.iter().map(|l| symmetrizer(l, state).unwrap()).collect();
    let mut worst: f64 = 0.0;
    for (a, lambda) in partitions.iter().enumerate() {
        for (b, eta_image) in projected.iter().enumerate() {
            let twice = symmetrizer(lambda, eta_image).unwrap();
            let expect = if a == b {
                projected[a].clone()
            } else {
                state.scaled(Complex64::new(0.0, 0.0))
            };
            worst = worst.max(twice.max_abs_diff(&expect));
        }
    }
    let mut total = state.scaled(Complex64::new(0.0, 0.0));
    for image in &projected {
        let sum: Vec<Complex64> = total
            .amplitudes()
            .iter()
            .zip(image.amplitudes())
            .map(|(a, b)| a + b)
            .collect();
        total = immanon::DenseState::from_amplitudes(n, state.space(), sum).unwrap();
    }
    worst.max(total.max_abs_diff(state))
}

/// Four particles on modes `a, b, c, d` with seed modes `seed`, projected
/// with `λ = (2,1,1)`, then evolved under a hopping of angle `angle`
/// between `c` and `d`. Returns the probabilities of finding two particles
/// in `c` and two particles in `d`.
pub fn coupled_double_occupation(seed: [usize; 4], angle: f64) -> (f64, f64) {
    use immanon::state::{basis_vector, immanon_state, mode_coupler, mode_occupation_distribution};
    let vectors: Vec<Vec<Complex64>> = seed.iter().map(|&m| basis_vector(4, m)).collect();
    let state = immanon_state(&p("2.1.1"), &vectors).unwrap();
    let evolved = evolve_one_body(&mode_coupler(4, 2, 3, angle), &state).unwrap();
    let dist = mode_occupation_distribution(&evolved).unwrap();
    let in_mode = |mode: usize| -> f64 {
        dist.iter()
            .filter(|(occ, _)| occ.counts()[mode] >= 2)
            .map(|(_, w)| w)
            .sum()
    };
    (in_mode(2), in_mode(3))
}

/// Two particles through a balanced coupler, via explicit state vectors.
pub fn dense_hom_coincidence(lambda: &Partition) -> f64 {
    use immanon::state::{basis_vector, immanon_state, mode_occupation_distribution};
    let seed = vec![basis_vector(2, 0), basis_vector(2, 1)];
    let state = immanon_state(lambda, &seed).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let u = ComplexMatrix::from_real_rows(&[vec![h, h], vec![h, -h]]).unwrap();
    let dist = mode_occupation_distribution(&evolve_one_body(&u, &state).unwrap()).unwrap();
    dist.get(&OccupationVector::coincidence(2)).copied().unwrap_or(0.0)
}

/// Recomputes a dumped matrix with the naive immanant and Heap's-order
/// permanent/determinant. Returns the partitions that still exceed the
/// permanent and those that fall below the determinant.
pub fn reverify_dump(
    dump: &immanon::inequality::ViolationDump,
    chars: &mut FrobeniusTable,
) -> (Vec<Partition>, Vec<Partition>) {
    let m = ComplexMatrix::from_json_value(&dump.matrix).unwrap();
    let n = m.dim();
    let perm = naive_immanant(&Partition::trivial(n), &m, chars).re;
    let det = naive_immanant(&Partition::alternating(n), &m, chars).re;
    let mut above = Vec::new();
    let mut below = Vec::new();
    for lambda in immanon::partition::enumerate_partitions(n).unwrap() {
        let dim = chars.get(lambda.parts(), &vec![1; n]) as f64;
        let v = naive_immanant(&lambda, &m, chars).re / dim;
        if (perm - v) / perm < -immanon::inequality::VIOLATION_TOLERANCE {
            above.push(lambda.clone());
        }
        if v - det < -immanon::inequality::VIOLATION_TOLERANCE {
            below.push(lambda);
        }
    }
    (above, below)
}
