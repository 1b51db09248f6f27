//! Integer partitions, conjugacy classes of `S_n`, majorization and
//! symmetric-group characters.
//!
//! Characters are evaluated with the Murnaghan–Nakayama rule on beta-sets
//! (first-column hook lengths): removing a rim hook of length `k` moves one
//! bead from position `b` to the free position `b - k`, with sign
//! `(-1)^(beads jumped over)`. Results are memoized in a process-wide cache
//! keyed by `(shape, remaining cycle lengths)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest `n` accepted by [`enumerate_partitions`] and [`character`].
pub const MAX_PARTITION_SIZE: usize = 12;
/// Largest `n` accepted by [`character_table`].
pub const MAX_TABLE_SIZE: usize = 8;

/// `n!` for `n ≤ 20`.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "{n}! overflows u64");
    (1..=n as u64).product()
}

/// An integer partition `λ_1 ≥ λ_2 ≥ … ≥ λ_L > 0`, stored without trailing
/// zeros. The derived ordering is lexicographic on the parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that the parts are positive and non-increasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts into canonical order; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    /// The bosonic partition `(n)`.
    pub fn trivial(n: usize) -> Self {
        Partition { parts: vec![n] }
    }

    /// The fermionic partition `(1, …, 1)`.
    pub fn alternating(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `j` (zero-based), or 0 beyond the length.
    pub fn part(&self, j: usize) -> usize {
        self.parts.get(j).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_alternating(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Dot-joined parts, e.g. `"2.1.1"`.
    pub fn label(&self) -> String {
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(".")
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (0..self.parts[0])
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// Hook lengths of the Young diagram, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (r, &row) in self.parts.iter().enumerate() {
            for c in 0..row {
                hooks.push((row - c - 1) + (conj.parts[c] - r - 1) + 1);
            }
        }
        hooks
    }

    /// `m_l`: number of parts equal to `l`, for `l = 1..=n`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.size() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, p) in self.parts.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses dot-joined parts such as `"3.1.1"`. The parts must already be
    /// in non-increasing order; see [`Partition::from_unsorted`] otherwise.
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_parts(s)?;
        Partition::new(parts)
    }
}

/// Splits a dot-joined list of positive integers.
pub fn parse_parts(s: &str) -> Result<Vec<usize>> {
    s.trim()
        .split('.')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
        })
        .collect()
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

/// All partitions of `n` in reverse lexicographic order, from `(n)` down to
/// `(1, …, 1)`.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    check_range("n", n, 1, MAX_PARTITION_SIZE)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// Majorization `eta ≼ lambda`: every prefix sum of `eta` is bounded by the
/// corresponding prefix sum of `lambda`.
pub fn majorizes(eta: &Partition, lambda: &Partition) -> Result<bool> {
    if eta.size() != lambda.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            found: eta.size(),
        });
    }
    let len = eta.len().max(lambda.len());
    let (mut se, mut sl) = (0, 0);
    for j in 0..len {
        se += eta.part(j);
        sl += lambda.part(j);
        if se > sl {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `χ_λ(e) = n! / ∏ hooks`, in exact integer arithmetic.
pub fn hook_dimension(lambda: &Partition) -> u64 {
    let numerator = (1..=lambda.size() as u128).product::<u128>();
    let denominator = lambda.hook_lengths().into_iter().map(|h| h as u128).product::<u128>();
    debug_assert_eq!(numerator % denominator, 0);
    u64::try_from(numerator / denominator).expect("dimension fits in u64")
}

/// A conjugacy class of `S_n`: its cycle type and number of elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycleType {
    partition: Partition,
    class_size: u64,
}

impl CycleType {
    pub fn new(partition: Partition) -> Self {
        let n = partition.size();
        let mut denominator: u128 = 1;
        for (l, &m) in partition.multiplicities().iter().enumerate().skip(1) {
            denominator *= (l as u128).pow(m as u32) * (1..=m as u128).product::<u128>();
        }
        let numerator = (1..=n as u128).product::<u128>();
        CycleType {
            partition,
            class_size: u64::try_from(numerator / denominator).expect("class size fits in u64"),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Partition::alternating(n))
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn size(&self) -> usize {
        self.partition.size()
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> u64 {
        self.class_size
    }

    /// Sign shared by every permutation in the class.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.partition.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.partition.is_alternating()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)
    }
}

/// Cycle type of a permutation given as a zero-based image list.
pub fn cycle_type_of(images: &[usize]) -> Result<CycleType> {
    let perm = Permutation::from_images(images.to_vec())?;
    Ok(CycleType::new(perm.cycle_type()))
}

type CharacterKey = (Vec<usize>, Vec<usize>);

fn character_cache() -> &'static RwLock<HashMap<CharacterKey, i64>> {
    static CACHE: OnceLock<RwLock<HashMap<CharacterKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `χ_λ` on the class with cycle lengths `cycle_type`.
pub fn character(lambda: &Partition, cycle_type: &Partition) -> Result<i64> {
    if lambda.size() != cycle_type.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            found: cycle_type.size(),
        });
    }
    check_range("n", lambda.size(), 1, MAX_PARTITION_SIZE)?;
    Ok(murnaghan_nakayama(lambda.parts(), cycle_type.parts()))
}

/// `χ_λ(σ)` for a permutation.
pub fn character_of(lambda: &Partition, sigma: &Permutation) -> Result<i64> {
    character(lambda, &sigma.cycle_type())
}

fn murnaghan_nakayama(shape: &[usize], cycles: &[usize]) -> i64 {
    if cycles.is_empty() {
        return if shape.is_empty() { 1 } else { 0 };
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = character_cache().read().expect("cache poisoned").get(&key) {
        return v;
    }

    let k = cycles[0];
    let rest = &cycles[1..];
    let len = shape.len();
    // Beta-set, strictly decreasing.
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < k {
            continue;
        }
        let target = b - k;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next: Vec<usize> = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let new_shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &c)| c - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let value = murnaghan_nakayama(&new_shape, rest);
        if jumped % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }

    character_cache().write().expect("cache poisoned").insert(key, total);
    total
}

/// Character table of `S_n`. Rows are the partitions `λ` in reverse
/// lexicographic order; columns are the cycle types in lexicographic order,
/// so the identity class comes first.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    classes: Vec<CycleType>,
    values: Vec<Vec<i64>>,
}

pub fn character_table(n: usize) -> Result<CharacterTable> {
    check_range("n", n, 1, MAX_TABLE_SIZE)?;
    let partitions = enumerate_partitions(n)?;
    let classes: Vec<CycleType> = partitions.iter().rev().cloned().map(CycleType::new).collect();
    let values = partitions
        .iter()
        .map(|lambda| {
            classes
                .iter()
                .map(|c| character(lambda, c.partition()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable {
        n,
        partitions,
        classes,
        values,
    })
}

impl CharacterTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        let r = self.partitions.iter().position(|p| p == lambda)?;
        Some(&self.values[r])
    }

    pub fn value(&self, lambda: &Partition, class: &Partition) -> Option<i64> {
        let c = self.classes.iter().position(|c| c.partition() == class)?;
        self.row(lambda).map(|row| row[c])
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    /// CSV with header `lambda,<class>,…`; classes and partitions are
    /// dot-joined labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda");
        for c in &self.classes {
            out.push(',');
            out.push_str(&c.partition().label());
        }
        out.push('\n');
        for (lambda, row) in self.partitions.iter().zip(&self.values) {
            out.push_str(&lambda.label());
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn check_range(quantity: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        return Err(Error::OutOfRange {
            quantity,
            value,
            min,
            max,
        });
    }
    Ok(())
}
