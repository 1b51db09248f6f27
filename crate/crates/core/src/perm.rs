//! Permutations of `{0, …, n-1}` stored as image lists.
//!
//! `sigma.images()[j]` is the image of `j`. Composition follows function
//! notation: `a.compose(&b)` maps `x` to `a(b(x))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from zero-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from one-based images, e.g. `[2, 1, 3]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::NotAPermutation(images.to_vec()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Transposition of `a` and `b` on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different size");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (j, &i) in self.images.iter().enumerate() {
            images[i] = j;
        }
        Permutation { images }
    }

    /// Sorted (non-increasing) cycle lengths.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        cycle_lengths(&self.images)
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_parts_unchecked(self.cycle_lengths())
    }

    /// +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i64 {
        let n = self.len();
        let cycles = self.cycle_lengths().len();
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of `n` points in lexicographic order of image tuples.
    pub fn lexicographic(n: usize) -> Lexicographic {
        Lexicographic {
            next: Some((0..n).collect()),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    /// One-based image list, e.g. `(2,3,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, i) in self.images.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

/// Iterator over permutations in lexicographic order.
pub struct Lexicographic {
    next: Option<Vec<usize>>,
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        if next_permutation(&mut successor) {
            self.next = Some(successor);
        }
        Some(Permutation { images: current })
    }
}

/// Advances `a` to the next permutation in lexicographic order.
/// Returns false (leaving `a` untouched) when `a` is the last one.
pub fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Sorted cycle lengths of an image list (assumed bijective).
pub(crate) fn cycle_lengths(images: &[usize]) -> Vec<usize> {
    let n = images.len();
    let mut visited = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !visited[j] {
            visited[j] = true;
            j = images[j];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// Compact key for the cycle type of a bijective image list of at most
/// 12 points: the cycle counts `m_l` written in base `n + 1`.
pub(crate) fn cycle_key(images: &[usize], visited: &mut [bool]) -> u64 {
    let n = images.len();
    let base = n as u64 + 1;
    visited.iter_mut().for_each(|v| *v = false);
    let mut key = 0u64;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0u32;
        let mut j = start;
        while !visited[j] {
            visited[j] = true;
            j = images[j];
            len += 1;
        }
        key += base.pow(len - 1);
    }
    key
}

/// Same encoding as [`cycle_key`] for a cycle type given as its parts.
pub(crate) fn cycle_key_of_parts(n: usize, parts: &[usize]) -> u64 {
    let base = n as u64 + 1;
    parts.iter().map(|&l| base.pow(l as u32 - 1)).sum()
}
