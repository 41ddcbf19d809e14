//! Permutations of `{1..n}` with the composition convention
//! `(a * b)(k) = a(b(k))` — the right factor acts first. Every other
//! module inherits this convention.

use std::fmt;

use crate::{Error, Result};

/// A permutation stored as its image sequence: position `j` (1-based)
/// holds `sigma(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection of `{1..n}`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The adjacent transposition `(i, i+1)`, `1 <= i <= n-1`.
    pub fn transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange {
                what: "transposition",
                index: i,
                max: n.saturating_sub(1),
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `sigma(k)` for `k` in `1..=n`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &v)| v == j + 1)
    }

    /// Composition with the right factor acting first:
    /// `(self * other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&k| self.images[k - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (j, &v) in self.images.iter().enumerate() {
            images[v - 1] = j + 1;
        }
        Permutation { images }
    }

    /// All permutations of `{1..n}` in lexicographic order of their
    /// image sequences.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_lex(&mut current) {
                break;
            }
        }
        out
    }

    /// A word in adjacent transpositions multiplying (right factor
    /// first) to `self`, produced by deterministic bubble sorting.
    /// Length is at most `n(n-1)/2`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut images = self.images.clone();
        let mut word = Vec::new();
        loop {
            // Leftmost inversion; swapping entries at p, p+1 multiplies
            // by s_p on the right.
            match images.windows(2).position(|w| w[0] > w[1]) {
                Some(p) => {
                    images.swap(p, p + 1);
                    word.push(p + 1);
                }
                None => break,
            }
        }
        word.reverse();
        word
    }
}

fn next_lex(a: &mut [usize]) -> bool {
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

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
