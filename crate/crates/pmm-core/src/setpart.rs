//! Ordered set partitions of `{1..n}` (the monoid `P_n`) and standard
//! compositions (interval partitions indexed by their cut points).
//!
//! The product of the paper interleaves intersections with the first
//! factor's block index varying fastest, dropping empty intersections.

use std::fmt;

use crate::perm::Permutation;
use crate::{Error, Result};

/// An ordered sequence of disjoint nonempty blocks covering `{1..n}`.
/// Block contents are kept sorted ascending, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    /// Validates disjointness, nonemptiness and coverage; sorts each
    /// block's contents.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut total = 0usize;
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            let mut b = block;
            b.sort_unstable();
            for &v in &b {
                if v == 0 || v > n {
                    return Err(Error::IndexOutOfRange {
                        what: "partition entry",
                        index: v,
                        max: n,
                    });
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!("{v} occurs twice")));
                }
                seen[v] = true;
                total += 1;
            }
            sorted_blocks.push(b);
        }
        if total != n {
            return Err(Error::InvalidPartition(format!(
                "blocks cover {total} of {n} elements"
            )));
        }
        Ok(OrderedSetPartition {
            n,
            blocks: sorted_blocks,
        })
    }

    /// The one-block partition, the unit of `P_n`.
    pub fn full(n: usize) -> Self {
        OrderedSetPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index (0-based) of the block containing `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&v).is_ok())
            .expect("element covered by some block")
    }

    /// The interleaved-intersection product: blocks `p_i ∩ q_j` with the
    /// first factor's index `i` varying fastest, empty intersections
    /// removed.
    pub fn product(&self, other: &OrderedSetPartition) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut blocks = Vec::new();
        for q in &other.blocks {
            for p in &self.blocks {
                let inter: Vec<usize> = p.iter().copied().filter(|v| q.contains(v)).collect();
                if !inter.is_empty() {
                    blocks.push(inter);
                }
            }
        }
        Ok(OrderedSetPartition { n: self.n, blocks })
    }

    /// Blockwise image under `sigma`, preserving block order.
    pub fn map_image(&self, sigma: &Permutation) -> Self {
        self.map_with(|v| sigma.apply(v))
    }

    /// Blockwise preimage under `sigma` (image under its inverse).
    pub fn map_preimage(&self, sigma: &Permutation) -> Self {
        let inv = sigma.inverse();
        self.map_with(|v| inv.apply(v))
    }

    fn map_with(&self, f: impl Fn(usize) -> usize) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut img: Vec<usize> = b.iter().map(|&v| f(v)).collect();
                img.sort_unstable();
                img
            })
            .collect();
        OrderedSetPartition { n: self.n, blocks }
    }

    /// Sizes of the blocks in order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// All ordered set partitions of `{1..n}`, ordered by block count
    /// then lexicographically by block contents. There are
    /// `sum_m m! S(n,m)` of them (the ordered Bell number).
    pub fn all(n: usize) -> Vec<OrderedSetPartition> {
        let mut out = Vec::new();
        // Surjections {1..n} -> {1..m}: element i sits in block f(i).
        for m in 1..=n {
            let mut f = vec![1usize; n];
            loop {
                if is_surjective(&f, m) {
                    let mut blocks = vec![Vec::new(); m];
                    for (i, &t) in f.iter().enumerate() {
                        blocks[t - 1].push(i + 1);
                    }
                    out.push(OrderedSetPartition { n, blocks });
                }
                if !increment(&mut f, m) {
                    break;
                }
            }
        }
        let mut seen_order: Vec<OrderedSetPartition> = out;
        seen_order.sort_by(|a, b| {
            a.block_count()
                .cmp(&b.block_count())
                .then_with(|| a.blocks.cmp(&b.blocks))
        });
        seen_order
    }

    /// The ordered Bell (Fubini) number `|P_n|`.
    pub fn count(n: usize) -> u64 {
        (1..=n).map(|m| factorial(m) * stirling2(n, m)).sum()
    }
}

fn is_surjective(f: &[usize], m: usize) -> bool {
    let mut hit = vec![false; m + 1];
    for &t in f {
        hit[t] = true;
    }
    (1..=m).all(|t| hit[t])
}

fn increment(f: &mut [usize], m: usize) -> bool {
    for v in f.iter_mut().rev() {
        if *v < m {
            *v += 1;
            return true;
        }
        *v = 1;
    }
    false
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Stirling number of the second kind `S(n, m)`: the number of ways of
/// partitioning an `n`-set into `m` nonempty subsets. Standard
/// recurrence `S(n,m) = m S(n-1,m) + S(n-1,m-1)`.
pub fn stirling2(n: usize, m: usize) -> u64 {
    if m > n {
        return 0;
    }
    if n == 0 {
        return 1; // S(0,0)
    }
    if m == 0 {
        return 0;
    }
    let mut row = vec![0u64; m + 1];
    row[0] = 1; // S(0,0)
    for _ in 1..=n {
        for j in (1..=m).rev() {
            row[j] = (j as u64) * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[m]
}

/// A standard composition: cut points `1 <= k_1 < ... < k_{m-1} < n`
/// describing the interval partition
/// `({1..k_1}, {k_1+1..k_2}, ..., {k_{m-1}+1..n})`. Empty cuts mean the
/// one-block partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardComposition {
    n: usize,
    cuts: Vec<usize>,
}

impl StandardComposition {
    pub fn new(n: usize, cuts: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCuts("n must be at least 1".into()));
        }
        for (k, &c) in cuts.iter().enumerate() {
            if c == 0 || c >= n {
                return Err(Error::IndexOutOfRange {
                    what: "cut",
                    index: c,
                    max: n - 1,
                });
            }
            if k > 0 && cuts[k - 1] >= c {
                return Err(Error::InvalidCuts(format!(
                    "cuts {cuts:?} are not strictly increasing"
                )));
            }
        }
        Ok(StandardComposition { n, cuts })
    }

    /// Cuts from block sizes listed in order.
    pub fn from_sizes(n: usize, sizes: &[usize]) -> Result<Self> {
        let mut cuts = Vec::new();
        let mut acc = 0;
        for &s in sizes {
            acc += s;
            cuts.push(acc);
        }
        if acc != n {
            return Err(Error::InvalidCuts(format!(
                "sizes {sizes:?} sum to {acc}, expected {n}"
            )));
        }
        cuts.pop();
        StandardComposition::new(n, cuts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn is_unit(&self) -> bool {
        self.cuts.is_empty()
    }

    /// The interval partition this composition indexes.
    pub fn to_partition(&self) -> OrderedSetPartition {
        let mut blocks = Vec::with_capacity(self.cuts.len() + 1);
        let mut start = 1;
        for &c in &self.cuts {
            blocks.push((start..=c).collect());
            start = c + 1;
        }
        blocks.push((start..=self.n).collect());
        OrderedSetPartition { n: self.n, blocks }
    }

    /// The 1-based block index `j` such that `{i, i+1}` lies inside
    /// block `j` of the interval partition, if any.
    pub fn enclosing_block(&self, i: usize) -> Option<usize> {
        if i == 0 || i + 1 > self.n {
            return None;
        }
        // i and i+1 are in the same interval block iff no cut equals i.
        if self.cuts.contains(&i) {
            return None;
        }
        let j = self.cuts.iter().take_while(|&&c| c < i).count();
        Some(j + 1)
    }

    /// All standard compositions for a given `n` (there are `2^(n-1)`),
    /// in lexicographic cut order.
    pub fn all(n: usize) -> Vec<StandardComposition> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << (n - 1)) {
            let cuts: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            out.push(StandardComposition { n, cuts });
        }
        out.sort();
        out
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for StandardComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[")?;
        for (k, c) in self.cuts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
