//! Dyadic grouping of the maximal good sets.
//!
//! With D₁, …, D_m sorted by size, bucket C_j holds D_i for
//! 2^{j−1} ≤ i < 2^j, so |C_j| = 2^{j−1}. J is the number of complete
//! buckets and J′ the first bucket at which the covered vertex count reaches
//! n/(100k).

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicBuckets {
    members: Vec<VertexSet>,
    j: usize,
    j_prime: usize,
    norms: Vec<usize>,
}

impl DyadicBuckets {
    /// Buckets with J′ taken from the n/(100k) threshold.
    pub fn partition(members: &[VertexSet], n: usize, k: usize) -> Result<Self> {
        let mut b = Self::unthresholded(members)?;
        let mut covered = 0;
        let found = (1..=b.j).find(|&j| {
            covered += b.norms[j - 1];
            100 * k * covered >= n
        });
        match found {
            Some(j) => {
                b.j_prime = j;
                Ok(b)
            }
            None => Err(Error::NoJPrime { total: b.norms.iter().sum(), threshold: format!("{n}/{}", 100 * k) }),
        }
    }

    /// Buckets with an explicitly chosen J′. Lets the colouring induction run
    /// on graphs too small to reach it through the size threshold.
    pub fn with_j_prime(members: &[VertexSet], j_prime: usize) -> Result<Self> {
        let mut b = Self::unthresholded(members)?;
        if j_prime == 0 || j_prime > b.j {
            return Err(Error::Domain(format!("J' = {j_prime} outside 1..={}", b.j)));
        }
        b.j_prime = j_prime;
        Ok(b)
    }

    fn unthresholded(members: &[VertexSet]) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::NoJPrime { total: 0, threshold: "any".into() });
        }
        if members.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::PreconditionViolated("family is not sorted by size".into()));
        }
        let m = members.len();
        let mut j = 0;
        while (1usize << (j + 1)) - 1 <= m {
            j += 1;
        }
        let norms: Vec<usize> =
            (1..=j).map(|b| members[(1 << (b - 1)) - 1..(1 << b) - 1].iter().map(VertexSet::len).sum()).collect();
        for w in norms.windows(2) {
            if w[1] > 2 * w[0] {
                return Err(Error::InternalInvariantBreach(format!("bucket norms {} then {}", w[0], w[1])));
            }
        }
        Ok(DyadicBuckets { members: members.to_vec(), j, j_prime: 0, norms })
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn j_prime(&self) -> usize {
        self.j_prime
    }

    /// All members D₁, …, D_m, including those beyond the last bucket.
    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    /// Number of members in C = C₁ ∪ … ∪ C_J, namely 2^J − 1.
    pub fn covered(&self) -> usize {
        (1 << self.j) - 1
    }

    /// Member indices (0-based) of bucket `j` (1-based).
    pub fn range(&self, j: usize) -> Range<usize> {
        assert!((1..=self.j).contains(&j), "bucket {j} outside 1..={}", self.j);
        (1 << (j - 1)) - 1..(1 << j) - 1
    }

    /// Member indices of C₁ ∪ … ∪ C_j.
    pub fn prefix(&self, j: usize) -> Range<usize> {
        0..(1 << j) - 1
    }

    pub fn bucket(&self, j: usize) -> &[VertexSet] {
        &self.members[self.range(j)]
    }

    /// ‖C_j‖.
    pub fn norm(&self, j: usize) -> usize {
        self.norms[j - 1]
    }

    /// Bucket holding member `i`, if it is in C.
    pub fn bucket_of(&self, i: usize) -> Option<usize> {
        (i < self.covered()).then(|| (usize::BITS - (i + 1).leading_zeros()) as usize)
    }
}
